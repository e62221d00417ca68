//! Dense tableau simplex for two-player zero-sum value problems.
//!
//! The matrix is shifted to strictly positive entries, the column player's
//! scaled problem `max sum(t) s.t. A t <= 1, t >= 0` is solved by the primal
//! simplex from the all-slack basis (always feasible and bounded for a
//! positive matrix), and the row player's strategy is read off the duals in
//! the objective row. Bland's rule guards against cycling.

/// Value and optimal mixed strategies of the matrix game `a` (payoffs to the
/// row player), shapes `m x k`, row-major.
pub fn solve_matrix_game(a: &[f64], m: usize, k: usize) -> (f64, Vec<f64>, Vec<f64>) {
    let min_entry = a.iter().cloned().fold(f64::INFINITY, f64::min);
    let shift = if min_entry <= 0.0 { 1.0 - min_entry } else { 0.0 };

    // tableau: m constraint rows + objective row; columns: k structural,
    // m slacks, rhs
    let cols = k + m + 1;
    let mut t = vec![vec![0.0; cols]; m + 1];
    for r in 0..m {
        for c in 0..k {
            t[r][c] = a[r * k + c] + shift;
        }
        t[r][k + r] = 1.0;
        t[r][cols - 1] = 1.0;
    }
    for c in 0..k {
        t[m][c] = -1.0;
    }

    let mut basis: Vec<usize> = (k..k + m).collect();
    const EPS: f64 = 1e-12;
    // Bland: entering column = lowest index with a negative reduced cost
    while let Some(enter) = (0..k + m).find(|&c| t[m][c] < -EPS) {
        let mut leave: Option<(usize, f64)> = None;
        for r in 0..m {
            if t[r][enter] > EPS {
                let ratio = t[r][cols - 1] / t[r][enter];
                let better = match leave {
                    None => true,
                    Some((lr, lratio)) => {
                        ratio < lratio - EPS
                            || (ratio <= lratio + EPS && basis[r] < basis[lr])
                    }
                };
                if better {
                    leave = Some((r, ratio));
                }
            }
        }
        let (pr, _) = leave.expect("positive matrix game is bounded");
        let pivot = t[pr][enter];
        for c in 0..cols {
            t[pr][c] /= pivot;
        }
        for r in 0..=m {
            if r == pr {
                continue;
            }
            let factor = t[r][enter];
            if factor == 0.0 {
                continue;
            }
            for c in 0..cols {
                t[r][c] -= factor * t[pr][c];
            }
        }
        basis[pr] = enter;
    }

    let objective = t[m][cols - 1]; // equals sum of t_j at the optimum
    let inv_value = objective.max(EPS);
    let shifted_value = 1.0 / inv_value;

    let mut col_strategy = vec![0.0; k];
    for (r, &b) in basis.iter().enumerate() {
        if b < k {
            col_strategy[b] = t[r][cols - 1] * shifted_value;
        }
    }
    // duals of the slack columns give the row player's scaled strategy
    let mut row_strategy = vec![0.0; m];
    for r in 0..m {
        row_strategy[r] = t[m][k + r] * shifted_value;
    }

    normalize(&mut row_strategy);
    normalize(&mut col_strategy);
    (shifted_value - shift, row_strategy, col_strategy)
}

fn normalize(v: &mut [f64]) {
    for x in v.iter_mut() {
        if *x < 0.0 {
            *x = 0.0;
        }
    }
    let sum: f64 = v.iter().sum();
    if sum > 0.0 {
        for x in v.iter_mut() {
            *x /= sum;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn solves_rock_paper_scissors() {
        let a = [0.0, -1.0, 1.0, 1.0, 0.0, -1.0, -1.0, 1.0, 0.0];
        let (v, x, y) = solve_matrix_game(&a, 3, 3);
        assert!(v.abs() < 1e-12);
        for p in x.iter().chain(&y) {
            assert!((p - 1.0 / 3.0).abs() < 1e-12);
        }
    }

    #[test]
    fn solves_biased_2x2() {
        // value of [[2, -1], [-1, 1]] is (2*1 - 1) / (2 + 1 + 1 + 1) = 1/5
        let a = [2.0, -1.0, -1.0, 1.0];
        let (v, x, y) = solve_matrix_game(&a, 2, 2);
        assert!((v - 0.2).abs() < 1e-12);
        assert!((x[0] - 0.4).abs() < 1e-12);
        assert!((y[0] - 0.4).abs() < 1e-12);
    }

    #[test]
    fn handles_dominant_row() {
        let a = [3.0, 2.0, 1.0, 0.0];
        let (v, x, _) = solve_matrix_game(&a, 2, 2);
        assert!((v - 2.0).abs() < 1e-12);
        assert!((x[0] - 1.0).abs() < 1e-12);
    }
}
