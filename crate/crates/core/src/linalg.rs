//! Small dense linear algebra used by the projectors and solvers.

/// Pivot threshold below which a linear system is treated as singular.
pub const SINGULAR_TOL: f64 = 1e-11;

/// Solve `a x = b` by Gaussian elimination with partial pivoting.
/// Returns `None` when a pivot falls below [`SINGULAR_TOL`] relative to the
/// largest entry of the row-reduced matrix.
pub fn solve(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Option<Vec<f64>> {
    let n = a.len();
    debug_assert!(a.iter().all(|row| row.len() == n));
    debug_assert_eq!(b.len(), n);
    let scale = a
        .iter()
        .flat_map(|r| r.iter())
        .fold(0.0f64, |m, x| m.max(x.abs()))
        .max(1.0);
    for col in 0..n {
        let (pivot_row, pivot_abs) = (col..n)
            .map(|r| (r, a[r][col].abs()))
            .max_by(|x, y| x.1.total_cmp(&y.1))
            .unwrap();
        if pivot_abs <= SINGULAR_TOL * scale {
            return None;
        }
        a.swap(col, pivot_row);
        b.swap(col, pivot_row);
        for r in (col + 1)..n {
            let factor = a[r][col] / a[col][col];
            if factor == 0.0 {
                continue;
            }
            for c in col..n {
                a[r][c] -= factor * a[col][c];
            }
            b[r] -= factor * b[col];
        }
    }
    let mut x = vec![0.0; n];
    for row in (0..n).rev() {
        let mut acc = b[row];
        for c in (row + 1)..n {
            acc -= a[row][c] * x[c];
        }
        x[row] = acc / a[row][row];
    }
    Some(x)
}

/// Modified Gram-Schmidt with one re-orthogonalization pass. Returns an
/// orthonormal basis of the span of `rows`; rows that are numerically
/// dependent on earlier ones are dropped.
pub fn orthonormalize(rows: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let mut basis: Vec<Vec<f64>> = Vec::new();
    for row in rows {
        let original_norm = norm(row);
        if original_norm == 0.0 {
            continue;
        }
        let mut v = row.clone();
        for _ in 0..2 {
            for q in &basis {
                let d = dot(q, &v);
                for (vi, qi) in v.iter_mut().zip(q) {
                    *vi -= d * qi;
                }
            }
        }
        let residual = norm(&v);
        if residual <= 1e-10 * original_norm {
            continue;
        }
        for vi in v.iter_mut() {
            *vi /= residual;
        }
        basis.push(v);
    }
    basis
}

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}
