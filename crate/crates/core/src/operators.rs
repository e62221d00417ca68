//! Axis-averaging operators on payoff tensors.
//!
//! Everything here is built from one primitive: replacing a tensor by its
//! mean along a single axis. Averaging along different axes commutes, each
//! averaging is an orthogonal projection under the counting-measure inner
//! product, and products of these (and their complements) give the subspace
//! projectors and the interaction expansion used by the extractors.

use crate::game::Game;
use crate::space::StrategySpace;

/// Replace `tensor` by its mean along `axis`, broadcast back to full shape.
pub fn axis_average(space: &StrategySpace, tensor: &[f64], axis: usize) -> Vec<f64> {
    let k = space.sizes()[axis];
    let stride = space.strides()[axis];
    let total = space.num_profiles();
    let mut out = vec![0.0; total];
    let groups = total / k;
    for g in 0..groups {
        let base = (g / stride) * (stride * k) + (g % stride);
        let mut sum = 0.0;
        for j in 0..k {
            sum += tensor[base + j * stride];
        }
        let mean = sum / k as f64;
        for j in 0..k {
            out[base + j * stride] = mean;
        }
    }
    out
}

/// Subtract the mean along `axis` (the complement of [`axis_average`]).
pub fn axis_center(space: &StrategySpace, tensor: &[f64], axis: usize) -> Vec<f64> {
    let avg = axis_average(space, tensor, axis);
    tensor.iter().zip(&avg).map(|(x, a)| x - a).collect()
}

/// Average along every axis in sequence: the all-axes mean, broadcast.
pub fn full_average(space: &StrategySpace, tensor: &[f64]) -> Vec<f64> {
    let mut t = tensor.to_vec();
    for axis in 0..space.players() {
        t = axis_average(space, &t, axis);
    }
    t
}

/// Remove every axis mean in sequence: keeps only the full-interaction part
/// of the tensor (zero own-axis marginal sums in every coordinate).
pub fn full_interaction(space: &StrategySpace, tensor: &[f64]) -> Vec<f64> {
    let mut t = tensor.to_vec();
    for axis in 0..space.players() {
        t = axis_center(space, &t, axis);
    }
    t
}

/// Replace each player's payoff by its own-strategy average. This is the
/// orthogonal projection onto the non-strategic games.
pub fn own_axis_average(game: &Game) -> Game {
    let space = game.space().clone();
    let payoffs = (0..game.players())
        .map(|i| axis_average(&space, game.tensor(i), i))
        .collect();
    Game::from_tensors(space, payoffs)
}

/// Replace every component by the across-player average. This is the
/// orthogonal projection onto the common interest games.
pub fn player_average(game: &Game) -> Game {
    let space = game.space().clone();
    let total = space.num_profiles();
    let n = game.players() as f64;
    let mut mean = vec![0.0; total];
    for i in 0..game.players() {
        for (m, x) in mean.iter_mut().zip(game.tensor(i)) {
            *m += x;
        }
    }
    for m in mean.iter_mut() {
        *m /= n;
    }
    let payoffs = vec![mean; game.players()];
    Game::from_tensors(space, payoffs)
}

/// Pointwise sum of all players' payoffs as a single tensor.
pub fn player_sum(game: &Game) -> Vec<f64> {
    let total = game.space().num_profiles();
    let mut sum = vec![0.0; total];
    for i in 0..game.players() {
        for (m, x) in sum.iter_mut().zip(game.tensor(i)) {
            *m += x;
        }
    }
    sum
}

/// Interaction expansion of a tensor: one orthogonal term per subset of
/// axes, indexed by bitmask. Term `mask` keeps the interaction of exactly
/// the axes in `mask` (it is constant along every axis outside `mask`), and
/// all terms sum back to the input tensor.
pub fn interaction_terms(space: &StrategySpace, tensor: &[f64]) -> Vec<Vec<f64>> {
    let n = space.players();
    let mut terms = Vec::with_capacity(1 << n);
    for mask in 0..(1usize << n) {
        let mut t = tensor.to_vec();
        for axis in 0..n {
            t = if mask & (1 << axis) != 0 {
                axis_center(space, &t, axis)
            } else {
                axis_average(space, &t, axis)
            };
        }
        terms.push(t);
    }
    terms
}

/// How far a game is from being non-strategic: the largest absolute
/// deviation of any payoff from its own-axis average.
pub fn non_strategic_defect(game: &Game) -> f64 {
    let mut worst: f64 = 0.0;
    for i in 0..game.players() {
        let avg = axis_average(game.space(), game.tensor(i), i);
        for (x, a) in game.tensor(i).iter().zip(&avg) {
            worst = worst.max((x - a).abs());
        }
    }
    worst
}

/// How far a game is from being normalized: the largest absolute own-axis
/// marginal sum over all players and opposing profiles.
pub fn normalized_defect(game: &Game) -> f64 {
    let mut worst: f64 = 0.0;
    for i in 0..game.players() {
        let k = game.space().sizes()[i] as f64;
        let avg = axis_average(game.space(), game.tensor(i), i);
        for a in &avg {
            worst = worst.max((a * k).abs());
        }
    }
    worst
}

/// How far a game is from being zero-sum: the largest absolute pointwise
/// player sum.
pub fn zero_sum_defect(game: &Game) -> f64 {
    player_sum(game).iter().fold(0.0f64, |w, x| w.max(x.abs()))
}

/// How far a game is from common interest: the largest absolute deviation of
/// any player's payoff from player 1's.
pub fn common_interest_defect(game: &Game) -> f64 {
    let first = game.tensor(0);
    let mut worst: f64 = 0.0;
    for i in 1..game.players() {
        for (x, y) in game.tensor(i).iter().zip(first) {
            worst = worst.max((x - y).abs());
        }
    }
    worst
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::space::StrategySpace;

    #[test]
    fn axis_average_on_columns_of_3x3() {
        let space = StrategySpace::with_sizes(&[3, 3]).unwrap();
        // demo game, player 1 tensor
        let a = [4.0, -1.0, 1.0, 1.0, 2.0, -2.0, -1.0, 0.0, 2.0];
        let avg = axis_average(&space, &a, 0);
        let expect = [4.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0];
        for row in 0..3 {
            for col in 0..3 {
                assert!((avg[row * 3 + col] - expect[col]).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn interaction_terms_sum_to_input_and_are_orthogonal() {
        let space = StrategySpace::with_sizes(&[2, 3, 2]).unwrap();
        let t: Vec<f64> = (0..12).map(|i| ((i * 37 + 11) % 17) as f64 - 8.0).collect();
        let terms = interaction_terms(&space, &t);
        assert_eq!(terms.len(), 8);
        let mut sum = [0.0; 12];
        for term in &terms {
            for (s, x) in sum.iter_mut().zip(term) {
                *s += x;
            }
        }
        for (s, x) in sum.iter().zip(&t) {
            assert!((s - x).abs() < 1e-12);
        }
        for a in 0..terms.len() {
            for b in (a + 1)..terms.len() {
                let dot: f64 = terms[a].iter().zip(&terms[b]).map(|(x, y)| x * y).sum();
                assert!(dot.abs() < 1e-10, "terms {a} and {b} not orthogonal: {dot}");
            }
        }
    }

    #[test]
    fn full_interaction_kills_separable_tensors() {
        let space = StrategySpace::with_sizes(&[3, 4]).unwrap();
        // u(s1) + v(s2) has no 2-way interaction
        let mut t = vec![0.0; 12];
        for s1 in 0..3 {
            for s2 in 0..4 {
                t[s1 * 4 + s2] = (s1 as f64) * 2.5 + (s2 as f64).powi(2);
            }
        }
        let q = full_interaction(&space, &t);
        assert!(q.iter().all(|x| x.abs() < 1e-12));
    }
}
