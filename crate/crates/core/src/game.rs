//! Finite normal-form games as vectors in an inner-product space.
//!
//! A game holds one flat payoff tensor per player over the shared strategy
//! space. Together with the counting-measure inner product this makes the set
//! of games on a fixed space a finite-dimensional Hilbert space, which is what
//! the subspace machinery in [`crate::subspace`] relies on.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::profile::MixedProfile;
use crate::space::StrategySpace;

/// Default tolerance for boolean predicates; overridable per call.
pub const DEFAULT_TOL: f64 = 1e-9;

/// An n-player finite game: a strategy space plus one payoff tensor per
/// player, stored flat in row-major order (player 1's strategy outermost).
///
/// Values are immutable after construction; every operation is a pure
/// function, so games can be shared freely across threads.
#[derive(Debug, Clone, PartialEq)]
pub struct Game {
    space: Arc<StrategySpace>,
    payoffs: Vec<Vec<f64>>,
}

impl Game {
    /// Validate tensor shapes and finiteness and build a game.
    pub fn new(space: Arc<StrategySpace>, payoffs: Vec<Vec<f64>>) -> Result<Self> {
        if payoffs.len() != space.players() {
            return Err(Error::InvalidGame(format!(
                "expected {} payoff tensors, got {}",
                space.players(),
                payoffs.len()
            )));
        }
        for (i, t) in payoffs.iter().enumerate() {
            if t.len() != space.num_profiles() {
                return Err(Error::InvalidGame(format!(
                    "player {}: tensor has {} entries, expected {}",
                    i + 1,
                    t.len(),
                    space.num_profiles()
                )));
            }
            if let Some(x) = t.iter().find(|x| !x.is_finite()) {
                return Err(Error::InvalidGame(format!(
                    "player {}: non-finite payoff {}",
                    i + 1,
                    x
                )));
            }
        }
        Ok(Game { space, payoffs })
    }

    /// The all-zero game on `space`.
    pub fn zero(space: Arc<StrategySpace>) -> Self {
        let total = space.num_profiles();
        let n = space.players();
        Game {
            space,
            payoffs: vec![vec![0.0; total]; n],
        }
    }

    pub fn space(&self) -> &Arc<StrategySpace> {
        &self.space
    }

    pub fn players(&self) -> usize {
        self.space.players()
    }

    /// Flat payoff tensor of player `i`.
    pub fn tensor(&self, i: usize) -> &[f64] {
        &self.payoffs[i]
    }

    /// All payoff tensors.
    pub fn tensors(&self) -> &[Vec<f64>] {
        &self.payoffs
    }

    /// Payoff to player `i` at a pure profile.
    pub fn payoff(&self, i: usize, profile: &[usize]) -> f64 {
        self.payoffs[i][self.space.index_of(profile)]
    }

    /// Payoff to player `i` at a flat profile index.
    pub fn payoff_at(&self, i: usize, idx: usize) -> f64 {
        self.payoffs[i][idx]
    }

    /// Rebuild a game on the same space from raw tensors (internal fast path
    /// for operators that preserve validity).
    pub(crate) fn from_tensors(space: Arc<StrategySpace>, payoffs: Vec<Vec<f64>>) -> Self {
        debug_assert!(payoffs.len() == space.players());
        debug_assert!(payoffs.iter().all(|t| t.len() == space.num_profiles()));
        Game { space, payoffs }
    }

    fn check_shape(&self, other: &Game) -> Result<()> {
        if !self.space.same_shape(other.space()) {
            return Err(self.space.shape_mismatch(other.space()));
        }
        Ok(())
    }

    /// Counting-measure inner product: sum over players and profiles of the
    /// product of payoffs. Symmetric and bilinear.
    pub fn inner_product(&self, other: &Game) -> Result<f64> {
        self.check_shape(other)?;
        let mut acc = 0.0;
        for (a, b) in self.payoffs.iter().zip(&other.payoffs) {
            for (x, y) in a.iter().zip(b) {
                acc += x * y;
            }
        }
        Ok(acc)
    }

    /// Norm induced by the inner product; zero iff all payoffs are zero.
    pub fn norm(&self) -> f64 {
        let mut acc = 0.0;
        for t in &self.payoffs {
            for x in t {
                acc += x * x;
            }
        }
        acc.sqrt()
    }

    /// Entrywise sum.
    pub fn add(&self, other: &Game) -> Result<Game> {
        self.check_shape(other)?;
        let payoffs = self
            .payoffs
            .iter()
            .zip(&other.payoffs)
            .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x + y).collect())
            .collect();
        Ok(Game::from_tensors(self.space.clone(), payoffs))
    }

    /// Entrywise difference.
    pub fn sub(&self, other: &Game) -> Result<Game> {
        self.check_shape(other)?;
        let payoffs = self
            .payoffs
            .iter()
            .zip(&other.payoffs)
            .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x - y).collect())
            .collect();
        Ok(Game::from_tensors(self.space.clone(), payoffs))
    }

    /// Entrywise scaling.
    pub fn scale(&self, c: f64) -> Game {
        let payoffs = self
            .payoffs
            .iter()
            .map(|a| a.iter().map(|x| c * x).collect())
            .collect();
        Game::from_tensors(self.space.clone(), payoffs)
    }

    /// Largest absolute payoff difference to another game.
    pub fn max_abs_diff(&self, other: &Game) -> Result<f64> {
        self.check_shape(other)?;
        let mut d: f64 = 0.0;
        for (a, b) in self.payoffs.iter().zip(&other.payoffs) {
            for (x, y) in a.iter().zip(b) {
                d = d.max((x - y).abs());
            }
        }
        Ok(d)
    }

    fn check_profile(&self, sigma: &MixedProfile) -> Result<()> {
        if sigma.weights().len() != self.players() {
            return Err(Error::InvalidProfile(format!(
                "profile has {} players, game has {}",
                sigma.weights().len(),
                self.players()
            )));
        }
        for (i, w) in sigma.weights().iter().enumerate() {
            if w.len() != self.space.sizes()[i] {
                return Err(Error::InvalidProfile(format!(
                    "player {}: profile length {} vs {} strategies",
                    i + 1,
                    w.len(),
                    self.space.sizes()[i]
                )));
            }
        }
        Ok(())
    }

    /// Mixed extension of player `i`'s payoff: multilinear in the per-player
    /// probability vectors.
    pub fn expected_payoff(&self, sigma: &MixedProfile, i: usize) -> Result<f64> {
        self.check_profile(sigma)?;
        Ok(self.expected_payoff_unchecked(sigma, i))
    }

    fn expected_payoff_unchecked(&self, sigma: &MixedProfile, i: usize) -> f64 {
        let t = &self.payoffs[i];
        let mut acc = 0.0;
        for (idx, &x) in t.iter().enumerate() {
            if x == 0.0 {
                continue;
            }
            let mut w = 1.0;
            for k in 0..self.players() {
                w *= sigma.player(k)[self.space.coordinate(idx, k)];
                if w == 0.0 {
                    break;
                }
            }
            acc += x * w;
        }
        acc
    }

    /// Expected payoff to player `i` when i plays pure strategy `t_i` and
    /// everyone else follows `sigma`.
    pub fn expected_payoff_vs_pure(&self, sigma: &MixedProfile, i: usize, t_i: usize) -> f64 {
        let t = &self.payoffs[i];
        let stride = self.space.strides()[i];
        let size = self.space.sizes()[i];
        let mut acc = 0.0;
        for (idx, &x) in t.iter().enumerate() {
            if (idx / stride) % size != t_i || x == 0.0 {
                continue;
            }
            let mut w = 1.0;
            for k in 0..self.players() {
                if k == i {
                    continue;
                }
                w *= sigma.player(k)[self.space.coordinate(idx, k)];
                if w == 0.0 {
                    break;
                }
            }
            acc += x * w;
        }
        acc
    }

    /// Best pure-deviation gain of player `i` at `sigma`: the most the player
    /// can add to her expected payoff by a unilateral pure deviation. Always
    /// nonnegative up to rounding.
    pub fn deviation_gain(&self, sigma: &MixedProfile, i: usize) -> Result<f64> {
        self.check_profile(sigma)?;
        Ok(self.deviation_gain_unchecked(sigma, i))
    }

    pub(crate) fn deviation_gain_unchecked(&self, sigma: &MixedProfile, i: usize) -> f64 {
        let current = self.expected_payoff_unchecked(sigma, i);
        let mut best = f64::NEG_INFINITY;
        for t_i in 0..self.space.sizes()[i] {
            best = best.max(self.expected_payoff_vs_pure(sigma, i, t_i));
        }
        best - current
    }

    /// True iff no player gains more than `tol` from any unilateral deviation.
    pub fn is_nash(&self, sigma: &MixedProfile, tol: f64) -> Result<bool> {
        self.check_profile(sigma)?;
        for i in 0..self.players() {
            if self.deviation_gain_unchecked(sigma, i) > tol {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// True iff `self - other` is non-strategic within `tol`: for every
    /// player the difference is constant along her own strategy axis, so the
    /// two games share all unilateral payoff differences.
    pub fn is_strategically_equivalent(&self, other: &Game, tol: f64) -> Result<bool> {
        self.check_shape(other)?;
        let diff = self.sub(other)?;
        Ok(crate::operators::non_strategic_defect(&diff) <= tol)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_by_two(payoffs: [[f64; 4]; 2]) -> Game {
        let space = StrategySpace::with_sizes(&[2, 2]).unwrap();
        Game::new(space, vec![payoffs[0].to_vec(), payoffs[1].to_vec()]).unwrap()
    }

    #[test]
    fn inner_product_all_ones_2x2_is_8() {
        let g = two_by_two([[1.0; 4], [1.0; 4]]);
        assert_eq!(g.inner_product(&g).unwrap(), 8.0);
    }

    #[test]
    fn zero_game_has_zero_norm_and_inner_product() {
        let space = StrategySpace::with_sizes(&[3, 3]).unwrap();
        let z = Game::zero(space);
        assert_eq!(z.norm(), 0.0);
        assert_eq!(z.inner_product(&z).unwrap(), 0.0);
    }

    #[test]
    fn shape_mismatch_names_dimension() {
        let a = two_by_two([[0.0; 4], [0.0; 4]]);
        let space = StrategySpace::with_sizes(&[2, 3]).unwrap();
        let b = Game::zero(space);
        let err = a.inner_product(&b).unwrap_err();
        assert!(err.to_string().contains("player 2"), "{err}");
    }

    #[test]
    fn arithmetic_identities() {
        let g = two_by_two([[1.0, -2.0, 3.0, 4.0], [0.5, 0.0, -1.0, 2.0]]);
        assert_eq!(g.sub(&g).unwrap().norm(), 0.0);
        assert_eq!(g.scale(0.0).norm(), 0.0);
        assert!((g.scale(2.0).norm() - 2.0 * g.norm()).abs() < 1e-12);
        let sum = g.add(&g).unwrap();
        assert_eq!(sum.max_abs_diff(&g.scale(2.0)).unwrap(), 0.0);
    }

    #[test]
    fn rejects_non_finite_payoffs() {
        let space = StrategySpace::with_sizes(&[2, 2]).unwrap();
        let res = Game::new(space, vec![vec![0.0, f64::NAN, 0.0, 0.0], vec![0.0; 4]]);
        assert!(res.is_err());
    }

    #[test]
    fn pure_profile_expected_payoff_is_table_lookup() {
        let g = two_by_two([[1.0, 2.0, 3.0, 4.0], [5.0, 6.0, 7.0, 8.0]]);
        let sigma = MixedProfile::pure(g.space(), &[1, 0]).unwrap();
        assert_eq!(g.expected_payoff(&sigma, 0).unwrap(), 3.0);
        assert_eq!(g.expected_payoff(&sigma, 1).unwrap(), 7.0);
    }
}
