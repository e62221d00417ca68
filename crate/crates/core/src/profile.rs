//! Mixed strategy profiles.

use crate::error::{Error, Result};
use crate::space::StrategySpace;

/// Per-player probability vectors over pure strategies.
///
/// Entries in `[-1e-15, 0)` are clamped to zero on ingest so that solver
/// rounding does not produce spuriously invalid profiles; anything more
/// negative is rejected. Each vector must sum to 1 within `1e-12`.
#[derive(Debug, Clone, PartialEq)]
pub struct MixedProfile {
    weights: Vec<Vec<f64>>,
}

/// Largest negative entry absorbed as rounding noise.
pub const CLAMP_EPS: f64 = 1e-15;
/// Allowed deviation of each probability vector's sum from 1.
pub const SUM_TOL: f64 = 1e-12;

impl MixedProfile {
    /// Validate and build a profile for the given space.
    pub fn new(space: &StrategySpace, weights: Vec<Vec<f64>>) -> Result<Self> {
        if weights.len() != space.players() {
            return Err(Error::InvalidProfile(format!(
                "expected {} strategy vectors, got {}",
                space.players(),
                weights.len()
            )));
        }
        let mut clamped = weights;
        for (i, w) in clamped.iter_mut().enumerate() {
            if w.len() != space.sizes()[i] {
                return Err(Error::InvalidProfile(format!(
                    "player {}: expected {} entries, got {}",
                    i + 1,
                    space.sizes()[i],
                    w.len()
                )));
            }
            let mut sum = 0.0;
            for x in w.iter_mut() {
                if !x.is_finite() {
                    return Err(Error::InvalidProfile(format!(
                        "player {}: non-finite probability",
                        i + 1
                    )));
                }
                if *x < 0.0 {
                    if *x < -CLAMP_EPS {
                        return Err(Error::InvalidProfile(format!(
                            "player {}: negative probability {}",
                            i + 1,
                            x
                        )));
                    }
                    *x = 0.0;
                }
                sum += *x;
            }
            if (sum - 1.0).abs() > SUM_TOL {
                return Err(Error::InvalidProfile(format!(
                    "player {}: probabilities sum to {} (must be 1 within {})",
                    i + 1,
                    sum,
                    SUM_TOL
                )));
            }
        }
        Ok(MixedProfile { weights: clamped })
    }

    /// Degenerate profile placing mass 1 on one pure profile.
    pub fn pure(space: &StrategySpace, profile: &[usize]) -> Result<Self> {
        if profile.len() != space.players() {
            return Err(Error::InvalidProfile(format!(
                "expected {} coordinates, got {}",
                space.players(),
                profile.len()
            )));
        }
        let mut weights = Vec::with_capacity(profile.len());
        for (i, (&s, &k)) in profile.iter().zip(space.sizes()).enumerate() {
            if s >= k {
                return Err(Error::InvalidProfile(format!(
                    "player {}: strategy index {} out of range (has {} strategies)",
                    i + 1,
                    s,
                    k
                )));
            }
            let mut v = vec![0.0; k];
            v[s] = 1.0;
            weights.push(v);
        }
        Ok(MixedProfile { weights })
    }

    /// The uniform profile: every player mixes 1/|S_i| on each strategy.
    pub fn uniform(space: &StrategySpace) -> Self {
        MixedProfile {
            weights: space.sizes().iter().map(|&k| vec![1.0 / k as f64; k]).collect(),
        }
    }

    /// Probability vector of player `i`.
    pub fn player(&self, i: usize) -> &[f64] {
        &self.weights[i]
    }

    /// All per-player probability vectors.
    pub fn weights(&self) -> &[Vec<f64>] {
        &self.weights
    }

    /// Replace player `i`'s vector, revalidating the result.
    pub fn with_player(&self, space: &StrategySpace, i: usize, w: Vec<f64>) -> Result<Self> {
        let mut weights = self.weights.clone();
        weights[i] = w;
        MixedProfile::new(space, weights)
    }

    /// Largest absolute entrywise difference between two profiles.
    pub fn max_abs_diff(&self, other: &MixedProfile) -> f64 {
        let mut d: f64 = 0.0;
        for (a, b) in self.weights.iter().zip(&other.weights) {
            for (x, y) in a.iter().zip(b) {
                d = d.max((x - y).abs());
            }
        }
        d
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn clamps_tiny_negatives_and_rejects_larger() {
        let space = StrategySpace::with_sizes(&[2, 2]).unwrap();
        let p = MixedProfile::new(&space, vec![vec![1.0, -1e-16], vec![0.5, 0.5]]).unwrap();
        assert_eq!(p.player(0)[1], 0.0);
        assert!(MixedProfile::new(&space, vec![vec![1.0, -1e-9], vec![0.5, 0.5]]).is_err());
    }

    #[test]
    fn rejects_bad_sum_and_shape() {
        let space = StrategySpace::with_sizes(&[2, 2]).unwrap();
        assert!(MixedProfile::new(&space, vec![vec![0.6, 0.6], vec![0.5, 0.5]]).is_err());
        assert!(MixedProfile::new(&space, vec![vec![1.0], vec![0.5, 0.5]]).is_err());
    }

    #[test]
    fn uniform_sums_to_one_within_tolerance() {
        let space = StrategySpace::with_sizes(&[3, 7]).unwrap();
        let u = MixedProfile::uniform(&space);
        for w in u.weights() {
            let s: f64 = w.iter().sum();
            assert!((s - 1.0).abs() <= SUM_TOL);
        }
    }
}
