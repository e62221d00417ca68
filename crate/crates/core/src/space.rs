//! Finite strategy spaces and flat tensor indexing.
//!
//! Payoff tensors are stored flat in row-major order with player 1's strategy
//! outermost and player n's innermost. That order is canonical for both the
//! in-memory layout and the JSON format.

use std::sync::Arc;

use crate::error::{Error, Result};

/// The joint strategy space of an n-player finite game: per-player strategy
/// labels and the derived row-major indexing data.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StrategySpace {
    labels: Vec<Vec<String>>,
    sizes: Vec<usize>,
    strides: Vec<usize>,
    total: usize,
}

impl StrategySpace {
    /// Build a space from per-player strategy labels. Requires at least two
    /// players, at least one strategy per player, and a total profile count
    /// that fits in a `usize`.
    pub fn new(labels: Vec<Vec<String>>) -> Result<Arc<Self>> {
        if labels.len() < 2 {
            return Err(Error::InvalidGame(format!(
                "need at least 2 players, got {}",
                labels.len()
            )));
        }
        let sizes: Vec<usize> = labels.iter().map(|l| l.len()).collect();
        for (i, &k) in sizes.iter().enumerate() {
            if k == 0 {
                return Err(Error::InvalidGame(format!(
                    "player {} has an empty strategy set",
                    i + 1
                )));
            }
        }
        let mut total: usize = 1;
        for &k in &sizes {
            total = total.checked_mul(k).ok_or_else(|| {
                Error::InvalidGame("profile count overflows native integer range".into())
            })?;
        }
        let mut strides = vec![1usize; sizes.len()];
        for i in (0..sizes.len().saturating_sub(1)).rev() {
            strides[i] = strides[i + 1] * sizes[i + 1];
        }
        Ok(Arc::new(StrategySpace {
            labels,
            sizes,
            strides,
            total,
        }))
    }

    /// Space with `sizes[i]` strategies for player i, labeled "1", "2", ...
    pub fn with_sizes(sizes: &[usize]) -> Result<Arc<Self>> {
        let labels = sizes
            .iter()
            .map(|&k| (1..=k).map(|j| j.to_string()).collect())
            .collect();
        Self::new(labels)
    }

    /// Number of players.
    pub fn players(&self) -> usize {
        self.sizes.len()
    }

    /// Per-player strategy counts.
    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    /// Per-player strategy labels.
    pub fn labels(&self) -> &[Vec<String>] {
        &self.labels
    }

    /// Number of pure strategy profiles.
    pub fn num_profiles(&self) -> usize {
        self.total
    }

    /// Row-major strides; `strides[0]` is the largest.
    pub fn strides(&self) -> &[usize] {
        &self.strides
    }

    /// Flat index of a pure profile.
    pub fn index_of(&self, profile: &[usize]) -> usize {
        debug_assert_eq!(profile.len(), self.sizes.len());
        profile
            .iter()
            .zip(&self.strides)
            .map(|(&s, &st)| s * st)
            .sum()
    }

    /// Strategy of player `i` encoded in flat index `idx`.
    pub fn coordinate(&self, idx: usize, i: usize) -> usize {
        (idx / self.strides[i]) % self.sizes[i]
    }

    /// Decode a flat index into a full profile.
    pub fn profile_of(&self, idx: usize) -> Vec<usize> {
        (0..self.sizes.len())
            .map(|i| self.coordinate(idx, i))
            .collect()
    }

    /// Iterate over all pure profiles in flat-index order.
    pub fn profiles(&self) -> impl Iterator<Item = Vec<usize>> + '_ {
        (0..self.total).map(|idx| self.profile_of(idx))
    }

    /// True when the two spaces have identical shape (player count and
    /// per-player strategy counts); labels are not compared.
    pub fn same_shape(&self, other: &StrategySpace) -> bool {
        self.sizes == other.sizes
    }

    /// Structured error naming the first differing dimension between shapes.
    pub fn shape_mismatch(&self, other: &StrategySpace) -> Error {
        if self.sizes.len() != other.sizes.len() {
            return Error::ShapeMismatch(format!(
                "player counts differ: {} vs {}",
                self.sizes.len(),
                other.sizes.len()
            ));
        }
        for (i, (a, b)) in self.sizes.iter().zip(&other.sizes).enumerate() {
            if a != b {
                return Error::ShapeMismatch(format!(
                    "player {} strategy counts differ: {} vs {}",
                    i + 1,
                    a,
                    b
                ));
            }
        }
        Error::ShapeMismatch("spaces differ".into())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn row_major_indexing_round_trips() {
        let space = StrategySpace::with_sizes(&[2, 3, 4]).unwrap();
        assert_eq!(space.num_profiles(), 24);
        assert_eq!(space.strides(), &[12, 4, 1]);
        for idx in 0..24 {
            let p = space.profile_of(idx);
            assert_eq!(space.index_of(&p), idx);
        }
        // player 1 outermost: second profile differs in the last coordinate
        assert_eq!(space.profile_of(1), vec![0, 0, 1]);
        assert_eq!(space.profile_of(12), vec![1, 0, 0]);
    }

    #[test]
    fn rejects_single_player_and_empty_sets() {
        assert!(StrategySpace::with_sizes(&[3]).is_err());
        assert!(StrategySpace::new(vec![vec![], vec!["a".into()]]).is_err());
    }

    #[test]
    fn overflow_is_guarded() {
        let sizes = vec![1usize << 16; 5];
        assert!(StrategySpace::with_sizes(&sizes).is_err());
    }
}
