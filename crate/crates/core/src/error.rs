//! Error type shared across the library.

use thiserror::Error;

/// Errors produced by game construction, analysis, and solvers.
#[derive(Debug, Error)]
pub enum Error {
    /// Two games (or a game and a profile) do not live on the same strategy space.
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    /// A game failed structural validation (tensor sizes, finiteness).
    #[error("invalid game: {0}")]
    InvalidGame(String),

    /// A mixed profile failed validation (negative mass, bad sum, wrong length).
    #[error("invalid profile: {0}")]
    InvalidProfile(String),

    /// The game exceeds the configured size cap for dense constraint assembly.
    #[error("game too large: {entries} payoff entries exceed the cap of {cap}; use a smaller game")]
    TooLarge { entries: usize, cap: usize },

    /// A solver or extractor precondition does not hold for the input game.
    #[error("precondition failed: {0}")]
    Precondition(String),

    /// The potential cycle condition fails, so no potential function exists.
    #[error("not a potential game: worst cycle violation {violation}")]
    NotPotential { violation: f64 },

    /// The zero-sum cycle condition fails, so no zero-sum form exists.
    #[error("not zero-sum equivalent: worst cycle violation {violation}")]
    NotZeroSumEquivalent { violation: f64 },

    /// At least one of the two cycle conditions required for a multilateral
    /// representation fails.
    #[error("not a zero-sum equivalent potential game: {0}")]
    NotInB(String),

    /// Two independent computations of the same quantity disagree; this signals
    /// a bug rather than bad input.
    #[error("internal consistency failure: {0}")]
    InternalConsistency(String),

    /// Malformed JSON input.
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),

    /// Filesystem error while reading or writing game files.
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

/// Convenient result alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Process exit code the CLI maps this error to: 1 for malformed input,
    /// 2 for precondition failures, 3 for internal-consistency failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Json(_) | Error::Io(_) | Error::InvalidGame(_) => 1,
            Error::InternalConsistency(_) => 3,
            _ => 2,
        }
    }

    /// Stable machine-readable tag for the error category.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::ShapeMismatch(_) => "shape_mismatch",
            Error::InvalidGame(_) => "invalid_game",
            Error::InvalidProfile(_) => "invalid_profile",
            Error::TooLarge { .. } => "too_large",
            Error::Precondition(_) => "precondition",
            Error::NotPotential { .. } => "not_potential",
            Error::NotZeroSumEquivalent { .. } => "not_zero_sum_equivalent",
            Error::NotInB(_) => "not_zero_sum_potential",
            Error::InternalConsistency(_) => "internal_consistency",
            Error::Json(_) => "json",
            Error::Io(_) => "io",
        }
    }
}
