//! Decomposition, classification, and equilibrium analysis of finite
//! normal-form games.
//!
//! Games on a fixed strategy space form a finite-dimensional Hilbert space
//! under a counting-measure inner product. This crate decomposes any such
//! game into orthogonal strategic components (normalized common interest,
//! normalized zero-sum, zero-sum equivalent potential, non-strategic),
//! classifies games through cycle conditions and projection norms, builds
//! the certifying objects (potential functions, zero-sum forms, multilateral
//! representations), and computes the equilibria each component class
//! provably possesses.

// tensor kernels index several parallel arrays; ranges read better there
#![allow(clippy::needless_range_loop)]

pub mod catalog;
pub mod classify;
pub mod equilibrium;
pub mod error;
pub mod game;
pub mod json;
pub mod linalg;
pub mod operators;
pub mod profile;
pub mod simplex;
pub mod space;
pub mod subspace;
pub mod verify;

pub use error::{Error, Result};
pub use game::{Game, DEFAULT_TOL};
pub use profile::MixedProfile;
pub use space::StrategySpace;
