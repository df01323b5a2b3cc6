//! Weights of Hamiltonian cycles in complete graphs whose edge weights are
//! squared Euclidean distances.
//!
//! The crate checks, instance by instance, the bounds
//!
//! ```text
//! n = 4:  ½·w(K₄) ≤ w(E) < w(K₄)
//! n = 5:  (5−√5)/10·w(K₅) ≤ w(E) ≤ (5+√5)/10·w(K₅)
//! ```
//!
//! together with the four-point midpoint identity, the five-point midpoint
//! iteration and the linear recurrence behind the K₅ bound. Every algebraic
//! routine is generic over [`Scalar`], so the same code runs in binary64
//! (for fuzzing) and in exact rationals (where identities must hold with a
//! residual of exactly zero).

pub mod bounds;
pub mod cli;
pub mod cycles;
pub mod error;
pub mod euler;
pub mod extremal;
pub mod geometry;
pub mod iteration;
pub mod pointfile;
pub mod report;
pub mod rng;
pub mod scalar;
pub mod sequences;

pub use cycles::Cycle;
pub use error::{Error, Result};
pub use geometry::{Configuration, Point};
pub use report::Verdict;
pub use scalar::{Mode, Scalar};
