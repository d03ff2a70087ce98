//! Monotone linear relations on `R^n`, their Fitzpatrick functions, and
//! decision procedures for maximal monotonicity, strict monotonicity,
//! paramonotonicity, rectangularity and cocoercivity.
//!
//! Everything is dense, `f64`, and desk-scale. Relations are stored by an
//! orthonormal basis of their graph; all predicates share one tolerance
//! (default [`numkernel::DEFAULT_TOL`]).

pub mod classify;
pub mod cli;
pub mod error;
pub mod fitzpatrick;
pub mod gallery;
pub mod nonexpansive;
pub mod numkernel;
pub mod random;
pub mod relation;

pub use classify::{classification_report, ClassificationReport, Modulus, Verdict, Witness};
pub use error::{Error, Result};
pub use fitzpatrick::{fitzpatrick_value, GraphForm};
pub use gallery::BallConstrainedOperator;
pub use numkernel::{FitzValue, Subspace, DEFAULT_TOL};
pub use relation::{AffineImage, LinearRelation};
