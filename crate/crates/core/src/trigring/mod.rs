//! Exact trigonometric polynomials over formal coordinates.
//!
//! A [`TrigScalar`] is a finite sum `Σ c·cos(ω·x)` / `Σ c·sin(ω·x)` plus a
//! constant, stored in a canonical Fourier normal form: every product is
//! expanded by product-to-sum, the leading frequency of every argument is
//! sign-normalized and no zero coefficient is kept. Two scalars are equal
//! as functions iff their normal forms are equal.
//!
//! Coefficients are Laurent polynomials in π over ℚ ([`Coeff`]); each
//! per-coordinate frequency is `r + p·π` with `r, p ∈ ℚ` ([`Frequency`]).

mod coeff;
mod frequency;
mod parse;
pub mod rational;
mod scalar;

pub use coeff::Coeff;
pub use frequency::Frequency;
pub use parse::{normalize, parse_raw, RawExpr};
pub use scalar::{Affine, Arg, Coord, PhaseKind, ScalarDisplay, TrigScalar, Wave};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum TrigError {
    #[error("unsupported input: {0}")]
    Unsupported(String),
    #[error("coordinate '{0}' is not assigned")]
    UnassignedCoordinate(String),
    #[error("coordinate index {0} is not assigned")]
    Unassigned(usize),
    #[error("parse error at {position}: {message}")]
    Parse { position: usize, message: String },
}
