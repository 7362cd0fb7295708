//! Framed 4-manifolds: vector fields over a global frame, Lie brackets from
//! a structure table, almost complex structures, exterior calculus on the
//! dual coframe and global rank certificates.

mod certificate;
mod complex;
mod forms;
pub mod linalg;
mod manifest;
mod quot;
mod space;
mod vecfield;

pub use certificate::{
    certify_all_zero, certify_nonvanishing, certify_zero, global_rank, rank_below, rank_witness,
    spans_everywhere, sup_abs, Certificate, CertificateKind, Claim, GridSpec, DEFAULT_SAMPLES,
    DEFAULT_TOLERANCE,
};
pub use complex::ComplexStructure;
pub use forms::{FormDisplay, KForm};
pub use manifest::{LoadedManifest, Manifest, VectorEntry};
pub use quot::{QScalar, QVec};
pub use space::{CoordSpec, FramedSpace};
pub use vecfield::{VecDisplay, VecField};

use thiserror::Error;

/// Real dimension of every framed space.
pub const DIM: usize = 4;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FrameError {
    #[error("invalid framed space: {0}")]
    Invalid(String),
    #[error("J does not square to -1 on frame field {0}")]
    NotComplex(usize),
    #[error("wedge product of degree {0} exceeds the dimension")]
    DegreeOverflow(usize),
    #[error("exterior derivative of degree {0} forms is unsupported")]
    UnsupportedDegree(usize),
    #[error("form expects {expected} arguments, got {got}")]
    Arity { expected: usize, got: usize },
    #[error("rank certificate needs 1 to 4 fields, got {0}")]
    RankArity(usize),
    #[error("manifest field `{field}`: {message}")]
    Manifest { field: String, message: String },
    #[error("malformed manifest JSON: {0}")]
    Json(String),
}
