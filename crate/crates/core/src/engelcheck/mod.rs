//! Verification procedures for Engel, J-Engel, K-Engel and totally real
//! structures: flag certification, defining forms, Reeb fields, structure
//! functions and the identities relating them.

mod flag;
mod jengel;
mod record;
mod reeb;
mod splitting;

pub use flag::{characteristic_foliation, verify_engel, Characteristic, EngelFlag};
pub use jengel::{complex_framing, j_invariance_check, totally_real_check};
pub use record::{CheckRecord, Status};
pub use reeb::{
    beta_of, defining_forms, forms_from_alpha, jofreeb_residual, normalized_alpha,
    structure_functions, DefiningForms, JofReeb, StructureFunctions,
};
pub use splitting::{
    j_engel_splitting, k_engel_check, splitting_lambdas, transverse_engel_check, KEngelReport,
    Splitting, OBSTRUCTION_NAMES,
};

use thiserror::Error;

use crate::framecalc::{Certificate, FrameError};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EngelError {
    #[error("not an Engel structure: {0} fails")]
    NotEngel(String),
    #[error("defining-form condition `{condition}` fails")]
    FormCondition {
        condition: String,
        certificate: Box<Certificate>,
    },
    #[error("J is not integrable (Nijenhuis tensor does not vanish)")]
    NonIntegrable(Box<Certificate>),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error(transparent)]
    Frame(#[from] FrameError),
}

impl EngelError {
    /// The certificate behind the failure, if there is one.
    pub fn certificate(&self) -> Option<&Certificate> {
        match self {
            EngelError::FormCondition { certificate, .. } => Some(certificate),
            EngelError::NonIntegrable(c) => Some(c),
            _ => None,
        }
    }
}
