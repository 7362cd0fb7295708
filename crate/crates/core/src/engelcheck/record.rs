use std::collections::BTreeMap;

use serde::Serialize;

use crate::framecalc::{Certificate, CertificateKind, Claim};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Status {
    Pass,
    Fail,
    Rejected,
    Deviation,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Rejected => "REJECTED",
            Status::Deviation => "DEVIATION",
        }
    }
}

/// One verification step as it appears in a report.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckRecord {
    pub name: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<Certificate>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residual_max: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<BTreeMap<String, f64>>,
    /// Computed values, printed values and other named facts.
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub details: BTreeMap<String, String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl CheckRecord {
    pub fn new(name: impl Into<String>, status: Status) -> Self {
        Self {
            name: name.into(),
            status,
            certificate: None,
            residual_max: None,
            witness: None,
            details: BTreeMap::new(),
            notes: Vec::new(),
        }
    }

    /// PASS or FAIL according to `cert`, copying its residual and witness.
    pub fn from_certificate(name: impl Into<String>, cert: Certificate) -> Self {
        let status = if cert.passed() {
            Status::Pass
        } else {
            Status::Fail
        };
        let mut r = Self::new(name, status);
        r.residual_max = match cert.claim {
            Claim::IdenticallyZero => Some(match cert.kind {
                CertificateKind::Symbolic => 0.0,
                _ => cert.max_abs.unwrap_or(f64::NAN),
            }),
            Claim::NonVanishing => None,
        };
        r.witness.clone_from(&cert.witness);
        r.certificate = Some(cert);
        r
    }

    pub fn rejected(name: impl Into<String>, reason: impl Into<String>) -> Self {
        let mut r = Self::new(name, Status::Rejected);
        r.notes.push(reason.into());
        r
    }

    pub fn detail(mut self, key: &str, value: impl ToString) -> Self {
        self.details.insert(key.to_string(), value.to_string());
        self
    }

    pub fn note(mut self, note: impl Into<String>) -> Self {
        self.notes.push(note.into());
        self
    }

    pub fn passed(&self) -> bool {
        self.status != Status::Fail
    }
}
