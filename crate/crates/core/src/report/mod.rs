//! Batch verification of a catalog family or manifest and report output.

mod run;
mod text;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use serde::Serialize;

use crate::catalog::{build_family, CatalogError, FamilyId, FamilySpec};
use crate::engelcheck::{CheckRecord, Status};
use crate::framecalc::{FrameError, GridSpec, LoadedManifest, Manifest};
use crate::geiges::{GeigesError, ResidualFit, SearchReport};
use crate::trigring::rational::to_pq;

pub use run::run_verify;
pub use text::render_text;

pub const REPORT_VERSION: &str = "1";

#[derive(Debug, thiserror::Error)]
pub enum ReportError {
    #[error("`{0}` is neither a catalog family nor a readable manifest")]
    UnknownTarget(String),
    #[error("empty check suite")]
    EmptySuite,
    #[error("unknown check `{0}`")]
    UnknownCheck(String),
    #[error("parameters apply to catalog families only")]
    ManifestParameters,
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
    #[error(transparent)]
    Catalog(#[from] CatalogError),
    #[error("manifest: {0}")]
    Frame(#[from] FrameError),
    #[error(transparent)]
    Geiges(#[from] GeigesError),
}

/// Check suites, listed in dependency order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Check {
    Engel,
    Jengel,
    Forms,
    Jofreeb,
    Kengel,
    Splitting,
    Geiges,
    Equivariance,
}

impl Check {
    pub const ALL: [Check; 8] = [
        Check::Engel,
        Check::Jengel,
        Check::Forms,
        Check::Jofreeb,
        Check::Kengel,
        Check::Splitting,
        Check::Geiges,
        Check::Equivariance,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Check::Engel => "engel",
            Check::Jengel => "jengel",
            Check::Forms => "forms",
            Check::Jofreeb => "jofreeb",
            Check::Kengel => "kengel",
            Check::Splitting => "splitting",
            Check::Geiges => "geiges",
            Check::Equivariance => "equivariance",
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Check {
    type Err = ReportError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Check::ALL
            .into_iter()
            .find(|c| c.as_str() == s)
            .ok_or_else(|| ReportError::UnknownCheck(s.to_string()))
    }
}

/// Parses `all` or a comma-separated list; the result is deduplicated and
/// sorted into dependency order.
pub fn parse_suite(src: &str) -> Result<Vec<Check>, ReportError> {
    let mut out = Vec::new();
    for part in src.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        if part == "all" {
            out.extend(Check::ALL);
        } else {
            out.push(part.parse()?);
        }
    }
    out.sort();
    out.dedup();
    if out.is_empty() {
        return Err(ReportError::EmptySuite);
    }
    Ok(out)
}

/// What to verify.
#[derive(Clone, Debug)]
pub enum Target {
    Family(Box<FamilySpec>),
    Manifest(Box<LoadedManifest>),
}

impl Target {
    pub fn id(&self) -> String {
        match self {
            Target::Family(f) => f.id.as_str().to_string(),
            Target::Manifest(m) => m.id.clone(),
        }
    }
}

/// A catalog id, or else a path to a manifest file.
pub fn resolve_target(
    name: &str,
    params: &BTreeMap<String, BigRational>,
) -> Result<Target, ReportError> {
    if let Ok(id) = name.parse::<FamilyId>() {
        return Ok(Target::Family(Box::new(build_family(id, params)?)));
    }
    let path = std::path::Path::new(name);
    if !path.is_file() {
        return Err(ReportError::UnknownTarget(name.to_string()));
    }
    if !params.is_empty() {
        return Err(ReportError::ManifestParameters);
    }
    let text = std::fs::read_to_string(path).map_err(|e| ReportError::Io {
        path: name.to_string(),
        message: e.to_string(),
    })?;
    let loaded = Manifest::from_json(&text)?.load()?;
    Ok(Target::Manifest(Box::new(loaded)))
}

#[derive(Clone, Debug)]
pub struct RunOptions {
    pub grid: GridSpec,
    /// Seeds the random spot checks.
    pub seed: u64,
    /// Record wall-clock time per suite (breaks byte stability).
    pub timings: bool,
    /// Largest level tried by the mapping-torus search.
    pub n_max: u32,
}

impl Default for RunOptions {
    fn default() -> Self {
        Self {
            grid: GridSpec::default(),
            seed: 0,
            timings: false,
            n_max: 16,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct GridInfo {
    pub samples: usize,
    pub tolerance: f64,
}

/// `W ⊂ D ⊂ E` and the defining forms, in display form.
#[derive(Clone, Debug, Default, Serialize)]
pub struct FlagSummary {
    pub d: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub e3: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub w: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub beta: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reeb: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct GeigesSection {
    pub search: SearchReport,
    pub totally_real: SearchReport,
    pub fit: ResidualFit,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub version: &'static str,
    pub target: String,
    pub kind: &'static str,
    pub parameters: BTreeMap<String, String>,
    pub grid: GridInfo,
    pub seed: u64,
    pub suite: Vec<Check>,
    pub status: Status,
    pub flag: FlagSummary,
    pub records: Vec<CheckRecord>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub geiges: Option<GeigesSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings_ms: Option<BTreeMap<String, f64>>,
}

impl Report {
    /// PASS unless some record failed; DEVIATION and REJECTED do not fail.
    pub fn overall(records: &[CheckRecord]) -> Status {
        if records.iter().any(|r| r.status == Status::Fail) {
            Status::Fail
        } else {
            Status::Pass
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn record(&self, name: &str) -> Option<&CheckRecord> {
        self.records.iter().find(|r| r.name == name)
    }

    /// Canonical JSON: sorted keys, two-space indent, trailing newline.
    pub fn to_json(&self) -> String {
        let value = serde_json::to_value(self).expect("report serializes");
        let mut s = serde_json::to_string_pretty(&value).expect("value serializes");
        s.push('\n');
        s
    }
}

pub(crate) fn canonical_params(p: &BTreeMap<String, BigRational>) -> BTreeMap<String, String> {
    p.iter().map(|(k, v)| (k.clone(), to_pq(v))).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Text,
}

pub fn emit_report(report: &Report, format: Format) -> String {
    match format {
        Format::Json => report.to_json(),
        Format::Text => render_text(report),
    }
}
