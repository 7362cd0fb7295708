use std::collections::BTreeMap;

use serde::Serialize;

use crate::trigring::{Frequency, TrigScalar, Wave};

use super::linalg::{columns, det, minors, sum_of_squares};
use super::{FrameError, FramedSpace, VecField, DIM};

pub const DEFAULT_SAMPLES: usize = 17;
pub const DEFAULT_TOLERANCE: f64 = 1e-6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum CertificateKind {
    Symbolic,
    Sampled,
    Failed,
}

impl CertificateKind {
    pub fn as_str(self) -> &'static str {
        match self {
            CertificateKind::Symbolic => "SYMBOLIC",
            CertificateKind::Sampled => "SAMPLED",
            CertificateKind::Failed => "FAILED",
        }
    }
}

/// What a certificate claims about its witness function.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Claim {
    NonVanishing,
    IdenticallyZero,
}

/// Outcome of a global check on one scalar witness function.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Certificate {
    pub kind: CertificateKind,
    pub claim: Claim,
    /// Normal form of a constant witness, e.g. `"-4"`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub constant: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub grid: Option<BTreeMap<String, usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub min_abs: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_abs: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<f64>,
    /// Point where the claim fails (or is closest to failing).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<BTreeMap<String, f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl Certificate {
    fn bare(kind: CertificateKind, claim: Claim) -> Self {
        Self {
            kind,
            claim,
            constant: None,
            grid: None,
            min_abs: None,
            max_abs: None,
            tolerance: None,
            witness: None,
            note: None,
        }
    }

    pub fn passed(&self) -> bool {
        self.kind != CertificateKind::Failed
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    /// Conjunction: the first failure wins, else the weakest pass.
    pub fn all(certs: impl IntoIterator<Item = Certificate>, claim: Claim) -> Certificate {
        let mut best: Option<Certificate> = None;
        for c in certs {
            if !c.passed() {
                return c;
            }
            best = match best {
                Some(b) if b.kind >= c.kind => Some(b),
                _ => Some(c),
            };
        }
        best.unwrap_or_else(|| {
            let mut c = Self::bare(CertificateKind::Symbolic, claim);
            c.constant = Some("0".into());
            c
        })
    }
}

/// Grid resolution and tolerance for SAMPLED certificates.
#[derive(Clone, Debug, PartialEq)]
pub struct GridSpec {
    pub samples: usize,
    /// A sampled non-vanishing claim passes when `min|s| > tolerance · max|s|`.
    pub tolerance: f64,
    /// Per-coordinate overrides of `samples`.
    pub overrides: BTreeMap<usize, usize>,
}

impl Default for GridSpec {
    fn default() -> Self {
        Self {
            samples: DEFAULT_SAMPLES,
            tolerance: DEFAULT_TOLERANCE,
            overrides: BTreeMap::new(),
        }
    }
}

impl GridSpec {
    pub fn new(samples: usize, tolerance: f64) -> Self {
        Self {
            samples,
            tolerance,
            overrides: BTreeMap::new(),
        }
    }

    pub fn with_override(mut self, coord: usize, samples: usize) -> Self {
        self.overrides.insert(coord, samples);
        self
    }

    fn samples_for(&self, coord: usize) -> usize {
        self.overrides
            .get(&coord)
            .copied()
            .unwrap_or(self.samples)
            .max(1)
    }
}

/// A scalar flattened to floating point for fast repeated evaluation.
struct Compiled {
    terms: Vec<(f64, u8, Vec<(usize, f64)>)>,
}

impl Compiled {
    fn new(s: &TrigScalar) -> Self {
        let terms = s
            .terms()
            .map(|(w, c)| {
                let (kind, arg) = match w {
                    Wave::One => (0, Vec::new()),
                    Wave::Cos(a) => (1, a.components().to_vec()),
                    Wave::Sin(a) => (2, a.components().to_vec()),
                };
                let arg = arg.into_iter().map(|(i, f)| (i, f.value())).collect();
                (c.to_f64(), kind, arg)
            })
            .collect();
        Self { terms }
    }

    fn eval(&self, p: &[f64]) -> f64 {
        let mut acc = 0.0;
        for (c, kind, arg) in &self.terms {
            let v = match kind {
                0 => 1.0,
                k => {
                    let x: f64 = arg.iter().map(|(i, f)| f * p[*i]).sum();
                    if *k == 1 {
                        x.cos()
                    } else {
                        x.sin()
                    }
                }
            };
            acc += c * v;
        }
        acc
    }
}

/// Period used to sample `coord`: the scalar's own fundamental period when
/// its frequencies are commensurate, else the declared period.
fn sampling_period(s: &TrigScalar, coord: usize, space: &FramedSpace) -> Option<Frequency> {
    s.period(coord)
        .or_else(|| space.coords().get(coord).and_then(|c| c.period.clone()))
}

struct Sweep {
    grid: BTreeMap<String, usize>,
    extreme: f64,
    /// Largest `|s|` seen, for relative thresholds.
    sup: f64,
    point: BTreeMap<String, f64>,
    note: Option<String>,
}

/// Visits every grid node in lexicographic order and keeps the first node
/// achieving the minimum (or maximum) of `|s|`.
fn sweep(s: &TrigScalar, space: &FramedSpace, grid: &GridSpec, minimize: bool) -> Sweep {
    let coords: Vec<usize> = s.coordinates().into_iter().collect();
    let mut steps = Vec::new();
    let mut notes = Vec::new();
    let mut names = BTreeMap::new();
    for &c in &coords {
        let name = space
            .coord_names()
            .get(c)
            .cloned()
            .unwrap_or_else(|| format!("x{c}"));
        let n = grid.samples_for(c);
        let period = match sampling_period(s, c, space) {
            Some(p) => p.value(),
            None => {
                notes.push(format!("no period for {name}; sampled [0, 1)"));
                1.0
            }
        };
        names.insert(name.clone(), n);
        steps.push((name, n, period / n as f64));
    }
    let compiled = Compiled::new(s);
    let arity = coords.last().map_or(0, |c| c + 1);
    let mut point = vec![0.0; arity];
    let mut idx = vec![0usize; coords.len()];
    let mut best = if minimize { f64::INFINITY } else { -1.0 };
    let mut best_idx = idx.clone();
    let mut sup: f64 = 0.0;
    loop {
        for (k, &c) in coords.iter().enumerate() {
            point[c] = idx[k] as f64 * steps[k].2;
        }
        let v = compiled.eval(&point).abs();
        sup = sup.max(v);
        if (minimize && v < best) || (!minimize && v > best) {
            best = v;
            best_idx.clone_from(&idx);
        }
        let mut k = coords.len();
        loop {
            if k == 0 {
                let point = coords
                    .iter()
                    .enumerate()
                    .map(|(k, _)| (steps[k].0.clone(), best_idx[k] as f64 * steps[k].2))
                    .collect();
                return Sweep {
                    grid: names,
                    extreme: best,
                    sup,
                    point,
                    note: (!notes.is_empty()).then(|| notes.join("; ")),
                };
            }
            k -= 1;
            idx[k] += 1;
            if idx[k] < steps[k].1 {
                break;
            }
            idx[k] = 0;
        }
    }
}

/// Certifies that `s` vanishes nowhere.
pub fn certify_nonvanishing(s: &TrigScalar, space: &FramedSpace, grid: &GridSpec) -> Certificate {
    if let Some(c) = s.as_constant() {
        let kind = if c.is_zero() {
            CertificateKind::Failed
        } else {
            CertificateKind::Symbolic
        };
        let mut cert = Certificate::bare(kind, Claim::NonVanishing);
        cert.constant = Some(c.to_string());
        return cert;
    }
    let sw = sweep(s, space, grid, true);
    // relative to the sampled sup, so the verdict is invariant under rescaling
    let pass = sw.extreme > grid.tolerance * sw.sup;
    let mut cert = Certificate::bare(
        if pass {
            CertificateKind::Sampled
        } else {
            CertificateKind::Failed
        },
        Claim::NonVanishing,
    );
    cert.grid = Some(sw.grid);
    cert.min_abs = Some(sw.extreme);
    cert.max_abs = Some(sw.sup);
    cert.tolerance = Some(grid.tolerance);
    cert.witness = (!pass).then_some(sw.point);
    cert.note = sw.note;
    cert
}

/// Certifies that `s` is identically zero. The normal form is unique, so a
/// nonzero normal form fails; the grid then locates the largest residual.
pub fn certify_zero(s: &TrigScalar, space: &FramedSpace, grid: &GridSpec) -> Certificate {
    if s.is_identically_zero() {
        let mut c = Certificate::bare(CertificateKind::Symbolic, Claim::IdenticallyZero);
        c.constant = Some("0".into());
        return c;
    }
    let mut cert = Certificate::bare(CertificateKind::Failed, Claim::IdenticallyZero);
    if let Some(c) = s.as_constant() {
        cert.constant = Some(c.to_string());
        cert.max_abs = Some(c.to_f64().abs());
        cert.witness = Some(BTreeMap::new());
        return cert;
    }
    let sw = sweep(s, space, grid, false);
    cert.grid = Some(sw.grid);
    cert.max_abs = Some(sw.extreme);
    cert.tolerance = Some(grid.tolerance);
    cert.witness = Some(sw.point);
    cert.note = sw.note;
    cert
}

/// Largest sampled `|s|` over its grid; exact for constants.
pub fn sup_abs(s: &TrigScalar, space: &FramedSpace, grid: &GridSpec) -> f64 {
    match s.as_constant() {
        Some(c) => c.to_f64().abs(),
        None => sweep(s, space, grid, false).extreme,
    }
}

pub fn certify_all_zero<'a>(
    scalars: impl IntoIterator<Item = &'a TrigScalar>,
    space: &FramedSpace,
    grid: &GridSpec,
) -> Certificate {
    Certificate::all(
        scalars.into_iter().map(|s| certify_zero(s, space, grid)),
        Claim::IdenticallyZero,
    )
}

/// Scalar whose non-vanishing is equivalent to `vs` having full rank
/// `min(|vs|, 4)`: the determinant for four fields, otherwise the sum of
/// squares of the maximal minors.
pub fn rank_witness(vs: &[&VecField]) -> TrigScalar {
    let m = columns(vs);
    if vs.len() == DIM {
        return det(&m);
    }
    let k = vs.len().min(DIM);
    let ms = minors(&m, k);
    if let Some((_, _, c)) = ms
        .iter()
        .find(|(_, _, c)| c.as_constant().is_some_and(|c| !c.is_zero()))
    {
        return c.clone();
    }
    sum_of_squares(ms.into_iter().map(|(_, _, c)| c))
}

/// Certifies that `vs` (1 to 4 fields) has rank `|vs|` everywhere.
pub fn global_rank(
    vs: &[&VecField],
    space: &FramedSpace,
    grid: &GridSpec,
) -> Result<Certificate, FrameError> {
    if vs.is_empty() || vs.len() > DIM {
        return Err(FrameError::RankArity(vs.len()));
    }
    Ok(certify_nonvanishing(&rank_witness(vs), space, grid))
}

/// Certifies that `vs` (at least 4 fields) spans the tangent space everywhere.
pub fn spans_everywhere(
    vs: &[&VecField],
    space: &FramedSpace,
    grid: &GridSpec,
) -> Result<Certificate, FrameError> {
    if vs.len() < DIM {
        return Err(FrameError::RankArity(vs.len()));
    }
    Ok(certify_nonvanishing(&rank_witness(vs), space, grid))
}

/// Certifies that every `k×k` minor of `vs` vanishes, i.e. rank `< k`.
pub fn rank_below(vs: &[&VecField], k: usize, space: &FramedSpace, grid: &GridSpec) -> Certificate {
    let ms = minors(&columns(vs), k);
    certify_all_zero(ms.iter().map(|(_, _, c)| c), space, grid)
}
