use std::collections::BTreeMap;

use num_traits::Zero;

use crate::framecalc::linalg::{adjugate, columns, det};
use crate::framecalc::{
    certify_all_zero, certify_nonvanishing, certify_zero, global_rank, rank_below, Certificate,
    CertificateKind, ComplexStructure, FramedSpace, GridSpec, QScalar, QVec, VecField, DIM,
};
use crate::trigring::{Affine, Frequency, TrigScalar};

use super::reeb::{forms_from_alpha, DefiningForms};
use super::{CheckRecord, EngelError, Status};

/// Rescalings `λ` used to probe independence of `span(R)` from the
/// conformal representative of `α`: `2`, `3/2` and, when the space has a
/// coordinate, `2 + cos(2π x/P)` for its first periodic coordinate.
pub fn splitting_lambdas(space: &FramedSpace) -> Vec<(String, TrigScalar)> {
    use crate::trigring::rational::rat;
    let mut out = vec![
        ("2".to_string(), TrigScalar::int(2)),
        ("3/2".to_string(), TrigScalar::rational(rat(3, 2))),
    ];
    let coord = space
        .coords()
        .iter()
        .enumerate()
        .find(|(_, c)| c.period.is_some())
        .or_else(|| space.coords().iter().enumerate().next());
    if let Some((i, c)) = coord {
        // angular frequency 2π/P, or 1 without a declared period
        let freq = match &c.period {
            Some(p) if p.pi.is_zero() => {
                Frequency::pi_multiple(crate::trigring::rational::int(2) / &p.rational)
            }
            Some(p) if p.rational.is_zero() => {
                Frequency::rational(crate::trigring::rational::int(2) / &p.pi)
            }
            _ => Frequency::rational(crate::trigring::rational::int(1)),
        };
        let arg = Affine::term(i, freq.clone());
        let cos = TrigScalar::cos_of(&arg).expect("plain frequency");
        let lambda = &TrigScalar::int(2) + &cos;
        let label = format!("2 + {}", cos.display(space.coord_names()));
        out.push((label, lambda));
    }
    out
}

/// The J-Engel splitting `TM = W ⊕ JW ⊕ JZ ⊕ Z` with `Z = span(R)`.
#[derive(Clone, Debug)]
pub struct Splitting {
    pub lines: [VecField; 4],
    pub direct_sum: Certificate,
    /// Per rescaling: exact proportionality of `R_λ` and `R`, and the
    /// largest sampled normalized `|R ∧ R_λ|`.
    pub invariance: Vec<(String, Certificate, f64)>,
}

fn normalized_wedge(a: &[f64; DIM], b: &[f64; DIM]) -> f64 {
    let na = a.iter().map(|x| x * x).sum::<f64>().sqrt();
    let nb = b.iter().map(|x| x * x).sum::<f64>().sqrt();
    let mut worst: f64 = 0.0;
    for i in 0..DIM {
        for j in (i + 1)..DIM {
            worst = worst.max((a[i] * b[j] - a[j] * b[i]).abs());
        }
    }
    worst / (na * nb)
}

/// Sampled proportionality residual on the tensor grid of all coordinates
/// that appear in `a` or `b`, one period each.
fn sampled_proportionality(
    a: &VecField,
    b: &VecField,
    space: &FramedSpace,
    grid: &GridSpec,
) -> f64 {
    let mut coords = std::collections::BTreeSet::new();
    let mut periods: BTreeMap<usize, f64> = BTreeMap::new();
    for s in a.coeffs().iter().chain(b.coeffs()) {
        for c in s.coordinates() {
            coords.insert(c);
        }
    }
    for &c in &coords {
        let freqs: Vec<Frequency> = a
            .coeffs()
            .iter()
            .chain(b.coeffs())
            .flat_map(|s| s.frequencies(c))
            .collect();
        let p = TrigScalar::common_period(&freqs)
            .or_else(|| space.coords()[c].period.clone())
            .map_or(1.0, |f| f.value());
        periods.insert(c, p);
    }
    let coords: Vec<usize> = coords.into_iter().collect();
    let n = grid.samples;
    let total = n.pow(coords.len() as u32);
    let mut point = vec![0.0; space.coords().len()];
    let mut worst: f64 = 0.0;
    for idx in 0..total {
        let mut rest = idx;
        for &c in &coords {
            point[c] = (rest % n) as f64 * periods[&c] / n as f64;
            rest /= n;
        }
        let (va, vb) = (a.evaluate(&point), b.evaluate(&point));
        if let (Ok(va), Ok(vb)) = (va, vb) {
            worst = worst.max(normalized_wedge(&va, &vb));
        }
    }
    worst
}

pub fn j_engel_splitting(
    forms: &DefiningForms,
    w: &VecField,
    d: &[VecField; 2],
    j: &ComplexStructure,
    space: &FramedSpace,
    grid: &GridSpec,
) -> Result<Splitting, EngelError> {
    let z = forms.r.num.clone();
    let lines = [w.clone(), j.apply(w), j.apply(&z), z];
    let direct_sum = global_rank(&[&lines[0], &lines[1], &lines[2], &lines[3]], space, grid)
        .expect("four fields");
    let mut invariance = Vec::new();
    for (label, lambda) in splitting_lambdas(space) {
        let scaled = forms.alpha.mul_scalar(&lambda);
        let other = forms_from_alpha(scaled, d, j, space, grid)?;
        let cert = rank_below(&[&forms.r.num, &other.r.num], 2, space, grid);
        let sampled = sampled_proportionality(&forms.r.num, &other.r.num, space, grid);
        invariance.push((label, cert, sampled));
    }
    Ok(Splitting {
        lines,
        direct_sum,
        invariance,
    })
}

/// Engel-vector-field test for a field `Z` transverse to `E` with `JZ ∈ E`.
pub fn transverse_engel_check(
    z: &VecField,
    d: &[VecField; 2],
    forms: &DefiningForms,
    space: &FramedSpace,
    grid: &GridSpec,
) -> Vec<CheckRecord> {
    let mut out = Vec::new();
    let transverse = certify_nonvanishing(&forms.alpha.pair(z), space, grid);
    let jz_in_e = certify_zero(&forms.beta.pair(z), space, grid);
    if !transverse.passed() || !jz_in_e.passed() {
        let mut r = CheckRecord::rejected(
            "transverse_engel.preconditions",
            if transverse.passed() {
                "beta(Z) does not vanish identically (JZ is not in E)"
            } else {
                "alpha(Z) vanishes somewhere (Z is not transverse to E)"
            },
        );
        r.certificate = Some(if transverse.passed() {
            jz_in_e
        } else {
            transverse
        });
        out.push(r);
        return out;
    }
    let brackets = [space.bracket(z, &d[0]), space.bracket(z, &d[1])];
    let lie = Certificate::all(
        brackets
            .iter()
            .map(|b| rank_below(&[&d[0], &d[1], b], 3, space, grid)),
        crate::framecalc::Claim::IdenticallyZero,
    );
    out.push(CheckRecord::from_certificate(
        "transverse_engel.L_Z(D) in D",
        lie,
    ));
    let form = forms.beta.wedge(&forms.d_beta).and_then(|f| f.interior(z));
    let coeffs: Vec<TrigScalar> = match &form {
        Ok(f) => f.terms().map(|(_, c)| c.clone()).collect(),
        Err(_) => Vec::new(),
    };
    out.push(CheckRecord::from_certificate(
        "transverse_engel.i_Z(beta^dbeta) = 0",
        certify_all_zero(coeffs.iter(), space, grid),
    ));
    let parallel = rank_below(&[z, &forms.r.num], 2, space, grid);
    let names = space.coord_names();
    let az = forms.alpha.pair(z);
    out.push(
        CheckRecord::from_certificate("transverse_engel.Z parallel to R", parallel)
            .detail("alpha(Z)", az.display(names)),
    );
    out
}

/// Coefficients of `v` in the frame `(W, X, T, R)`.
fn expand(v: &QVec, frame: [&QVec; 4]) -> [QScalar; 4] {
    let cols = [&frame[0].num, &frame[1].num, &frame[2].num, &frame[3].num];
    let m = columns(&cols);
    let dm = det(&m);
    let adj = adjugate(&m);
    std::array::from_fn(|i| {
        let mut s = TrigScalar::zero();
        for k in 0..DIM {
            s = &s + &(&adj[i][k] * &v.num[k]);
        }
        // v = Σ c'_i num_i, and num_i = den_i · frame_i
        QScalar::new(&s * &frame[i].den, &dm * &v.den)
    })
}

/// Outcome of the K-Engel criterion.
#[derive(Clone, Debug)]
pub struct KEngelReport {
    pub status: Status,
    pub commutators: [QVec; 3],
    /// `[W,R]`, `[X,R]`, `[T,R]` in the frame `(W, X, T, R)`.
    pub coefficients: [[QScalar; 4]; 3],
    pub d_beta_squared: TrigScalar,
    /// `Some(true)` if `a_WR` is the constant zero, `Some(false)` if it is a
    /// nonzero constant, `None` when non-constant (not decided here).
    pub constant_rescaling: Option<bool>,
    pub certificate: Certificate,
}

pub fn k_engel_check(
    forms: &DefiningForms,
    w: &VecField,
    x: &VecField,
    space: &FramedSpace,
    grid: &GridSpec,
) -> KEngelReport {
    let (qw, qx) = (QVec::from_field(w.clone()), QVec::from_field(x.clone()));
    let r = &forms.r;
    let commutators = [
        qw.bracket(r, space),
        qx.bracket(r, space),
        forms.t.bracket(r, space),
    ];
    let frame = [&qw, &qx, &forms.t, r];
    let coefficients = [
        expand(&commutators[0], frame),
        expand(&commutators[1], frame),
        expand(&commutators[2], frame),
    ];
    let certificate = Certificate::all(
        commutators
            .iter()
            .map(|c| certify_all_zero(c.num.coeffs().iter(), space, grid)),
        crate::framecalc::Claim::IdenticallyZero,
    );
    let a_wr = &coefficients[0][0];
    let constant_rescaling = if a_wr.is_zero() {
        Some(true)
    } else if a_wr.as_scalar().and_then(TrigScalar::as_constant).is_some() {
        Some(false)
    } else {
        None
    };
    let d_beta_squared = forms
        .d_beta
        .wedge(&forms.d_beta)
        .map(|f| f.top())
        .unwrap_or_default();
    let status = if certificate.kind != CertificateKind::Failed {
        Status::Pass
    } else {
        Status::Fail
    };
    KEngelReport {
        status,
        commutators,
        coefficients,
        d_beta_squared,
        constant_rescaling,
        certificate,
    }
}

/// Names of the obstruction coefficients in the expansion
/// `[W,R] = a_WR W`, `[X,R] = a_XR W + b_XR X`, `[T,R] = a_TR W + b_TR X + c_TR T`.
pub const OBSTRUCTION_NAMES: [[&str; 4]; 3] = [
    ["a_WR", "WR_X", "WR_T", "WR_R"],
    ["a_XR", "b_XR", "XR_T", "XR_R"],
    ["a_TR", "b_TR", "c_TR", "TR_R"],
];
