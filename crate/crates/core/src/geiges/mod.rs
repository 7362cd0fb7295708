//! J-Engel and totally real structures on mapping tori via oscillating
//! plane fields `D_n`.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::engelcheck::{j_invariance_check, totally_real_check, verify_engel};
use crate::framecalc::{
    certify_zero, global_rank, sup_abs, Certificate, ComplexStructure, CoordSpec, FrameError,
    FramedSpace, GridSpec, LoadedManifest, VecField,
};
use crate::trigring::rational::{int, rat};
use crate::trigring::{Coeff, Frequency, PhaseKind, TrigScalar};

#[derive(Debug, thiserror::Error)]
pub enum GeigesError {
    #[error("coordinate `{0}` is not declared")]
    MissingCoordinate(String),
    #[error("vector `{0}` is missing from the manifest")]
    MissingVector(String),
    #[error("L_V t must be 1, got {0}")]
    NotUnitSpeed(String),
    #[error("V, JV, X, JX do not frame TM")]
    NotFramed(Box<Certificate>),
    #[error("n must be at least 1")]
    InvalidLevel,
    #[error(transparent)]
    Frame(#[from] FrameError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Variant {
    /// `D_n = ⟨A_n, JA_n⟩`.
    JEngel,
    /// `D_n = ⟨V, JV + (1/n) cos X + (1/n) sin JX⟩`.
    TotallyReal,
}

impl Variant {
    pub fn as_str(self) -> &'static str {
        match self {
            Variant::JEngel => "j_engel",
            Variant::TotallyReal => "totally_real",
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Variant {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "j_engel" => Ok(Variant::JEngel),
            "totally_real" => Ok(Variant::TotallyReal),
            _ => Err(format!(
                "unknown variant `{s}` (expected j_engel or totally_real)"
            )),
        }
    }
}

/// A framed complex surface fibred over the circle, seen through the
/// pulled-back circle coordinate `t`.
#[derive(Clone, Debug)]
pub struct MappingTorusInput {
    pub id: String,
    pub space: FramedSpace,
    pub j: ComplexStructure,
    pub v: VecField,
    pub x: VecField,
    /// Index of `t` among the coordinates.
    pub t: usize,
    /// `a = L_{JV} t`.
    pub a: TrigScalar,
    pub framing: Certificate,
}

impl MappingTorusInput {
    /// Validates `L_V t = 1` and that `V, JV, X, JX` frame `TM`.
    pub fn new(
        id: &str,
        space: FramedSpace,
        j: ComplexStructure,
        v: VecField,
        x: VecField,
        t: &str,
        grid: &GridSpec,
    ) -> Result<Self, GeigesError> {
        let ti = space
            .coord_index(t)
            .ok_or_else(|| GeigesError::MissingCoordinate(t.into()))?;
        let speed = lie_derivative_of_coordinate(&space, &v, ti);
        if speed != TrigScalar::one() {
            return Err(GeigesError::NotUnitSpeed(
                speed.display(space.coord_names()).to_string(),
            ));
        }
        let jv = j.apply(&v);
        let a = lie_derivative_of_coordinate(&space, &jv, ti);
        let jx = j.apply(&x);
        let framing = global_rank(&[&v, &jv, &x, &jx], &space, grid)?;
        if !framing.passed() {
            return Err(GeigesError::NotFramed(Box::new(framing)));
        }
        Ok(Self {
            id: id.into(),
            space,
            j,
            v,
            x,
            t: ti,
            a,
            framing,
        })
    }

    /// Reads `V` and `X` from the manifest vectors and `t` from its coordinates.
    pub fn from_manifest(m: LoadedManifest, grid: &GridSpec) -> Result<Self, GeigesError> {
        let get = |k: &str| {
            m.vectors
                .get(k)
                .cloned()
                .ok_or_else(|| GeigesError::MissingVector(k.into()))
        };
        let (v, x) = (get("V")?, get("X")?);
        Self::new(&m.id, m.space, m.j, v, x, "t", grid)
    }

    /// Grid for level `n`: `17·n` samples per period of `t` unless overridden.
    pub fn level_grid(&self, n: u32, grid: &GridSpec) -> GridSpec {
        let mut g = grid.clone();
        g.overrides.entry(self.t).or_insert(17 * n as usize);
        g
    }

    fn waves(&self, n: u32) -> (TrigScalar, TrigScalar) {
        let f = Frequency::rational(int(i64::from(n) * i64::from(n)));
        let w = |k| TrigScalar::wave(k, &[(self.t, f.clone())], Coeff::one());
        (w(PhaseKind::Sin), w(PhaseKind::Cos))
    }
}

/// Flat `T⁴ = C²/Z⁴` framed by `∂t, ∂s, ∂x, ∂y` with `V = ∂t`, `X = ∂x`.
pub fn flat_t4() -> MappingTorusInput {
    let two_pi = || Some(Frequency::pi_multiple(int(2)));
    let coords = ["t", "s", "x", "y"]
        .iter()
        .map(|n| CoordSpec::new(n, two_pi()))
        .collect();
    let mut space = FramedSpace::new(["dt", "ds", "dx", "dy"], coords).expect("distinct names");
    for i in 0..4 {
        space
            .set_derivation(i, i, TrigScalar::one())
            .expect("declared");
    }
    MappingTorusInput::new(
        "flat_t4",
        space,
        ComplexStructure::standard(),
        VecField::frame(0),
        VecField::frame(2),
        "t",
        &GridSpec::default(),
    )
    .expect("flat torus is framed")
}

/// The Sol⁴₀ frame with `a = b = 1` and a circle coordinate `t`, `X4(t) = 1`;
/// `V = X4`, `X = X1`. Here `[V, JV] ≠ 0`, so the leading-order formulas
/// carry genuine `O(1/n)` corrections.
pub fn solvable_torus() -> MappingTorusInput {
    let e = VecField::frame;
    let mut space = FramedSpace::new(
        ["X1", "X2", "X3", "X4"],
        vec![CoordSpec::new("t", Some(Frequency::pi_multiple(int(2))))],
    )
    .expect("distinct names");
    space
        .set_bracket(0, 3, &(-&e(0)) + &e(1))
        .expect("constant");
    space
        .set_bracket(1, 3, &(-&e(0)) - &e(1))
        .expect("constant");
    space
        .set_bracket(2, 3, e(2).scale_rational(&int(2)))
        .expect("constant");
    space
        .set_derivation(3, 0, TrigScalar::one())
        .expect("declared");
    MappingTorusInput::new(
        "solvable_torus",
        space,
        ComplexStructure::standard(),
        e(3),
        e(0),
        "t",
        &GridSpec::default(),
    )
    .expect("framed")
}

/// The generating pair of `D_n`.
pub fn build_an(
    input: &MappingTorusInput,
    n: u32,
    variant: Variant,
) -> Result<[VecField; 2], GeigesError> {
    if n == 0 {
        return Err(GeigesError::InvalidLevel);
    }
    let (s, c) = input.waves(n);
    let inv = rat(1, i64::from(n));
    let x = &input.x;
    let jx = input.j.apply(x);
    let jv = input.j.apply(&input.v);
    Ok(match variant {
        Variant::JEngel => {
            let a = &(&input.v + &x.mul_scalar(&s).scale_rational(&inv))
                - &jx.mul_scalar(&c).scale_rational(&inv);
            let ja = input.j.apply(&a);
            [a, ja]
        }
        Variant::TotallyReal => {
            let b = &(&jv + &x.mul_scalar(&c).scale_rational(&inv))
                + &jx.mul_scalar(&s).scale_rational(&inv);
            [input.v.clone(), b]
        }
    })
}

fn vec_sup(v: &VecField, space: &FramedSpace, grid: &GridSpec) -> f64 {
    v.coeffs()
        .iter()
        .map(|c| sup_abs(c, space, grid))
        .fold(0.0, f64::max)
}

/// Sup-norm residuals of the two leading-order bracket formulas at level `n`.
#[derive(Clone, Debug, Serialize)]
pub struct LeadingOrder {
    pub n: u32,
    /// `(1/n)[A_n, JA_n]` minus its leading term.
    pub first: f64,
    /// `(1/n²)[A_n, (1/n)[A_n, JA_n]]` minus its leading term.
    pub second: f64,
    /// Whether each residual is zero in normal form.
    pub first_exact: bool,
    pub second_exact: bool,
}

pub fn leading_order_residual(
    input: &MappingTorusInput,
    n: u32,
    grid: &GridSpec,
) -> Result<LeadingOrder, GeigesError> {
    let [an, jan] = build_an(input, n, Variant::JEngel)?;
    let sp = &input.space;
    let inv = rat(1, i64::from(n));
    let first = sp.bracket(&an, &jan).scale_rational(&inv);
    let second = sp.bracket(&an, &first).scale_rational(&(&inv * &inv));
    let (s, c) = input.waves(n);
    let a = &input.a;
    let (x, jx) = (&input.x, input.j.apply(&input.x));
    let p = &s + &(a * &c);
    let q = &c - &(a * &s);
    let lead1 = &(-&x.mul_scalar(&p)) + &jx.mul_scalar(&q);
    let lead2 = &(-&x.mul_scalar(&q)) - &jx.mul_scalar(&p);
    let (r1, r2) = (&first - &lead1, &second - &lead2);
    let g = input.level_grid(n, grid);
    Ok(LeadingOrder {
        n,
        first: vec_sup(&r1, sp, &g),
        second: vec_sup(&r2, sp, &g),
        first_exact: r1.is_zero(),
        second_exact: r2.is_zero(),
    })
}

/// Least-squares slope of `ln r` against `ln n`; `None` unless every
/// residual is positive and finite.
pub fn log_log_slope(points: &[(u32, f64)]) -> Option<f64> {
    if points.len() < 2 || points.iter().any(|(_, r)| !(r.is_finite() && *r > 0.0)) {
        return None;
    }
    let xs: Vec<f64> = points.iter().map(|(n, _)| f64::from(*n).ln()).collect();
    let ys: Vec<f64> = points.iter().map(|(_, r)| r.ln()).collect();
    let m = xs.len() as f64;
    let (mx, my) = (xs.iter().sum::<f64>() / m, ys.iter().sum::<f64>() / m);
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    Some(sxy / sxx)
}

/// Decay of both residuals over a set of levels.
#[derive(Clone, Debug, Serialize)]
pub struct ResidualFit {
    pub levels: Vec<LeadingOrder>,
    pub slope_first: Option<f64>,
    pub slope_second: Option<f64>,
    /// `max_n n·residual₁(n)`, the constant in `residual₁ ≤ C/n`.
    pub constant_first: f64,
}

pub const FIT_LEVELS: [u32; 5] = [2, 4, 8, 16, 32];

pub fn fit_residuals(
    input: &MappingTorusInput,
    levels: &[u32],
    grid: &GridSpec,
) -> Result<ResidualFit, GeigesError> {
    let levels = levels
        .iter()
        .map(|&n| leading_order_residual(input, n, grid))
        .collect::<Result<Vec<_>, _>>()?;
    let pts = |f: fn(&LeadingOrder) -> f64| -> Vec<(u32, f64)> {
        levels.iter().map(|l| (l.n, f(l))).collect()
    };
    Ok(ResidualFit {
        slope_first: log_log_slope(&pts(|l| l.first)),
        slope_second: log_log_slope(&pts(|l| l.second)),
        constant_first: levels
            .iter()
            .map(|l| f64::from(l.n) * l.first)
            .fold(0.0, f64::max),
        levels,
    })
}

/// Outcome of the checks at one level `n`.
#[derive(Clone, Debug, Serialize)]
pub struct LevelTrace {
    pub n: u32,
    pub engel: bool,
    pub j_invariant: bool,
    pub totally_real: bool,
    /// Smallest sampled `|det|` of `(D1, D2, [D1,D2], [D_i,[D1,D2]])`, or the
    /// exact constant when the spanning witness is constant.
    pub spanning_min_abs: Option<f64>,
    pub spanning_constant: Option<String>,
    pub passed: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct SearchReport {
    pub variant: Variant,
    pub n_max: u32,
    pub found: Option<u32>,
    /// Engel certificate at the minimal level.
    pub certificate: Option<Certificate>,
    pub trace: Vec<LevelTrace>,
}

/// Runs the checks for one level; `passed` requires an Engel flag plus
/// `JD = D` (J-Engel variant) or `JD ∩ D = 0` (totally real variant).
pub fn check_level(
    input: &MappingTorusInput,
    n: u32,
    variant: Variant,
    grid: &GridSpec,
) -> Result<(LevelTrace, Certificate), GeigesError> {
    let d = build_an(input, n, variant)?;
    let g = input.level_grid(n, grid);
    let flag = verify_engel(&d, &input.space, &g);
    let j_inv = j_invariance_check(&d, &input.j, &input.space, &g).passed();
    let real = totally_real_check(&d, &input.j, &input.space, &g).passed();
    let engel = flag.is_engel();
    let passed = engel
        && match variant {
            Variant::JEngel => j_inv,
            Variant::TotallyReal => real,
        };
    let cert = flag
        .failure()
        .map(|(_, c)| c.clone())
        .unwrap_or_else(|| flag.rank_tm.clone());
    let trace = LevelTrace {
        n,
        engel,
        j_invariant: j_inv,
        totally_real: real,
        spanning_min_abs: flag.rank_tm.min_abs,
        spanning_constant: flag.rank_tm.constant.clone(),
        passed,
    };
    Ok((trace, cert))
}

/// Smallest `n ≤ n_max` whose `D_n` passes [`check_level`].
pub fn minimal_n_search(
    input: &MappingTorusInput,
    variant: Variant,
    grid: &GridSpec,
    n_max: u32,
) -> Result<SearchReport, GeigesError> {
    if n_max == 0 {
        return Err(GeigesError::InvalidLevel);
    }
    let mut trace = Vec::new();
    for n in 1..=n_max {
        let (level, cert) = check_level(input, n, variant, grid)?;
        let passed = level.passed;
        trace.push(level);
        if passed {
            return Ok(SearchReport {
                variant,
                n_max,
                found: Some(n),
                certificate: Some(cert),
                trace,
            });
        }
    }
    Ok(SearchReport {
        variant,
        n_max,
        found: None,
        certificate: None,
        trace,
    })
}

/// `L_V t - 1` as a certificate, for reporting.
pub fn unit_speed_certificate(input: &MappingTorusInput, grid: &GridSpec) -> Certificate {
    let r = &lie_derivative_of_coordinate(&input.space, &input.v, input.t) - &TrigScalar::one();
    certify_zero(&r, &input.space, grid)
}

/// `v(x_c) = Σ v^i E_i(x_c)`, read off the derivation table.
pub fn lie_derivative_of_coordinate(space: &FramedSpace, v: &VecField, c: usize) -> TrigScalar {
    (0..crate::framecalc::DIM).fold(TrigScalar::zero(), |acc, i| {
        &acc + &(&v[i] * space.derivation(i, c))
    })
}

/// Output of the standalone mapping-torus run.
#[derive(Clone, Debug, Serialize)]
pub struct GeigesRun {
    pub input: String,
    pub a: String,
    pub search: SearchReport,
    pub fit: ResidualFit,
}

impl GeigesRun {
    pub fn new(
        input: &MappingTorusInput,
        variant: Variant,
        grid: &GridSpec,
        n_max: u32,
    ) -> Result<Self, GeigesError> {
        Ok(Self {
            input: input.id.clone(),
            a: input.a.display(input.space.coord_names()).to_string(),
            search: minimal_n_search(input, variant, grid, n_max)?,
            fit: fit_residuals(input, &FIT_LEVELS, grid)?,
        })
    }

    /// Sorted-key JSON with a trailing newline.
    pub fn to_json(&self) -> String {
        let value = serde_json::to_value(self).expect("serializes");
        let mut s = serde_json::to_string_pretty(&value).expect("serializes");
        s.push('\n');
        s
    }
}
