//! Example families of J-Engel structures on compact complex surfaces.

mod families;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::framecalc::{
    certify_all_zero, Certificate, Claim, CoordSpec, FramedSpace, GridSpec, VecField,
};
use crate::trigring::rational::{fmt_rational, int, parse_rational};
use crate::trigring::{Coeff, Frequency, PhaseKind, TrigScalar};

pub use families::{
    bryant_omega, build_family, inoue_spm_j, BracketExpectation, BracketExpr, FamilySpec,
};

#[derive(Debug, thiserror::Error, PartialEq)]
pub enum CatalogError {
    #[error("unknown family `{0}`")]
    UnknownFamily(String),
    #[error("family `{family}` has no parameter `{name}`")]
    UnknownParameter { family: String, name: String },
    #[error("invalid parameter for `{family}`: {message}")]
    InvalidParameter { family: String, message: String },
    #[error("`{0}` is not a rational number; the lattice gate needs rational inputs")]
    NonRational(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FamilyId {
    TorusTrig,
    TorusBryant,
    HyperellipticSolv,
    HyperellipticProduct,
    KodairaPrimary,
    KodairaSecondary,
    InoueS0,
    InoueSpm,
    HopfS3R,
    EllipticSl2R,
}

impl FamilyId {
    pub const ALL: [FamilyId; 10] = [
        FamilyId::TorusTrig,
        FamilyId::TorusBryant,
        FamilyId::HyperellipticSolv,
        FamilyId::HyperellipticProduct,
        FamilyId::KodairaPrimary,
        FamilyId::KodairaSecondary,
        FamilyId::InoueS0,
        FamilyId::InoueSpm,
        FamilyId::HopfS3R,
        FamilyId::EllipticSl2R,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            FamilyId::TorusTrig => "torus_trig",
            FamilyId::TorusBryant => "torus_bryant",
            FamilyId::HyperellipticSolv => "hyperelliptic_solv",
            FamilyId::HyperellipticProduct => "hyperelliptic_product",
            FamilyId::KodairaPrimary => "kodaira_primary",
            FamilyId::KodairaSecondary => "kodaira_secondary",
            FamilyId::InoueS0 => "inoue_s0",
            FamilyId::InoueSpm => "inoue_spm",
            FamilyId::HopfS3R => "hopf_s3r",
            FamilyId::EllipticSl2R => "elliptic_sl2r",
        }
    }

    /// Parameter names with their defaults, in display order.
    pub fn parameters(self) -> &'static [(&'static str, &'static str)] {
        match self {
            FamilyId::TorusTrig => &[("Q", "1")],
            FamilyId::HyperellipticProduct => &[("k", "2")],
            FamilyId::InoueS0 => &[("a", "1"), ("b", "1")],
            FamilyId::InoueSpm => &[("q", "0")],
            _ => &[],
        }
    }

    /// Parameter sets exercised by the sweep tests and `catalog show`.
    pub fn sample_parameters(self) -> Vec<BTreeMap<String, BigRational>> {
        let values = || {
            [
                int(-2),
                int(0),
                int(1),
                crate::trigring::rational::rat(3, 2),
            ]
        };
        let one = |k: &str, v: BigRational| BTreeMap::from([(k.to_string(), v)]);
        match self {
            FamilyId::TorusTrig => (1..=3).map(|q| one("Q", int(q))).collect(),
            FamilyId::HyperellipticProduct => {
                [2, 3, 4, 6].iter().map(|&k| one("k", int(k))).collect()
            }
            FamilyId::InoueSpm => values().into_iter().map(|q| one("q", q)).collect(),
            FamilyId::InoueS0 => {
                let mut out = Vec::new();
                for a in values().into_iter().filter(|v| !v.is_zero()) {
                    for b in values().into_iter().filter(|v| !v.is_zero()) {
                        out.push(BTreeMap::from([
                            ("a".to_string(), a.clone()),
                            ("b".to_string(), b),
                        ]));
                    }
                }
                out
            }
            _ => vec![BTreeMap::new()],
        }
    }
}

impl fmt::Display for FamilyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for FamilyId {
    type Err = CatalogError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        FamilyId::ALL
            .into_iter()
            .find(|f| f.as_str() == s)
            .ok_or_else(|| CatalogError::UnknownFamily(s.to_string()))
    }
}

/// Parses `k=v` pairs (comma separated) into rational parameters.
pub fn parse_params(src: &str) -> Result<BTreeMap<String, BigRational>, CatalogError> {
    let mut out = BTreeMap::new();
    for part in src.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let (k, v) = part
            .split_once('=')
            .ok_or_else(|| CatalogError::InvalidParameter {
                family: String::new(),
                message: format!("expected name=value, got `{part}`"),
            })?;
        let r = parse_rational(v).ok_or_else(|| CatalogError::InvalidParameter {
            family: String::new(),
            message: format!("`{}` is not rational", v.trim()),
        })?;
        out.insert(k.trim().to_string(), r);
    }
    Ok(out)
}

/// Builds a family with default parameters.
pub fn family(id: FamilyId) -> FamilySpec {
    build_family(id, &BTreeMap::new()).expect("defaults are valid")
}

/// Product of the reduced denominators of the `α_i`; `Q·α_i ∈ Z` for all `i`.
pub fn torus_lattice_gate_rational(alphas: &[BigRational]) -> BigInt {
    alphas.iter().fold(BigInt::one(), |acc, a| acc * a.denom())
}

/// String front end of [`torus_lattice_gate_rational`]; anything that is
/// not a finite rational (e.g. `sqrt(2)`) is rejected.
pub fn torus_lattice_gate(alphas: &[&str]) -> Result<BigInt, CatalogError> {
    let parsed = alphas
        .iter()
        .map(|s| parse_rational(s).ok_or_else(|| CatalogError::NonRational(s.to_string())))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(torus_lattice_gate_rational(&parsed))
}

/// `ω(A) = ω(JA) = 0` for the real and imaginary parts of the Bryant form.
pub fn bryant_kernel_check(spec: &FamilySpec, grid: &GridSpec) -> Certificate {
    let (re, im) = bryant_omega();
    let values: Vec<TrigScalar> = spec
        .d
        .iter()
        .flat_map(|v| [re.pair(v), im.pair(v)])
        .collect();
    certify_all_zero(values.iter(), &spec.space, grid)
}

/// Invariance of the hyperelliptic-product distribution under the
/// generators of the group action.
#[derive(Clone, Debug, Serialize)]
pub struct EquivarianceReport {
    pub k: u32,
    pub n_k: u32,
    /// `n_k π / k - θ_k` as a multiple of `2π`.
    pub winding: String,
    /// `R(θ) R(n_k π x2) = R(n_k π x2 + θ)` for a formal angle `θ`.
    pub rotation: Certificate,
    /// `n_k π (1/k) - θ_k ∈ 2πZ`, exact.
    pub phase: Certificate,
    /// The rotation commutes with `J` on the first factor.
    pub holomorphic: Certificate,
    /// `∂/∂x1` and `∂/∂y2` of the coefficients vanish.
    pub translation: Certificate,
}

impl EquivarianceReport {
    pub fn passed(&self) -> bool {
        self.rotation.passed()
            && self.phase.passed()
            && self.holomorphic.passed()
            && self.translation.passed()
    }
}

/// Checks `g_* X = X ∘ g` for `g(z1, z2) = (e^{iθ_k} z1, z2 + 1/k)` with
/// `θ_k = 2π/k`, and translation invariance in `x1`, `y2`.
pub fn hyperelliptic_equivariance_check(
    k: u32,
    grid: &GridSpec,
) -> Result<EquivarianceReport, CatalogError> {
    let family = FamilyId::HyperellipticProduct;
    if ![2, 3, 4, 6].contains(&k) {
        return Err(CatalogError::InvalidParameter {
            family: family.as_str().into(),
            message: format!("k = {k}: only rotations of order 2, 3, 4, 6 preserve a lattice in C"),
        });
    }
    let n_k = 2 * k + 2;
    let spec = build_family(family, &BTreeMap::from([("k".into(), int(k as i64))]))?;

    // Formal space: x2 and an angle θ.
    let formal = FramedSpace::new(
        ["e1", "e2", "e3", "e4"],
        vec![CoordSpec::new("x2", None), CoordSpec::new("theta", None)],
    )
    .expect("distinct names");
    let phi = Frequency::pi_multiple(int(n_k as i64));
    let one = Frequency::rational(int(1));
    let wave = |kind, args: &[(usize, Frequency)]| TrigScalar::wave(kind, args, Coeff::one());
    let (cp, sp) = (
        wave(PhaseKind::Cos, &[(0, phi.clone())]),
        wave(PhaseKind::Sin, &[(0, phi.clone())]),
    );
    let (ct, st) = (
        wave(PhaseKind::Cos, &[(1, one.clone())]),
        wave(PhaseKind::Sin, &[(1, one.clone())]),
    );
    let sum = [(0, phi.clone()), (1, one)];
    let (cs, ss) = (wave(PhaseKind::Cos, &sum), wave(PhaseKind::Sin, &sum));
    // R(θ)R(φ) - R(φ+θ), entrywise
    let residuals = [
        &(&(&ct * &cp) - &(&st * &sp)) - &cs,
        &(&(&st * &cp) + &(&ct * &sp)) - &ss,
    ];
    let rotation = certify_all_zero(residuals.iter(), &formal, grid);

    // J on the (x1, y1) block is -J_std; R(θ) commutes with it.
    let jblock = |v: [TrigScalar; 2]| [v[1].clone(), -&v[0]];
    let rot = |v: [TrigScalar; 2]| {
        [
            &(&ct * &v[0]) - &(&st * &v[1]),
            &(&st * &v[0]) + &(&ct * &v[1]),
        ]
    };
    let mut holo = Vec::new();
    for basis in [
        [TrigScalar::one(), TrigScalar::zero()],
        [TrigScalar::zero(), TrigScalar::one()],
    ] {
        let a = rot(jblock(basis.clone()));
        let b = jblock(rot(basis));
        holo.push(&a[0] - &b[0]);
        holo.push(&a[1] - &b[1]);
    }
    let holomorphic = certify_all_zero(holo.iter(), &formal, grid);
    // J of the product family restricted to the first factor agrees with the block map.
    debug_assert_eq!(spec.j.apply(&VecField::frame(0)), -&VecField::frame(1));

    // n_k π/k - 2π/k = 2π·(n_k - 2)/(2k)
    let winding = BigRational::new(BigInt::from(n_k - 2), BigInt::from(2 * k));
    let phase = if winding.is_integer() {
        let mut c = Certificate::all(std::iter::empty(), Claim::IdenticallyZero);
        c.note = Some(format!(
            "n_k*pi/k - 2*pi/k = 2*pi*{}",
            fmt_rational(&winding)
        ));
        c
    } else {
        let residue = TrigScalar::rational(&winding - winding.floor());
        crate::framecalc::certify_zero(&residue, &formal, grid)
    };

    let partials: Vec<TrigScalar> = spec
        .d
        .iter()
        .flat_map(|v| v.coeffs().to_vec())
        .flat_map(|c| [c.differentiate(0), c.differentiate(3)])
        .collect();
    let translation = certify_all_zero(partials.iter(), &spec.space, grid);

    Ok(EquivarianceReport {
        k,
        n_k,
        winding: fmt_rational(&winding),
        rotation,
        phase,
        holomorphic,
        translation,
    })
}

/// One-line summaries for `catalog list`.
pub fn list() -> Vec<(FamilyId, &'static str)> {
    FamilyId::ALL
        .into_iter()
        .map(|id| (id, family(id).description))
        .collect()
}
