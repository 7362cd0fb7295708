use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::framecalc::{ComplexStructure, CoordSpec, FramedSpace, KForm, VecField};
use crate::trigring::rational::{fmt_rational, int};
use crate::trigring::{Frequency, TrigScalar};

use super::{torus_lattice_gate_rational, CatalogError, FamilyId};

/// A bracket of the distinguished generators `A`, `JA` of `D`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BracketExpr {
    /// `[A, JA]`
    AJa,
    /// `[A, [A, JA]]`
    AAJa,
    /// `[JA, [A, JA]]`
    JaAJa,
}

impl BracketExpr {
    pub fn label(self) -> &'static str {
        match self {
            BracketExpr::AJa => "[A,JA]",
            BracketExpr::AAJa => "[A,[A,JA]]",
            BracketExpr::JaAJa => "[JA,[A,JA]]",
        }
    }

    pub fn compute(self, d: &[VecField; 2], space: &FramedSpace) -> VecField {
        let first = space.bracket(&d[0], &d[1]);
        match self {
            BracketExpr::AJa => first,
            BracketExpr::AAJa => space.bracket(&d[0], &first),
            BracketExpr::JaAJa => space.bracket(&d[1], &first),
        }
    }
}

/// A bracket value as printed in the source tables.
#[derive(Clone, Debug)]
pub struct BracketExpectation {
    pub expr: BracketExpr,
    pub printed: VecField,
    /// The printed value is known to disagree with the Leibniz expansion.
    pub known_deviation: bool,
}

/// Everything needed to verify one example family.
#[derive(Clone, Debug)]
pub struct FamilySpec {
    pub id: FamilyId,
    pub description: &'static str,
    pub params: BTreeMap<String, BigRational>,
    pub space: FramedSpace,
    pub j: ComplexStructure,
    pub d: [VecField; 2],
    pub expectations: Vec<BracketExpectation>,
    /// Printed defining forms `(α, β)`, compared up to a constant factor.
    pub printed_forms: Option<(KForm, KForm)>,
    /// Printed J-Engel vector field transverse to `E`.
    pub engel_field: Option<VecField>,
    /// Expected K-Engel verdict when the source states one.
    pub k_engel: Option<bool>,
}

fn lie_space(brackets: &[(usize, usize, VecField)]) -> FramedSpace {
    let mut s = FramedSpace::new(["X1", "X2", "X3", "X4"], vec![]).expect("distinct names");
    for (i, j, v) in brackets {
        s.set_bracket(*i, *j, v.clone()).expect("constant table");
    }
    s
}

/// Coordinate frame `∂x1, ∂y1, ∂x2, ∂y2` of `C²` with the given periods.
fn coordinate_space(periods: [Option<Frequency>; 4]) -> FramedSpace {
    let names = ["x1", "y1", "x2", "y2"];
    let coords = names
        .iter()
        .zip(periods)
        .map(|(n, p)| CoordSpec::new(n, p))
        .collect();
    let mut s = FramedSpace::new(["dx1", "dy1", "dx2", "dy2"], coords).expect("distinct names");
    for i in 0..4 {
        s.set_derivation(i, i, TrigScalar::one()).expect("declared");
    }
    s
}

fn v(entries: &[(usize, i64)]) -> VecField {
    VecField::from_ints(entries)
}

fn e(i: usize) -> VecField {
    VecField::frame(i)
}

fn sc(s: &TrigScalar, i: usize) -> VecField {
    e(i).mul_scalar(s)
}

fn rv(r: &BigRational, i: usize) -> VecField {
    sc(&TrigScalar::rational(r.clone()), i)
}

fn form(entries: &[(usize, i64)]) -> KForm {
    let mut c: [TrigScalar; 4] = Default::default();
    for &(i, k) in entries {
        c[i] = TrigScalar::int(k);
    }
    KForm::one_form(c)
}

fn trig(kind: crate::trigring::PhaseKind, coord: usize, f: Frequency) -> TrigScalar {
    TrigScalar::wave(kind, &[(coord, f)], crate::trigring::Coeff::one())
}

fn lie_pair(space: &FramedSpace, j: &ComplexStructure, a: VecField) -> [VecField; 2] {
    let _ = space;
    let ja = j.apply(&a);
    [a, ja]
}

fn expect(expr: BracketExpr, printed: VecField) -> BracketExpectation {
    BracketExpectation {
        expr,
        printed,
        known_deviation: false,
    }
}

fn deviation(expr: BracketExpr, printed: VecField) -> BracketExpectation {
    BracketExpectation {
        expr,
        printed,
        known_deviation: true,
    }
}

fn param(params: &BTreeMap<String, BigRational>, name: &str, default: BigRational) -> BigRational {
    params.get(name).cloned().unwrap_or(default)
}

fn check_keys(
    id: FamilyId,
    params: &BTreeMap<String, BigRational>,
    allowed: &[&str],
) -> Result<(), CatalogError> {
    for k in params.keys() {
        if !allowed.contains(&k.as_str()) {
            return Err(CatalogError::UnknownParameter {
                family: id.as_str().into(),
                name: k.clone(),
            });
        }
    }
    Ok(())
}

fn invalid(id: FamilyId, message: impl Into<String>) -> CatalogError {
    CatalogError::InvalidParameter {
        family: id.as_str().into(),
        message: message.into(),
    }
}

/// Builds the family `id`; omitted parameters take their defaults
/// (`a = b = 1`, `q = 0`, `k = 2`, `Q = 1`).
pub fn build_family(
    id: FamilyId,
    params: &BTreeMap<String, BigRational>,
) -> Result<FamilySpec, CatalogError> {
    use crate::trigring::PhaseKind::{Cos, Sin};
    let std_j = ComplexStructure::standard();
    let mut used = BTreeMap::new();
    let spec = match id {
        FamilyId::TorusTrig => {
            check_keys(id, params, &["Q", "alpha1", "alpha2", "alpha3"])?;
            let alphas: Vec<_> = ["alpha1", "alpha2", "alpha3"]
                .iter()
                .filter_map(|k| params.get(*k).map(|v| (*k, v.clone())))
                .collect();
            let q = if let Some(q) = params.get("Q") {
                if !alphas.is_empty() {
                    return Err(invalid(id, "give either Q or alpha1..alpha3, not both"));
                }
                if !q.is_integer() || !q.is_positive() {
                    return Err(invalid(id, "Q must be a positive integer"));
                }
                q.clone()
            } else if alphas.is_empty() {
                BigRational::one()
            } else if alphas.len() == 3 {
                for (k, a) in &alphas {
                    used.insert(k.to_string(), a.clone());
                }
                let list: Vec<BigRational> = alphas.iter().map(|(_, a)| a.clone()).collect();
                BigRational::from_integer(torus_lattice_gate_rational(&list))
            } else {
                return Err(invalid(id, "alpha1, alpha2 and alpha3 must all be given"));
            };
            used.insert("Q".into(), q.clone());
            let space = coordinate_space([Some(Frequency::rational(int(1))), None, None, None]);
            let theta = Frequency::pi_multiple(&q * int(2));
            let (s, c) = (trig(Sin, 0, theta.clone()), trig(Cos, 0, theta));
            let a = &(&e(0) + &sc(&s, 2)) - &sc(&c, 3);
            FamilySpec {
                id,
                description: "complex torus, theta = 2*pi*Q*x1",
                params: used,
                d: lie_pair(&space, &std_j, a),
                space,
                j: std_j,
                expectations: vec![],
                printed_forms: None,
                engel_field: None,
                k_engel: None,
            }
        }
        FamilyId::TorusBryant => {
            check_keys(id, params, &[])?;
            let one = || Some(Frequency::rational(int(1)));
            let space =
                coordinate_space([Some(Frequency::pi_multiple(int(1))), one(), one(), one()]);
            let two = Frequency::rational(int(2));
            let (s, c) = (trig(Sin, 0, two.clone()), trig(Cos, 0, two));
            // kernel of e^{2i x1}(dx2 + i dy2) - i(dx1 + i dy1)
            let a = &(&e(2) + &sc(&s, 0)) - &sc(&c, 1);
            FamilySpec {
                id,
                description: "complex torus, kernel of exp(i(z + conj z)) dw - i dz",
                params: used,
                d: lie_pair(&space, &std_j, a),
                space,
                j: std_j,
                expectations: vec![],
                printed_forms: None,
                engel_field: None,
                k_engel: None,
            }
        }
        FamilyId::HyperellipticSolv => {
            check_keys(id, params, &[])?;
            let space = lie_space(&[(0, 3, e(1)), (1, 3, -&e(0))]);
            FamilySpec {
                id,
                description: "hyperelliptic surface, left-invariant",
                params: used,
                d: lie_pair(&space, &std_j, v(&[(0, 1), (3, 1)])),
                space,
                j: std_j,
                expectations: vec![
                    expect(BracketExpr::AJa, e(0)),
                    expect(BracketExpr::AAJa, -&e(1)),
                ],
                printed_forms: Some((form(&[(1, 1), (2, 1)]), form(&[(0, 1), (3, -1)]))),
                engel_field: Some(e(2)),
                k_engel: Some(true),
            }
        }
        FamilyId::HyperellipticProduct => {
            check_keys(id, params, &["k"])?;
            let k = param(params, "k", int(2));
            if !k.is_integer() || ![2, 3, 4, 6].iter().any(|&n| k == int(n)) {
                return Err(invalid(
                    id,
                    format!("k must be one of 2, 3, 4, 6 (got {})", fmt_rational(&k)),
                ));
            }
            used.insert("k".into(), k.clone());
            let n_k = &k * int(2) + int(2);
            used.insert("n_k".into(), n_k.clone());
            let space = coordinate_space([None, None, Some(Frequency::rational(int(1))), None]);
            let f = Frequency::pi_multiple(n_k);
            let (s, c) = (trig(Sin, 2, f.clone()), trig(Cos, 2, f));
            // complex structure conjugate on the first factor
            let j = ComplexStructure::new([-&e(1), e(0), e(3), -&e(2)]).expect("J^2 = -1");
            let x = &(&e(2) - &sc(&s, 0)) + &sc(&c, 1);
            FamilySpec {
                id,
                description: "hyperelliptic surface, rotating frame on C^2",
                params: used,
                d: lie_pair(&space, &j, x),
                space,
                j,
                expectations: vec![],
                printed_forms: None,
                engel_field: None,
                k_engel: None,
            }
        }
        FamilyId::KodairaPrimary => {
            check_keys(id, params, &[])?;
            let mut space = FramedSpace::new(
                ["X1", "X2", "X3", "X4"],
                vec![CoordSpec::new("t", Some(Frequency::pi_multiple(int(2))))],
            )
            .expect("distinct names");
            space.set_bracket(0, 1, -&e(2)).expect("constant");
            space
                .set_derivation(3, 0, TrigScalar::one())
                .expect("declared");
            let one = Frequency::rational(int(1));
            let (s, c) = (trig(Sin, 0, one.clone()), trig(Cos, 0, one));
            let a = &(&e(3) + &sc(&s, 0)) - &sc(&c, 1);
            FamilySpec {
                id,
                description: "primary Kodaira surface, Nil3 x R",
                params: used,
                d: lie_pair(&space, &std_j, a),
                space,
                j: std_j,
                expectations: vec![
                    deviation(BracketExpr::AJa, &(&e(2) - &sc(&s, 0)) + &sc(&c, 1)),
                    expect(BracketExpr::AAJa, &(-&sc(&c, 0)) - &sc(&s, 1)),
                ],
                printed_forms: None,
                engel_field: None,
                k_engel: None,
            }
        }
        FamilyId::KodairaSecondary => {
            check_keys(id, params, &[])?;
            let space = lie_space(&[(0, 1, -&e(2)), (0, 3, e(1)), (1, 3, -&e(0))]);
            FamilySpec {
                id,
                description: "secondary Kodaira surface",
                params: used,
                d: lie_pair(&space, &std_j, v(&[(0, 1), (3, 1)])),
                space,
                j: std_j,
                expectations: vec![
                    expect(BracketExpr::AJa, v(&[(0, 1), (2, -1)])),
                    expect(BracketExpr::AAJa, -&e(1)),
                ],
                printed_forms: None,
                engel_field: None,
                k_engel: None,
            }
        }
        FamilyId::InoueS0 => {
            check_keys(id, params, &["a", "b"])?;
            let a = param(params, "a", int(1));
            let b = param(params, "b", int(1));
            if a.is_zero() || b.is_zero() {
                return Err(invalid(id, "a and b must be nonzero"));
            }
            used.insert("a".into(), a.clone());
            used.insert("b".into(), b.clone());
            let space = lie_space(&[
                (0, 3, &rv(&-&a, 0) + &rv(&b, 1)),
                (1, 3, &rv(&-&b, 0) + &rv(&-&a, 1)),
                (2, 3, rv(&(&a * int(2)), 2)),
            ]);
            let first = &(&rv(&b, 0) + &rv(&a, 1)) + &rv(&(&a * int(2)), 2);
            let second = &(&rv(&(&a * &b * int(2)), 0) + &rv(&(&a * &a - &b * &b), 1))
                + &rv(&(&a * &a * int(-4)), 2);
            FamilySpec {
                id,
                description: "Inoue surface S0, Sol0^4",
                params: used,
                d: lie_pair(&space, &std_j, v(&[(0, 1), (3, 1)])),
                space,
                j: std_j,
                expectations: vec![
                    expect(BracketExpr::AJa, first),
                    expect(BracketExpr::AAJa, second),
                ],
                printed_forms: None,
                engel_field: None,
                k_engel: Some(false),
            }
        }
        FamilyId::InoueSpm => {
            check_keys(id, params, &["q"])?;
            let q = param(params, "q", BigRational::zero());
            used.insert("q".into(), q.clone());
            let space = lie_space(&[(1, 2, -&e(0)), (1, 3, -&e(1)), (2, 3, e(2))]);
            let j = inoue_spm_j(&q);
            FamilySpec {
                id,
                description: "Inoue surface S+/-, Sol1^4",
                params: used,
                d: lie_pair(&space, &j, v(&[(0, 1), (3, 1)])),
                space,
                j,
                expectations: vec![
                    expect(BracketExpr::AJa, v(&[(1, 1), (2, 1)])),
                    expect(BracketExpr::JaAJa, v(&[(0, -2)])),
                ],
                printed_forms: None,
                engel_field: None,
                k_engel: None,
            }
        }
        FamilyId::HopfS3R => {
            check_keys(id, params, &[])?;
            let space = lie_space(&[(0, 1, e(2)), (1, 2, e(0)), (2, 0, e(1))]);
            FamilySpec {
                id,
                description: "Hopf surface, S3 x R",
                params: used,
                d: lie_pair(&space, &std_j, v(&[(0, 1), (2, 1)])),
                space,
                j: std_j,
                expectations: vec![
                    expect(BracketExpr::AJa, v(&[(2, 1), (0, -1)])),
                    deviation(BracketExpr::AAJa, e(1)),
                ],
                printed_forms: Some((form(&[(3, 1), (1, -1)]), form(&[(2, 1), (0, -1)]))),
                engel_field: Some(e(3)),
                k_engel: Some(true),
            }
        }
        FamilyId::EllipticSl2R => {
            check_keys(id, params, &[])?;
            let space = lie_space(&[(0, 1, e(2)), (1, 2, e(0)), (2, 0, -&e(1))]);
            FamilySpec {
                id,
                description: "non-Kahler properly elliptic surface, SL(2,R)~ x R",
                params: used,
                d: lie_pair(&space, &std_j, v(&[(0, 1), (1, 1), (2, 1)])),
                space,
                j: std_j,
                expectations: vec![
                    expect(BracketExpr::AJa, v(&[(1, 1), (2, 2), (0, -1)])),
                    deviation(BracketExpr::AAJa, v(&[(0, 1), (1, 3)])),
                ],
                printed_forms: None,
                engel_field: None,
                k_engel: None,
            }
        }
    };
    Ok(spec)
}

/// `J X1 = X2`, `J X3 = X4 - q X2`, completed so that `J² = -1`.
pub fn inoue_spm_j(q: &BigRational) -> ComplexStructure {
    ComplexStructure::new(inoue_spm_columns(q)).expect("J^2 = -1 for every q")
}

pub(crate) fn inoue_spm_columns(q: &BigRational) -> [VecField; 4] {
    [e(1), -&e(0), &e(3) - &rv(q, 1), &(-&e(2)) - &rv(q, 0)]
}

/// The real and imaginary parts of `ω = e^{2i x1}(dx2 + i dy2) - i(dx1 + i dy1)`
/// over the coordinate coframe of the Bryant family.
pub fn bryant_omega() -> (KForm, KForm) {
    use crate::trigring::PhaseKind::{Cos, Sin};
    let two = Frequency::rational(int(2));
    let (s, c) = (trig(Sin, 0, two.clone()), trig(Cos, 0, two));
    let re = KForm::one_form([TrigScalar::zero(), TrigScalar::one(), c.clone(), -&s]);
    let im = KForm::one_form([TrigScalar::int(-1), TrigScalar::zero(), s, c]);
    (re, im)
}
