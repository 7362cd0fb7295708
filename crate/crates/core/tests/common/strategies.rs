//! Generators and law checks shared by the law suite and the acceptance run.

use engel_core::catalog::{family, FamilyId};
use engel_core::framecalc::{FramedSpace, KForm, VecField};
use engel_core::trigring::rational::rat;
use engel_core::trigring::{normalize, RawExpr, TrigScalar};
use proptest::prelude::*;

pub const CASES: u32 = 1000;
pub const TOL: f64 = 1e-12;

fn number() -> impl Strategy<Value = RawExpr> {
    (-6i64..=6, 1i64..=4).prop_map(|(p, q)| RawExpr::Number(rat(p, q)))
}

/// `k·x_c + m·π/2` with integer `k`; quarter-turn phases are the only
/// constant phases the normal form absorbs exactly.
fn angle(coords: usize) -> impl Strategy<Value = RawExpr> {
    (0..coords, -3i64..=3, 0i64..4).prop_map(|(c, k, m)| {
        let lin = RawExpr::mul(RawExpr::Number(rat(k, 1)), RawExpr::Coordinate(c));
        let phase = RawExpr::mul(RawExpr::Number(rat(m, 2)), RawExpr::Pi);
        RawExpr::add(lin, phase)
    })
}

fn wave(coords: usize) -> impl Strategy<Value = RawExpr> {
    prop_oneof![
        angle(coords).prop_map(RawExpr::sin),
        angle(coords).prop_map(RawExpr::cos),
    ]
}

pub fn raw(coords: usize) -> impl Strategy<Value = RawExpr> {
    let leaf = prop_oneof![number(), wave(coords), Just(RawExpr::Pi)];
    leaf.prop_recursive(3, 12, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| RawExpr::add(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| RawExpr::sub(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| RawExpr::mul(a, b)),
            (inner.clone(), 1i32..=2).prop_map(|(a, n)| RawExpr::pow(a, n)),
            inner.prop_map(|a| RawExpr::Neg(Box::new(a))),
        ]
    })
}

/// Scalars on the one-coordinate Kodaira space (`t` of period 2π).
pub fn scalar() -> impl Strategy<Value = TrigScalar> {
    raw(1).prop_map(|e| normalize(&e).expect("affine arguments normalize"))
}

pub fn field() -> impl Strategy<Value = VecField> {
    [scalar(), scalar(), scalar(), scalar()].prop_map(VecField::new)
}

pub fn point() -> impl Strategy<Value = f64> {
    0.0f64..std::f64::consts::TAU
}

pub fn space() -> FramedSpace {
    family(FamilyId::KodairaPrimary).space
}

/// Direct floating-point evaluation, independent of the normal form.
pub fn eval_raw(e: &RawExpr, p: &[f64]) -> f64 {
    use num_traits::ToPrimitive;
    use std::f64::consts::PI;
    match e {
        RawExpr::Number(r) => r.to_f64().unwrap(),
        RawExpr::Pi => PI,
        RawExpr::Coordinate(c) => p[*c],
        RawExpr::Sin(a) => eval_raw(a, p).sin(),
        RawExpr::Cos(a) => eval_raw(a, p).cos(),
        RawExpr::Neg(a) => -eval_raw(a, p),
        RawExpr::Add(a, b) => eval_raw(a, p) + eval_raw(b, p),
        RawExpr::Sub(a, b) => eval_raw(a, p) - eval_raw(b, p),
        RawExpr::Mul(a, b) => eval_raw(a, p) * eval_raw(b, p),
        RawExpr::Div(a, b) => eval_raw(a, p) / eval_raw(b, p),
        RawExpr::Pow(a, n) => eval_raw(a, p).powi(*n),
    }
}

/// Absolute below 1, relative above.
pub fn close(a: f64, b: f64) -> bool {
    (a - b).abs() <= TOL * a.abs().max(b.abs()).max(1.0)
}

fn close_fields(a: &VecField, b: &VecField, t: f64) -> Result<(), TestCaseError> {
    let (va, vb) = (a.evaluate(&[t]).unwrap(), b.evaluate(&[t]).unwrap());
    for k in 0..4 {
        prop_assert!(close(va[k], vb[k]), "component {k}: {} vs {}", va[k], vb[k]);
    }
    Ok(())
}

pub fn evaluate_normalize(e: &RawExpr, p: [f64; 2]) -> Result<(), TestCaseError> {
    let s = normalize(e).unwrap();
    let (a, b) = (s.evaluate(&p).unwrap(), eval_raw(e, &p));
    prop_assert!(close(a, b), "{a} vs {b}");
    Ok(())
}

pub fn bilinear(
    u: &VecField,
    v: &VecField,
    w: &VecField,
    c: (i64, i64),
    t: f64,
) -> Result<(), TestCaseError> {
    let sp = space();
    let c = rat(c.0, c.1);
    let lhs = sp.bracket(&(&u.scale_rational(&c) + v), w);
    let rhs = &sp.bracket(u, w).scale_rational(&c) + &sp.bracket(v, w);
    prop_assert_eq!(&lhs, &rhs);
    close_fields(&lhs, &rhs, t)
}

pub fn antisymmetric(u: &VecField, v: &VecField) -> Result<(), TestCaseError> {
    let sp = space();
    prop_assert!((&sp.bracket(u, v) + &sp.bracket(v, u)).is_zero());
    Ok(())
}

/// `[u, f v] = u(f) v + f [u, v]`.
pub fn leibniz(u: &VecField, v: &VecField, f: &TrigScalar, t: f64) -> Result<(), TestCaseError> {
    let sp = space();
    let lhs = sp.bracket(u, &v.mul_scalar(f));
    let rhs = &v.mul_scalar(&sp.derivative(u, f)) + &sp.bracket(u, v).mul_scalar(f);
    prop_assert_eq!(&lhs, &rhs);
    close_fields(&lhs, &rhs, t)
}

pub fn jacobi(u: &VecField, v: &VecField, w: &VecField) -> Result<(), TestCaseError> {
    let sp = space();
    let j = &(&sp.bracket(u, &sp.bracket(v, w)) + &sp.bracket(v, &sp.bracket(w, u)))
        + &sp.bracket(w, &sp.bracket(u, v));
    prop_assert!(j.is_zero());
    Ok(())
}

/// `u(fg) = u(f) g + f u(g)`.
pub fn derivation(
    u: &VecField,
    f: &TrigScalar,
    g: &TrigScalar,
    t: f64,
) -> Result<(), TestCaseError> {
    let sp = space();
    let lhs = sp.derivative(u, &(f * g));
    let rhs = &(&sp.derivative(u, f) * g) + &(f * &sp.derivative(u, g));
    prop_assert_eq!(&lhs, &rhs);
    prop_assert!(close(
        lhs.evaluate(&[t]).unwrap(),
        rhs.evaluate(&[t]).unwrap()
    ));
    Ok(())
}

pub fn d_squared(f: &TrigScalar, c: &[TrigScalar; 4]) -> Result<(), TestCaseError> {
    let sp = space();
    let zero = KForm::function(f.clone()).d(&sp).unwrap().d(&sp).unwrap();
    prop_assert!(zero.is_zero());
    let one = KForm::one_form(c.clone()).d(&sp).unwrap().d(&sp).unwrap();
    prop_assert!(one.is_zero());
    Ok(())
}
