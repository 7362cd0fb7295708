mod common;

use common::{params, vf};
use engel_core::catalog::{build_family, family, FamilyId, FamilySpec};
use engel_core::engelcheck::{
    characteristic_foliation, complex_framing, defining_forms, j_engel_splitting, jofreeb_residual,
    k_engel_check, structure_functions, totally_real_check, transverse_engel_check, verify_engel,
    DefiningForms, EngelError, Status,
};
use engel_core::framecalc::{
    CertificateKind, ComplexStructure, CoordSpec, FramedSpace, GridSpec, KForm, QScalar, QVec,
    VecField,
};
use engel_core::trigring::rational::{int, rat};
use engel_core::trigring::TrigScalar;
use num_rational::BigRational;

fn grid() -> GridSpec {
    GridSpec::default()
}

struct Pipeline {
    spec: FamilySpec,
    w: VecField,
    x: VecField,
    forms: DefiningForms,
}

fn pipeline(spec: FamilySpec) -> Pipeline {
    let flag = verify_engel(&spec.d, &spec.space, &grid());
    let w = characteristic_foliation(&flag, &spec.space, &grid())
        .unwrap()
        .w;
    let x = spec.j.apply(&w);
    let forms = defining_forms(&flag, &spec.j, &spec.space, &grid()).unwrap();
    Pipeline { spec, w, x, forms }
}

fn one_form(c: [i64; 4], scale: BigRational) -> KForm {
    KForm::one_form(c.map(|v| TrigScalar::rational(int(v) * &scale)))
}

/// A quotient with constant denominator, as a plain field.
fn field(q: &QVec) -> VecField {
    let den = q.den.as_rational().expect("constant denominator");
    q.num.scale_rational(&(int(1) / den))
}

fn constant(q: &QScalar) -> BigRational {
    let num = q.num.as_rational().expect("constant numerator");
    num / q.den.as_rational().expect("constant denominator")
}

fn proportional(a: &VecField, b: &VecField) -> bool {
    (0..4).all(|i| (0..4).all(|j| (&a[i] * &b[j] - &a[j] * &b[i]).is_identically_zero()))
}

#[test]
fn hopf_forms_and_reeb_fields_match_the_oracle() {
    let p = pipeline(family(FamilyId::HopfS3R));
    let sp = &p.spec.space;
    assert_eq!(p.forms.alpha, one_form([0, -1, 0, 1], rat(1, 2)));
    assert_eq!(p.forms.beta, one_form([-1, 0, 1, 0], rat(1, 2)));
    assert_eq!(field(&p.forms.r), vf(sp, &[("X4", "2")]));
    assert_eq!(field(&p.forms.t), vf(sp, &[("X1", "-1"), ("X3", "1")]));
    assert!(proportional(&p.w, &vf(sp, &[("X2", "1"), ("X4", "1")])));
    for (name, c) in &p.forms.conditions {
        assert_eq!(c.kind, CertificateKind::Symbolic, "{name}");
    }
}

#[test]
fn hyperelliptic_forms_match_the_oracle() {
    let p = pipeline(family(FamilyId::HyperellipticSolv));
    let sp = &p.spec.space;
    assert_eq!(p.forms.alpha, one_form([0, 1, 1, 0], int(-1)));
    assert_eq!(field(&p.forms.r), vf(sp, &[("X3", "-1")]));
    assert_eq!(field(&p.forms.t), vf(sp, &[("X1", "-1")]));
    assert!(proportional(&p.w, &vf(sp, &[("X2", "-1"), ("X3", "1")])));
    // printed forms agree up to the constant -1
    let (pa, pb) = p.spec.printed_forms.clone().unwrap();
    assert_eq!(p.forms.alpha, pa.mul_scalar(&TrigScalar::int(-1)));
    assert_eq!(p.forms.beta, pb.mul_scalar(&TrigScalar::int(-1)));
}

#[test]
fn jofreeb_identities_vanish_symbolically() {
    for id in [FamilyId::HopfS3R, FamilyId::HyperellipticSolv] {
        let p = pipeline(family(id));
        let sp = &p.spec.space;
        let sf = structure_functions(&p.forms, &p.w, &p.x, sp, &grid()).unwrap();
        let r = jofreeb_residual(&p.forms, &sf, &p.w, &p.x, &p.spec.j, sp, &grid()).unwrap();
        assert!(r.jt_residual.is_zero() && r.jr_residual.is_zero(), "{id}");
        assert!(r.dalpha_residual.is_identically_zero(), "{id}");
        for c in [&r.jt_certificate, &r.jr_certificate, &r.dalpha_certificate] {
            assert_eq!(c.kind, CertificateKind::Symbolic);
        }
        // c_WX = beta([W, JW]) is a nonzero constant
        assert!(sf.c_wx.as_rational().is_some_and(|c| c != int(0)));
    }
}

#[test]
fn hopf_structure_functions() {
    let p = pipeline(family(FamilyId::HopfS3R));
    let sp = &p.spec.space;
    let sf = structure_functions(&p.forms, &p.w, &p.x, sp, &grid()).unwrap();
    // oracle for W = -(X2 + X4): c_WX = 1, d_XT = 1, d_WR = d_XR = 0;
    // c_WX is quadratic and d_XT linear in the scale of W
    assert!(proportional(&p.w, &vf(sp, &[("X2", "-4"), ("X4", "-4")])));
    let scale = p.w[1].as_rational().unwrap() / int(-1);
    assert_eq!(sf.c_wx.as_rational().unwrap(), &scale * &scale);
    assert!(sf.d_wr.is_zero() && sf.d_xr.is_zero());
    assert_eq!(constant(&sf.d_xt), scale);
}

#[test]
fn jofreeb_rejects_non_integrable_j() {
    let p = pipeline(family(FamilyId::EllipticSl2R));
    let sp = &p.spec.space;
    let sf = structure_functions(&p.forms, &p.w, &p.x, sp, &grid()).unwrap();
    let err = jofreeb_residual(&p.forms, &sf, &p.w, &p.x, &p.spec.j, sp, &grid()).unwrap_err();
    assert!(matches!(err, EngelError::NonIntegrable(_)));
    assert_eq!(err.certificate().unwrap().kind, CertificateKind::Failed);
}

#[test]
fn k_engel_holds_on_hopf_and_hyperelliptic() {
    for id in [FamilyId::HopfS3R, FamilyId::HyperellipticSolv] {
        let p = pipeline(family(id));
        let k = k_engel_check(&p.forms, &p.w, &p.x, &p.spec.space, &grid());
        assert_eq!(k.status, Status::Pass, "{id}");
        assert_eq!(k.certificate.kind, CertificateKind::Symbolic);
        assert!(k.commutators.iter().all(QVec::is_zero));
        assert_eq!(k.constant_rescaling, Some(true));
    }
}

#[test]
fn k_engel_fails_on_inoue_s0_with_the_oracle_obstruction() {
    let p = pipeline(family(FamilyId::InoueS0));
    let sp = &p.spec.space;
    let k = k_engel_check(&p.forms, &p.w, &p.x, sp, &grid());
    assert_eq!(k.status, Status::Fail);
    assert!(k.commutators[0].is_zero() && k.commutators[2].is_zero());
    // oracle: [JW0, R] = 3 W0 + R for W0 = -X2 + X3; here W = -10 W0
    assert!(proportional(&p.w, &vf(sp, &[("X2", "-1"), ("X3", "1")])));
    let row: Vec<BigRational> = k.coefficients[1].iter().map(constant).collect();
    assert_eq!(row, vec![int(3), int(0), int(0), int(-10)]);
    assert_eq!(field(&p.forms.r), vf(sp, &[("X1", "3"), ("X3", "-1")]));
}

#[test]
fn k_engel_fails_for_every_inoue_s0_sample() {
    for ps in FamilyId::InoueS0.sample_parameters() {
        let p = pipeline(build_family(FamilyId::InoueS0, &ps).unwrap());
        let k = k_engel_check(&p.forms, &p.w, &p.x, &p.spec.space, &grid());
        assert_eq!(k.status, Status::Fail, "{ps:?}");
        assert!(k.coefficients.iter().flatten().any(|c| !c.is_zero()));
    }
}

fn abelian() -> FramedSpace {
    let coords = ["x", "y", "z", "w"]
        .iter()
        .map(|n| CoordSpec::new(n, None))
        .collect();
    let mut sp = FramedSpace::new(["E1", "E2", "E3", "E4"], coords).unwrap();
    for i in 0..4 {
        sp.set_derivation(i, i, TrigScalar::one()).unwrap();
    }
    sp
}

#[test]
fn abelian_plane_is_not_engel() {
    let sp = abelian();
    let d = [VecField::frame(0), VecField::frame(1)];
    let flag = verify_engel(&d, &sp, &grid());
    assert!(!flag.is_engel());
    assert!(flag.rank_d.passed());
    let (stage, cert) = flag.failure().unwrap();
    assert_eq!(stage, "rank(E) = 3");
    assert_eq!(cert.kind, CertificateKind::Failed);
    assert!(matches!(
        defining_forms(&flag, &ComplexStructure::standard(), &sp, &grid()),
        Err(EngelError::NotEngel(_))
    ));
}

#[test]
fn transverse_check_rejects_fields_inside_e() {
    let p = pipeline(family(FamilyId::HopfS3R));
    let recs = transverse_engel_check(&p.spec.d[0], &p.spec.d, &p.forms, &p.spec.space, &grid());
    assert_eq!(recs.len(), 1);
    assert_eq!(recs[0].status, Status::Rejected);
    // the printed Engel field passes
    let z = p.spec.engel_field.clone().unwrap();
    let recs = transverse_engel_check(&z, &p.spec.d, &p.forms, &p.spec.space, &grid());
    assert!(recs.iter().all(|r| r.status == Status::Pass), "{recs:?}");
}

#[test]
fn splitting_is_a_direct_sum_independent_of_the_conformal_factor() {
    for id in FamilyId::ALL {
        let p = pipeline(family(id));
        let s = j_engel_splitting(&p.forms, &p.w, &p.spec.d, &p.spec.j, &p.spec.space, &grid())
            .unwrap();
        assert!(s.direct_sum.passed(), "{id}");
        assert!(s.invariance.len() >= 2);
        for (label, cert, sampled) in &s.invariance {
            assert!(cert.passed(), "{id} lambda = {label}");
            assert!(*sampled < 1e-9, "{id} lambda = {label}: {sampled}");
        }
    }
}

#[test]
fn complex_framing_and_totally_real_disjointness() {
    let p = pipeline(family(FamilyId::HopfS3R));
    let (fr, cert) = complex_framing(&p.w, &p.spec.j, &p.spec.space, &grid()).unwrap();
    assert!(cert.passed());
    assert_eq!(fr[1], p.spec.j.apply(&p.w));
    // J-invariant D is never totally real
    assert!(!totally_real_check(&p.spec.d, &p.spec.j, &p.spec.space, &grid()).passed());
    assert!(complex_framing(&VecField::zero(), &p.spec.j, &p.spec.space, &grid()).is_err());
}

#[test]
fn inoue_spm_pipeline_runs_for_all_q() {
    for q in ["-2", "0", "1", "3/2"] {
        let p = pipeline(build_family(FamilyId::InoueSpm, &params(&[("q", q)])).unwrap());
        let sf = structure_functions(&p.forms, &p.w, &p.x, &p.spec.space, &grid()).unwrap();
        let r =
            jofreeb_residual(&p.forms, &sf, &p.w, &p.x, &p.spec.j, &p.spec.space, &grid()).unwrap();
        assert!(
            r.jt_certificate.passed() && r.jr_certificate.passed(),
            "q = {q}"
        );
    }
}
