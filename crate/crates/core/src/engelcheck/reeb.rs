use crate::framecalc::linalg::{adjugate, det, Matrix};
use crate::framecalc::{
    certify_all_zero, certify_nonvanishing, certify_zero, Certificate, ComplexStructure,
    FramedSpace, GridSpec, KForm, QScalar, QVec, VecField, DIM,
};
use crate::trigring::TrigScalar;

use super::{EngelError, EngelFlag};

/// Engel defining forms with their Reeb fields.
#[derive(Clone, Debug)]
pub struct DefiningForms {
    pub alpha: KForm,
    pub beta: KForm,
    pub d_alpha: KForm,
    pub d_beta: KForm,
    pub t: QVec,
    pub r: QVec,
    /// `det` of the linear system defining `T` and `R`.
    pub delta: TrigScalar,
    /// Named certificates for the form and Reeb conditions.
    pub conditions: Vec<(&'static str, Certificate)>,
}

/// `β(v) = α(Jv)`.
pub fn beta_of(alpha: &KForm, j: &ComplexStructure) -> KForm {
    KForm::one_form(std::array::from_fn(|k| alpha.pair(j.column(k))))
}

fn q_zero(v: &QVec, space: &FramedSpace, grid: &GridSpec) -> Certificate {
    certify_all_zero(v.num.coeffs().iter(), space, grid)
}

fn form_zero(f: &KForm, space: &FramedSpace, grid: &GridSpec) -> Certificate {
    let cs: Vec<TrigScalar> = f.terms().map(|(_, c)| c.clone()).collect();
    certify_all_zero(cs.iter(), space, grid)
}

fn form_nonvanishing(f: &KForm, space: &FramedSpace, grid: &GridSpec) -> Certificate {
    let w = crate::framecalc::linalg::sum_of_squares(f.terms().map(|(_, c)| c.clone()));
    certify_nonvanishing(&w, space, grid)
}

/// The normalized `α`: `det(D1, D2, E3, ·)` divided by `α([D1, E3])` (or
/// `α([D2, E3])`) when that pairing is an invertible constant.
pub fn normalized_alpha(flag: &EngelFlag) -> KForm {
    let raw = flag.volume_form();
    for g in &flag.g {
        if let Some(inv) = raw.pair(g).inverse_constant() {
            return raw.mul_scalar(&TrigScalar::constant(inv));
        }
    }
    raw
}

/// Builds `β = α∘J`, `T` and `R` for a given `α` annihilating `E`, and
/// certifies the defining-form and Reeb conditions.
pub fn forms_from_alpha(
    alpha: KForm,
    d: &[VecField; 2],
    j: &ComplexStructure,
    space: &FramedSpace,
    grid: &GridSpec,
) -> Result<DefiningForms, EngelError> {
    let beta = beta_of(&alpha, j);
    let d_alpha = alpha.d(space)?;
    let d_beta = beta.d(space)?;

    let mut conditions = Vec::new();
    let on_d: Vec<TrigScalar> = d
        .iter()
        .flat_map(|v| [alpha.pair(v), beta.pair(v)])
        .collect();
    conditions.push((
        "alpha(D) = beta(D) = 0",
        certify_all_zero(on_d.iter(), space, grid),
    ));
    let a_da = alpha.wedge(&d_alpha)?;
    conditions.push(("alpha^dalpha != 0", form_nonvanishing(&a_da, space, grid)));
    let a_b_db = alpha.wedge(&beta)?.wedge(&d_beta)?;
    conditions.push((
        "alpha^beta^dbeta != 0",
        certify_nonvanishing(&a_b_db.top(), space, grid),
    ));
    let a_da_b = a_da.wedge(&beta)?;
    conditions.push((
        "alpha^dalpha^beta = 0",
        certify_zero(&a_da_b.top(), space, grid),
    ));
    for (name, cert) in &conditions {
        if !cert.passed() {
            return Err(EngelError::FormCondition {
                condition: name.to_string(),
                certificate: Box::new(cert.clone()),
            });
        }
    }

    // Rows: α, β, i_{D1}dβ, i_{D2}dβ. R solves (1,0,0,0), T solves (0,1,0,0).
    let rows = [
        alpha.clone(),
        beta.clone(),
        d_beta.interior(&d[0])?,
        d_beta.interior(&d[1])?,
    ];
    let m: Matrix = rows
        .iter()
        .map(|f| (0..DIM).map(|k| f.coeff(&[k])).collect())
        .collect();
    let delta = det(&m);
    let delta_cert = certify_nonvanishing(&delta, space, grid);
    if !delta_cert.passed() {
        return Err(EngelError::FormCondition {
            condition: "Reeb system is nondegenerate".into(),
            certificate: Box::new(delta_cert),
        });
    }
    conditions.push(("Reeb system is nondegenerate", delta_cert));
    let adj = adjugate(&m);
    let column = |r: usize| VecField::new(std::array::from_fn(|k| adj[k][r].clone()));
    let r = QVec::new(column(0), delta.clone());
    let t = QVec::new(column(1), delta.clone());

    let one = |v: &QVec, f: &KForm| &f.pair(&v.num) - &v.den;
    let a_db = alpha.wedge(&d_beta)?;
    let b_db = beta.wedge(&d_beta)?;
    let reeb_t = [alpha.pair(&t.num), one(&t, &beta)];
    let reeb_r = [beta.pair(&r.num), one(&r, &alpha)];
    conditions.push((
        "alpha(T) = 0, beta(T) = 1",
        certify_all_zero(reeb_t.iter(), space, grid),
    ));
    conditions.push((
        "i_T(alpha^dbeta) = 0",
        form_zero(&a_db.interior(&t.num)?, space, grid),
    ));
    conditions.push((
        "beta(R) = 0, alpha(R) = 1",
        certify_all_zero(reeb_r.iter(), space, grid),
    ));
    conditions.push((
        "i_R(beta^dbeta) = 0",
        form_zero(&b_db.interior(&r.num)?, space, grid),
    ));

    Ok(DefiningForms {
        alpha,
        beta,
        d_alpha,
        d_beta,
        t,
        r,
        delta,
        conditions,
    })
}

/// Defining forms of an Engel flag with the default normalization.
pub fn defining_forms(
    flag: &EngelFlag,
    j: &ComplexStructure,
    space: &FramedSpace,
    grid: &GridSpec,
) -> Result<DefiningForms, EngelError> {
    if !flag.is_engel() {
        return Err(EngelError::NotEngel(
            flag.failure().map(|f| f.0).unwrap_or_default().into(),
        ));
    }
    forms_from_alpha(normalized_alpha(flag), &flag.d, j, space, grid)
}

/// `c_WX = β([W,X])`, `d_XT = α([X,T])`, `d_WR = α([W,R])`, `d_XR = α([X,R])`.
#[derive(Clone, Debug)]
pub struct StructureFunctions {
    pub c_wx: TrigScalar,
    pub d_xt: QScalar,
    pub d_wr: QScalar,
    pub d_xr: QScalar,
    pub c_wx_certificate: Certificate,
}

pub fn structure_functions(
    forms: &DefiningForms,
    w: &VecField,
    x: &VecField,
    space: &FramedSpace,
    grid: &GridSpec,
) -> Result<StructureFunctions, EngelError> {
    let c_wx = forms.beta.pair(&space.bracket(w, x));
    let c_wx_certificate = certify_nonvanishing(&c_wx, space, grid);
    if !c_wx_certificate.passed() {
        return Err(EngelError::FormCondition {
            condition: "c_WX vanishes nowhere".into(),
            certificate: Box::new(c_wx_certificate),
        });
    }
    let (qw, qx) = (QVec::from_field(w.clone()), QVec::from_field(x.clone()));
    Ok(StructureFunctions {
        d_xt: qx.bracket(&forms.t, space).pair(&forms.alpha),
        d_wr: qw.bracket(&forms.r, space).pair(&forms.alpha),
        d_xr: qx.bracket(&forms.r, space).pair(&forms.alpha),
        c_wx,
        c_wx_certificate,
    })
}

/// Residuals of the `JT` / `JR` formulas and of the `dα∧dα` identity.
#[derive(Clone, Debug)]
pub struct JofReeb {
    pub jt_residual: QVec,
    pub jr_residual: QVec,
    pub jt_certificate: Certificate,
    pub jr_certificate: Certificate,
    /// `c_WX·dα∧dα - 2·d_XT·d_WR·α∧β∧dβ` (top coefficient, cleared).
    pub dalpha_residual: TrigScalar,
    pub dalpha_certificate: Certificate,
}

/// Requires an integrable `J`; the Nijenhuis tensor is checked first.
#[allow(clippy::too_many_arguments)]
pub fn jofreeb_residual(
    forms: &DefiningForms,
    sf: &StructureFunctions,
    w: &VecField,
    x: &VecField,
    j: &ComplexStructure,
    space: &FramedSpace,
    grid: &GridSpec,
) -> Result<JofReeb, EngelError> {
    let nij: Vec<TrigScalar> = j
        .nijenhuis_table(space)
        .into_iter()
        .flat_map(|(_, v)| v.into_coeffs())
        .collect();
    let gate = certify_all_zero(nij.iter(), space, grid);
    if !gate.passed() {
        return Err(EngelError::NonIntegrable(Box::new(gate)));
    }
    let c = QScalar::from_scalar(sf.c_wx.clone());
    let p = (&sf.d_wr + &sf.d_xt).div(&c);
    let q = sf.d_xr.div(&c);
    let (qw, qx) = (QVec::from_field(w.clone()), QVec::from_field(x.clone()));
    let jt = forms.t.map(|v| j.apply(v));
    let jr = forms.r.map(|v| j.apply(v));
    let jt_residual = &(&(&jt - &forms.r) - &qw.mul_q(&p)) - &qx.mul_q(&q);
    let jr_residual = &(&(&jr + &forms.t) - &qw.mul_q(&q)) + &qx.mul_q(&p);

    let da2 = forms.d_alpha.wedge(&forms.d_alpha)?.top();
    let abdb = forms.alpha.wedge(&forms.beta)?.wedge(&forms.d_beta)?.top();
    let lhs = &(&(&sf.c_wx * &da2) * &sf.d_xt.den) * &sf.d_wr.den;
    let rhs =
        (&(&sf.d_xt.num * &sf.d_wr.num) * &abdb).scale_rational(&crate::trigring::rational::int(2));
    let dalpha_residual = &lhs - &rhs;
    Ok(JofReeb {
        jt_certificate: q_zero(&jt_residual, space, grid),
        jr_certificate: q_zero(&jr_residual, space, grid),
        jt_residual,
        jr_residual,
        dalpha_certificate: certify_zero(&dalpha_residual, space, grid),
        dalpha_residual,
    })
}
