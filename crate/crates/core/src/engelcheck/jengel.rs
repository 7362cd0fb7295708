use crate::framecalc::{
    global_rank, rank_below, Certificate, ComplexStructure, FramedSpace, GridSpec, VecField,
};

use super::EngelError;

/// `JD = D`: every 3×3 minor of `(D1, D2, J D_i)` vanishes.
pub fn j_invariance_check(
    d: &[VecField; 2],
    j: &ComplexStructure,
    space: &FramedSpace,
    grid: &GridSpec,
) -> Certificate {
    let certs = d.iter().map(|di| {
        let jd = j.apply(di);
        rank_below(&[&d[0], &d[1], &jd], 3, space, grid)
    });
    Certificate::all(certs, crate::framecalc::Claim::IdenticallyZero)
}

/// Complex framing `⟨W, JW, [W,JW], J[W,JW]⟩` of a J-Engel structure.
pub fn complex_framing(
    w: &VecField,
    j: &ComplexStructure,
    space: &FramedSpace,
    grid: &GridSpec,
) -> Result<([VecField; 4], Certificate), EngelError> {
    if w.is_zero() {
        return Err(EngelError::Precondition(
            "characteristic field is zero".into(),
        ));
    }
    let jw = j.apply(w);
    let y = space.bracket(w, &jw);
    let jy = j.apply(&y);
    let cert = global_rank(&[w, &jw, &y, &jy], space, grid).expect("four fields");
    Ok(([w.clone(), jw, y, jy], cert))
}

/// `JD ∩ D = 0`: `(D1, D2, JD1, JD2)` has rank 4 everywhere.
pub fn totally_real_check(
    d: &[VecField; 2],
    j: &ComplexStructure,
    space: &FramedSpace,
    grid: &GridSpec,
) -> Certificate {
    let (j0, j1) = (j.apply(&d[0]), j.apply(&d[1]));
    global_rank(&[&d[0], &d[1], &j0, &j1], space, grid).expect("four fields")
}
