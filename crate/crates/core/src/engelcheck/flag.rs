use crate::framecalc::{
    certify_all_zero, global_rank, spans_everywhere, Certificate, FramedSpace, GridSpec, KForm,
    VecField, DIM,
};
use crate::trigring::TrigScalar;

use super::EngelError;

/// The flag `W ⊂ D ⊂ E ⊂ TM` with its rank certificates.
#[derive(Clone, Debug)]
pub struct EngelFlag {
    pub d: [VecField; 2],
    /// `[D1, D2]`, completing `D` to a frame of `E`.
    pub e3: VecField,
    /// `[D1, E3]` and `[D2, E3]`.
    pub g: [VecField; 2],
    pub rank_d: Certificate,
    pub rank_e: Certificate,
    pub rank_tm: Certificate,
}

impl EngelFlag {
    pub fn is_engel(&self) -> bool {
        self.rank_d.passed() && self.rank_e.passed() && self.rank_tm.passed()
    }

    /// The first failing stage, if any.
    pub fn failure(&self) -> Option<(&'static str, &Certificate)> {
        [
            ("rank(D) = 2", &self.rank_d),
            ("rank(E) = 3", &self.rank_e),
            ("rank([D,E]) = 4", &self.rank_tm),
        ]
        .into_iter()
        .find(|(_, c)| !c.passed())
    }

    /// `v ↦ det(D1, D2, E3, v)`, which annihilates `E`.
    pub fn volume_form(&self) -> KForm {
        let cols = [&self.d[0], &self.d[1], &self.e3];
        let m: Vec<Vec<TrigScalar>> = (0..DIM)
            .map(|k| cols.iter().map(|v| v[k].clone()).collect())
            .collect();
        let coeffs: [TrigScalar; DIM] = std::array::from_fn(|k| {
            // cofactor of the last column in row k
            let minor: Vec<Vec<TrigScalar>> = m
                .iter()
                .enumerate()
                .filter(|(r, _)| *r != k)
                .map(|(_, row)| row.clone())
                .collect();
            let c = crate::framecalc::linalg::det(&minor);
            if (k + DIM - 1) % 2 == 0 {
                c
            } else {
                -c
            }
        });
        KForm::one_form(coeffs)
    }
}

/// Certifies `rank D = 2`, `rank E = 3` for `E = D + [D, D]` and
/// `[D, E] = TM`, in that order; later stages still run so a report can
/// show every certificate.
pub fn verify_engel(d: &[VecField; 2], space: &FramedSpace, grid: &GridSpec) -> EngelFlag {
    let e3 = space.bracket(&d[0], &d[1]);
    let g = [space.bracket(&d[0], &e3), space.bracket(&d[1], &e3)];
    let rank_d = global_rank(&[&d[0], &d[1]], space, grid).expect("two fields");
    let rank_e = global_rank(&[&d[0], &d[1], &e3], space, grid).expect("three fields");
    let rank_tm =
        spans_everywhere(&[&d[0], &d[1], &e3, &g[0], &g[1]], space, grid).expect("five fields");
    EngelFlag {
        d: d.clone(),
        e3,
        g,
        rank_d,
        rank_e,
        rank_tm,
    }
}

/// A section of the characteristic foliation together with the
/// certificate that `[W, D_i]` and `[W, E3]` stay inside `E`.
#[derive(Clone, Debug)]
pub struct Characteristic {
    pub w: VecField,
    pub lambda: [TrigScalar; 2],
    pub invariance: Certificate,
}

/// Solves `α([W, E3]) = 0` for `W = λ1 D1 + λ2 D2`. The constraints
/// `α([W, D_i]) = 0` hold automatically, which leaves the closed form
/// `λ = (α([D2,E3]), -α([D1,E3]))`.
pub fn characteristic_foliation(
    flag: &EngelFlag,
    space: &FramedSpace,
    grid: &GridSpec,
) -> Result<Characteristic, EngelError> {
    if !flag.is_engel() {
        return Err(EngelError::NotEngel(
            flag.failure().map(|f| f.0).unwrap_or_default().into(),
        ));
    }
    let alpha = flag.volume_form();
    let lambda = [alpha.pair(&flag.g[1]), -alpha.pair(&flag.g[0])];
    let w = &flag.d[0].mul_scalar(&lambda[0]) + &flag.d[1].mul_scalar(&lambda[1]);
    let residuals = [
        alpha.pair(&space.bracket(&w, &flag.e3)),
        alpha.pair(&space.bracket(&w, &flag.d[0])),
        alpha.pair(&space.bracket(&w, &flag.d[1])),
    ];
    let invariance = certify_all_zero(residuals.iter(), space, grid);
    Ok(Characteristic {
        w,
        lambda,
        invariance,
    })
}
