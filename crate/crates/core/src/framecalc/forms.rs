use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use crate::trigring::TrigScalar;

use super::linalg::{det, Matrix};
use super::{FrameError, FramedSpace, VecField, DIM};

/// An exterior form over the coframe `a_1..a_4` dual to the frame.
///
/// Coefficients are stored once per increasing index set, encoded as a
/// bitmask (`0b0101` is `a_1∧a_3`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KForm {
    degree: usize,
    coeffs: BTreeMap<u8, TrigScalar>,
}

fn indices(mask: u8) -> Vec<usize> {
    (0..DIM).filter(|i| mask & (1 << i) != 0).collect()
}

/// Sign of the shuffle that sorts `a ++ b`, for disjoint `a`, `b`.
fn merge_sign(a: u8, b: u8) -> i64 {
    let mut inversions = 0;
    for i in indices(a) {
        inversions += indices(b).iter().filter(|&&j| j < i).count();
    }
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

impl KForm {
    pub fn zero(degree: usize) -> Self {
        Self {
            degree,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn function(s: TrigScalar) -> Self {
        let mut f = Self::zero(0);
        f.insert(0, s);
        f
    }

    /// The coframe element `a_i`.
    pub fn coframe(i: usize) -> Self {
        let mut f = Self::zero(1);
        f.insert(1 << i, TrigScalar::one());
        f
    }

    /// The 1-form `Σ c_i a_i`.
    pub fn one_form(c: [TrigScalar; DIM]) -> Self {
        let mut f = Self::zero(1);
        for (i, s) in c.into_iter().enumerate() {
            f.insert(1 << i, s);
        }
        f
    }

    fn insert(&mut self, mask: u8, s: TrigScalar) {
        if s.is_identically_zero() {
            self.coeffs.remove(&mask);
        } else {
            self.coeffs.insert(mask, s);
        }
    }

    fn accumulate(&mut self, mask: u8, s: &TrigScalar) {
        let cur = self.coeffs.remove(&mask).unwrap_or_default();
        self.insert(mask, &cur + s);
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Coefficient on `a_{i1}∧...∧a_{ik}`, sign-adjusted for unsorted input.
    pub fn coeff(&self, idx: &[usize]) -> TrigScalar {
        let mut sorted = idx.to_vec();
        let mut sign = 1;
        for i in 0..sorted.len() {
            for j in 0..sorted.len() - 1 - i {
                if sorted[j] > sorted[j + 1] {
                    sorted.swap(j, j + 1);
                    sign = -sign;
                }
                if sorted[j] == sorted[j + 1] {
                    return TrigScalar::zero();
                }
            }
        }
        let mask = sorted.iter().fold(0u8, |m, i| m | (1 << i));
        let c = self.coeffs.get(&mask).cloned().unwrap_or_default();
        if sign < 0 {
            -c
        } else {
            c
        }
    }

    /// The top coefficient of a 4-form.
    pub fn top(&self) -> TrigScalar {
        self.coeffs.get(&0b1111).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (Vec<usize>, &TrigScalar)> {
        self.coeffs.iter().map(|(m, s)| (indices(*m), s))
    }

    pub fn mul_scalar(&self, s: &TrigScalar) -> Self {
        let mut out = Self::zero(self.degree);
        for (m, c) in &self.coeffs {
            out.insert(*m, c * s);
        }
        out
    }

    pub fn wedge(&self, other: &KForm) -> Result<KForm, FrameError> {
        let degree = self.degree + other.degree;
        if degree > DIM {
            return Err(FrameError::DegreeOverflow(degree));
        }
        let mut out = Self::zero(degree);
        for (a, x) in &self.coeffs {
            for (b, y) in &other.coeffs {
                if a & b != 0 {
                    continue;
                }
                let prod = x * y;
                let term = if merge_sign(*a, *b) < 0 { -prod } else { prod };
                out.accumulate(a | b, &term);
            }
        }
        Ok(out)
    }

    /// `ω(v_1, ..., v_k) = Σ_I ω_I det(v_j^{I_i})`.
    pub fn eval(&self, vs: &[&VecField]) -> Result<TrigScalar, FrameError> {
        if vs.len() != self.degree {
            return Err(FrameError::Arity {
                expected: self.degree,
                got: vs.len(),
            });
        }
        let mut acc = TrigScalar::zero();
        for (mask, c) in &self.coeffs {
            let rows = indices(*mask);
            let m: Matrix = rows
                .iter()
                .map(|&r| vs.iter().map(|v| v[r].clone()).collect())
                .collect();
            acc = &acc + &(c * &det(&m));
        }
        Ok(acc)
    }

    /// Pairing of a 1-form with a vector field.
    pub fn pair(&self, v: &VecField) -> TrigScalar {
        debug_assert_eq!(self.degree, 1);
        let mut acc = TrigScalar::zero();
        for (mask, c) in &self.coeffs {
            let i = mask.trailing_zeros() as usize;
            acc = &acc + &(c * &v[i]);
        }
        acc
    }

    /// `i_v ω`, contraction in the first slot.
    pub fn interior(&self, v: &VecField) -> Result<KForm, FrameError> {
        if self.degree == 0 {
            return Err(FrameError::Arity {
                expected: 1,
                got: 0,
            });
        }
        let mut out = Self::zero(self.degree - 1);
        for (mask, c) in &self.coeffs {
            for (p, i) in indices(*mask).into_iter().enumerate() {
                if v[i].is_identically_zero() {
                    continue;
                }
                let term = c * &v[i];
                let term = if p % 2 == 0 { term } else { -term };
                out.accumulate(mask & !(1 << i), &term);
            }
        }
        Ok(out)
    }

    /// Exterior derivative by the invariant (Palais) formula on frame
    /// fields; degrees 0, 1 and 2 are supported.
    pub fn d(&self, space: &FramedSpace) -> Result<KForm, FrameError> {
        let e = VecField::frame;
        let mut out = Self::zero(self.degree + 1);
        match self.degree {
            0 => {
                let f = self.coeff(&[]);
                for i in 0..DIM {
                    out.insert(1 << i, space.frame_derivative(i, &f));
                }
            }
            1 => {
                for i in 0..DIM {
                    for j in (i + 1)..DIM {
                        let v = &(&space.frame_derivative(i, &self.coeff(&[j]))
                            - &space.frame_derivative(j, &self.coeff(&[i])))
                            - &self.pair(space.frame_bracket(i, j));
                        out.insert((1 << i) | (1 << j), v);
                    }
                }
            }
            2 => {
                for i in 0..DIM {
                    for j in (i + 1)..DIM {
                        for k in (j + 1)..DIM {
                            let w = |a: usize, b: usize| self.coeff(&[a, b]);
                            let br = |a: usize, b: usize, c: usize| {
                                self.eval(&[space.frame_bracket(a, b), &e(c)])
                            };
                            let v = &(&(&space.frame_derivative(i, &w(j, k))
                                - &space.frame_derivative(j, &w(i, k)))
                                + &space.frame_derivative(k, &w(i, j)))
                                - &(&(&br(i, j, k)? - &br(i, k, j)?) + &br(j, k, i)?);
                            out.insert((1 << i) | (1 << j) | (1 << k), v);
                        }
                    }
                }
            }
            n => return Err(FrameError::UnsupportedDegree(n)),
        }
        Ok(out)
    }

    pub fn display<'a>(&'a self, coords: &'a [String]) -> FormDisplay<'a> {
        FormDisplay { f: self, coords }
    }
}

fn same_degree(a: &KForm, b: &KForm) -> usize {
    assert_eq!(a.degree, b.degree, "adding forms of different degree");
    a.degree
}

impl Add for &KForm {
    type Output = KForm;
    fn add(self, rhs: &KForm) -> KForm {
        let mut out = KForm::zero(same_degree(self, rhs));
        out.coeffs = self.coeffs.clone();
        for (m, c) in &rhs.coeffs {
            out.accumulate(*m, c);
        }
        out
    }
}

impl Sub for &KForm {
    type Output = KForm;
    fn sub(self, rhs: &KForm) -> KForm {
        self + &(-rhs)
    }
}

impl Neg for &KForm {
    type Output = KForm;
    fn neg(self) -> KForm {
        KForm {
            degree: self.degree,
            coeffs: self.coeffs.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }
}

/// Renders `a4 - a2`, `(sin(t))*a1^a3`; coframe elements are `a1..a4`.
pub struct FormDisplay<'a> {
    f: &'a KForm,
    coords: &'a [String],
}

impl fmt::Display for FormDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.f.coeffs.is_empty() {
            return write!(f, "0");
        }
        for (n, (mask, c)) in self.f.coeffs.iter().enumerate() {
            let basis = indices(*mask)
                .iter()
                .map(|i| format!("a{}", i + 1))
                .collect::<Vec<_>>()
                .join("^");
            let coeff = match c.as_constant() {
                Some(k) if k.is_one() => String::new(),
                Some(k) if (-&k).is_one() => "-".into(),
                Some(k) => format!("{k}*"),
                None => format!("({})*", c.display(self.coords)),
            };
            let body = if basis.is_empty() {
                c.display(self.coords).to_string()
            } else {
                format!("{coeff}{basis}")
            };
            if n == 0 {
                write!(f, "{body}")?;
            } else if let Some(rest) = body.strip_prefix('-') {
                write!(f, " - {rest}")?;
            } else {
                write!(f, " + {body}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hopf() -> FramedSpace {
        let mut s = FramedSpace::new(["X1", "X2", "X3", "X4"], vec![]).unwrap();
        s.set_bracket(0, 1, VecField::frame(2)).unwrap();
        s.set_bracket(1, 2, VecField::frame(0)).unwrap();
        s.set_bracket(2, 0, VecField::frame(1)).unwrap();
        s
    }

    #[test]
    fn coframe_wedge_evaluates_to_one() {
        let w = KForm::coframe(0).wedge(&KForm::coframe(1)).unwrap();
        let (e1, e2) = (VecField::frame(0), VecField::frame(1));
        assert_eq!(w.eval(&[&e1, &e2]).unwrap(), TrigScalar::one());
        assert_eq!(w.eval(&[&e2, &e1]).unwrap(), TrigScalar::int(-1));
    }

    #[test]
    fn chevalley_eilenberg_rule() {
        let s = hopf();
        let alpha = &KForm::coframe(3) - &KForm::coframe(1);
        let da = alpha.d(&s).unwrap();
        // dα(X3, X1) = -α([X3, X1]) = -α(X2) = 1
        assert_eq!(da.coeff(&[2, 0]), TrigScalar::one());
        assert!(da.d(&s).unwrap().is_zero());
    }

    #[test]
    fn wedge_overflow_is_an_error() {
        let vol = KForm::coframe(0)
            .wedge(&KForm::coframe(1))
            .unwrap()
            .wedge(&KForm::coframe(2))
            .unwrap();
        assert!(matches!(
            vol.wedge(&KForm::coframe(3).wedge(&KForm::coframe(0)).unwrap()),
            Err(FrameError::DegreeOverflow(5))
        ));
    }

    #[test]
    fn degree_three_derivative_unsupported() {
        let s = hopf();
        let f = KForm::zero(3);
        assert!(matches!(f.d(&s), Err(FrameError::UnsupportedDegree(3))));
    }
}
