//! Exact quotients `numerator / denominator`, used where the Reeb fields
//! and structure-function ratios need a division by a scalar that is
//! nowhere zero but not constant.
//!
//! Denominators are never simplified beyond folding invertible constants
//! into the numerator; identities are checked on cleared numerators.

use std::ops::{Add, Neg, Sub};

use crate::trigring::TrigScalar;

use super::{FramedSpace, KForm, VecField, DIM};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QScalar {
    pub num: TrigScalar,
    pub den: TrigScalar,
}

impl QScalar {
    pub fn new(num: TrigScalar, den: TrigScalar) -> Self {
        assert!(!den.is_identically_zero(), "zero denominator");
        if let Some(inv) = den.inverse_constant() {
            return Self {
                num: num.scale(&inv),
                den: TrigScalar::one(),
            };
        }
        Self { num, den }
    }

    pub fn from_scalar(s: TrigScalar) -> Self {
        Self {
            num: s,
            den: TrigScalar::one(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_identically_zero()
    }

    /// The plain scalar, when the denominator has been folded away.
    pub fn as_scalar(&self) -> Option<&TrigScalar> {
        (self.den == TrigScalar::one()).then_some(&self.num)
    }

    pub fn mul(&self, other: &QScalar) -> QScalar {
        QScalar::new(&self.num * &other.num, &self.den * &other.den)
    }

    pub fn mul_scalar(&self, s: &TrigScalar) -> QScalar {
        QScalar::new(&self.num * s, self.den.clone())
    }

    /// `self / other`; `other` must have a nowhere-zero numerator.
    pub fn div(&self, other: &QScalar) -> QScalar {
        QScalar::new(&self.num * &other.den, &self.den * &other.num)
    }

    /// Quotient rule: `v(n/d) = (v(n) d - n v(d)) / d²`.
    pub fn derivative(&self, v: &VecField, space: &FramedSpace) -> QScalar {
        let dn = space.derivative(v, &self.num);
        if self.den == TrigScalar::one() {
            return QScalar::from_scalar(dn);
        }
        let dd = space.derivative(v, &self.den);
        QScalar::new(
            &(&dn * &self.den) - &(&self.num * &dd),
            &self.den * &self.den,
        )
    }

    pub fn evaluate(&self, p: &[f64]) -> Result<f64, crate::trigring::TrigError> {
        Ok(self.num.evaluate(p)? / self.den.evaluate(p)?)
    }
}

impl Add for &QScalar {
    type Output = QScalar;
    fn add(self, rhs: &QScalar) -> QScalar {
        if self.den == rhs.den {
            return QScalar::new(&self.num + &rhs.num, self.den.clone());
        }
        QScalar::new(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }
}

impl Neg for &QScalar {
    type Output = QScalar;
    fn neg(self) -> QScalar {
        QScalar {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Sub for &QScalar {
    type Output = QScalar;
    fn sub(self, rhs: &QScalar) -> QScalar {
        self + &(-rhs)
    }
}

/// A vector field `num / den`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QVec {
    pub num: VecField,
    pub den: TrigScalar,
}

impl QVec {
    pub fn new(num: VecField, den: TrigScalar) -> Self {
        assert!(!den.is_identically_zero(), "zero denominator");
        if let Some(inv) = den.inverse_constant() {
            return Self {
                num: num.scale(&inv),
                den: TrigScalar::one(),
            };
        }
        Self { num, den }
    }

    pub fn from_field(v: VecField) -> Self {
        Self {
            num: v,
            den: TrigScalar::one(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn as_field(&self) -> Option<&VecField> {
        (self.den == TrigScalar::one()).then_some(&self.num)
    }

    pub fn component(&self, k: usize) -> QScalar {
        QScalar::new(self.num[k].clone(), self.den.clone())
    }

    pub fn mul_q(&self, s: &QScalar) -> QVec {
        QVec::new(self.num.mul_scalar(&s.num), &self.den * &s.den)
    }

    pub fn mul_scalar(&self, s: &TrigScalar) -> QVec {
        QVec::new(self.num.mul_scalar(s), self.den.clone())
    }

    pub fn pair(&self, form: &KForm) -> QScalar {
        QScalar::new(form.pair(&self.num), self.den.clone())
    }

    pub fn map(&self, f: impl Fn(&VecField) -> VecField) -> QVec {
        QVec::new(f(&self.num), self.den.clone())
    }

    /// `[u/f, w/g] = (fg[u,w] - f u(g) w + g w(f) u) / (f²g²)`.
    pub fn bracket(&self, other: &QVec, space: &FramedSpace) -> QVec {
        let (u, f) = (&self.num, &self.den);
        let (w, g) = (&other.num, &other.den);
        let one = TrigScalar::one();
        let base = space.bracket(u, w);
        if *f == one && *g == one {
            return QVec::from_field(base);
        }
        let ug = space.derivative(u, g);
        let wf = space.derivative(w, f);
        if f == g {
            // (f[u,w] - u(f) w + w(f) u) / f³
            let num = &(&base.mul_scalar(f) - &w.mul_scalar(&ug)) + &u.mul_scalar(&wf);
            return QVec::new(num, &(f * f) * f);
        }
        let fg = f * g;
        let num = &(&base.mul_scalar(&fg) - &w.mul_scalar(&(f * &ug))) + &u.mul_scalar(&(g * &wf));
        QVec::new(num, &fg * &fg)
    }

    pub fn evaluate(&self, p: &[f64]) -> Result<[f64; DIM], crate::trigring::TrigError> {
        let d = self.den.evaluate(p)?;
        let mut out = self.num.evaluate(p)?;
        for x in &mut out {
            *x /= d;
        }
        Ok(out)
    }
}

impl Add for &QVec {
    type Output = QVec;
    fn add(self, rhs: &QVec) -> QVec {
        if self.den == rhs.den {
            return QVec::new(&self.num + &rhs.num, self.den.clone());
        }
        QVec::new(
            &self.num.mul_scalar(&rhs.den) + &rhs.num.mul_scalar(&self.den),
            &self.den * &rhs.den,
        )
    }
}

impl Neg for &QVec {
    type Output = QVec;
    fn neg(self) -> QVec {
        QVec {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Sub for &QVec {
    type Output = QVec;
    fn sub(self, rhs: &QVec) -> QVec {
        self + &(-rhs)
    }
}
