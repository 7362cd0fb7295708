use std::fmt;
use std::ops::{Add, Index, Neg, Sub};

use num_rational::BigRational;

use crate::trigring::{Coeff, TrigScalar};

use super::DIM;

/// A vector field `Σ c[i]·E_i` over the frame of a [`FramedSpace`](super::FramedSpace).
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct VecField {
    c: [TrigScalar; DIM],
}

impl VecField {
    pub fn new(c: [TrigScalar; DIM]) -> Self {
        Self { c }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    /// The frame field `E_i`.
    pub fn frame(i: usize) -> Self {
        let mut v = Self::zero();
        v.c[i] = TrigScalar::one();
        v
    }

    /// Integer combination of frame fields, `[(i, k)] -> Σ k·E_i`.
    pub fn from_ints(entries: &[(usize, i64)]) -> Self {
        let mut v = Self::zero();
        for &(i, k) in entries {
            v.c[i] = &v.c[i] + &TrigScalar::int(k);
        }
        v
    }

    pub fn coeffs(&self) -> &[TrigScalar; DIM] {
        &self.c
    }

    pub fn into_coeffs(self) -> [TrigScalar; DIM] {
        self.c
    }

    pub fn set(&mut self, i: usize, s: TrigScalar) {
        self.c[i] = s;
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(TrigScalar::is_identically_zero)
    }

    /// Multiplication by a scalar function.
    pub fn mul_scalar(&self, s: &TrigScalar) -> Self {
        Self::new(std::array::from_fn(|i| &self.c[i] * s))
    }

    pub fn scale(&self, c: &Coeff) -> Self {
        Self::new(std::array::from_fn(|i| self.c[i].scale(c)))
    }

    pub fn scale_rational(&self, r: &BigRational) -> Self {
        Self::new(std::array::from_fn(|i| self.c[i].scale_rational(r)))
    }

    pub fn evaluate(&self, point: &[f64]) -> Result<[f64; DIM], crate::trigring::TrigError> {
        let mut out = [0.0; DIM];
        for (o, s) in out.iter_mut().zip(&self.c) {
            *o = s.evaluate(point)?;
        }
        Ok(out)
    }

    pub fn display<'a>(&'a self, frame: &'a [String], coords: &'a [String]) -> VecDisplay<'a> {
        VecDisplay {
            v: self,
            frame,
            coords,
        }
    }
}

impl Index<usize> for VecField {
    type Output = TrigScalar;
    fn index(&self, i: usize) -> &TrigScalar {
        &self.c[i]
    }
}

impl Add for &VecField {
    type Output = VecField;
    fn add(self, rhs: &VecField) -> VecField {
        VecField::new(std::array::from_fn(|i| &self.c[i] + &rhs.c[i]))
    }
}

impl Sub for &VecField {
    type Output = VecField;
    fn sub(self, rhs: &VecField) -> VecField {
        VecField::new(std::array::from_fn(|i| &self.c[i] - &rhs.c[i]))
    }
}

impl Neg for &VecField {
    type Output = VecField;
    fn neg(self) -> VecField {
        VecField::new(std::array::from_fn(|i| -&self.c[i]))
    }
}

impl Add for VecField {
    type Output = VecField;
    fn add(self, rhs: VecField) -> VecField {
        &self + &rhs
    }
}

impl Sub for VecField {
    type Output = VecField;
    fn sub(self, rhs: VecField) -> VecField {
        &self - &rhs
    }
}

impl Neg for VecField {
    type Output = VecField;
    fn neg(self) -> VecField {
        -&self
    }
}

/// Renders `2*X1 + (sin(t))*X3`, or `0`.
pub struct VecDisplay<'a> {
    v: &'a VecField,
    frame: &'a [String],
    coords: &'a [String],
}

impl fmt::Display for VecDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, s) in self.v.c.iter().enumerate() {
            if s.is_identically_zero() {
                continue;
            }
            let name = &self.frame[i];
            let body = if let Some(c) = s.as_constant() {
                let text = c.to_string();
                if c.is_one() {
                    name.clone()
                } else if (-&c).is_one() {
                    format!("-{name}")
                } else {
                    format!("{text}*{name}")
                }
            } else {
                format!("({})*{name}", s.display(self.coords))
            };
            if first {
                write!(f, "{body}")?;
            } else if let Some(rest) = body.strip_prefix('-') {
                write!(f, " - {rest}")?;
            } else {
                write!(f, " + {body}")?;
            }
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}
