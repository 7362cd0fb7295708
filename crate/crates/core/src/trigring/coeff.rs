use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::rational::{fmt_rational, rat};

/// Laurent polynomial in π with rational coefficients.
///
/// π is transcendental, so equality of two `Coeff`s is exact equality of
/// their coefficient maps. The only invertible elements are nonzero
/// monomials `c·π^k`.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Coeff {
    terms: BTreeMap<i32, BigRational>,
}

impl Coeff {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_rational(BigRational::one())
    }

    pub fn from_rational(r: BigRational) -> Self {
        Self::monomial(r, 0)
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(rat(n, 1))
    }

    pub fn pi() -> Self {
        Self::monomial(BigRational::one(), 1)
    }

    pub fn monomial(c: BigRational, power: i32) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(power, c);
        }
        Self { terms }
    }

    /// `rat + pi·π`, the value of a frequency.
    pub fn affine_pi(rational: &BigRational, pi: &BigRational) -> Self {
        Self::monomial(rational.clone(), 0) + Self::monomial(pi.clone(), 1)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.as_rational().is_some_and(|r| r.is_one())
    }

    /// The rational value, if the coefficient carries no power of π.
    pub fn as_rational(&self) -> Option<BigRational> {
        match self.terms.len() {
            0 => Some(BigRational::zero()),
            1 => self.terms.get(&0).cloned(),
            _ => None,
        }
    }

    pub fn as_monomial(&self) -> Option<(&BigRational, i32)> {
        if self.terms.len() == 1 {
            self.terms.iter().next().map(|(p, c)| (c, *p))
        } else {
            None
        }
    }

    pub fn inverse(&self) -> Option<Coeff> {
        let (c, p) = self.as_monomial()?;
        Some(Self::monomial(c.recip(), -p))
    }

    pub fn scale(&self, r: &BigRational) -> Coeff {
        if r.is_zero() {
            return Coeff::zero();
        }
        Coeff {
            terms: self.terms.iter().map(|(p, c)| (*p, c * r)).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Coeff {
        let mut acc = Coeff::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    pub fn terms(&self) -> impl Iterator<Item = (i32, &BigRational)> {
        self.terms.iter().map(|(p, c)| (*p, c))
    }

    pub fn to_f64(&self) -> f64 {
        self.terms
            .iter()
            .map(|(p, c)| c.to_f64().unwrap_or(f64::NAN) * std::f64::consts::PI.powi(*p))
            .sum()
    }

    fn add_term(&mut self, power: i32, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(power).or_insert_with(BigRational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&power);
        }
    }
}

impl Add for &Coeff {
    type Output = Coeff;
    fn add(self, rhs: &Coeff) -> Coeff {
        let mut out = self.clone();
        for (p, c) in &rhs.terms {
            out.add_term(*p, c.clone());
        }
        out
    }
}

impl Add for Coeff {
    type Output = Coeff;
    fn add(self, rhs: Coeff) -> Coeff {
        &self + &rhs
    }
}

impl Sub for &Coeff {
    type Output = Coeff;
    fn sub(self, rhs: &Coeff) -> Coeff {
        self + &(-rhs)
    }
}

impl Sub for Coeff {
    type Output = Coeff;
    fn sub(self, rhs: Coeff) -> Coeff {
        &self - &rhs
    }
}

impl Neg for &Coeff {
    type Output = Coeff;
    fn neg(self) -> Coeff {
        Coeff {
            terms: self.terms.iter().map(|(p, c)| (*p, -c)).collect(),
        }
    }
}

impl Neg for Coeff {
    type Output = Coeff;
    fn neg(self) -> Coeff {
        -&self
    }
}

impl Mul for &Coeff {
    type Output = Coeff;
    fn mul(self, rhs: &Coeff) -> Coeff {
        let mut out = Coeff::zero();
        for (p, a) in &self.terms {
            for (q, b) in &rhs.terms {
                out.add_term(p + q, a * b);
            }
        }
        out
    }
}

impl Mul for Coeff {
    type Output = Coeff;
    fn mul(self, rhs: Coeff) -> Coeff {
        &self * &rhs
    }
}

fn fmt_monomial(f: &mut fmt::Formatter<'_>, c: &BigRational, p: i32) -> fmt::Result {
    let pi = match p {
        0 => String::new(),
        1 => "pi".to_string(),
        _ => format!("pi^{p}"),
    };
    if p == 0 {
        return write!(f, "{}", fmt_rational(c));
    }
    if c.is_one() {
        write!(f, "{pi}")
    } else if (-c).is_one() {
        write!(f, "-{pi}")
    } else {
        write!(f, "{}*{pi}", fmt_rational(c))
    }
}

impl fmt::Display for Coeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.terms.len() {
            0 => write!(f, "0"),
            1 => {
                let (p, c) = self.terms.iter().next().unwrap();
                fmt_monomial(f, c, *p)
            }
            _ => {
                write!(f, "(")?;
                for (i, (p, c)) in self.terms.iter().enumerate() {
                    if i > 0 {
                        if c.is_negative() {
                            write!(f, " - ")?;
                            fmt_monomial(f, &-c, *p)?;
                            continue;
                        }
                        write!(f, " + ")?;
                    }
                    fmt_monomial(f, c, *p)?;
                }
                write!(f, ")")
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn monomials_invert() {
        let c = Coeff::monomial(rat(8, 1), 3);
        let inv = c.inverse().unwrap();
        assert!((&c * &inv).is_one());
        let sum = Coeff::one() + Coeff::pi();
        assert!(sum.inverse().is_none());
    }

    #[test]
    fn display_forms() {
        assert_eq!(Coeff::monomial(rat(-3, 2), 2).to_string(), "-3/2*pi^2");
        assert_eq!(Coeff::pi().to_string(), "pi");
        assert_eq!((Coeff::one() - Coeff::pi()).to_string(), "(1 - pi)");
        assert_eq!(Coeff::monomial(rat(1, 1), -1).to_string(), "pi^-1");
    }

    #[test]
    fn numeric_value() {
        let c = Coeff::affine_pi(&rat(1, 2), &rat(2, 1));
        assert!((c.to_f64() - (0.5 + 2.0 * std::f64::consts::PI)).abs() < 1e-15);
    }
}
