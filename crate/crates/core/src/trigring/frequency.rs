use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::coeff::Coeff;
use super::rational::{fmt_rational, int, parse_rational, to_pq};

/// A frequency `rational + pi·π`.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Frequency {
    pub rational: BigRational,
    pub pi: BigRational,
}

impl Frequency {
    pub fn new(rational: BigRational, pi: BigRational) -> Self {
        Self { rational, pi }
    }

    pub fn zero() -> Self {
        Self::new(BigRational::zero(), BigRational::zero())
    }

    pub fn rational(r: BigRational) -> Self {
        Self::new(r, BigRational::zero())
    }

    pub fn pi_multiple(p: BigRational) -> Self {
        Self::new(BigRational::zero(), p)
    }

    pub fn is_zero(&self) -> bool {
        self.rational.is_zero() && self.pi.is_zero()
    }

    /// Canonical sign used by the normal form: the π part decides, then
    /// the rational part. Satisfies `is_positive(-f) == !is_positive(f)`
    /// for nonzero `f`.
    pub fn is_positive(&self) -> bool {
        if !self.pi.is_zero() {
            self.pi.is_positive()
        } else {
            self.rational.is_positive()
        }
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        Self::new(&self.rational * r, &self.pi * r)
    }

    pub fn as_coeff(&self) -> Coeff {
        Coeff::affine_pi(&self.rational, &self.pi)
    }

    pub fn value(&self) -> f64 {
        self.rational.to_f64().unwrap_or(f64::NAN)
            + self.pi.to_f64().unwrap_or(f64::NAN) * std::f64::consts::PI
    }

    /// `true` for `k·π/2`, which sin/cos absorb exactly.
    pub fn is_quarter_turn(&self) -> bool {
        self.rational.is_zero() && (&self.pi * int(2)).is_integer()
    }

    pub(crate) fn is_one(&self) -> bool {
        self.pi.is_zero() && self.rational == int(1)
    }
}

impl Add for &Frequency {
    type Output = Frequency;
    fn add(self, rhs: &Frequency) -> Frequency {
        Frequency::new(&self.rational + &rhs.rational, &self.pi + &rhs.pi)
    }
}

impl Sub for &Frequency {
    type Output = Frequency;
    fn sub(self, rhs: &Frequency) -> Frequency {
        Frequency::new(&self.rational - &rhs.rational, &self.pi - &rhs.pi)
    }
}

impl Neg for &Frequency {
    type Output = Frequency;
    fn neg(self) -> Frequency {
        Frequency::new(-&self.rational, -&self.pi)
    }
}

impl fmt::Display for Frequency {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_coeff())
    }
}

/// Multiplier prefix for `freq*name`; empty for frequency one.
pub(crate) fn fmt_multiplier(freq: &Frequency) -> String {
    if freq.is_one() {
        return String::new();
    }
    if freq.pi.is_zero() {
        return format!("{}*", fmt_rational(&freq.rational));
    }
    format!("{}*", freq.as_coeff())
}

#[derive(Serialize, Deserialize)]
struct FrequencyRepr {
    rat: String,
    pi: String,
}

impl Serialize for Frequency {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        FrequencyRepr {
            rat: to_pq(&self.rational),
            pi: to_pq(&self.pi),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Frequency {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let repr = FrequencyRepr::deserialize(deserializer)?;
        let parse = |s: &str| {
            parse_rational(s)
                .ok_or_else(|| serde::de::Error::custom(format!("invalid rational '{s}'")))
        };
        Ok(Frequency::new(parse(&repr.rat)?, parse(&repr.pi)?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::trigring::rational::rat;

    #[test]
    fn sign_flips_under_negation() {
        let f = Frequency::new(rat(-3, 1), rat(1, 2));
        assert!(f.is_positive());
        assert!(!(-&f).is_positive());
        let g = Frequency::rational(rat(-1, 3));
        assert!(!g.is_positive());
    }

    #[test]
    fn serializes_as_pq_strings() {
        let f = Frequency::new(rat(0, 1), rat(2, 1));
        let json = serde_json::to_string(&f).unwrap();
        assert_eq!(json, r#"{"rat":"0/1","pi":"2/1"}"#);
        let back: Frequency = serde_json::from_str(&json).unwrap();
        assert_eq!(back, f);
    }
}
