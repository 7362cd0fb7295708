//! Small helpers around `BigRational`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Shortest form: `3`, `-1/2`.
pub fn fmt_rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Report form: always `p/q`, e.g. `3/1`.
pub fn to_pq(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Parses `p`, `p/q` or a finite decimal such as `-1.25`.
pub fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = p.trim().parse().ok()?;
        let q: BigInt = q.trim().parse().ok()?;
        if q.is_zero() {
            return None;
        }
        return Some(BigRational::new(p, q));
    }
    if let Some((whole, frac)) = s.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        let negative = whole.trim_start().starts_with('-');
        let whole_abs = whole.trim().trim_start_matches(['-', '+']);
        let w: BigInt = if whole_abs.is_empty() {
            BigInt::zero()
        } else {
            whole_abs.parse().ok()?
        };
        let f: BigInt = frac.parse().ok()?;
        let scale = num_traits::pow(BigInt::from(10), frac.len());
        let mut value = BigRational::new(w * &scale + f, scale);
        if negative {
            value = -value;
        }
        return Some(value);
    }
    s.parse::<BigInt>().ok().map(BigRational::from_integer)
}

/// gcd of two nonnegative rationals: gcd of numerators over lcm of denominators.
pub fn rational_gcd(a: &BigRational, b: &BigRational) -> BigRational {
    let a = a.abs();
    let b = b.abs();
    if a.is_zero() {
        return b;
    }
    if b.is_zero() {
        return a;
    }
    let num = a.numer().gcd(b.numer());
    let den = a.denom().lcm(b.denom());
    BigRational::new(num, den)
}

pub fn is_half_integer_multiple(r: &BigRational) -> bool {
    (r * int(2)).is_integer()
}

pub fn one() -> BigRational {
    BigRational::one()
}
