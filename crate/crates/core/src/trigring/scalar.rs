use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use super::coeff::Coeff;
use super::frequency::{fmt_multiplier, Frequency};
use super::rational::{int, rat, rational_gcd};
use super::TrigError;

/// Index of a formal coordinate.
pub type Coord = usize;

/// Linear combination `Σ ω_j x_j`, sorted by coordinate, no zero
/// frequencies, leading frequency canonically positive.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Arg(Vec<(Coord, Frequency)>);

impl Arg {
    pub fn components(&self) -> &[(Coord, Frequency)] {
        &self.0
    }

    fn frequency(&self, coord: Coord) -> Option<&Frequency> {
        self.0.iter().find(|(c, _)| *c == coord).map(|(_, f)| f)
    }

    fn to_map(&self) -> BTreeMap<Coord, Frequency> {
        self.0.iter().cloned().collect()
    }

    fn value(&self, point: &[f64]) -> Result<f64, TrigError> {
        let mut acc = 0.0;
        for (c, f) in &self.0 {
            let x = point.get(*c).ok_or(TrigError::Unassigned(*c))?;
            acc += f.value() * x;
        }
        Ok(acc)
    }
}

/// Basis element of the Fourier normal form.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Wave {
    One,
    Cos(Arg),
    Sin(Arg),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PhaseKind {
    Const,
    Cos,
    Sin,
}

impl Wave {
    pub fn kind(&self) -> PhaseKind {
        match self {
            Wave::One => PhaseKind::Const,
            Wave::Cos(_) => PhaseKind::Cos,
            Wave::Sin(_) => PhaseKind::Sin,
        }
    }

    pub fn arg(&self) -> Option<&Arg> {
        match self {
            Wave::One => None,
            Wave::Cos(a) | Wave::Sin(a) => Some(a),
        }
    }
}

/// Builds `cos`/`sin` of a raw frequency map, returning the canonical wave
/// and the sign picked up by normalization. `None` means the wave is zero.
fn canonical_wave(kind: PhaseKind, mut map: BTreeMap<Coord, Frequency>) -> Option<(Wave, bool)> {
    map.retain(|_, f| !f.is_zero());
    if map.is_empty() {
        return match kind {
            PhaseKind::Sin => None,
            _ => Some((Wave::One, false)),
        };
    }
    let flip = !map.values().next().unwrap().is_positive();
    let comps: Vec<(Coord, Frequency)> = if flip {
        map.into_iter().map(|(c, f)| (c, -&f)).collect()
    } else {
        map.into_iter().collect()
    };
    let arg = Arg(comps);
    match kind {
        PhaseKind::Const => Some((Wave::One, false)),
        PhaseKind::Cos => Some((Wave::Cos(arg), false)),
        PhaseKind::Sin => Some((Wave::Sin(arg), flip)),
    }
}

fn combine(a: &Arg, b: &Arg, subtract: bool) -> BTreeMap<Coord, Frequency> {
    let mut map = a.to_map();
    for (c, f) in &b.0 {
        let entry = map.entry(*c).or_insert_with(Frequency::zero);
        *entry = if subtract { &*entry - f } else { &*entry + f };
    }
    map
}

/// Product-to-sum expansion of two basis waves.
fn wave_product(a: &Wave, b: &Wave) -> Vec<(Wave, BigRational)> {
    let half = rat(1, 2);
    let mut out = Vec::with_capacity(2);
    let mut push = |kind: PhaseKind, map: BTreeMap<Coord, Frequency>, c: BigRational| {
        if let Some((w, flip)) = canonical_wave(kind, map) {
            out.push((w, if flip { -c } else { c }));
        }
    };
    match (a, b) {
        (Wave::One, w) | (w, Wave::One) => {
            return vec![(w.clone(), int(1))];
        }
        (Wave::Cos(x), Wave::Cos(y)) => {
            push(PhaseKind::Cos, combine(x, y, true), half.clone());
            push(PhaseKind::Cos, combine(x, y, false), half);
        }
        (Wave::Sin(x), Wave::Sin(y)) => {
            push(PhaseKind::Cos, combine(x, y, true), half.clone());
            push(PhaseKind::Cos, combine(x, y, false), -half);
        }
        (Wave::Sin(x), Wave::Cos(y)) => {
            push(PhaseKind::Sin, combine(x, y, false), half.clone());
            push(PhaseKind::Sin, combine(x, y, true), half);
        }
        (Wave::Cos(x), Wave::Sin(y)) => {
            push(PhaseKind::Sin, combine(x, y, false), half.clone());
            push(PhaseKind::Sin, combine(x, y, true), -half);
        }
    }
    out
}

/// Affine form `Σ ω_j x_j + φ` accepted as a sin/cos argument.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Affine {
    pub linear: BTreeMap<Coord, Frequency>,
    pub constant: Frequency,
}

impl Affine {
    pub fn constant(f: Frequency) -> Self {
        Self {
            linear: BTreeMap::new(),
            constant: f,
        }
    }

    pub fn coordinate(c: Coord) -> Self {
        Self::term(c, Frequency::rational(int(1)))
    }

    pub fn term(c: Coord, f: Frequency) -> Self {
        let mut linear = BTreeMap::new();
        linear.insert(c, f);
        Self {
            linear,
            constant: Frequency::zero(),
        }
    }

    pub fn is_constant(&self) -> bool {
        self.linear.values().all(Frequency::is_zero)
    }

    pub fn add(&self, other: &Affine, subtract: bool) -> Affine {
        let mut linear = self.linear.clone();
        for (c, f) in &other.linear {
            let e = linear.entry(*c).or_insert_with(Frequency::zero);
            *e = if subtract { &*e - f } else { &*e + f };
        }
        linear.retain(|_, f| !f.is_zero());
        let constant = if subtract {
            &self.constant - &other.constant
        } else {
            &self.constant + &other.constant
        };
        Affine { linear, constant }
    }

    pub fn scale(&self, r: &BigRational) -> Affine {
        let mut linear: BTreeMap<_, _> =
            self.linear.iter().map(|(c, f)| (*c, f.scale(r))).collect();
        linear.retain(|_, f| !f.is_zero());
        Affine {
            linear,
            constant: self.constant.scale(r),
        }
    }

    /// Multiplies by `π`; only legal when no term already carries π.
    pub fn times_pi(&self) -> Option<Affine> {
        let lift = |f: &Frequency| {
            if f.pi.is_zero() {
                Some(Frequency::pi_multiple(f.rational.clone()))
            } else {
                None
            }
        };
        let mut linear = BTreeMap::new();
        for (c, f) in &self.linear {
            linear.insert(*c, lift(f)?);
        }
        Some(Affine {
            linear,
            constant: lift(&self.constant)?,
        })
    }
}

/// Exact trigonometric polynomial in canonical Fourier normal form.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TrigScalar {
    terms: BTreeMap<Wave, Coeff>,
}

impl TrigScalar {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Coeff::one())
    }

    pub fn constant(c: Coeff) -> Self {
        let mut s = Self::zero();
        s.add_term(Wave::One, c);
        s
    }

    pub fn rational(r: BigRational) -> Self {
        Self::constant(Coeff::from_rational(r))
    }

    pub fn int(n: i64) -> Self {
        Self::rational(int(n))
    }

    pub fn pi() -> Self {
        Self::constant(Coeff::pi())
    }

    /// `c·cos(arg)` or `c·sin(arg)` for a linear argument.
    pub fn wave(kind: PhaseKind, arg: &[(Coord, Frequency)], c: Coeff) -> Self {
        let map: BTreeMap<Coord, Frequency> = arg.iter().cloned().collect();
        let mut s = Self::zero();
        if let Some((w, flip)) = canonical_wave(kind, map) {
            s.add_term(w, if flip { -c } else { c });
        }
        s
    }

    pub fn cos_of(arg: &Affine) -> Result<Self, TrigError> {
        Self::trig_of(PhaseKind::Cos, arg)
    }

    pub fn sin_of(arg: &Affine) -> Result<Self, TrigError> {
        Self::trig_of(PhaseKind::Sin, arg)
    }

    /// Absorbs a phase that is a multiple of π/2 into the cos/sin basis.
    fn trig_of(kind: PhaseKind, arg: &Affine) -> Result<Self, TrigError> {
        if !arg.constant.is_zero() && !arg.constant.is_quarter_turn() {
            return Err(TrigError::Unsupported(format!(
                "phase {} is not a multiple of pi/2",
                arg.constant
            )));
        }
        let quarter = (&arg.constant.pi * int(2)).to_integer();
        let m = quarter
            .mod_floor(&num_bigint::BigInt::from(4))
            .to_u8()
            .unwrap_or(0);
        let (kind, negate) = match (kind, m) {
            (PhaseKind::Cos, 0) => (PhaseKind::Cos, false),
            (PhaseKind::Cos, 1) => (PhaseKind::Sin, true),
            (PhaseKind::Cos, 2) => (PhaseKind::Cos, true),
            (PhaseKind::Cos, _) => (PhaseKind::Sin, false),
            (_, 0) => (PhaseKind::Sin, false),
            (_, 1) => (PhaseKind::Cos, false),
            (_, 2) => (PhaseKind::Sin, true),
            (_, _) => (PhaseKind::Cos, true),
        };
        let comps: Vec<(Coord, Frequency)> =
            arg.linear.iter().map(|(c, f)| (*c, f.clone())).collect();
        let c = if negate { -Coeff::one() } else { Coeff::one() };
        Ok(Self::wave(kind, &comps, c))
    }

    fn add_term(&mut self, w: Wave, c: Coeff) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&w) {
            Some(existing) => {
                *existing = &*existing + &c;
                if existing.is_zero() {
                    self.terms.remove(&w);
                }
            }
            None => {
                self.terms.insert(w, c);
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Wave, &Coeff)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_identically_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The constant value if the normal form has no waves.
    pub fn as_constant(&self) -> Option<Coeff> {
        match self.terms.len() {
            0 => Some(Coeff::zero()),
            1 => self.terms.get(&Wave::One).cloned(),
            _ => None,
        }
    }

    pub fn as_rational(&self) -> Option<BigRational> {
        self.as_constant()?.as_rational()
    }

    /// Inverse when the scalar is a nonzero monomial constant `c·π^k`.
    pub fn inverse_constant(&self) -> Option<Coeff> {
        self.as_constant()?.inverse()
    }

    pub fn scale(&self, c: &Coeff) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(w, k)| (w.clone(), k * c)).collect(),
        }
    }

    pub fn scale_rational(&self, r: &BigRational) -> Self {
        self.scale(&Coeff::from_rational(r.clone()))
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Exact partial derivative with respect to `coord`.
    pub fn differentiate(&self, coord: Coord) -> Self {
        let mut out = Self::zero();
        for (w, c) in &self.terms {
            match w {
                Wave::One => {}
                Wave::Cos(arg) => {
                    if let Some(f) = arg.frequency(coord) {
                        out.add_term(Wave::Sin(arg.clone()), -(c * &f.as_coeff()));
                    }
                }
                Wave::Sin(arg) => {
                    if let Some(f) = arg.frequency(coord) {
                        out.add_term(Wave::Cos(arg.clone()), c * &f.as_coeff());
                    }
                }
            }
        }
        out
    }

    /// Numeric value at `point[coord]`; π is applied here.
    pub fn evaluate(&self, point: &[f64]) -> Result<f64, TrigError> {
        let mut acc = 0.0;
        for (w, c) in &self.terms {
            let v = match w {
                Wave::One => 1.0,
                Wave::Cos(a) => a.value(point)?.cos(),
                Wave::Sin(a) => a.value(point)?.sin(),
            };
            acc += c.to_f64() * v;
        }
        Ok(acc)
    }

    /// Like [`evaluate`](Self::evaluate) but with named coordinates.
    pub fn evaluate_named(
        &self,
        names: &[String],
        assignment: &BTreeMap<String, f64>,
    ) -> Result<f64, TrigError> {
        let mut point = vec![f64::NAN; names.len()];
        for c in self.coordinates() {
            let name = names.get(c).cloned().unwrap_or_else(|| format!("x{c}"));
            match assignment.get(&name) {
                Some(v) if c < point.len() => point[c] = *v,
                _ => return Err(TrigError::UnassignedCoordinate(name)),
            }
        }
        self.evaluate(&point)
    }

    pub fn coordinates(&self) -> BTreeSet<Coord> {
        self.terms
            .keys()
            .filter_map(Wave::arg)
            .flat_map(|a| a.0.iter().map(|(c, _)| *c))
            .collect()
    }

    /// Largest coordinate index used, plus one.
    pub fn arity(&self) -> usize {
        self.coordinates().last().map_or(0, |c| c + 1)
    }

    /// Every frequency with which `coord` appears.
    pub fn frequencies(&self, coord: Coord) -> Vec<Frequency> {
        self.terms
            .keys()
            .filter_map(Wave::arg)
            .filter_map(|a| a.frequency(coord).cloned())
            .collect()
    }

    /// Common period of the frequencies in `freqs`, when they are
    /// commensurate: all rational, or all rational multiples of π.
    pub fn common_period(freqs: &[Frequency]) -> Option<Frequency> {
        if freqs.is_empty() {
            return None;
        }
        if freqs.iter().all(|f| f.pi.is_zero()) {
            let g = freqs
                .iter()
                .fold(BigRational::zero(), |g, f| rational_gcd(&g, &f.rational));
            return Some(Frequency::pi_multiple(int(2) / g));
        }
        if freqs.iter().all(|f| f.rational.is_zero()) {
            let g = freqs
                .iter()
                .fold(BigRational::zero(), |g, f| rational_gcd(&g, &f.pi));
            return Some(Frequency::rational(int(2) / g));
        }
        None
    }

    /// Fundamental period of the scalar in direction `coord`.
    pub fn period(&self, coord: Coord) -> Option<Frequency> {
        Self::common_period(&self.frequencies(coord))
    }

    /// Substitutes `x_coord -> x_coord + shift`.
    pub fn translate(&self, coord: Coord, shift: &Frequency) -> Result<Self, TrigError> {
        let mut out = Self::zero();
        for (w, c) in &self.terms {
            let Some(arg) = w.arg() else {
                out.add_term(Wave::One, c.clone());
                continue;
            };
            let Some(f) = arg.frequency(coord) else {
                out.add_term(w.clone(), c.clone());
                continue;
            };
            let phase = product_frequency(f, shift).ok_or_else(|| {
                TrigError::Unsupported("translation produces a phase with pi^2".into())
            })?;
            let affine = Affine {
                linear: arg.to_map(),
                constant: phase,
            };
            let moved = match w {
                Wave::Cos(_) => Self::cos_of(&affine)?,
                _ => Self::sin_of(&affine)?,
            };
            out = &out + &moved.scale(c);
        }
        Ok(out)
    }

    pub fn display<'a>(&'a self, names: &'a [String]) -> ScalarDisplay<'a> {
        ScalarDisplay { s: self, names }
    }
}

/// `f·g` for frequencies, if it stays in `Q + Qπ`.
pub(crate) fn product_frequency(f: &Frequency, g: &Frequency) -> Option<Frequency> {
    if !f.pi.is_zero() && !g.pi.is_zero() {
        return None;
    }
    Some(Frequency::new(
        &f.rational * &g.rational,
        &f.rational * &g.pi + &f.pi * &g.rational,
    ))
}

impl Add for &TrigScalar {
    type Output = TrigScalar;
    fn add(self, rhs: &TrigScalar) -> TrigScalar {
        let mut out = self.clone();
        for (w, c) in &rhs.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }
}

impl Add for TrigScalar {
    type Output = TrigScalar;
    fn add(mut self, rhs: TrigScalar) -> TrigScalar {
        for (w, c) in rhs.terms {
            self.add_term(w, c);
        }
        self
    }
}

impl Sub for &TrigScalar {
    type Output = TrigScalar;
    fn sub(self, rhs: &TrigScalar) -> TrigScalar {
        let mut out = self.clone();
        for (w, c) in &rhs.terms {
            out.add_term(w.clone(), -c);
        }
        out
    }
}

impl Sub for TrigScalar {
    type Output = TrigScalar;
    fn sub(self, rhs: TrigScalar) -> TrigScalar {
        &self - &rhs
    }
}

impl Neg for &TrigScalar {
    type Output = TrigScalar;
    fn neg(self) -> TrigScalar {
        TrigScalar {
            terms: self.terms.iter().map(|(w, c)| (w.clone(), -c)).collect(),
        }
    }
}

impl Neg for TrigScalar {
    type Output = TrigScalar;
    fn neg(self) -> TrigScalar {
        -&self
    }
}

impl Mul for &TrigScalar {
    type Output = TrigScalar;
    fn mul(self, rhs: &TrigScalar) -> TrigScalar {
        let mut out = TrigScalar::zero();
        for (wa, ca) in &self.terms {
            for (wb, cb) in &rhs.terms {
                let c = ca * cb;
                for (w, k) in wave_product(wa, wb) {
                    out.add_term(w, c.scale(&k));
                }
            }
        }
        out
    }
}

impl Mul for TrigScalar {
    type Output = TrigScalar;
    fn mul(self, rhs: TrigScalar) -> TrigScalar {
        &self * &rhs
    }
}

pub struct ScalarDisplay<'a> {
    s: &'a TrigScalar,
    names: &'a [String],
}

impl ScalarDisplay<'_> {
    fn name(&self, c: Coord) -> String {
        self.names
            .get(c)
            .cloned()
            .unwrap_or_else(|| format!("x{c}"))
    }

    fn arg_string(&self, arg: &Arg) -> String {
        let mut out = String::new();
        for (i, (c, f)) in arg.0.iter().enumerate() {
            let negative = (f.pi.is_zero() && f.rational.is_negative())
                || (f.rational.is_zero() && f.pi.is_negative());
            let shown = if negative { -f } else { f.clone() };
            let piece = format!("{}{}", fmt_multiplier(&shown), self.name(*c));
            match (i, negative) {
                (0, false) => out.push_str(&piece),
                (0, true) => {
                    out.push('-');
                    out.push_str(&piece);
                }
                (_, false) => {
                    out.push_str(" + ");
                    out.push_str(&piece);
                }
                (_, true) => {
                    out.push_str(" - ");
                    out.push_str(&piece);
                }
            }
        }
        out
    }
}

impl fmt::Display for ScalarDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.s.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (w, c)) in self.s.terms.iter().enumerate() {
            let body = match w {
                Wave::One => c.to_string(),
                Wave::Cos(a) | Wave::Sin(a) => {
                    let func = if matches!(w, Wave::Cos(_)) {
                        "cos"
                    } else {
                        "sin"
                    };
                    let prefix = if c.is_one() {
                        String::new()
                    } else if (-c).is_one() {
                        "-".to_string()
                    } else {
                        format!("{c}*")
                    };
                    format!("{prefix}{func}({})", self.arg_string(a))
                }
            };
            if i == 0 {
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

    fn names() -> Vec<String> {
        ["t", "x1", "x2"].iter().map(|s| s.to_string()).collect()
    }

    fn sin_t() -> TrigScalar {
        TrigScalar::sin_of(&Affine::coordinate(0)).unwrap()
    }

    fn cos_t() -> TrigScalar {
        TrigScalar::cos_of(&Affine::coordinate(0)).unwrap()
    }

    #[test]
    fn pythagorean_identity_collapses() {
        let s = &(&sin_t() * &sin_t()) + &(&cos_t() * &cos_t());
        assert_eq!(s, TrigScalar::one());
        assert!((&s - &TrigScalar::one()).is_identically_zero());
    }

    #[test]
    fn product_to_sum() {
        let s = &sin_t() * &cos_t();
        let expected = TrigScalar::wave(
            PhaseKind::Sin,
            &[(0, Frequency::rational(int(2)))],
            Coeff::from_rational(rat(1, 2)),
        );
        assert_eq!(s, expected);
    }

    #[test]
    fn derivative_carries_pi_frequency() {
        let freq = Frequency::pi_multiple(int(60));
        let s = TrigScalar::wave(PhaseKind::Sin, &[(1, freq.clone())], Coeff::one());
        let d = s.differentiate(1);
        let expected = TrigScalar::wave(PhaseKind::Cos, &[(1, freq)], Coeff::monomial(int(60), 1));
        assert_eq!(d, expected);
        assert!(TrigScalar::int(5).differentiate(0).is_identically_zero());
    }

    #[test]
    fn negative_leading_frequency_is_normalized() {
        let a = TrigScalar::wave(
            PhaseKind::Sin,
            &[(0, Frequency::rational(int(-2)))],
            Coeff::one(),
        );
        let b = TrigScalar::wave(
            PhaseKind::Sin,
            &[(0, Frequency::rational(int(2)))],
            Coeff::one(),
        );
        assert_eq!(a, -b);
    }

    #[test]
    fn quarter_turn_phases_absorb() {
        let mut arg = Affine::coordinate(0);
        arg.constant = Frequency::pi_multiple(rat(1, 2));
        assert_eq!(TrigScalar::sin_of(&arg).unwrap(), cos_t());
        arg.constant = Frequency::pi_multiple(int(2));
        assert_eq!(TrigScalar::cos_of(&arg).unwrap(), cos_t());
        arg.constant = Frequency::rational(int(1));
        assert!(TrigScalar::cos_of(&arg).is_err());
    }

    #[test]
    fn evaluation_and_unassigned() {
        let s = TrigScalar::wave(
            PhaseKind::Sin,
            &[(0, Frequency::pi_multiple(int(1)))],
            Coeff::one(),
        );
        assert!((s.evaluate(&[0.5]).unwrap() - 1.0).abs() < 1e-15);
        let err = s.evaluate_named(&names(), &BTreeMap::new()).unwrap_err();
        assert_eq!(err, TrigError::UnassignedCoordinate("t".into()));
    }

    #[test]
    fn periods() {
        let s = &TrigScalar::wave(
            PhaseKind::Sin,
            &[(1, Frequency::pi_multiple(int(6)))],
            Coeff::one(),
        ) + &TrigScalar::wave(
            PhaseKind::Cos,
            &[(1, Frequency::pi_multiple(int(4)))],
            Coeff::one(),
        );
        assert_eq!(s.period(1), Some(Frequency::rational(int(1))));
        let mixed = &sin_t()
            + &TrigScalar::wave(
                PhaseKind::Sin,
                &[(0, Frequency::pi_multiple(int(1)))],
                Coeff::one(),
            );
        assert_eq!(mixed.period(0), None);
    }

    #[test]
    fn display_is_canonical() {
        let s = &(&sin_t().scale_rational(&rat(-3, 2)) + &TrigScalar::int(2))
            + &TrigScalar::wave(
                PhaseKind::Cos,
                &[
                    (1, Frequency::pi_multiple(int(2))),
                    (2, Frequency::rational(int(-1))),
                ],
                Coeff::pi(),
            );
        assert_eq!(
            s.display(&names()).to_string(),
            "2 + pi*cos(2*pi*x1 - x2) - 3/2*sin(t)"
        );
    }
}
