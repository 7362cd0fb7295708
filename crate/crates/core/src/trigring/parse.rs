//! Raw expressions and their reduction to the Fourier normal form.
//!
//! Grammar (whitespace insensitive):
//!
//! ```text
//! expr  := term (('+' | '-') term)*
//! term  := unary (('*' | '/') unary)*
//! unary := '-' unary | power
//! power := atom ('^' '-'? integer)?
//! atom  := number | 'pi' | ident | ('sin' | 'cos') '(' expr ')' | '(' expr ')'
//! ```

use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use super::frequency::Frequency;
use super::rational::parse_rational;
use super::scalar::{product_frequency, Affine, TrigScalar};
use super::TrigError;

/// Unreduced sum-of-products expression.
#[derive(Clone, Debug, PartialEq)]
pub enum RawExpr {
    Number(BigRational),
    Pi,
    Coordinate(usize),
    Sin(Box<RawExpr>),
    Cos(Box<RawExpr>),
    Neg(Box<RawExpr>),
    Add(Box<RawExpr>, Box<RawExpr>),
    Sub(Box<RawExpr>, Box<RawExpr>),
    Mul(Box<RawExpr>, Box<RawExpr>),
    Div(Box<RawExpr>, Box<RawExpr>),
    Pow(Box<RawExpr>, i32),
}

impl RawExpr {
    pub fn sin(e: RawExpr) -> Self {
        RawExpr::Sin(Box::new(e))
    }
    pub fn cos(e: RawExpr) -> Self {
        RawExpr::Cos(Box::new(e))
    }
    pub fn add(a: RawExpr, b: RawExpr) -> Self {
        RawExpr::Add(Box::new(a), Box::new(b))
    }
    pub fn sub(a: RawExpr, b: RawExpr) -> Self {
        RawExpr::Sub(Box::new(a), Box::new(b))
    }
    pub fn mul(a: RawExpr, b: RawExpr) -> Self {
        RawExpr::Mul(Box::new(a), Box::new(b))
    }
    pub fn pow(a: RawExpr, n: i32) -> Self {
        RawExpr::Pow(Box::new(a), n)
    }
}

/// Reduces a raw expression to its unique normal form.
pub fn normalize(expr: &RawExpr) -> Result<TrigScalar, TrigError> {
    match expr {
        RawExpr::Number(r) => Ok(TrigScalar::rational(r.clone())),
        RawExpr::Pi => Ok(TrigScalar::pi()),
        RawExpr::Coordinate(c) => Err(TrigError::Unsupported(format!(
            "bare coordinate x{c} outside sin/cos is not a trigonometric polynomial"
        ))),
        RawExpr::Sin(arg) => TrigScalar::sin_of(&affine(arg)?),
        RawExpr::Cos(arg) => TrigScalar::cos_of(&affine(arg)?),
        RawExpr::Neg(a) => Ok(-normalize(a)?),
        RawExpr::Add(a, b) => Ok(normalize(a)? + normalize(b)?),
        RawExpr::Sub(a, b) => Ok(normalize(a)? - normalize(b)?),
        RawExpr::Mul(a, b) => Ok(normalize(a)? * normalize(b)?),
        RawExpr::Div(a, b) => {
            let inv = normalize(b)?.inverse_constant().ok_or_else(|| {
                TrigError::Unsupported("division by a non-constant or non-monomial scalar".into())
            })?;
            Ok(normalize(a)?.scale(&inv))
        }
        RawExpr::Pow(a, n) => {
            let base = normalize(a)?;
            if *n >= 0 {
                Ok(base.pow(*n as u32))
            } else {
                let inv = base.inverse_constant().ok_or_else(|| {
                    TrigError::Unsupported("negative power of a non-invertible scalar".into())
                })?;
                Ok(TrigScalar::constant(inv.pow(n.unsigned_abs())))
            }
        }
    }
}

fn constant_frequency(a: &Affine) -> Option<&Frequency> {
    a.is_constant().then_some(&a.constant)
}

/// Reduces a sin/cos argument to an affine form over `Q + Qπ`.
fn affine(expr: &RawExpr) -> Result<Affine, TrigError> {
    let non_affine = || TrigError::Unsupported("non-affine argument to sin/cos".into());
    match expr {
        RawExpr::Number(r) => Ok(Affine::constant(Frequency::rational(r.clone()))),
        RawExpr::Pi => Ok(Affine::constant(Frequency::pi_multiple(
            BigRational::from_integer(1.into()),
        ))),
        RawExpr::Coordinate(c) => Ok(Affine::coordinate(*c)),
        RawExpr::Neg(a) => Ok(Affine::default().add(&affine(a)?, true)),
        RawExpr::Add(a, b) => Ok(affine(a)?.add(&affine(b)?, false)),
        RawExpr::Sub(a, b) => Ok(affine(a)?.add(&affine(b)?, true)),
        RawExpr::Mul(a, b) => {
            let (a, b) = (affine(a)?, affine(b)?);
            let (k, other) = match (constant_frequency(&a), constant_frequency(&b)) {
                (Some(k), _) => (k.clone(), b),
                (_, Some(k)) => (k.clone(), a),
                _ => return Err(non_affine()),
            };
            scale_affine(&other, &k).ok_or_else(non_affine)
        }
        RawExpr::Div(a, b) => {
            let b = affine(b)?;
            let k = constant_frequency(&b).ok_or_else(non_affine)?;
            if !k.pi.is_zero() || k.rational.is_zero() {
                return Err(non_affine());
            }
            Ok(affine(a)?.scale(&k.rational.recip()))
        }
        RawExpr::Pow(a, 1) => affine(a),
        _ => Err(non_affine()),
    }
}

fn scale_affine(a: &Affine, k: &Frequency) -> Option<Affine> {
    let mut out = Affine::default();
    for (c, f) in &a.linear {
        let g = product_frequency(f, k)?;
        if !g.is_zero() {
            out.linear.insert(*c, g);
        }
    }
    out.constant = product_frequency(&a.constant, k)?;
    Some(out)
}

/// Parses an expression string over the named coordinates.
pub fn parse_raw(src: &str, coords: &[String]) -> Result<RawExpr, TrigError> {
    let tokens = tokenize(src)?;
    let mut p = Parser {
        tokens,
        pos: 0,
        coords,
    };
    let e = p.expr()?;
    if p.pos != p.tokens.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(e)
}

impl TrigScalar {
    /// Parses and normalizes, e.g. `"sin(t)^2 + cos(t)^2"`.
    pub fn parse(src: &str, coords: &[String]) -> Result<TrigScalar, TrigError> {
        normalize(&parse_raw(src, coords)?)
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(String),
    Ident(String),
    Op(char),
}

fn tokenize(src: &str) -> Result<Vec<(usize, Tok)>, TrigError> {
    let bytes: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let ch = bytes[i];
        if ch.is_whitespace() {
            i += 1;
        } else if ch.is_ascii_digit() || ch == '.' {
            let start = i;
            while i < bytes.len() && (bytes[i].is_ascii_digit() || bytes[i] == '.') {
                i += 1;
            }
            out.push((start, Tok::Num(bytes[start..i].iter().collect())));
        } else if ch.is_alphabetic() || ch == '_' {
            let start = i;
            while i < bytes.len() && (bytes[i].is_alphanumeric() || bytes[i] == '_') {
                i += 1;
            }
            out.push((start, Tok::Ident(bytes[start..i].iter().collect())));
        } else if "+-*/^()".contains(ch) {
            out.push((i, Tok::Op(ch)));
            i += 1;
        } else {
            return Err(TrigError::Parse {
                position: i,
                message: format!("unexpected character '{ch}'"),
            });
        }
    }
    Ok(out)
}

struct Parser<'a> {
    tokens: Vec<(usize, Tok)>,
    pos: usize,
    coords: &'a [String],
}

impl Parser<'_> {
    fn error(&self, message: &str) -> TrigError {
        let position = self
            .tokens
            .get(self.pos)
            .map_or_else(|| self.tokens.last().map_or(0, |t| t.0 + 1), |t| t.0);
        TrigError::Parse {
            position,
            message: message.to_string(),
        }
    }

    fn peek(&self) -> Option<&Tok> {
        self.tokens.get(self.pos).map(|t| &t.1)
    }

    fn eat(&mut self, op: char) -> bool {
        if self.peek() == Some(&Tok::Op(op)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<RawExpr, TrigError> {
        let mut lhs = self.term()?;
        loop {
            if self.eat('+') {
                lhs = RawExpr::add(lhs, self.term()?);
            } else if self.eat('-') {
                lhs = RawExpr::sub(lhs, self.term()?);
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<RawExpr, TrigError> {
        let mut lhs = self.unary()?;
        loop {
            if self.eat('*') {
                lhs = RawExpr::mul(lhs, self.unary()?);
            } else if self.eat('/') {
                lhs = RawExpr::Div(Box::new(lhs), Box::new(self.unary()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn unary(&mut self) -> Result<RawExpr, TrigError> {
        if self.eat('-') {
            return Ok(RawExpr::Neg(Box::new(self.unary()?)));
        }
        if self.eat('+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<RawExpr, TrigError> {
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let negative = self.eat('-');
        let Some(Tok::Num(n)) = self.peek().cloned() else {
            return Err(self.error("expected integer exponent"));
        };
        let value = parse_rational(&n)
            .filter(|r| r.is_integer() && !r.is_negative())
            .and_then(|r| r.to_integer().to_i32())
            .ok_or_else(|| self.error("expected integer exponent"))?;
        self.pos += 1;
        Ok(RawExpr::pow(base, if negative { -value } else { value }))
    }

    fn atom(&mut self) -> Result<RawExpr, TrigError> {
        let Some(tok) = self.peek().cloned() else {
            return Err(self.error("unexpected end of input"));
        };
        match tok {
            Tok::Num(n) => {
                let r = parse_rational(&n).ok_or_else(|| self.error("malformed number"))?;
                self.pos += 1;
                Ok(RawExpr::Number(r))
            }
            Tok::Op('(') => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    return Err(self.error("expected ')'"));
                }
                Ok(e)
            }
            Tok::Ident(name) => {
                self.pos += 1;
                match name.as_str() {
                    "pi" => Ok(RawExpr::Pi),
                    "sin" | "cos" => {
                        if !self.eat('(') {
                            return Err(self.error("expected '(' after function name"));
                        }
                        let arg = self.expr()?;
                        if !self.eat(')') {
                            return Err(self.error("expected ')'"));
                        }
                        Ok(if name == "sin" {
                            RawExpr::sin(arg)
                        } else {
                            RawExpr::cos(arg)
                        })
                    }
                    _ => match self.coords.iter().position(|c| *c == name) {
                        Some(i) => Ok(RawExpr::Coordinate(i)),
                        None => {
                            self.pos -= 1;
                            Err(self.error(&format!("unknown identifier '{name}'")))
                        }
                    },
                }
            }
            Tok::Op(c) => Err(self.error(&format!("unexpected '{c}'"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::trigring::rational::rat;

    fn coords() -> Vec<String> {
        ["t", "theta", "x2"].iter().map(|s| s.to_string()).collect()
    }

    fn p(s: &str) -> TrigScalar {
        TrigScalar::parse(s, &coords()).unwrap()
    }

    #[test]
    fn pythagorean_sum() {
        assert_eq!(p("sin(t)^2 + cos(t)^2"), TrigScalar::one());
        assert!(p("sin(theta)^2 + cos(theta)^2 - 1").is_identically_zero());
    }

    #[test]
    fn double_angle() {
        assert_eq!(p("sin(theta)*cos(theta)"), p("1/2*sin(2*theta)"));
    }

    #[test]
    fn rotation_collapse() {
        let s = p("cos(8*pi*x2)*cos(8*pi*x2) + sin(8*pi*x2)*sin(8*pi*x2)");
        assert_eq!(s, TrigScalar::one());
    }

    #[test]
    fn rejects_non_affine_arguments() {
        assert!(matches!(
            TrigScalar::parse("sin(t*t)", &coords()),
            Err(TrigError::Unsupported(_))
        ));
        assert!(matches!(
            TrigScalar::parse("sin(sin(t))", &coords()),
            Err(TrigError::Unsupported(_))
        ));
        assert!(matches!(
            TrigScalar::parse("t + 1", &coords()),
            Err(TrigError::Unsupported(_))
        ));
        assert!(matches!(
            TrigScalar::parse("sin(pi*pi*t)", &coords()),
            Err(TrigError::Unsupported(_))
        ));
    }

    #[test]
    fn parse_errors_carry_position() {
        match TrigScalar::parse("sin(t) + foo", &coords()) {
            Err(TrigError::Parse { position, .. }) => assert_eq!(position, 9),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn phases_and_pi_frequencies() {
        assert_eq!(p("sin(t + pi/2)"), p("cos(t)"));
        assert_eq!(p("cos(pi*(2*t + 1))"), p("-cos(2*pi*t)"));
        assert_eq!(p("2*pi/pi"), TrigScalar::int(2));
        assert_eq!(p("pi^-2*pi^3"), TrigScalar::pi());
        assert_eq!(p("3/4"), TrigScalar::rational(rat(3, 4)));
    }
}
