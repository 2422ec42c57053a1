//! Exact arithmetic in the coefficient field Q(e2,...,en).
//!
//! A [`Scalar`] is a quotient of multivariate polynomials kept in a canonical
//! form: numerator and denominator share no factor and the denominator is
//! monic in graded-lexicographic order, so equality is plain structural
//! equality. Rank-1 contexts have no indeterminates and the field degenerates
//! to Q with the same interface.

pub mod poly;

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{HvError, Result};
pub use poly::{gcd, rat_to_string, Monomial, Poly};

/// Arbitrary-precision rational, reduced with positive denominator.
pub type Rational = num_rational::BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn parse_rational(text: &str) -> Result<Rational> {
    let bad = |msg: &str| HvError::Syntax {
        line: 1,
        col: 1,
        msg: format!("{msg}: {text:?}"),
    };
    match text.split_once('/') {
        None => {
            let n = BigInt::from_str(text.trim()).map_err(|_| bad("expected integer"))?;
            Ok(Rational::from_integer(n))
        }
        Some((n, d)) => {
            let n = BigInt::from_str(n.trim()).map_err(|_| bad("expected integer numerator"))?;
            let d = BigInt::from_str(d.trim()).map_err(|_| bad("expected integer denominator"))?;
            if d.is_zero() {
                return Err(HvError::DivisionByZero);
            }
            Ok(Rational::new(n, d))
        }
    }
}

/// Element of Q(e2,...,en) in canonical form.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Scalar {
    num: Poly,
    den: Poly,
}

impl Scalar {
    fn canonical(num: Poly, den: Poly) -> Scalar {
        assert!(!den.is_zero(), "scalar with zero denominator");
        if num.is_zero() {
            return Scalar {
                den: Poly::one(num.nvars()),
                num,
            };
        }
        let g = gcd(&num, &den);
        let mut num = num.divexact(&g).expect("gcd divides");
        let mut den = den.divexact(&g).expect("gcd divides");
        let lc = den.leading().1.clone();
        if !lc.is_one() {
            let inv = lc.recip();
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        Scalar { num, den }
    }

    pub fn zero(nvars: usize) -> Scalar {
        Scalar {
            num: Poly::zero(nvars),
            den: Poly::one(nvars),
        }
    }

    pub fn one(nvars: usize) -> Scalar {
        Scalar {
            num: Poly::one(nvars),
            den: Poly::one(nvars),
        }
    }

    pub fn from_int(n: i64, nvars: usize) -> Scalar {
        Scalar::from_rational(Rational::from_integer(BigInt::from(n)), nvars)
    }

    pub fn from_rational(r: Rational, nvars: usize) -> Scalar {
        Scalar {
            num: Poly::constant(r, nvars),
            den: Poly::one(nvars),
        }
    }

    /// The indeterminate e(idx+2); `idx` ranges over 0..nvars.
    pub fn var(idx: usize, nvars: usize) -> Scalar {
        Scalar {
            num: Poly::var(idx, nvars),
            den: Poly::one(nvars),
        }
    }

    pub fn from_poly(p: Poly) -> Scalar {
        let nvars = p.nvars();
        Scalar {
            num: p,
            den: Poly::one(nvars),
        }
    }

    pub fn nvars(&self) -> usize {
        self.num.nvars()
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// Constant value, if the scalar has no indeterminates.
    pub fn as_rational(&self) -> Option<Rational> {
        let n = self.num.as_constant()?;
        let d = self.den.as_constant()?;
        Some(n / d)
    }

    pub fn add(&self, other: &Scalar) -> Scalar {
        Scalar::canonical(
            self.num.mul(&other.den).add(&other.num.mul(&self.den)),
            self.den.mul(&other.den),
        )
    }

    pub fn sub(&self, other: &Scalar) -> Scalar {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Scalar {
        Scalar {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn mul(&self, other: &Scalar) -> Scalar {
        Scalar::canonical(self.num.mul(&other.num), self.den.mul(&other.den))
    }

    pub fn div(&self, other: &Scalar) -> Result<Scalar> {
        if other.is_zero() {
            return Err(HvError::DivisionByZero);
        }
        Ok(Scalar::canonical(
            self.num.mul(&other.den),
            self.den.mul(&other.num),
        ))
    }

    pub fn inv(&self) -> Result<Scalar> {
        Scalar::one(self.nvars()).div(self)
    }

    pub fn pow(&self, exp: i64) -> Result<Scalar> {
        let base = if exp < 0 { self.inv()? } else { self.clone() };
        let mut acc = Scalar::one(self.nvars());
        for _ in 0..exp.unsigned_abs() {
            acc = acc.mul(&base);
        }
        Ok(acc)
    }

    pub fn scale_rat(&self, r: &Rational) -> Scalar {
        self.mul(&Scalar::from_rational(r.clone(), self.nvars()))
    }

    /// Exact evaluation at e2 -> assignment[0], ..., en -> assignment[n-2].
    pub fn specialize(&self, assignment: &[Rational]) -> Result<Rational> {
        if assignment.len() != self.nvars() {
            return Err(HvError::RankMismatch {
                expected: self.nvars(),
                got: assignment.len(),
            });
        }
        let d = self.den.eval(assignment);
        if d.is_zero() {
            return Err(HvError::SpecializationPole);
        }
        Ok(self.num.eval(assignment) / d)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write!(f, "{}", self.num);
        }
        let num = self.num.to_string();
        let den = self.den.to_string();
        let num_str = if self.num.terms().count() > 1 {
            format!("({num})")
        } else {
            num
        };
        let den_str = if self.den.terms().count() > 1 {
            format!("({den})")
        } else {
            den
        };
        write!(f, "{num_str}/{den_str}")
    }
}

// ---------------------------------------------------------------------------
// Textual form: integers, fractions p/q, indeterminates e2..en, + - * / ^ and
// parentheses. parse(print(x)) == x.

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Var(usize),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn syntax(col: usize, msg: impl Into<String>) -> HvError {
    HvError::Syntax {
        line: 1,
        col,
        msg: msg.into(),
    }
}

fn lex_scalar(text: &str, nvars: usize) -> Result<Vec<(Tok, usize)>> {
    let mut toks = Vec::new();
    let bytes = text.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        let col = i + 1;
        match c {
            ' ' | '\t' | '\n' | '\r' => i += 1,
            '+' => {
                toks.push((Tok::Plus, col));
                i += 1;
            }
            '-' => {
                toks.push((Tok::Minus, col));
                i += 1;
            }
            '*' => {
                toks.push((Tok::Star, col));
                i += 1;
            }
            '/' => {
                toks.push((Tok::Slash, col));
                i += 1;
            }
            '^' => {
                toks.push((Tok::Caret, col));
                i += 1;
            }
            '(' => {
                toks.push((Tok::LParen, col));
                i += 1;
            }
            ')' => {
                toks.push((Tok::RParen, col));
                i += 1;
            }
            '0'..='9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let n = BigInt::from_str(&text[start..i]).unwrap();
                toks.push((Tok::Int(n), col));
            }
            'e' => {
                let start = i;
                i += 1;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let idx: usize = text[start + 1..i]
                    .parse()
                    .map_err(|_| syntax(col, "expected indeterminate like e2"))?;
                if idx < 2 || idx - 2 >= nvars {
                    return Err(syntax(col, format!("indeterminate e{idx} is out of range")));
                }
                toks.push((Tok::Var(idx - 2), col));
            }
            other => return Err(syntax(col, format!("unexpected character {other:?}"))),
        }
    }
    Ok(toks)
}

struct ScalarParser<'a> {
    toks: &'a [(Tok, usize)],
    pos: usize,
    nvars: usize,
    end_col: usize,
}

impl<'a> ScalarParser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn col(&self) -> usize {
        self.toks
            .get(self.pos)
            .map(|(_, c)| *c)
            .unwrap_or(self.end_col)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(t, _)| t.clone());
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expr(&mut self) -> Result<Scalar> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.next();
                    acc = acc.add(&self.term()?);
                }
                Some(Tok::Minus) => {
                    self.next();
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Scalar> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.next();
                    acc = acc.mul(&self.factor()?);
                }
                Some(Tok::Slash) => {
                    self.next();
                    let col = self.col();
                    let rhs = self.factor()?;
                    acc = acc.div(&rhs).map_err(|_| syntax(col, "division by zero"))?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<Scalar> {
        let mut negate = false;
        while matches!(self.peek(), Some(Tok::Minus)) {
            self.next();
            negate = !negate;
        }
        let mut base = self.primary()?;
        if matches!(self.peek(), Some(Tok::Caret)) {
            self.next();
            let col = self.col();
            let mut exp_neg = false;
            while matches!(self.peek(), Some(Tok::Minus)) {
                self.next();
                exp_neg = !exp_neg;
            }
            match self.next() {
                Some(Tok::Int(n)) => {
                    let e = n
                        .to_i64()
                        .ok_or_else(|| syntax(col, "exponent out of range"))?;
                    base = base
                        .pow(if exp_neg { -e } else { e })
                        .map_err(|_| syntax(col, "inverse of zero"))?;
                }
                _ => return Err(syntax(col, "expected integer exponent")),
            }
        }
        Ok(if negate { base.neg() } else { base })
    }

    fn primary(&mut self) -> Result<Scalar> {
        let col = self.col();
        match self.next() {
            Some(Tok::Int(n)) => Ok(Scalar::from_rational(Rational::from_integer(n), self.nvars)),
            Some(Tok::Var(idx)) => Ok(Scalar::var(idx, self.nvars)),
            Some(Tok::LParen) => {
                let inner = self.expr()?;
                match self.next() {
                    Some(Tok::RParen) => Ok(inner),
                    _ => Err(syntax(self.end_col, "expected ')'")),
                }
            }
            _ => Err(syntax(col, "expected a scalar")),
        }
    }
}

pub fn parse_scalar(text: &str, nvars: usize) -> Result<Scalar> {
    let toks = lex_scalar(text, nvars)?;
    let mut p = ScalarParser {
        toks: &toks,
        pos: 0,
        nvars,
        end_col: text.len() + 1,
    };
    let s = p.expr()?;
    if p.pos != toks.len() {
        return Err(syntax(p.col(), "unexpected trailing input"));
    }
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(text: &str, nvars: usize) -> Scalar {
        parse_scalar(text, nvars).unwrap()
    }

    #[test]
    fn add_cancels() {
        let lhs = s("e2", 1).add(&s("1 - e2", 1));
        assert!(lhs.is_one());
    }

    #[test]
    fn mul_by_inverse() {
        let lhs = s("1/e2", 1).mul(&s("e2", 1));
        assert!(lhs.is_one());
    }

    #[test]
    fn div_cancels_common_factor() {
        let lhs = s("e2^2 - 1", 1).div(&s("e2 - 1", 1)).unwrap();
        assert_eq!(lhs, s("e2 + 1", 1));
    }

    #[test]
    fn div_by_zero_is_an_error() {
        assert_eq!(
            s("1", 1).div(&Scalar::zero(1)),
            Err(HvError::DivisionByZero)
        );
    }

    #[test]
    fn specialize_substitutes() {
        assert_eq!(s("e2 + 1", 1).specialize(&[rat(3, 2)]), Ok(rat(5, 2)));
    }

    #[test]
    fn specialize_pole() {
        assert_eq!(
            s("1/e2", 1).specialize(&[rat(0, 1)]),
            Err(HvError::SpecializationPole)
        );
    }

    #[test]
    fn specialize_rank_one_constant() {
        assert_eq!(s("7", 0).specialize(&[]), Ok(rat(7, 1)));
    }

    #[test]
    fn canonical_denominator_is_monic() {
        // (2e2 + 2)/(2e2 - 4) must normalize to (e2 + 1)/(e2 - 2).
        let v = s("(2*e2 + 2)/(2*e2 - 4)", 1);
        assert_eq!(v.to_string(), "(e2 + 1)/(e2 - 2)");
        assert!(v.den().leading().1.is_one());
    }

    #[test]
    fn display_roundtrip() {
        for text in [
            "0",
            "-3",
            "1/2",
            "e2^2 - 3*e2 + 1/2",
            "(e2 + 1)/(e2 - 1)",
            "1/e2",
            "(e2*e3 - 2)/(e3^2 - 1/3)",
        ] {
            let nvars = 2;
            let v = s(text, nvars);
            assert_eq!(parse_scalar(&v.to_string(), nvars).unwrap(), v, "{text}");
        }
    }

    #[test]
    fn negative_powers() {
        let v = s("e2^-2", 1);
        assert_eq!(v.mul(&s("e2^2", 1)), Scalar::one(1));
    }

    #[test]
    fn syntax_error_reports_column() {
        match parse_scalar("1 + $", 0) {
            Err(HvError::Syntax { col, .. }) => assert_eq!(col, 5),
            other => panic!("expected syntax error, got {other:?}"),
        }
    }
}
