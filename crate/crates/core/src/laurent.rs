//! The field `Q(t)` with its `t`-adic valuation.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::arith::{render_rational, Rational, TropValue};
use crate::error::{Error, Result};

/// Polynomial in `t` over `Q`, coefficients from degree 0 upward, no
/// trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct QPoly(Vec<Rational>);

impl QPoly {
    fn trimmed(mut c: Vec<Rational>) -> QPoly {
        while c.last().is_some_and(Zero::is_zero) {
            c.pop();
        }
        QPoly(c)
    }

    fn constant(c: Rational) -> QPoly {
        QPoly::trimmed(vec![c])
    }

    fn one() -> QPoly {
        QPoly(vec![Rational::one()])
    }

    fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    fn is_one(&self) -> bool {
        self.0.len() == 1 && self.0[0].is_one()
    }

    fn degree(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    fn lead(&self) -> &Rational {
        self.0.last().expect("nonzero polynomial")
    }

    fn order(&self) -> usize {
        self.0.iter().position(|c| !c.is_zero()).unwrap_or(0)
    }

    fn shift_down(&self, k: usize) -> QPoly {
        QPoly(self.0[k..].to_vec())
    }

    fn shift_up(&self, k: usize) -> QPoly {
        if self.is_zero() {
            return self.clone();
        }
        let mut c = vec![Rational::zero(); k];
        c.extend(self.0.iter().cloned());
        QPoly(c)
    }

    fn scale(&self, s: &Rational) -> QPoly {
        QPoly::trimmed(self.0.iter().map(|c| c * s).collect())
    }

    fn add(&self, o: &QPoly) -> QPoly {
        let n = self.0.len().max(o.0.len());
        let zero = Rational::zero();
        QPoly::trimmed(
            (0..n)
                .map(|k| self.0.get(k).unwrap_or(&zero) + o.0.get(k).unwrap_or(&zero))
                .collect(),
        )
    }

    fn mul(&self, o: &QPoly) -> QPoly {
        if self.is_zero() || o.is_zero() {
            return QPoly(Vec::new());
        }
        let mut c = vec![Rational::zero(); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.0.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        QPoly::trimmed(c)
    }

    fn divrem(&self, d: &QPoly) -> (QPoly, QPoly) {
        let mut r = self.0.clone();
        if self.0.len() < d.0.len() {
            return (QPoly(Vec::new()), self.clone());
        }
        let mut q = vec![Rational::zero(); self.0.len() - d.0.len() + 1];
        let lead = d.lead();
        for k in (0..q.len()).rev() {
            let c = &r[k + d.degree()] / lead;
            if !c.is_zero() {
                for (j, b) in d.0.iter().enumerate() {
                    r[k + j] -= &c * b;
                }
            }
            q[k] = c;
        }
        (QPoly::trimmed(q), QPoly::trimmed(r))
    }

    fn gcd(&self, o: &QPoly) -> QPoly {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.divrem(&b).1;
            a = b;
            b = r;
        }
        if a.is_zero() {
            return a;
        }
        let l = a.lead().clone();
        a.scale(&(Rational::one() / l))
    }
}

/// Element of `Q(t)`, stored as `t^shift * num / den` with `num(0) != 0`,
/// `den(0) = 1` and `gcd(num, den) = 1`. Zero has an empty numerator.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LaurentScalar {
    shift: i64,
    num: QPoly,
    den: QPoly,
}

impl LaurentScalar {
    fn normalized(shift: i64, num: QPoly, den: QPoly) -> LaurentScalar {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return LaurentScalar::zero();
        }
        let (kn, kd) = (num.order(), den.order());
        let (mut num, mut den) = (num.shift_down(kn), den.shift_down(kd));
        let g = num.gcd(&den);
        if !g.is_one() {
            num = num.divrem(&g).0;
            den = den.divrem(&g).0;
        }
        let c = Rational::one() / &den.0[0];
        LaurentScalar {
            shift: shift + kn as i64 - kd as i64,
            num: num.scale(&c),
            den: den.scale(&c),
        }
    }

    pub fn zero() -> Self {
        LaurentScalar {
            shift: 0,
            num: QPoly(Vec::new()),
            den: QPoly::one(),
        }
    }

    pub fn one() -> Self {
        LaurentScalar::from_rational(Rational::one())
    }

    pub fn from_rational(c: Rational) -> Self {
        LaurentScalar::normalized(0, QPoly::constant(c), QPoly::one())
    }

    pub fn from_int(c: i64) -> Self {
        LaurentScalar::from_rational(Rational::from_integer(BigInt::from(c)))
    }

    /// `c * t^k`.
    pub fn monomial(c: Rational, k: i64) -> Self {
        let mut x = LaurentScalar::from_rational(c);
        if !x.is_zero() {
            x.shift = k;
        }
        x
    }

    pub fn t() -> Self {
        LaurentScalar::monomial(Rational::one(), 1)
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Order at `t = 0`; `∞` for zero.
    pub fn valuation(&self) -> TropValue {
        if self.is_zero() {
            TropValue::Infinity
        } else {
            TropValue::Finite(Rational::from_integer(self.shift.into()))
        }
    }

    /// Integer valuation, `None` for zero.
    pub fn order(&self) -> Option<i64> {
        (!self.is_zero()).then_some(self.shift)
    }

    /// Coefficient of the lowest power of `t` in the expansion.
    pub fn initial_coefficient(&self) -> Rational {
        self.num.0.first().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        Some(LaurentScalar::normalized(
            -self.shift,
            self.den.clone(),
            self.num.clone(),
        ))
    }

    pub fn pow(&self, e: i64) -> Option<Self> {
        let base = if e < 0 { self.inverse()? } else { self.clone() };
        let mut acc = LaurentScalar::one();
        for _ in 0..e.unsigned_abs() {
            acc = &acc * &base;
        }
        Some(acc)
    }
}

impl Zero for LaurentScalar {
    fn zero() -> Self {
        LaurentScalar::zero()
    }

    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl One for LaurentScalar {
    fn one() -> Self {
        LaurentScalar::one()
    }
}

/// Brings two numerators to a common power of `t`.
fn align(a: &LaurentScalar, b: &LaurentScalar) -> (i64, QPoly, QPoly) {
    let s = a.shift.min(b.shift);
    (
        s,
        a.num.shift_up((a.shift - s) as usize),
        b.num.shift_up((b.shift - s) as usize),
    )
}

impl Add for &LaurentScalar {
    type Output = LaurentScalar;

    fn add(self, o: &LaurentScalar) -> LaurentScalar {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        let (s, a, b) = align(self, o);
        let num = a.mul(&o.den).add(&b.mul(&self.den));
        LaurentScalar::normalized(s, num, self.den.mul(&o.den))
    }
}

impl Neg for &LaurentScalar {
    type Output = LaurentScalar;

    fn neg(self) -> LaurentScalar {
        LaurentScalar {
            shift: self.shift,
            num: self.num.scale(&-Rational::one()),
            den: self.den.clone(),
        }
    }
}

impl Sub for &LaurentScalar {
    type Output = LaurentScalar;

    fn sub(self, o: &LaurentScalar) -> LaurentScalar {
        self + &(-o)
    }
}

impl Mul for &LaurentScalar {
    type Output = LaurentScalar;

    fn mul(self, o: &LaurentScalar) -> LaurentScalar {
        if self.is_zero() || o.is_zero() {
            return LaurentScalar::zero();
        }
        LaurentScalar::normalized(self.shift + o.shift, self.num.mul(&o.num), self.den.mul(&o.den))
    }
}

/// Panics on division by zero; use [`LaurentScalar::inverse`] to check.
impl Div for &LaurentScalar {
    type Output = LaurentScalar;

    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, o: &LaurentScalar) -> LaurentScalar {
        self * &o.inverse().expect("division by zero in Q(t)")
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for LaurentScalar {
            type Output = LaurentScalar;
            fn $m(self, o: LaurentScalar) -> LaurentScalar {
                (&self).$m(&o)
            }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul, Div div);

impl Neg for LaurentScalar {
    type Output = LaurentScalar;

    fn neg(self) -> LaurentScalar {
        -&self
    }
}

impl std::iter::Sum for LaurentScalar {
    fn sum<I: Iterator<Item = LaurentScalar>>(iter: I) -> Self {
        iter.fold(LaurentScalar::zero(), |a, b| &a + &b)
    }
}

/// Writes `Σ c_k t^(k + shift)` as `"c*t^k"` terms.
fn write_terms(f: &mut fmt::Formatter<'_>, p: &QPoly, shift: i64) -> fmt::Result {
    let mut first = true;
    for (k, c) in p.0.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let e = k as i64 + shift;
        let neg = c.is_negative();
        let a = c.abs();
        if first {
            if neg {
                f.write_str("-")?;
            }
        } else {
            f.write_str(if neg { " - " } else { " + " })?;
        }
        first = false;
        let coeff = render_rational(&a);
        match (e, a.is_one()) {
            (0, _) => f.write_str(&coeff)?,
            (1, true) => f.write_str("t")?,
            (1, false) => write!(f, "{coeff}*t")?,
            (_, true) => write!(f, "t^{e}")?,
            (_, false) => write!(f, "{coeff}*t^{e}")?,
        }
    }
    if first {
        f.write_str("0")?;
    }
    Ok(())
}

impl fmt::Display for LaurentScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write_terms(f, &self.num, self.shift)
        } else {
            f.write_str("(")?;
            write_terms(f, &self.num, self.shift)?;
            f.write_str(")/(")?;
            write_terms(f, &self.den, 0)?;
            f.write_str(")")
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Token {
    Num(BigInt),
    T,
    Op(char),
}

fn tokenize(s: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let chars: Vec<char> = s.chars().collect();
    let mut k = 0;
    while k < chars.len() {
        let c = chars[k];
        if c.is_whitespace() {
            k += 1;
        } else if c.is_ascii_digit() {
            let start = k;
            while k < chars.len() && chars[k].is_ascii_digit() {
                k += 1;
            }
            let digits: String = chars[start..k].iter().collect();
            out.push(Token::Num(digits.parse().expect("digits")));
        } else if c == 't' {
            out.push(Token::T);
            k += 1;
        } else if "+-*/^()".contains(c) {
            out.push(Token::Op(c));
            k += 1;
        } else {
            return Err(Error::Parse(format!("unexpected character {c:?} in {s:?}")));
        }
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn eat(&mut self, op: char) -> bool {
        if self.peek() == Some(&Token::Op(op)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<LaurentScalar> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = &acc + &self.term()?;
            } else if self.eat('-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<LaurentScalar> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                acc = &acc * &self.unary()?;
            } else if self.eat('/') {
                let d = self.unary()?;
                let inv = d.inverse().ok_or_else(|| Error::Parse("division by zero".into()))?;
                acc = &acc * &inv;
            } else if matches!(self.peek(), Some(Token::T) | Some(Token::Op('('))) {
                acc = &acc * &self.unary()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<LaurentScalar> {
        if self.eat('-') {
            return Ok(-self.unary()?);
        }
        if self.eat('+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<LaurentScalar> {
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let neg = if self.eat('-') {
            true
        } else {
            self.eat('+');
            false
        };
        let e = match self.peek() {
            Some(Token::Num(n)) => {
                let e: i64 = n.try_into().map_err(|_| Error::Parse("exponent too large".into()))?;
                self.pos += 1;
                if neg {
                    -e
                } else {
                    e
                }
            }
            _ => return Err(Error::Parse("expected integer exponent".into())),
        };
        base.pow(e).ok_or_else(|| Error::Parse("negative power of zero".into()))
    }

    fn atom(&mut self) -> Result<LaurentScalar> {
        match self.peek().cloned() {
            Some(Token::Num(n)) => {
                self.pos += 1;
                Ok(LaurentScalar::from_rational(Rational::from_integer(n)))
            }
            Some(Token::T) => {
                self.pos += 1;
                Ok(LaurentScalar::t())
            }
            Some(Token::Op('(')) => {
                self.pos += 1;
                let x = self.expr()?;
                if !self.eat(')') {
                    return Err(Error::Parse("missing ')'".into()));
                }
                Ok(x)
            }
            other => Err(Error::Parse(format!("unexpected token {other:?}"))),
        }
    }
}

/// Accepts sums of terms `c*t^k` with rational `c` and integer `k`, plus
/// parentheses, products and quotients: `"-2-2*t^6"`, `"1/2*t^-3 + 1"`,
/// `"(1+t)/(1-t)"`.
impl FromStr for LaurentScalar {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut p = Parser {
            tokens: tokenize(s)?,
            pos: 0,
        };
        if p.tokens.is_empty() {
            return Err(Error::Parse("empty scalar".into()));
        }
        let x = p.expr()?;
        if p.pos != p.tokens.len() {
            return Err(Error::Parse(format!("trailing input in {s:?}")));
        }
        Ok(x)
    }
}

impl Serialize for LaurentScalar {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for LaurentScalar {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
