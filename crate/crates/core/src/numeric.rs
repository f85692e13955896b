//! Exact arithmetic in `Q` and real quadratic fields `Q(√d)`.
//!
//! A [`FieldElem`] is `a + b√d` with `a`, `b` big rationals. Every element with
//! `b = 0` is a plain rational and mixes freely with any radicand; two
//! irrational operands must share the same `d`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NumericError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("mismatched radicands: sqrt{0} and sqrt{1}")]
    MismatchedRadicand(u64, u64),
    #[error("radicand {0} is not squarefree")]
    NotSquarefree(u64),
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

/// `a + b·√d`, normalized so that `d = 0` whenever `b = 0`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FieldElem {
    a: BigRational,
    b: BigRational,
    d: u64,
}

fn is_squarefree(d: u64) -> bool {
    let mut p = 2u64;
    while p.saturating_mul(p) <= d {
        if d.is_multiple_of(p * p) {
            return false;
        }
        p += 1;
    }
    true
}

fn merge_radicand(x: &FieldElem, y: &FieldElem) -> Result<u64, NumericError> {
    match (x.d, y.d) {
        (0, d) | (d, 0) => Ok(d),
        (d, e) if d == e => Ok(d),
        (d, e) => Err(NumericError::MismatchedRadicand(d, e)),
    }
}

impl FieldElem {
    fn normalized(a: BigRational, b: BigRational, d: u64) -> Self {
        if b.is_zero() || d == 0 {
            FieldElem { a, b: BigRational::zero(), d: 0 }
        } else {
            FieldElem { a, b, d }
        }
    }

    /// Builds `a + b√d`. `d` must be squarefree; `d ∈ {0, 1}` folds into `a`.
    pub fn new(a: BigRational, b: BigRational, d: u64) -> Result<Self, NumericError> {
        match d {
            0 => Ok(Self::normalized(a, BigRational::zero(), 0)),
            1 => Ok(Self::normalized(a + b, BigRational::zero(), 0)),
            _ if !is_squarefree(d) => Err(NumericError::NotSquarefree(d)),
            _ => Ok(Self::normalized(a, b, d)),
        }
    }

    pub fn zero() -> Self {
        Self::normalized(BigRational::zero(), BigRational::zero(), 0)
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn from_int(n: i64) -> Self {
        Self::normalized(BigRational::from_integer(BigInt::from(n)), BigRational::zero(), 0)
    }

    /// The rational `num/den`. Panics if `den == 0`.
    pub fn ratio(num: i64, den: i64) -> Self {
        Self::normalized(
            BigRational::new(BigInt::from(num), BigInt::from(den)),
            BigRational::zero(),
            0,
        )
    }

    pub fn from_rational(a: BigRational) -> Self {
        Self::normalized(a, BigRational::zero(), 0)
    }

    /// `√d`.
    pub fn sqrt(d: u64) -> Result<Self, NumericError> {
        Self::new(BigRational::zero(), BigRational::one(), d)
    }

    pub fn rational_part(&self) -> &BigRational {
        &self.a
    }

    pub fn irrational_part(&self) -> &BigRational {
        &self.b
    }

    /// The radicand, or 0 for rationals.
    pub fn radicand(&self) -> u64 {
        self.d
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn checked_add(&self, y: &Self) -> Result<Self, NumericError> {
        let d = merge_radicand(self, y)?;
        let b = if y.b.is_zero() { self.b.clone() } else { &self.b + &y.b };
        Ok(Self::normalized(&self.a + &y.a, b, d))
    }

    pub fn checked_sub(&self, y: &Self) -> Result<Self, NumericError> {
        let d = merge_radicand(self, y)?;
        let b = if y.b.is_zero() { self.b.clone() } else { &self.b - &y.b };
        Ok(Self::normalized(&self.a - &y.a, b, d))
    }

    pub fn checked_mul(&self, y: &Self) -> Result<Self, NumericError> {
        let d = merge_radicand(self, y)?;
        let dd = BigRational::from_integer(BigInt::from(d));
        let a = &self.a * &y.a + &self.b * &y.b * dd;
        let b = &self.a * &y.b + &self.b * &y.a;
        Ok(Self::normalized(a, b, d))
    }

    /// Multiplicative inverse via the conjugate: `1/(a+b√d) = (a−b√d)/(a²−b²d)`.
    pub fn inv(&self) -> Result<Self, NumericError> {
        if self.is_zero() {
            return Err(NumericError::DivisionByZero);
        }
        let dd = BigRational::from_integer(BigInt::from(self.d));
        let norm = &self.a * &self.a - &self.b * &self.b * dd;
        // a² = b²d has no nonzero solution for squarefree d ≥ 2.
        debug_assert!(!norm.is_zero());
        Ok(Self::normalized(&self.a / &norm, -&self.b / &norm, self.d))
    }

    pub fn checked_div(&self, y: &Self) -> Result<Self, NumericError> {
        self.checked_mul(&y.inv()?)
    }

    /// Sign of `a + b√d` without extracting the root.
    pub fn signum(&self) -> Ordering {
        let sa = self.a.cmp(&BigRational::zero());
        let sb = self.b.cmp(&BigRational::zero());
        match (sa, sb) {
            (s, Ordering::Equal) | (Ordering::Equal, s) => s,
            (s, t) if s == t => s,
            _ => {
                let dd = BigRational::from_integer(BigInt::from(self.d));
                let a2 = &self.a * &self.a;
                let b2d = &self.b * &self.b * dd;
                // a² vs b²d decides which term dominates
                match a2.cmp(&b2d) {
                    Ordering::Greater => sa,
                    Ordering::Less => sb,
                    Ordering::Equal => Ordering::Equal,
                }
            }
        }
    }

    pub fn checked_cmp(&self, y: &Self) -> Result<Ordering, NumericError> {
        if self.b == y.b && (self.b.is_zero() || self.d == y.d) {
            return Ok(self.a.cmp(&y.a));
        }
        Ok(self.checked_sub(y)?.signum())
    }

    pub fn is_positive(&self) -> bool {
        self.signum() == Ordering::Greater
    }

    pub fn abs(&self) -> Self {
        if self.signum() == Ordering::Less {
            -self
        } else {
            self.clone()
        }
    }

    /// `(self + y)/2`.
    pub fn midpoint(&self, y: &Self) -> Self {
        let half = BigRational::new(BigInt::one(), BigInt::from(2));
        let s = self + y;
        Self::normalized(&s.a * &half, &s.b * &half, s.d)
    }

    /// `self + t·(y − self)` for a rational `t`.
    pub fn lerp(&self, y: &Self, t: &BigRational) -> Self {
        let delta = y - self;
        let scaled = Self::normalized(&delta.a * t, &delta.b * t, delta.d);
        self + &scaled
    }

    pub fn to_f64(&self) -> f64 {
        let a = self.a.to_f64().unwrap_or(f64::NAN);
        let b = self.b.to_f64().unwrap_or(f64::NAN);
        a + b * (self.d as f64).sqrt()
    }

    /// Parses an expression whose `sqrtD` tokens must all use radicand `d`.
    pub fn parse_with(src: &str, d: u64) -> Result<Self, NumericError> {
        let v = src.parse::<FieldElem>()?;
        if v.d != 0 && v.d != d {
            return Err(NumericError::MismatchedRadicand(v.d, d));
        }
        Ok(v)
    }
}

impl Default for FieldElem {
    fn default() -> Self {
        Self::zero()
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $checked:ident) => {
        impl $tr<&FieldElem> for &FieldElem {
            type Output = FieldElem;
            fn $m(self, rhs: &FieldElem) -> FieldElem {
                self.$checked(rhs).expect("field elements over different radicands")
            }
        }
        impl $tr<FieldElem> for FieldElem {
            type Output = FieldElem;
            fn $m(self, rhs: FieldElem) -> FieldElem {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&FieldElem> for FieldElem {
            type Output = FieldElem;
            fn $m(self, rhs: &FieldElem) -> FieldElem {
                (&self).$m(rhs)
            }
        }
        impl $tr<FieldElem> for &FieldElem {
            type Output = FieldElem;
            fn $m(self, rhs: FieldElem) -> FieldElem {
                self.$m(&rhs)
            }
        }
    };
}

binop!(Add, add, checked_add);
binop!(Sub, sub, checked_sub);
binop!(Mul, mul, checked_mul);

impl Neg for &FieldElem {
    type Output = FieldElem;
    fn neg(self) -> FieldElem {
        FieldElem::normalized(-&self.a, -&self.b, self.d)
    }
}

impl Neg for FieldElem {
    type Output = FieldElem;
    fn neg(self) -> FieldElem {
        -&self
    }
}

/// Panics when both operands are irrational over different radicands.
impl Ord for FieldElem {
    fn cmp(&self, other: &Self) -> Ordering {
        self.checked_cmp(other).expect("field elements over different radicands")
    }
}

impl PartialOrd for FieldElem {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

fn write_rational(f: &mut fmt::Formatter<'_>, q: &BigRational) -> fmt::Result {
    if q.denom().is_one() {
        write!(f, "{}", q.numer())
    } else {
        write!(f, "{}/{}", q.numer(), q.denom())
    }
}

/// Canonical form `p/q + r/s*sqrtD`, zero terms omitted, unit coefficient of the
/// root omitted.
impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write_rational(f, &self.a);
        }
        let neg = self.b.is_negative();
        let mag = self.b.abs();
        if !self.a.is_zero() {
            write_rational(f, &self.a)?;
            f.write_str(if neg { " - " } else { " + " })?;
        } else if neg {
            f.write_str("-")?;
        }
        if !mag.is_one() {
            write_rational(f, &mag)?;
            f.write_str("*")?;
        }
        write!(f, "sqrt{}", self.d)
    }
}

impl fmt::Debug for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FieldElem({self})")
    }
}

/// Recursive-descent parser for `expr := term (('+'|'-') term)*`,
/// `term := unary (('*'|'/') unary)*`, `unary := '-' unary | atom`,
/// `atom := integer | 'sqrt' integer | '(' expr ')'`.
struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err(&self, msg: impl Into<String>) -> NumericError {
        NumericError::Parse { pos: self.pos, msg: msg.into() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn integer(&mut self) -> Result<BigInt, NumericError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected integer"));
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        digits.parse::<BigInt>().map_err(|e| self.err(e.to_string()))
    }

    fn expr(&mut self) -> Result<FieldElem, NumericError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = acc.checked_add(&self.term()?)?;
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = acc.checked_sub(&self.term()?)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<FieldElem, NumericError> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = acc.checked_mul(&self.unary()?)?;
                }
                Some(b'/') => {
                    self.pos += 1;
                    acc = acc.checked_div(&self.unary()?)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<FieldElem, NumericError> {
        if self.peek() == Some(b'-') {
            self.pos += 1;
            return Ok(-self.unary()?);
        }
        self.atom()
    }

    fn atom(&mut self) -> Result<FieldElem, NumericError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(v)
            }
            Some(c) if c.is_ascii_digit() => {
                Ok(FieldElem::from_rational(BigRational::from_integer(self.integer()?)))
            }
            Some(b's') if self.src[self.pos..].starts_with(b"sqrt") => {
                self.pos += 4;
                if !self.src.get(self.pos).is_some_and(|c| c.is_ascii_digit()) {
                    return Err(self.err("expected radicand after 'sqrt'"));
                }
                let d = self.integer()?;
                let d = d.to_u64().ok_or_else(|| self.err("radicand out of range"))?;
                FieldElem::sqrt(d)
            }
            Some(_) => Err(self.err("unexpected character")),
            None => Err(self.err("unexpected end of input")),
        }
    }
}

impl FromStr for FieldElem {
    type Err = NumericError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut p = Parser { src: s.as_bytes(), pos: 0 };
        let v = p.expr()?;
        if p.peek().is_some() {
            return Err(p.err("trailing input"));
        }
        Ok(v)
    }
}
