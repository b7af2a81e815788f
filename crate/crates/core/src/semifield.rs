//! Commutative semifields and the value-handle arithmetic used by every
//! subtraction-free algorithm in the crate.
//!
//! A [`Semifield`] supplies `+`, `*`, `/`, the unit and positive-integer
//! constants. Three realizations are provided:
//!
//! - [`Rational`]: arbitrary-precision, strictly positive, always in lowest terms;
//! - [`Float64`]: finite, strictly positive `f64`;
//! - [`Tropical`]: any finite real, with `min` as addition and `+` as product.
//!
//! Algorithms do not talk to a semifield directly; they are written against
//! [`Arith`], whose values are opaque handles. [`Eval`] makes the handles
//! semifield elements, while [`crate::circuit::CircuitBuilder`] makes them gate
//! references, so one piece of code both evaluates and emits circuits.

use std::fmt;
use std::marker::PhantomData;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SemifieldError {
    #[error("division by a non-invertible element ({0})")]
    NotInvertible(String),
    #[error("value {0} lies outside the {1} semifield")]
    OutOfDomain(String, &'static str),
    #[error("cannot parse {0:?} as a {1} value")]
    Parse(String, &'static str),
}

/// A commutative semifield: `+` and `*` are associative and commutative, `*`
/// distributes over `+`, and every element is invertible for `*`.
pub trait Semifield: Clone + fmt::Debug + fmt::Display + PartialEq + Send + Sync + 'static {
    const NAME: &'static str;

    fn one() -> Self;
    fn from_pos_int(n: &BigUint) -> Self;
    fn add(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn div(&self, rhs: &Self) -> Result<Self, SemifieldError>;

    /// Whether the element belongs to the semifield (finite, and positive where
    /// that applies). Evaluators check every intermediate result with this.
    fn is_valid(&self) -> bool;

    /// Parses the textual representation used by the CLI and the JSON formats.
    fn parse(text: &str) -> Result<Self, SemifieldError>;

    fn from_u64(n: u64) -> Self {
        Self::from_pos_int(&BigUint::from(n))
    }
}

/// Strictly positive rational number.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rational(BigRational);

impl Rational {
    pub fn new(value: BigRational) -> Result<Self, SemifieldError> {
        if value.is_positive() {
            Ok(Rational(value))
        } else {
            Err(SemifieldError::OutOfDomain(value.to_string(), Self::NAME))
        }
    }

    pub fn from_ratio(numer: i64, denom: i64) -> Result<Self, SemifieldError> {
        if denom == 0 {
            return Err(SemifieldError::NotInvertible("0".into()));
        }
        Self::new(BigRational::new(BigInt::from(numer), BigInt::from(denom)))
    }

    pub fn value(&self) -> &BigRational {
        &self.0
    }

    pub fn into_inner(self) -> BigRational {
        self.0
    }

    pub fn to_f64(&self) -> f64 {
        ratio_to_f64(&self.0)
    }
}

/// Converts an exact rational to the nearest-ish `f64`, tolerating numerators
/// and denominators too large for `f64` on their own.
pub fn ratio_to_f64(r: &BigRational) -> f64 {
    if let Some(v) = r.to_f64() {
        if v.is_finite() && (v != 0.0 || r.is_zero()) {
            return v;
        }
    }
    let shift = |n: &BigInt| n.bits() as i64 - 60;
    let (n, d) = (r.numer(), r.denom());
    let (sn, sd) = (shift(n).max(0), shift(d).max(0));
    let nf = (n >> sn as usize).to_f64().unwrap_or(f64::NAN);
    let df = (d >> sd as usize).to_f64().unwrap_or(f64::NAN);
    nf / df * 2f64.powi((sn - sd) as i32)
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Rational({})", self.0)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Parses `"p"`, `"p/q"` or a plain decimal `"1.25"` into a signed exact
/// rational.
pub fn parse_big_rational(text: &str) -> Option<BigRational> {
    let text = text.trim();
    if let Some((int, frac)) = text.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) || text.contains('/') {
            return None;
        }
        let negative = int.starts_with('-');
        let digits = format!("{}{frac}", int.trim_start_matches(['-', '+']));
        let n = BigInt::from_str(&digits).ok()?;
        let n = if negative { -n } else { n };
        return Some(BigRational::new(n, BigInt::from(10u32).pow(frac.len() as u32)));
    }
    let (n, d) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text, "1"),
    };
    let n = BigInt::from_str(n).ok()?;
    let d = BigInt::from_str(d).ok()?;
    if d.is_zero() {
        return None;
    }
    Some(BigRational::new(n, d))
}

impl Semifield for Rational {
    const NAME: &'static str = "rational";

    fn one() -> Self {
        Rational(BigRational::one())
    }

    fn from_pos_int(n: &BigUint) -> Self {
        Rational(BigRational::from_integer(BigInt::from(n.clone())))
    }

    fn add(&self, rhs: &Self) -> Self {
        Rational(&self.0 + &rhs.0)
    }

    fn mul(&self, rhs: &Self) -> Self {
        Rational(&self.0 * &rhs.0)
    }

    fn div(&self, rhs: &Self) -> Result<Self, SemifieldError> {
        if rhs.0.is_zero() {
            return Err(SemifieldError::NotInvertible(rhs.to_string()));
        }
        Ok(Rational(&self.0 / &rhs.0))
    }

    fn is_valid(&self) -> bool {
        self.0.is_positive()
    }

    fn parse(text: &str) -> Result<Self, SemifieldError> {
        let r = parse_big_rational(text).ok_or_else(|| SemifieldError::Parse(text.to_string(), Self::NAME))?;
        Rational::new(r)
    }
}

/// Strictly positive, finite double.
#[derive(Clone, Copy, PartialEq, PartialOrd)]
pub struct Float64(f64);

impl Float64 {
    pub fn new(value: f64) -> Result<Self, SemifieldError> {
        let v = Float64(value);
        if v.is_valid() {
            Ok(v)
        } else {
            Err(SemifieldError::OutOfDomain(value.to_string(), Self::NAME))
        }
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

impl fmt::Debug for Float64 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Float64({:e})", self.0)
    }
}

impl fmt::Display for Float64 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Semifield for Float64 {
    const NAME: &'static str = "float64";

    fn one() -> Self {
        Float64(1.0)
    }

    fn from_pos_int(n: &BigUint) -> Self {
        Float64(n.to_f64().unwrap_or(f64::INFINITY))
    }

    fn add(&self, rhs: &Self) -> Self {
        Float64(self.0 + rhs.0)
    }

    fn mul(&self, rhs: &Self) -> Self {
        Float64(self.0 * rhs.0)
    }

    fn div(&self, rhs: &Self) -> Result<Self, SemifieldError> {
        if rhs.0 == 0.0 || !rhs.0.is_finite() {
            return Err(SemifieldError::NotInvertible(rhs.to_string()));
        }
        Ok(Float64(self.0 / rhs.0))
    }

    fn is_valid(&self) -> bool {
        self.0.is_finite() && self.0 > 0.0
    }

    fn parse(text: &str) -> Result<Self, SemifieldError> {
        let v = match parse_big_rational(text) {
            Some(r) => ratio_to_f64(&r),
            None => text.trim().parse::<f64>().map_err(|_| SemifieldError::Parse(text.to_string(), Self::NAME))?,
        };
        Float64::new(v)
    }
}

/// Element of the tropical semifield `(R, min, +, -)`.
///
/// Positive integers map to `0`: `c = 1 + ... + 1` and `min(0, ..., 0) = 0`.
#[derive(Clone, Copy, PartialEq, PartialOrd)]
pub struct Tropical(f64);

impl Tropical {
    pub fn new(value: f64) -> Result<Self, SemifieldError> {
        if value.is_finite() {
            Ok(Tropical(value))
        } else {
            Err(SemifieldError::OutOfDomain(value.to_string(), Self::NAME))
        }
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

impl fmt::Debug for Tropical {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Tropical({})", self.0)
    }
}

impl fmt::Display for Tropical {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Semifield for Tropical {
    const NAME: &'static str = "tropical";

    fn one() -> Self {
        Tropical(0.0)
    }

    fn from_pos_int(_n: &BigUint) -> Self {
        Tropical(0.0)
    }

    fn add(&self, rhs: &Self) -> Self {
        Tropical(self.0.min(rhs.0))
    }

    fn mul(&self, rhs: &Self) -> Self {
        Tropical(self.0 + rhs.0)
    }

    fn div(&self, rhs: &Self) -> Result<Self, SemifieldError> {
        Ok(Tropical(self.0 - rhs.0))
    }

    fn is_valid(&self) -> bool {
        self.0.is_finite()
    }

    fn parse(text: &str) -> Result<Self, SemifieldError> {
        let v = match parse_big_rational(text) {
            Some(r) => ratio_to_f64(&r),
            None => text.trim().parse::<f64>().map_err(|_| SemifieldError::Parse(text.to_string(), Self::NAME))?,
        };
        Tropical::new(v)
    }
}

/// Arithmetic over opaque value handles.
///
/// There is deliberately no subtraction and no zero: every algorithm written
/// against this trait is subtraction-free by construction.
pub trait Arith {
    type Value: Clone;

    fn one(&mut self) -> Self::Value;
    fn int(&mut self, n: u64) -> Self::Value;
    fn add(&mut self, a: &Self::Value, b: &Self::Value) -> Self::Value;
    fn mul(&mut self, a: &Self::Value, b: &Self::Value) -> Self::Value;
    fn div(&mut self, a: &Self::Value, b: &Self::Value) -> Result<Self::Value, SemifieldError>;

    /// Sum of a nonempty list, left to right.
    fn sum(&mut self, items: &[Self::Value]) -> Option<Self::Value> {
        let (first, rest) = items.split_first()?;
        let mut acc = first.clone();
        for v in rest {
            acc = self.add(&acc, v);
        }
        Some(acc)
    }

    /// Product of a nonempty list, left to right.
    fn product(&mut self, items: &[Self::Value]) -> Option<Self::Value> {
        let (first, rest) = items.split_first()?;
        let mut acc = first.clone();
        for v in rest {
            acc = self.mul(&acc, v);
        }
        Some(acc)
    }
}

/// Direct evaluation in the semifield `S`.
pub struct Eval<S>(PhantomData<S>);

impl<S> Eval<S> {
    pub fn new() -> Self {
        Eval(PhantomData)
    }
}

impl<S> Default for Eval<S> {
    fn default() -> Self {
        Self::new()
    }
}

impl<S: Semifield> Arith for Eval<S> {
    type Value = S;

    fn one(&mut self) -> S {
        S::one()
    }

    fn int(&mut self, n: u64) -> S {
        S::from_u64(n)
    }

    fn add(&mut self, a: &S, b: &S) -> S {
        a.add(b)
    }

    fn mul(&mut self, a: &S, b: &S) -> S {
        a.mul(b)
    }

    fn div(&mut self, a: &S, b: &S) -> Result<S, SemifieldError> {
        a.div(b)
    }
}

/// Result of a computation whose answer may be the zero polynomial, which is
/// not an element of any positive semifield.
#[derive(Debug, Clone, PartialEq)]
pub enum Outcome<V> {
    Value(V),
    ZeroPolynomial,
}

impl<V> Outcome<V> {
    pub fn value(self) -> Option<V> {
        match self {
            Outcome::Value(v) => Some(v),
            Outcome::ZeroPolynomial => None,
        }
    }

    pub fn as_value(&self) -> Option<&V> {
        match self {
            Outcome::Value(v) => Some(v),
            Outcome::ZeroPolynomial => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Outcome::ZeroPolynomial)
    }

    pub fn map<W>(self, f: impl FnOnce(V) -> W) -> Outcome<W> {
        match self {
            Outcome::Value(v) => Outcome::Value(f(v)),
            Outcome::ZeroPolynomial => Outcome::ZeroPolynomial,
        }
    }
}

impl<V: fmt::Display> fmt::Display for Outcome<V> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Outcome::Value(v) => v.fmt(f),
            Outcome::ZeroPolynomial => f.write_str("zero polynomial"),
        }
    }
}
