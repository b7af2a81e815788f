//! Quadratics `x^2 - 2c x + 1` that are positive on the positive axis yet need
//! large subtraction-free representations, and the finite certificates that
//! witness this.
//!
//! The angle α with `c = cos α` never appears: every quantity is a rational
//! function of `c`, so all arithmetic here is exact.

use std::fmt;
use std::ops::{Add, Mul};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::semifield::parse_big_rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GapError {
    #[error("cosine parameter {0} is not strictly between -1 and 1")]
    CosOutOfRange(BigRational),
    #[error("{0:?} is not a rational number")]
    BadRational(String),
    #[error("g_n needs n >= 2, got {0}")]
    BadN(usize),
    #[error("g_{n} takes {n} arguments, got {got}")]
    Arity { n: usize, got: usize },
    #[error("exponent {0} is too large")]
    TooLarge(usize),
}

/// Dense univariate polynomial over the rationals, ascending degree, with no
/// trailing zero coefficient.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct UniPoly {
    coeffs: Vec<BigRational>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigRational::from_integer(c.into())).collect())
    }

    pub fn zero() -> Self {
        UniPoly::default()
    }

    pub fn one() -> Self {
        Self::from_ints(&[1])
    }

    /// `1 + x`
    pub fn one_plus_x() -> Self {
        Self::from_ints(&[1, 1])
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> BigRational {
        self.coeffs.get(i).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.coeffs.iter().rev().fold(BigRational::zero(), |acc, c| acc * x + c)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.coeffs.iter().all(|c| !c.is_negative())
    }

    pub fn pow(&self, e: usize) -> Self {
        (0..e).fold(Self::one(), |acc, _| &acc * self)
    }

    /// Coefficients as `"p/q"` strings (integers without a denominator).
    pub fn coeff_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(ToString::to_string).collect()
    }
}

impl Add for &UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Mul for &UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: &UniPoly) -> UniPoly {
        if self.coeffs.is_empty() || rhs.coeffs.is_empty() {
            return UniPoly::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UniPoly::new(out)
    }
}

impl fmt::Display for UniPoly {
    /// Descending degree, e.g. `x^2 - 3/2x + 1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            match (first, c.is_negative()) {
                (true, true) => write!(f, "-")?,
                (true, false) => {}
                (false, true) => write!(f, " - ")?,
                (false, false) => write!(f, " + ")?,
            }
            first = false;
            let unit = mag.is_one();
            match i {
                0 => write!(f, "{mag}")?,
                1 if unit => write!(f, "x")?,
                1 => write!(f, "{mag}x")?,
                _ if unit => write!(f, "x^{i}")?,
                _ => write!(f, "{mag}x^{i}")?,
            }
        }
        Ok(())
    }
}

/// Rational `c` with `-1 < c < 1`, standing for `cos α`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CosParam(BigRational);

impl CosParam {
    pub fn new(c: BigRational) -> Result<Self, GapError> {
        let one = BigRational::one();
        if c >= one || c <= -one {
            return Err(GapError::CosOutOfRange(c));
        }
        Ok(CosParam(c))
    }

    pub fn from_ratio(n: i64, d: i64) -> Result<Self, GapError> {
        Self::new(BigRational::new(n.into(), d.into()))
    }

    /// `"3/4"`, `"-1/2"`, `"0.9"`.
    pub fn parse(text: &str) -> Result<Self, GapError> {
        let c = parse_big_rational(text).ok_or_else(|| GapError::BadRational(text.to_string()))?;
        Self::new(c)
    }

    /// `1 - 2^(-2^n)`
    pub fn near_one(n: usize) -> Result<Self, GapError> {
        if n > 24 {
            return Err(GapError::TooLarge(n));
        }
        Self::new(BigRational::one() - pow2_neg(1usize << n))
    }

    pub fn value(&self) -> &BigRational {
        &self.0
    }
}

/// `2^(-e)`
fn pow2_neg(e: usize) -> BigRational {
    BigRational::new(BigInt::one(), BigInt::one() << e)
}

/// `x^2 - 2c x + 1`
pub fn f_alpha(c: &CosParam) -> UniPoly {
    let two_c = c.0.clone() * BigRational::from_integer(2.into());
    UniPoly::new(vec![BigRational::one(), -two_c, BigRational::one()])
}

/// `f_n(x) = x^2 - 2(1 - 2^(-2^n)) x + 1`
pub fn f_n(n: usize) -> Result<UniPoly, GapError> {
    Ok(f_alpha(&CosParam::near_one(n)?))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyaNumerator {
    pub r: usize,
    /// `F(x) (1+x)^r`
    pub poly: UniPoly,
    pub nonnegative: bool,
}

/// Expands `F(x) (1+x)^r`, so that `F = numerator / (1+x)^r`.
pub fn polya_numerator(c: &CosParam, r: usize) -> PolyaNumerator {
    let poly = &f_alpha(c) * &UniPoly::one_plus_x().pow(r);
    let nonnegative = poly.is_nonnegative();
    PolyaNumerator { r, poly, nonnegative }
}

/// `floor(2 / (1 - c)) + 1`, the smallest integer exceeding `2 / (1 - c)`.
pub fn polya_bound(c: &CosParam) -> BigInt {
    let q = BigRational::from_integer(2.into()) / (BigRational::one() - &c.0);
    q.floor().to_integer() + 1
}

/// Smallest `r` for which `F(x) (1+x)^r` has no negative coefficient.
/// Terminates by `polya_bound`.
pub fn minimal_polya_r(c: &CosParam) -> usize {
    let step = UniPoly::one_plus_x();
    let mut poly = f_alpha(c);
    let mut r = 0;
    while !poly.is_nonnegative() {
        poly = &poly * &step;
        r += 1;
    }
    r
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SineRatioCertificate {
    /// Requested denominator degree bound.
    pub n: usize,
    /// `S_1 .. S_{n+2}`, `S_k = sin(kα) / sin(α)`
    pub ratios: Vec<BigRational>,
    pub valid: bool,
}

/// `S_1 = 1`, `S_2 = 2c`, `S_{k+1} = 2c S_k - S_{k-1}`, taking `len` terms.
pub fn sine_ratios(c: &CosParam, len: usize) -> Vec<BigRational> {
    let two_c = c.0.clone() * BigRational::from_integer(2.into());
    let mut out: Vec<BigRational> = Vec::with_capacity(len);
    for k in 0..len {
        let next = match k {
            0 => BigRational::one(),
            1 => two_c.clone(),
            _ => &two_c * &out[k - 1] - &out[k - 2],
        };
        out.push(next);
    }
    out
}

/// Valid iff `S_1 .. S_{n+2}` are all positive, in which case no ratio `P/Q`
/// of nonnegative-coefficient polynomials with `deg Q <= n` equals `F`.
pub fn sine_ratio_certificate(c: &CosParam, n: usize) -> SineRatioCertificate {
    let ratios = sine_ratios(c, n + 2);
    let valid = ratios.iter().all(Signed::is_positive);
    SineRatioCertificate { n, ratios, valid }
}

/// Largest `n <= limit` with a valid certificate; `None` if even `n = 0`
/// fails (`c <= 0`).
pub fn max_certified_degree(c: &CosParam, limit: usize) -> Option<usize> {
    let two_c = c.0.clone() * BigRational::from_integer(2.into());
    let (mut prev, mut cur) = (BigRational::zero(), BigRational::one());
    let mut positive = 0;
    while positive < limit + 2 && cur.is_positive() {
        positive += 1;
        let next = &two_c * &cur - &prev;
        prev = std::mem::replace(&mut cur, next);
    }
    positive.checked_sub(2)
}

fn check_g_args(n: usize, got: usize) -> Result<(), GapError> {
    if n < 2 {
        return Err(GapError::BadN(n));
    }
    if got != n {
        return Err(GapError::Arity { n, got });
    }
    Ok(())
}

fn sq(a: BigRational) -> BigRational {
    &a * &a
}

/// `g_n = (1-x1)^2 + (x1-2x2)^2 + sum_{i=2}^{n-1} (x_i^2 - x_{i+1})^2 + 4 x_n^2 x1`
pub fn g_n_eval(n: usize, x: &[BigRational]) -> Result<BigRational, GapError> {
    h_n_eval(n, &BigRational::one(), x)
}

/// Homogeneous quartic whose value at `t = 1` is `g_n`.
pub fn h_n_eval(n: usize, t: &BigRational, x: &[BigRational]) -> Result<BigRational, GapError> {
    check_g_args(n, x.len())?;
    let two = BigRational::from_integer(2.into());
    let t2 = t * t;
    let mut total = &t2 * sq(t - &x[0]) + &t2 * sq(&x[0] - &two * &x[1]);
    for i in 1..n - 1 {
        total += sq(&x[i] * &x[i] - t * &x[i + 1]);
    }
    let four = BigRational::from_integer(4.into());
    total += four * t * &x[n - 1] * &x[n - 1] * &x[0];
    Ok(total)
}

/// `(2^-1, 2^-2, 2^-4, ..., 2^-(2^(n-2)))`, the values substituted for
/// `x_2 .. x_n`.
pub fn g_n_specialization(n: usize) -> Result<Vec<BigRational>, GapError> {
    if n < 2 {
        return Err(GapError::BadN(n));
    }
    if n > 26 {
        return Err(GapError::TooLarge(n));
    }
    Ok((0..n - 1).map(|j| pow2_neg(1usize << j)).collect())
}

/// Checks `g_n(x1, 2^-1, 2^-2, 2^-4, ...) / 2 = f_{n-1}(x1)` at `samples`
/// distinct points; both sides are quadratics in `x1`, so three suffice.
pub fn g_n_specialization_check_at(n: usize, samples: usize) -> Result<bool, GapError> {
    let tail = g_n_specialization(n)?;
    let f = f_n(n - 1)?;
    let two = BigRational::from_integer(2.into());
    for s in 0..samples {
        let x1 = BigRational::new(BigInt::from(2 * s + 1), BigInt::from(s + 2));
        let mut args = vec![x1.clone()];
        args.extend(tail.iter().cloned());
        if g_n_eval(n, &args)? / &two != f.eval(&x1) {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn g_n_specialization_check(n: usize) -> Result<bool, GapError> {
    g_n_specialization_check_at(n, 3)
}
