//! Coefficient fields: exact rationals and tolerance-checked binary floats.
//!
//! Every algorithm in the crate is generic over [`Scalar`]. The mode of a
//! computation is fixed by the scalar type, so exact and float values can
//! never meet in one expression. Zero decisions go through
//! [`Ring::is_negligible`], which is an exact test for [`Rational`] and a
//! scale-relative threshold for `f64`.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::Value;

use crate::error::Error;

/// Arbitrary precision rational number, always stored in lowest terms.
pub type Rational = BigRational;

/// Largest denominator used when reconstructing rationals from float roots.
pub const SNAP_MAX_DEN: i64 = 1_000_000;

/// Absolute acceptance window of [`rational_snap`].
pub const SNAP_EPS: f64 = 1e-9;

/// Zero test configuration for float mode.
///
/// A float `x` counts as zero when `|x| <= max(abs_eps, rel_eps * scale)`,
/// `scale` being the largest coefficient magnitude of the enclosing
/// polynomial. Exact mode ignores it.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tolerance {
    pub abs_eps: f64,
    pub rel_eps: f64,
}

impl Tolerance {
    pub fn new(abs_eps: f64, rel_eps: f64) -> Result<Self, Error> {
        if !abs_eps.is_finite() || !rel_eps.is_finite() || abs_eps <= 0.0 || rel_eps < 0.0 {
            return Err(Error::InvalidTolerance { abs_eps, rel_eps });
        }
        Ok(Tolerance { abs_eps, rel_eps })
    }

    pub fn threshold(&self, scale: f64) -> f64 {
        self.abs_eps.max(self.rel_eps * scale)
    }

    /// Looser tolerance for remainders of divisions that are exact in
    /// theory. Rounding in clustered roots leaves residues well above the
    /// zero tolerance, so the square roots of both bounds are used.
    pub fn certificate(&self) -> Tolerance {
        Tolerance { abs_eps: self.abs_eps.sqrt(), rel_eps: self.rel_eps.sqrt() }
    }
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance { abs_eps: 1e-9, rel_eps: 1e-12 }
    }
}

/// Scalar-mode tag, mostly for diagnostics and the command line.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Exact,
    Float,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Mode::Exact => f.write_str("exact"),
            Mode::Float => f.write_str("float"),
        }
    }
}

/// A (possibly non-commutative) ring over a [`Scalar`] field with a
/// conjugation. Implemented by the scalars themselves, quaternions and dual
/// quaternions, so one polynomial type serves all three coefficient kinds.
pub trait Ring:
    Clone
    + fmt::Debug
    + PartialEq
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    type Scalar: Scalar;

    fn zero() -> Self;
    fn one() -> Self;
    /// Exact zero test (no tolerance).
    fn is_zero(&self) -> bool;
    fn from_scalar(s: Self::Scalar) -> Self;
    fn scale(&self, s: &Self::Scalar) -> Self;
    fn conj(&self) -> Self;
    /// Two-sided inverse, `None` when the element is not invertible.
    fn inverse(&self) -> Option<Self>;
    /// Largest absolute value of any real component.
    fn magnitude(&self) -> f64;
    /// Every real component is negligible relative to `scale`.
    fn is_negligible(&self, scale: f64, tol: &Tolerance) -> bool;
}

/// A real coefficient field.
pub trait Scalar: Ring<Scalar = Self> + Div<Output = Self> + PartialOrd + fmt::Display {
    const MODE: Mode;

    fn from_i64(n: i64) -> Self;
    fn from_ratio(num: i64, den: i64) -> Self;
    fn from_rational(r: &Rational) -> Self;
    fn to_f64(&self) -> f64;
    /// Converts a float approximation into this field. Exact mode snaps to a
    /// nearby rational with bounded denominator or gives up.
    fn from_f64_approx(x: f64) -> Option<Self>;
    /// Square root when it exists in the field.
    fn sqrt(&self) -> Option<Self>;
    /// Sign with the float zero test applied against `scale`.
    fn sign(&self, scale: f64, tol: &Tolerance) -> i8;
    fn to_json(&self) -> Value;
    fn from_json(v: &Value) -> Result<Self, Error>;
}

// ---------------------------------------------------------------- rational

impl Ring for Rational {
    type Scalar = Rational;

    fn zero() -> Self {
        <Rational as Zero>::zero()
    }
    fn one() -> Self {
        <Rational as One>::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn from_scalar(s: Self) -> Self {
        s
    }
    fn scale(&self, s: &Self) -> Self {
        self * s
    }
    fn conj(&self) -> Self {
        self.clone()
    }
    fn inverse(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
    fn magnitude(&self) -> f64 {
        ToPrimitive::to_f64(&self.abs()).unwrap_or(f64::INFINITY)
    }
    fn is_negligible(&self, _scale: f64, _tol: &Tolerance) -> bool {
        Zero::is_zero(self)
    }
}

impl Scalar for Rational {
    const MODE: Mode = Mode::Exact;

    fn from_i64(n: i64) -> Self {
        Rational::from_integer(BigInt::from(n))
    }
    fn from_ratio(num: i64, den: i64) -> Self {
        Rational::new(BigInt::from(num), BigInt::from(den))
    }
    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }
    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
    fn from_f64_approx(x: f64) -> Option<Self> {
        rational_snap(x, SNAP_MAX_DEN, SNAP_EPS * x.abs().max(1.0))
    }
    fn sqrt(&self) -> Option<Self> {
        if self.is_negative() {
            return None;
        }
        let n = self.numer().sqrt();
        let d = self.denom().sqrt();
        if &(&n * &n) == self.numer() && &(&d * &d) == self.denom() {
            Some(Rational::new(n, d))
        } else {
            None
        }
    }
    fn sign(&self, _scale: f64, _tol: &Tolerance) -> i8 {
        if Zero::is_zero(self) {
            0
        } else if self.is_positive() {
            1
        } else {
            -1
        }
    }
    fn to_json(&self) -> Value {
        Value::String(self.to_string())
    }
    fn from_json(v: &Value) -> Result<Self, Error> {
        match v {
            Value::String(s) => parse_rational(s),
            Value::Number(_) => Err(Error::MixedModeLiterals),
            other => Err(Error::Json(format!("expected a rational string, found {other}"))),
        }
    }
}

/// Parses `"p"`, `"p/q"` or a plain decimal such as `"-0.25"` exactly.
pub fn parse_rational(s: &str) -> Result<Rational, Error> {
    let s = s.trim();
    let bad = || Error::Json(format!("malformed rational literal {s:?}"));
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if Zero::is_zero(&d) {
            return Err(Error::ZeroDivisor);
        }
        return Ok(Rational::new(n, d));
    }
    parse_decimal(s).ok_or_else(bad)
}

/// Exact value of a decimal literal with optional exponent.
pub fn parse_decimal(s: &str) -> Option<Rational> {
    let (mantissa, exp) = match s.find(['e', 'E']) {
        Some(pos) => (&s[..pos], s[pos + 1..].parse::<i32>().ok()?),
        None => (s, 0),
    };
    let (neg, mantissa) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int, frac) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    if int.is_empty() && frac.is_empty() {
        return None;
    }
    if !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let digits: BigInt = format!("{int}{frac}0").parse().ok()?;
    let digits = digits / BigInt::from(10);
    let scale = exp - frac.len() as i32;
    let ten = BigInt::from(10);
    let mut r = Rational::from_integer(digits);
    if scale >= 0 {
        r *= Rational::from_integer(num_traits::pow(ten, scale as usize));
    } else {
        r /= Rational::from_integer(num_traits::pow(ten, (-scale) as usize));
    }
    Some(if neg { -r } else { r })
}

/// Best rational approximation of `x` with denominator at most `max_den`,
/// accepted only when it lies within `eps` of `x`.
pub fn rational_snap(x: f64, max_den: i64, eps: f64) -> Option<Rational> {
    if !x.is_finite() || max_den < 1 {
        return None;
    }
    let exact = Rational::from_float(x)?;
    let best = limit_denominator(&exact, &BigInt::from(max_den));
    let err = (ToPrimitive::to_f64(&(&best - &exact))?).abs();
    (err <= eps).then_some(best)
}

/// Closest fraction to `x` whose denominator does not exceed `max_den`
/// (continued fractions with a final semiconvergent check).
fn limit_denominator(x: &Rational, max_den: &BigInt) -> Rational {
    if x.denom() <= max_den {
        return x.clone();
    }
    let (mut p0, mut q0, mut p1, mut q1) = (BigInt::zero(), BigInt::one(), BigInt::one(), BigInt::zero());
    let (mut n, mut d) = (x.numer().clone(), x.denom().clone());
    loop {
        let a = n.div_floor(&d);
        let q2 = &q0 + &a * &q1;
        if &q2 > max_den {
            break;
        }
        let p2 = &p0 + &a * &p1;
        p0 = std::mem::replace(&mut p1, p2);
        q0 = std::mem::replace(&mut q1, q2);
        let r = &n - &a * &d;
        n = std::mem::replace(&mut d, r);
        if d.is_zero() {
            break;
        }
    }
    let k = (max_den - &q0).div_floor(&q1);
    let bound1 = Rational::new(&p0 + &k * &p1, &q0 + &k * &q1);
    let bound2 = Rational::new(p1, q1);
    if (&bound2 - x).abs() <= (&bound1 - x).abs() {
        bound2
    } else {
        bound1
    }
}

// ------------------------------------------------------------------- float

impl Ring for f64 {
    type Scalar = f64;

    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn is_zero(&self) -> bool {
        *self == 0.0
    }
    fn from_scalar(s: Self) -> Self {
        s
    }
    fn scale(&self, s: &Self) -> Self {
        self * s
    }
    fn conj(&self) -> Self {
        *self
    }
    fn inverse(&self) -> Option<Self> {
        (*self != 0.0 && self.is_finite()).then(|| 1.0 / self)
    }
    fn magnitude(&self) -> f64 {
        self.abs()
    }
    fn is_negligible(&self, scale: f64, tol: &Tolerance) -> bool {
        self.abs() <= tol.threshold(scale)
    }
}

impl Scalar for f64 {
    const MODE: Mode = Mode::Float;

    fn from_i64(n: i64) -> Self {
        n as f64
    }
    fn from_ratio(num: i64, den: i64) -> Self {
        num as f64 / den as f64
    }
    fn from_rational(r: &Rational) -> Self {
        ToPrimitive::to_f64(r).unwrap_or(f64::NAN)
    }
    fn to_f64(&self) -> f64 {
        *self
    }
    fn from_f64_approx(x: f64) -> Option<Self> {
        x.is_finite().then_some(x)
    }
    fn sqrt(&self) -> Option<Self> {
        (*self >= 0.0).then(|| f64::sqrt(*self))
    }
    fn sign(&self, scale: f64, tol: &Tolerance) -> i8 {
        if self.is_negligible(scale, tol) {
            0
        } else if *self > 0.0 {
            1
        } else {
            -1
        }
    }
    fn to_json(&self) -> Value {
        serde_json::Number::from_f64(*self).map(Value::Number).unwrap_or(Value::Null)
    }
    fn from_json(v: &Value) -> Result<Self, Error> {
        match v {
            Value::Number(n) => n
                .as_f64()
                .filter(|x| x.is_finite())
                .ok_or_else(|| Error::Json(format!("non-finite number {n}"))),
            Value::String(_) => Err(Error::MixedModeLiterals),
            other => Err(Error::Json(format!("expected a number, found {other}"))),
        }
    }
}
