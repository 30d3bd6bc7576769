//! Dense univariate polynomials in a central indeterminate `t`.
//!
//! [`Poly`] is generic over the coefficient [`Ring`]; the aliases
//! [`RealPoly`], [`QuatPoly`] and [`DualPoly`] name the three instances the
//! rest of the crate works with.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde_json::Value;

use crate::algebra::{DualQuaternion, Quaternion, Ring, Scalar, Tolerance};
use crate::error::{Error, Result};

/// Polynomial with coefficients in ascending degree. Trailing exact zeros
/// are always trimmed, so the zero polynomial has no coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct Poly<C> {
    coeffs: Vec<C>,
}

pub type RealPoly<S> = Poly<S>;
pub type QuatPoly<S> = Poly<Quaternion<S>>;
pub type DualPoly<S> = Poly<DualQuaternion<S>>;

/// Which side the divisor sits on.
///
/// `Right`: `a = q·b + r`, so an exact quotient exhibits `b` as a right
/// factor. `Left`: `a = b·q + r`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub fn flip(self) -> Side {
        match self {
            Side::Left => Side::Right,
            Side::Right => Side::Left,
        }
    }
}

/// Quotient and remainder of a one-sided division.
#[derive(Clone, Debug, PartialEq)]
pub struct DivisionResult<C> {
    pub quotient: Poly<C>,
    pub remainder: Poly<C>,
    pub side: Side,
}

impl<C: Ring> Poly<C> {
    pub fn new(mut coeffs: Vec<C>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(C::one())
    }

    pub fn constant(c: C) -> Self {
        Poly::new(vec![c])
    }

    /// The indeterminate `t`.
    pub fn t() -> Self {
        Poly::new(vec![C::zero(), C::one()])
    }

    /// `t - h`.
    pub fn linear(h: C) -> Self {
        Poly::new(vec![-h, C::one()])
    }

    pub fn monomial(c: C, degree: usize) -> Self {
        let mut coeffs = vec![C::zero(); degree + 1];
        coeffs[degree] = c;
        Poly::new(coeffs)
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<C> {
        self.coeffs
    }

    pub fn coeff(&self, i: usize) -> C {
        self.coeffs.get(i).cloned().unwrap_or_else(C::zero)
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the zero polynomial mapped to 0.
    pub fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0] == C::one()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn leading(&self) -> Option<&C> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(|c| *c == C::one())
    }

    /// Largest component magnitude over all coefficients.
    pub fn magnitude(&self) -> f64 {
        self.coeffs.iter().map(Ring::magnitude).fold(0.0, f64::max)
    }

    pub fn map<D: Ring>(&self, f: impl Fn(&C) -> D) -> Poly<D> {
        Poly::new(self.coeffs.iter().map(f).collect())
    }

    /// Coefficientwise conjugation.
    pub fn conj(&self) -> Self {
        self.map(Ring::conj)
    }

    pub fn scale(&self, s: &C::Scalar) -> Self {
        self.map(|c| c.scale(s))
    }

    /// `c · self`.
    pub fn mul_left(&self, c: &C) -> Self {
        self.map(|a| c.clone() * a.clone())
    }

    /// `self · c`.
    pub fn mul_right(&self, c: &C) -> Self {
        self.map(|a| a.clone() * c.clone())
    }

    /// Multiplication by `t^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![C::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Poly { coeffs }
    }

    /// Horner evaluation at a real parameter.
    pub fn eval(&self, t: &C::Scalar) -> C {
        self.coeffs.iter().rev().fold(C::zero(), |acc, c| acc.scale(t) + c.clone())
    }

    /// Drops high-order coefficients that are negligible relative to `scale`
    /// and zeroes negligible inner ones. A no-op in exact mode.
    pub fn trim(&self, scale: f64, tol: &Tolerance) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| if c.is_negligible(scale, tol) { C::zero() } else { c.clone() })
            .collect();
        Poly::new(coeffs)
    }

    pub fn is_negligible(&self, scale: f64, tol: &Tolerance) -> bool {
        self.coeffs.iter().all(|c| c.is_negligible(scale, tol))
    }

    /// Coefficientwise comparison under the zero test.
    pub fn approx_eq(&self, other: &Self, tol: &Tolerance) -> bool {
        let scale = self.magnitude().max(other.magnitude());
        (self.clone() - other.clone()).is_negligible(scale, tol)
    }

    /// Division with remainder; the divisor needs an invertible leading
    /// coefficient.
    pub fn div_rem(&self, b: &Self, side: Side) -> Result<DivisionResult<C>> {
        let lead = b.leading().ok_or(Error::ZeroDivisorPoly)?;
        let inv = lead.inverse().ok_or(Error::NonInvertibleLeading)?;
        let db = b.coeffs.len() - 1;
        let mut rem = self.coeffs.clone();
        let mut quot = vec![C::zero(); rem.len().saturating_sub(db)];
        while rem.len() > db {
            let k = rem.len() - 1 - db;
            let top = rem.last().cloned().expect("nonempty");
            let c = match side {
                Side::Right => top * inv.clone(),
                Side::Left => inv.clone() * top,
            };
            for (i, bc) in b.coeffs.iter().enumerate().take(db) {
                let term = match side {
                    Side::Right => c.clone() * bc.clone(),
                    Side::Left => bc.clone() * c.clone(),
                };
                rem[i + k] = rem[i + k].clone() - term;
            }
            rem.pop();
            quot[k] = c;
        }
        Ok(DivisionResult { quotient: Poly::new(quot), remainder: Poly::new(rem), side })
    }

    pub fn rem(&self, b: &Self, side: Side) -> Result<Self> {
        Ok(self.div_rem(b, side)?.remainder)
    }

    /// Quotient of a division that must be exact up to the zero test.
    pub fn exact_div(&self, b: &Self, side: Side, tol: &Tolerance) -> Result<Self> {
        let d = self.div_rem(b, side)?;
        if d.remainder.is_negligible(self.magnitude(), &tol.certificate()) {
            Ok(d.quotient)
        } else {
            Err(Error::Certificate(format!("{side:?} division is not exact")))
        }
    }

    pub fn divides(&self, a: &Self, side: Side, tol: &Tolerance) -> Result<bool> {
        Ok(a.div_rem(self, side)?.remainder.is_negligible(a.magnitude(), tol))
    }

    /// Normalizes the leading coefficient to one. `Right` multiplies the
    /// inverse on the left, which keeps right divisors right divisors.
    pub fn monic(&self, side: Side) -> Result<Self> {
        let lead = self.leading().ok_or(Error::ZeroPolynomial)?;
        let inv = lead.inverse().ok_or(Error::NonInvertibleLeading)?;
        Ok(match side {
            Side::Right => self.mul_left(&inv),
            Side::Left => self.mul_right(&inv),
        })
    }

    pub fn pow(&self, n: usize) -> Self {
        (0..n).fold(Poly::one(), |acc, _| acc * self.clone())
    }
}

impl<C: Ring> Add for Poly<C> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        let (mut long, short) = if self.coeffs.len() >= o.coeffs.len() { (self, o) } else { (o, self) };
        for (i, c) in short.coeffs.into_iter().enumerate() {
            long.coeffs[i] = long.coeffs[i].clone() + c;
        }
        Poly::new(long.coeffs)
    }
}

impl<C: Ring> Neg for Poly<C> {
    type Output = Self;
    fn neg(self) -> Self {
        Poly { coeffs: self.coeffs.into_iter().map(|c| -c).collect() }
    }
}

impl<C: Ring> Sub for Poly<C> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        self + (-o)
    }
}

/// Convolution; `t` commutes with every coefficient.
impl<C: Ring> Mul for Poly<C> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![C::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Poly::new(out)
    }
}

impl<'a, C: Ring> Add<&'a Poly<C>> for &'a Poly<C> {
    type Output = Poly<C>;
    fn add(self, o: &Poly<C>) -> Poly<C> {
        self.clone() + o.clone()
    }
}

impl<'a, C: Ring> Sub<&'a Poly<C>> for &'a Poly<C> {
    type Output = Poly<C>;
    fn sub(self, o: &Poly<C>) -> Poly<C> {
        self.clone() - o.clone()
    }
}

impl<'a, C: Ring> Mul<&'a Poly<C>> for &'a Poly<C> {
    type Output = Poly<C>;
    fn mul(self, o: &Poly<C>) -> Poly<C> {
        self.clone() * o.clone()
    }
}

// ------------------------------------------------------------ conversions

impl<S: Scalar> RealPoly<S> {
    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Poly::new(coeffs.iter().map(|&c| S::from_i64(c)).collect())
    }

    /// Embeds into quaternion polynomials as the real part.
    pub fn to_quat(&self) -> QuatPoly<S> {
        self.map(|c| Quaternion::real(c.clone()))
    }

    pub fn to_dual(&self) -> DualPoly<S> {
        self.map(|c| DualQuaternion::from_primal(Quaternion::real(c.clone())))
    }

    pub fn to_json(&self) -> Value {
        Value::Array(self.coeffs.iter().map(Scalar::to_json).collect())
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let arr = v.as_array().ok_or_else(|| Error::Json(format!("expected an array, found {v}")))?;
        Ok(Poly::new(arr.iter().map(S::from_json).collect::<Result<_>>()?))
    }

    pub fn derivative(&self) -> Self {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c.clone() * S::from_i64(i as i64))
                .collect(),
        )
    }
}

impl<S: Scalar> QuatPoly<S> {
    /// The four real component polynomials `(w, x, y, z)`.
    pub fn components(&self) -> [RealPoly<S>; 4] {
        [
            self.map(|q| q.w.clone()),
            self.map(|q| q.x.clone()),
            self.map(|q| q.y.clone()),
            self.map(|q| q.z.clone()),
        ]
    }

    pub fn from_components(c: &[RealPoly<S>; 4]) -> Self {
        let n = c.iter().map(|p| p.coeffs.len()).max().unwrap_or(0);
        Poly::new(
            (0..n)
                .map(|i| Quaternion::new(c[0].coeff(i), c[1].coeff(i), c[2].coeff(i), c[3].coeff(i)))
                .collect(),
        )
    }

    pub fn to_dual(&self) -> DualPoly<S> {
        self.map(|q| DualQuaternion::from_primal(q.clone()))
    }

    /// `ε · self`.
    pub fn to_dual_eps(&self) -> DualPoly<S> {
        self.map(|q| DualQuaternion::from_dual(q.clone()))
    }

    /// Real polynomial when every vector component vanishes.
    pub fn as_real(&self, tol: &Tolerance) -> Option<RealPoly<S>> {
        let [w, x, y, z] = self.components();
        let scale = self.magnitude();
        [x, y, z].iter().all(|p| p.is_negligible(scale, tol)).then_some(w)
    }

    /// Scalar part of the polynomial.
    pub fn real_part(&self) -> RealPoly<S> {
        self.map(|q| q.w.clone())
    }

    pub fn to_json(&self) -> Value {
        Value::Array(self.coeffs.iter().map(Quaternion::to_json).collect())
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let arr = v.as_array().ok_or_else(|| Error::Json(format!("expected an array, found {v}")))?;
        Ok(Poly::new(arr.iter().map(Quaternion::from_json).collect::<Result<_>>()?))
    }
}

impl<S: Scalar> DualPoly<S> {
    pub fn from_parts(primal: &QuatPoly<S>, dual: &QuatPoly<S>) -> Self {
        let n = primal.coeffs.len().max(dual.coeffs.len());
        Poly::new((0..n).map(|i| DualQuaternion::new(primal.coeff(i), dual.coeff(i))).collect())
    }

    pub fn primal(&self) -> QuatPoly<S> {
        self.map(|h| h.primal.clone())
    }

    pub fn dual(&self) -> QuatPoly<S> {
        self.map(|h| h.dual.clone())
    }

    /// All eight real component polynomials, primal first.
    pub fn components(&self) -> [RealPoly<S>; 8] {
        let [a, b, c, d] = self.primal().components();
        let [e, f, g, h] = self.dual().components();
        [a, b, c, d, e, f, g, h]
    }

    pub fn to_json(&self) -> Value {
        Value::Array(self.coeffs.iter().map(DualQuaternion::to_json).collect())
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let arr = v.as_array().ok_or_else(|| Error::Json(format!("expected an array, found {v}")))?;
        Ok(Poly::new(arr.iter().map(DualQuaternion::from_json).collect::<Result<_>>()?))
    }
}

impl<S: Scalar> fmt::Display for RealPoly<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::text::format_real_poly(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Rational;

    type QP = QuatPoly<Rational>;
    type Q = Quaternion<Rational>;

    fn int(n: i64) -> Rational {
        Rational::from_i64(n)
    }

    #[test]
    fn product_examples() {
        let a = QP::linear(Q::i());
        let b = QP::linear(Q::j());
        // (t - i)(t - j) = t² - (i + j) t + k
        let expect = QP::new(vec![Q::k(), -(Q::i() + Q::j()), Q::one()]);
        assert_eq!(&a * &b, expect);
        assert_eq!(&a * &QP::one(), a);
        let c = QP::linear(-Q::i());
        assert_eq!(&a * &c, RealPoly::<Rational>::from_i64s(&[1, 0, 1]).to_quat());
    }

    #[test]
    fn division_examples() {
        let a = QP::linear(Q::i()) * QP::linear(Q::j());
        let b = QP::linear(Q::j());
        let d = a.div_rem(&b, Side::Right).unwrap();
        assert_eq!(d.quotient, QP::linear(Q::i()));
        assert!(d.remainder.is_zero());

        let t2 = QP::monomial(Q::one(), 2);
        let b = QP::linear(Q::i());
        for side in [Side::Left, Side::Right] {
            let d = t2.div_rem(&b, side).unwrap();
            assert_eq!(d.quotient, QP::linear(-Q::i()));
            assert_eq!(d.remainder, QP::constant(Q::real(int(-1))));
        }
    }

    #[test]
    fn division_errors() {
        let a = QP::t();
        assert!(matches!(a.div_rem(&QP::zero(), Side::Left), Err(Error::ZeroDivisorPoly)));
        let eps_lead: DualPoly<Rational> =
            Poly::new(vec![DualQuaternion::one(), DualQuaternion::eps()]);
        let m: DualPoly<Rational> = Poly::monomial(DualQuaternion::one(), 3);
        assert!(matches!(m.div_rem(&eps_lead, Side::Right), Err(Error::NonInvertibleLeading)));
    }

    #[test]
    fn evaluation_is_horner() {
        let p = RealPoly::<Rational>::from_i64s(&[1, -2, 3]);
        assert_eq!(p.eval(&int(2)), int(9));
        assert_eq!(Poly::<Rational>::zero().eval(&int(5)), int(0));
    }

    #[test]
    fn components_round_trip() {
        let a = QP::linear(Q::new(int(1), int(2), int(3), int(4))) * QP::linear(Q::j());
        assert_eq!(QP::from_components(&a.components()), a);
    }
}
