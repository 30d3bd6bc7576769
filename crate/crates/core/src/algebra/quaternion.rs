use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde_json::Value;

use super::scalar::{Ring, Scalar, Tolerance};
use crate::error::Error;

/// Quaternion `w + x i + y j + z k`.
#[derive(Clone, Debug, PartialEq)]
pub struct Quaternion<S> {
    pub w: S,
    pub x: S,
    pub y: S,
    pub z: S,
}

impl<S: Scalar> Quaternion<S> {
    pub fn new(w: S, x: S, y: S, z: S) -> Self {
        Quaternion { w, x, y, z }
    }

    pub fn real(w: S) -> Self {
        Quaternion::new(w, S::zero(), S::zero(), S::zero())
    }

    pub fn vector(x: S, y: S, z: S) -> Self {
        Quaternion::new(S::zero(), x, y, z)
    }

    pub fn i() -> Self {
        Quaternion::vector(S::one(), S::zero(), S::zero())
    }

    pub fn j() -> Self {
        Quaternion::vector(S::zero(), S::one(), S::zero())
    }

    pub fn k() -> Self {
        Quaternion::vector(S::zero(), S::zero(), S::one())
    }

    /// Basis element by index: 0 → 1, 1 → i, 2 → j, 3 → k.
    pub fn basis(index: usize) -> Self {
        let mut c = [S::zero(), S::zero(), S::zero(), S::zero()];
        c[index] = S::one();
        Quaternion::from_array(c)
    }

    pub fn from_array([w, x, y, z]: [S; 4]) -> Self {
        Quaternion { w, x, y, z }
    }

    pub fn to_array(&self) -> [S; 4] {
        [self.w.clone(), self.x.clone(), self.y.clone(), self.z.clone()]
    }

    pub fn components(&self) -> [&S; 4] {
        [&self.w, &self.x, &self.y, &self.z]
    }

    /// `q * conj(q) = w² + x² + y² + z²`.
    pub fn norm(&self) -> S {
        self.dot(self)
    }

    /// Euclidean inner product of the coefficient vectors.
    pub fn dot(&self, other: &Self) -> S {
        self.w.clone() * other.w.clone()
            + self.x.clone() * other.x.clone()
            + self.y.clone() * other.y.clone()
            + self.z.clone() * other.z.clone()
    }

    pub fn scalar_part(&self) -> S {
        self.w.clone()
    }

    pub fn vector_part(&self) -> Self {
        Quaternion::vector(self.x.clone(), self.y.clone(), self.z.clone())
    }

    pub fn is_real(&self) -> bool {
        self.x.is_zero() && self.y.is_zero() && self.z.is_zero()
    }

    pub fn is_vectorial(&self) -> bool {
        self.w.is_zero()
    }

    /// `a * b - b * a`.
    pub fn commutator(&self, other: &Self) -> Self {
        self.clone() * other.clone() - other.clone() * self.clone()
    }

    pub fn commutes_with(&self, other: &Self, tol: &Tolerance) -> bool {
        let scale = self.magnitude() * other.magnitude();
        self.commutator(other).is_negligible(scale, tol)
    }

    /// `conj(q) / norm(q)`.
    pub fn try_inverse(&self) -> Result<Self, Error> {
        self.inverse().ok_or(Error::ZeroDivisor)
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> Quaternion<T> {
        Quaternion::new(f(&self.w), f(&self.x), f(&self.y), f(&self.z))
    }

    pub fn to_json(&self) -> Value {
        Value::Array(self.components().iter().map(|c| c.to_json()).collect())
    }

    pub fn from_json(v: &Value) -> Result<Self, Error> {
        let arr = v
            .as_array()
            .filter(|a| a.len() == 4)
            .ok_or_else(|| Error::Json(format!("expected a 4-array, found {v}")))?;
        Ok(Quaternion::new(
            S::from_json(&arr[0])?,
            S::from_json(&arr[1])?,
            S::from_json(&arr[2])?,
            S::from_json(&arr[3])?,
        ))
    }
}

impl<S: Scalar> Add for Quaternion<S> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Quaternion::new(self.w + o.w, self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl<S: Scalar> Sub for Quaternion<S> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Quaternion::new(self.w - o.w, self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl<S: Scalar> Neg for Quaternion<S> {
    type Output = Self;
    fn neg(self) -> Self {
        Quaternion::new(-self.w, -self.x, -self.y, -self.z)
    }
}

/// Hamilton product.
impl<S: Scalar> Mul for Quaternion<S> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        let (a1, b1, c1, d1) = (self.w, self.x, self.y, self.z);
        let (a2, b2, c2, d2) = (o.w, o.x, o.y, o.z);
        Quaternion::new(
            a1.clone() * a2.clone() - b1.clone() * b2.clone() - c1.clone() * c2.clone() - d1.clone() * d2.clone(),
            a1.clone() * b2.clone() + b1.clone() * a2.clone() + c1.clone() * d2.clone() - d1.clone() * c2.clone(),
            a1.clone() * c2.clone() - b1.clone() * d2.clone() + c1.clone() * a2.clone() + d1.clone() * b2.clone(),
            a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
        )
    }
}

impl<S: Scalar> Ring for Quaternion<S> {
    type Scalar = S;

    fn zero() -> Self {
        Quaternion::real(S::zero())
    }
    fn one() -> Self {
        Quaternion::real(S::one())
    }
    fn is_zero(&self) -> bool {
        self.components().iter().all(|c| c.is_zero())
    }
    fn from_scalar(s: S) -> Self {
        Quaternion::real(s)
    }
    fn scale(&self, s: &S) -> Self {
        self.map(|c| c.clone() * s.clone())
    }
    fn conj(&self) -> Self {
        Quaternion::new(self.w.clone(), -self.x.clone(), -self.y.clone(), -self.z.clone())
    }
    fn inverse(&self) -> Option<Self> {
        let n = self.norm().inverse()?;
        Some(self.conj().scale(&n))
    }
    fn magnitude(&self) -> f64 {
        self.components().iter().map(|c| c.magnitude()).fold(0.0, f64::max)
    }
    fn is_negligible(&self, scale: f64, tol: &Tolerance) -> bool {
        self.components().iter().all(|c| c.is_negligible(scale, tol))
    }
}

impl<S: Scalar> fmt::Display for Quaternion<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::text::format_quaternion(self))
    }
}
