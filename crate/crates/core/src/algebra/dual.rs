use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde_json::Value;

use super::quaternion::Quaternion;
use super::scalar::{Ring, Scalar, Tolerance};
use crate::error::Error;

/// Dual quaternion `p + ε d` with `ε² = 0` and `ε` central.
#[derive(Clone, Debug, PartialEq)]
pub struct DualQuaternion<S> {
    pub primal: Quaternion<S>,
    pub dual: Quaternion<S>,
}

/// Dual number `a + ε b`, the value of a dual-quaternion norm.
#[derive(Clone, Debug, PartialEq)]
pub struct DualNumber<S> {
    pub real: S,
    pub dual: S,
}

impl<S: Scalar> DualQuaternion<S> {
    pub fn new(primal: Quaternion<S>, dual: Quaternion<S>) -> Self {
        DualQuaternion { primal, dual }
    }

    pub fn from_primal(primal: Quaternion<S>) -> Self {
        DualQuaternion::new(primal, Quaternion::zero())
    }

    /// `ε d`.
    pub fn from_dual(dual: Quaternion<S>) -> Self {
        DualQuaternion::new(Quaternion::zero(), dual)
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> DualQuaternion<T> {
        DualQuaternion::new(self.primal.map(&f), self.dual.map(&f))
    }

    pub fn eps() -> Self {
        DualQuaternion::from_dual(Quaternion::one())
    }

    /// `p - ε d`.
    pub fn eps_conj(&self) -> Self {
        DualQuaternion::new(self.primal.clone(), -self.dual.clone())
    }

    /// Both conjugations at once: `(conj(p) + ε conj(d), p - ε d)`.
    pub fn conjugates(&self) -> (Self, Self) {
        (self.conj(), self.eps_conj())
    }

    /// `h conj(h) = norm(p) + ε (p conj(d) + d conj(p))`. The ε-part of that
    /// product is always real and equals `2 p·d`.
    pub fn norm(&self) -> DualNumber<S> {
        let two = S::from_i64(2);
        DualNumber { real: self.primal.norm(), dual: two * self.primal.dot(&self.dual) }
    }

    /// Study condition `p conj(d) + d conj(p) = 0`.
    pub fn study_check(&self, tol: &Tolerance) -> bool {
        let scale = self.primal.magnitude() * self.dual.magnitude();
        self.primal.dot(&self.dual).is_negligible(scale, tol)
    }

    pub fn to_array(&self) -> [S; 8] {
        let [a, b, c, d] = self.primal.to_array();
        let [e, f, g, h] = self.dual.to_array();
        [a, b, c, d, e, f, g, h]
    }

    pub fn to_json(&self) -> Value {
        let mut v = self.primal.to_json();
        if let (Value::Array(a), Value::Array(b)) = (&mut v, self.dual.to_json()) {
            a.extend(b);
        }
        v
    }

    pub fn from_json(v: &Value) -> Result<Self, Error> {
        let arr = v
            .as_array()
            .filter(|a| a.len() == 8)
            .ok_or_else(|| Error::Json(format!("expected an 8-array, found {v}")))?;
        Ok(DualQuaternion::new(
            Quaternion::from_json(&Value::Array(arr[..4].to_vec()))?,
            Quaternion::from_json(&Value::Array(arr[4..].to_vec()))?,
        ))
    }
}

impl<S: Scalar> Add for DualQuaternion<S> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        DualQuaternion::new(self.primal + o.primal, self.dual + o.dual)
    }
}

impl<S: Scalar> Sub for DualQuaternion<S> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        DualQuaternion::new(self.primal - o.primal, self.dual - o.dual)
    }
}

impl<S: Scalar> Neg for DualQuaternion<S> {
    type Output = Self;
    fn neg(self) -> Self {
        DualQuaternion::new(-self.primal, -self.dual)
    }
}

impl<S: Scalar> Mul for DualQuaternion<S> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        let dual = self.primal.clone() * o.dual + self.dual * o.primal.clone();
        DualQuaternion::new(self.primal * o.primal, dual)
    }
}

impl<S: Scalar> Ring for DualQuaternion<S> {
    type Scalar = S;

    fn zero() -> Self {
        DualQuaternion::from_primal(Quaternion::zero())
    }
    fn one() -> Self {
        DualQuaternion::from_primal(Quaternion::one())
    }
    fn is_zero(&self) -> bool {
        self.primal.is_zero() && self.dual.is_zero()
    }
    fn from_scalar(s: S) -> Self {
        DualQuaternion::from_primal(Quaternion::real(s))
    }
    fn scale(&self, s: &S) -> Self {
        DualQuaternion::new(self.primal.scale(s), self.dual.scale(s))
    }
    fn conj(&self) -> Self {
        DualQuaternion::new(self.primal.conj(), self.dual.conj())
    }
    /// `(p + ε d)⁻¹ = p⁻¹ - ε p⁻¹ d p⁻¹`; exists iff `p ≠ 0`.
    fn inverse(&self) -> Option<Self> {
        let pinv = self.primal.inverse()?;
        let dual = -(pinv.clone() * self.dual.clone() * pinv.clone());
        Some(DualQuaternion::new(pinv, dual))
    }
    fn magnitude(&self) -> f64 {
        self.primal.magnitude().max(self.dual.magnitude())
    }
    fn is_negligible(&self, scale: f64, tol: &Tolerance) -> bool {
        self.primal.is_negligible(scale, tol) && self.dual.is_negligible(scale, tol)
    }
}

impl<S: Scalar> fmt::Display for DualQuaternion<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::text::format_dual_quaternion(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Rational;

    type Q = Quaternion<Rational>;
    type DQ = DualQuaternion<Rational>;

    fn int(n: i64) -> Rational {
        Rational::from_i64(n)
    }

    #[test]
    fn conjugate_examples() {
        let tol = Tolerance::default();
        // 1 + εi
        let h = DQ::new(Q::one(), Q::i());
        let (c, e) = h.conjugates();
        assert_eq!(c, DQ::new(Q::one(), -Q::i()));
        assert_eq!(e, DQ::new(Q::one(), -Q::i()));
        assert_eq!(h.norm(), DualNumber { real: int(1), dual: int(0) });
        assert!(h.study_check(&tol));

        // i + εj
        let h = DQ::new(Q::i(), Q::j());
        let (c, e) = h.conjugates();
        assert_eq!(c, DQ::new(-Q::i(), -Q::j()));
        assert_eq!(e, DQ::new(Q::i(), -Q::j()));
        assert_eq!(h.norm(), DualNumber { real: int(1), dual: int(0) });
        assert!(h.study_check(&tol));

        // 1 is its own conjugate
        let (c, e) = DQ::one().conjugates();
        assert_eq!((c, e), (DQ::one(), DQ::one()));

        // 1 + ε violates Study
        let h = DQ::new(Q::one(), Q::one());
        assert_eq!(h.norm(), DualNumber { real: int(1), dual: int(2) });
        assert!(!h.study_check(&tol));
    }

    #[test]
    fn norm_is_product_with_conjugate() {
        let h = DQ::new(Q::new(int(1), int(2), int(-1), int(3)), Q::new(int(0), int(1), int(4), int(-2)));
        let prod = h.clone() * h.conj();
        let n = h.norm();
        assert_eq!(prod.primal, Q::real(n.real));
        assert_eq!(prod.dual, Q::real(n.dual));
    }

    #[test]
    fn eps_is_nilpotent() {
        let d = DQ::from_dual(Q::new(int(3), int(-1), int(2), int(5)));
        assert!((d.clone() * d).is_zero());
    }

    #[test]
    fn inverse_of_dual_quaternion() {
        let h = DQ::new(Q::new(int(1), int(1), int(0), int(2)), Q::new(int(0), int(3), int(-1), int(1)));
        let inv = h.inverse().unwrap();
        assert_eq!(h.clone() * inv.clone(), DQ::one());
        assert_eq!(inv * h, DQ::one());
        assert!(DQ::eps().inverse().is_none());
    }
}
