//! Quaternion and dual-quaternion polynomials: one-sided gcds, real
//! divisors, norm polynomials, right zeros and motion polynomials.

use std::fmt;

use serde_json::Value;

use crate::algebra::{DualQuaternion, Mode, Quaternion, Ring, Scalar, Tolerance};
use crate::error::{Error, Result};
use crate::poly::{DualPoly, Poly, QuatPoly, RealPoly, Side};
use crate::rpoly::{exact_quotient, rp_gcd_all};

/// Componentwise dot product `Σ aₖ bₖ` of two quaternion polynomials. For
/// `a = b` this is the norm polynomial; for primal and dual part of a
/// dual-quaternion polynomial it is half the ε-part of its norm.
pub fn component_dot<S: Scalar>(a: &QuatPoly<S>, b: &QuatPoly<S>) -> RealPoly<S> {
    let ca = a.components();
    let cb = b.components();
    ca.iter().zip(cb.iter()).fold(RealPoly::zero(), |acc, (x, y)| acc + x * y)
}

/// `A conj(A)` as a real polynomial.
pub fn norm_poly<S: Scalar>(a: &QuatPoly<S>) -> RealPoly<S> {
    component_dot(a, a)
}

/// Monic real gcd of every component of the given quaternion polynomials;
/// 1 when all of them vanish.
pub fn mrpf<S: Scalar>(polys: &[&QuatPoly<S>], tol: &Tolerance) -> Result<RealPoly<S>> {
    let comps: Vec<RealPoly<S>> = polys.iter().flat_map(|p| p.components()).collect();
    rp_gcd_all(comps.iter(), tol)
}

/// Largest `τ` such that `n^τ` divides every given polynomial. Zero inputs
/// are skipped; all-zero input is an error.
pub fn nu_multiplicity<S: Scalar>(x: &[&QuatPoly<S>], n: &RealPoly<S>, tol: &Tolerance) -> Result<usize> {
    let mut cur: Vec<QuatPoly<S>> = x.iter().filter(|p| !p.is_zero()).map(|p| (*p).clone()).collect();
    if cur.is_empty() {
        return Err(Error::ZeroPolynomial);
    }
    if n.deg() == 0 {
        return Err(Error::PreconditionViolated("multiplicity of a constant".into()));
    }
    let nq = n.to_quat();
    let mut tau = 0;
    loop {
        // Float residues can sit below the zero test; they still end the count.
        if cur.iter().any(|p| p.is_zero() || p.deg() < n.deg()) {
            return Ok(tau);
        }
        let mut next = Vec::with_capacity(cur.len());
        for p in &cur {
            let d = p.div_rem(&nq, Side::Right)?;
            if !d.remainder.is_negligible(p.magnitude(), tol) {
                return Ok(tau);
            }
            next.push(d.quotient);
        }
        cur = next;
        tau += 1;
    }
}

/// Whether the real polynomial `f` divides every component of `a`.
pub fn real_divides<S: Scalar>(f: &RealPoly<S>, a: &QuatPoly<S>, tol: &Tolerance) -> Result<bool> {
    f.to_quat().divides(a, Side::Right, tol)
}

/// `a / f` for a real divisor known to divide `a`.
pub fn real_quotient<S: Scalar>(a: &QuatPoly<S>, f: &RealPoly<S>, tol: &Tolerance) -> Result<QuatPoly<S>> {
    let comps = a.components();
    let q = [
        exact_quotient(&comps[0], f, tol)?,
        exact_quotient(&comps[1], f, tol)?,
        exact_quotient(&comps[2], f, tol)?,
        exact_quotient(&comps[3], f, tol)?,
    ];
    Ok(QuatPoly::from_components(&q))
}

/// Exact one-sided quotient: `Right` returns `q` with `a = q·b`, `Left`
/// returns `q` with `a = b·q`.
pub fn quotient<C: Ring>(a: &Poly<C>, b: &Poly<C>, side: Side, tol: &Tolerance) -> Result<Poly<C>> {
    let d = a.div_rem(b, side)?;
    if d.remainder.is_negligible(a.magnitude().max(1.0), &tol.certificate()) {
        Ok(d.quotient)
    } else {
        Err(Error::Certificate(format!("{side:?} division is not exact")))
    }
}

/// Monic greatest common right (`Side::Right`) or left (`Side::Left`)
/// divisor, via the Euclidean algorithm with monic remainders.
pub fn one_sided_gcd<S: Scalar>(
    a: &QuatPoly<S>,
    b: &QuatPoly<S>,
    side: Side,
    tol: &Tolerance,
) -> Result<QuatPoly<S>> {
    Ok(one_sided_gcd_ext(a, b, side, tol)?.0)
}

/// Common right divisor.
pub fn rgcd<S: Scalar>(a: &QuatPoly<S>, b: &QuatPoly<S>, tol: &Tolerance) -> Result<QuatPoly<S>> {
    one_sided_gcd(a, b, Side::Right, tol)
}

/// Common left divisor.
pub fn lgcd<S: Scalar>(a: &QuatPoly<S>, b: &QuatPoly<S>, tol: &Tolerance) -> Result<QuatPoly<S>> {
    one_sided_gcd(a, b, Side::Left, tol)
}

/// One-sided gcd with Bezout coefficients: `x·a + y·b = g` on the right,
/// `a·x + b·y = g` on the left.
pub fn one_sided_gcd_ext<S: Scalar>(
    a: &QuatPoly<S>,
    b: &QuatPoly<S>,
    side: Side,
    tol: &Tolerance,
) -> Result<(QuatPoly<S>, QuatPoly<S>, QuatPoly<S>)> {
    if a.is_zero() && b.is_zero() {
        return Err(Error::BothZero);
    }
    let scale = a.magnitude().max(b.magnitude());
    let a = a.trim(scale, tol);
    let b = b.trim(scale, tol);
    let times = |q: &QuatPoly<S>, x: &QuatPoly<S>| match side {
        Side::Right => q * x,
        Side::Left => x * q,
    };
    let normalize = |row: (QuatPoly<S>, QuatPoly<S>, QuatPoly<S>)| -> Result<_> {
        let lc = match row.0.leading() {
            Some(c) => c.inverse().ok_or(Error::NonInvertibleLeading)?,
            None => return Ok(row),
        };
        Ok(match side {
            Side::Right => (row.0.mul_left(&lc), row.1.mul_left(&lc), row.2.mul_left(&lc)),
            Side::Left => (row.0.mul_right(&lc), row.1.mul_right(&lc), row.2.mul_right(&lc)),
        })
    };
    let mut r0 = normalize((a.clone(), QuatPoly::one(), QuatPoly::zero()))?;
    let mut r1 = normalize((b.clone(), QuatPoly::zero(), QuatPoly::one()))?;
    if r0.0.is_zero() || (!r1.0.is_zero() && r0.0.deg() < r1.0.deg()) {
        std::mem::swap(&mut r0, &mut r1);
    }
    while !r1.0.is_zero() {
        let d = r0.0.div_rem(&r1.0, side)?;
        let r = d.remainder.trim(r0.0.magnitude(), tol);
        let x = &r0.1 - &times(&d.quotient, &r1.1);
        let y = &r0.2 - &times(&d.quotient, &r1.2);
        let next = normalize((r, x, y))?;
        r0 = std::mem::replace(&mut r1, next);
    }
    Ok(r0)
}

/// Right zero `h` of `m` belonging to the quadratic factor `f` of its norm:
/// with `m mod f = r₁ t + r₀`, `h = -r₁⁻¹ r₀` and `t - h` right-divides `m`.
pub fn czero<S: Scalar>(m: &DualPoly<S>, f: &RealPoly<S>, tol: &Tolerance) -> Result<DualQuaternion<S>> {
    if f.deg() != 2 {
        return Err(Error::PreconditionViolated(format!("{f} is not quadratic")));
    }
    let r = m.rem(&f.to_dual(), Side::Right)?;
    let r1 = r.coeff(1);
    let r0 = r.coeff(0);
    if r1.primal.is_negligible(m.magnitude(), tol) {
        return Err(Error::NonInvertibleRemainderLeading);
    }
    let inv = r1.inverse().ok_or(Error::NonInvertibleRemainderLeading)?;
    Ok(-(inv * r0))
}

/// Polynomial `M = P + εD` whose norm polynomial is real and nonzero.
/// In float mode a leading coefficient within rounding of 1 becomes exactly
/// 1, so monic results of float arithmetic stay monic.
fn snap_monic<S: Scalar>(poly: DualPoly<S>) -> DualPoly<S> {
    if S::MODE != Mode::Float {
        return poly;
    }
    let mut coeffs = poly.into_coeffs();
    if let Some(last) = coeffs.last_mut() {
        if (last.clone() - DualQuaternion::one()).magnitude() < 1e-12 {
            *last = DualQuaternion::one();
        }
    }
    DualPoly::new(coeffs)
}

#[derive(Clone, Debug, PartialEq)]
pub struct MotionPoly<S> {
    poly: DualPoly<S>,
    primal: QuatPoly<S>,
    dual: QuatPoly<S>,
}

impl<S: Scalar> MotionPoly<S> {
    /// Validates the Study condition and a nonzero norm.
    pub fn new(poly: DualPoly<S>, tol: &Tolerance) -> Result<Self> {
        let m = MotionPoly::new_unchecked(poly);
        if m.primal.is_zero() {
            return Err(Error::ZeroNorm);
        }
        let scale = m.primal.magnitude() * m.dual.magnitude();
        if !component_dot(&m.primal, &m.dual).is_negligible(scale, tol) {
            return Err(Error::StudyViolation);
        }
        Ok(m)
    }

    pub(crate) fn new_unchecked(poly: DualPoly<S>) -> Self {
        let poly = snap_monic(poly);
        MotionPoly { primal: poly.primal(), dual: poly.dual(), poly }
    }

    pub fn from_parts(primal: &QuatPoly<S>, dual: &QuatPoly<S>, tol: &Tolerance) -> Result<Self> {
        MotionPoly::new(DualPoly::from_parts(primal, dual), tol)
    }

    pub(crate) fn from_parts_unchecked(primal: &QuatPoly<S>, dual: &QuatPoly<S>) -> Self {
        MotionPoly::new_unchecked(DualPoly::from_parts(primal, dual))
    }

    pub fn one() -> Self {
        MotionPoly::new_unchecked(DualPoly::one())
    }

    /// `t - h`, for `h` satisfying the Study condition.
    pub fn linear(h: DualQuaternion<S>, tol: &Tolerance) -> Result<Self> {
        MotionPoly::new(DualPoly::linear(h), tol)
    }

    /// Parses an expression (see [`crate::text`]) and validates it.
    pub fn parse(src: &str, tol: &Tolerance) -> Result<Self> {
        MotionPoly::new(crate::text::parse_dual_poly(src)?, tol)
    }

    pub fn poly(&self) -> &DualPoly<S> {
        &self.poly
    }

    pub fn into_poly(self) -> DualPoly<S> {
        self.poly
    }

    /// Primal part `P`.
    pub fn primal(&self) -> &QuatPoly<S> {
        &self.primal
    }

    /// Dual part `D`.
    pub fn dual(&self) -> &QuatPoly<S> {
        &self.dual
    }

    pub fn deg(&self) -> usize {
        self.poly.deg()
    }

    pub fn leading(&self) -> DualQuaternion<S> {
        self.poly.leading().cloned().unwrap_or_else(DualQuaternion::zero)
    }

    pub fn is_monic(&self) -> bool {
        self.poly.is_monic()
    }

    /// `M conj(M)`, which equals the norm of the primal part.
    pub fn norm_poly(&self) -> RealPoly<S> {
        norm_poly(&self.primal)
    }

    pub fn conj(&self) -> Self {
        MotionPoly::new_unchecked(self.poly.conj())
    }

    /// Greatest real monic divisor of all eight components.
    pub fn mrpf(&self, tol: &Tolerance) -> Result<RealPoly<S>> {
        mrpf(&[&self.primal, &self.dual], tol)
    }

    /// Whether the primal part has no real polynomial factor.
    pub fn is_generic(&self, tol: &Tolerance) -> Result<bool> {
        Ok(mrpf(&[&self.primal], tol)?.is_one())
    }

    pub fn is_reduced(&self, tol: &Tolerance) -> Result<bool> {
        Ok(self.mrpf(tol)?.is_one())
    }

    pub fn mul(&self, other: &Self) -> Self {
        MotionPoly::new_unchecked(&self.poly * &other.poly)
    }

    pub fn mul_real(&self, f: &RealPoly<S>) -> Self {
        MotionPoly::new_unchecked(&self.poly * &f.to_dual())
    }

    /// Division by a real polynomial that divides every component.
    pub fn div_real(&self, f: &RealPoly<S>, tol: &Tolerance) -> Result<Self> {
        Ok(MotionPoly::from_parts_unchecked(
            &real_quotient(&self.primal, f, tol)?,
            &real_quotient(&self.dual, f, tol)?,
        ))
    }

    /// Product of a chain of polynomials.
    pub fn product<'a>(items: impl IntoIterator<Item = &'a MotionPoly<S>>) -> Self {
        items.into_iter().fold(MotionPoly::one(), |acc, m| acc.mul(m))
    }

    /// The same polynomial with floating point coefficients.
    pub fn to_float(&self) -> MotionPoly<f64> {
        MotionPoly::new_unchecked(self.poly.map(|h| h.map(|s| s.to_f64())))
    }

    pub fn approx_eq(&self, other: &Self, tol: &Tolerance) -> bool {
        self.poly.approx_eq(&other.poly, tol)
    }

    pub fn to_json(&self) -> Value {
        self.poly.to_json()
    }

    pub fn from_json(v: &Value, tol: &Tolerance) -> Result<Self> {
        MotionPoly::new(DualPoly::from_json(v)?, tol)
    }
}

impl<S: Scalar> fmt::Display for MotionPoly<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::text::format_dual_poly(&self.poly))
    }
}

/// Constant quaternion polynomial.
pub fn qconst<S: Scalar>(q: Quaternion<S>) -> QuatPoly<S> {
    QuatPoly::constant(q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Rational;
    use crate::text::parse_dual_poly;

    type QP = QuatPoly<Rational>;
    type Q = Quaternion<Rational>;

    fn tol() -> Tolerance {
        Tolerance::default()
    }

    fn qp(src: &str) -> QP {
        parse_dual_poly::<Rational>(src).unwrap().primal()
    }

    fn rp(c: &[i64]) -> RealPoly<Rational> {
        RealPoly::from_i64s(c)
    }

    #[test]
    fn mrpf_examples() {
        assert_eq!(mrpf(&[&qp("(t^2+1)(t-i)^2")], &tol()).unwrap(), rp(&[1, 0, 1]));
        assert_eq!(mrpf(&[&qp("t-i")], &tol()).unwrap(), rp(&[1]));
        assert_eq!(mrpf(&[&QP::zero()], &tol()).unwrap(), rp(&[1]));
    }

    #[test]
    fn gcd_examples() {
        let a = qp("(t-i)(t-j)");
        assert_eq!(rgcd(&a, &qp("t-j"), &tol()).unwrap(), qp("t-j"));
        assert_eq!(rgcd(&qp("t-i"), &qp("t-j"), &tol()).unwrap(), QP::one());
        assert_eq!(lgcd(&a, &qp("(t-i)(t-k)"), &tol()).unwrap(), qp("t-i"));
        assert!(matches!(rgcd(&QP::zero(), &QP::zero(), &tol()), Err(Error::BothZero)));
    }

    #[test]
    fn bezout_coefficients() {
        let a = qp("(t-i)(t-j)");
        let b = qp("(t+k)(t-j)");
        let (g, x, y) = one_sided_gcd_ext(&a, &b, Side::Right, &tol()).unwrap();
        assert_eq!(g, qp("t-j"));
        assert_eq!(&(&x * &a) + &(&y * &b), g);
        let b = qp("(t-i)(t+k)");
        let (g, x, y) = one_sided_gcd_ext(&a, &b, Side::Left, &tol()).unwrap();
        assert_eq!(g, qp("t-i"));
        assert_eq!(&(&a * &x) + &(&b * &y), g);
    }

    #[test]
    fn norm_examples() {
        assert_eq!(norm_poly(&qp("(t-i)(t-j)")), rp(&[1, 0, 1]).pow(2));
        let m = MotionPoly::<Rational>::parse("(t^2+1)(t-i)^2+eps*i(t-i)^2", &tol()).unwrap();
        assert_eq!(m.norm_poly(), rp(&[1, 0, 1]).pow(4));
        assert_eq!(norm_poly(&qp("t-(-3i+4j)/5")), rp(&[1, 0, 1]));
    }

    #[test]
    fn czero_examples() {
        let m = parse_dual_poly::<Rational>("(t-i)(t-j)").unwrap();
        let h = czero(&m, &rp(&[1, 0, 1]), &tol()).unwrap();
        assert_eq!(h, DualQuaternion::from_primal(Q::j()));
        assert!(m.rem(&DualPoly::linear(h), Side::Right).unwrap().is_zero());
        let m = parse_dual_poly::<Rational>("t-i").unwrap();
        assert_eq!(czero(&m, &rp(&[1, 0, 1]), &tol()).unwrap(), DualQuaternion::from_primal(Q::i()));
        let m = parse_dual_poly::<Rational>("(t-i)(t-2j)").unwrap();
        let two_j = Q::j().scale(&Rational::from_i64(2));
        assert_eq!(czero(&m, &rp(&[4, 0, 1]), &tol()).unwrap(), DualQuaternion::from_primal(two_j));
        let m = parse_dual_poly::<Rational>("t^2+1+eps*i").unwrap();
        assert!(matches!(czero(&m, &rp(&[1, 0, 1]), &tol()), Err(Error::NonInvertibleRemainderLeading)));
    }

    #[test]
    fn multiplicity_examples() {
        let n = rp(&[1, 0, 1]);
        assert_eq!(nu_multiplicity(&[&qp("(t^2+1)(t-i)^2")], &n, &tol()).unwrap(), 1);
        assert_eq!(nu_multiplicity(&[&qp("(t^2+1)^2 i")], &n, &tol()).unwrap(), 2);
        assert_eq!(nu_multiplicity(&[&QP::one()], &n, &tol()).unwrap(), 0);
    }

    #[test]
    fn motion_poly_validation() {
        assert!(matches!(MotionPoly::<Rational>::parse("1 + eps", &tol()), Err(Error::StudyViolation)));
        assert!(matches!(MotionPoly::<Rational>::parse("eps*i", &tol()), Err(Error::ZeroNorm)));
        assert!(MotionPoly::<Rational>::parse("t^2+1+eps*i", &tol()).is_ok());
    }
}
