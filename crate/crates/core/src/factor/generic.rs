//! Factorization of generic motion polynomials and Bennett flips.

use crate::algebra::{DualQuaternion, Scalar, Tolerance};
use crate::error::{Error, Result};
use crate::poly::{DualPoly, RealPoly, Side};
use crate::qpoly::{czero, quotient, MotionPoly};
use crate::rpoly::{quad_factorization, rp_gcd};

/// Quadratic factors of `f` with multiplicity, in the deterministic order.
pub(crate) fn quadratic_sequence<S: Scalar>(f: &RealPoly<S>, tol: &Tolerance) -> Result<Vec<RealPoly<S>>> {
    let qf = quad_factorization(f, tol)?;
    if qf.linears().next().is_some() {
        return Err(Error::NotBounded);
    }
    Ok(qf.quadratics().flat_map(|(n, m)| std::iter::repeat_n(n.clone(), *m)).collect())
}

/// Peels right factors `t - h` from `m`, one per entry of `order`; returns
/// the remaining left cofactor and the peeled `h` from left to right.
fn peel<S: Scalar>(
    m: &DualPoly<S>,
    order: &[RealPoly<S>],
    tol: &Tolerance,
) -> Result<(DualPoly<S>, Vec<DualQuaternion<S>>)> {
    let mut cur = m.clone();
    let mut hs = Vec::with_capacity(order.len());
    for f in order {
        let h = czero(&cur, f, tol)?;
        cur = quotient(&cur, &DualPoly::linear(h.clone()), Side::Right, tol)?;
        hs.push(h);
    }
    hs.reverse();
    Ok((cur, hs))
}

/// Factorization of a monic generic polynomial, consuming the quadratic
/// factors of its norm in the deterministic order (first one rightmost).
pub fn gfactor<S: Scalar>(m: &MotionPoly<S>, tol: &Tolerance) -> Result<Vec<DualQuaternion<S>>> {
    if m.deg() == 0 {
        return Ok(Vec::new());
    }
    let order = quadratic_sequence(&m.norm_poly(), tol)?;
    gfactor_with_order(m, &order, tol)
}

/// [`gfactor`] with an explicit order of quadratic norm factors; `order[0]`
/// becomes the norm of the rightmost factor.
pub fn gfactor_with_order<S: Scalar>(
    m: &MotionPoly<S>,
    order: &[RealPoly<S>],
    tol: &Tolerance,
) -> Result<Vec<DualQuaternion<S>>> {
    if !m.is_monic() {
        return Err(Error::NotMonic);
    }
    if !m.is_generic(tol)? {
        return Err(Error::NotGeneric);
    }
    if order.iter().map(|f| f.deg()).sum::<usize>() != 2 * m.deg() {
        return Err(Error::PreconditionViolated("factor order does not cover the norm".into()));
    }
    Ok(peel(m.poly(), order, tol)?.1)
}

/// `m = M₁ M₂` where `M₁` has norm `g` and factors completely.
pub fn split_by_norm<S: Scalar>(
    m: &MotionPoly<S>,
    g: &RealPoly<S>,
    tol: &Tolerance,
) -> Result<(MotionPoly<S>, MotionPoly<S>)> {
    if !m.is_monic() || !g.is_monic() {
        return Err(Error::PreconditionViolated("inputs must be monic".into()));
    }
    if g.deg() == 0 {
        return Ok((MotionPoly::one(), m.clone()));
    }
    let c = crate::qpoly::mrpf(&[m.primal()], tol)?;
    if rp_gcd(g, &c, tol)?.deg() > 0 || !crate::rpoly::divides(g, &m.norm_poly(), tol)? {
        return Err(Error::PreconditionViolated(format!("{g} is not a norm factor coprime to the primal part")));
    }
    let order = quadratic_sequence(g, tol)?;
    let (rest, hs) = peel(&m.poly().conj(), &order, tol)?;
    let left = super::conj_reverse(hs);
    let m1 = DualPoly::one();
    let m1 = left.iter().fold(m1, |acc, h| acc * DualPoly::linear(h.clone()));
    Ok((MotionPoly::new_unchecked(m1), MotionPoly::new_unchecked(rest.conj())))
}

/// Rewrites `l₁ l₂ = k₁ k₂` with `ν(k₁) = ν(l₂)` and `ν(k₂) = ν(l₁)`.
pub fn bennett_flip<S: Scalar>(
    l1: &MotionPoly<S>,
    l2: &MotionPoly<S>,
    tol: &Tolerance,
) -> Result<(MotionPoly<S>, MotionPoly<S>)> {
    if l1.deg() != 1 || l2.deg() != 1 || !l1.is_monic() || !l2.is_monic() {
        return Err(Error::PreconditionViolated("expected monic linear factors".into()));
    }
    let n1 = l1.norm_poly();
    let n2 = l2.norm_poly();
    if rp_gcd(&n1, &n2, tol)?.deg() > 0 {
        return Err(Error::NonCoprimeNorms);
    }
    let m = l1.mul(l2);
    let h = czero(m.poly(), &n1, tol)?;
    let k2 = DualPoly::linear(h);
    let k1 = quotient(m.poly(), &k2, Side::Right, tol)?;
    Ok((MotionPoly::new_unchecked(k1), MotionPoly::new_unchecked(k2)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{Quaternion, Rational};

    type Q = Quaternion<Rational>;
    type DQ = DualQuaternion<Rational>;

    fn tol() -> Tolerance {
        Tolerance::default()
    }

    fn mp(s: &str) -> MotionPoly<Rational> {
        MotionPoly::parse(s, &tol()).unwrap()
    }

    fn vq(x: (i64, i64), y: (i64, i64), z: (i64, i64)) -> DQ {
        let r = |(n, d): (i64, i64)| Rational::from_ratio(n, d);
        DQ::from_primal(Q::vector(r(x), r(y), r(z)))
    }

    #[test]
    fn gfactor_examples() {
        assert!(gfactor(&MotionPoly::<Rational>::one(), &tol()).unwrap().is_empty());
        let hs = gfactor(&mp("(t-i)(t-j)"), &tol()).unwrap();
        assert_eq!(hs, vec![DQ::from_primal(Q::i()), DQ::from_primal(Q::j())]);
        let hs = gfactor(&mp("(t-i)(t-2j)"), &tol()).unwrap();
        assert_eq!(hs, vec![vq((8, 5), (6, 5), (0, 1)), vq((-3, 5), (4, 5), (0, 1))]);
        let order = [RealPoly::from_i64s(&[4, 0, 1]), RealPoly::from_i64s(&[1, 0, 1])];
        let hs = gfactor_with_order(&mp("(t-i)(t-2j)"), &order, &tol()).unwrap();
        assert_eq!(hs, vec![vq((1, 1), (0, 1), (0, 1)), vq((0, 1), (2, 1), (0, 1))]);
        assert!(matches!(gfactor(&mp("t^2+1+eps*i"), &tol()), Err(Error::NotGeneric)));
    }

    #[test]
    fn split_by_norm_examples() {
        let m = mp("(t-i)(t-2j)");
        let (a, b) = split_by_norm(&m, &RealPoly::from_i64s(&[1, 0, 1]), &tol()).unwrap();
        assert_eq!((a, b), (mp("t-i"), mp("t-2j")));
        let (a, b) = split_by_norm(&m, &RealPoly::one(), &tol()).unwrap();
        assert_eq!((a, b), (MotionPoly::one(), m));
        let m = mp("(t-i)(t-j)");
        let (a, b) = split_by_norm(&m, &RealPoly::from_i64s(&[1, 0, 1]).pow(2), &tol()).unwrap();
        assert_eq!((a, b), (m, MotionPoly::one()));
    }

    #[test]
    fn bennett_flip_examples() {
        let (k1, k2) = bennett_flip(&mp("t-i"), &mp("t-2j"), &tol()).unwrap();
        assert_eq!(k1, mp("t-(8i+6j)/5"));
        assert_eq!(k2, mp("t-(-3i+4j)/5"));
        let (k1, k2) = bennett_flip(&mp("t-i"), &mp("t-2i"), &tol()).unwrap();
        assert_eq!((k1, k2), (mp("t-2i"), mp("t-i")));
        assert!(matches!(bennett_flip(&mp("t-i"), &mp("t-j"), &tol()), Err(Error::NonCoprimeNorms)));
    }
}
