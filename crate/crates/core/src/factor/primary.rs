//! Decomposition into factors of primary norm and the factorization of
//! polynomials whose norm is a power of a single quadratic.

use crate::algebra::{DualQuaternion, Quaternion, Ring, Scalar, Tolerance};
use crate::error::{Error, Result};
use crate::poly::{QuatPoly, RealPoly, Side};
use crate::qpoly::{lgcd, norm_poly, quotient, real_divides, real_quotient, rgcd, MotionPoly};
use crate::rpoly::{divides, exact_quotient, has_real_root, rp_gcd, rp_gcd_ext};

use super::generic::{gfactor, quadratic_sequence};
use super::{
    check_factorizable, conj_reverse, split_primal, FactorChain, FactorTriple, PrimaryDecomposition, PrimaryFactor,
};

/// `M = (f₁ + εD₁)(f₂ + εD₂)` for a monic translational `M` with primal
/// part `f₁f₂`, `f₁` and `f₂` coprime.
pub fn translational_split<S: Scalar>(
    m: &MotionPoly<S>,
    f1: &RealPoly<S>,
    f2: &RealPoly<S>,
    tol: &Tolerance,
) -> Result<(MotionPoly<S>, MotionPoly<S>)> {
    let primal = m.primal().as_real(tol).ok_or(Error::NotTranslational)?;
    if !primal.approx_eq(&(f1 * f2), tol) {
        return Err(Error::NotTranslational);
    }
    let (g, d1, d2) = rp_gcd_ext(f1, f2, tol)?;
    if g.deg() > 0 {
        return Err(Error::NotCoprime);
    }
    let d = m.dual();
    let dd2 = (&d1.to_quat() * d).rem(&f2.to_quat(), Side::Right)?;
    let dd1 = (&d2.to_quat() * d).rem(&f1.to_quat(), Side::Right)?;
    Ok((
        MotionPoly::from_parts_unchecked(&f1.to_quat(), &dd1),
        MotionPoly::from_parts_unchecked(&f2.to_quat(), &dd2),
    ))
}

fn require_bounded_reduced<S: Scalar>(m: &MotionPoly<S>, tol: &Tolerance) -> Result<()> {
    if !m.is_monic() {
        return Err(Error::NotMonic);
    }
    if !m.is_reduced(tol)? {
        return Err(Error::NotReduced);
    }
    let c = crate::qpoly::mrpf(&[m.primal()], tol)?;
    if has_real_root(&c, tol)? {
        return Err(Error::NotBounded);
    }
    Ok(())
}

/// Splits a bounded monic reduced polynomial into factors of pairwise
/// coprime primary norms. The first quadratic in the deterministic order
/// ends up rightmost.
pub fn mgfactor<S: Scalar>(m: &MotionPoly<S>, tol: &Tolerance) -> Result<PrimaryDecomposition<S>> {
    require_bounded_reduced(m, tol)?;
    let mut parts = Vec::new();
    let mut cur = m.clone();
    while cur.deg() > 0 {
        let seq = quadratic_sequence(&cur.norm_poly(), tol)?;
        let n = seq[0].clone();
        let mult = seq.iter().filter(|f| **f == n).count();
        if mult * 2 == seq.iter().map(|f| f.deg()).sum::<usize>() {
            parts.push(PrimaryFactor { poly: cur, n, multiplicity: mult });
            break;
        }
        let (rest, right) = peel_primary(&cur, &n, mult, tol)?;
        parts.push(PrimaryFactor { poly: right, n, multiplicity: mult });
        cur = rest;
    }
    parts.reverse();
    Ok(PrimaryDecomposition { factors: parts })
}

/// `M = M′ · Mᵣ` with `ν(Mᵣ) = Nⁿ`.
fn peel_primary<S: Scalar>(
    m: &MotionPoly<S>,
    n: &RealPoly<S>,
    mult: usize,
    tol: &Tolerance,
) -> Result<(MotionPoly<S>, MotionPoly<S>)> {
    let nn = n.pow(mult);
    let (c, q) = split_primal(m.primal(), tol)?;
    let c2 = rp_gcd(&c, &nn, tol)?;
    let c1 = exact_quotient(&c, &c2, tol)?;
    let f = exact_quotient(&nn, &(&c2 * &c2), tol)?;
    let q2 = rgcd(&f.to_quat(), &q, tol)?;
    let q1 = quotient(&q, &q2, Side::Right, tol)?;
    let nu1 = norm_poly(&q1);
    let nu2 = norm_poly(&q2);
    let f1 = &c1 * &nu1;
    let f2 = &c2 * &nu2;
    let dual = &(&q1.conj() * m.dual()) * &q2.conj();
    let mt = MotionPoly::from_parts_unchecked(&(&f1 * &f2).to_quat(), &dual);
    let (m1, m2) = translational_split(&mt, &f1, &f2, tol)?;
    let left = MotionPoly::from_parts_unchecked(
        &(&q1 * &c1.to_quat()),
        &real_quotient(&(&q1 * m1.dual()), &nu1, tol)?,
    );
    let right = MotionPoly::from_parts_unchecked(
        &(&q2 * &c2.to_quat()),
        &real_quotient(&(m2.dual() * &q2), &nu2, tol)?,
    );
    Ok((left, right))
}

/// Default choice of the quaternion `q` in the non-commuting case: with
/// `v` the first of `i, j, k` not commuting with `p`,
/// `q = (v p - p v) / (4 |vec p|²)`, so that `p q - q p = v` for unit `vec p`.
fn default_q<S: Scalar>(p: &Quaternion<S>, tol: &Tolerance) -> Result<Quaternion<S>> {
    let v = (1..4)
        .map(Quaternion::basis)
        .find(|v: &Quaternion<S>| !p.commutes_with(v, tol))
        .ok_or_else(|| Error::PreconditionViolated(format!("{p} is real")))?;
    let scale = S::from_i64(4) * p.vector_part().norm();
    let inv = scale.inverse().ok_or(Error::ZeroDivisor)?;
    Ok((v.commutator(p)).scale(&inv))
}

/// Triple decomposition of a polynomial with primary norm, using the
/// default choice of `q`.
pub fn factor3<S: Scalar>(m: &MotionPoly<S>, tol: &Tolerance) -> Result<FactorTriple<S>> {
    factor3_with(m, None, tol)
}

/// Triple decomposition `M = M_L · M_C · M_R` of a bounded monic reduced
/// polynomial with primary norm satisfying the criterion, where `M_C` has
/// real primal part and the outer factors are generic. `q` overrides the
/// non-commuting quaternion used when the left factor needs a dual part.
pub fn factor3_with<S: Scalar>(
    m: &MotionPoly<S>,
    q: Option<Quaternion<S>>,
    tol: &Tolerance,
) -> Result<FactorTriple<S>> {
    require_bounded_reduced(m, tol)?;
    let seq = quadratic_sequence(&m.norm_poly(), tol)?;
    let n = seq.first().cloned().ok_or_else(|| Error::PreconditionViolated("constant polynomial".into()))?;
    if seq.iter().any(|f| *f != n) {
        return Err(Error::PreconditionViolated("norm is not primary".into()));
    }
    let report = check_factorizable(m, tol)?;
    if !report.factorizable {
        return Err(Error::CriterionFailed);
    }
    let (c, big_q, d) = (report.c, report.q, report.d);
    let one = MotionPoly::one();
    if big_q.deg() == 0 {
        if c.deg() == 0 {
            return Err(Error::PreconditionViolated("constant polynomial".into()));
        }
        let m1 = lgcd(&c.to_quat(), &d, tol)?;
        let m2 = quotient(&d, &m1, Side::Left, tol)?;
        let split = (MotionPoly::from_parts_unchecked(&m1, &QuatPoly::zero()), MotionPoly::from_parts_unchecked(&m1.conj(), &m2));
        return Ok(FactorTriple { left: one.clone(), center: m.clone(), right: one, center_split: split });
    }
    if c.deg() == 0 {
        return Err(Error::PreconditionViolated("primal part has no real factor".into()));
    }
    if !divides(&report.g_l, &report.g_r, tol)? {
        return Err(Error::PreconditionViolated("conjugate first: gcd(c, conj(Q)D) must divide gcd(c, D conj(Q))".into()));
    }
    let g = report.g_l;
    let gq = g.to_quat();
    let qbar = big_q.conj();
    let x = real_quotient(&(&qbar * &d), &g, tol)?;
    let q_l = lgcd(&gq, &big_q, tol)?;
    let d_l = if real_divides(&n, &x, tol)? {
        let tp = lgcd(&n.to_quat(), &big_q, tol)?;
        if tp.deg() != 1 {
            return Err(Error::Certificate("no linear left factor of the norm factor".into()));
        }
        let p = -tp.coeff(0);
        let q = match q {
            Some(q) if !q.commutes_with(&p, tol) => q,
            Some(_) => return Err(Error::PreconditionViolated("q commutes with p".into())),
            None => default_q(&p, tol)?,
        };
        &q_l.mul_left(&q) - &q_l.mul_right(&q)
    } else {
        QuatPoly::zero()
    };
    let cq = c.to_quat();
    let d_r = real_quotient(&(&(&cq * &(&d_l.conj() * &big_q)) + &(&q_l.conj() * &d)), &g, tol)?;
    let q_r = real_quotient(&(&q_l.conj() * &big_q), &g, tol)?;
    let q_c = lgcd(&cq, &d_r, tol)?;
    let q_cb = q_c.conj();
    let m_r = MotionPoly::from_parts_unchecked(&(&q_cb * &q_r), &real_quotient(&(&q_cb * &d_r), &c, tol)?);
    let ls = gfactor(&m_r, tol)?;
    let k = c.deg() / 2;
    let chain_poly = |hs: &[DualQuaternion<S>]| MotionPoly::new_unchecked(FactorChain::monic(hs.to_vec()).product());
    let center_tail = chain_poly(&ls[..k]);
    let q_c_motion = MotionPoly::from_parts_unchecked(&q_c, &QuatPoly::zero());
    Ok(FactorTriple {
        left: MotionPoly::from_parts_unchecked(&q_l, &d_l),
        center: q_c_motion.mul(&center_tail),
        right: chain_poly(&ls[k..]),
        center_split: (q_c_motion, center_tail),
    })
}

/// Linear factorization of a bounded monic reduced polynomial with primary
/// norm that satisfies the criterion.
pub fn factor_primary<S: Scalar>(m: &MotionPoly<S>, tol: &Tolerance) -> Result<FactorChain<S>> {
    if m.is_generic(tol)? {
        return Ok(FactorChain::monic(gfactor(m, tol)?));
    }
    let report = check_factorizable(m, tol)?;
    if !report.factorizable {
        return Err(Error::CriterionFailed);
    }
    if !divides(&report.g_l, &report.g_r, tol)? {
        let chain = factor_primary(&m.conj(), tol)?;
        return Ok(FactorChain::monic(conj_reverse(chain.factors)));
    }
    let triple = factor3(m, tol)?;
    let mut out = gfactor(&triple.left, tol)?;
    out.extend(gfactor(&triple.center_split.0, tol)?);
    out.extend(gfactor(&triple.center_split.1, tol)?);
    out.extend(gfactor(&triple.right, tol)?);
    Ok(FactorChain::monic(out))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Rational;

    fn tol() -> Tolerance {
        Tolerance::default()
    }

    fn mp(s: &str) -> MotionPoly<Rational> {
        MotionPoly::parse(s, &tol()).unwrap()
    }

    fn rp(c: &[i64]) -> RealPoly<Rational> {
        RealPoly::from_i64s(c)
    }

    #[test]
    fn translational_split_examples() {
        let m = mp("(t^2+1)(t^2+4)+eps*(i(t^2+4)+j(t^2+1))");
        let (a, b) = translational_split(&m, &rp(&[1, 0, 1]), &rp(&[4, 0, 1]), &tol()).unwrap();
        assert_eq!(a, mp("t^2+1+eps*i"));
        assert_eq!(b, mp("t^2+4+eps*j"));
        let m = mp("t^2+1+eps*i");
        let (a, b) = translational_split(&m, &rp(&[1]), &rp(&[1, 0, 1]), &tol()).unwrap();
        assert_eq!((a, b), (MotionPoly::one(), m.clone()));
        let (a, b) = translational_split(&m, &rp(&[1, 0, 1]), &rp(&[1]), &tol()).unwrap();
        assert_eq!((a, b), (m, MotionPoly::one()));
        assert!(translational_split(&mp("(t-i)(t+i)+eps*i"), &rp(&[1, 0, 1]), &rp(&[1]), &tol()).is_ok());
        assert!(matches!(
            translational_split(&mp("(t-i)(t-j)"), &rp(&[1, 0, 1]), &rp(&[1, 0, 1]), &tol()),
            Err(Error::NotTranslational)
        ));
    }

    #[test]
    fn mgfactor_examples() {
        let m = mp("(t-i)(t-2j)");
        let dec = mgfactor(&m, &tol()).unwrap();
        assert_eq!(dec.factors.len(), 2);
        assert_eq!(dec.factors[0].n, rp(&[4, 0, 1]));
        assert_eq!(dec.factors[1].n, rp(&[1, 0, 1]));
        assert_eq!(dec.product(), m);
        let m = mp("(t-i)(t-j)");
        assert_eq!(mgfactor(&m, &tol()).unwrap().factors.len(), 1);
        assert!(mgfactor(&MotionPoly::<Rational>::one(), &tol()).unwrap().factors.is_empty());
    }

    #[test]
    fn factor3_comprehensive_example() {
        let m = mp("(t^2+1)(t-i)^2+eps*i(t-i)^2");
        let tr = factor3(&m, &tol()).unwrap();
        assert_eq!(tr.left, mp("t-i+eps*j"));
        assert_eq!(tr.center, mp("(t+(3i+4k)/5)(t-(3i+4k)/5-eps*5j/4)"));
        assert_eq!(tr.right, mp("t-i+eps*j/4"));
        assert_eq!(tr.left.mul(&tr.center).mul(&tr.right), m);
    }

    #[test]
    fn factor3_translational_branch() {
        let m = mp("t^2+1+eps*(i t+j)");
        let tr = factor3(&m, &tol()).unwrap();
        assert_eq!(tr.center, m);
        assert_eq!(tr.center_split, (mp("t+k"), mp("t-k+eps*i")));
        let chain = factor_primary(&m, &tol()).unwrap();
        assert_eq!(chain.product(), *m.poly());
        assert_eq!(chain.len(), 2);
    }

    #[test]
    fn factor3_contract_cases() {
        assert!(matches!(factor3(&mp("(t-i)(t-j)"), &tol()), Err(Error::PreconditionViolated(_))));
        assert!(matches!(factor3(&mp("t^2+1+eps*i"), &tol()), Err(Error::CriterionFailed)));
    }
}
