//! Factorization by peeling one linear left factor at a time.

use crate::algebra::{DualQuaternion, Quaternion, Scalar, Tolerance};
use crate::error::{Error, Result};
use crate::poly::{QuatPoly, Side};
use crate::qpoly::{lgcd, mrpf, quotient, real_quotient, MotionPoly};
use crate::rpoly::quad_factorization;

use super::generic::gfactor;
use super::{conj_reverse, tau};

/// Factors a monic reduced bounded polynomial that satisfies the criterion.
pub fn factor4<S: Scalar>(m: &MotionPoly<S>, tol: &Tolerance) -> Result<Vec<DualQuaternion<S>>> {
    if !m.is_monic() {
        return Err(Error::NotMonic);
    }
    let mut out = Vec::with_capacity(m.deg());
    let mut cur = m.clone();
    loop {
        if cur.deg() == 0 {
            return Ok(out);
        }
        let p = cur.primal();
        let c = mrpf(&[p], tol)?;
        if c.deg() == 0 {
            out.extend(gfactor(&cur, tol)?);
            return Ok(out);
        }
        let qf = quad_factorization(&c, tol)?;
        let n = match qf.quadratics().next() {
            Some((n, _)) if qf.linears().next().is_none() => n.clone(),
            _ => return Err(Error::NotBounded),
        };
        let d = cur.dual();
        let pb = p.conj();
        if tau(&(d * &pb), &n, tol)? < tau(&(&pb * d), &n, tol)? {
            let mut rest = conj_reverse(factor4(&cur.conj(), tol)?);
            out.append(&mut rest);
            return Ok(out);
        }
        let tp = lgcd(&n.to_quat(), d, tol)?;
        if tp.deg() != 1 {
            return Err(Error::Certificate(format!("no linear left factor of {n} divides the dual part")));
        }
        let pq = -tp.coeff(0);
        let p1 = quotient(p, &tp, Side::Left, tol)?;
        let d1 = quotient(d, &tp, Side::Left, tol)?;
        let tp_ = tau(p, &n, tol)?;
        if tau(&p1, &n, tol)? < tp_ || tau(&(&pb * d), &n, tol)? <= 2 * tp_ {
            out.push(DualQuaternion::from_primal(pq));
            cur = MotionPoly::from_parts_unchecked(&p1, &d1);
        } else {
            let q = dual_shift(&pq, tol)?;
            let extra = real_quotient(&(&QuatPoly::constant(q.clone()) * p), &n, tol)?;
            out.push(DualQuaternion::new(pq, q));
            cur = MotionPoly::from_parts_unchecked(&p1, &(&d1 + &extra));
        }
    }
}

/// `q = p v - v p` for the first basis vector `v` not commuting with `p`;
/// it satisfies `conj(p) q = q p`.
fn dual_shift<S: Scalar>(p: &Quaternion<S>, tol: &Tolerance) -> Result<Quaternion<S>> {
    (1..4)
        .map(Quaternion::basis)
        .find(|v| !p.commutes_with(v, tol))
        .map(|v| p.commutator(&v))
        .ok_or_else(|| Error::PreconditionViolated(format!("{p} is real")))
}
