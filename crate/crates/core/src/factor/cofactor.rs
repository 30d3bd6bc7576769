//! Multiplying by the co-factor, and linear factors of real polynomials.

use crate::algebra::{DualQuaternion, Quaternion, Ring, Scalar, Tolerance};
use crate::error::{Error, Result};
use crate::poly::{QuatPoly, RealPoly};
use crate::qpoly::MotionPoly;
use crate::rpoly::{exact_quotient, quad_factorization};

use super::generic::quadratic_sequence;
use super::{check_factorizable, conj_reverse, primal_factor, run_strategy, Strategy};

/// Largest `m` tried when searching `x² + y² + z² = ρ m²`.
const MAX_DENOM: i64 = 48;
/// Largest `ρ m²` searched by brute force.
const MAX_TARGET: i64 = 200_000;

/// Linear factorization of `m · gp`, where `gp` is the co-factor of `m`.
pub(crate) fn factor_times_cofactor<S: Scalar>(
    m: &MotionPoly<S>,
    gp: &RealPoly<S>,
    strategy: Strategy,
    tol: &Tolerance,
) -> Result<Vec<DualQuaternion<S>>> {
    if gp.deg() == 0 {
        return run_strategy(m, strategy, tol);
    }
    let n = quadratic_sequence(gp, tol)?.remove(0);
    let rest = exact_quotient(gp, &n, tol)?;
    let points = rational_points(&n, tol)?;
    for side in [false, true] {
        let cur = if side { m.conj() } else { m.clone() };
        for p in &points {
            let next = cur.mul(&MotionPoly::from_parts_unchecked(&QuatPoly::linear(p.clone()), &QuatPoly::zero()));
            if !next.is_reduced(tol)? {
                continue;
            }
            let report = check_factorizable(&next, tol)?;
            if report.cofactor != rest {
                continue;
            }
            let mut out = factor_times_cofactor(&next, &rest, strategy, tol)?;
            out.push(primal_factor(p.conj()));
            return Ok(if side { conj_reverse(out) } else { out });
        }
    }
    Err(Error::NoRationalRoot(format!("no quaternion root of {n} absorbs the co-factor")))
}

/// Monic linear factors of the real polynomial `w`: real roots as scalar
/// factors, each quadratic as `(t - p)(t - conj p)`.
pub(crate) fn central_factors<S: Scalar>(w: &RealPoly<S>, tol: &Tolerance) -> Result<Vec<DualQuaternion<S>>> {
    let mut out = Vec::new();
    if w.deg() == 0 {
        return Ok(out);
    }
    for (f, mult) in &quad_factorization(w, tol)?.factors {
        for _ in 0..*mult {
            if f.deg() == 1 {
                out.push(primal_factor(Quaternion::real(-f.coeff(0))));
            } else {
                let p = rational_point(f, tol)?;
                out.push(primal_factor(p.clone()));
                out.push(primal_factor(p.conj()));
            }
        }
    }
    Ok(out)
}

/// Splits a monic quadratic `t² + bt + c` as `(p0, ρ)` with `p0 = -b/2`
/// and `ρ = c - p0²`.
fn center_radius<S: Scalar>(n: &RealPoly<S>, tol: &Tolerance) -> Result<(S, S)> {
    if n.deg() != 2 || !n.is_monic() {
        return Err(Error::PreconditionViolated(format!("{n} is not a monic quadratic")));
    }
    let p0 = -(n.coeff(1) * S::from_ratio(1, 2));
    let rho = n.coeff(0) - p0.clone() * p0.clone();
    if rho.sign(n.magnitude(), tol) <= 0 {
        return Err(Error::NotBounded);
    }
    Ok((p0, rho))
}

/// A quaternion root of the irreducible quadratic `n`, i.e.
/// `n = (t - p)(t - conj p)`.
pub fn rational_point<S: Scalar>(n: &RealPoly<S>, tol: &Tolerance) -> Result<Quaternion<S>> {
    let (p0, rho) = center_radius(n, tol)?;
    let u = base_vector(&rho).ok_or_else(|| Error::NoRationalRoot(format!("{n}")))?;
    Ok(Quaternion::real(p0) + u)
}

/// A family of quaternion roots of `n`: signed permutations of a base root
/// followed by its images under small integer rotations, without repeats.
pub fn rational_points<S: Scalar>(n: &RealPoly<S>, tol: &Tolerance) -> Result<Vec<Quaternion<S>>> {
    let (p0, rho) = center_radius(n, tol)?;
    let u = base_vector(&rho).ok_or_else(|| Error::NoRationalRoot(format!("{n}")))?;
    let mut out: Vec<Quaternion<S>> = Vec::new();
    let mut push = |v: Quaternion<S>| {
        let p = Quaternion::real(p0.clone()) + v;
        if !out.contains(&p) {
            out.push(p);
        }
    };
    let [_, x, y, z] = u.to_array();
    for perm in [[0, 1, 2], [1, 2, 0], [2, 0, 1], [1, 0, 2], [0, 2, 1], [2, 1, 0]] {
        for signs in 0..8 {
            let c = [&x, &y, &z];
            let comp = |k: usize| {
                let v = c[perm[k]].clone();
                if signs >> k & 1 == 1 {
                    -v
                } else {
                    v
                }
            };
            push(Quaternion::vector(comp(0), comp(1), comp(2)));
        }
    }
    let r = 2i64;
    for a in -r..=r {
        for b in -r..=r {
            for c in -r..=r {
                for d in 0..=r {
                    let s = Quaternion::new(S::from_i64(d), S::from_i64(a), S::from_i64(b), S::from_i64(c));
                    if s.is_zero() {
                        continue;
                    }
                    let inv = s.norm().inverse().expect("nonzero norm");
                    push((s.clone() * u.clone() * s.conj()).scale(&inv));
                }
            }
        }
    }
    Ok(out)
}

/// A vector quaternion of squared length `rho`.
fn base_vector<S: Scalar>(rho: &S) -> Option<Quaternion<S>> {
    if let Some(s) = rho.sqrt() {
        return Some(Quaternion::vector(s, S::zero(), S::zero()));
    }
    for m in 1..=MAX_DENOM {
        let target = rho.clone() * S::from_i64(m * m);
        let approx = target.to_f64().round();
        if !(1.0..=MAX_TARGET as f64).contains(&approx) || S::from_i64(approx as i64) != target {
            continue;
        }
        if let Some([x, y, z]) = three_squares(approx as i64) {
            let f = |v: i64| S::from_ratio(v, m);
            return Some(Quaternion::vector(f(x), f(y), f(z)));
        }
    }
    None
}

/// `x² + y² + z² = n` with `x ≥ y ≥ z ≥ 0`.
fn three_squares(n: i64) -> Option<[i64; 3]> {
    let isqrt = |v: i64| {
        let mut r = (v as f64).sqrt() as i64;
        while r * r > v {
            r -= 1;
        }
        while (r + 1) * (r + 1) <= v {
            r += 1;
        }
        r
    };
    for x in (0..=isqrt(n)).rev() {
        let rem = n - x * x;
        for y in (0..=isqrt(rem).min(x)).rev() {
            let z2 = rem - y * y;
            let z = isqrt(z2);
            if z * z == z2 && z <= y {
                return Some([x, y, z]);
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Rational;

    fn tol() -> Tolerance {
        Tolerance::default()
    }

    #[test]
    fn points_are_roots() {
        for c in [[1, 0, 1], [2, 0, 1], [3, 2, 1], [14, 0, 1], [6, 0, 1]] {
            let n = RealPoly::<Rational>::from_i64s(&c);
            let pts = rational_points(&n, &tol()).unwrap();
            assert!(pts.len() > 3);
            for p in pts {
                let lin = QuatPoly::linear(p.clone());
                assert_eq!(&lin * &QuatPoly::linear(p.conj()), n.to_quat());
            }
        }
        assert!(rational_point(&RealPoly::<Rational>::from_i64s(&[7, 0, 1]), &tol()).is_err());
    }

    #[test]
    fn central_factors_multiply_back() {
        let w = RealPoly::<Rational>::from_i64s(&[-2, 1]) * RealPoly::from_i64s(&[5, 2, 1]);
        let hs = central_factors(&w, &tol()).unwrap();
        assert_eq!(hs.len(), 3);
        assert_eq!(super::super::FactorChain::monic(hs).product(), w.to_dual());
    }
}
