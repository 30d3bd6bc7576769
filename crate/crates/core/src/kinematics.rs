//! Action of motion polynomials on points.

use std::fmt::Write as _;

use crate::algebra::{Mode, Quaternion, Ring, Scalar, Tolerance};
use crate::error::{Error, Result};
use crate::qpoly::MotionPoly;

/// Point of Euclidean three-space, acted on as the vector quaternion
/// `x i + y j + z k`.
#[derive(Clone, Debug, PartialEq)]
pub struct Point3<S> {
    pub x: S,
    pub y: S,
    pub z: S,
}

impl<S: Scalar> Point3<S> {
    pub fn new(x: S, y: S, z: S) -> Self {
        Point3 { x, y, z }
    }

    pub fn origin() -> Self {
        Point3::new(S::zero(), S::zero(), S::zero())
    }

    pub fn from_i64s(x: i64, y: i64, z: i64) -> Self {
        Point3::new(S::from_i64(x), S::from_i64(y), S::from_i64(z))
    }

    pub fn to_quaternion(&self) -> Quaternion<S> {
        Quaternion::vector(self.x.clone(), self.y.clone(), self.z.clone())
    }

    fn from_quaternion(q: &Quaternion<S>) -> Self {
        Point3::new(q.x.clone(), q.y.clone(), q.z.clone())
    }

    pub fn norm_squared(&self) -> S {
        self.to_quaternion().norm()
    }

    /// Agreement: equality in exact mode, tolerance in float mode.
    pub fn approx_eq(&self, other: &Self, tol: &Tolerance) -> bool {
        match S::MODE {
            Mode::Exact => self == other,
            Mode::Float => {
                let d = self.to_quaternion() - other.to_quaternion();
                let scale = self.to_quaternion().magnitude().max(other.to_quaternion().magnitude());
                d.is_negligible(scale, tol)
            }
        }
    }
}

/// Image of `pt` under the motion `m` at parameter `t`:
/// `(P x conj(P) + P conj(D) - D conj(P)) / (P conj(P))` with `P`, `D`
/// evaluated at `t`.
pub fn act_point<S: Scalar>(m: &MotionPoly<S>, pt: &Point3<S>, t: &S, tol: &Tolerance) -> Result<Point3<S>> {
    let p = m.primal().eval(t);
    let d = m.dual().eval(t);
    let n = p.norm();
    if n.is_negligible(p.magnitude() * p.magnitude(), tol) {
        return Err(Error::NormVanishes);
    }
    let inv = n.inverse().ok_or(Error::NormVanishes)?;
    let x = pt.to_quaternion();
    let y = p.clone() * x * p.conj() + p.clone() * d.conj() - d * p.conj();
    Ok(Point3::from_quaternion(&y.scale(&inv)))
}

pub fn sample_trajectory<S: Scalar>(
    m: &MotionPoly<S>,
    pt: &Point3<S>,
    ts: &[S],
    tol: &Tolerance,
) -> Result<Vec<Point3<S>>> {
    ts.iter().map(|t| act_point(m, pt, t, tol)).collect()
}

/// Whether both polynomials move every sample point identically at every
/// sample parameter.
pub fn motions_equal<S: Scalar>(
    m1: &MotionPoly<S>,
    m2: &MotionPoly<S>,
    ts: &[S],
    pts: &[Point3<S>],
    tol: &Tolerance,
) -> Result<bool> {
    if ts.is_empty() || pts.is_empty() {
        return Err(Error::PreconditionViolated("empty sample set".into()));
    }
    for t in ts {
        for pt in pts {
            if !act_point(m1, pt, t, tol)?.approx_eq(&act_point(m2, pt, t, tol)?, tol) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// CSV with header `t,x,y,z`, one row per sample.
pub fn trajectory_csv<S: Scalar>(ts: &[S], pts: &[Point3<S>]) -> String {
    let mut out = String::from("t,x,y,z\n");
    for (t, p) in ts.iter().zip(pts) {
        let _ = writeln!(out, "{},{},{},{}", t.to_f64(), p.x.to_f64(), p.y.to_f64(), p.z.to_f64());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Rational;

    type P = Point3<Rational>;

    fn tol() -> Tolerance {
        Tolerance::default()
    }

    fn mp(s: &str) -> MotionPoly<Rational> {
        MotionPoly::parse(s, &tol()).unwrap()
    }

    fn r(n: i64) -> Rational {
        Rational::from_i64(n)
    }

    #[test]
    fn act_examples() {
        let pt = P::from_i64s(3, -1, 2);
        assert_eq!(act_point(&MotionPoly::one(), &pt, &r(5), &tol()).unwrap(), pt);
        assert_eq!(act_point(&mp("t-i"), &P::from_i64s(0, 1, 0), &r(0), &tol()).unwrap(), P::from_i64s(0, -1, 0));
        assert_eq!(act_point(&mp("1-eps*i/2"), &P::origin(), &r(7), &tol()).unwrap(), P::from_i64s(1, 0, 0));
    }

    #[test]
    fn trajectory_examples() {
        let pt = P::from_i64s(1, 2, 3);
        let ts = [r(0), r(1), r(2)];
        assert_eq!(sample_trajectory(&MotionPoly::one(), &pt, &ts, &tol()).unwrap(), vec![pt.clone(); 3]);
        assert_eq!(
            sample_trajectory(&mp("t-i"), &P::from_i64s(0, 1, 0), &[r(0)], &tol()).unwrap(),
            vec![P::from_i64s(0, -1, 0)]
        );
        assert!(sample_trajectory(&mp("t-i"), &pt, &[], &tol()).unwrap().is_empty());
        let csv = trajectory_csv(&ts, &[pt.clone(), pt.clone(), pt]);
        assert_eq!(csv.lines().next(), Some("t,x,y,z"));
        assert_eq!(csv.lines().nth(2), Some("1,1,2,3"));
    }

    #[test]
    fn equality_examples() {
        let ts: Vec<Rational> = (-2..3).map(r).collect();
        let pts = [P::from_i64s(0, 1, 0), P::from_i64s(1, 2, 3)];
        let m = mp("(t-i)(t-2j+eps*k)");
        assert!(motions_equal(&m, &m, &ts, &pts, &tol()).unwrap());
        let scaled = m.mul_real(&crate::poly::RealPoly::from_i64s(&[1, 0, 1]));
        assert!(motions_equal(&m, &scaled, &ts, &pts, &tol()).unwrap());
        assert!(!motions_equal(&MotionPoly::one(), &mp("t-i"), &[r(0)], &pts[..1], &tol()).unwrap());
    }

    #[test]
    fn vanishing_norm() {
        assert_eq!(act_point(&mp("t-1"), &P::origin(), &r(1), &tol()), Err(Error::NormVanishes));
    }
}
