//! Random instances shared by the integration tests.
#![allow(dead_code)]

use motionfactor::algebra::{DualQuaternion, Quaternion, Rational, Ring, Scalar, Tolerance};
use motionfactor::poly::{QuatPoly, RealPoly};
use motionfactor::qpoly::MotionPoly;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type Q = Quaternion<Rational>;
pub type DQ = DualQuaternion<Rational>;
pub type M = MotionPoly<Rational>;

pub fn tol() -> Tolerance {
    Tolerance::default()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn r(n: i64) -> Rational {
    Rational::from_i64(n)
}

pub fn mp(s: &str) -> M {
    MotionPoly::parse(s, &tol()).unwrap()
}

pub fn int_quat(rng: &mut impl Rng, b: i64) -> Q {
    Q::new(r(rng.gen_range(-b..=b)), r(rng.gen_range(-b..=b)), r(rng.gen_range(-b..=b)), r(rng.gen_range(-b..=b)))
}

/// Nonzero integer vector quaternion.
pub fn int_vector(rng: &mut impl Rng, b: i64) -> Q {
    loop {
        let v = int_quat(rng, b).vector_part();
        if v.norm() != r(0) {
            return v;
        }
    }
}

fn cross(a: &Q, b: &Q) -> Q {
    let c = a.clone() * b.clone() - b.clone() * a.clone();
    c.scale(&Rational::from_ratio(1, 2))
}

/// `h = p + εd` with nonreal `p`, satisfying the Study condition, drawn
/// from a small pool so that norms repeat often.
pub fn linear_h(rng: &mut impl Rng) -> DQ {
    let p = Q::real(r(rng.gen_range(-1..=1))) + int_vector(rng, 1);
    let d = if rng.gen_bool(0.75) { cross(&p.vector_part(), &int_vector(rng, 2)) } else { Q::real(r(0)) };
    DQ::new(p, d)
}

pub fn linear(h: &DQ) -> M {
    MotionPoly::linear(h.clone(), &tol()).unwrap()
}

/// Random product of `1..=max` linear factors that is reduced.
pub fn random_product(rng: &mut impl Rng, max: usize) -> M {
    loop {
        let n = rng.gen_range(1..=max);
        let mut hs: Vec<DQ> = Vec::with_capacity(n);
        while hs.len() < n {
            let h = linear_h(rng);
            if hs.len() + 2 <= n && rng.gen_bool(0.4) {
                // Conjugate primal parts make the primal part non-generic.
                let p = h.primal.conj();
                let d = cross(&p.vector_part(), &int_vector(rng, 2));
                hs.push(h);
                hs.push(DQ::new(p, d));
            } else {
                hs.push(h);
            }
        }
        let m = MotionPoly::product(hs.iter().map(linear).collect::<Vec<_>>().iter());
        if m.is_reduced(&tol()).unwrap() {
            return m;
        }
    }
}

/// Monic real polynomial without real roots: a product of
/// `(t + β)² + ρ` with `ρ` a sum of three rational squares, so that every
/// factor has rational quaternion roots.
pub fn rootless(rng: &mut impl Rng, quadratics: usize) -> RealPoly<Rational> {
    let mut s = RealPoly::one();
    for _ in 0..quadratics {
        let beta = rng.gen_range(-2..=2);
        let rho = rng.gen_range(1..=6);
        s = s * RealPoly::from_i64s(&[beta * beta + rho, 2 * beta, 1]);
    }
    s
}

/// Bounded polynomial that usually does not factor: a random product
/// with a translational factor `N + εv` inserted.
pub fn random_bounded(rng: &mut impl Rng) -> M {
    loop {
        let left = random_product(rng, 2);
        let right = random_product(rng, 2);
        let n = rootless(rng, 1);
        let v = int_vector(rng, 2);
        let mid = MotionPoly::from_parts(&n.to_quat(), &QuatPoly::constant(v), &tol()).unwrap();
        let m = left.mul(&mid).mul(&right);
        if m.is_reduced(&tol()).unwrap() {
            return m;
        }
    }
}

/// Largest coefficientwise relative error of `a` against `b`.
pub fn rel_error(a: &[f64], b: &[f64]) -> f64 {
    let scale = b.iter().fold(1e-300f64, |acc, x| acc.max(x.abs()));
    a.iter().zip(b).fold(0.0f64, |acc, (x, y)| acc.max((x - y).abs() / scale))
}
