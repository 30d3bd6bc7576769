//! Real polynomial utilities: gcds, square-free decomposition and the
//! factorization into monic real linear and irreducible quadratic factors.

use std::cmp::Ordering;

use num_complex::Complex64;

use crate::algebra::{Mode, Scalar, Tolerance};
use crate::error::{Error, Result};
use crate::poly::{RealPoly, Side};

/// Multiplicity-aware factorization `unit · ∏ factor^mult`.
#[derive(Clone, Debug, PartialEq)]
pub struct QuadFactorization<S> {
    pub factors: Vec<(RealPoly<S>, usize)>,
    pub unit: S,
}

impl<S: Scalar> QuadFactorization<S> {
    /// Irreducible quadratic factors in the deterministic order.
    pub fn quadratics(&self) -> impl Iterator<Item = &(RealPoly<S>, usize)> {
        self.factors.iter().filter(|(f, _)| f.deg() == 2)
    }

    pub fn linears(&self) -> impl Iterator<Item = &(RealPoly<S>, usize)> {
        self.factors.iter().filter(|(f, _)| f.deg() == 1)
    }

    pub fn product(&self) -> RealPoly<S> {
        self.factors
            .iter()
            .fold(RealPoly::constant(self.unit.clone()), |acc, (f, m)| acc * f.pow(*m))
    }
}

pub fn monic<S: Scalar>(p: &RealPoly<S>) -> Result<RealPoly<S>> {
    p.monic(Side::Right)
}

/// Quotient of a division known to be exact. Exact mode verifies that the
/// remainder vanishes; float mode drops the rounding residue.
pub fn exact_quotient<S: Scalar>(a: &RealPoly<S>, b: &RealPoly<S>, tol: &Tolerance) -> Result<RealPoly<S>> {
    let d = a.div_rem(b, Side::Right)?;
    match S::MODE {
        Mode::Exact if !d.remainder.is_zero() => {
            Err(Error::Certificate(format!("{b} does not divide {a}")))
        }
        Mode::Exact => Ok(d.quotient),
        Mode::Float => Ok(d.quotient.trim(a.magnitude(), tol)),
    }
}

/// Whether `b` divides `a`, with the float zero test applied to the
/// remainder against the magnitude of `a`.
pub fn divides<S: Scalar>(b: &RealPoly<S>, a: &RealPoly<S>, tol: &Tolerance) -> Result<bool> {
    b.divides(a, Side::Right, tol)
}

/// Monic greatest common divisor.
pub fn rp_gcd<S: Scalar>(a: &RealPoly<S>, b: &RealPoly<S>, tol: &Tolerance) -> Result<RealPoly<S>> {
    let scale = a.magnitude().max(b.magnitude());
    let (a, b) = (&a.trim(scale, tol), &b.trim(scale, tol));
    match (a.is_zero(), b.is_zero()) {
        (true, true) => return Err(Error::BothZero),
        (false, true) => return monic(a),
        (true, false) => return monic(b),
        _ => {}
    }
    let (mut x, mut y) = if a.deg() >= b.deg() { (monic(a)?, monic(b)?) } else { (monic(b)?, monic(a)?) };
    loop {
        let r = x.rem(&y, Side::Right)?.trim(x.magnitude(), tol);
        if r.is_zero() {
            return Ok(y);
        }
        x = std::mem::replace(&mut y, monic(&r)?);
    }
}

/// Gcd of several polynomials, ignoring zeros; the gcd of nothing is 1.
pub fn rp_gcd_all<'a, S: Scalar>(
    polys: impl IntoIterator<Item = &'a RealPoly<S>>,
    tol: &Tolerance,
) -> Result<RealPoly<S>> {
    let polys: Vec<&RealPoly<S>> = polys.into_iter().collect();
    let scale = polys.iter().map(|p| p.magnitude()).fold(0.0, f64::max);
    let mut g: Option<RealPoly<S>> = None;
    for p in polys {
        let p = &p.trim(scale, tol);
        if p.is_zero() {
            continue;
        }
        let next = match &g {
            None => monic(p)?,
            Some(g) => rp_gcd(g, p, tol)?,
        };
        if next.is_one() {
            return Ok(next);
        }
        g = Some(next);
    }
    Ok(g.unwrap_or_else(RealPoly::one))
}

/// Extended gcd `(g, x, y)` with `x·a + y·b = g`, `g` monic.
pub fn rp_gcd_ext<S: Scalar>(
    a: &RealPoly<S>,
    b: &RealPoly<S>,
    tol: &Tolerance,
) -> Result<(RealPoly<S>, RealPoly<S>, RealPoly<S>)> {
    if a.is_zero() && b.is_zero() {
        return Err(Error::BothZero);
    }
    // Rows (r, x, y) with r = x·a + y·b.
    let mut r0 = (a.clone(), RealPoly::one(), RealPoly::zero());
    let mut r1 = (b.clone(), RealPoly::zero(), RealPoly::one());
    if r0.0.deg() < r1.0.deg() || r0.0.is_zero() {
        std::mem::swap(&mut r0, &mut r1);
    }
    while !r1.0.is_zero() {
        let scale = r0.0.magnitude();
        let d = r0.0.div_rem(&r1.0, Side::Right)?;
        let r = d.remainder.trim(scale, tol);
        let x = &r0.1 - &(&d.quotient * &r1.1);
        let y = &r0.2 - &(&d.quotient * &r1.2);
        r0 = std::mem::replace(&mut r1, (r, x, y));
    }
    let lc = r0.0.leading().cloned().ok_or(Error::BothZero)?;
    let inv = lc.inverse().ok_or(Error::NonInvertibleLeading)?;
    Ok((r0.0.scale(&inv), r0.1.scale(&inv), r0.2.scale(&inv)))
}

/// Yun's square-free decomposition of the monic associate of `f`.
/// Returns `(part, multiplicity)` pairs with nonconstant, pairwise coprime,
/// square-free parts.
pub fn squarefree_decompose<S: Scalar>(f: &RealPoly<S>, tol: &Tolerance) -> Result<Vec<(RealPoly<S>, usize)>> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let f = monic(f)?;
    let mut out = Vec::new();
    if f.deg() == 0 {
        return Ok(out);
    }
    let df = f.derivative();
    let a0 = rp_gcd(&f, &df, tol)?;
    let mut b = exact_quotient(&f, &a0, tol)?;
    let c = exact_quotient(&df, &a0, tol)?;
    let mut d = &c - &b.derivative();
    let mut i = 1;
    while b.deg() > 0 {
        if i > f.deg() {
            return Err(Error::Certificate(format!("square-free decomposition of {f} does not terminate")));
        }
        // `d` vanishes in theory once only the top multiplicity is left.
        let done = d.is_negligible(b.magnitude(), &tol.certificate());
        let a = if done { monic(&b)? } else { rp_gcd(&b, &d, tol)? };
        let nb = exact_quotient(&b, &a, tol)?;
        let c = if done { RealPoly::zero() } else { exact_quotient(&d, &a, tol)? };
        if a.deg() > 0 {
            out.push((a, i));
        }
        d = &c - &nb.derivative();
        b = nb;
        i += 1;
    }
    Ok(out)
}

/// Complete factorization into monic real linear and irreducible quadratic
/// factors, sorted by `(Re root, |Im root|)`.
///
/// Roots of each square-free part come from simultaneous iteration in
/// floating point. Exact mode snaps the resulting coefficients to rationals
/// and insists that they divide the part exactly.
pub fn quad_factorization<S: Scalar>(f: &RealPoly<S>, tol: &Tolerance) -> Result<QuadFactorization<S>> {
    let unit = f.leading().cloned().ok_or(Error::ZeroPolynomial)?;
    let full: Vec<f64> = f.coeffs().iter().map(Scalar::to_f64).collect();
    let mut keyed: Vec<((f64, f64), RealPoly<S>, usize)> = Vec::new();
    let parts = match S::MODE {
        Mode::Exact => squarefree_decompose(f, tol)?,
        Mode::Float => {
            for (re, im, mult) in multiple_roots(&full)? {
                let (re, im) = polish_root(&full, mult, re, im);
                let factor = if im == 0.0 {
                    float_factor::<S>(&[-re, 1.0])?
                } else {
                    float_factor::<S>(&[re * re + im * im, -2.0 * re, 1.0])?
                };
                keyed.push(((re, im), factor, mult));
            }
            Vec::new()
        }
    };
    for (part, mult) in parts {
        let coeffs: Vec<f64> = part.coeffs().iter().map(Scalar::to_f64).collect();
        let roots = polynomial_roots(&coeffs)?;
        let mut found = Vec::new();
        for (re, im) in cluster_roots(&roots, &coeffs)? {
            let (re, im) = polish_root(&full, mult, re, im);
            let factor = if im == 0.0 {
                float_factor::<S>(&[-re, 1.0])?
            } else {
                float_factor::<S>(&[re * re + im * im, -2.0 * re, 1.0])?
            };
            found.push(((re, im), factor));
        }
        if S::MODE == Mode::Exact {
            let prod = found.iter().fold(RealPoly::one(), |acc, (_, p)| acc * p.clone());
            if prod != part {
                return Err(Error::ExactFactorizationUnavailable(format!(
                    "the factors of {part} are not all rational"
                )));
            }
        }
        keyed.extend(found.into_iter().map(|(k, p)| (k, p, mult)));
    }
    // Real parts closer than the root accuracy count as ties.
    keyed.sort_by(|a, b| {
        let ((ra, ia), (rb, ib)) = (a.0, b.0);
        if (ra - rb).abs() <= 1e-8 * ra.abs().max(rb.abs()).max(1.0) {
            ia.partial_cmp(&ib).unwrap_or(Ordering::Equal)
        } else {
            ra.partial_cmp(&rb).unwrap_or(Ordering::Equal)
        }
    });
    Ok(QuadFactorization { factors: keyed.into_iter().map(|(_, p, m)| (p, m)).collect(), unit })
}

/// Newton steps on the `(mult - 1)`-th derivative of `f`, where a root of
/// multiplicity `mult` is simple and hence well conditioned. Keeps the
/// input when the iteration leaves the cluster radius.
fn polish_root(f: &[f64], mult: usize, re: f64, im: f64) -> (f64, f64) {
    let mut d: Vec<f64> = f.to_vec();
    for _ in 1..mult {
        d = d.iter().enumerate().skip(1).map(|(k, c)| c * k as f64).collect();
    }
    let eval = |z: Complex64| {
        let mut p = Complex64::new(0.0, 0.0);
        let mut dp = Complex64::new(0.0, 0.0);
        for c in d.iter().rev() {
            dp = dp * z + p;
            p = p * z + c;
        }
        (p, dp)
    };
    let start = Complex64::new(re, im);
    let mut z = start;
    for _ in 0..50 {
        let (p, dp) = eval(z);
        if dp.norm() == 0.0 {
            break;
        }
        let step = p / dp;
        if !step.re.is_finite() || !step.im.is_finite() {
            return (re, im);
        }
        z -= step;
        if step.norm() <= 1e-16 * z.norm().max(1.0) {
            break;
        }
    }
    if (z - start).norm() > CLUSTER_RADIUS * start.norm().max(1.0) {
        return (re, im);
    }
    if im == 0.0 {
        (z.re, 0.0)
    } else {
        (z.re, z.im.abs())
    }
}

fn float_factor<S: Scalar>(coeffs: &[f64]) -> Result<RealPoly<S>> {
    let c = coeffs
        .iter()
        .map(|&x| {
            S::from_f64_approx(x).ok_or_else(|| {
                Error::ExactFactorizationUnavailable(format!("coefficient {x} has no small rational form"))
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(RealPoly::new(c))
}

/// Relative radius within which float roots count as one multiple root.
/// A root of multiplicity `m` under coefficient noise `δ` scatters by about
/// `δ^(1/m)`, far more than its centroid moves.
const CLUSTER_RADIUS: f64 = 1e-2;

/// Roots of a float polynomial grouped into multiple roots, as
/// `(re, im, multiplicity)` with `im = 0` for real roots and `im > 0` for a
/// conjugate pair. Each root is the centroid of its cluster.
fn multiple_roots(coeffs: &[f64]) -> Result<Vec<(f64, f64, usize)>> {
    let roots = polynomial_roots(coeffs)?;
    let scale = roots.iter().map(|z| z.norm()).fold(1.0, f64::max);
    let radius = CLUSTER_RADIUS * scale;
    // Single-linkage clustering by repeated merging into the first cluster
    // that lies within the radius.
    let mut label: Vec<usize> = (0..roots.len()).collect();
    for i in 0..roots.len() {
        for j in 0..i {
            if (roots[i] - roots[j]).norm() <= radius {
                let (from, to) = (label[i].max(label[j]), label[i].min(label[j]));
                label.iter_mut().filter(|l| **l == from).for_each(|l| *l = to);
            }
        }
    }
    let mut out = Vec::new();
    let mut lower = Vec::new();
    let mut seen: Vec<usize> = label.clone();
    seen.sort_unstable();
    seen.dedup();
    for l in seen {
        let members: Vec<Complex64> = (0..roots.len()).filter(|&i| label[i] == l).map(|i| roots[i]).collect();
        let centroid = members.iter().sum::<Complex64>() / members.len() as f64;
        if centroid.im.abs() <= radius {
            out.push((centroid.re, 0.0, members.len()));
        } else if centroid.im > 0.0 {
            out.push((centroid.re, centroid.im, members.len()));
        } else {
            lower.push((centroid.re, -centroid.im, members.len()));
        }
    }
    // Every complex cluster needs a conjugate partner of the same size.
    for (re, im, m) in &lower {
        let paired = out.iter().any(|&(r, i, k)| {
            i > 0.0 && k == *m && Complex64::new(r - re, i - im).norm() <= radius
        });
        if !paired {
            return Err(Error::RootFinding(format!("unpaired complex root of {coeffs:?}")));
        }
    }
    let pairs = out.iter().filter(|r| r.1 > 0.0).count();
    if pairs != lower.len() {
        return Err(Error::RootFinding(format!("unpaired complex root of {coeffs:?}")));
    }
    Ok(out)
}

/// Pairs complex roots into conjugates; returns `(re, im)` with `im = 0`
/// for real roots and `im > 0` representing a conjugate pair.
fn cluster_roots(roots: &[Complex64], coeffs: &[f64]) -> Result<Vec<(f64, f64)>> {
    let scale = roots.iter().map(|z| z.norm()).fold(1.0, f64::max);
    let window = 1e-7 * scale;
    let mut used = vec![false; roots.len()];
    let mut out = Vec::new();
    for i in 0..roots.len() {
        if used[i] {
            continue;
        }
        used[i] = true;
        let z = roots[i];
        if z.im.abs() <= window {
            out.push((z.re, 0.0));
            continue;
        }
        let partner = (0..roots.len())
            .filter(|&j| !used[j])
            .min_by(|&a, &b| {
                let da = (roots[a] - z.conj()).norm();
                let db = (roots[b] - z.conj()).norm();
                da.partial_cmp(&db).unwrap_or(Ordering::Equal)
            })
            .ok_or_else(|| Error::RootFinding(format!("unpaired complex root of {coeffs:?}")))?;
        let w = roots[partner];
        if (w - z.conj()).norm() > 1e-6 * scale {
            return Err(Error::RootFinding(format!("unpaired complex root of {coeffs:?}")));
        }
        used[partner] = true;
        let re = 0.5 * (z.re + w.re);
        let im = 0.5 * (z.im.abs() + w.im.abs());
        out.push((re, im));
    }
    Ok(out)
}

/// Aberth–Ehrlich simultaneous iteration for the roots of a polynomial with
/// ascending float coefficients.
pub fn polynomial_roots(coeffs: &[f64]) -> Result<Vec<Complex64>> {
    let n = coeffs.len().saturating_sub(1);
    let lead = *coeffs.last().ok_or(Error::ZeroPolynomial)?;
    if n == 0 {
        return Ok(Vec::new());
    }
    let a: Vec<Complex64> = coeffs.iter().map(|&c| Complex64::new(c / lead, 0.0)).collect();
    if n == 1 {
        return Ok(vec![-a[0]]);
    }
    let eval = |z: Complex64| {
        let mut p = Complex64::new(0.0, 0.0);
        let mut dp = Complex64::new(0.0, 0.0);
        for c in a.iter().rev() {
            dp = dp * z + p;
            p = p * z + c;
        }
        (p, dp)
    };
    // Cauchy bound for the initial circle, rotated off the axes.
    let radius = 1.0 + a[..n].iter().map(|c| c.norm()).fold(0.0, f64::max);
    let radius = radius.min(a[..n].iter().map(|c| c.norm()).sum::<f64>().max(1.0));
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| Complex64::from_polar(radius, 2.0 * std::f64::consts::PI * k as f64 / n as f64 + 0.4))
        .collect();
    for _ in 0..200 {
        let mut converged = true;
        for k in 0..n {
            let (p, dp) = eval(z[k]);
            if p.norm() == 0.0 {
                continue;
            }
            let ratio = p / dp;
            let sum: Complex64 = (0..n).filter(|&j| j != k).map(|j| 1.0 / (z[k] - z[j])).sum();
            let w = ratio / (Complex64::new(1.0, 0.0) - ratio * sum);
            if !w.re.is_finite() || !w.im.is_finite() {
                continue;
            }
            z[k] -= w;
            if w.norm() > 1e-14 * z[k].norm().max(1.0) {
                converged = false;
            }
        }
        if converged {
            break;
        }
    }
    if z.iter().any(|r| !r.re.is_finite() || !r.im.is_finite()) {
        return Err(Error::RootFinding(format!("iteration diverged on {coeffs:?}")));
    }
    Ok(z)
}

/// Number of distinct real roots via a Sturm sequence.
pub fn real_root_count<S: Scalar>(f: &RealPoly<S>, tol: &Tolerance) -> Result<usize> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let mut seq = vec![f.clone(), f.derivative()];
    loop {
        let n = seq.len();
        if seq[n - 1].is_zero() {
            seq.pop();
            break;
        }
        let scale = seq[n - 2].magnitude();
        let r = seq[n - 2].rem(&seq[n - 1], Side::Right)?.trim(scale, tol);
        seq.push(-r);
    }
    let changes = |signs: Vec<i8>| {
        let nz: Vec<i8> = signs.into_iter().filter(|&s| s != 0).collect();
        nz.windows(2).filter(|w| w[0] != w[1]).count()
    };
    let lead_sign = |p: &RealPoly<S>| p.leading().map_or(0, |c| c.sign(0.0, tol));
    let at_pos = changes(seq.iter().map(lead_sign).collect());
    let at_neg = changes(
        seq.iter()
            .map(|p| if p.deg() % 2 == 0 { lead_sign(p) } else { -lead_sign(p) })
            .collect(),
    );
    Ok(at_neg.saturating_sub(at_pos))
}

/// Whether `f` vanishes somewhere on the real line.
pub fn has_real_root<S: Scalar>(f: &RealPoly<S>, tol: &Tolerance) -> Result<bool> {
    match S::MODE {
        Mode::Exact => Ok(real_root_count(f, tol)? > 0),
        Mode::Float => Ok(quad_factorization(f, tol)?.linears().next().is_some()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Rational;

    type RP = RealPoly<Rational>;

    fn p(c: &[i64]) -> RP {
        RP::from_i64s(c)
    }

    #[test]
    fn gcd_examples() {
        let tol = Tolerance::default();
        let a = p(&[1, 0, 1]);
        let b = p(&[4, 0, 1]);
        assert_eq!(rp_gcd(&a, &b, &tol).unwrap(), p(&[1]));
        assert_eq!(rp_gcd(&(&a * &a), &(&a * &b), &tol).unwrap(), a);
        assert_eq!(rp_gcd(&p(&[2, 4]), &RP::zero(), &tol).unwrap(), RP::new(vec![Rational::from_ratio(1, 2), Rational::from_i64(1)]));
        assert!(matches!(rp_gcd(&RP::zero(), &RP::zero(), &tol), Err(Error::BothZero)));
    }

    #[test]
    fn extended_gcd_is_bezout() {
        let tol = Tolerance::default();
        let a = p(&[1, 0, 1]) * p(&[-1, 1]);
        let b = p(&[4, 0, 1]) * p(&[-1, 1]);
        let (g, x, y) = rp_gcd_ext(&a, &b, &tol).unwrap();
        assert_eq!(g, p(&[-1, 1]));
        assert_eq!(&(&x * &a) + &(&y * &b), g);
    }

    #[test]
    fn squarefree_examples() {
        let tol = Tolerance::default();
        let n = p(&[1, 0, 1]);
        assert_eq!(squarefree_decompose(&(&n * &n), &tol).unwrap(), vec![(n.clone(), 2)]);
        let m = &n * &p(&[4, 0, 1]);
        assert_eq!(squarefree_decompose(&m, &tol).unwrap(), vec![(m.clone(), 1)]);
        assert_eq!(squarefree_decompose(&p(&[0, 0, 0, 1]), &tol).unwrap(), vec![(p(&[0, 1]), 3)]);
        let mixed = p(&[-1, 1]) * n.pow(3) * p(&[2, 1]).pow(2);
        assert_eq!(
            squarefree_decompose(&mixed, &tol).unwrap(),
            vec![(p(&[-1, 1]), 1), (p(&[2, 1]), 2), (n.clone(), 3)]
        );
    }

    #[test]
    fn quad_factorization_examples() {
        let tol = Tolerance::default();
        let f = quad_factorization(&p(&[4, 0, 5, 0, 1]), &tol).unwrap();
        assert_eq!(f.factors, vec![(p(&[1, 0, 1]), 1), (p(&[4, 0, 1]), 1)]);
        let f = quad_factorization(&p(&[1, 0, 1]).pow(2), &tol).unwrap();
        assert_eq!(f.factors, vec![(p(&[1, 0, 1]), 2)]);
        let f = quad_factorization(&p(&[-1, 0, 1]), &tol).unwrap();
        assert_eq!(f.factors, vec![(p(&[1, 1]), 1), (p(&[-1, 1]), 1)]);
        let g = p(&[3]) * p(&[5, -2, 1]) * p(&[1, 0, 1]).pow(2) * p(&[-2, 1]);
        assert_eq!(quad_factorization(&g, &tol).unwrap().product(), g);
    }

    #[test]
    fn float_clusters_close_multiple_roots() {
        let tol = Tolerance::default();
        let q = |c: i64| RealPoly::<f64>::from_i64s(&[c, -2, 1]);
        let f = q(2) * q(2) * q(2) * q(3) * q(3) * q(4);
        let qf = quad_factorization(&f, &tol).unwrap();
        let mults: Vec<usize> = qf.factors.iter().map(|(_, m)| *m).collect();
        assert_eq!(mults, vec![3, 2, 1]);
        for ((g, _), c) in qf.factors.iter().zip([2.0, 3.0, 4.0]) {
            assert!((g.coeff(0) - c).abs() < 1e-9 && (g.coeff(1) + 2.0).abs() < 1e-9, "{g}");
        }
        let g = RealPoly::<f64>::from_i64s(&[2, 2, 1]) * q(3) * q(3);
        assert_eq!(quad_factorization(&(g.clone() * g), &tol).unwrap().factors.len(), 2);
    }

    #[test]
    fn irrational_factors_are_rejected_in_exact_mode() {
        let tol = Tolerance::default();
        assert!(matches!(
            quad_factorization(&p(&[-2, 0, 1]), &tol),
            Err(Error::ExactFactorizationUnavailable(_))
        ));
        let f = quad_factorization(&RealPoly::<f64>::from_i64s(&[-2, 0, 1]), &tol).unwrap();
        assert!((f.factors[0].0.coeff(0) - 2f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn sturm_counts_distinct_real_roots() {
        let tol = Tolerance::default();
        assert_eq!(real_root_count(&p(&[1, 0, 1]), &tol).unwrap(), 0);
        assert_eq!(real_root_count(&(p(&[-1, 1]).pow(2) * p(&[2, 1])), &tol).unwrap(), 2);
        assert_eq!(real_root_count(&p(&[-2, 0, 1]), &tol).unwrap(), 2);
        assert_eq!(real_root_count(&p(&[5]), &tol).unwrap(), 0);
    }
}
