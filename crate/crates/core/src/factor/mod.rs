//! Factorization of motion polynomials into monic linear factors.
//!
//! The entry point is [`factor`]. It normalizes the input, removes real
//! polynomial factors, decides factorizability with [`check_factorizable`]
//! and then runs one of two strategies: the recursive peeling of
//! [`factor4`] or the primary-norm pipeline of [`mgfactor`] followed by
//! [`factor_primary`].

use std::fmt;

use serde_json::{json, Value};

use crate::algebra::{DualQuaternion, Quaternion, Ring, Scalar, Tolerance};
use crate::error::{Error, Result};
use crate::poly::{DualPoly, QuatPoly, RealPoly};
use crate::qpoly::{mrpf, norm_poly, nu_multiplicity, real_quotient, MotionPoly};
use crate::rpoly::{divides, exact_quotient, has_real_root, rp_gcd, rp_gcd_all, squarefree_decompose};
use crate::text::{format_chain, format_quat_poly, format_real_poly};

mod cofactor;
mod generic;
mod primary;
mod recursive;

pub use cofactor::{rational_point, rational_points};
pub use generic::{bennett_flip, gfactor, gfactor_with_order, split_by_norm};
pub use primary::{factor3, factor3_with, factor_primary, mgfactor, translational_split};
pub use recursive::factor4;

/// Which algorithm finishes a factorization once the criterion holds.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Strategy {
    /// Peel one linear factor at a time (the induction of the criterion).
    #[default]
    Recursive,
    /// Split into factors of primary norm first, then factor each one.
    PrimaryPipeline,
}

/// `unit · (t - h₁) ⋯ (t - hₙ)`.
#[derive(Clone, Debug, PartialEq)]
pub struct FactorChain<S> {
    pub unit: DualQuaternion<S>,
    pub factors: Vec<DualQuaternion<S>>,
}

impl<S: Scalar> FactorChain<S> {
    pub fn new(unit: DualQuaternion<S>, factors: Vec<DualQuaternion<S>>) -> Self {
        FactorChain { unit, factors }
    }

    pub fn monic(factors: Vec<DualQuaternion<S>>) -> Self {
        FactorChain::new(DualQuaternion::one(), factors)
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    /// The factors `t - hᵢ` as polynomials.
    pub fn linear_factors(&self) -> Vec<MotionPoly<S>> {
        self.factors.iter().map(|h| MotionPoly::new_unchecked(DualPoly::linear(h.clone()))).collect()
    }

    pub fn product(&self) -> DualPoly<S> {
        self.factors
            .iter()
            .fold(DualPoly::constant(self.unit.clone()), |acc, h| acc * DualPoly::linear(h.clone()))
    }

    pub fn to_json(&self) -> Value {
        json!({
            "unit": self.unit.to_json(),
            "factors": self.factors.iter().map(DualQuaternion::to_json).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let unit = v.get("unit").ok_or_else(|| Error::Json("missing \"unit\"".into()))?;
        let factors = v
            .get("factors")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Json("missing \"factors\" array".into()))?;
        Ok(FactorChain {
            unit: DualQuaternion::from_json(unit)?,
            factors: factors.iter().map(DualQuaternion::from_json).collect::<Result<_>>()?,
        })
    }
}

impl<S: Scalar> fmt::Display for FactorChain<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_chain(&self.unit, &self.factors))
    }
}

/// Chain of the conjugate polynomial: reversed order, conjugated factors.
pub(crate) fn conj_reverse<S: Scalar>(factors: Vec<DualQuaternion<S>>) -> Vec<DualQuaternion<S>> {
    factors.into_iter().rev().map(|h| h.conj()).collect()
}

/// Quantities deciding factorizability of a bounded monic polynomial
/// `M = cQ + εD` after removal of its real polynomial factor.
#[derive(Clone, Debug, PartialEq)]
pub struct FactorReport<S> {
    /// Real factor of the primal part.
    pub c: RealPoly<S>,
    /// Primal part divided by `c`.
    pub q: QuatPoly<S>,
    /// Dual part.
    pub d: QuatPoly<S>,
    pub g: RealPoly<S>,
    /// `gcd(c, conj(Q) D)`.
    pub g_l: RealPoly<S>,
    /// `gcd(c, D conj(Q))`.
    pub g_r: RealPoly<S>,
    pub cg: RealPoly<S>,
    /// Norm polynomial of the dual part.
    pub nu_d: RealPoly<S>,
    pub factorizable: bool,
    /// `cg / gcd(cg, ν(D))`; multiplying by it makes the polynomial factor.
    pub cofactor: RealPoly<S>,
    /// Real polynomial factor removed from the input (1 when reduced).
    pub reduced_out: RealPoly<S>,
}

impl<S: Scalar> FactorReport<S> {
    pub fn to_json(&self) -> Value {
        let text = |p: &RealPoly<S>| Value::String(format_real_poly(p));
        json!({
            "factorizable": self.factorizable,
            "cofactor": text(&self.cofactor),
            "c": text(&self.c),
            "Q": format_quat_poly(&self.q),
            "D": format_quat_poly(&self.d),
            "g": text(&self.g),
            "g_L": text(&self.g_l),
            "g_R": text(&self.g_r),
            "cg": text(&self.cg),
            "nuD": text(&self.nu_d),
            "reduced_out": text(&self.reduced_out),
            "coefficients": {
                "c": self.c.to_json(),
                "Q": self.q.to_json(),
                "D": self.d.to_json(),
                "g": self.g.to_json(),
                "g_L": self.g_l.to_json(),
                "g_R": self.g_r.to_json(),
                "cg": self.cg.to_json(),
                "nuD": self.nu_d.to_json(),
                "cofactor": self.cofactor.to_json(),
                "reduced_out": self.reduced_out.to_json(),
            },
        })
    }
}

/// Factor `Mᵢ` of a primary decomposition with `ν(Mᵢ) = Nᵢ^nᵢ`.
#[derive(Clone, Debug, PartialEq)]
pub struct PrimaryFactor<S> {
    pub poly: MotionPoly<S>,
    pub n: RealPoly<S>,
    pub multiplicity: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct PrimaryDecomposition<S> {
    pub factors: Vec<PrimaryFactor<S>>,
}

impl<S: Scalar> PrimaryDecomposition<S> {
    pub fn product(&self) -> MotionPoly<S> {
        MotionPoly::product(self.factors.iter().map(|f| &f.poly))
    }
}

/// `M = left · center · right` with `center = c + εD'` and `center` given
/// as a product of two generic polynomials.
#[derive(Clone, Debug, PartialEq)]
pub struct FactorTriple<S> {
    pub left: MotionPoly<S>,
    pub center: MotionPoly<S>,
    pub right: MotionPoly<S>,
    pub center_split: (MotionPoly<S>, MotionPoly<S>),
}

/// Failure of the top-level pipeline.
#[derive(Clone, Debug, PartialEq, thiserror::Error)]
pub enum FactorError<S: Scalar> {
    #[error("no factorization into monic linear factors; multiply by {} first", .0.cofactor)]
    NotFactorizable(Box<FactorReport<S>>),
    #[error("unbounded motion polynomials are not supported (necessary condition met: {necessary_condition_met})")]
    UnboundedUnsupported { necessary_condition_met: bool },
    #[error(transparent)]
    Algebra(#[from] Error),
}

/// Successful outcome of [`factor`].
#[derive(Clone, Debug, PartialEq)]
pub struct Factorization<S> {
    /// Chain whose product is the input polynomial.
    pub chain: FactorChain<S>,
    /// Real polynomial factor of the input, absorbed into the chain.
    pub real_factor: RealPoly<S>,
    /// Report of the reduced polynomial, absent for generic input.
    pub report: Option<FactorReport<S>>,
}

// ------------------------------------------------------------ shared bits

/// Real gcd of `c` with every component of the given polynomials.
pub(crate) fn real_gcd<S: Scalar>(c: &RealPoly<S>, xs: &[&QuatPoly<S>], tol: &Tolerance) -> Result<RealPoly<S>> {
    let mut polys = vec![c.clone()];
    for x in xs {
        polys.extend(x.components());
    }
    rp_gcd_all(polys.iter(), tol)
}

/// `(c, Q)` with `P = cQ`, `c = mrpf(P)`.
pub(crate) fn split_primal<S: Scalar>(p: &QuatPoly<S>, tol: &Tolerance) -> Result<(RealPoly<S>, QuatPoly<S>)> {
    let c = mrpf(&[p], tol)?;
    let q = real_quotient(p, &c, tol)?;
    Ok((c, q))
}

pub(crate) fn tau<S: Scalar>(x: &QuatPoly<S>, n: &RealPoly<S>, tol: &Tolerance) -> Result<usize> {
    nu_multiplicity(&[x], n, tol)
}

/// Unit and monic associate: `M = unit · monic`.
pub fn normalize<S: Scalar>(m: &MotionPoly<S>, tol: &Tolerance) -> Result<(DualQuaternion<S>, MotionPoly<S>)> {
    let lc = m.leading();
    if lc.primal.is_negligible(m.poly().magnitude(), tol) {
        return Err(Error::NonInvertibleLeading);
    }
    let inv = lc.inverse().ok_or(Error::NonInvertibleLeading)?;
    let mut monic = m.poly().mul_left(&inv);
    // Pin the leading coefficient so later monic tests are exact.
    let mut coeffs = monic.into_coeffs();
    if let Some(last) = coeffs.last_mut() {
        *last = DualQuaternion::one();
    }
    monic = DualPoly::new(coeffs);
    Ok((lc, MotionPoly::new_unchecked(monic)))
}

/// Removes the greatest real polynomial factor: `M = r · reduced`.
pub fn reduce<S: Scalar>(m: &MotionPoly<S>, tol: &Tolerance) -> Result<(RealPoly<S>, MotionPoly<S>)> {
    let r = m.mrpf(tol)?;
    if r.is_one() {
        return Ok((r, m.clone()));
    }
    Ok((r.clone(), m.div_real(&r, tol)?))
}

fn require_monic<S: Scalar>(m: &MotionPoly<S>) -> Result<()> {
    if m.is_monic() {
        Ok(())
    } else {
        Err(Error::NotMonic)
    }
}

// ------------------------------------------------------------- criterion

/// Factorizability ledger of a monic bounded polynomial. A real polynomial
/// factor of the input is divided out first and recorded in `reduced_out`.
pub fn check_factorizable<S: Scalar>(m: &MotionPoly<S>, tol: &Tolerance) -> Result<FactorReport<S>> {
    require_monic(m)?;
    let (r, m) = reduce(m, tol)?;
    let (c, q) = split_primal(m.primal(), tol)?;
    if has_real_root(&c, tol)? {
        return Err(Error::NotBounded);
    }
    let d = m.dual().clone();
    let qc = q.conj();
    let g_l = real_gcd(&c, &[&(&qc * &d)], tol)?;
    let g_r = real_gcd(&c, &[&(&d * &qc)], tol)?;
    let g = rp_gcd(&g_l, &g_r, tol)?;
    let cg = &c * &g;
    let nu_d = norm_poly(&d);
    let (factorizable, cofactor) = if nu_d.is_zero() {
        (true, RealPoly::one())
    } else {
        let common = rp_gcd(&cg, &nu_d, tol)?;
        let cofactor = exact_quotient(&cg, &common, tol)?;
        (cofactor.deg() == 0, rpoly_monic_or_one(&cofactor)?)
    };
    Ok(FactorReport { c, q, d, g, g_l, g_r, cg, nu_d, factorizable, cofactor, reduced_out: r })
}

fn rpoly_monic_or_one<S: Scalar>(p: &RealPoly<S>) -> Result<RealPoly<S>> {
    if p.deg() == 0 {
        Ok(RealPoly::one())
    } else {
        crate::rpoly::monic(p)
    }
}

/// The co-factor `g′`: the real polynomial whose product with `m` factors.
/// It does not depend on the leading coefficient, so `m` need not be monic.
pub fn cofactor<S: Scalar>(m: &MotionPoly<S>, tol: &Tolerance) -> Result<RealPoly<S>> {
    let (_, monic) = normalize(m, tol)?;
    Ok(check_factorizable(&monic, tol)?.cofactor)
}

/// Necessary condition for unbounded polynomials: `false` when the real
/// factor of the primal part has a real root of multiplicity two or more,
/// which rules out any factorization; `true` is inconclusive.
pub fn check_unbounded_necessary<S: Scalar>(m: &MotionPoly<S>, tol: &Tolerance) -> Result<bool> {
    let (_, m) = reduce(m, tol)?;
    let c = mrpf(&[m.primal()], tol)?;
    if c.deg() == 0 || !has_real_root(&c, tol)? {
        return Err(Error::NotUnbounded);
    }
    for (part, mult) in squarefree_decompose(&c, tol)? {
        if mult >= 2 && has_real_root(&part, tol)? {
            return Ok(false);
        }
    }
    Ok(true)
}

// -------------------------------------------------------------- pipeline

/// Factors `m` into a unit and monic linear factors.
///
/// The chain always multiplies back to `m` itself: the leading coefficient
/// becomes the unit, and a real polynomial factor of `m` is either used to
/// repair a non-factorizable reduced part or split into central linear
/// factors.
pub fn factor<S: Scalar>(
    m: &MotionPoly<S>,
    strategy: Strategy,
    tol: &Tolerance,
) -> Result<Factorization<S>, FactorError<S>> {
    let (unit, monic) = normalize(m, tol)?;
    let (r, reduced) = reduce(&monic, tol)?;
    let (mut factors, report, rest) = if reduced.is_generic(tol)? {
        (gfactor(&reduced, tol)?, None, r.clone())
    } else {
        let c = mrpf(&[reduced.primal()], tol)?;
        if has_real_root(&c, tol)? {
            let verdict = check_unbounded_necessary(&reduced, tol)?;
            return Err(FactorError::UnboundedUnsupported { necessary_condition_met: verdict });
        }
        let mut report = check_factorizable(&reduced, tol)?;
        report.reduced_out = r.clone();
        let gp = report.cofactor.clone();
        if !report.factorizable && !divides(&gp, &r, tol)? {
            return Err(FactorError::NotFactorizable(Box::new(report)));
        }
        let chain = cofactor::factor_times_cofactor(&reduced, &gp, strategy, tol)?;
        let rest = exact_quotient(&r, &gp, tol)?;
        (chain, Some(report), rest)
    };
    factors.extend(cofactor::central_factors(&rest, tol)?);
    if S::MODE == crate::algebra::Mode::Float {
        factors.iter_mut().for_each(project_study);
    }
    Ok(Factorization { chain: FactorChain::new(unit, factors), real_factor: r, report })
}

/// Removes the component of the dual part along the primal part, which puts
/// a float factor back on the Study quadric.
fn project_study<S: Scalar>(h: &mut DualQuaternion<S>) {
    if let Some(inv) = h.primal.norm().inverse() {
        let shift = h.primal.scale(&(h.primal.dot(&h.dual) * inv));
        h.dual = h.dual.clone() - shift;
    }
}

/// Factors a monic reduced bounded polynomial that satisfies the criterion.
pub(crate) fn run_strategy<S: Scalar>(
    m: &MotionPoly<S>,
    strategy: Strategy,
    tol: &Tolerance,
) -> Result<Vec<DualQuaternion<S>>> {
    match strategy {
        Strategy::Recursive => factor4(m, tol),
        Strategy::PrimaryPipeline => {
            let mut out = Vec::new();
            for part in mgfactor(m, tol)?.factors {
                out.extend(factor_primary(&part.poly, tol)?.factors);
            }
            Ok(out)
        }
    }
}

/// Whether `chain` multiplies back to `source` and every factor satisfies
/// the Study condition.
pub fn verify_factorization<S: Scalar>(source: &MotionPoly<S>, chain: &FactorChain<S>, tol: &Tolerance) -> bool {
    if !chain.factors.iter().all(|h| h.study_check(tol)) {
        return false;
    }
    let product = chain.product();
    match S::MODE {
        crate::algebra::Mode::Exact => product == *source.poly(),
        crate::algebra::Mode::Float => product.approx_eq(source.poly(), tol),
    }
}

/// Quaternion `h` as the constant part of `t - h` with zero dual part.
pub(crate) fn primal_factor<S: Scalar>(p: Quaternion<S>) -> DualQuaternion<S> {
    DualQuaternion::from_primal(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Rational;

    fn tol() -> Tolerance {
        Tolerance::default()
    }

    fn mp<S: Scalar>(s: &str) -> MotionPoly<S> {
        MotionPoly::parse(s, &tol()).unwrap()
    }

    #[test]
    fn criterion_examples() {
        let r = check_factorizable(&mp::<Rational>("t^2+1+eps*i"), &tol()).unwrap();
        assert!(!r.factorizable);
        assert_eq!(r.cofactor, RealPoly::from_i64s(&[1, 0, 1]));
        let r = check_factorizable(&mp::<Rational>("(t^2+1)(t-i)^2+eps*i(t-i)^2"), &tol()).unwrap();
        assert!(r.factorizable);
        assert!(check_factorizable(&mp::<Rational>("t^2+1+eps*(i t+j)"), &tol()).unwrap().factorizable);
        assert!(matches!(check_factorizable(&mp::<Rational>("(t-1)^2+eps*i"), &tol()), Err(Error::NotBounded)));
        assert_eq!(check_unbounded_necessary(&mp::<Rational>("(t-1)^2+eps*i"), &tol()), Ok(false));
    }

    #[test]
    fn pipeline_examples() {
        for strategy in [Strategy::Recursive, Strategy::PrimaryPipeline] {
            let m = mp::<Rational>("t^2+1+eps*i");
            match factor(&m, strategy, &tol()) {
                Err(FactorError::NotFactorizable(r)) => assert_eq!(r.cofactor, RealPoly::from_i64s(&[1, 0, 1])),
                other => panic!("{other:?}"),
            }
            for (src, n) in [
                ("(t^2+1)(t^2+1+eps*i)", 4),
                ("(t^2+1)(t-i)^2+eps*i(t-i)^2", 4),
                ("(t^2+1)(t-i)^3+eps*i(t-i)^3", 5),
                ("2(t-i)(t-2j)", 2),
                ("(t^2+1+eps*i)(t-k)", 3),
                ("(t^2+4)(t-1)(t-i+eps*j)", 4),
            ] {
                let m = mp::<Rational>(src);
                let f = factor(&m, strategy, &tol()).unwrap();
                assert_eq!(f.chain.len(), n, "{src}");
                assert!(verify_factorization(&m, &f.chain, &tol()), "{src}");
            }
            assert_eq!(
                factor(&mp::<Rational>("(t-1)^2+eps*i"), strategy, &tol()),
                Err(FactorError::UnboundedUnsupported { necessary_condition_met: false })
            );
        }
    }

    #[test]
    fn pipeline_in_float_mode() {
        for src in ["(t^2+1)(t^2+1+eps*i)", "(t^2+1)(t-i)^2+eps*i(t-i)^2", "(t^2+1)(t-i)^3+eps*i(t-i)^3"] {
            let m = mp::<f64>(src);
            for strategy in [Strategy::Recursive, Strategy::PrimaryPipeline] {
                let f = factor(&m, strategy, &tol()).unwrap();
                assert!(verify_factorization(&m, &f.chain, &tol()), "{src}");
            }
        }
        let r = check_factorizable(&mp::<f64>("t^2+1+eps*i"), &tol()).unwrap();
        assert!(!r.factorizable);
    }
}
