//! Built-in corpus of reference polynomials with known verdicts and
//! factorizations.

use crate::algebra::{Scalar, Tolerance};
use crate::error::{Error, Result};
use crate::factor::FactorChain;
use crate::qpoly::MotionPoly;

/// Expected outcome of factoring a fixture.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    /// Factors into this many monic linear factors.
    Factorizable { factors: usize },
    /// Does not factor; multiplying by `cofactor` repairs it.
    NotFactorizable { cofactor: &'static str },
    /// Unbounded, with the outcome of the necessary condition.
    Unbounded { necessary: bool },
}

#[derive(Clone, Copy, Debug)]
pub struct Fixture {
    pub id: &'static str,
    pub title: &'static str,
    pub expr: &'static str,
    pub verdict: Verdict,
    /// Known factorizations, each as a list of linear factors `t - h`.
    pub chains: &'static [&'static [&'static str]],
    /// Known decompositions into three factors.
    pub triples: &'static [[&'static str; 3]],
}

const SHARED_CENTER: &str = "t^2+1+eps*(i-5/4*j*t+3/4*k)";

static CORPUS: [Fixture; 6] = [
    Fixture {
        id: "ex-noMS",
        title: "no factorization; repaired by t^2+1",
        expr: "t^2+1+eps*i",
        verdict: Verdict::NotFactorizable { cofactor: "t^2+1" },
        chains: &[],
        triples: &[],
    },
    Fixture {
        id: "ex-MS",
        title: "the previous polynomial times t^2+1",
        expr: "(t^2+1)(t^2+1+eps*i)",
        verdict: Verdict::Factorizable { factors: 4 },
        chains: &[&[
            "t+3/5*j-4/5*k",
            "t-3/5*j+4/5*k+eps*(2/5*j+3/10*k)",
            "t-3/5*j+4/5*k-eps*(2/5*j+3/10*k)",
            "t+3/5*j-4/5*k",
        ]],
        triples: &[],
    },
    Fixture {
        id: "ex-MT",
        title: "repaired by a quaternion factor instead of a real one",
        expr: "(t^2+1+eps*i)(t-k)",
        verdict: Verdict::Factorizable { factors: 3 },
        chains: &[&["t+k", "t-k-1/2*eps*j", "t-k+1/2*eps*j"]],
        triples: &[],
    },
    Fixture {
        id: "two-triples",
        title: "motion with two triple decompositions",
        expr: "(t^2+1)(t-i)^3+eps*i(t-i)^3",
        verdict: Verdict::Factorizable { factors: 5 },
        chains: &[],
        triples: &[
            ["(t-i)^2+eps*(j/4)(t+i)", SHARED_CENTER, "t-i+eps*j"],
            ["t-i+eps*j/4", SHARED_CENTER, "(t-i)^2+eps*(j*t+k)"],
        ],
    },
    Fixture {
        id: "triple-demo",
        title: "worked example of the triple decomposition",
        expr: "(t^2+1)(t-i)^2+eps*i(t-i)^2",
        verdict: Verdict::Factorizable { factors: 4 },
        chains: &[&["t-i+eps*j", "t+(3*i+4*k)/5", "t-(3*i+4*k)/5-eps*5/4*j", "t-i+eps*j/4"]],
        triples: &[["t-i+eps*j", "(t+(3*i+4*k)/5)(t-(3*i+4*k)/5-eps*5/4*j)", "t-i+eps*j/4"]],
    },
    Fixture {
        id: "unbounded-neg",
        title: "unbounded with a double real root; never factors",
        expr: "(t-1)^2+eps*i",
        verdict: Verdict::Unbounded { necessary: false },
        chains: &[],
        triples: &[],
    },
];

pub fn all() -> &'static [Fixture] {
    &CORPUS
}

pub fn get(id: &str) -> Option<&'static Fixture> {
    CORPUS.iter().find(|f| f.id == id)
}

impl Fixture {
    pub fn motion<S: Scalar>(&self, tol: &Tolerance) -> Result<MotionPoly<S>> {
        MotionPoly::parse(self.expr, tol)
    }

    /// The `idx`-th known factorization as a monic chain.
    pub fn chain<S: Scalar>(&self, idx: usize, tol: &Tolerance) -> Result<FactorChain<S>> {
        let factors = self.chains.get(idx).ok_or_else(|| Error::PreconditionViolated(format!("{}: no chain {idx}", self.id)))?;
        let hs = factors
            .iter()
            .map(|src| {
                let l = MotionPoly::<S>::parse(src, tol)?;
                if l.deg() != 1 || !l.is_monic() {
                    return Err(Error::PreconditionViolated(format!("{src} is not monic linear")));
                }
                Ok(-l.poly().coeff(0))
            })
            .collect::<Result<_>>()?;
        Ok(FactorChain::monic(hs))
    }

    pub fn triple<S: Scalar>(&self, idx: usize, tol: &Tolerance) -> Result<[MotionPoly<S>; 3]> {
        let [a, b, c] = self.triples.get(idx).ok_or_else(|| Error::PreconditionViolated(format!("{}: no triple {idx}", self.id)))?;
        Ok([MotionPoly::parse(a, tol)?, MotionPoly::parse(b, tol)?, MotionPoly::parse(c, tol)?])
    }
}
