use thiserror::Error;

/// Errors raised by the algebra, polynomial and factorization layers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid tolerance (abs_eps = {abs_eps}, rel_eps = {rel_eps})")]
    InvalidTolerance { abs_eps: f64, rel_eps: f64 },
    #[error("division by zero")]
    ZeroDivisor,
    #[error("both arguments are zero")]
    BothZero,
    #[error("the zero polynomial is not allowed here")]
    ZeroPolynomial,
    #[error("leading coefficient is not invertible")]
    NonInvertibleLeading,
    #[error("division by the zero polynomial")]
    ZeroDivisorPoly,
    #[error("linear remainder has a non-invertible leading coefficient")]
    NonInvertibleRemainderLeading,
    #[error("Study condition violated")]
    StudyViolation,
    #[error("norm polynomial is zero")]
    ZeroNorm,
    #[error("exact factorization unavailable: {0}")]
    ExactFactorizationUnavailable(String),
    #[error("root finding did not converge: {0}")]
    RootFinding(String),
    #[error("motion polynomial is not generic")]
    NotGeneric,
    #[error("motion polynomial is not translational")]
    NotTranslational,
    #[error("polynomials are not coprime")]
    NotCoprime,
    #[error("motion polynomial is not bounded")]
    NotBounded,
    #[error("motion polynomial is bounded")]
    NotUnbounded,
    #[error("motion polynomial is not reduced")]
    NotReduced,
    #[error("polynomial is not monic")]
    NotMonic,
    #[error("factorizability criterion fails")]
    CriterionFailed,
    #[error("linear factors have non-coprime norms")]
    NonCoprimeNorms,
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("no rational quaternion with norm polynomial {0}")]
    NoRationalRoot(String),
    #[error("norm polynomial vanishes at the requested parameter")]
    NormVanishes,
    #[error("exact and float literals cannot be mixed")]
    MixedModeLiterals,
    #[error("malformed JSON: {0}")]
    Json(String),
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("internal certificate check failed: {0}")]
    Certificate(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
