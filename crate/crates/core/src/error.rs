use thiserror::Error;

/// Errors raised by ring, polynomial, algebra, lifting and tower operations.
///
/// Variants are grouped by the failure they report: malformed input,
/// a missing ring capability, a violated mathematical precondition, or an
/// internal consistency failure. [`Error::code`] gives a stable
/// machine-readable name for each variant.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid ring: {0}")]
    InvalidRing(String),
    #[error("element does not belong to the ring: {0}")]
    NotInRing(String),

    #[error("operands live in different rings")]
    MixedRings,
    #[error("operands live in different algebras")]
    MixedAlgebras,
    #[error("ring is not local")]
    NotLocal,
    #[error("ring is not residually discrete")]
    NotResiduallyDiscrete,
    #[error("operation unsupported for this ring kind: {0}")]
    UnsupportedKind(String),
    #[error("base ring lacks effective linear algebra: {0}")]
    UnsupportedBase(String),
    #[error("ring is not a finite field")]
    NotFiniteField,
    #[error("ring is not a Henselian oracle")]
    NotHenselian,

    #[error("polynomial is not monic")]
    NotMonic,
    #[error("polynomials are not coprime modulo the maximal ideal")]
    NotResiduallyCoprime,
    #[error("polynomial is not residually irreducible")]
    NotResiduallyIrreducible,
    #[error("element is not invertible")]
    NotInvertible,
    #[error("element is not idempotent")]
    NotIdempotent,
    #[error("element is not idempotent modulo nilpotents")]
    NotAlmostIdempotent,
    #[error("matrix is not idempotent")]
    NotIdempotentMatrix,
    #[error("element is not idempotent modulo the maximal ideal")]
    NotIdempotentResidually,
    #[error("idempotent is zero")]
    ZeroIdempotent,
    #[error("element is not a Galois idempotent modulo the maximal ideal")]
    NotGaloisResidually,
    #[error("element is not fixed by the symmetric group")]
    NotInvariant,
    #[error("invariant element is not a constant")]
    NotInBaseImage,
    #[error("degree {degree} exceeds the configured cap {cap}")]
    DegreeCapExceeded { degree: usize, cap: usize },
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("residue is not a root of the reduced polynomial")]
    NotARoot,
    #[error("residual root is not simple")]
    NotSimple,
    #[error("polynomials do not multiply to the target")]
    NotAFactorization,
    #[error("residual factors do not multiply to the reduced polynomial")]
    NotAFactorizationResidually,
    #[error("no root of the residual polynomial in the target residue field")]
    NoCompatibleRoot,

    #[error("lifted coefficients do not descend to the base ring")]
    InternalDescentFailure,
    #[error("internal check failed: {0}")]
    Internal(String),
}

impl Error {
    /// Stable error code, used by the command-line interface.
    pub fn code(&self) -> &'static str {
        match self {
            Error::Parse(_) => "Parse",
            Error::InvalidRing(_) => "InvalidRing",
            Error::NotInRing(_) => "NotInRing",
            Error::MixedRings => "MixedRings",
            Error::MixedAlgebras => "MixedAlgebras",
            Error::NotLocal => "NotLocal",
            Error::NotResiduallyDiscrete => "NotResiduallyDiscrete",
            Error::UnsupportedKind(_) => "UnsupportedKind",
            Error::UnsupportedBase(_) => "UnsupportedBase",
            Error::NotFiniteField => "NotFiniteField",
            Error::NotHenselian => "NotHenselian",
            Error::NotMonic => "NotMonic",
            Error::NotResiduallyCoprime => "NotResiduallyCoprime",
            Error::NotResiduallyIrreducible => "NotResiduallyIrreducible",
            Error::NotInvertible => "NotInvertible",
            Error::NotIdempotent => "NotIdempotent",
            Error::NotAlmostIdempotent => "NotAlmostIdempotent",
            Error::NotIdempotentMatrix => "NotIdempotentMatrix",
            Error::NotIdempotentResidually => "NotIdempotentResidually",
            Error::ZeroIdempotent => "ZeroIdempotent",
            Error::NotGaloisResidually => "NotGaloisResidually",
            Error::NotInvariant => "NotInvariant",
            Error::NotInBaseImage => "NotInBaseImage",
            Error::DegreeCapExceeded { .. } => "DegreeCapExceeded",
            Error::PreconditionViolated(_) => "PreconditionViolated",
            Error::NotARoot => "NotARoot",
            Error::NotSimple => "NotSimple",
            Error::NotAFactorization => "NotAFactorization",
            Error::NotAFactorizationResidually => "NotAFactorizationResidually",
            Error::NoCompatibleRoot => "NoCompatibleRoot",
            Error::InternalDescentFailure => "InternalDescentFailure",
            Error::Internal(_) => "Internal",
        }
    }

    /// Internal failures signal a bug rather than bad input.
    pub fn is_internal(&self) -> bool {
        matches!(self, Error::InternalDescentFailure | Error::Internal(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;

macro_rules! ensure_internal {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err($crate::error::Error::Internal(format!($($msg)+)));
        }
    };
}
pub(crate) use ensure_internal;
