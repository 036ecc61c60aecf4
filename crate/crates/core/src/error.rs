use thiserror::Error;

/// Crate-wide error type.
///
/// The variants mirror the failure modes of the individual subsystems; the
/// group-law pipeline reports which stage degenerated through
/// [`Error::stage`] so callers can decide whether to resample.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    // --- field construction ---
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("no irreducible modulus of degree {0} found")]
    NoIrreducibleFound(u32),
    #[error("field mismatch: operands live in incompatible fields")]
    FieldMismatch,

    // --- polynomial arithmetic ---
    #[error("zero polynomial not allowed here")]
    ZeroPolynomial,
    #[error("inexact division at stage {stage}")]
    InexactDivision { stage: &'static str },
    #[error("splitting field degree {needed} exceeds the cap {cap}")]
    DegreeOverflow { needed: u32, cap: u32 },

    // --- curve validation ---
    #[error("gcd(n, d) = {0} must be 1")]
    GcdViolation(u64),
    #[error("f is not squarefree (discriminant vanishes)")]
    Singular,
    #[error("characteristic {p} divides n = {n} (wild cover)")]
    WildCharacteristic { p: u64, n: u32 },
    #[error("deg f = {d} must exceed n = {n}")]
    DegreeTooSmall { d: u32, n: u32 },
    #[error("genus {genus} below 2; only oracle point counting supports this curve")]
    GenusTooSmall { genus: u32 },
    #[error("relaxed-validation curve rejected by the group-law pipeline")]
    RelaxedCurve,

    // --- basis ---
    #[error("operation requires a hyperelliptic curve (n = 2)")]
    NotHyperelliptic,
    #[error("operation requires a triagonal curve (n = 3)")]
    NotTriagonal,

    // --- group-law pipeline ---
    #[error("interpolation matrix is rank deficient (all cofactors vanish)")]
    RankDeficient,
    #[error("derivative row undefined: y-partial vanishes at a repeated point")]
    DerivativeSingular,
    #[error("interpolation curve vanishes identically on the input curve")]
    IdenticallyZero,
    #[error("ambiguous y-lift at stage {stage}: gcd degree {got}, expected {expected}")]
    AmbiguousLift {
        stage: &'static str,
        got: usize,
        expected: usize,
    },
    #[error("non-generic configuration at stage {stage}: {detail}")]
    NonGeneric {
        stage: &'static str,
        detail: String,
    },
    #[error("divisor exceeds the genus bound: {r} points on a genus {g} curve")]
    TooManyPoints { r: usize, g: u32 },
    #[error("point ({x}, {y}) does not lie on the curve")]
    PointOffCurve { x: String, y: String },

    // --- oracle ---
    #[error("point scan over {q} elements exceeds the bound {bound}")]
    ScanBoundExceeded { q: u128, bound: u128 },
    #[error("divisor contains a point paired with its hyperelliptic conjugate")]
    ConjugatePair,

    // --- formulas ---
    #[error("interpolation nodes must be pairwise distinct")]
    RepeatedNode,
    #[error("degree mismatch: {0}")]
    DegreeMismatch(String),
    #[error("interpolation curve is not linear in y")]
    NotLinearInY,

    // --- io ---
    #[error("parse error: {0}")]
    ParseError(String),
}

impl Error {
    /// Pipeline stage the error was raised at, when applicable.
    pub fn stage(&self) -> Option<&'static str> {
        match self {
            Error::InexactDivision { stage } => Some(stage),
            Error::AmbiguousLift { stage, .. } => Some(stage),
            Error::NonGeneric { stage, .. } => Some(stage),
            _ => None,
        }
    }

    /// True for failures that a caller may address by resampling the inputs
    /// or by the documented add-then-subtract perturbation strategy.
    pub fn is_degenerate(&self) -> bool {
        matches!(
            self,
            Error::RankDeficient
                | Error::DerivativeSingular
                | Error::IdenticallyZero
                | Error::InexactDivision { .. }
                | Error::AmbiguousLift { .. }
                | Error::NonGeneric { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
