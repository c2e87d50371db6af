use thiserror::Error;

/// Every failure the library can report.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("zero input where a nonzero element is required")]
    ZeroInput,
    #[error("zero modulus")]
    ZeroModulus,
    #[error("even prime {0} is not supported here")]
    EvenPrime(u64),
    #[error("{0} is not prime")]
    NotPrime(String),
    #[error("no generator found for the ideal above {0}; the class group may be nontrivial")]
    NonPrincipal(u64),
    #[error("no associate inside the unit window satisfies the requested normalization")]
    NormalizationUnreachable,
    #[error("element is a quadratic nonresidue")]
    NonResidue,
    #[error("element is not coprime to the ideal")]
    NotCoprime,
    #[error("finite place passed where an infinite place is required")]
    FinitePlace,
    #[error("dyadic place is not handled by this routine")]
    DyadicPlace,
    #[error("no conic solution up to height {0}")]
    HeightExhausted(u32),
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error("both residue candidates vanish; the solution is degenerate at the third prime")]
    DegenerateSolution,
    #[error("prime is ramified in the tower")]
    RamifiedPrime,
    #[error("witness failed: {0}")]
    WitnessFailed(String),
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error("perturbation breaks the defining system: {0}")]
    InvalidPerturbation(String),
    #[error("cochain is not a coboundary")]
    NotACoboundary,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("{0}")]
    Io(String),
    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),
}

pub type Result<T> = std::result::Result<T, Error>;
