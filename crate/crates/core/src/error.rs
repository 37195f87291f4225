use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("{0} is not a prime below 2^32")]
    NotPrime(u64),
    #[error("precision must be at least {min}, got {got}")]
    PrecisionTooSmall { min: i64, got: i64 },
    #[error("coefficient ring mismatch: modulus {left:?} vs {right:?}")]
    ModulusMismatch { left: Option<u64>, right: Option<u64> },
    #[error("leading coefficient is not a unit, series cannot be inverted")]
    NotInvertible,
    #[error("residue {r} outside [0, {modulus})")]
    ResidueOutOfRange { r: i64, modulus: u64 },
    #[error("coefficient of q^{exponent} requested but series is only known below q^{precision}")]
    PrecisionShortfall { exponent: i64, precision: i64 },
    #[error("coefficient of q^{exponent} is not {prime}-integral")]
    NotIntegral { exponent: i64, prime: u64 },
    #[error("coefficient at index {0} is not in canonical form")]
    NonCanonical(usize),
    #[error("operator index must be at least 2, got {0}")]
    BadOperatorIndex(u64),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpecError {
    #[error("empty product specification")]
    Empty,
    #[error("malformed factor token {0:?}, expected d^e")]
    BadToken(String),
    #[error("factor base must be a positive integer, got {0}")]
    NonPositiveBase(i64),
    #[error("factor {0} has exponent 0")]
    ZeroExponent(u64),
    #[error("product {0:?} is not of the form prod 1/(1-q^(a n)) (all exponents negative)")]
    NotPartitionClass(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormError {
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error(transparent)]
    Spec(#[from] SpecError),
    #[error("Bernoulli index {0} is odd and greater than 1")]
    OddBernoulliIndex(u64),
    #[error("weight {0} is not a valid even weight here")]
    BadWeight(i64),
    #[error("Eisenstein normalization for weight {weight} is not integral in this coefficient ring")]
    NonIntegralNormalization { weight: u64 },
    #[error("prime {ell} is too small, need at least {min}")]
    PrimeTooSmall { ell: u64, min: u64 },
    #[error("form reduces to zero mod {0}")]
    ZeroModEll(u64),
    #[error(
        "no weight k' <= {declared} with k' = {declared} mod {step} matches; input is not a level-1 form mod {ell}"
    )]
    NoMatchingWeight { declared: i64, step: u64, ell: u64 },
    #[error("expected a series mod {expected}, got modulus {got:?}")]
    WrongModulus { expected: u64, got: Option<u64> },
    #[error("only level 1 is supported, got level {0}")]
    UnsupportedLevel(u64),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CongruenceError {
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error(transparent)]
    Spec(#[from] SpecError),
    #[error(transparent)]
    Form(#[from] FormError),
    #[error("horizon {horizon} is below the evidence floor {needed} for prime {ell}")]
    HorizonTooSmall { ell: u64, horizon: u64, needed: u64 },
    #[error("no residue is forced: {0}")]
    NoForcedResidue(String),
    #[error("{ell} divides no factor base of the product")]
    NoDivisibleFactor { ell: u64 },
    #[error("Sturm comparison needs {needed} coefficients but the budget is {available}")]
    PrecisionShortfall { needed: u64, available: u64 },
    #[error("odd j = {0}: the prime bound is not established, supply an explicit prime cap")]
    OddJ(u64),
    #[error("{ell} is not prime")]
    NotPrime { ell: u64 },
    #[error("residue a = {a} outside [0, {ell})")]
    ResidueOutOfRange { a: u64, ell: u64 },
    #[error("congruence ({ell}, {a}) is excluded but no witness was found below n = {horizon}")]
    WitnessNotFound { ell: u64, a: u64, horizon: u64 },
}
