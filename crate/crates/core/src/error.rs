use thiserror::Error;

/// Errors raised by the engine. Every variant has a stable machine-readable code.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("q = {q} is not congruent to 1 modulo {m}")]
    NotCongruent { q: u64, m: u64 },
    #[error("value {b} is not below the base {q}")]
    DigitOutOfRange { b: u64, q: u64 },
    #[error("integer overflow while computing {0}")]
    Overflow(&'static str),
    #[error("field of size {p}^{k} is too large for table-based arithmetic")]
    FieldTooLarge { p: u64, k: u32 },
    #[error("quotient is not Artinian")]
    NotArtinian,
    #[error("closed fiber is not Artinian: standard basis is infinite")]
    InfiniteBasis,
    #[error("generator {generator} maps to a non-integral or negative exponent {image}")]
    NotIntegral { generator: usize, image: String },
    #[error("character is inconsistent on the relation {relation}")]
    InconsistentCharacter { relation: String },
    #[error("semigroup is not full: {0}")]
    NotFull(String),
    #[error("constraint violated: {0}")]
    ConstraintViolated(String),
    #[error("data is wild: {0}")]
    Wild(String),
    #[error("no trivializing substitution over extensions up to degree {max_degree}")]
    NoSolutionInField { max_degree: u32 },
    #[error("closure failure: {0}")]
    ClosureFailure(String),
    #[error("operation requires a freeness certificate")]
    FreenessRequired,
    #[error("enumeration bound exceeded in {what}")]
    BoundExceeded {
        what: String,
        partial: Vec<Vec<i64>>,
    },
    #[error("lattice index is infinite")]
    InfiniteIndex,
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("operands live over different bases")]
    BaseMismatch,
    #[error("relation {relation} is not purely toric (coefficient is not +1 or -1)")]
    NotPurelyToric { relation: usize },
    #[error("character must be trivial for this operation")]
    NontrivialCharacter,
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

impl Error {
    pub fn code(&self) -> &'static str {
        match self {
            Error::NotPrime(_) => "not_prime",
            Error::NotCongruent { .. } => "not_congruent",
            Error::DigitOutOfRange { .. } => "digit_out_of_range",
            Error::Overflow(_) => "overflow",
            Error::FieldTooLarge { .. } => "field_too_large",
            Error::NotArtinian => "not_artinian",
            Error::InfiniteBasis => "infinite_basis",
            Error::NotIntegral { .. } => "not_integral",
            Error::InconsistentCharacter { .. } => "inconsistent_character",
            Error::NotFull(_) => "not_full",
            Error::ConstraintViolated(_) => "constraint_violated",
            Error::Wild(_) => "wild",
            Error::NoSolutionInField { .. } => "no_solution_in_field",
            Error::ClosureFailure(_) => "closure_failure",
            Error::FreenessRequired => "freeness_required",
            Error::BoundExceeded { .. } => "bound_exceeded",
            Error::InfiniteIndex => "infinite_index",
            Error::ZeroDenominator => "zero_denominator",
            Error::BaseMismatch => "base_mismatch",
            Error::NotPurelyToric { .. } => "not_purely_toric",
            Error::NontrivialCharacter => "nontrivial_character",
            Error::InvalidInput(_) => "invalid_input",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
