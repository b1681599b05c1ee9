use thiserror::Error;

/// Errors raised by the library. Every variant is a validation failure on caller input.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("truncation degree k must be at least 2, got {0}")]
    TruncationTooSmall(u32),

    #[error("unknown monoid element {0}")]
    UnknownElement(usize),

    #[error("invalid monoid table: {0}")]
    InvalidMonoid(String),

    #[error("operator index {index} out of range for a simplex of degree {degree}")]
    IndexOutOfRange { index: usize, degree: usize },

    #[error("faces are not defined on 0-simplices")]
    FaceOfVertex,

    #[error("simplex entry {entry} is not an exponent below k = {k}")]
    EntryOutOfRange { entry: u32, k: u32 },

    #[error("invalid abelian group: {0}")]
    InvalidGroup(String),

    #[error("{0} is not a prime")]
    NotPrime(u64),

    #[error("p-adic valuation of 0 is infinite")]
    ZeroValuation,

    #[error("weight {i} is a multiple of k = {k}; no closed form is asserted there")]
    WeightMultipleOfK { i: u64, k: u32 },

    #[error("weight must be at least 1")]
    ZeroWeight,

    #[error("truncation N must be at least 1")]
    ZeroTruncation,
}

pub type Result<T> = std::result::Result<T, Error>;
