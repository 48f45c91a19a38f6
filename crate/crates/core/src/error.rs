use thiserror::Error;

/// Everything that can go wrong when building or combining labels.
///
/// Mathematical mismatches found during verification are not errors; they
/// are reported through [`crate::verify::Status`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("invalid symbol: {0}")]
    InvalidSymbol(String),
    #[error("{0} is not an {1}-core")]
    NotACore(String, u32),
    #[error("quotient has {found} entries, expected {expected}")]
    QuotientLength { expected: usize, found: usize },
    #[error("e must be at least 1")]
    ZeroE,
    #[error("q = {0} is not a prime power")]
    NotPrimePower(u64),
    #[error("no field table entry for q = {0}")]
    UnsupportedField(u64),
    #[error("ell = {0} must be an odd prime")]
    BadEll(u64),
    #[error("ell = {ell} divides q = {q}")]
    EllDividesQ { ell: u64, q: u64 },
    #[error("polynomial has zero constant term")]
    ZeroConstantTerm,
    #[error("polynomial must be monic of degree at least 1")]
    NotMonic,
    #[error("search space too large: {0}")]
    TooLarge(String),
    #[error("n = {0} is out of range (n >= 2 required; for n = 1 see the SL2/PSL2 literature)")]
    BadRank(u32),
    #[error("{0}")]
    Regime(String),
    #[error("label outside its domain: {0}")]
    OutsideDomain(String),
}

pub type Result<T> = std::result::Result<T, Error>;
