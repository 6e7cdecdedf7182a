use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("dominance order needs equal weights, got {left} and {right}")]
    WeightMismatch { left: usize, right: usize },

    #[error("sector product needs single-sector operands: {0}")]
    MixedSector(String),

    #[error("expected an element in the {expected} basis")]
    WrongBasis { expected: &'static str },

    #[error("degree {degree} exceeds the configured bound {bound}")]
    DegreeBound { degree: usize, bound: usize },

    #[error("enumeration budget exceeded: {0}")]
    Budget(String),

    #[error("unsupported prime {0}; the oracle works over F_2 and F_3")]
    UnsupportedPrime(u32),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
