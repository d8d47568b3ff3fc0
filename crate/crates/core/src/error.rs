use alloc::string::String;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("unsupported Cartan type {0}")]
    UnsupportedType(String),
    #[error("index {0} is not a node of the Cartan datum")]
    BadIndex(usize),
    #[error("mode {0} is not allowed on the Yangian side")]
    NegativeMode(i64),
    #[error("operands live on different sides")]
    SideMismatch,
    #[error("element is not weight-homogeneous")]
    Inhomogeneous,
    #[error("generator outside the domain of the map: {0}")]
    OutOfDomain(String),
    #[error("delta variables overlap in a product: {0}")]
    OverlappingDeltas(String),
    #[error("malformed input: {0}")]
    Malformed(String),
    #[error("operands live over different coordinate rings")]
    RingMismatch,
    #[error("scalar must be nonzero")]
    ZeroScalar,
}

pub type Result<T> = core::result::Result<T, Error>;
