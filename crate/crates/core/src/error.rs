use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("order {from} does not divide target order {to}")]
    IncompatibleOrder { from: u32, to: u32 },
    #[error("cyclotomic order {0} exceeds the cap of {cap}", cap = crate::cyclotomic::MAX_ORDER)]
    OrderTooLarge(u32),
    #[error("group of order {0} exceeds the cap of {cap}", cap = crate::groups::MAX_GROUP_ORDER)]
    GroupTooLarge(usize),
    #[error("invalid group table: {0}")]
    InvalidGroup(String),
    #[error("subgroup is not abelian")]
    NotAbelian,
    #[error("arity mismatch: {0} vs {1}")]
    ArityMismatch(usize, usize),
    #[error("tensors live over different groups")]
    GroupMismatch,
    #[error("leg {leg} out of range for arity {arity}")]
    LegOutOfRange { leg: usize, arity: usize },
    #[error("invalid leg permutation {0:?}")]
    InvalidPermutation(Vec<usize>),
    #[error("leg positions ({0}, {1}) clash or exceed arity {2}")]
    PositionClash(usize, usize, usize),
    #[error("element is not invertible")]
    NotInvertible,
    #[error("invalid datum: {0}")]
    InvalidDatum(String),
    #[error("element {0} is not a central involution")]
    NotCentralInvolution(usize),
    #[error("R-matrix is not unitary")]
    NotUnitary,
    #[error("endomorphism does not commute with the group action")]
    NotEquivariant,
    #[error("{0} is not a root of unity of the requested order")]
    NotRootOfUnity(String),
    #[error("invalid representation: {0}")]
    InvalidRepresentation(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("tensor power dimension {0} exceeds the cap of {cap}", cap = crate::charring::MAX_TENSOR_DIM)]
    DimensionTooLarge(usize),
    #[error("Markov element {0} does not lie in the image of the inclusion")]
    OutsideImage(usize),
    #[error("no 2-cochain gamma splits the form")]
    NoGamma,
    #[error("verification failed: {0}")]
    Verification(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
