use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeomError {
    #[error("degenerate rectangle {0}")]
    DegenerateRect(String),
    #[error("invalid rectilinear polygon: {0}")]
    InvalidRectilinear(String),
    #[error("invalid convex polygon: {0}")]
    InvalidConvex(String),
}

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Geom(#[from] GeomError),
    #[error("topping index {index} out of range (m = {m})")]
    InvalidIndex { index: usize, m: usize },
    #[error("operation requires a {expected} cake, found {found}")]
    UnsupportedCake { expected: &'static str, found: &'static str },
    #[error("order is not a permutation of 0..{0}")]
    NotAPermutation(usize),
    #[error("arrangement is not maximal: topping {index} can grow {direction}")]
    NotMaximal { index: usize, direction: String },
    #[error("no contractible hole: {0}")]
    NoContractibleHole(String),
    #[error("not an exact cover: {0}")]
    NotExactCover(String),
    #[error("{bound} requires m >= {min}, got m = {m}")]
    BelowDomain { bound: &'static str, min: usize, m: usize },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("decode error: {0}")]
    Decode(String),
    #[error("invalid arrangement: {0}")]
    InvalidArrangement(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
