use thiserror::Error;

use crate::bipoly::BiDegree;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("division is not exact")]
    NotDivisible,
    #[error("input must be nonzero")]
    ZeroInput,
    #[error("generator {index} is not of bidegree (2,1): {found}")]
    WrongBidegree { index: usize, found: String },
    #[error("expected 4 generators, got {0}")]
    WrongGeneratorCount(usize),
    #[error("generators are linearly dependent (rank {0})")]
    DependentGenerators(usize),
    #[error("ideal has basepoints: {0}")]
    NotBasepointFree(String),
    #[error("syzygy pattern n01={n01}, n10={n10} is impossible for a basepoint-free ideal")]
    ImpossibleSyzygyPattern { n01: usize, n10: usize },
    #[error("the binary quadratic invariant vanishes identically")]
    QVanishes,
    #[error("resolution window {window} is too small: minimal generator found at {at}")]
    WindowExhausted { window: BiDegree, at: BiDegree },
    #[error("expected a 4-dimensional space of (1,1) syzygies, found {0}")]
    UnexpectedZ1Dimension(usize),
    #[error("input generators are not minimal")]
    NonMinimalGenerators,
    #[error("polynomial is not bihomogeneous: {0}")]
    NotBihomogeneous(String),
    #[error("parse error at {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("implicit determinant vanishes identically")]
    DegenerateDeterminant,
    #[error("consistency check failed: {0}")]
    Inconsistent(String),
}
