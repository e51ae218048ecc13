use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("degenerate lattice")]
    DegenerateLattice,
    #[error("lattice not negative definite")]
    NotNegativeDefinite,
    #[error("lattice is not even")]
    NotEven,
    #[error("gram matrix is not symmetric")]
    NotSymmetric,
    #[error("subgroup not isotropic")]
    NotIsotropic,
    #[error("not a p-group")]
    NotPGroup,
    #[error("length exceeds 2")]
    LengthExceedsTwo,
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("invalid binary form: {0}")]
    InvalidForm(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("Z-embedding search requires trivial MW")]
    MwNotTrivial,
    #[error("{path}: line {line}: {msg}")]
    Golden { path: String, line: usize, msg: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
