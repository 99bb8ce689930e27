use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("operands live on different charts ({left} vs {right})")]
    ChartMismatch { left: String, right: String },

    #[error("unknown variable `{0}`")]
    UnknownVariable(String),

    #[error("{0} is not homogeneous in parity")]
    MixedParity(String),

    #[error("right inverse of the odd Laplacian is undefined on {0} (nu = 0)")]
    NuZero(String),

    #[error("field is not an element of cvect(0|3): {0}")]
    NotInCvect(String),

    #[error("{0} does not lie in sle°(3)")]
    NotSleDegree(String),

    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("odd variable `{var}` raised to power {exp} at position {pos}")]
    OddExponent { var: String, exp: u32, pos: usize },

    #[error("inconsistent input: {0}")]
    Inconsistent(String),

    #[error("linear system too large: {rows} x {cols} exceeds the guard of {limit} entries")]
    DimensionGuard { rows: usize, cols: usize, limit: usize },
}
