use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("not expandable at infinity: numerator degree {num} exceeds denominator degree {den}")]
    NotExpandable { num: usize, den: usize },
    #[error("division by zero")]
    DivisionByZero,
    #[error("index {index} out of range for {len} factors")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("window overflow: {0}")]
    WindowOverflow(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("not regular: {0}")]
    NotRegular(String),
}

pub type Result<T> = std::result::Result<T, Error>;
