use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("argument {0} is an integer; integer arguments take the exact path")]
    IntegerArgument(f64),

    #[error("argument {0} must be positive")]
    NonPositiveArgument(f64),

    #[error("value at {0} overflows double precision")]
    Overflow(f64),

    #[error("Gamma has a pole at {0}")]
    Pole(f64),

    #[error("invalid quadrature configuration: {0}")]
    InvalidConfig(String),

    #[error("degenerate contour: {0}")]
    ContourDegenerate(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("{0}")]
    Io(String),
}
