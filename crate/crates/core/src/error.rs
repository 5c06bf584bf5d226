use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("{what} of size {size} exceeds the configured budget {budget}")]
    SizeBudgetExceeded { what: &'static str, size: u128, budget: u128 },

    #[error("{n} does not divide the unit group order {group_order}")]
    BadDivisor { n: u64, group_order: u64 },

    #[error("no character of order {n} on a field with {group_order} units")]
    BadOrder { n: u64, group_order: u64 },

    #[error("composed character has order {got}, expected {expected}")]
    OrderCollapse { expected: u64, got: u64 },

    #[error("cyclotomic orders {0} and {1} are not compatible")]
    OrderMismatch(u64, u64),

    #[error("division is not exact")]
    InexactDivision,

    #[error("{j} is not a unit modulo {n}")]
    BadAutomorphism { j: u64, n: u64 },

    #[error("operands live in different fields")]
    FieldMismatch,

    #[error("precondition violated: {0}")]
    PreconditionViolated(String),

    #[error("curve is singular")]
    Singular,

    #[error("point is not on the curve")]
    NotOnCurve,

    #[error("polynomial is not squarefree")]
    NotSquarefree,

    #[error("Newton identity step {k} is not an exact integer division")]
    InexactNewtonDivision { k: usize },

    #[error("argument out of range: {0}")]
    OutOfRange(String),

    #[error("character sum did not reduce to a rational integer")]
    NonIntegralSum,

    #[error("integer overflow in {0}")]
    Overflow(&'static str),

    #[error("i/o: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
