use thiserror::Error;

/// Errors shared by every module of the kernel.
///
/// `Anomaly` is reserved for situations the underlying theory rules out
/// (a classifier matching two classes, a cross-check disagreeing with a
/// closed form). Hitting one means either the input violated a stated
/// precondition or there is a bug; it is never silently absorbed.
#[derive(Debug, Error, PartialEq, Eq, Clone)]
pub enum Error {
    #[error("element does not belong to the algebra: {0}")]
    Mismatch(String),

    #[error("operation requires a finite algebra: {0}")]
    InfiniteAlgebra(String),

    #[error("unsupported descriptor for this operation: {0}")]
    UnsupportedDescriptor(String),

    #[error("invalid construction: {0}")]
    Invalid(String),

    #[error("algebra is not local: {0}")]
    NotLocal(String),

    #[error("good-sequence subtraction undefined: {0}")]
    NotSubtractable(String),

    #[error("search space exceeds configured budget: {0}")]
    BudgetExceeded(String),

    #[error("syntax error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("unknown builtin sequent: {0}")]
    UnknownBuiltin(String),

    #[error("unbound variable: {0}")]
    UnboundVar(String),

    #[error("anomaly: {0}")]
    Anomaly(String),
}

pub type Result<T> = std::result::Result<T, Error>;
