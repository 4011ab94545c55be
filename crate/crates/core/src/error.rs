use alloc::string::String;
use core::fmt;

pub type Result<T> = core::result::Result<T, Error>;

/// Failure categories shared by every operation in the crate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// A label is missing from, or malformed for, the label alphabet.
    Alphabet(String),
    /// Dimensions of two inputs disagree.
    Shape(String),
    /// An argument violates an operation's precondition.
    Argument(String),
    /// Non-finite values in data or during optimization.
    Numeric(String),
    /// Evaluation could not be carried out (e.g. missing prediction).
    Evaluation(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Alphabet(msg) => write!(f, "alphabet error: {msg}"),
            Error::Shape(msg) => write!(f, "shape error: {msg}"),
            Error::Argument(msg) => write!(f, "argument error: {msg}"),
            Error::Numeric(msg) => write!(f, "numeric error: {msg}"),
            Error::Evaluation(msg) => write!(f, "evaluation error: {msg}"),
        }
    }
}

impl core::error::Error for Error {}

macro_rules! bail {
    ($kind:ident, $($arg:tt)*) => {
        return Err($crate::error::Error::$kind(alloc::format!($($arg)*)))
    };
}

pub(crate) use bail;
