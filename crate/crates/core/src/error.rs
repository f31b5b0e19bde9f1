use alloc::string::String;
use core::fmt;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// A computation asked for degrees beyond the populated window.
    Truncation { requested: u32, populated: u32 },
    /// Total degree of an operation exceeds its configured ceiling.
    WindowExceeded { degree: u32, max: u32 },
    /// Matrix shape disagrees with source/target dimensions.
    ShapeMismatch { degree: u32, expected: (usize, usize), found: (usize, usize) },
    /// Guard larger than the window it is supposed to sit inside.
    InvalidGuard { guard: u32, max: u32 },
    /// Guard band does not exceed the largest operation degree used.
    GuardTooSmall { guard: u32, operation_degree: u32 },
    Parse(String),
    NotSubHopf { degree: u32, witness: String },
    NotSubcomodule { degree: u32, witness: String },
    InvalidCoaction { degree: u32, witness: String },
    FreenessMismatch { degree: u32, expected: usize, found: usize },
    /// A request that exceeds the configured size guard.
    TooLarge(String),
    /// Inputs violate an algebraic precondition (named in the message).
    Precondition(String),
    /// A lift through a resolution or chain map did not exist.
    LiftFailed { stage: usize, degree: i32 },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Truncation { requested, populated } => {
                write!(f, "window {requested} exceeds populated range 0..={populated}")
            }
            Error::WindowExceeded { degree, max } => {
                write!(f, "degree {degree} exceeds window ceiling {max}")
            }
            Error::ShapeMismatch { degree, expected, found } => write!(
                f,
                "matrix in degree {degree} has shape {}x{}, expected {}x{}",
                found.0, found.1, expected.0, expected.1
            ),
            Error::InvalidGuard { guard, max } => {
                write!(f, "guard {guard} exceeds window maximum {max}")
            }
            Error::GuardTooSmall { guard, operation_degree } => write!(
                f,
                "guard {guard} does not exceed operation degree {operation_degree}"
            ),
            Error::Parse(msg) => write!(f, "parse error: {msg}"),
            Error::NotSubHopf { degree, witness } => {
                write!(f, "not closed under the coproduct in degree {degree}: {witness}")
            }
            Error::NotSubcomodule { degree, witness } => {
                write!(f, "not a subcomodule in degree {degree}: {witness}")
            }
            Error::InvalidCoaction { degree, witness } => {
                write!(f, "coaction not well defined in degree {degree}: {witness}")
            }
            Error::FreenessMismatch { degree, expected, found } => write!(
                f,
                "convolution mismatch in degree {degree}: expected {expected}, found {found}"
            ),
            Error::TooLarge(msg) => write!(f, "too large: {msg}"),
            Error::Precondition(msg) => write!(f, "precondition failed: {msg}"),
            Error::LiftFailed { stage, degree } => {
                write!(f, "no lift at stage {stage}, degree {degree}")
            }
        }
    }
}

impl core::error::Error for Error {}
