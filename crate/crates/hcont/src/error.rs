//! Error type shared by every module of the crate.

use std::fmt;

/// Everything that can go wrong constructing or operating on spaces,
/// intervals, and interval functions.
///
/// Operations distinguish *verdict-false* results (reported through
/// [`crate::report::CheckReport`] or [`crate::hausdorff::HContReport`]) from
/// genuine precondition violations, which surface as an `Error`.
#[derive(Debug)]
pub enum Error {
    /// NaN supplied where an extended real was required.
    NanValue,
    /// Interval constructor called with `lo > hi`.
    EmptyInterval { lo: f64, hi: f64 },
    /// Point index out of range for the space.
    UnknownPoint { point: usize, len: usize },
    /// Operands live on different spaces.
    SpaceMismatch,
    /// A space must contain at least one point.
    EmptySpace,
    /// Finite topologies are capped at a bitmask word of points.
    TooManyPoints { got: usize, max: usize },
    /// Space constructor arguments out of range (grid bounds, radii, ...).
    InvalidSpace(String),
    /// Builtin example asked for on a space of the wrong shape.
    DimensionMismatch { example: String, detail: String },
    /// Name not in the builtin example catalog.
    UnknownExample(String),
    /// Function value vector length does not match the space.
    WrongValueCount { expected: usize, got: usize },
    /// Operation requires a point-valued function; witness point is interval-valued.
    NotPointValued { point: usize },
    /// Operation defined only on one space backend.
    WrongBackend {
        op: &'static str,
        needs: &'static str,
    },
    /// Operation requires a Hausdorff-continuous input.
    NotHContinuous { op: &'static str },
    /// The set supplied to a dense-agreement check is not dense.
    NotDense,
    /// Dense-agreement premise `f <= g` fails on the supplied dense set.
    PremiseFailed { point: usize },
    /// Family operations need at least one member.
    EmptyFamily,
    /// Family member rises above the supplied upper bound (or below, for infima).
    BoundViolated { member: usize, point: usize },
    /// Value chain for an enumeration was empty.
    EmptyChain,
    /// Endpoint of the function lies outside the supplied value chain.
    NotInChain { point: usize },
    /// Construction needs finite endpoints; witness point is infinite.
    InfiniteEndpoint { point: usize },
    /// Claimed minorant rises above the function at the witness point.
    MinorantNotBelow { point: usize },
    /// Claimed majorant drops below the function at the witness point.
    MajorantNotAbove { point: usize },
    /// Numeric argument out of its documented range (radius, tolerance, ...).
    InvalidArgument(String),
    /// Exhaustive enumeration would exceed the configured budget.
    BudgetExceeded(String),
    /// File I/O failure.
    Io(std::io::Error),
    /// JSON (de)serialization failure.
    Json(serde_json::Error),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::NanValue => write!(f, "NaN is not an extended real"),
            Error::EmptyInterval { lo, hi } => {
                write!(f, "empty interval: lo = {lo} exceeds hi = {hi}")
            }
            Error::UnknownPoint { point, len } => {
                write!(
                    f,
                    "point index {point} out of range for a {len}-point space"
                )
            }
            Error::SpaceMismatch => write!(f, "operands are defined on different spaces"),
            Error::EmptySpace => write!(f, "space must contain at least one point"),
            Error::TooManyPoints { got, max } => {
                write!(
                    f,
                    "finite topology has {got} points; at most {max} are supported"
                )
            }
            Error::InvalidSpace(msg) => write!(f, "invalid space: {msg}"),
            Error::DimensionMismatch { example, detail } => {
                write!(f, "example '{example}' does not fit this space: {detail}")
            }
            Error::UnknownExample(name) => write!(f, "unknown builtin example '{name}'"),
            Error::WrongValueCount { expected, got } => {
                write!(
                    f,
                    "function has {got} values but the space has {expected} points"
                )
            }
            Error::NotPointValued { point } => {
                write!(f, "function is interval-valued at point {point}; a point-valued function is required")
            }
            Error::WrongBackend { op, needs } => {
                write!(f, "{op} is only defined on the {needs} backend")
            }
            Error::NotHContinuous { op } => {
                write!(f, "{op} requires a Hausdorff-continuous input")
            }
            Error::NotDense => write!(f, "the supplied point set is not dense"),
            Error::PremiseFailed { point } => {
                write!(f, "premise f <= g fails on the dense set at point {point}")
            }
            Error::EmptyFamily => write!(f, "function family must be non-empty"),
            Error::BoundViolated { member, point } => {
                write!(
                    f,
                    "family member {member} violates the supplied bound at point {point}"
                )
            }
            Error::EmptyChain => write!(f, "value chain must be non-empty"),
            Error::NotInChain { point } => {
                write!(f, "endpoint at point {point} lies outside the value chain")
            }
            Error::InfiniteEndpoint { point } => {
                write!(
                    f,
                    "endpoint at point {point} is infinite; finite values required"
                )
            }
            Error::MinorantNotBelow { point } => {
                write!(f, "minorant exceeds the function at point {point}")
            }
            Error::MajorantNotAbove { point } => {
                write!(f, "majorant drops below the function at point {point}")
            }
            Error::InvalidArgument(msg) => write!(f, "invalid argument: {msg}"),
            Error::BudgetExceeded(msg) => write!(f, "enumeration budget exceeded: {msg}"),
            Error::Io(e) => write!(f, "i/o error: {e}"),
            Error::Json(e) => write!(f, "json error: {e}"),
        }
    }
}

impl std::error::Error for Error {
    fn source(&self) -> Option<&(dyn std::error::Error + 'static)> {
        match self {
            Error::Io(e) => Some(e),
            Error::Json(e) => Some(e),
            _ => None,
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e)
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e)
    }
}
