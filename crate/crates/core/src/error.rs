use core::fmt;

/// Errors raised by the numerical core.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Grid parameters outside the supported range.
    InvalidGrid(&'static str),
    /// Two operands live on different grids.
    GridMismatch,
    /// A sampled value is NaN or infinite.
    NonFinite { index: usize },
    /// Value count does not match the grid.
    LengthMismatch { expected: usize, found: usize },
    /// Exponent outside `[1, ∞]` or otherwise invalid.
    InvalidExponent(&'static str),
    /// Sequences with different numbers of levels.
    LevelMismatch { left: usize, right: usize },
    /// Level index beyond the resolution of unity.
    LevelOutOfRange { level: usize, max: usize },
    /// `2^J` exceeds the Nyquist frequency of the grid.
    LevelsExceedNyquist { levels: usize, nyquist: f64 },
    /// An axis index `≥ n`.
    AxisOutOfRange { axis: usize, dim: usize },
    /// The decay value `g_∞` was required but not set.
    MissingValueAtInfinity,
    /// Truncation masks are not nested.
    MasksNotNested { index: usize },
    /// A parameter violated an operation precondition.
    Precondition(&'static str),
    /// An input does not decay at the box boundary.
    BoundaryLeak { magnitude: f64 },
    /// The set of trials or candidates was empty.
    Empty,
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidGrid(why) => write!(f, "invalid grid: {why}"),
            Error::GridMismatch => f.write_str("operands live on different grids"),
            Error::NonFinite { index } => write!(f, "non-finite sample at node {index}"),
            Error::LengthMismatch { expected, found } => {
                write!(f, "expected {expected} samples, found {found}")
            }
            Error::InvalidExponent(why) => write!(f, "invalid exponent: {why}"),
            Error::LevelMismatch { left, right } => {
                write!(f, "sequences have {left} and {right} levels")
            }
            Error::LevelOutOfRange { level, max } => {
                write!(f, "level {level} out of range (max {max})")
            }
            Error::LevelsExceedNyquist { levels, nyquist } => {
                write!(f, "2^{levels} exceeds the grid Nyquist frequency {nyquist}")
            }
            Error::AxisOutOfRange { axis, dim } => {
                write!(f, "axis {axis} out of range for dimension {dim}")
            }
            Error::MissingValueAtInfinity => f.write_str("exponent has no value at infinity"),
            Error::MasksNotNested { index } => {
                write!(
                    f,
                    "truncation mask {index} does not contain its predecessor"
                )
            }
            Error::Precondition(why) => write!(f, "precondition violated: {why}"),
            Error::BoundaryLeak { magnitude } => {
                write!(
                    f,
                    "input does not decay at the box boundary (|f| = {magnitude:e})"
                )
            }
            Error::Empty => f.write_str("empty input set"),
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;
