use alloc::string::String;
use core::fmt;

pub type Result<T> = core::result::Result<T, Error>;

/// Every failure the library reports. Numerical residuals are carried along
/// so callers can see how far an input was from satisfying an invariant.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    DimensionMismatch { expected: usize, found: usize },
    EmptyInput(&'static str),
    NotNormalized { norm: f64 },
    ZeroVector,
    RankDeficient { index: usize },
    NotHermitian { residual: f64 },
    NotProjector { residual: f64 },
    NotExhaustive { residual: f64 },
    NotExclusive { first: usize, second: usize, residual: f64 },
    LabelCount { expected: usize, found: usize },
    TimesNotIncreasing { index: usize },
    IndexOutOfRange { index: usize, len: usize },
    SetTooLarge { size: usize, cap: usize },
    InvalidPartition(String),
    ZeroConditioning { probability: f64 },
    ZeroBranch { norm: f64 },
    NotConserved { index: usize, residual: f64 },
    InvalidParameter(String),
    QuadratureDiverged { estimate: f64, error: f64, intervals: usize },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DimensionMismatch { expected, found } => {
                write!(f, "dimension mismatch: expected {expected}, found {found}")
            }
            Error::EmptyInput(what) => write!(f, "empty input: {what}"),
            Error::NotNormalized { norm } => {
                write!(f, "state vector is not normalized (norm {norm:e})")
            }
            Error::ZeroVector => write!(f, "zero vector cannot be normalized"),
            Error::RankDeficient { index } => {
                write!(f, "basis vector {index} is linearly dependent on the previous ones")
            }
            Error::NotHermitian { residual } => {
                write!(f, "matrix is not Hermitian (residual {residual:e})")
            }
            Error::NotProjector { residual } => {
                write!(f, "matrix is not an orthogonal projector (residual {residual:e})")
            }
            Error::NotExhaustive { residual } => {
                write!(f, "operators do not sum to the identity (residual {residual:e})")
            }
            Error::NotExclusive { first, second, residual } => write!(
                f,
                "projectors {first} and {second} are not mutually orthogonal (residual {residual:e})"
            ),
            Error::LabelCount { expected, found } => {
                write!(f, "expected {expected} labels, found {found}")
            }
            Error::TimesNotIncreasing { index } => {
                write!(f, "chain times must increase strictly (step {index})")
            }
            Error::IndexOutOfRange { index, len } => {
                write!(f, "index {index} out of range for length {len}")
            }
            Error::SetTooLarge { size, cap } => {
                write!(f, "history set would have {size} members, cap is {cap}")
            }
            Error::InvalidPartition(why) => write!(f, "invalid partition: {why}"),
            Error::ZeroConditioning { probability } => write!(
                f,
                "conditioning probability {probability:e} is too close to zero"
            ),
            Error::ZeroBranch { norm } => {
                write!(f, "realized branch has norm {norm:e}")
            }
            Error::NotConserved { index, residual } => write!(
                f,
                "projector {index} does not commute with the Hamiltonian (residual {residual:e})"
            ),
            Error::InvalidParameter(why) => write!(f, "invalid parameter: {why}"),
            Error::QuadratureDiverged { estimate, error, intervals } => write!(
                f,
                "quadrature did not converge: estimate {estimate:e} with error {error:e} after {intervals} intervals"
            ),
        }
    }
}

impl core::error::Error for Error {}
