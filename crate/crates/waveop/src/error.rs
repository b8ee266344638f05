//! Error type shared across the crate.

use std::fmt;

/// Errors produced by constructors and operations.
#[derive(Clone, Debug, PartialEq)]
pub enum Error {
    /// Two eigenvalues of the unperturbed spectrum are closer than the
    /// degeneracy tolerance; the offending index pair and their gap are
    /// reported since every denominator `eps_n - eps_m` becomes unusable.
    DegenerateSpectrum { i: usize, j: usize, gap: f64 },
    /// Matrix or vector dimensions do not agree.
    DimensionMismatch { expected: usize, found: usize },
    /// A matrix tagged symmetric fails the symmetry check.
    NonSymmetric { max_asymmetry: f64 },
    /// A scalar parameter is out of range (non-finite, non-positive, ...).
    InvalidParameter(String),
    /// Not enough data for a fit or report (too few samples, too few
    /// angular momenta, rank-deficient design matrix).
    InsufficientData(String),
    /// An iterative routine failed to reach its convergence target.
    ConvergenceFailure(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DegenerateSpectrum { i, j, gap } => write!(
                f,
                "degenerate spectrum: states {} and {} are separated by {:e}",
                i, j, gap
            ),
            Error::DimensionMismatch { expected, found } => {
                write!(
                    f,
                    "dimension mismatch: expected {}, found {}",
                    expected, found
                )
            }
            Error::NonSymmetric { max_asymmetry } => {
                write!(
                    f,
                    "matrix is not symmetric (max |a_ij - a_ji| = {:e})",
                    max_asymmetry
                )
            }
            Error::InvalidParameter(msg) => write!(f, "invalid parameter: {}", msg),
            Error::InsufficientData(msg) => write!(f, "insufficient data: {}", msg),
            Error::ConvergenceFailure(msg) => write!(f, "failed to converge: {}", msg),
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;
