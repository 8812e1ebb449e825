use alloc::string::String;
use core::fmt;

use crate::states::ValidationReport;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Operator dimension is not `2^n` with `n >= 1`, or storage length does not match.
    BadDimension { dim: usize, len: usize },
    /// Two operands disagree on a dimension.
    DimensionMismatch { expected: usize, found: usize },
    /// Qubit index outside `0..n`.
    QubitOutOfRange { index: usize, n_qubits: usize },
    /// Direction is not unit within tolerance (`norm_sq` is `x²+y²+z²`).
    NonUnitDirection { norm_sq: f64 },
    /// Euler angle outside its range.
    AngleOutOfRange { name: &'static str, value: f64 },
    /// Matrix fails the Hermiticity check; carries the worst entrywise deviation.
    NotHermitian { deviation: f64 },
    /// Jacobi sweeps exhausted before the off-diagonal norm fell below threshold.
    EigenNoConvergence { sweeps: usize, off_norm: f64 },
    /// Density-matrix validation failed; the report lists every violation.
    InvalidState(ValidationReport),
    /// Not a permutation of `0..n`.
    InvalidPermutation,
    /// Convex weights negative or not summing to one.
    InvalidWeights { sum: f64 },
    /// Probability vector with negative entries or wrong normalization.
    InvalidDistribution { sum: f64, min: f64 },
    /// Portrait matrix entry negative or column not summing to one.
    InvalidPortrait { column: usize, sum: f64, min: f64 },
    /// Correlation family returned an unnormalized distribution for a CHSH column.
    FamilyNotNormalized { column: usize, sum: f64, min: f64 },
    /// Cut is not a nonempty bipartition of the qubits.
    InvalidCut(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::BadDimension { dim, len } => {
                write!(f, "operator dimension {dim} with {len} entries is not a 2^n x 2^n qubit operator")
            }
            Error::DimensionMismatch { expected, found } => {
                write!(f, "dimension mismatch: expected {expected}, found {found}")
            }
            Error::QubitOutOfRange { index, n_qubits } => {
                write!(f, "qubit index {index} out of range for {n_qubits} qubits")
            }
            Error::NonUnitDirection { norm_sq } => {
                write!(f, "direction is not a unit vector (|n|^2 = {norm_sq})")
            }
            Error::AngleOutOfRange { name, value } => write!(f, "angle {name} = {value} out of range"),
            Error::NotHermitian { deviation } => {
                write!(f, "matrix is not Hermitian (max deviation {deviation:e})")
            }
            Error::EigenNoConvergence { sweeps, off_norm } => write!(
                f,
                "eigensolver did not converge after {sweeps} sweeps (off-diagonal norm {off_norm:e})"
            ),
            Error::InvalidState(report) => write!(f, "invalid density matrix: {report}"),
            Error::InvalidPermutation => f.write_str("not a permutation of the qubit indices"),
            Error::InvalidWeights { sum } => {
                write!(f, "mixture weights must be nonnegative and sum to 1 (sum = {sum})")
            }
            Error::InvalidDistribution { sum, min } => {
                write!(f, "not a probability vector (sum = {sum}, min = {min})")
            }
            Error::InvalidPortrait { column, sum, min } => write!(
                f,
                "portrait column {column} is not stochastic (sum = {sum}, min = {min})"
            ),
            Error::FamilyNotNormalized { column, sum, min } => write!(
                f,
                "correlation family not normalized in CHSH column {column} (sum = {sum}, min = {min})"
            ),
            Error::InvalidCut(msg) => write!(f, "invalid cut: {msg}"),
        }
    }
}

impl core::error::Error for Error {}
