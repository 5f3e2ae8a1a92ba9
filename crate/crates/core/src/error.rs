use core::fmt;

/// Error type shared by every module of the crate.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// 2s is not a positive integer.
    InvalidSpin(f64),
    /// Operator or state dimension does not match the spin sector.
    DimensionMismatch { expected: usize, got: usize },
    /// State vector norm differs from 1 beyond tolerance.
    NotNormalized(f64),
    /// Matrix fails the Hermiticity check; payload is the largest deviation.
    NotHermitian(f64),
    /// Trace differs from 1 beyond tolerance.
    NotUnitTrace(f64),
    /// A physical state has an eigenvalue below the allowed slack.
    NegativeEigenvalue(f64),
    /// Quadrature grid smaller than the exactness threshold for this s.
    GridTooSmall {
        n_theta: usize,
        n_phi: usize,
        min_theta: usize,
        min_phi: usize,
    },
    /// Two grids do not share nodes and weights.
    GridMismatch,
    /// Fewer samples than unknowns, or a singular inversion system.
    RankDeficient,
    /// Distribution does not integrate to 1 against the grid measure.
    UnnormalizedDistribution(f64),
    /// Cat construction at a pole, where |z0> and |-z0> coincide.
    DegenerateCat,
    /// Rotation axis is not unit length.
    NonUnitAxis(f64),
    /// Qubit index out of range for the register size.
    TargetOutOfRange { target: usize, qubits: usize },
    /// Qubit count outside the supported range.
    QubitCountUnsupported(usize),
    /// Parameter outside its admissible range (epsilon, gamma, ...).
    ParameterOutOfRange(&'static str),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidSpin(s) => {
                write!(f, "invalid spin s = {s}: 2s must be a positive integer")
            }
            Error::DimensionMismatch { expected, got } => {
                write!(f, "dimension mismatch: expected {expected}, got {got}")
            }
            Error::NotNormalized(d) => write!(f, "state norm deviates from 1 by {d:e}"),
            Error::NotHermitian(d) => write!(f, "matrix deviates from Hermitian by {d:e}"),
            Error::NotUnitTrace(d) => write!(f, "trace deviates from 1 by {d:e}"),
            Error::NegativeEigenvalue(v) => write!(f, "state has negative eigenvalue {v:e}"),
            Error::GridTooSmall {
                n_theta,
                n_phi,
                min_theta,
                min_phi,
            } => write!(
                f,
                "grid {n_theta}x{n_phi} below exactness thresholds {min_theta}x{min_phi}"
            ),
            Error::GridMismatch => write!(f, "grids do not share nodes and weights"),
            Error::RankDeficient => write!(f, "sample set is rank deficient"),
            Error::UnnormalizedDistribution(d) => {
                write!(f, "distribution integral deviates from 1 by {d:e}")
            }
            Error::DegenerateCat => write!(f, "cat construction is degenerate at the poles"),
            Error::NonUnitAxis(n) => write!(f, "rotation axis has norm {n}, expected 1"),
            Error::TargetOutOfRange { target, qubits } => {
                write!(f, "target qubit {target} out of range for {qubits} qubits")
            }
            Error::QubitCountUnsupported(n) => write!(f, "unsupported qubit count {n}"),
            Error::ParameterOutOfRange(what) => write!(f, "parameter out of range: {what}"),
        }
    }
}

impl core::error::Error for Error {}
