use num_complex::Complex64;

use crate::extended::ExtendedPoint;

/// Error conditions raised by evaluation, location and classification
/// routines.
///
/// Variants carry the offending point where that helps diagnostics.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Evaluation was requested at a point mass location, inside a density
    /// support, at a pole of the rational factor, or at another point where
    /// the represented function has no holomorphic value.
    EvaluationAtSingularity { z: Complex64 },
    /// A logarithm or fractional power was evaluated on its branch cut.
    BranchCutViolation { z: Complex64 },
    /// Holomorphy on the approach side of the requested boundary limit could
    /// not be certified from the representation.
    NotAGapEndpoint { x: f64 },
    /// The epsilon extrapolation of a smoothed integral did not stabilize.
    QuadratureFailure { detail: String },
    /// Factor data with coinciding zero and pole parameters.
    DegenerateFactor,
    /// The Nevanlinna part vanishes identically on the sample grid.
    ZeroFunction,
    /// The requested point is a pole of the transformed family member.
    PoleOfFamily { z: Complex64 },
    /// A ray limit neither converged nor diverged with a usable sign.
    LimitUnstable { x: f64 },
    /// Several distinct candidates passed the zero criteria; the input most
    /// likely violates the one-negative-square contract.
    MultipleCandidates { candidates: Vec<ExtendedPoint> },
    /// No candidate passed any of the three zero criteria; refine the scan
    /// resolution or the seed grid.
    NotFound { tau: f64 },
    /// The function does not vanish at the queried real point.
    NotAZero { x: f64, value: f64 },
    /// The function is not holomorphic at the queried real point.
    NotHolomorphic { x: f64 },
    /// Derivatives at the expansion point do not match the claimed vanishing
    /// order, or the branch residual check failed.
    DerivativeSignatureMismatch { z: Complex64, order: usize },
    /// The measure has more than a first order pole at the expansion point.
    HigherOrderSingularity { x: f64 },
    /// The factor form has no finite real zero parameter, so the real
    /// segment criteria do not apply.
    FormMismatch,
    /// Closed-form parameters violate their sign constraints.
    ConstraintViolation { detail: String },
    /// More than one closed form reproduces the sampled values.
    FitAmbiguous { detail: String },
    /// Constructor input violates a representation invariant.
    InvalidInput { detail: String },
}

impl std::fmt::Display for Error {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Error::EvaluationAtSingularity { z } => {
                write!(f, "evaluation at singular point {z}")
            }
            Error::BranchCutViolation { z } => {
                write!(f, "evaluation on a branch cut at {z}")
            }
            Error::NotAGapEndpoint { x } => {
                write!(f, "{x} is not an endpoint of a holomorphy gap")
            }
            Error::QuadratureFailure { detail } => {
                write!(f, "quadrature did not stabilize: {detail}")
            }
            Error::DegenerateFactor => write!(f, "factor has alpha = beta"),
            Error::ZeroFunction => write!(f, "Nevanlinna part is identically zero"),
            Error::PoleOfFamily { z } => {
                write!(f, "{z} is a pole of the transformed family member")
            }
            Error::LimitUnstable { x } => {
                write!(f, "ray limit at {x} did not stabilize")
            }
            Error::MultipleCandidates { candidates } => {
                write!(f, "multiple zero candidates found: {candidates:?}")
            }
            Error::NotFound { tau } => {
                write!(f, "no zero of nonpositive type found at parameter {tau}")
            }
            Error::NotAZero { x, value } => {
                write!(f, "function value {value} at {x} is not zero")
            }
            Error::NotHolomorphic { x } => {
                write!(f, "function is not holomorphic at {x}")
            }
            Error::DerivativeSignatureMismatch { z, order } => {
                write!(f, "derivatives at {z} do not match vanishing order {order}")
            }
            Error::HigherOrderSingularity { x } => {
                write!(f, "measure has a higher order singularity at {x}")
            }
            Error::FormMismatch => {
                write!(f, "factor form has no finite real zero parameter")
            }
            Error::ConstraintViolation { detail } => {
                write!(f, "constraint violation: {detail}")
            }
            Error::FitAmbiguous { detail } => write!(f, "ambiguous fit: {detail}"),
            Error::InvalidInput { detail } => write!(f, "invalid input: {detail}"),
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;
