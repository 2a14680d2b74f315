//! Error taxonomy shared by every module in the crate.

/// Everything that can go wrong when building geometry or evaluating one of
/// the integral operators.
///
/// Invalid *numerical contracts* (non-finite points, mismatched dimensions)
/// are programming errors and panic instead; the variants here are reserved
/// for conditions a caller can reasonably hit with well-formed code.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// A semi-axis was zero, negative, NaN, or infinite.
    #[error("semi-axis {index} is {value}; every semi-axis must be a positive finite real")]
    NonPositiveAxis { index: usize, value: f64 },

    /// The ambient dimension is below the smallest one the kernel supports.
    #[error("dimension {dim} is too small; the Newtonian kernel needs at least 3")]
    DimensionTooSmall { dim: usize },

    /// A confocal family parameter must satisfy `t >= 0`.
    #[error("confocal parameter t = {t} is negative")]
    NegativeParameter { t: f64 },

    /// The confocal root is only defined for points strictly outside the
    /// ellipsoid.
    #[error("point is not exterior (level value {level} <= 1)")]
    NotExterior { level: f64 },

    /// The safeguarded root solve ran out of iterations. With a valid
    /// bracket this does not occur in practice; it is reported rather than
    /// silently returning a bad root.
    #[error("confocal root solve did not converge within {iterations} iterations")]
    NoConvergence { iterations: usize },

    /// An integration bound was NaN or infinite.
    #[error("integration bound {bound} is not finite")]
    InvalidBound { bound: f64 },

    /// An adaptive quadrature stopped at its subdivision cap with the error
    /// estimate still above tolerance.
    #[error("quadrature error estimate {error_estimate:.3e} exceeds tolerance {tolerance:.3e}")]
    ToleranceNotMet { error_estimate: f64, tolerance: f64 },

    /// Hollow shells are the region between an ellipsoid and an enlarged
    /// copy of itself, so the enlargement factor must exceed one.
    #[error("shell scale factor must be > 1, got {scale}")]
    ScaleNotGreaterThanOne { scale: f64 },

    /// The requested operation is specific to three dimensions.
    #[error("operation is defined in dimension 3 only, got {dim}")]
    DimensionNotThree { dim: usize },

    /// An argument left the domain documented for it.
    #[error("{name} = {value} is outside its valid domain")]
    ParameterOutOfRange { name: &'static str, value: f64 },

    /// Two semi-axes coincide to within the degeneracy threshold, so the
    /// triaxial closed forms would divide by a vanishing axis gap.
    #[error(
        "semi-axes {i} and {j} ({a_i} and {a_j}) are equal within the \
         degeneracy threshold; use the spheroid forms or the integral route"
    )]
    DegenerateAxes { i: usize, j: usize, a_i: f64, a_j: f64 },

    /// Prolate closed forms need a strictly dominant symmetry axis.
    #[error("axes (a1, a3) = ({a1}, {a3}) are not prolate; need a1 > a3 > 0")]
    NotProlate { a1: f64, a3: f64 },

    /// Oblate closed forms need a strictly shortest symmetry axis.
    #[error("axes (a1, a3) = ({a1}, {a3}) are not oblate; need a1 > a3 > 0")]
    NotOblate { a1: f64, a3: f64 },

    /// The uniform-field representation of the magnetostatic potential only
    /// holds inside the body.
    #[error("point is not interior (level value {level} >= 1)")]
    NotInterior { level: f64 },

    /// Monte Carlo estimates below the minimum sample count have useless
    /// error bars.
    #[error("Monte Carlo needs at least {min} samples, got {got}")]
    TooFewSamples { min: u64, got: u64 },

    /// A physical scalar (gravitational constant, density, total mass)
    /// must be a positive finite real.
    #[error("{name} = {value} must be a positive finite real")]
    NonPositiveInput { name: &'static str, value: f64 },

    /// Demagnetizing factors must each lie in [0, 1] and sum to one.
    #[error("factors {factors:?} do not form a demagnetizing tensor (trace {trace})")]
    InvalidDemagFactors { factors: [f64; 3], trace: f64 },
}
