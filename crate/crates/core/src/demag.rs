//! Demagnetizing tensors of uniformly magnetized ellipsoids.
//!
//! Inside a uniform three-axis ellipsoid the potential is a quadratic form,
//! so a uniform magnetization produces a uniform stray field. In the body
//! frame the demagnetizing tensor is diagonal with factors
//!
//! ```text
//!     P_i = (1/2) * int_0^inf gamma(t) / (a_i^2 + t) dt,
//! ```
//!
//! which are positive and sum to exactly 1. Longer axes get smaller
//! factors: a needle magnetized along its length barely demagnetizes
//! itself, a thin disc magnetized across its face almost completely does.
//!
//! Factors are reported in the caller's axis order everywhere. The closed
//! forms sort internally (they are stated for a descending axis ordering)
//! and undo the permutation before returning.

use crate::error::Error;
pub use crate::elliptic::elliptic_e_incomplete;
use crate::elliptic::{carlson_rd, carlson_rf};
use crate::geometry::{Ellipsoid, PointKind};
use crate::quadrature::{integrate_tail, IntegralResult, QuadratureConfig};

/// Relative axis gap under which [`demag_closed_triaxial`] refuses to
/// evaluate: below this the formulas divide by a vanishing axis difference
/// and lose all precision.
pub const DEGENERACY_TOL: f64 = 1e-8;

/// Allowed deviation of the trace from 1 when validating a tensor.
const TRACE_TOL: f64 = 1e-10;

/// Diagonal demagnetizing tensor of an ellipsoid, in the axis order the
/// caller used for the body.
///
/// Invariants, enforced on construction: every factor lies in `[0, 1]` and
/// the trace is 1 within `1e-10`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DemagTensor {
    factors: [f64; 3],
}

impl DemagTensor {
    /// Validates and wraps a factor triple.
    ///
    /// # Errors
    ///
    /// [`Error::InvalidDemagFactors`] when a factor leaves `[0, 1]` or the
    /// trace misses 1 by more than `1e-10`.
    pub fn new(factors: [f64; 3]) -> Result<Self, Error> {
        let trace = factors[0] + factors[1] + factors[2];
        let in_range = factors.iter().all(|p| (0.0..=1.0).contains(p));
        if !in_range || (trace - 1.0).abs() > TRACE_TOL {
            return Err(Error::InvalidDemagFactors { factors, trace });
        }
        Ok(Self { factors })
    }

    pub fn factors(&self) -> [f64; 3] {
        self.factors
    }

    pub fn trace(&self) -> f64 {
        self.factors[0] + self.factors[1] + self.factors[2]
    }
}

/// Uniform magnetization vector in the body frame.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Magnetization(pub [f64; 3]);

/// Demagnetizing factors computed by quadrature, with the per-axis
/// integral diagnostics.
///
/// Each entry of `quadratures` is scaled to the factor it produced, so
/// `quadratures[i].value == tensor.factors()[i]`.
#[derive(Debug, Clone, PartialEq)]
pub struct DemagEvaluation {
    pub tensor: DemagTensor,
    pub quadratures: [IntegralResult; 3],
}

impl DemagEvaluation {
    pub fn converged(&self) -> bool {
        self.quadratures.iter().all(|q| q.converged)
    }
}

/// Demagnetizing factors by adaptive quadrature of the defining integrals.
///
/// This is the authoritative route: it works for any axis configuration,
/// including the degenerate ones the closed forms refuse.
///
/// # Errors
///
/// [`Error::DimensionNotThree`] for bodies that are not three-dimensional;
/// quadrature errors propagate.
pub fn demag_factors_integral(
    e: &Ellipsoid,
    cfg: &QuadratureConfig,
) -> Result<DemagEvaluation, Error> {
    if e.dim() != 3 {
        return Err(Error::DimensionNotThree { dim: e.dim() });
    }
    let mut quadratures = Vec::with_capacity(3);
    let mut factors = [0.0_f64; 3];
    for (i, &ai) in e.semi_axes().iter().enumerate() {
        let a_sq = ai * ai;
        let raw = integrate_tail(|t| e.volume_ratio_raw(t) / (a_sq + t), 0.0, cfg)?;
        let scaled = raw.scaled(0.5);
        factors[i] = scaled.value;
        quadratures.push(scaled);
    }
    Ok(DemagEvaluation {
        tensor: DemagTensor::new(factors)?,
        quadratures: quadratures
            .try_into()
            .expect("exactly three axes were integrated"),
    })
}

/// Demagnetizing factors of a strictly triaxial body in closed form, via
/// incomplete elliptic integrals of the first and second kind.
///
/// With the axes sorted descending as `a1 > a2 > a3` and
///
/// ```text
///     amplitude phi = arccos(a3 / a1),
///     parameter p   = (a1^2 - a2^2) / (a1^2 - a3^2),
/// ```
///
/// the two independent factors are
///
/// ```text
///     P_3 = a2 / (a2^2 - a3^2) * (a2 - a1 a3 E(phi|p) / sqrt(a1^2 - a3^2)),
///     P_2 = a1 a2 a3 / (a1^2 - a2^2)
///           * (sqrt(a1^2 - a3^2) E(phi|p) / (a2^2 - a3^2)
///              - F(phi|p) / sqrt(a1^2 - a3^2))
///           - a3^2 / (a2^2 - a3^2),
/// ```
///
/// and the third is fixed by the unit trace, `P_1 = 1 - P_2 - P_3`.
/// Factors come back in the caller's axis order.
///
/// # Errors
///
/// [`Error::DimensionNotThree`] for non-three-dimensional bodies and
/// [`Error::DegenerateAxes`] when any two axes agree to better than
/// [`DEGENERACY_TOL`] relative; spheroids should use [`demag_prolate`],
/// [`demag_oblate`], or the integral route.
pub fn demag_closed_triaxial(e: &Ellipsoid) -> Result<DemagTensor, Error> {
    if e.dim() != 3 {
        return Err(Error::DimensionNotThree { dim: e.dim() });
    }
    let axes = e.semi_axes();
    for i in 0..3 {
        for j in (i + 1)..3 {
            if (axes[i] - axes[j]).abs() <= DEGENERACY_TOL * axes[i].max(axes[j]) {
                return Err(Error::DegenerateAxes {
                    i,
                    j,
                    a_i: axes[i],
                    a_j: axes[j],
                });
            }
        }
    }

    // Work on descending axes, remembering where each came from.
    let mut order = [0_usize, 1, 2];
    order.sort_by(|&p, &q| axes[q].total_cmp(&axes[p]));
    let (a1, a2, a3) = (axes[order[0]], axes[order[1]], axes[order[2]]);

    let alpha_sq = a1 * a1 - a2 * a2;
    let beta_sq = a1 * a1 - a3 * a3;
    let beta = beta_sq.sqrt();
    let mid_gap = a2 * a2 - a3 * a3;
    let p = alpha_sq / beta_sq;

    // F and E at amplitude arccos(a3/a1), assembled from the Carlson forms
    // with exact argument ratios: cos^2 = (a3/a1)^2, 1 - p sin^2 = (a2/a1)^2.
    let sin_phi = beta / a1;
    let x_arg = (a3 / a1) * (a3 / a1);
    let y_arg = (a2 / a1) * (a2 / a1);
    let f = sin_phi * carlson_rf(x_arg, y_arg, 1.0);
    let ell_e = f - (p / 3.0) * sin_phi.powi(3) * carlson_rd(x_arg, y_arg, 1.0);

    let p3 = a2 / mid_gap * (a2 - a1 * a3 * ell_e / beta);
    let p2 = a1 * a2 * a3 / alpha_sq * (beta * ell_e / mid_gap - f / beta) - a3 * a3 / mid_gap;
    let p1 = 1.0 - p2 - p3;

    let mut factors = [0.0_f64; 3];
    factors[order[0]] = p1;
    factors[order[1]] = p2;
    factors[order[2]] = p3;
    DemagTensor::new(factors)
}

/// Demagnetizing factors of a prolate spheroid with semi-axes
/// `(a1, a3, a3)`, `a1 > a3`: a cigar along the first axis.
///
/// With `s = sqrt(a1^2 - a3^2)`,
///
/// ```text
///     P_1 = a3^2 / s^3 * (a1 * artanh(s / a1) - s),
/// ```
///
/// and the transverse factors split the remainder evenly.
///
/// # Errors
///
/// [`Error::NotProlate`] unless `a1 > a3 > 0` strictly.
pub fn demag_prolate(a1: f64, a3: f64) -> Result<DemagTensor, Error> {
    if !(a1.is_finite() && a3.is_finite() && a3 > 0.0 && a1 > a3) {
        return Err(Error::NotProlate { a1, a3 });
    }
    let s_sq = a1 * a1 - a3 * a3;
    let s = s_sq.sqrt();
    let p1 = a3 * a3 / (s_sq * s) * (a1 * (s / a1).atanh() - s);
    let transverse = 0.5 * (1.0 - p1);
    DemagTensor::new([p1, transverse, transverse])
}

/// Demagnetizing factors of an oblate spheroid with semi-axes
/// `(a1, a1, a3)`, `a1 > a3`: a disc squashed along the third axis.
///
/// With `s = sqrt(a1^2 - a3^2)`,
///
/// ```text
///     P_3 = a1^2 / s^3 * (s - a3 * arctan(s / a3)),
/// ```
///
/// and the in-plane factors split the remainder evenly.
///
/// # Errors
///
/// [`Error::NotOblate`] unless `a1 > a3 > 0` strictly.
pub fn demag_oblate(a1: f64, a3: f64) -> Result<DemagTensor, Error> {
    if !(a1.is_finite() && a3.is_finite() && a3 > 0.0 && a1 > a3) {
        return Err(Error::NotOblate { a1, a3 });
    }
    let s_sq = a1 * a1 - a3 * a3;
    let s = s_sq.sqrt();
    let p3 = a1 * a1 / (s_sq * s) * (s - a3 * (s / a3).atan());
    let in_plane = 0.5 * (1.0 - p3);
    DemagTensor::new([in_plane, in_plane, p3])
}

/// Uniform stray field `-P m` inside the body for magnetization `m`.
pub fn stray_field(tensor: &DemagTensor, m: &Magnetization) -> [f64; 3] {
    let p = tensor.factors();
    [-p[0] * m.0[0], -p[1] * m.0[1], -p[2] * m.0[2]]
}

/// Magnetostatic potential `(P x) . m` at an interior point `x`.
///
/// The tensor must describe the body `e`; that link cannot be checked here,
/// only the interiority of `x` can.
///
/// # Errors
///
/// [`Error::DimensionNotThree`] for non-three-dimensional bodies and
/// [`Error::NotInterior`] for points outside the closed body.
pub fn magnetostatic_potential(
    e: &Ellipsoid,
    tensor: &DemagTensor,
    m: &Magnetization,
    x: &[f64],
) -> Result<f64, Error> {
    if e.dim() != 3 {
        return Err(Error::DimensionNotThree { dim: e.dim() });
    }
    let class = e.classify(x)?;
    if class.kind == PointKind::Exterior {
        return Err(Error::NotInterior {
            level: e.level_value(x, 0.0)?,
        });
    }
    let p = tensor.factors();
    Ok(p[0] * x[0] * m.0[0] + p[1] * x[1] * m.0[1] + p[2] * x[2] * m.0[2])
}
