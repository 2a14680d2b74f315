//! Solid ellipsoids, membership classification, and the confocal parameter
//! that drives every integral representation in this crate.

use crate::error::Error;
use crate::special::unit_ball_volume;

/// Absolute tolerance on the level value when solving for the confocal
/// parameter. The solver usually lands far below this; it is the guaranteed
/// bound, not the typical one.
const LEVEL_TOL: f64 = 1e-12;

/// Early-exit threshold for the root solve. Close to the rounding noise of
/// the level sum itself, so iterating further cannot help.
const LEVEL_TOL_TIGHT: f64 = 1e-14;

/// Default half-width of the boundary band used by [`Ellipsoid::classify`].
pub const DEFAULT_BOUNDARY_TOL: f64 = 1e-9;

const MAX_ROOT_ITERATIONS: usize = 100;

/// Where a point sits relative to the ellipsoid surface.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PointKind {
    Interior,
    Boundary,
    Exterior,
}

impl PointKind {
    /// Lower-case name, matching the wire format of the command-line tools.
    pub fn name(self) -> &'static str {
        match self {
            PointKind::Interior => "interior",
            PointKind::Boundary => "boundary",
            PointKind::Exterior => "exterior",
        }
    }
}

/// Classification of a point together with its confocal parameter.
///
/// `tau` is zero on the closed ellipsoid and strictly positive outside it,
/// where it is the unique `t > 0` with `sum_i x_i^2 / (a_i^2 + t) = 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PointClassification {
    pub kind: PointKind,
    pub tau: f64,
}

/// Axis-aligned solid ellipsoid `{ x : sum_i x_i^2 / a_i^2 <= 1 }` centered
/// at the origin, in dimension `>= 3`.
///
/// The dimension is the number of semi-axes. Construction validates the
/// axes, so a value of this type always satisfies its invariants.
#[derive(Debug, Clone, PartialEq)]
pub struct Ellipsoid {
    semi_axes: Vec<f64>,
}

impl Ellipsoid {
    /// Builds an ellipsoid from its semi-axes, in the caller's axis order.
    ///
    /// # Errors
    ///
    /// [`Error::NonPositiveAxis`] if any semi-axis is not a positive finite
    /// real, [`Error::DimensionTooSmall`] for fewer than three axes.
    pub fn new(semi_axes: &[f64]) -> Result<Self, Error> {
        if semi_axes.len() < 3 {
            return Err(Error::DimensionTooSmall {
                dim: semi_axes.len(),
            });
        }
        for (index, &value) in semi_axes.iter().enumerate() {
            if !(value.is_finite() && value > 0.0) {
                return Err(Error::NonPositiveAxis { index, value });
            }
        }
        Ok(Self {
            semi_axes: semi_axes.to_vec(),
        })
    }

    /// Ambient dimension.
    pub fn dim(&self) -> usize {
        self.semi_axes.len()
    }

    /// Semi-axes in construction order.
    pub fn semi_axes(&self) -> &[f64] {
        &self.semi_axes
    }

    /// Lebesgue volume: the unit-ball volume of the dimension times the
    /// product of the semi-axes.
    pub fn volume(&self) -> f64 {
        unit_ball_volume(self.dim()) * self.semi_axes.iter().product::<f64>()
    }

    /// A copy with every semi-axis multiplied by `factor`.
    pub fn scaled(&self, factor: f64) -> Result<Self, Error> {
        if !(factor.is_finite() && factor > 0.0) {
            return Err(Error::NonPositiveInput {
                name: "scale factor",
                value: factor,
            });
        }
        let semi_axes = self.semi_axes.iter().map(|a| a * factor).collect();
        Ok(Self { semi_axes })
    }

    /// The level value `sum_i x_i^2 / (a_i^2 + t)` of the confocal family.
    ///
    /// For fixed `x != 0` this is strictly decreasing in `t`; the ellipsoid
    /// itself is the sublevel set `<= 1` at `t = 0`.
    ///
    /// # Errors
    ///
    /// [`Error::NegativeParameter`] unless `t >= 0` (`t = +inf` is allowed
    /// and yields zero).
    pub fn level_value(&self, x: &[f64], t: f64) -> Result<f64, Error> {
        self.check_point(x);
        if t.is_nan() || t < 0.0 {
            return Err(Error::NegativeParameter { t });
        }
        Ok(self.level_raw(x, t))
    }

    /// Ratio of this ellipsoid's volume to the volume of its confocal
    /// companion at offset `t`, i.e. `prod_i a_i / sqrt(a_i^2 + t)`.
    ///
    /// Equals 1 at `t = 0` and decays to 0 as `t -> inf`.
    ///
    /// # Errors
    ///
    /// [`Error::NegativeParameter`] unless `t >= 0`.
    pub fn volume_ratio(&self, t: f64) -> Result<f64, Error> {
        if t.is_nan() || t < 0.0 {
            return Err(Error::NegativeParameter { t });
        }
        Ok(self.volume_ratio_raw(t))
    }

    /// Classifies `x` with the default boundary tolerance
    /// [`DEFAULT_BOUNDARY_TOL`].
    pub fn classify(&self, x: &[f64]) -> Result<PointClassification, Error> {
        self.classify_with_tol(x, DEFAULT_BOUNDARY_TOL)
    }

    /// Classifies `x` against the surface, treating level values within
    /// `boundary_tol` of 1 as on the boundary.
    ///
    /// Exterior points carry their confocal parameter; interior and boundary
    /// points carry `tau = 0`.
    pub fn classify_with_tol(
        &self,
        x: &[f64],
        boundary_tol: f64,
    ) -> Result<PointClassification, Error> {
        assert!(
            boundary_tol.is_finite() && boundary_tol > 0.0,
            "boundary tolerance must be a positive finite real, got {boundary_tol}"
        );
        self.check_point(x);
        let level = self.level_raw(x, 0.0);
        if (level - 1.0).abs() <= boundary_tol {
            return Ok(PointClassification {
                kind: PointKind::Boundary,
                tau: 0.0,
            });
        }
        if level < 1.0 {
            return Ok(PointClassification {
                kind: PointKind::Interior,
                tau: 0.0,
            });
        }
        Ok(PointClassification {
            kind: PointKind::Exterior,
            tau: self.confocal_parameter(x)?,
        })
    }

    /// The confocal parameter of an exterior point: the unique `t > 0` with
    /// `level_value(x, t) = 1`.
    ///
    /// Solved by a Newton iteration safeguarded with bisection on the
    /// bracket `(0, |x|^2)`. The level function is strictly decreasing and
    /// convex in `t`, so Newton steps launched from the left endpoint stay
    /// inside the bracket and converge monotonically; the bisection fallback
    /// only fires on rounding. The returned root satisfies
    /// `|level_value(x, tau) - 1| <= 1e-12`.
    ///
    /// # Errors
    ///
    /// [`Error::NotExterior`] if `level_value(x, 0) <= 1`, and
    /// [`Error::NoConvergence`] if the iteration cap is exhausted before the
    /// tolerance is met.
    pub fn confocal_parameter(&self, x: &[f64]) -> Result<f64, Error> {
        self.check_point(x);
        let level0 = self.level_raw(x, 0.0);
        if level0 <= 1.0 {
            return Err(Error::NotExterior { level: level0 });
        }

        // level(|x|^2) < sum_i x_i^2 / |x|^2 = 1, so the root is bracketed
        // by (0, |x|^2).
        let radius_sq: f64 = x.iter().map(|v| v * v).sum();
        let mut lo = 0.0_f64;
        let mut hi = radius_sq;
        let mut t = 0.0_f64;
        let mut residual = level0 - 1.0;

        for _ in 0..MAX_ROOT_ITERATIONS {
            let slope: f64 = -x
                .iter()
                .zip(&self.semi_axes)
                .map(|(xi, ai)| {
                    let d = ai * ai + t;
                    xi * xi / (d * d)
                })
                .sum::<f64>();
            let mut next = t - residual / slope;
            if !(next > lo && next < hi) {
                next = 0.5 * (lo + hi);
            }
            let next_residual = self.level_raw(x, next) - 1.0;
            if next_residual > 0.0 {
                lo = next;
            } else {
                hi = next;
            }
            let stalled = (next - t).abs() <= f64::EPSILON * next.abs();
            t = next;
            residual = next_residual;
            if residual.abs() <= LEVEL_TOL_TIGHT || (stalled && residual.abs() <= LEVEL_TOL) {
                return Ok(t);
            }
        }
        if residual.abs() <= LEVEL_TOL {
            Ok(t)
        } else {
            Err(Error::NoConvergence {
                iterations: MAX_ROOT_ITERATIONS,
            })
        }
    }

    /// Level value without argument validation, for use on hot paths where
    /// the caller has already validated `x` and guarantees `t >= 0`.
    pub(crate) fn level_raw(&self, x: &[f64], t: f64) -> f64 {
        debug_assert_eq!(x.len(), self.dim());
        x.iter()
            .zip(&self.semi_axes)
            .map(|(xi, ai)| xi * xi / (ai * ai + t))
            .sum()
    }

    /// Volume ratio without argument validation.
    pub(crate) fn volume_ratio_raw(&self, t: f64) -> f64 {
        self.semi_axes
            .iter()
            .map(|ai| ai / (ai * ai + t).sqrt())
            .product()
    }

    fn check_point(&self, x: &[f64]) {
        assert_eq!(
            x.len(),
            self.dim(),
            "point dimension {} does not match ellipsoid dimension {}",
            x.len(),
            self.dim()
        );
        assert!(
            x.iter().all(|v| v.is_finite()),
            "point coordinates must be finite, got {x:?}"
        );
    }
}
