//! Newtonian potential and field of a uniform solid ellipsoid, plus the
//! gravitational and hollow-shell variants built on top of them.
//!
//! Everything reduces to one-dimensional integrals along the confocal
//! family: with `gamma(t)` the volume ratio and `L(x, t)` the level value,
//! the potential of the unit-density body is
//!
//! ```text
//!     N(x) = (1/4) * int_tau(x)^inf gamma(t) * (1 - L(x, t)) dt
//! ```
//!
//! and its gradient has components
//!
//! ```text
//!     dN/dx_i = -(x_i / 2) * int_tau(x)^inf gamma(t) / (a_i^2 + t) dt,
//! ```
//!
//! where `tau(x)` is the confocal parameter (zero on the closed body). The
//! boundary term from differentiating the lower limit vanishes because the
//! integrand of `N` is zero at `t = tau(x)` for exterior points. Inside the
//! body the gradient is exactly linear in `x`, which is the demagnetizing
//! tensor route; here the integrals are evaluated adaptively for any point.
//!
//! In three dimensions the `gamma`-only term of `N` decays as `t^(-3/2)`,
//! the one rate the tail quadrature cannot push past eight digits (see the
//! quadrature module docs). That term is exactly an elliptic integral,
//! `int_tau^inf gamma dt = 2 a_1 a_2 a_3 R_F(a_1^2+tau, a_2^2+tau,
//! a_3^2+tau)`, so it is taken in closed form and only the level terms,
//! which decay as `t^(-5/2)`, are integrated numerically. Other dimensions
//! have no half-power tail and use the integrand as written.

use std::f64::consts::PI;

use crate::elliptic::carlson_rf;
use crate::error::Error;
use crate::geometry::{Ellipsoid, PointClassification};
use crate::quadrature::{integrate_tail, IntegralResult, QuadratureConfig};
use crate::special::unit_sphere_area;

/// Normalizing constant `c` of the Newtonian kernel `c * |x|^(2-dim)`, the
/// one that makes the kernel a fundamental solution of `-Delta`:
/// `c = 1 / ((dim - 2) * area(S^(dim-1)))`.
///
/// # Errors
///
/// [`Error::DimensionTooSmall`] for `dim < 3`, where the kernel has a
/// different (logarithmic or affine) shape.
pub fn kernel_constant(dim: usize) -> Result<f64, Error> {
    if dim < 3 {
        return Err(Error::DimensionTooSmall { dim });
    }
    Ok(1.0 / ((dim as f64 - 2.0) * unit_sphere_area(dim)))
}

/// A potential evaluation with its classification and quadrature evidence.
///
/// `quadrature` carries the fully assembled result, so
/// `quadrature.value == value`; its error estimate covers the numerically
/// integrated terms (closed-form contributions are exact, so a value built
/// entirely from them reports zero error and zero evaluations).
#[derive(Debug, Clone, PartialEq)]
pub struct PotentialValue {
    pub value: f64,
    pub point_class: PointClassification,
    pub quadrature: IntegralResult,
}

/// A field (gradient) evaluation; one quadrature per component.
///
/// Each entry of `quadratures` is already scaled to the component it
/// produced, so `quadratures[i].value == components[i]`.
#[derive(Debug, Clone, PartialEq)]
pub struct FieldValue {
    pub components: Vec<f64>,
    pub point_class: PointClassification,
    pub quadratures: Vec<IntegralResult>,
}

impl FieldValue {
    /// True when every component met its tolerance.
    pub fn converged(&self) -> bool {
        self.quadratures.iter().all(|q| q.converged)
    }

    /// Summed error estimate across components.
    pub fn error_estimate(&self) -> f64 {
        self.quadratures.iter().map(|q| q.error_estimate).sum()
    }
}

/// Potential of the unit-density ellipsoid at `x` (any point of space).
///
/// # Errors
///
/// Propagates classification and quadrature errors. A result that exhausted
/// the subdivision budget is returned with `quadrature.converged == false`
/// rather than as an error.
pub fn potential_at(
    e: &Ellipsoid,
    x: &[f64],
    cfg: &QuadratureConfig,
) -> Result<PotentialValue, Error> {
    let point_class = e.classify(x)?;
    let tau = point_class.tau;
    let quadrature = if e.dim() == 3 {
        potential_quadrature_3d(e, x, tau, cfg)?
    } else {
        integrate_tail(
            |t| e.volume_ratio_raw(t) * (1.0 - e.level_raw(x, t)),
            tau,
            cfg,
        )?
        .scaled(0.25)
    };
    Ok(PotentialValue {
        value: quadrature.value,
        point_class,
        quadrature,
    })
}

/// Three-dimensional potential with the `t^(-3/2)` term split off: the
/// `gamma`-only integral becomes `2 a_1 a_2 a_3 R_F`, and each level term
/// `x_i^2 int gamma / (a_i^2 + t) dt` (absent when `x_i = 0`) goes through
/// the adaptive engine with a benign `t^(-5/2)` tail.
fn potential_quadrature_3d(
    e: &Ellipsoid,
    x: &[f64],
    tau: f64,
    cfg: &QuadratureConfig,
) -> Result<IntegralResult, Error> {
    let axes = e.semi_axes();
    let axis_product: f64 = axes.iter().product();
    let closed = 0.5
        * axis_product
        * carlson_rf(
            axes[0] * axes[0] + tau,
            axes[1] * axes[1] + tau,
            axes[2] * axes[2] + tau,
        );
    let mut acc = IntegralResult::exact(closed);
    for (i, &ai) in axes.iter().enumerate() {
        if x[i] == 0.0 {
            continue;
        }
        let a_sq = ai * ai;
        let part = integrate_tail(|t| e.volume_ratio_raw(t) / (a_sq + t), tau, cfg)?
            .scaled(-0.25 * x[i] * x[i]);
        acc = IntegralResult::combine(acc.value + part.value, &acc, &part);
    }
    Ok(acc)
}

/// Gradient of the unit-density potential at `x`, one adaptive integral per
/// component.
pub fn field_at(e: &Ellipsoid, x: &[f64], cfg: &QuadratureConfig) -> Result<FieldValue, Error> {
    let point_class = e.classify(x)?;
    let dim = e.dim();
    let mut components = Vec::with_capacity(dim);
    let mut quadratures = Vec::with_capacity(dim);
    for (i, &ai) in e.semi_axes().iter().enumerate() {
        let a_sq = ai * ai;
        let raw = integrate_tail(
            |t| e.volume_ratio_raw(t) / (a_sq + t),
            point_class.tau,
            cfg,
        )?;
        let scaled = raw.scaled(-0.5 * x[i]);
        components.push(scaled.value);
        quadratures.push(scaled);
    }
    Ok(FieldValue {
        components,
        point_class,
        quadratures,
    })
}

/// Potential of the hollow region between `e` scaled by `scale` and `e`
/// itself, by superposition of the two solid bodies.
///
/// The returned classification is relative to the *inner* ellipsoid, so
/// `Interior` means the point sits in the cavity, where the potential is
/// constant and the field vanishes for spherical shells.
///
/// # Errors
///
/// [`Error::ScaleNotGreaterThanOne`] unless `scale > 1` and finite.
pub fn hollow_shell_potential(
    e: &Ellipsoid,
    scale: f64,
    x: &[f64],
    cfg: &QuadratureConfig,
) -> Result<PotentialValue, Error> {
    if !(scale.is_finite() && scale > 1.0) {
        return Err(Error::ScaleNotGreaterThanOne { scale });
    }
    let outer = e.scaled(scale)?;
    let full = potential_at(&outer, x, cfg)?;
    let cavity = potential_at(e, x, cfg)?;
    let quadrature = IntegralResult::combine(
        full.value - cavity.value,
        &full.quadrature,
        &cavity.quadrature,
    );
    Ok(PotentialValue {
        value: quadrature.value,
        point_class: cavity.point_class,
        quadrature,
    })
}

/// How the mass of a gravitating body is specified.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MassSpec {
    /// Uniform mass density.
    Density(f64),
    /// Total mass, converted to a density by the body volume.
    TotalMass(f64),
}

/// Gravitational constant and mass specification for
/// [`gravitational_potential`]. Constructors validate positivity, so a
/// value of this type is always physically meaningful.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GravityConfig {
    gravitational_constant: f64,
    mass: MassSpec,
}

impl GravityConfig {
    pub fn with_density(gravitational_constant: f64, density: f64) -> Result<Self, Error> {
        check_positive("gravitational constant G", gravitational_constant)?;
        check_positive("density rho", density)?;
        Ok(Self {
            gravitational_constant,
            mass: MassSpec::Density(density),
        })
    }

    pub fn with_total_mass(gravitational_constant: f64, total_mass: f64) -> Result<Self, Error> {
        check_positive("gravitational constant G", gravitational_constant)?;
        check_positive("total mass", total_mass)?;
        Ok(Self {
            gravitational_constant,
            mass: MassSpec::TotalMass(total_mass),
        })
    }

    pub fn gravitational_constant(&self) -> f64 {
        self.gravitational_constant
    }

    pub fn mass_spec(&self) -> MassSpec {
        self.mass
    }

    /// The uniform density this configuration assigns to the body `e`.
    pub fn density_in(&self, e: &Ellipsoid) -> f64 {
        match self.mass {
            MassSpec::Density(rho) => rho,
            MassSpec::TotalMass(m) => m / e.volume(),
        }
    }
}

fn check_positive(name: &'static str, value: f64) -> Result<(), Error> {
    if value.is_finite() && value > 0.0 {
        Ok(())
    } else {
        Err(Error::NonPositiveInput { name, value })
    }
}

/// Physical gravitational potential `u(x) = 4 pi G rho N(x)` of a uniform
/// three-dimensional body, in the positive sign convention: outside a
/// sphere of total mass `M` the value is exactly `G M / |x|`.
///
/// # Errors
///
/// [`Error::DimensionNotThree`] unless `e` is three-dimensional; the
/// `4 pi G rho` normalization is specific to the physical case.
pub fn gravitational_potential(
    e: &Ellipsoid,
    gravity: &GravityConfig,
    x: &[f64],
    cfg: &QuadratureConfig,
) -> Result<PotentialValue, Error> {
    if e.dim() != 3 {
        return Err(Error::DimensionNotThree { dim: e.dim() });
    }
    let factor = 4.0 * PI * gravity.gravitational_constant() * gravity.density_in(e);
    let base = potential_at(e, x, cfg)?;
    let quadrature = base.quadrature.scaled(factor);
    Ok(PotentialValue {
        value: quadrature.value,
        point_class: base.point_class,
        quadrature,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::PointKind;
    use approx::{assert_abs_diff_eq, assert_relative_eq};

    fn strict() -> QuadratureConfig {
        QuadratureConfig::strict()
    }

    #[test]
    fn kernel_constant_matches_hand_values() {
        // 1/(4 pi), 1/(4 pi^2), 1/(8 pi^2).
        assert_relative_eq!(
            kernel_constant(3).unwrap(),
            0.079_577_471_545_947_67,
            max_relative = 1e-15
        );
        assert_relative_eq!(
            kernel_constant(4).unwrap(),
            0.025_330_295_910_584_444,
            max_relative = 1e-15
        );
        assert_relative_eq!(
            kernel_constant(5).unwrap(),
            0.012_665_147_955_292_222,
            max_relative = 1e-15
        );
        assert_eq!(
            kernel_constant(2),
            Err(Error::DimensionTooSmall { dim: 2 })
        );
    }

    #[test]
    fn unit_sphere_interior_and_exterior_closed_forms() {
        let e = Ellipsoid::new(&[1.0, 1.0, 1.0]).unwrap();
        let center = potential_at(&e, &[0.0, 0.0, 0.0], &strict()).unwrap();
        assert_eq!(center.point_class.kind, PointKind::Interior);
        assert_abs_diff_eq!(center.value, 0.5, epsilon = 1e-12);
        assert!(center.quadrature.converged);

        // Interior: (3 a^2 - |x|^2) / 6; exterior: a^3 / (3 |x|).
        let inside = potential_at(&e, &[0.3, -0.4, 0.5], &strict()).unwrap();
        assert_abs_diff_eq!(inside.value, (3.0 - 0.5) / 6.0, epsilon = 1e-12);

        let outside = potential_at(&e, &[2.0, 0.0, 0.0], &strict()).unwrap();
        assert_eq!(outside.point_class.kind, PointKind::Exterior);
        assert_abs_diff_eq!(outside.value, 1.0 / 6.0, epsilon = 1e-12);
        assert_relative_eq!(outside.point_class.tau, 3.0, max_relative = 1e-12);

        let far = potential_at(&e, &[0.0, -5.0, 0.0], &strict()).unwrap();
        assert_abs_diff_eq!(far.value, 1.0 / 15.0, epsilon = 1e-12);
    }

    #[test]
    fn triaxial_reference_values() {
        // Reference values computed independently with 40-digit arithmetic
        // on the same confocal integrals.
        let e = Ellipsoid::new(&[3.0, 2.0, 1.0]).unwrap();
        let origin = potential_at(&e, &[0.0, 0.0, 0.0], &strict()).unwrap();
        assert_abs_diff_eq!(origin.value, 1.525_933_855_710_090_7, epsilon = 5e-12);

        let interior = potential_at(&e, &[1.0, -1.0, 0.5], &strict()).unwrap();
        assert_eq!(interior.point_class.kind, PointKind::Interior);
        assert_abs_diff_eq!(interior.value, 1.242_138_328_550_862_4, epsilon = 5e-12);

        let exterior = potential_at(&e, &[4.0, 2.0, 1.0], &strict()).unwrap();
        assert_eq!(exterior.point_class.kind, PointKind::Exterior);
        assert_abs_diff_eq!(exterior.value, 0.455_877_337_891_930_53, epsilon = 5e-12);

        let spheroid = Ellipsoid::new(&[2.0, 1.0, 1.0]).unwrap();
        let v = potential_at(&spheroid, &[3.0, 0.0, 0.0], &strict()).unwrap();
        assert_abs_diff_eq!(v.value, 0.239_654_003_699_053_65, epsilon = 5e-12);
    }

    #[test]
    fn four_dimensional_ball_reference_values() {
        let b4 = Ellipsoid::new(&[1.0; 4]).unwrap();
        let center = potential_at(&b4, &[0.0; 4], &strict()).unwrap();
        // (1/4) int_0^inf (1+t)^-2 dt = 1/4.
        assert_abs_diff_eq!(center.value, 0.25, epsilon = 1e-12);

        let outside = potential_at(&b4, &[2.0, 0.0, 0.0, 0.0], &strict()).unwrap();
        // Exterior of a ball: c_4 |B^4| |x|^-2 = 1/32 at |x| = 2.
        assert_abs_diff_eq!(outside.value, 0.03125, epsilon = 1e-12);
    }

    #[test]
    fn potential_scales_quadratically() {
        let e = Ellipsoid::new(&[3.0, 2.0, 1.0]).unwrap();
        for &(x, lambda) in &[([1.0, -1.0, 0.5], 2.5), ([4.0, 2.0, 1.0], 0.3)] {
            let base = potential_at(&e, &x, &strict()).unwrap().value;
            let scaled_e = e.scaled(lambda).unwrap();
            let xs: Vec<f64> = x.iter().map(|v| v * lambda).collect();
            let scaled = potential_at(&scaled_e, &xs, &strict()).unwrap().value;
            assert_relative_eq!(scaled, lambda * lambda * base, max_relative = 1e-10);
        }
    }

    #[test]
    fn field_reference_values() {
        let e = Ellipsoid::new(&[3.0, 2.0, 1.0]).unwrap();
        // Interior gradient is linear in x; these components equal the
        // negated demagnetizing factors times the coordinates.
        let inside = field_at(&e, &[1.0, -1.0, 0.5], &strict()).unwrap();
        let expect = [
            -0.156_300_698_829_271_0,
            0.267_154_040_262_004_52,
            -0.288_272_630_454_362_25,
        ];
        for (got, want) in inside.components.iter().zip(expect) {
            assert_abs_diff_eq!(*got, want, epsilon = 5e-12);
        }
        assert!(inside.converged());

        let outside = field_at(&e, &[4.0, 2.0, 1.0], &strict()).unwrap();
        let expect = [
            -0.090_348_313_102_323_56,
            -0.052_597_443_999_259_39,
            -0.029_340_482_181_146_41,
        ];
        for (got, want) in outside.components.iter().zip(expect) {
            assert_abs_diff_eq!(*got, want, epsilon = 5e-12);
        }
    }

    #[test]
    fn field_vanishes_at_the_center() {
        let e = Ellipsoid::new(&[3.0, 2.0, 1.0]).unwrap();
        let f = field_at(&e, &[0.0, 0.0, 0.0], &strict()).unwrap();
        for c in &f.components {
            assert_eq!(*c, 0.0);
        }
    }

    #[test]
    fn hollow_shell_rejects_bad_scales() {
        let e = Ellipsoid::new(&[1.0, 1.0, 1.0]).unwrap();
        let cfg = QuadratureConfig::default();
        for &scale in &[1.0, 0.5, -2.0, f64::NAN, f64::INFINITY] {
            assert!(matches!(
                hollow_shell_potential(&e, scale, &[0.0, 0.0, 0.0], &cfg),
                Err(Error::ScaleNotGreaterThanOne { .. })
            ));
        }
    }

    #[test]
    fn spherical_shell_cavity_value() {
        // Sphere radii 1 and 2: cavity potential is (2a)^2/2 - a^2/2 = 1.5.
        let e = Ellipsoid::new(&[1.0, 1.0, 1.0]).unwrap();
        let v = hollow_shell_potential(&e, 2.0, &[0.2, -0.1, 0.3], &strict()).unwrap();
        assert_eq!(v.point_class.kind, PointKind::Interior);
        assert_abs_diff_eq!(v.value, 1.5, epsilon = 1e-11);
    }

    #[test]
    fn gravity_config_validation() {
        assert!(GravityConfig::with_density(6.674e-11, 5500.0).is_ok());
        assert!(matches!(
            GravityConfig::with_density(0.0, 1.0),
            Err(Error::NonPositiveInput { .. })
        ));
        assert!(GravityConfig::with_density(1.0, -3.0).is_err());
        assert!(GravityConfig::with_total_mass(1.0, 0.0).is_err());
        assert!(GravityConfig::with_total_mass(f64::NAN, 1.0).is_err());
    }

    #[test]
    fn gravitational_potential_matches_point_mass_far_away() {
        // Unit sphere, unit mass, G = 1: outside, u = M/|x| exactly.
        let e = Ellipsoid::new(&[1.0, 1.0, 1.0]).unwrap();
        let gravity = GravityConfig::with_total_mass(1.0, 1.0).unwrap();
        let u = gravitational_potential(&e, &gravity, &[2.0, 0.0, 0.0], &strict()).unwrap();
        assert_abs_diff_eq!(u.value, 0.5, epsilon = 1e-11);

        // Center of the same body: u = (3/2) G M / a.
        let c = gravitational_potential(&e, &gravity, &[0.0, 0.0, 0.0], &strict()).unwrap();
        assert_abs_diff_eq!(c.value, 1.5, epsilon = 1e-11);

        // Density and total-mass specifications agree when consistent.
        let rho = 1.0 / e.volume();
        let gravity_rho = GravityConfig::with_density(1.0, rho).unwrap();
        let u2 = gravitational_potential(&e, &gravity_rho, &[2.0, 0.0, 0.0], &strict()).unwrap();
        assert_relative_eq!(u.value, u2.value, max_relative = 1e-14);
    }

    #[test]
    fn gravitational_potential_is_three_dimensional_only() {
        let b4 = Ellipsoid::new(&[1.0; 4]).unwrap();
        let gravity = GravityConfig::with_density(1.0, 1.0).unwrap();
        assert_eq!(
            gravitational_potential(&b4, &gravity, &[0.0; 4], &QuadratureConfig::default())
                .unwrap_err(),
            Error::DimensionNotThree { dim: 4 }
        );
    }
}
