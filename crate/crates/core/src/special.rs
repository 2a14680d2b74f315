//! Gamma-function values at half-integer arguments and the derived
//! sphere/ball constants used across the crate.
//!
//! Dimensions are small integers here, so the gamma function is evaluated by
//! running the recursion `gamma(z + 1) = z * gamma(z)` up from `gamma(1) = 1`
//! or `gamma(1/2) = sqrt(pi)`. No general-purpose gamma approximation is
//! needed, and the recursion is exact to rounding for any dimension that
//! could plausibly appear.

use std::f64::consts::PI;

/// `gamma(half / 2)` for a positive integer `half`.
pub(crate) fn gamma_half_integer(half: u32) -> f64 {
    debug_assert!(half >= 1);
    let (mut value, mut k) = if half % 2 == 0 {
        (1.0, 2) // gamma(1)
    } else {
        (PI.sqrt(), 1) // gamma(1/2)
    };
    while k < half {
        value *= k as f64 / 2.0;
        k += 2;
    }
    value
}

/// Surface area of the unit sphere in `dim` dimensions,
/// `2 pi^(dim/2) / gamma(dim/2)`.
pub(crate) fn unit_sphere_area(dim: usize) -> f64 {
    debug_assert!(dim >= 1);
    2.0 * PI.powf(dim as f64 / 2.0) / gamma_half_integer(dim as u32)
}

/// Volume of the unit ball in `dim` dimensions,
/// `pi^(dim/2) / gamma(dim/2 + 1)`.
pub(crate) fn unit_ball_volume(dim: usize) -> f64 {
    debug_assert!(dim >= 1);
    PI.powf(dim as f64 / 2.0) / gamma_half_integer(dim as u32 + 2)
}
