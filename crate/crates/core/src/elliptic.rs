//! Incomplete elliptic integrals via Carlson symmetric forms.
//!
//! The Legendre integrals are evaluated through the symmetric forms `R_F`
//! and `R_D` using the duplication algorithm: each round halves the
//! argument spread by a factor of four, and once the arguments are nearly
//! equal a fifth-order Taylor expansion finishes the job. The algorithm is
//! uniformly accurate over the whole parameter range, which is what the
//! spheroid and triaxial closed forms need.
//!
//! Conventions: the second argument of [`elliptic_e_incomplete`] is the
//! *parameter* `p = k^2`, not the modulus `k`.

use std::f64::consts::{FRAC_PI_2, PI};

use crate::error::Error;

/// When the relative spread of the arguments drops below this, the Taylor
/// tail of the duplication algorithm is accurate to full double precision
/// (the neglected terms are `O(spread^6)`).
const DUPLICATION_SPREAD: f64 = 2e-3;

const MAX_DUPLICATIONS: usize = 120;

/// Incomplete elliptic integral of the second kind in parameter form,
/// `E(y | p) = int_0^y sqrt(1 - p sin^2 theta) d theta`.
///
/// `y` may be any finite real; the integral is extended by oddness and the
/// half-period identity `E(y + pi | p) = E(y | p) + 2 E(pi/2 | p)`.
///
/// # Errors
///
/// [`Error::ParameterOutOfRange`] unless `0 <= p <= 1`.
///
/// # Panics
///
/// If `y` is NaN or infinite.
pub fn elliptic_e_incomplete(y: f64, p: f64) -> Result<f64, Error> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::ParameterOutOfRange {
            name: "elliptic parameter p",
            value: p,
        });
    }
    assert!(y.is_finite(), "amplitude must be finite, got {y}");
    if p == 0.0 {
        // The integrand is identically 1.
        return Ok(y);
    }

    let sign = if y < 0.0 { -1.0 } else { 1.0 };
    let r = y.abs();
    let half_periods = (r / PI).floor();
    let rem = (r - half_periods * PI).clamp(0.0, PI);

    let complete = quarter_segment(FRAC_PI_2, p);
    let partial = if rem <= FRAC_PI_2 {
        quarter_segment(rem, p)
    } else {
        2.0 * complete - quarter_segment(PI - rem, p)
    };
    Ok(sign * (2.0 * half_periods * complete + partial))
}

/// `E(phi | p)` restricted to `0 <= phi <= pi/2`, `0 < p <= 1`.
fn quarter_segment(phi: f64, p: f64) -> f64 {
    let s = phi.sin();
    if p == 1.0 {
        // int_0^phi |cos| = sin(phi) on this range; the Carlson route would
        // hit the logarithmic singularity of R_F at (0, 0, 1) instead.
        return s;
    }
    if s == 0.0 {
        return 0.0;
    }
    let c = phi.cos();
    let x = c * c;
    let y = 1.0 - p * s * s;
    let s2 = s * s;
    s * (carlson_rf(x, y, 1.0) - (p / 3.0) * s2 * carlson_rd(x, y, 1.0))
}

/// Carlson symmetric integral of the first kind,
/// `R_F(x, y, z) = (1/2) int_0^inf dt / sqrt((t+x)(t+y)(t+z))`.
///
/// Arguments must be nonnegative with at most one of them zero.
pub(crate) fn carlson_rf(x: f64, y: f64, z: f64) -> f64 {
    debug_assert!(x >= 0.0 && y >= 0.0 && z >= 0.0);
    debug_assert!((x > 0.0) as u8 + (y > 0.0) as u8 + (z > 0.0) as u8 >= 2);
    let (mut x, mut y, mut z) = (x, y, z);
    let mut mean;
    let (dx, dy, dz);
    let mut rounds = 0;
    loop {
        let sx = x.sqrt();
        let sy = y.sqrt();
        let sz = z.sqrt();
        let lambda = sx * (sy + sz) + sy * sz;
        x = 0.25 * (x + lambda);
        y = 0.25 * (y + lambda);
        z = 0.25 * (z + lambda);
        mean = (x + y + z) / 3.0;
        let ex = (mean - x) / mean;
        let ey = (mean - y) / mean;
        let ez = (mean - z) / mean;
        if ex.abs().max(ey.abs()).max(ez.abs()) < DUPLICATION_SPREAD || rounds >= MAX_DUPLICATIONS
        {
            dx = ex;
            dy = ey;
            dz = ez;
            break;
        }
        rounds += 1;
    }
    let e2 = dx * dy - dz * dz;
    let e3 = dx * dy * dz;
    (1.0 + (e2 / 24.0 - 0.1 - 3.0 * e3 / 44.0) * e2 + e3 / 14.0) / mean.sqrt()
}

/// Carlson symmetric integral of the second kind (degenerate third),
/// `R_D(x, y, z) = (3/2) int_0^inf dt / (sqrt((t+x)(t+y)) (t+z)^(3/2))`.
///
/// `x + y` must be positive and `z` strictly positive.
pub(crate) fn carlson_rd(x: f64, y: f64, z: f64) -> f64 {
    debug_assert!(x >= 0.0 && y >= 0.0 && x + y > 0.0 && z > 0.0);
    let (mut x, mut y, mut z) = (x, y, z);
    let mut sum = 0.0;
    let mut factor = 1.0;
    let mut mean;
    let (dx, dy, dz);
    let mut rounds = 0;
    loop {
        let sx = x.sqrt();
        let sy = y.sqrt();
        let sz = z.sqrt();
        let lambda = sx * (sy + sz) + sy * sz;
        sum += factor / (sz * (z + lambda));
        factor *= 0.25;
        x = 0.25 * (x + lambda);
        y = 0.25 * (y + lambda);
        z = 0.25 * (z + lambda);
        mean = 0.2 * (x + y + 3.0 * z);
        let ex = (mean - x) / mean;
        let ey = (mean - y) / mean;
        let ez = (mean - z) / mean;
        if ex.abs().max(ey.abs()).max(ez.abs()) < DUPLICATION_SPREAD || rounds >= MAX_DUPLICATIONS
        {
            dx = ex;
            dy = ey;
            dz = ez;
            break;
        }
        rounds += 1;
    }
    let ea = dx * dy;
    let eb = dz * dz;
    let ec = ea - eb;
    let ed = ea - 6.0 * eb;
    let ee = ed + ec + ec;
    let series = 1.0
        + ed * (-3.0 / 14.0 + (9.0 / 88.0) * ed - (9.0 / 52.0) * dz * ee)
        + dz * (ee / 6.0 + dz * (-(9.0 / 22.0) * ec + (3.0 / 26.0) * dz * ea));
    3.0 * sum + factor * series / (mean * mean.sqrt())
}
