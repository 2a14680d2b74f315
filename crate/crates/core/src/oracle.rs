//! Independent cross-checks for the quadrature pipeline: Monte Carlo
//! volume integration of the Newtonian kernel and finite-difference
//! differential operators.
//!
//! Nothing here shares code with the confocal integrals, which is the
//! point: agreement between the two routes validates both.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::Error;
use crate::geometry::{Ellipsoid, PointKind};
use crate::potential::kernel_constant;

/// Below this sample count the error bar of the estimate is not worth
/// reporting.
pub const MIN_SAMPLES: u64 = 1000;

/// Draws are processed in fixed-size shards, each with its own counter-mode
/// RNG stream. The split makes the estimate reproducible bit for bit
/// regardless of how many worker threads participate.
const SHARD_SIZE: u64 = 1 << 16;

/// A Monte Carlo estimate with its statistical error.
///
/// `std_error` is the sample standard deviation of the per-draw kernel
/// contributions divided by `sqrt(samples)`; `samples` is the number of
/// draws that landed inside the body and were averaged (not the number
/// requested). Identical `(seed, requested samples)` reproduce the estimate
/// exactly on the same platform.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleEstimate {
    pub value: f64,
    pub std_error: f64,
    pub samples: u64,
    pub seed: u64,
}

/// Monte Carlo estimate of the unit-density Newtonian potential at `x`.
///
/// Uniform draws from the bounding box are rejected against the body; the
/// kernel is averaged over the accepted draws and rescaled by the exact
/// body volume. A ball of radius `1e-6 * max(a_i)` around `x` is excluded
/// from sampling to keep the variance finite near the kernel singularity;
/// for interior points its exact contribution `h^2 / (2 (dim - 2))` is
/// added back analytically. (When `x` is interior but within `h` of the
/// boundary, part of that ball sticks outside the body; the resulting bias
/// is of order `h^2`, far below any reachable statistical error.)
///
/// # Errors
///
/// [`Error::TooFewSamples`] below [`MIN_SAMPLES`] requested draws;
/// dimension errors propagate from the kernel constant.
pub fn mc_potential(
    e: &Ellipsoid,
    x: &[f64],
    samples: u64,
    seed: u64,
) -> Result<OracleEstimate, Error> {
    if samples < MIN_SAMPLES {
        return Err(Error::TooFewSamples {
            min: MIN_SAMPLES,
            got: samples,
        });
    }
    let class = e.classify(x)?;
    let dim = e.dim();
    let kernel_scale = kernel_constant(dim)?;
    let axes = e.semi_axes();
    let max_axis = axes.iter().fold(0.0_f64, |m, &a| m.max(a));
    let exclusion_radius = 1e-6 * max_axis;
    let correction = if class.kind == PointKind::Interior {
        exclusion_radius * exclusion_radius / (2.0 * (dim as f64 - 2.0))
    } else {
        0.0
    };
    let kernel_power = 2 - dim as i32;

    let shards = samples.div_ceil(SHARD_SIZE);
    let partials: Vec<(f64, f64, u64)> = (0..shards)
        .into_par_iter()
        .map(|shard| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(shard);
            let count = SHARD_SIZE.min(samples - shard * SHARD_SIZE);
            let mut sum = 0.0_f64;
            let mut sum_sq = 0.0_f64;
            let mut accepted = 0_u64;
            let mut draw = vec![0.0_f64; dim];
            for _ in 0..count {
                for (component, &ai) in draw.iter_mut().zip(axes) {
                    *component = (2.0 * rng.random::<f64>() - 1.0) * ai;
                }
                if e.level_raw(&draw, 0.0) > 1.0 {
                    continue;
                }
                accepted += 1;
                let dist_sq: f64 = draw
                    .iter()
                    .zip(x)
                    .map(|(yi, xi)| (yi - xi) * (yi - xi))
                    .sum();
                let dist = dist_sq.sqrt();
                if dist < exclusion_radius {
                    // Inside the excluded ball: an accepted draw that
                    // contributes zero; the correction term covers it.
                    continue;
                }
                let k = kernel_scale * dist.powi(kernel_power);
                sum += k;
                sum_sq += k * k;
            }
            (sum, sum_sq, accepted)
        })
        .collect();

    // Sequential reduction in shard order; floating-point addition is not
    // associative, so this is what keeps the result thread-count
    // independent.
    let mut sum = 0.0_f64;
    let mut sum_sq = 0.0_f64;
    let mut accepted = 0_u64;
    for (s, q, n) in partials {
        sum += s;
        sum_sq += q;
        accepted += n;
    }
    if accepted < 2 {
        return Err(Error::TooFewSamples {
            min: MIN_SAMPLES,
            got: accepted,
        });
    }

    let n = accepted as f64;
    let mean = sum / n;
    let volume = e.volume();
    let variance = ((sum_sq - sum * sum / n) / (n - 1.0)).max(0.0);
    Ok(OracleEstimate {
        value: volume * mean + correction,
        std_error: volume * (variance / n).sqrt(),
        samples: accepted,
        seed,
    })
}

/// Central-difference gradient of `f` at `x` with step `h`, second-order
/// accurate.
///
/// # Panics
///
/// If `h` is not a positive finite real.
pub fn fd_gradient<F>(f: F, x: &[f64], h: f64) -> Vec<f64>
where
    F: Fn(&[f64]) -> f64,
{
    assert!(
        h.is_finite() && h > 0.0,
        "step must be a positive finite real, got {h}"
    );
    let mut probe = x.to_vec();
    let mut gradient = Vec::with_capacity(x.len());
    for i in 0..x.len() {
        probe[i] = x[i] + h;
        let above = f(&probe);
        probe[i] = x[i] - h;
        let below = f(&probe);
        probe[i] = x[i];
        gradient.push((above - below) / (2.0 * h));
    }
    gradient
}

/// Second-order Laplacian of `f` at `x` by the `2 dim + 1` point stencil.
///
/// # Panics
///
/// If `h` is not a positive finite real.
pub fn fd_laplacian<F>(f: F, x: &[f64], h: f64) -> f64
where
    F: Fn(&[f64]) -> f64,
{
    assert!(
        h.is_finite() && h > 0.0,
        "step must be a positive finite real, got {h}"
    );
    let center = f(x);
    let mut probe = x.to_vec();
    let mut acc = 0.0;
    for i in 0..x.len() {
        probe[i] = x[i] + h;
        let above = f(&probe);
        probe[i] = x[i] - h;
        let below = f(&probe);
        probe[i] = x[i];
        acc += (above - center) + (below - center);
    }
    acc / (h * h)
}
