//! The `validate` subcommand: a seeded, sequential battery of invariant
//! checks against a given body. Every check prints one line; the report is
//! byte-identical for identical axes and seed (no timing, no thread
//! dependence), so reruns can be diffed.

use std::fmt::Write as _;

use anyhow::bail;
use ellipsoid_core::{
    demag_factors_integral, demag_oblate, demag_prolate, elliptic_e_incomplete, fd_gradient,
    fd_laplacian, field_at, hollow_shell_potential, integrate, mc_potential, potential_at,
    Ellipsoid, PointKind, QuadratureConfig,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type CheckOutcome = Result<String, String>;

/// Runs the full battery and renders the report. The boolean is true when
/// every check passed.
pub fn run_validation(
    e: &Ellipsoid,
    seed: u64,
    cfg: &QuadratureConfig,
) -> anyhow::Result<(String, bool)> {
    if e.dim() != 3 {
        bail!("validate requires a three-dimensional body");
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let checks: Vec<(&str, CheckOutcome)> = vec![
        ("classification-consistency", classification_consistency(e, &mut rng)),
        ("confocal-identity", confocal_identity(e, &mut rng)),
        ("confocal-scaling", confocal_scaling(e, &mut rng)),
        ("sphere-confocal", sphere_confocal(&mut rng)),
        ("potential-positivity", potential_positivity(e, &mut rng, cfg)),
        ("potential-decay", potential_decay(e, &mut rng, cfg)),
        ("potential-scaling", potential_scaling(e, &mut rng, cfg)),
        ("boundary-continuity", boundary_continuity(e, &mut rng, cfg)),
        ("field-gradient-consistency", field_gradient_consistency(e, &mut rng, cfg)),
        ("interior-field-linearity", interior_field_linearity(e, &mut rng, cfg)),
        ("demag-trace", demag_trace(e, cfg)),
        ("demag-ordering", demag_ordering(e, &mut rng, cfg)),
        ("demag-scale-invariance", demag_scale_invariance(e, cfg)),
        ("spheroid-closed-forms", spheroid_closed_forms(cfg)),
        ("elliptic-self-consistency", elliptic_self_consistency(&mut rng)),
        ("monte-carlo-potential", monte_carlo_potential(e, &mut rng, cfg, seed)),
        ("poisson-laplacian", poisson_laplacian(e, &mut rng)),
        ("shell-theorem", shell_theorem(&mut rng, cfg)),
    ];

    let mut report = String::new();
    writeln!(
        report,
        "validation report (axes = {:?}, seed = {seed})",
        e.semi_axes()
    )?;
    let total = checks.len();
    let mut passed = 0;
    for (index, (name, outcome)) in checks.into_iter().enumerate() {
        match outcome {
            Ok(detail) => {
                passed += 1;
                writeln!(report, "check {:02} {name:<28} PASS ({detail})", index + 1)?;
            }
            Err(detail) => {
                writeln!(report, "check {:02} {name:<28} FAIL ({detail})", index + 1)?;
            }
        }
    }
    writeln!(report, "result: {passed}/{total} checks passed")?;
    Ok((report, passed == total))
}

/// A direction bounded away from zero length.
fn direction(rng: &mut ChaCha8Rng) -> [f64; 3] {
    loop {
        let d: [f64; 3] = std::array::from_fn(|_| 2.0 * rng.random::<f64>() - 1.0);
        if d.iter().map(|v| v * v).sum::<f64>() > 1e-2 {
            return d;
        }
    }
}

/// Scales `d` onto the confocal level `target^2`: inside for target < 1.
fn place(e: &Ellipsoid, d: &[f64; 3], target: f64) -> Vec<f64> {
    let level: f64 = e
        .semi_axes()
        .iter()
        .zip(d)
        .map(|(a, v)| (v / a) * (v / a))
        .sum();
    let s = target / level.sqrt();
    d.iter().map(|v| v * s).collect()
}

fn classification_consistency(e: &Ellipsoid, rng: &mut ChaCha8Rng) -> CheckOutcome {
    for _ in 0..10 {
        let d = direction(rng);
        let cases = [
            (0.2 + 0.6 * rng.random::<f64>(), PointKind::Interior),
            (1.0, PointKind::Boundary),
            (1.2 + 2.0 * rng.random::<f64>(), PointKind::Exterior),
        ];
        for (target, expected) in cases {
            let x = place(e, &d, target);
            let class = e.classify(&x).map_err(|err| err.to_string())?;
            if class.kind != expected {
                return Err(format!(
                    "point at level {target} classified {}, expected {}",
                    class.kind.name(),
                    expected.name()
                ));
            }
            if expected != PointKind::Exterior && class.tau != 0.0 {
                return Err(format!("non-exterior point carries tau = {}", class.tau));
            }
        }
    }
    Ok("30 placements classified as constructed".into())
}

fn confocal_identity(e: &Ellipsoid, rng: &mut ChaCha8Rng) -> CheckOutcome {
    let mut worst = 0.0f64;
    for _ in 0..20 {
        let d = direction(rng);
        let x = place(e, &d, 1.1 + 2.0 * rng.random::<f64>());
        let tau = e.confocal_parameter(&x).map_err(|err| err.to_string())?;
        let level = e.level_value(&x, tau).map_err(|err| err.to_string())?;
        worst = worst.max((level - 1.0).abs());
    }
    let detail = format!("max |level(x, tau) - 1| = {worst:.3e}");
    if worst < 1e-9 {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn confocal_scaling(e: &Ellipsoid, rng: &mut ChaCha8Rng) -> CheckOutcome {
    let lambda = 1.75;
    let scaled = e.scaled(lambda).map_err(|err| err.to_string())?;
    let mut worst = 0.0f64;
    for _ in 0..10 {
        let d = direction(rng);
        let x = place(e, &d, 1.5);
        let tau = e.confocal_parameter(&x).map_err(|err| err.to_string())?;
        let xs: Vec<f64> = x.iter().map(|v| v * lambda).collect();
        let tau_s = scaled.confocal_parameter(&xs).map_err(|err| err.to_string())?;
        worst = worst.max((tau_s - lambda * lambda * tau).abs() / tau_s.abs());
    }
    let detail = format!("max rel deviation from lambda^2 tau = {worst:.3e}");
    if worst < 1e-9 {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn sphere_confocal(rng: &mut ChaCha8Rng) -> CheckOutcome {
    let sphere = Ellipsoid::new(&[1.0, 1.0, 1.0]).map_err(|err| err.to_string())?;
    let mut worst = 0.0f64;
    for _ in 0..10 {
        let d = direction(rng);
        let x = place(&sphere, &d, 1.2 + 2.0 * rng.random::<f64>());
        let tau = sphere.confocal_parameter(&x).map_err(|err| err.to_string())?;
        let r2: f64 = x.iter().map(|v| v * v).sum();
        worst = worst.max((tau - (r2 - 1.0)).abs());
    }
    let detail = format!("max |tau - (|x|^2 - 1)| = {worst:.3e}");
    if worst < 1e-10 {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn potential_positivity(e: &Ellipsoid, rng: &mut ChaCha8Rng, cfg: &QuadratureConfig) -> CheckOutcome {
    let center = potential_at(e, &[0.0, 0.0, 0.0], cfg).map_err(|err| err.to_string())?;
    let mut lowest = f64::INFINITY;
    for _ in 0..10 {
        let d = direction(rng);
        let x = place(e, &d, 0.3 + 2.0 * rng.random::<f64>());
        let v = potential_at(e, &x, cfg).map_err(|err| err.to_string())?.value;
        if v <= 0.0 {
            return Err(format!("potential {v} is not positive"));
        }
        if v > center.value * (1.0 + 1e-9) {
            return Err(format!("potential {v} exceeds the center value {}", center.value));
        }
        lowest = lowest.min(v);
    }
    Ok(format!(
        "10 points positive, min = {lowest:.3e}, center = {:.3e}",
        center.value
    ))
}

fn potential_decay(e: &Ellipsoid, rng: &mut ChaCha8Rng, cfg: &QuadratureConfig) -> CheckOutcome {
    for _ in 0..5 {
        let d = direction(rng);
        let near = place(e, &d, 1.4);
        let far: Vec<f64> = near.iter().map(|v| v * 2.0).collect();
        let n_near = potential_at(e, &near, cfg).map_err(|err| err.to_string())?.value;
        let n_far = potential_at(e, &far, cfg).map_err(|err| err.to_string())?.value;
        if n_far >= n_near {
            return Err(format!("potential grew outward: {n_near:.6e} -> {n_far:.6e}"));
        }
    }
    Ok("5 exterior rays strictly decreasing".into())
}

fn potential_scaling(e: &Ellipsoid, rng: &mut ChaCha8Rng, cfg: &QuadratureConfig) -> CheckOutcome {
    let mut worst = 0.0f64;
    for _ in 0..5 {
        let lambda = 0.5 + 2.0 * rng.random::<f64>();
        let d = direction(rng);
        let x = place(e, &d, 0.4 + 1.5 * rng.random::<f64>());
        let base = potential_at(e, &x, cfg).map_err(|err| err.to_string())?.value;
        let scaled_e = e.scaled(lambda).map_err(|err| err.to_string())?;
        let xs: Vec<f64> = x.iter().map(|v| v * lambda).collect();
        let scaled = potential_at(&scaled_e, &xs, cfg).map_err(|err| err.to_string())?.value;
        worst = worst.max((scaled - lambda * lambda * base).abs() / scaled.abs());
    }
    let detail = format!("max rel deviation from lambda^2 N = {worst:.3e}");
    if worst < 1e-9 {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn boundary_continuity(e: &Ellipsoid, rng: &mut ChaCha8Rng, cfg: &QuadratureConfig) -> CheckOutcome {
    let mut worst = 0.0f64;
    for _ in 0..5 {
        let d = direction(rng);
        let inner = place(e, &d, 1.0 - 1e-9);
        let outer = place(e, &d, 1.0 + 1e-9);
        let n_in = potential_at(e, &inner, cfg).map_err(|err| err.to_string())?.value;
        let n_out = potential_at(e, &outer, cfg).map_err(|err| err.to_string())?.value;
        worst = worst.max((n_in - n_out).abs());
    }
    let detail = format!("max one-sided jump = {worst:.3e}");
    if worst < 1e-8 {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn field_gradient_consistency(
    e: &Ellipsoid,
    rng: &mut ChaCha8Rng,
    cfg: &QuadratureConfig,
) -> CheckOutcome {
    let h = 1e-4 * e.semi_axes().iter().cloned().fold(f64::INFINITY, f64::min);
    let mut worst = 0.0f64;
    for _ in 0..5 {
        let d = direction(rng);
        let x = place(e, &d, 0.5 + 1.2 * rng.random::<f64>());
        let analytic = field_at(e, &x, cfg).map_err(|err| err.to_string())?;
        let numeric = fd_gradient(|p| potential_at(e, p, cfg).unwrap().value, &x, h);
        for (a, n) in analytic.components.iter().zip(numeric) {
            worst = worst.max((a - n).abs());
        }
    }
    let detail = format!("max |field - fd gradient| = {worst:.3e}");
    if worst < 2e-5 {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn interior_field_linearity(
    e: &Ellipsoid,
    rng: &mut ChaCha8Rng,
    cfg: &QuadratureConfig,
) -> CheckOutcome {
    let mut worst = 0.0f64;
    for _ in 0..5 {
        let d = direction(rng);
        let x = place(e, &d, 0.8);
        let half: Vec<f64> = x.iter().map(|v| 0.5 * v).collect();
        let full = field_at(e, &x, cfg).map_err(|err| err.to_string())?;
        let at_half = field_at(e, &half, cfg).map_err(|err| err.to_string())?;
        for (f, g) in full.components.iter().zip(at_half.components) {
            worst = worst.max((0.5 * f - g).abs());
        }
    }
    let detail = format!("max |field(x)/2 - field(x/2)| = {worst:.3e}");
    if worst < 1e-9 {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn demag_trace(e: &Ellipsoid, cfg: &QuadratureConfig) -> CheckOutcome {
    let eval = demag_factors_integral(e, cfg).map_err(|err| err.to_string())?;
    let gap = (eval.tensor.factors().iter().sum::<f64>() - 1.0).abs();
    let detail = format!("|tr P - 1| = {gap:.3e}");
    if eval.converged() && gap < 1e-9 {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn demag_ordering(e: &Ellipsoid, rng: &mut ChaCha8Rng, cfg: &QuadratureConfig) -> CheckOutcome {
    let mut shapes: Vec<Vec<f64>> = vec![e.semi_axes().to_vec()];
    for _ in 0..5 {
        shapes.push((0..3).map(|_| 10.0f64.powf(2.0 * rng.random::<f64>() - 1.0)).collect());
    }
    for mut axes in shapes {
        axes.sort_by(|a, b| b.total_cmp(a));
        let body = Ellipsoid::new(&axes).map_err(|err| err.to_string())?;
        let p = demag_factors_integral(&body, cfg)
            .map_err(|err| err.to_string())?
            .tensor
            .factors();
        if p[0] > p[1] || p[1] > p[2] {
            return Err(format!("axes {axes:?} gave unordered factors {p:?}"));
        }
    }
    Ok("6 sorted shapes gave ascending factors".into())
}

fn demag_scale_invariance(e: &Ellipsoid, cfg: &QuadratureConfig) -> CheckOutcome {
    let base = demag_factors_integral(e, cfg)
        .map_err(|err| err.to_string())?
        .tensor
        .factors();
    let scaled_body = e.scaled(2.5).map_err(|err| err.to_string())?;
    let scaled = demag_factors_integral(&scaled_body, cfg)
        .map_err(|err| err.to_string())?
        .tensor
        .factors();
    let worst = base
        .iter()
        .zip(scaled)
        .map(|(b, s)| (b - s).abs())
        .fold(0.0, f64::max);
    let detail = format!("max |P(a) - P(2.5a)| = {worst:.3e}");
    if worst < 1e-9 {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn spheroid_closed_forms(cfg: &QuadratureConfig) -> CheckOutcome {
    let mut worst = 0.0f64;
    let prolate = demag_prolate(2.0, 1.0).map_err(|err| err.to_string())?.factors();
    let via_integral = demag_factors_integral(
        &Ellipsoid::new(&[2.0, 1.0, 1.0]).map_err(|err| err.to_string())?,
        cfg,
    )
    .map_err(|err| err.to_string())?
    .tensor
    .factors();
    for (c, q) in prolate.iter().zip(via_integral) {
        worst = worst.max((c - q).abs());
    }
    let oblate = demag_oblate(2.0, 1.0).map_err(|err| err.to_string())?.factors();
    let via_integral = demag_factors_integral(
        &Ellipsoid::new(&[2.0, 2.0, 1.0]).map_err(|err| err.to_string())?,
        cfg,
    )
    .map_err(|err| err.to_string())?
    .tensor
    .factors();
    for (c, q) in oblate.iter().zip(via_integral) {
        worst = worst.max((c - q).abs());
    }
    let detail = format!("max closed-vs-integral gap = {worst:.3e}");
    if worst < 1e-9 {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn elliptic_self_consistency(rng: &mut ChaCha8Rng) -> CheckOutcome {
    let strict = QuadratureConfig::strict();
    let mut worst = 0.0f64;
    for _ in 0..10 {
        let y = 6.0 * rng.random::<f64>() - 3.0;
        let p = rng.random::<f64>();
        let fast = elliptic_e_incomplete(y, p).map_err(|err| err.to_string())?;
        let slow = integrate(|t| (1.0 - p * t.sin() * t.sin()).sqrt(), 0.0, y, &strict)
            .map_err(|err| err.to_string())?;
        worst = worst.max((fast - slow.value).abs());
    }
    let detail = format!("max |E - quadrature of its integrand| = {worst:.3e}");
    if worst < 1e-10 {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn monte_carlo_potential(
    e: &Ellipsoid,
    rng: &mut ChaCha8Rng,
    cfg: &QuadratureConfig,
    seed: u64,
) -> CheckOutcome {
    let d = direction(rng);
    let x = place(e, &d, 1.6);
    let exact = potential_at(e, &x, cfg).map_err(|err| err.to_string())?.value;
    let mc = mc_potential(e, &x, 200_000, seed).map_err(|err| err.to_string())?;
    let sigmas = (mc.value - exact).abs() / mc.std_error;
    let detail = format!("Monte Carlo deviation = {sigmas:.3e} sigma");
    if sigmas < 4.0 {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn poisson_laplacian(e: &Ellipsoid, rng: &mut ChaCha8Rng) -> CheckOutcome {
    let strict = QuadratureConfig::strict();
    let lap = |x: &[f64]| fd_laplacian(|p| potential_at(e, p, &strict).unwrap().value, x, 1e-3);
    let mut worst = 0.0f64;
    for _ in 0..2 {
        let d = direction(rng);
        let inside = place(e, &d, 0.5);
        worst = worst.max((lap(&inside) + 1.0).abs());
        let d = direction(rng);
        let outside = place(e, &d, 1.8);
        worst = worst.max(lap(&outside).abs());
    }
    let detail = format!("max deviation from -1 inside / 0 outside = {worst:.3e}");
    if worst < 1e-4 {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn shell_theorem(rng: &mut ChaCha8Rng, cfg: &QuadratureConfig) -> CheckOutcome {
    let sphere = Ellipsoid::new(&[1.0, 1.0, 1.0]).map_err(|err| err.to_string())?;
    let outer = sphere.scaled(2.0).map_err(|err| err.to_string())?;
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    let mut worst_field = 0.0f64;
    for _ in 0..3 {
        let d = direction(rng);
        let x = place(&sphere, &d, 0.7 * rng.random::<f64>().max(0.01));
        let v = hollow_shell_potential(&sphere, 2.0, &x, cfg).map_err(|err| err.to_string())?;
        lo = lo.min(v.value);
        hi = hi.max(v.value);
        let f_out = field_at(&outer, &x, cfg).map_err(|err| err.to_string())?;
        let f_in = field_at(&sphere, &x, cfg).map_err(|err| err.to_string())?;
        let magnitude: f64 = f_out
            .components
            .iter()
            .zip(&f_in.components)
            .map(|(o, i)| (o - i) * (o - i))
            .sum::<f64>()
            .sqrt();
        worst_field = worst_field.max(magnitude);
    }
    let spread = hi - lo;
    let detail = format!("cavity spread = {spread:.3e}, max field = {worst_field:.3e}");
    if spread < 1e-9 && worst_field < 1e-9 {
        Ok(detail)
    } else {
        Err(detail)
    }
}
