//! Acceptance gate for the library: each test checks one shipping criterion
//! and prints a single `acceptance NN <name>: PASS/FAIL (...)` line (visible
//! under `cargo test -- --nocapture`). The criteria pin golden values,
//! physical identities, cross-validation between independent code paths, and
//! runtime ceilings.

use std::time::Instant;

use ellipsoid_core::{
    demag_factors_integral, demag_oblate, demag_prolate, elliptic_e_incomplete, fd_laplacian,
    field_at, gravitational_potential, hollow_shell_potential, mc_potential, potential_at,
    Ellipsoid, GravityConfig, PointKind, QuadratureConfig,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn report(id: u32, name: &str, outcome: Result<String, String>) {
    match outcome {
        Ok(detail) => println!("acceptance {id:02} {name}: PASS ({detail})"),
        Err(detail) => {
            println!("acceptance {id:02} {name}: FAIL ({detail})");
            panic!("acceptance {id:02} {name}: {detail}");
        }
    }
}

/// Log-uniform semi-axes in [0.1, 10].
fn random_axes(rng: &mut ChaCha8Rng) -> [f64; 3] {
    std::array::from_fn(|_| 10.0f64.powf(2.0 * rng.random::<f64>() - 1.0))
}

/// A random direction bounded away from zero length.
fn random_direction(rng: &mut ChaCha8Rng, dim: usize) -> Vec<f64> {
    loop {
        let d: Vec<f64> = (0..dim).map(|_| 2.0 * rng.random::<f64>() - 1.0).collect();
        if d.iter().map(|v| v * v).sum::<f64>() > 1e-2 {
            return d;
        }
    }
}

/// Scales `d` onto the confocal level `target^2` of `e`: inside for
/// target < 1, outside for target > 1.
fn place_on_level(e: &Ellipsoid, d: &[f64], target: f64) -> Vec<f64> {
    let level: f64 = e
        .semi_axes()
        .iter()
        .zip(d)
        .map(|(a, v)| (v / a) * (v / a))
        .sum();
    let s = target / level.sqrt();
    d.iter().map(|v| v * s).collect()
}

#[test]
fn c01_sphere_demag_factors() {
    report(1, "sphere-demag-factors", {
        let start = Instant::now();
        let eval = demag_factors_integral(
            &Ellipsoid::new(&[1.0, 1.0, 1.0]).unwrap(),
            &QuadratureConfig::default(),
        )
        .unwrap();
        let elapsed = start.elapsed();
        let worst = eval
            .tensor
            .factors()
            .iter()
            .map(|p| (p - 1.0 / 3.0).abs())
            .fold(0.0, f64::max);
        if !eval.converged() {
            Err("quadrature did not converge".into())
        } else if worst >= 1e-10 {
            Err(format!("max |P_i - 1/3| = {worst:.3e} >= 1e-10"))
        } else if elapsed.as_millis() >= 10 {
            Err(format!("took {elapsed:?}, budget 10 ms"))
        } else {
            Ok(format!("max |P_i - 1/3| = {worst:.3e}, {elapsed:?}"))
        }
    });
}

#[test]
fn c02_trace_identity_on_random_shapes() {
    report(2, "demag-trace-identity", {
        let mut rng = ChaCha8Rng::seed_from_u64(0xACCE_0002);
        let cfg = QuadratureConfig::default();
        let mut worst = 0.0f64;
        for _ in 0..100 {
            let e = Ellipsoid::new(&random_axes(&mut rng)).unwrap();
            let p = demag_factors_integral(&e, &cfg).unwrap().tensor.factors();
            worst = worst.max((p.iter().sum::<f64>() - 1.0).abs());
        }
        if worst < 1e-9 {
            Ok(format!("100 shapes, max |tr P - 1| = {worst:.3e}"))
        } else {
            Err(format!("max |tr P - 1| = {worst:.3e} >= 1e-9"))
        }
    });
}

#[test]
fn c03_factor_ordering_on_random_shapes() {
    report(3, "demag-factor-ordering", {
        let mut rng = ChaCha8Rng::seed_from_u64(0xACCE_0002);
        let cfg = QuadratureConfig::default();
        let mut checked = 0;
        let mut bad = None;
        for _ in 0..100 {
            let mut axes = random_axes(&mut rng);
            axes.sort_by(|a, b| b.total_cmp(a));
            let e = Ellipsoid::new(&axes).unwrap();
            let p = demag_factors_integral(&e, &cfg).unwrap().tensor.factors();
            if p[0] > p[1] || p[1] > p[2] {
                bad = Some((axes, p));
                break;
            }
            checked += 1;
        }
        match bad {
            None => Ok(format!("{checked} sorted shapes all gave ascending factors")),
            Some((axes, p)) => Err(format!("axes {axes:?} gave unordered factors {p:?}")),
        }
    });
}

#[test]
fn c04_sphere_potential_golden_values() {
    report(4, "sphere-potential-goldens", {
        let cfg = QuadratureConfig::default();
        let e = Ellipsoid::new(&[1.0, 1.0, 1.0]).unwrap();
        let center = potential_at(&e, &[0.0, 0.0, 0.0], &cfg).unwrap().value;
        let outside = potential_at(&e, &[2.0, 0.0, 0.0], &cfg).unwrap().value;

        // Same exterior point through the physical wrapper: G M / |x|.
        let gravity = GravityConfig::with_density(1.0, 1.0).unwrap();
        let u = gravitational_potential(&e, &gravity, &[2.0, 0.0, 0.0], &cfg)
            .unwrap()
            .value;
        let gm_over_r = 1.0 * e.volume() / 2.0;

        let e_center = (center - 0.5).abs();
        let e_out = (outside - 1.0 / 6.0).abs();
        let e_grav = (u - gm_over_r).abs();
        if e_center < 1e-10 && e_out < 1e-10 && e_grav < 1e-10 {
            Ok(format!(
                "|N(0)-1/2| = {e_center:.3e}, |N(2)-1/6| = {e_out:.3e}, |u - GM/r| = {e_grav:.3e}"
            ))
        } else {
            Err(format!(
                "errors center {e_center:.3e}, exterior {e_out:.3e}, gravity {e_grav:.3e}"
            ))
        }
    });
}

#[test]
fn c05_sphere_confocal_parameter() {
    report(5, "sphere-confocal-parameter", {
        let mut rng = ChaCha8Rng::seed_from_u64(0xACCE_0005);
        let e = Ellipsoid::new(&[1.0, 1.0, 1.0]).unwrap();
        let mut worst = 0.0f64;
        for _ in 0..50 {
            let d = random_direction(&mut rng, 3);
            let r = 1.0 + 3.0 * rng.random::<f64>().max(1e-3);
            let x = place_on_level(&e, &d, r);
            let tau = e.confocal_parameter(&x).unwrap();
            let r2: f64 = x.iter().map(|v| v * v).sum();
            worst = worst.max((tau - (r2 - 1.0)).abs());
        }
        if worst < 1e-10 {
            Ok(format!("50 exterior points, max |tau - (|x|^2 - 1)| = {worst:.3e}"))
        } else {
            Err(format!("max |tau - (|x|^2 - 1)| = {worst:.3e} >= 1e-10"))
        }
    });
}

#[test]
fn c06_poisson_equation_by_finite_differences() {
    report(6, "poisson-equation", {
        let mut rng = ChaCha8Rng::seed_from_u64(0xACCE_0006);
        let cfg = QuadratureConfig::strict();
        let e = Ellipsoid::new(&[3.0, 2.0, 1.0]).unwrap();
        let h = 1e-3;
        let lap = |x: &[f64]| fd_laplacian(|p| potential_at(&e, p, &cfg).unwrap().value, x, h);

        let mut worst_in = 0.0f64;
        for _ in 0..20 {
            let d = random_direction(&mut rng, 3);
            let x = place_on_level(&e, &d, 0.2 + 0.6 * rng.random::<f64>());
            worst_in = worst_in.max((lap(&x) + 1.0).abs());
        }
        let mut worst_out = 0.0f64;
        for _ in 0..20 {
            let d = random_direction(&mut rng, 3);
            let x = place_on_level(&e, &d, 1.2 + 1.5 * rng.random::<f64>());
            worst_out = worst_out.max(lap(&x).abs());
        }
        if worst_in < 1e-4 && worst_out < 1e-4 {
            Ok(format!(
                "max |lap N + 1| = {worst_in:.3e} inside, max |lap N| = {worst_out:.3e} outside"
            ))
        } else {
            Err(format!(
                "interior deviation {worst_in:.3e}, exterior deviation {worst_out:.3e}"
            ))
        }
    });
}

#[test]
fn c07_boundary_continuity() {
    report(7, "boundary-continuity", {
        let mut rng = ChaCha8Rng::seed_from_u64(0xACCE_0007);
        let cfg = QuadratureConfig::default();
        let e = Ellipsoid::new(&[3.0, 2.0, 1.0]).unwrap();
        let mut worst = 0.0f64;
        for _ in 0..10 {
            let d = random_direction(&mut rng, 3);
            let inner = place_on_level(&e, &d, 1.0 - 1e-9);
            let outer = place_on_level(&e, &d, 1.0 + 1e-9);
            let n_in = potential_at(&e, &inner, &cfg).unwrap().value;
            let n_out = potential_at(&e, &outer, &cfg).unwrap().value;
            worst = worst.max((n_in - n_out).abs());
        }
        if worst < 1e-8 {
            Ok(format!("10 rays, max one-sided jump = {worst:.3e}"))
        } else {
            Err(format!("max one-sided jump = {worst:.3e} >= 1e-8"))
        }
    });
}

#[test]
fn c08_uniform_interior_field() {
    report(8, "uniform-interior-field", {
        let mut rng = ChaCha8Rng::seed_from_u64(0xACCE_0008);
        let cfg = QuadratureConfig::default();
        let e = Ellipsoid::new(&[3.0, 2.0, 1.0]).unwrap();
        let p = demag_factors_integral(&e, &cfg).unwrap().tensor.factors();
        let mut worst = 0.0f64;
        for _ in 0..20 {
            let d = random_direction(&mut rng, 3);
            let x = place_on_level(&e, &d, 0.1 + 0.8 * rng.random::<f64>());
            let field = field_at(&e, &x, &cfg).unwrap();
            for i in 0..3 {
                worst = worst.max((field.components[i] + p[i] * x[i]).abs());
            }
        }
        if worst < 1e-8 {
            Ok(format!("20 interior points, max |grad N + P x| = {worst:.3e}"))
        } else {
            Err(format!("max |grad N + P x| = {worst:.3e} >= 1e-8"))
        }
    });
}

#[test]
fn c09_shell_theorem() {
    report(9, "shell-theorem", {
        let mut rng = ChaCha8Rng::seed_from_u64(0xACCE_0009);
        let cfg = QuadratureConfig::default();
        let e = Ellipsoid::new(&[1.0, 1.0, 1.0]).unwrap();
        let outer = e.scaled(2.0).unwrap();

        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        let mut worst_field = 0.0f64;
        for _ in 0..20 {
            let d = random_direction(&mut rng, 3);
            let x = place_on_level(&e, &d, 0.9 * rng.random::<f64>().max(0.01));
            let v = hollow_shell_potential(&e, 2.0, &x, &cfg).unwrap();
            if v.point_class.kind != PointKind::Interior {
                return report(9, "shell-theorem", Err("cavity point not interior".into()));
            }
            lo = lo.min(v.value);
            hi = hi.max(v.value);

            let f_outer = field_at(&outer, &x, &cfg).unwrap();
            let f_inner = field_at(&e, &x, &cfg).unwrap();
            let magnitude: f64 = f_outer
                .components
                .iter()
                .zip(&f_inner.components)
                .map(|(o, i)| (o - i) * (o - i))
                .sum::<f64>()
                .sqrt();
            worst_field = worst_field.max(magnitude);
        }
        let spread = hi - lo;
        if spread < 1e-9 && worst_field < 1e-9 {
            Ok(format!(
                "cavity potential spread = {spread:.3e}, max |shell field| = {worst_field:.3e}"
            ))
        } else {
            Err(format!(
                "cavity spread {spread:.3e}, max shell field {worst_field:.3e}"
            ))
        }
    });
}

#[test]
fn c10_monte_carlo_cross_check() {
    report(10, "monte-carlo-cross-check", {
        let start = Instant::now();
        let mut rng = ChaCha8Rng::seed_from_u64(0xACCE_0010);
        let cfg = QuadratureConfig::default();
        let mut worst_sigmas = 0.0f64;
        for trial in 0..10 {
            let e = Ellipsoid::new(&random_axes(&mut rng)).unwrap();
            let d = random_direction(&mut rng, 3);
            let x = place_on_level(&e, &d, 1.3 + 1.2 * rng.random::<f64>());
            let exact = potential_at(&e, &x, &cfg).unwrap().value;
            let mc = mc_potential(&e, &x, 1_000_000, 7_000 + trial).unwrap();
            let sigmas = (mc.value - exact).abs() / mc.std_error;
            worst_sigmas = worst_sigmas.max(sigmas);
        }
        let elapsed = start.elapsed();
        if worst_sigmas >= 4.0 {
            Err(format!("worst deviation = {worst_sigmas:.2} sigma >= 4"))
        } else if elapsed.as_secs() >= 30 {
            Err(format!("took {elapsed:?}, budget 30 s"))
        } else {
            Ok(format!(
                "10 pairs at 1e6 samples, worst deviation = {worst_sigmas:.2} sigma, {elapsed:?}"
            ))
        }
    });
}

#[test]
fn c11_spheroid_closed_forms() {
    report(11, "spheroid-closed-forms", {
        let cfg = QuadratureConfig::default();
        let mut worst = 0.0f64;
        for ratio in [1.001, 1.5, 2.0, 5.0, 10.0, 100.0] {
            let prolate = demag_prolate(ratio, 1.0).unwrap().factors();
            let via_integral = demag_factors_integral(&Ellipsoid::new(&[ratio, 1.0, 1.0]).unwrap(), &cfg)
                .unwrap()
                .tensor
                .factors();
            for (c, q) in prolate.iter().zip(via_integral) {
                worst = worst.max((c - q).abs());
            }

            let oblate = demag_oblate(ratio, 1.0).unwrap().factors();
            let via_integral = demag_factors_integral(&Ellipsoid::new(&[ratio, ratio, 1.0]).unwrap(), &cfg)
                .unwrap()
                .tensor
                .factors();
            for (c, q) in oblate.iter().zip(via_integral) {
                worst = worst.max((c - q).abs());
            }
        }

        let p1 = demag_prolate(2.0, 1.0).unwrap().factors()[0];
        let p1_dev = (p1 - 0.173565).abs();
        if worst < 1e-9 && p1_dev < 1e-5 {
            Ok(format!(
                "6 aspect ratios, max closed-vs-integral gap = {worst:.3e}; 2:1 long-axis factor off by {p1_dev:.3e}"
            ))
        } else {
            Err(format!(
                "closed-vs-integral gap {worst:.3e}, 2:1 long-axis factor off by {p1_dev:.3e}"
            ))
        }
    });
}

#[test]
fn c12_scaling_invariances() {
    report(12, "scaling-invariances", {
        let mut rng = ChaCha8Rng::seed_from_u64(0xACCE_0012);
        let cfg = QuadratureConfig::default();
        let mut worst_potential = 0.0f64;
        let mut worst_demag = 0.0f64;
        for _ in 0..20 {
            let axes = random_axes(&mut rng);
            let e = Ellipsoid::new(&axes).unwrap();
            let lambda = 10.0f64.powf(rng.random::<f64>() - 0.5);
            let d = random_direction(&mut rng, 3);
            let x = place_on_level(&e, &d, 0.3 + 2.0 * rng.random::<f64>());

            let base = potential_at(&e, &x, &cfg).unwrap().value;
            let scaled_e = e.scaled(lambda).unwrap();
            let xs: Vec<f64> = x.iter().map(|v| v * lambda).collect();
            let scaled = potential_at(&scaled_e, &xs, &cfg).unwrap().value;
            worst_potential =
                worst_potential.max((scaled - lambda * lambda * base).abs() / scaled.abs());

            let p = demag_factors_integral(&e, &cfg).unwrap().tensor.factors();
            let q = demag_factors_integral(&scaled_e, &cfg).unwrap().tensor.factors();
            for (a, b) in p.iter().zip(q) {
                worst_demag = worst_demag.max((a - b).abs() / b.abs());
            }
        }
        if worst_potential < 1e-9 && worst_demag < 1e-9 {
            Ok(format!(
                "20 triples, potential scaling rel err = {worst_potential:.3e}, demag rel err = {worst_demag:.3e}"
            ))
        } else {
            Err(format!(
                "potential scaling rel err {worst_potential:.3e}, demag rel err {worst_demag:.3e}"
            ))
        }
    });
}

#[test]
fn c13_four_dimensional_ball() {
    report(13, "four-dimensional-ball", {
        let cfg = QuadratureConfig::default();
        let b4 = Ellipsoid::new(&[1.0; 4]).unwrap();
        let center = potential_at(&b4, &[0.0; 4], &cfg).unwrap().value;
        let dev = (center - 0.25).abs();

        let mc = mc_potential(&b4, &[0.0; 4], 1_000_000, 41).unwrap();
        let sigmas = (mc.value - 0.25).abs() / mc.std_error;
        if dev < 1e-10 && sigmas < 4.0 {
            Ok(format!(
                "|N(0) - 1/4| = {dev:.3e}, Monte Carlo deviation = {sigmas:.2} sigma"
            ))
        } else {
            Err(format!(
                "|N(0) - 1/4| = {dev:.3e}, Monte Carlo deviation = {sigmas:.2} sigma"
            ))
        }
    });
}

#[test]
fn c14_incomplete_elliptic_integral() {
    report(14, "incomplete-elliptic-integral", {
        let complete = elliptic_e_incomplete(std::f64::consts::FRAC_PI_2, 0.5).unwrap();
        let dev = (complete - 1.3506439).abs();
        if dev >= 1e-6 {
            return report(
                14,
                "incomplete-elliptic-integral",
                Err(format!("|E(pi/2 | 0.5) - 1.3506439| = {dev:.3e} >= 1e-6")),
            );
        }
        let mut rng = ChaCha8Rng::seed_from_u64(0xACCE_0014);
        for _ in 0..100 {
            let y = 20.0 * rng.random::<f64>() - 10.0;
            let e = elliptic_e_incomplete(y, 0.0).unwrap();
            if e != y {
                return report(
                    14,
                    "incomplete-elliptic-integral",
                    Err(format!("E({y} | 0) = {e}, expected exact identity")),
                );
            }
        }
        Ok(format!(
            "|E(pi/2 | 0.5) - 1.3506439| = {dev:.3e}; E(y | 0) = y exact on 100 draws"
        ))
    });
}
