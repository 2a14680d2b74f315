//! Output row formatting: JSON lines and headerless CSV.
//!
//! All floating-point values are serialized as `{:.16e}` (17 significant
//! digits), which round-trips every finite double; negative zero is
//! normalized to zero so that reruns and thread counts can never disagree
//! on a sign bit nobody cares about.

use ellipsoid_core::PointClassification;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum OutputFormat {
    Json,
    Csv,
}

/// One double, 17 significant digits, `-0` collapsed to `0`.
pub fn fmt_num(value: f64) -> String {
    let value = if value == 0.0 { 0.0 } else { value };
    format!("{value:.16e}")
}

fn fmt_list(values: &[f64]) -> String {
    values.iter().map(|v| fmt_num(*v)).collect::<Vec<_>>().join(",")
}

fn json_array(values: &[f64]) -> String {
    format!("[{}]", fmt_list(values))
}

/// `potential` and `grid` row: value plus quadrature evidence.
pub fn potential_row(
    format: OutputFormat,
    point: &[f64],
    class: &PointClassification,
    value: f64,
    error_estimate: f64,
    converged: bool,
) -> String {
    match format {
        OutputFormat::Json => format!(
            "{{\"point\":{},\"class\":\"{}\",\"tau\":{},\"value\":{},\"error_estimate\":{},\"converged\":{}}}",
            json_array(point),
            class.kind.name(),
            fmt_num(class.tau),
            fmt_num(value),
            fmt_num(error_estimate),
            converged,
        ),
        OutputFormat::Csv => format!(
            "{},{},{},{},{},{}",
            fmt_list(point),
            class.kind.name(),
            fmt_num(class.tau),
            fmt_num(value),
            fmt_num(error_estimate),
            converged,
        ),
    }
}

/// `field` row: one gradient component per axis.
pub fn field_row(
    format: OutputFormat,
    point: &[f64],
    class: &PointClassification,
    components: &[f64],
    error_estimate: f64,
    converged: bool,
) -> String {
    match format {
        OutputFormat::Json => format!(
            "{{\"point\":{},\"class\":\"{}\",\"tau\":{},\"field\":{},\"error_estimate\":{},\"converged\":{}}}",
            json_array(point),
            class.kind.name(),
            fmt_num(class.tau),
            json_array(components),
            fmt_num(error_estimate),
            converged,
        ),
        OutputFormat::Csv => format!(
            "{},{},{},{},{},{}",
            fmt_list(point),
            class.kind.name(),
            fmt_num(class.tau),
            fmt_list(components),
            fmt_num(error_estimate),
            converged,
        ),
    }
}

/// `tau` row: classification only, no quadrature.
pub fn tau_row(format: OutputFormat, point: &[f64], class: &PointClassification) -> String {
    match format {
        OutputFormat::Json => format!(
            "{{\"point\":{},\"tau\":{},\"class\":\"{}\"}}",
            json_array(point),
            fmt_num(class.tau),
            class.kind.name(),
        ),
        OutputFormat::Csv => format!(
            "{},{},{}",
            fmt_list(point),
            fmt_num(class.tau),
            class.kind.name(),
        ),
    }
}

/// `demag` row: the three factors and their trace.
pub fn demag_row(format: OutputFormat, factors: &[f64; 3], converged: bool) -> String {
    let trace: f64 = factors.iter().sum();
    match format {
        OutputFormat::Json => format!(
            "{{\"P\":{},\"trace\":{},\"converged\":{}}}",
            json_array(factors),
            fmt_num(trace),
            converged,
        ),
        OutputFormat::Csv => format!("{},{},{}", fmt_list(factors), fmt_num(trace), converged),
    }
}
