//! Point-list input: inline `--point` arguments and points files.
//!
//! A points file is line-oriented: each non-blank line is either `N`
//! comma-separated reals or a JSON array of `N` reals, and the two styles
//! may be mixed. Blank lines are skipped; order is preserved; an empty file
//! is an empty list, not an error.

use std::path::Path;

use thiserror::Error;

/// Errors from point parsing, with 1-based line numbers for file input.
#[derive(Debug, Error, PartialEq)]
pub enum PointsError {
    #[error("line {line}: malformed point ({reason})")]
    MalformedLine { line: usize, reason: String },
    #[error("line {line}: expected {expected} coordinates, got {got}")]
    DimensionMismatch {
        line: usize,
        expected: usize,
        got: usize,
    },
    #[error("malformed point argument {arg:?} ({reason})")]
    MalformedArgument { arg: String, reason: String },
    #[error("point argument {arg:?}: expected {expected} coordinates, got {got}")]
    ArgumentDimensionMismatch {
        arg: String,
        expected: usize,
        got: usize,
    },
}

/// Parses one `--point` argument (`x,y,...`) against the body dimension.
pub fn parse_point_arg(arg: &str, dim: usize) -> Result<Vec<f64>, PointsError> {
    let coords = split_scalars(arg).map_err(|reason| PointsError::MalformedArgument {
        arg: arg.to_string(),
        reason,
    })?;
    if coords.len() != dim {
        return Err(PointsError::ArgumentDimensionMismatch {
            arg: arg.to_string(),
            expected: dim,
            got: coords.len(),
        });
    }
    Ok(coords)
}

/// Reads a points file, validating every point against `dim`.
pub fn parse_points_file(path: &Path, dim: usize) -> anyhow::Result<Vec<Vec<f64>>> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| anyhow::anyhow!("cannot read points file {}: {e}", path.display()))?;
    let mut points = Vec::new();
    for (index, raw) in text.lines().enumerate() {
        let line = index + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() {
            continue;
        }
        let coords = parse_line(trimmed).map_err(|reason| PointsError::MalformedLine {
            line,
            reason,
        })?;
        if coords.len() != dim {
            return Err(PointsError::DimensionMismatch {
                line,
                expected: dim,
                got: coords.len(),
            }
            .into());
        }
        points.push(coords);
    }
    Ok(points)
}

/// One line of a points file: JSON array if it looks like one, CSV
/// otherwise.
fn parse_line(trimmed: &str) -> Result<Vec<f64>, String> {
    if trimmed.starts_with('[') {
        let coords: Vec<f64> =
            serde_json::from_str(trimmed).map_err(|e| format!("invalid JSON array: {e}"))?;
        ensure_finite(&coords)?;
        Ok(coords)
    } else {
        split_scalars(trimmed)
    }
}

fn split_scalars(text: &str) -> Result<Vec<f64>, String> {
    let mut coords = Vec::new();
    for token in text.split(',') {
        let token = token.trim();
        let value: f64 = token
            .parse()
            .map_err(|_| format!("{token:?} is not a number"))?;
        coords.push(value);
    }
    ensure_finite(&coords)?;
    Ok(coords)
}

fn ensure_finite(coords: &[f64]) -> Result<(), String> {
    match coords.iter().find(|v| !v.is_finite()) {
        Some(v) => Err(format!("coordinate {v} is not finite")),
        None => Ok(()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write;

    fn write_temp(content: &str) -> tempfile::NamedTempFile {
        let mut f = tempfile::NamedTempFile::new().unwrap();
        f.write_all(content.as_bytes()).unwrap();
        f
    }

    #[test]
    fn csv_and_json_lines_mix() {
        let f = write_temp("0,0,0\n[2, 0, 0]\n\n  1.5 , -2 , 3e-1\n");
        let points = parse_points_file(f.path(), 3).unwrap();
        assert_eq!(
            points,
            vec![
                vec![0.0, 0.0, 0.0],
                vec![2.0, 0.0, 0.0],
                vec![1.5, -2.0, 0.3]
            ]
        );
    }

    #[test]
    fn empty_file_is_an_empty_list() {
        let f = write_temp("");
        assert!(parse_points_file(f.path(), 3).unwrap().is_empty());
        let f = write_temp("\n   \n");
        assert!(parse_points_file(f.path(), 3).unwrap().is_empty());
    }

    #[test]
    fn malformed_lines_carry_their_number() {
        let f = write_temp("a,b,c\n");
        let err = parse_points_file(f.path(), 3).unwrap_err();
        assert!(err.to_string().contains("line 1"), "got: {err}");

        let f = write_temp("1,2,3\nnot json [\n");
        let err = parse_points_file(f.path(), 3).unwrap_err();
        assert!(err.to_string().contains("line 2"), "got: {err}");
    }

    #[test]
    fn dimension_mismatch_is_reported() {
        let f = write_temp("1,2\n");
        let err = parse_points_file(f.path(), 3).unwrap_err();
        assert!(err.to_string().contains("expected 3"), "got: {err}");
    }

    #[test]
    fn non_finite_values_are_rejected() {
        let f = write_temp("[1e400, 0, 0]\n");
        assert!(parse_points_file(f.path(), 3).is_err());
        assert!(parse_point_arg("nan,0,0", 3).is_err());
    }

    #[test]
    fn inline_argument_checks_dimension() {
        assert_eq!(parse_point_arg("1,2,3", 3).unwrap(), vec![1.0, 2.0, 3.0]);
        assert!(matches!(
            parse_point_arg("1,2", 3),
            Err(PointsError::ArgumentDimensionMismatch { expected: 3, got: 2, .. })
        ));
    }
}
