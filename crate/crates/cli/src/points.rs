use std::path::Path;

use chordiv_core::ParamPoint;

use crate::error::CliError;

/// Parses a comma-separated list of finite reals.
pub fn parse_coords(s: &str) -> Result<Vec<f64>, String> {
    s.split(',')
        .map(|t| {
            let t = t.trim();
            let v: f64 = t.parse().map_err(|_| format!("not a number: {t:?}"))?;
            if v.is_finite() {
                Ok(v)
            } else {
                Err(format!("not finite: {t:?}"))
            }
        })
        .collect()
}

/// Reads the point CSV format: one point per line, no header. Blank lines
/// are skipped.
pub fn read_points(path: &Path) -> Result<Vec<ParamPoint>, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    let mut points: Vec<ParamPoint> = Vec::new();
    for (i, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let parse_err = |msg: String| CliError::Parse {
            path: path.to_path_buf(),
            line: i + 1,
            msg,
        };
        let coords = parse_coords(line).map_err(parse_err)?;
        if let Some(first) = points.first() {
            if first.dim() != coords.len() {
                return Err(parse_err(format!(
                    "expected {} coordinates, got {}",
                    first.dim(),
                    coords.len()
                )));
            }
        }
        points.push(coords.into());
    }
    if points.is_empty() {
        return Err(CliError::Parse {
            path: path.to_path_buf(),
            line: 0,
            msg: "no points".into(),
        });
    }
    Ok(points)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write;

    #[test]
    fn coords() {
        assert_eq!(parse_coords("0, -1.5,2e-3").unwrap(), vec![0.0, -1.5, 0.002]);
        assert!(parse_coords("1,x").is_err());
        assert!(parse_coords("inf").is_err());
    }

    #[test]
    fn bad_line_is_named() {
        let mut f = tempfile::NamedTempFile::new().unwrap();
        writeln!(f, "0.1,0.2\n\n0.3,0.4\n0.5,oops").unwrap();
        match read_points(f.path()) {
            Err(CliError::Parse { line, .. }) => assert_eq!(line, 4),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn ragged_rows_rejected() {
        let mut f = tempfile::NamedTempFile::new().unwrap();
        writeln!(f, "0.1,0.2\n0.3").unwrap();
        assert!(matches!(read_points(f.path()), Err(CliError::Parse { line: 2, .. })));
    }
}
