//! Tensor text files and trajectory CSV.
//!
//! Tensor files hold a `m <int>` header followed by one `i j k value` line per
//! nonzero coefficient (1-based). Lines starting with `#` and blank lines are
//! ignored.

use std::fmt::Write as _;
use std::path::Path;

use qso_core::{CoefficientTensor, SimplexPoint, Trajectory};

use crate::error::{Error, Result};

/// Formats a float with 17 significant digits, enough to round-trip an `f64`.
pub fn fmt_f64(v: f64) -> String {
    format!("{v:.16e}")
}

pub fn parse_tensor(text: &str) -> Result<CoefficientTensor> {
    let mut m: Option<usize> = None;
    let mut entries = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        match m {
            None => {
                if fields.len() != 2 || fields[0] != "m" {
                    return Err(Error::parse(line_no, "expected `m <int>` header"));
                }
                let dim = fields[1].parse().map_err(|_| Error::parse(line_no, format!("bad dimension `{}`", fields[1])))?;
                m = Some(dim);
            }
            Some(_) => {
                if fields.len() != 4 {
                    return Err(Error::parse(line_no, "expected `i j k value`"));
                }
                let index = |s: &str| s.parse::<usize>().map_err(|_| Error::parse(line_no, format!("bad index `{s}`")));
                let value: f64 = fields[3].parse().map_err(|_| Error::parse(line_no, format!("bad value `{}`", fields[3])))?;
                entries.push((index(fields[0])?, index(fields[1])?, index(fields[2])?, value));
            }
        }
    }
    let m = m.ok_or_else(|| Error::parse(0, "missing `m <int>` header"))?;
    Ok(CoefficientTensor::from_entries(m, &entries)?)
}

pub fn write_tensor(t: &CoefficientTensor) -> String {
    let mut out = format!("m {}\n", t.dim());
    for (i, j, k, v) in t.entries() {
        writeln!(out, "{i} {j} {k} {}", fmt_f64(v)).unwrap();
    }
    out
}

pub fn read_tensor_file(path: &Path) -> Result<CoefficientTensor> {
    let text = std::fs::read_to_string(path).map_err(|source| Error::Io { path: path.to_owned(), source })?;
    parse_tensor(&text)
}

/// CSV with header `n,x1,...,xm` and one row per recorded step.
pub fn trajectory_csv(traj: &Trajectory) -> String {
    let m = traj.last().dim();
    let mut out = String::from("n");
    for k in 1..=m {
        write!(out, ",x{k}").unwrap();
    }
    out.push('\n');
    for (n, x) in traj.points() {
        write!(out, "{n}").unwrap();
        for &v in x.coords() {
            out.push(',');
            out.push_str(&fmt_f64(v));
        }
        out.push('\n');
    }
    out
}

/// Reads rows written by [`trajectory_csv`]. Coordinates are taken verbatim,
/// without renormalization.
pub fn parse_trajectory_csv(text: &str) -> Result<Vec<(usize, Vec<f64>)>> {
    let mut lines = text.lines().enumerate();
    let (_, header) = lines.next().ok_or_else(|| Error::parse(1, "empty file"))?;
    let cols: Vec<&str> = header.split(',').collect();
    if cols.first() != Some(&"n") || cols.len() < 3 {
        return Err(Error::parse(1, "expected header `n,x1,...,xm`"));
    }
    for (k, c) in cols.iter().enumerate().skip(1) {
        if *c != format!("x{k}") {
            return Err(Error::parse(1, format!("unexpected column `{c}`")));
        }
    }
    let m = cols.len() - 1;
    let mut rows = Vec::new();
    for (idx, line) in lines {
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != m + 1 {
            return Err(Error::parse(idx + 1, format!("expected {} fields, found {}", m + 1, fields.len())));
        }
        let n = fields[0].parse().map_err(|_| Error::parse(idx + 1, "bad step index"))?;
        let x = fields[1..]
            .iter()
            .map(|f| f.parse::<f64>().map_err(|_| Error::parse(idx + 1, format!("bad value `{f}`"))))
            .collect::<Result<Vec<_>>>()?;
        rows.push((n, x));
    }
    Ok(rows)
}

/// Parses `0.4,0.3,0.3` into a simplex point.
pub fn parse_point(text: &str) -> Result<SimplexPoint> {
    let coords = text
        .split(',')
        .map(|s| s.trim().parse::<f64>().map_err(|_| Error::config(format!("bad coordinate `{}`", s.trim()))))
        .collect::<Result<Vec<_>>>()?;
    Ok(SimplexPoint::new(&coords)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tensor_header_required() {
        assert!(matches!(parse_tensor("# c\n1 1 1 1\n"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse_tensor(""), Err(Error::Parse { .. })));
    }

    #[test]
    fn csv_header_checked() {
        assert!(parse_trajectory_csv("n,x1,x3\n0,1,0\n").is_err());
        assert!(parse_trajectory_csv("n,x1,x2\n0,1\n").is_err());
    }

    #[test]
    fn float_format_round_trips() {
        for v in [0.1, 2.0 / 7.0, 1e-300, 5e-324, 1.0] {
            assert_eq!(fmt_f64(v).parse::<f64>().unwrap(), v);
        }
    }
}
