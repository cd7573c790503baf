//! Curve CSV format: header `t,u,v,sigma,el_residual,c_drift`, one row per
//! sample, floats printed with 17 significant digits, LF line endings.
//! Doubles survive a write/read/write round trip byte-identically.

use std::fmt::Write as _;
use std::path::Path;

use crate::curves::CurveSamples;
use crate::error::{Error, Result};
use crate::geometry::SpaceKind;

pub const CSV_HEADER: &str = "t,u,v,sigma,el_residual,c_drift";

fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

/// Renders the samples as CSV text.
pub fn curve_to_csv(c: &CurveSamples) -> String {
    let n = c.len();
    let zero = vec![0.0; n];
    let sigma = c.sigma.as_deref().unwrap_or(&zero);
    let residual = c.el_residual.as_deref().unwrap_or(&zero);
    let drift = c.c_drift.as_deref().unwrap_or(&zero);
    let mut out = String::with_capacity(n * 140);
    out.push_str(CSV_HEADER);
    out.push('\n');
    for i in 0..n {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{}",
            fmt_f64(c.t[i]),
            fmt_f64(c.u[i]),
            fmt_f64(c.v[i]),
            fmt_f64(sigma[i]),
            fmt_f64(residual[i]),
            fmt_f64(drift[i]),
        );
    }
    out
}

pub fn write_curve(path: &Path, c: &CurveSamples) -> Result<()> {
    std::fs::write(path, curve_to_csv(c))?;
    Ok(())
}

/// Parses curve CSV. The header must start with `t,u,v`; the `sigma` and
/// diagnostic columns are optional.
pub fn curve_from_csv(space: SpaceKind, text: &str) -> Result<CurveSamples> {
    let mut lines = text.lines().enumerate();
    let (_, header) = lines.next().ok_or(Error::MalformedCsv {
        line: 1,
        msg: "empty file".into(),
    })?;
    let cols: Vec<&str> = header.split(',').map(str::trim).collect();
    if cols.len() < 3 || cols[0] != "t" || cols[1] != "u" || cols[2] != "v" {
        return Err(Error::MalformedCsv {
            line: 1,
            msg: format!("header must start with t,u,v got '{header}'"),
        });
    }
    let ncols = cols.len();
    let has_sigma = ncols >= 4 && cols[3] == "sigma";

    let mut t = Vec::new();
    let mut u = Vec::new();
    let mut v = Vec::new();
    let mut sigma = Vec::new();
    let mut residual = Vec::new();
    let mut drift = Vec::new();
    for (idx, line) in lines {
        if line.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').map(str::trim).collect();
        if fields.len() != ncols {
            return Err(Error::MalformedCsv {
                line: idx + 1,
                msg: format!("expected {ncols} fields, got {}", fields.len()),
            });
        }
        let parse = |k: usize| -> Result<f64> {
            fields[k].parse::<f64>().map_err(|e| Error::MalformedCsv {
                line: idx + 1,
                msg: format!("column {}: {e}", cols[k]),
            })
        };
        t.push(parse(0)?);
        u.push(parse(1)?);
        v.push(parse(2)?);
        if has_sigma {
            sigma.push(parse(3)?);
        }
        if ncols >= 5 {
            residual.push(parse(4)?);
        }
        if ncols >= 6 {
            drift.push(parse(5)?);
        }
    }
    let mut c = CurveSamples::new(space, t, u, v).map_err(|e| match e {
        Error::InvalidParameter(msg) => Error::MalformedCsv { line: 0, msg },
        other => other,
    })?;
    if has_sigma {
        c = c.with_sigma(sigma);
    }
    if !residual.is_empty() {
        c.el_residual = Some(residual);
    }
    if !drift.is_empty() {
        c.c_drift = Some(drift);
    }
    Ok(c)
}

pub fn read_curve(path: &Path, space: SpaceKind) -> Result<CurveSamples> {
    let text = std::fs::read_to_string(path)?;
    curve_from_csv(space, &text)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curves::circle_samples;

    #[test]
    fn roundtrip_is_byte_identical() {
        let mut c = circle_samples(SpaceKind::Hyperbolic, 1.0, 64).unwrap();
        c.el_residual = Some(c.t.iter().map(|x| x * 1e-12).collect());
        c.c_drift = Some(c.t.iter().map(|x| -x * 1e-14).collect());
        let text1 = curve_to_csv(&c);
        let parsed = curve_from_csv(SpaceKind::Hyperbolic, &text1).unwrap();
        let text2 = curve_to_csv(&parsed);
        assert_eq!(text1, text2);
    }

    #[test]
    fn minimal_three_column_input() {
        let text = "t,u,v\n0.0,1.0,0.0\n1.0,2.0,0.5\n";
        let c = curve_from_csv(SpaceKind::Euclidean, text).unwrap();
        assert_eq!(c.len(), 2);
        assert!(c.sigma.is_none());
    }

    #[test]
    fn malformed_inputs_are_rejected() {
        assert!(curve_from_csv(SpaceKind::Euclidean, "").is_err());
        assert!(curve_from_csv(SpaceKind::Euclidean, "a,b,c\n1,2,3\n").is_err());
        assert!(curve_from_csv(SpaceKind::Euclidean, "t,u,v\n1,2\n").is_err());
        assert!(curve_from_csv(SpaceKind::Euclidean, "t,u,v\n0,1,0\n1,x,0\n").is_err());
        // non-increasing t
        assert!(curve_from_csv(SpaceKind::Euclidean, "t,u,v\n0,1,0\n0,2,0\n").is_err());
    }
}
