//! Result CSV: `method,N,mean_mw,stderr_mw,mean_solve_time_ms,certified_fraction`.
//!
//! Numbers are written with 10 significant digits and a `.` decimal point.
//! An empty timing field means timing was not recorded.

use std::path::Path;

use super::ResultRow;
use crate::beamformers::Method;
use crate::{Error, Result};

pub const CSV_HEADER: &str = "method,N,mean_mw,stderr_mw,mean_solve_time_ms,certified_fraction";

/// Formats `v` with 10 significant digits, in positional notation when the
/// magnitude allows it.
pub fn format_sig10(v: f64) -> String {
    if v == 0.0 {
        return "0".into();
    }
    if !v.is_finite() {
        return format!("{v}");
    }
    let exp = v.abs().log10().floor() as i32;
    if !(-6..=9).contains(&exp) {
        return format!("{v:.9e}");
    }
    let s = format!("{:.*}", (9 - exp).max(0) as usize, v);
    // Rounding may carry into a new leading digit (9.99… → 10.0…); redo with
    // one fewer decimal in that case.
    let digits = s.chars().filter(char::is_ascii_digit).collect::<String>();
    let significant = digits.trim_start_matches('0').len();
    if significant > 10 && exp < 9 {
        format!("{:.*}", (8 - exp).max(0) as usize, v)
    } else {
        s
    }
}

pub fn rows_to_csv(rows: &[ResultRow]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{},{}\n",
            r.method.name(),
            r.n,
            format_sig10(r.mean_mw),
            format_sig10(r.stderr_mw),
            r.mean_solve_time_ms.map(format_sig10).unwrap_or_default(),
            format_sig10(r.certified_fraction),
        ));
    }
    out
}

pub fn write_csv(rows: &[ResultRow], path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    std::fs::write(path, rows_to_csv(rows)).map_err(|e| Error::io(path, e))
}

pub fn parse_csv(text: &str) -> Result<Vec<ResultRow>> {
    let mut lines = text.lines().enumerate();
    match lines.next() {
        Some((_, h)) if h.trim() == CSV_HEADER => {}
        _ => {
            return Err(Error::Parse {
                key: "header".into(),
                line: 1,
                message: format!("expected `{CSV_HEADER}`"),
            })
        }
    }
    let mut rows = Vec::new();
    for (idx, line) in lines {
        if line.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        let bad = |key: &str, message: String| Error::Parse {
            key: key.into(),
            line: idx + 1,
            message,
        };
        if fields.len() != 6 {
            return Err(bad(
                "row",
                format!("expected 6 fields, got {}", fields.len()),
            ));
        }
        let float = |key: &str, s: &str| {
            s.parse::<f64>()
                .map_err(|e| bad(key, format!("`{s}`: {e}")))
        };
        rows.push(ResultRow {
            method: Method::parse(fields[0])
                .ok_or_else(|| bad("method", format!("unknown `{}`", fields[0])))?,
            n: fields[1]
                .parse()
                .map_err(|e| bad("N", format!("`{}`: {e}", fields[1])))?,
            mean_mw: float("mean_mw", fields[2])?,
            stderr_mw: float("stderr_mw", fields[3])?,
            mean_solve_time_ms: if fields[4].is_empty() {
                None
            } else {
                Some(float("mean_solve_time_ms", fields[4])?)
            },
            certified_fraction: float("certified_fraction", fields[5])?,
        });
    }
    Ok(rows)
}

pub fn read_csv(path: impl AsRef<Path>) -> Result<Vec<ResultRow>> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_csv(&text)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn sig10_examples() {
        assert_eq!(format_sig10(4.59), "4.590000000");
        assert_eq!(format_sig10(1234.5), "1234.500000");
        assert_eq!(format_sig10(0.0012834), "0.001283400000");
        assert_eq!(format_sig10(9.99999999999), "10.00000000");
        assert_eq!(format_sig10(12345678901234.0), "1.234567890e13");
        assert_eq!(format_sig10(0.0), "0");
        assert_eq!(format_sig10(1.5e-9), "1.500000000e-9");
    }

    #[test]
    fn empty_rows_header_only() {
        assert_eq!(rows_to_csv(&[]), format!("{CSV_HEADER}\n"));
        assert!(parse_csv(&rows_to_csv(&[])).unwrap().is_empty());
    }

    #[test]
    fn rejects_bad_input() {
        assert!(parse_csv("a,b\n").is_err());
        assert!(parse_csv(&format!("{CSV_HEADER}\nspc,5,1,2\n")).is_err());
        assert!(parse_csv(&format!("{CSV_HEADER}\ncvx,5,1,2,3,1\n")).is_err());
    }

    fn row_strategy() -> impl Strategy<Value = ResultRow> {
        (
            prop::sample::select(Method::ALL.to_vec()),
            1usize..64,
            0.0f64..1e4,
            0.0f64..10.0,
            prop::option::of(1e-4f64..1e3),
            0.0f64..=1.0,
        )
            .prop_map(|(method, n, mean_mw, stderr_mw, t, cf)| ResultRow {
                method,
                n,
                mean_mw,
                stderr_mw,
                mean_solve_time_ms: t,
                certified_fraction: cf,
            })
    }

    proptest! {
        #[test]
        fn write_parse_round_trip(rows in prop::collection::vec(row_strategy(), 0..8)) {
            let text = rows_to_csv(&rows);
            let parsed = parse_csv(&text).unwrap();
            prop_assert_eq!(parsed.len(), rows.len());
            for (a, b) in parsed.iter().zip(&rows) {
                prop_assert_eq!(a.method, b.method);
                prop_assert_eq!(a.n, b.n);
                prop_assert!((a.mean_mw - b.mean_mw).abs() <= 1e-9 * b.mean_mw.abs() + 1e-300);
                prop_assert_eq!(a.mean_solve_time_ms.is_some(), b.mean_solve_time_ms.is_some());
            }
            // Once rounded, the representation is a fixed point.
            prop_assert_eq!(rows_to_csv(&parsed), text);
        }
    }
}
