//! The `.mp.json` file format and complex literal parsing.
//!
//! A file is `{"n": N, "lo": LO, "coeffs": [C_lo, …, C_hi]}` where every `C` is
//! an `N × N` array of rows and each entry is an `[re, im]` pair. Plain
//! numbers are accepted as real entries on read. Matrix polynomials use
//! `lo = 0`. An optional `"truncated": true` marks a truncated Laurent series.

use crate::error::{Error, Result};
use crate::poly::{LaurentPoly, MatrixPoly};
use crate::types::{CMatrix, CVector, Complex, Eigenvalue};
use serde::Deserialize;
use std::fmt::Write as _;
use std::path::Path;

#[derive(Deserialize)]
#[serde(untagged)]
enum RawEntry {
    Real(f64),
    Pair(Vec<f64>),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFile {
    n: usize,
    lo: i64,
    coeffs: Vec<Vec<Vec<RawEntry>>>,
    #[serde(default)]
    truncated: bool,
}

fn json_error(e: serde_json::Error) -> Error {
    Error::parse(format!("line {}, column {}", e.line(), e.column()), e.to_string())
}

fn entry_value(entry: &RawEntry, location: impl Fn() -> String) -> Result<Complex> {
    match entry {
        RawEntry::Real(x) => Ok(Complex::new(*x, 0.0)),
        RawEntry::Pair(v) if v.len() == 2 => Ok(Complex::new(v[0], v[1])),
        RawEntry::Pair(v) => Err(Error::parse(
            location(),
            format!("expected [re, im] pair, found {} numbers", v.len()),
        )),
    }
}

/// Builds a matrix from rows of raw entries, reporting ragged rows by path.
fn matrix_from_rows(rows: &[Vec<RawEntry>], n: usize, path: &str) -> Result<CMatrix> {
    if rows.len() != n {
        return Err(Error::parse(path.to_string(), format!("expected {n} rows, found {}", rows.len())));
    }
    let mut m = CMatrix::zeros(n, n);
    for (r, row) in rows.iter().enumerate() {
        if row.len() != n {
            return Err(Error::parse(
                format!("{path}[{r}]"),
                format!("expected {n} entries, found {}", row.len()),
            ));
        }
        for (col, entry) in row.iter().enumerate() {
            m[(r, col)] = entry_value(entry, || format!("{path}[{r}][{col}]"))?;
        }
    }
    Ok(m)
}

/// Parses the file format from a string.
pub fn parse_laurent(text: &str) -> Result<LaurentPoly> {
    if text.trim().is_empty() {
        return Err(Error::parse("line 1, column 0", "empty input"));
    }
    let raw: RawFile = serde_json::from_str(text).map_err(json_error)?;
    if raw.n == 0 {
        return Err(Error::parse("n", "dimension must be positive"));
    }
    if raw.coeffs.is_empty() {
        return Err(Error::parse("coeffs", "at least one coefficient is required"));
    }
    let coeffs = raw
        .coeffs
        .iter()
        .enumerate()
        .map(|(k, rows)| matrix_from_rows(rows, raw.n, &format!("coeffs[{k}]")))
        .collect::<Result<Vec<_>>>()?;
    if raw.lo > 0 {
        return Err(Error::parse("lo", format!("must be <= 0, got {}", raw.lo)));
    }
    let hi = raw.lo + coeffs.len() as i64 - 1;
    if hi < 0 {
        return Err(Error::parse("coeffs", format!("highest power {hi} must be >= 0")));
    }
    Ok(LaurentPoly::new(raw.lo, coeffs)?.with_truncated(raw.truncated))
}

pub fn read_laurent(path: impl AsRef<Path>) -> Result<LaurentPoly> {
    parse_laurent(&std::fs::read_to_string(path)?)
}

/// Reads a file that must hold a matrix polynomial (`lo = 0`).
pub fn read_poly(path: impl AsRef<Path>) -> Result<MatrixPoly> {
    let p = read_laurent(path)?;
    p.to_poly()
        .ok_or_else(|| Error::parse("lo", format!("expected a matrix polynomial (lo = 0), got lo = {}", p.lo())))
}

/// Shortest round-trip decimal; negative zero is written as zero.
fn number(x: f64) -> Result<String> {
    if !x.is_finite() {
        return Err(Error::InvalidInput(format!("cannot serialize non-finite value {x}")));
    }
    let x = if x == 0.0 { 0.0 } else { x };
    Ok(serde_json::to_string(&x).expect("finite float serializes"))
}

fn write_matrix(out: &mut String, m: &CMatrix, indent: &str) -> Result<()> {
    out.push_str("[\n");
    for r in 0..m.nrows() {
        write!(out, "{indent}  [").unwrap();
        for col in 0..m.ncols() {
            let z = m[(r, col)];
            if col > 0 {
                out.push_str(", ");
            }
            write!(out, "[{}, {}]", number(z.re)?, number(z.im)?).unwrap();
        }
        out.push(']');
        if r + 1 < m.nrows() {
            out.push(',');
        }
        out.push('\n');
    }
    write!(out, "{indent}]").unwrap();
    Ok(())
}

/// Serializes to the file format, one matrix row per line.
pub fn format_laurent(p: &LaurentPoly) -> Result<String> {
    let mut out = String::new();
    writeln!(out, "{{").unwrap();
    writeln!(out, "  \"n\": {},", p.n()).unwrap();
    writeln!(out, "  \"lo\": {},", p.lo()).unwrap();
    if p.truncated() {
        writeln!(out, "  \"truncated\": true,").unwrap();
    }
    out.push_str("  \"coeffs\": [\n");
    for (k, m) in p.coeffs().iter().enumerate() {
        out.push_str("    ");
        write_matrix(&mut out, m, "    ")?;
        if k + 1 < p.coeffs().len() {
            out.push(',');
        }
        out.push('\n');
    }
    out.push_str("  ]\n}\n");
    Ok(out)
}

pub fn format_poly(p: &MatrixPoly) -> Result<String> {
    format_laurent(&p.clone().into())
}

pub fn write_laurent(path: impl AsRef<Path>, p: &LaurentPoly) -> Result<()> {
    std::fs::write(path, format_laurent(p)?)?;
    Ok(())
}

pub fn write_poly(path: impl AsRef<Path>, p: &MatrixPoly) -> Result<()> {
    write_laurent(path, &p.clone().into())
}

/// JSON value for a matrix: rows of `[re, im]` pairs.
pub fn matrix_to_json(m: &CMatrix) -> serde_json::Value {
    serde_json::Value::Array(
        (0..m.nrows())
            .map(|r| {
                serde_json::Value::Array(
                    (0..m.ncols())
                        .map(|col| serde_json::json!([m[(r, col)].re, m[(r, col)].im]))
                        .collect(),
                )
            })
            .collect(),
    )
}

/// Parses a JSON matrix of `[re, im]` pairs or plain reals (any shape).
pub fn matrix_from_json(value: &serde_json::Value, path: &str) -> Result<CMatrix> {
    let rows: Vec<Vec<RawEntry>> =
        serde_json::from_value(value.clone()).map_err(|e| Error::parse(path.to_string(), e.to_string()))?;
    let nrows = rows.len();
    let ncols = rows.first().map_or(0, Vec::len);
    if nrows == 0 || ncols == 0 {
        return Err(Error::parse(path.to_string(), "empty matrix"));
    }
    let mut m = CMatrix::zeros(nrows, ncols);
    for (r, row) in rows.iter().enumerate() {
        if row.len() != ncols {
            return Err(Error::parse(
                format!("{path}[{r}]"),
                format!("expected {ncols} entries, found {}", row.len()),
            ));
        }
        for (col, entry) in row.iter().enumerate() {
            m[(r, col)] = entry_value(entry, || format!("{path}[{r}][{col}]"))?;
        }
    }
    Ok(m)
}

fn parse_real(token: &str) -> Option<f64> {
    let token = token.trim();
    if let Some((num, den)) = token.split_once('/') {
        let num: f64 = num.trim().parse().ok()?;
        let den: f64 = den.trim().parse().ok()?;
        return Some(num / den);
    }
    token.parse().ok()
}

/// Parses `RE`, `RE+IMi`, `RE-IMi`, `IMi`, `i`, `-i`; each part may be a
/// decimal or a ratio `P/Q`.
pub fn parse_complex(text: &str) -> Result<Complex> {
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = || Error::parse(format!("complex literal '{text}'"), "expected RE, RE+IMi or RE-IMi");
    if s.is_empty() {
        return Err(bad());
    }
    let Some(body) = s.strip_suffix('i').or_else(|| s.strip_suffix('j')) else {
        return parse_real(&s).map(|x| Complex::new(x, 0.0)).ok_or_else(bad);
    };
    // Split at the last sign that is not part of an exponent or the leading sign.
    let bytes = body.as_bytes();
    let mut split = None;
    for k in (1..bytes.len()).rev() {
        if (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'e' | b'E' | b'/') {
            split = Some(k);
            break;
        }
    }
    let imag_part = |t: &str| -> Option<f64> {
        match t {
            "" | "+" => Some(1.0),
            "-" => Some(-1.0),
            _ => parse_real(t),
        }
    };
    match split {
        Some(k) => {
            let re = parse_real(&body[..k]).ok_or_else(bad)?;
            let im = imag_part(&body[k..]).ok_or_else(bad)?;
            Ok(Complex::new(re, im))
        }
        None => Ok(Complex::new(0.0, imag_part(body).ok_or_else(bad)?)),
    }
}

/// Like [`parse_complex`] but also accepts `inf`/`Inf`/`∞`.
pub fn parse_eigenvalue(text: &str) -> Result<Eigenvalue> {
    match text.trim() {
        "inf" | "Inf" | "INF" | "infinity" | "∞" => Ok(Eigenvalue::Infinite),
        t => parse_complex(t).map(Eigenvalue::Finite),
    }
}

/// Comma-separated list of complex literals.
pub fn parse_complex_list(text: &str) -> Result<Vec<Complex>> {
    if text.trim().is_empty() {
        return Ok(Vec::new());
    }
    text.split(',').map(parse_complex).collect()
}

pub fn parse_vector(text: &str) -> Result<CVector> {
    let values = parse_complex_list(text)?;
    if values.is_empty() {
        return Err(Error::parse(format!("vector '{text}'"), "empty vector"));
    }
    Ok(CVector::from_vec(values))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::types::c;

    #[test]
    fn reads_p1_fixture_file() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("p1.mp.json");
        write_poly(&path, &fixtures::p1()).unwrap();
        let p = read_poly(&path).unwrap();
        assert_eq!(p.degree(), 2);
        assert_eq!(p.n(), 2);
        assert_eq!(p, fixtures::p1());
    }

    #[test]
    fn p3_round_trip_is_exact() {
        let p3 = fixtures::p3();
        let text = format_poly(&p3).unwrap();
        let back = parse_laurent(&text).unwrap().to_poly().unwrap();
        for (a, b) in p3.coeffs().iter().zip(back.coeffs()) {
            for (x, y) in a.iter().zip(b.iter()) {
                assert_eq!(x.re.to_bits(), y.re.to_bits());
                assert_eq!(x.im.to_bits(), y.im.to_bits());
            }
        }
    }

    #[test]
    fn ragged_rows_are_reported_with_location() {
        let text = r#"{"n": 2, "lo": 0, "coeffs": [[[1, 0], [0]]]}"#;
        match parse_laurent(text) {
            Err(Error::Parse { location, message }) => {
                assert_eq!(location, "coeffs[0][1]");
                assert!(message.contains("expected 2 entries"), "{message}");
            }
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn syntax_errors_carry_line_numbers() {
        let text = "{\n  \"n\": 2,\n  \"lo\": oops\n}";
        match parse_laurent(text) {
            Err(Error::Parse { location, .. }) => assert!(location.starts_with("line 3"), "{location}"),
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn empty_and_malformed_input() {
        assert!(matches!(parse_laurent(""), Err(Error::Parse { .. })));
        assert!(matches!(
            parse_laurent(r#"{"n": 1, "lo": 0, "coeffs": [[[[1, 2, 3]]]]}"#),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(
            parse_laurent(r#"{"n": 1, "lo": 1, "coeffs": [[[1]]]}"#),
            Err(Error::Parse { .. })
        ));
    }

    #[test]
    fn real_entries_are_promoted() {
        let p = parse_laurent(r#"{"n": 1, "lo": -1, "coeffs": [[[2.5]], [[[1, -1]]]]}"#).unwrap();
        assert_eq!(p.lo(), -1);
        assert_eq!(p.coeff(-1).unwrap()[(0, 0)], c(2.5, 0.0));
        assert_eq!(p.coeff(0).unwrap()[(0, 0)], c(1.0, -1.0));
    }

    #[test]
    fn truncated_flag_round_trips() {
        let p = fixtures::scalar_quadratic().with_truncated(true);
        let back = parse_laurent(&format_laurent(&p).unwrap()).unwrap();
        assert!(back.truncated());
        assert!(!parse_laurent(&format_laurent(&fixtures::scalar_quadratic()).unwrap()).unwrap().truncated());
    }

    #[test]
    fn complex_literals() {
        assert_eq!(parse_complex("1").unwrap(), c(1.0, 0.0));
        assert_eq!(parse_complex("-2.5").unwrap(), c(-2.5, 0.0));
        assert_eq!(parse_complex("1+2i").unwrap(), c(1.0, 2.0));
        assert_eq!(parse_complex("1-2i").unwrap(), c(1.0, -2.0));
        assert_eq!(parse_complex("-1e-3+4.5e2i").unwrap(), c(-1e-3, 450.0));
        assert_eq!(parse_complex("3i").unwrap(), c(0.0, 3.0));
        assert_eq!(parse_complex("-i").unwrap(), c(0.0, -1.0));
        assert_eq!(parse_complex("1/2").unwrap(), c(0.5, 0.0));
        assert_eq!(parse_complex("1-1/4i").unwrap(), c(1.0, -0.25));
        assert!(parse_complex("abc").is_err());
        assert!(parse_complex("").is_err());
        assert_eq!(parse_eigenvalue("inf").unwrap(), Eigenvalue::Infinite);
    }

    #[test]
    fn vectors() {
        let v = parse_vector("1,0").unwrap();
        assert_eq!(v.len(), 2);
        assert_eq!(v[0], c(1.0, 0.0));
        assert!(parse_vector("").is_err());
    }

    #[test]
    fn negative_zero_is_canonicalised() {
        let m = crate::types::real_matrix(1, 1, &[-0.0]);
        let p = MatrixPoly::new(vec![m]).unwrap();
        assert!(!format_poly(&p).unwrap().contains("-0"));
    }
}
