//! Text formats for density matrices and measured moments, and the fixed
//! number formatting used by every report.
//!
//! State files look like
//!
//! ```text
//! DMAT 2
//! 0.5,0 0,0.5
//! 0,-0.5 0.5,0
//! ```
//!
//! Moments files are `key = value` lines with `#` comments:
//!
//! ```text
//! N = 4
//! Jx = 0
//! Jy = 0
//! Jz = 0
//! Kxx = 3
//! Kyy = 3
//! Kzz = 0
//! # optional, all three or none
//! Cxy = 0
//! Cxz = 0
//! Cyz = 0
//! ```

use std::collections::BTreeMap;
use std::fmt::Write as _;

use nalgebra::{Matrix3, Vector3};

use crate::error::{Error, Result};
use crate::linalg::{Complex64, ComplexMatrix};
use crate::spin::CollectiveMoments;
use crate::state::{DensityMatrix, STATE_TOL};

/// Six significant digits, fixed notation between `1e-4` and `1e7`,
/// scientific outside. Negative zero prints as zero.
pub fn fmt_num(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return "0.00000".into();
    }
    let sci = format!("{x:.5e}");
    let exp: i32 = sci[sci.find('e').expect("exponent") + 1..].parse().expect("integer exponent");
    if !(-4..7).contains(&exp) {
        return sci;
    }
    let decimals = (5 - exp).max(0) as usize;
    let s = format!("{x:.decimals$}");
    if s.trim_start_matches('-').chars().all(|c| c == '0' || c == '.') {
        s.trim_start_matches('-').to_string()
    } else {
        s
    }
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn parse_f64(token: &str, line: usize) -> Result<f64> {
    let v: f64 = token
        .trim()
        .parse()
        .map_err(|_| parse_err(line, format!("'{token}' is not a number")))?;
    if !v.is_finite() {
        return Err(parse_err(line, format!("'{token}' is not finite")));
    }
    Ok(v)
}

/// Parses a state file and validates it as a density matrix.
pub fn parse_state(text: &str) -> Result<DensityMatrix> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (hline, header) = lines.next().ok_or_else(|| parse_err(1, "empty file, expected 'DMAT <d>'"))?;
    let mut parts = header.split_whitespace();
    if parts.next() != Some("DMAT") {
        return Err(parse_err(hline, "expected 'DMAT <d>'"));
    }
    let d: usize = parts
        .next()
        .and_then(|t| t.parse().ok())
        .filter(|&d| d > 0)
        .ok_or_else(|| parse_err(hline, "expected a positive dimension after DMAT"))?;
    if parts.next().is_some() {
        return Err(parse_err(hline, "unexpected text after dimension"));
    }
    if !d.is_power_of_two() {
        return Err(parse_err(hline, format!("dimension {d} is not a power of two")));
    }
    let mut data = Vec::with_capacity(d * d);
    let mut last = hline;
    for row in 0..d {
        let (lno, line) = lines
            .next()
            .ok_or_else(|| parse_err(last + 1, format!("expected {d} rows, found {row}")))?;
        last = lno;
        let entries: Vec<&str> = line.split_whitespace().collect();
        if entries.len() != d {
            return Err(parse_err(lno, format!("expected {d} entries, found {}", entries.len())));
        }
        for e in entries {
            let (re, im) = e
                .split_once(',')
                .ok_or_else(|| parse_err(lno, format!("entry '{e}' is not of the form re,im")))?;
            data.push(Complex64::new(parse_f64(re, lno)?, parse_f64(im, lno)?));
        }
    }
    if let Some((lno, _)) = lines.next() {
        return Err(parse_err(lno, "unexpected text after the matrix"));
    }
    let m = ComplexMatrix::from_vec(d, d, data)?;
    DensityMatrix::with_tolerance(m, STATE_TOL).map_err(|e| parse_err(hline, e.to_string()))
}

/// Writes a state file; entries use the shortest round-trip representation.
pub fn write_state(rho: &ComplexMatrix) -> String {
    let d = rho.rows();
    let mut out = format!("DMAT {d}\n");
    for i in 0..d {
        let row: Vec<String> = rho.row(i).iter().map(|z| format!("{},{}", z.re, z.im)).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

const REQUIRED_KEYS: [&str; 7] = ["N", "Jx", "Jy", "Jz", "Kxx", "Kyy", "Kzz"];
const CORR_KEYS: [&str; 3] = ["Cxy", "Cxz", "Cyz"];

/// Parses a moments file. Without all three `C` entries the off-diagonal
/// correlations are unknown.
pub fn parse_moments(text: &str) -> Result<CollectiveMoments> {
    let mut values: BTreeMap<&str, (usize, f64)> = BTreeMap::new();
    let mut n_raw = None;
    for (i, raw) in text.lines().enumerate() {
        let lno = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| parse_err(lno, "expected 'key = value'"))?;
        let key = key.trim();
        let Some(&known) = REQUIRED_KEYS.iter().chain(&CORR_KEYS).find(|k| **k == key) else {
            return Err(parse_err(lno, format!("unknown key '{key}'")));
        };
        if values.contains_key(known) {
            return Err(parse_err(lno, format!("duplicate key '{key}'")));
        }
        if known == "N" {
            let n: usize = value
                .trim()
                .parse()
                .ok()
                .filter(|&n| n > 0)
                .ok_or_else(|| parse_err(lno, "N must be a positive integer"))?;
            n_raw = Some(n);
            values.insert(known, (lno, n as f64));
        } else {
            values.insert(known, (lno, parse_f64(value, lno)?));
        }
    }
    let end = text.lines().count().max(1);
    for key in REQUIRED_KEYS {
        if !values.contains_key(key) {
            return Err(parse_err(end, format!("missing key '{key}'")));
        }
    }
    let get = |k: &str| values[k].1;
    let n = n_raw.expect("N checked above");
    let j = Vector3::new(get("Jx"), get("Jy"), get("Jz"));
    let k = Vector3::new(get("Kxx"), get("Kyy"), get("Kzz"));
    let n_corr = CORR_KEYS.iter().filter(|c| values.contains_key(**c)).count();
    let result = if n_corr == 3 {
        let (xy, xz, yz) = (get("Cxy"), get("Cxz"), get("Cyz"));
        let corr = Matrix3::new(k[0], xy, xz, xy, k[1], yz, xz, yz, k[2]);
        CollectiveMoments::new(n, j, corr)
    } else {
        CollectiveMoments::from_first_second(n, j, k)
    };
    result.map_err(|e| parse_err(values["N"].0, e.to_string()))
}

/// Writes a moments file; `C` entries are included when they are known.
pub fn write_moments(m: &CollectiveMoments) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "N = {}", m.n);
    for (key, v) in ["Jx", "Jy", "Jz"].iter().zip(m.j_vec.iter()) {
        let _ = writeln!(out, "{key} = {v}");
    }
    for (i, key) in ["Kxx", "Kyy", "Kzz"].iter().enumerate() {
        let _ = writeln!(out, "{key} = {}", m.corr[(i, i)]);
    }
    if m.off_diagonal_known {
        for (key, (r, c)) in CORR_KEYS.iter().zip([(0, 1), (0, 2), (1, 2)]) {
            let _ = writeln!(out, "{key} = {}", m.corr[(r, c)]);
        }
    }
    out
}
