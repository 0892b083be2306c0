use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use pwlcenter_core::analysis::DisplacementSample;
use pwlcenter_core::flow::Trace;
use pwlcenter_core::{RealPoly, TrigPoly};

use crate::error::CliError;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoefficientFile {
    pub a: TrigPoly,
    pub b: TrigPoly,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WitnessFile {
    pub p: RealPoly,
    pub q: RealPoly,
    pub h: TrigPoly,
}

fn finite_trig(name: &str, p: &TrigPoly) -> Result<(), CliError> {
    let ok =
        p.a0().is_finite() && p.cos_coeffs().iter().chain(p.sin_coeffs()).all(|c| c.is_finite());
    ok.then_some(())
        .ok_or_else(|| CliError::Invalid(format!("{name} has a non-finite coefficient")))
}

fn finite_poly(name: &str, p: &RealPoly) -> Result<(), CliError> {
    p.coeffs()
        .iter()
        .all(|c| c.is_finite())
        .then_some(())
        .ok_or_else(|| CliError::Invalid(format!("{name} has a non-finite coefficient")))
}

fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|source| CliError::Read { path: path.to_owned(), source })?;
    serde_json::from_str(&text).map_err(|source| CliError::Parse { path: path.to_owned(), source })
}

pub fn read_coefficients(path: &Path) -> Result<CoefficientFile, CliError> {
    let f: CoefficientFile = read_json(path)?;
    finite_trig("a", &f.a)?;
    finite_trig("b", &f.b)?;
    Ok(f)
}

pub fn read_witness(path: &Path) -> Result<WitnessFile, CliError> {
    let f: WitnessFile = read_json(path)?;
    finite_poly("p", &f.p)?;
    finite_poly("q", &f.q)?;
    finite_trig("h", &f.h)?;
    Ok(f)
}

/// Pretty JSON with a trailing newline; field order follows the type definitions.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report types serialize");
    s.push('\n');
    s
}

pub fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    fs::write(path, contents).map_err(|source| CliError::Write { path: path.to_owned(), source })
}

/// 17 significant digits: parses back to the same double.
pub fn fmt_f64(v: f64) -> String {
    format!("{v:.16e}")
}

pub fn displacement_csv(samples: &[DisplacementSample]) -> String {
    let mut out = String::from("x,delta,band\n");
    for s in samples {
        let _ = writeln!(out, "{},{},{}", fmt_f64(s.x), fmt_f64(s.delta), s.band);
    }
    out
}

/// One row per bracketing sample and per crossing, in time order.
pub fn trace_csv(trace: &Trace) -> String {
    let mut rows: Vec<(f64, &str, f64, i8)> =
        trace.samples.iter().map(|p| (p.t, "sample", p.x, p.sign)).collect();
    for c in &trace.crossings {
        let sign = match c.direction {
            pwlcenter_core::flow::Direction::Up => 1,
            pwlcenter_core::flow::Direction::Down => -1,
        };
        rows.push((c.t, "crossing", 0.0, sign));
    }
    rows.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(b.1)));
    let mut out = String::from("kind,t,x,sign\n");
    for (t, kind, x, sign) in rows {
        let _ = writeln!(out, "{kind},{},{},{sign}", fmt_f64(t), fmt_f64(x));
    }
    out
}
