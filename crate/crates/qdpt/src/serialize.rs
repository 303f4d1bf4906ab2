//! Deterministic JSON and CSV emitters.
//!
//! Output is built by direct string assembly with a fixed field order and
//! floats printed at 17 significant digits (`{:.16e}`), which round-trip
//! exactly to the original f64 bits. Identical inputs therefore produce
//! byte-identical documents — the property the CLI's determinism contract
//! rests on. Every JSON document carries a top-level `schema_version: 1`.

use crate::oracle::OracleReport;
use crate::potential::{ModelParams, PtParams, ScanCurve};
use crate::spectrum::{EnergyLevel, Spectrum};
use crate::wavefunction::{ComplexSample, GridSpec, Sample};
use std::fmt::Write as _;

/// Schema version stamped on every JSON document.
pub const SCHEMA_VERSION: u32 = 1;

/// A float at 17 significant digits — enough to reproduce the exact f64.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

fn push_f64(out: &mut String, x: f64) {
    let _ = write!(out, "{x:.16e}");
}

fn push_opt_f64(out: &mut String, x: Option<f64>) {
    match x {
        Some(v) => push_f64(out, v),
        None => out.push_str("null"),
    }
}

fn push_params(out: &mut String, p: &ModelParams) {
    out.push_str("{\"mu\":");
    push_f64(out, p.mu);
    out.push_str(",\"alpha\":");
    push_f64(out, p.alpha);
    out.push_str(",\"D\":");
    push_f64(out, p.d);
    out.push_str(",\"q\":");
    push_f64(out, p.q);
    out.push_str(",\"hbar\":");
    push_f64(out, p.hbar);
    out.push_str(",\"c\":");
    push_f64(out, p.c);
    out.push('}');
}

fn push_pt_params(out: &mut String, p: &PtParams) {
    out.push_str("{\"mu\":");
    push_f64(out, p.mu);
    out.push_str(",\"alpha\":");
    push_f64(out, p.alpha);
    out.push_str(",\"D\":");
    push_f64(out, p.d);
    out.push_str(",\"epsilon\":");
    push_f64(out, p.epsilon);
    out.push_str(",\"hbar\":");
    push_f64(out, p.hbar);
    out.push_str(",\"c\":");
    push_f64(out, p.c);
    out.push('}');
}

fn push_level(out: &mut String, level: &EnergyLevel) {
    let _ = write!(out, "{{\"n\":{},\"E\":", level.n);
    push_f64(out, level.energy);
    out.push_str(",\"k\":");
    push_f64(out, level.k);
    out.push_str(",\"xi\":");
    push_f64(out, level.xi);
    out.push('}');
}

/// `{"schema_version":1,"params":{…},"levels":[{n,E,k,xi},…],"count":N}`
pub fn json_spectrum(spectrum: &Spectrum) -> String {
    let mut out = String::new();
    let _ = write!(out, "{{\"schema_version\":{SCHEMA_VERSION},\"params\":");
    push_params(&mut out, &spectrum.params);
    out.push_str(",\"levels\":[");
    for (i, level) in spectrum.levels.iter().enumerate() {
        if i > 0 {
            out.push(',');
        }
        push_level(&mut out, level);
    }
    let _ = write!(out, "],\"count\":{}}}", spectrum.count);
    out
}

/// PT-family spectrum document — identical level schema, but the parameter
/// record carries the complex-deformation angle ε instead of q:
/// `{"schema_version":1,"params":{…,"epsilon":…},"levels":[…],"count":N}`
pub fn json_pt_spectrum(params: &PtParams, spectrum: &Spectrum) -> String {
    let mut out = String::new();
    let _ = write!(out, "{{\"schema_version\":{SCHEMA_VERSION},\"params\":");
    push_pt_params(&mut out, params);
    out.push_str(",\"levels\":[");
    for (i, level) in spectrum.levels.iter().enumerate() {
        if i > 0 {
            out.push(',');
        }
        push_level(&mut out, level);
    }
    let _ = write!(out, "],\"count\":{}}}", spectrum.count);
    out
}

/// CSV with the fixed column order `n,E,k,xi`.
pub fn csv_spectrum(spectrum: &Spectrum) -> String {
    let mut out = String::from("n,E,k,xi\n");
    for level in &spectrum.levels {
        let _ = write!(
            out,
            "{},{},{},{}\n",
            level.n,
            fmt_f64(level.energy),
            fmt_f64(level.k),
            fmt_f64(level.xi)
        );
    }
    out
}

/// `{"schema_version":1,"curves":[{"q":…,"samples":[{"r":…,"v":…},…]},…]}`
pub fn json_scan(curves: &[ScanCurve]) -> String {
    let mut out = String::new();
    let _ = write!(out, "{{\"schema_version\":{SCHEMA_VERSION},\"curves\":[");
    for (i, curve) in curves.iter().enumerate() {
        if i > 0 {
            out.push(',');
        }
        out.push_str("{\"q\":");
        push_f64(&mut out, curve.q);
        out.push_str(",\"samples\":[");
        for (j, s) in curve.samples.iter().enumerate() {
            if j > 0 {
                out.push(',');
            }
            out.push_str("{\"r\":");
            push_f64(&mut out, s.r);
            out.push_str(",\"v\":");
            push_f64(&mut out, s.v);
            out.push_str("}");
        }
        out.push_str("]}");
    }
    out.push_str("]}");
    out
}

/// CSV with columns `r` then one potential column per q (all curves share
/// the scan grid by construction).
pub fn csv_scan(curves: &[ScanCurve]) -> String {
    let mut out = String::from("r");
    for curve in curves {
        let _ = write!(out, ",V_q{}", curve.q);
    }
    out.push('\n');
    if curves.is_empty() {
        return out;
    }
    let rows = curves[0].samples.len();
    debug_assert!(curves.iter().all(|c| c.samples.len() == rows));
    for i in 0..rows {
        out.push_str(&fmt_f64(curves[0].samples[i].r));
        for curve in curves {
            out.push(',');
            out.push_str(&fmt_f64(curve.samples[i].v));
        }
        out.push('\n');
    }
    out
}

/// Real-family wavefunction table:
/// `{"schema_version":1,"params":{…},"level":{…},"samples":[{"r":…,"psi_real":…},…]}`
pub fn json_wavefunction(params: &ModelParams, level: &EnergyLevel, samples: &[Sample]) -> String {
    let mut out = String::new();
    let _ = write!(out, "{{\"schema_version\":{SCHEMA_VERSION},\"params\":");
    push_params(&mut out, params);
    out.push_str(",\"level\":");
    push_level(&mut out, level);
    out.push_str(",\"samples\":[");
    for (i, s) in samples.iter().enumerate() {
        if i > 0 {
            out.push(',');
        }
        out.push_str("{\"r\":");
        push_f64(&mut out, s.r);
        out.push_str(",\"psi_real\":");
        push_f64(&mut out, s.psi);
        out.push('}');
    }
    out.push_str("]}");
    out
}

/// PT-family wavefunction table with explicit real and imaginary parts.
pub fn json_pt_wavefunction(
    params: &PtParams,
    level: &EnergyLevel,
    samples: &[ComplexSample],
) -> String {
    let mut out = String::new();
    let _ = write!(out, "{{\"schema_version\":{SCHEMA_VERSION},\"params\":");
    push_pt_params(&mut out, params);
    out.push_str(",\"level\":");
    push_level(&mut out, level);
    out.push_str(",\"samples\":[");
    for (i, s) in samples.iter().enumerate() {
        if i > 0 {
            out.push(',');
        }
        out.push_str("{\"r\":");
        push_f64(&mut out, s.r);
        out.push_str(",\"psi_real\":");
        push_f64(&mut out, s.psi.re);
        out.push_str(",\"psi_imag\":");
        push_f64(&mut out, s.psi.im);
        out.push('}');
    }
    out.push_str("]}");
    out
}

/// CSV with columns `r,psi_real`.
pub fn csv_wavefunction(samples: &[Sample]) -> String {
    let mut out = String::from("r,psi_real\n");
    for s in samples {
        let _ = write!(out, "{},{}\n", fmt_f64(s.r), fmt_f64(s.psi));
    }
    out
}

/// CSV with columns `r,psi_real,psi_imag`.
pub fn csv_pt_wavefunction(samples: &[ComplexSample]) -> String {
    let mut out = String::from("r,psi_real,psi_imag\n");
    for s in samples {
        let _ = write!(
            out,
            "{},{},{}\n",
            fmt_f64(s.r),
            fmt_f64(s.psi.re),
            fmt_f64(s.psi.im)
        );
    }
    out
}

fn push_grid(out: &mut String, grid: &GridSpec) {
    out.push_str("{\"half_width\":");
    push_f64(out, grid.half_width);
    let _ = write!(out, ",\"points\":{}}}", grid.points);
}

/// Oracle comparison report:
/// `{"schema_version":1,"n":…,"e_analytic":…,"e_numeric":…,"delta":…,`
/// `"extrapolated":…,"monotone_convergence":…,"wavefunction_max_diff":…,`
/// `"grids":[{half_width,points},…]}` (absent values are `null`).
pub fn json_report(report: &OracleReport) -> String {
    let mut out = String::new();
    let _ = write!(
        out,
        "{{\"schema_version\":{SCHEMA_VERSION},\"n\":{},\"e_analytic\":",
        report.n
    );
    push_opt_f64(&mut out, report.e_analytic);
    out.push_str(",\"e_numeric\":");
    push_opt_f64(&mut out, report.e_numeric);
    out.push_str(",\"delta\":");
    push_opt_f64(&mut out, report.delta);
    let _ = write!(out, ",\"extrapolated\":{}", report.extrapolated);
    out.push_str(",\"monotone_convergence\":");
    match report.monotone_convergence {
        Some(b) => {
            let _ = write!(out, "{b}");
        }
        None => out.push_str("null"),
    }
    out.push_str(",\"wavefunction_max_diff\":");
    push_opt_f64(&mut out, report.wavefunction_max_diff);
    out.push_str(",\"grids\":[");
    for (i, g) in report.grids_used.iter().enumerate() {
        if i > 0 {
            out.push(',');
        }
        push_grid(&mut out, g);
    }
    out.push_str("]}");
    out
}

/// Single-row CSV for an oracle report (empty cells for absent values).
pub fn csv_report(report: &OracleReport) -> String {
    let opt = |x: Option<f64>| x.map(fmt_f64).unwrap_or_default();
    let mono = match report.monotone_convergence {
        Some(b) => b.to_string(),
        None => String::new(),
    };
    format!(
        "n,e_analytic,e_numeric,delta,extrapolated,monotone_convergence,wavefunction_max_diff\n{},{},{},{},{},{},{}\n",
        report.n,
        opt(report.e_analytic),
        opt(report.e_numeric),
        opt(report.delta),
        report.extrapolated,
        mono,
        opt(report.wavefunction_max_diff),
    )
}

/// One (spacing, residual) pair of an ODE-residual convergence study.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResidualSample {
    pub spacing: f64,
    pub residual: f64,
}

/// Residual convergence study:
/// `{"schema_version":1,"params":{…},"level":{…},"study":[{"spacing":…,`
/// `"residual":…},…],"ratios":[…]}` — `ratios[i]` is `study[i].residual /
/// study[i+1].residual` (≈16 for the O(h⁴) stencil under spacing halving).
pub fn json_residual_study(
    params: &ModelParams,
    level: &EnergyLevel,
    study: &[ResidualSample],
) -> String {
    let mut out = String::new();
    let _ = write!(out, "{{\"schema_version\":{SCHEMA_VERSION},\"params\":");
    push_params(&mut out, params);
    out.push_str(",\"level\":");
    push_level(&mut out, level);
    out.push_str(",\"study\":[");
    for (i, s) in study.iter().enumerate() {
        if i > 0 {
            out.push(',');
        }
        out.push_str("{\"spacing\":");
        push_f64(&mut out, s.spacing);
        out.push_str(",\"residual\":");
        push_f64(&mut out, s.residual);
        out.push('}');
    }
    out.push_str("],\"ratios\":[");
    for i in 0..study.len().saturating_sub(1) {
        if i > 0 {
            out.push(',');
        }
        push_f64(&mut out, study[i].residual / study[i + 1].residual);
    }
    out.push_str("]}");
    out
}

/// CSV with columns `spacing,residual`.
pub fn csv_residual_study(study: &[ResidualSample]) -> String {
    let mut out = String::from("spacing,residual\n");
    for s in study {
        let _ = write!(out, "{},{}\n", fmt_f64(s.spacing), fmt_f64(s.residual));
    }
    out
}
