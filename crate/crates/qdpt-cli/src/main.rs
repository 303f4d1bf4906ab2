//! `qdpt` — bound states of the q-deformed modified Pöschl-Teller well.
//!
//! One subcommand per deliverable: closed-form spectra, normalized
//! wavefunction tables, potential scans, the exactly reducible special cases,
//! finite-difference verification reports, and ODE-residual convergence
//! studies. Output is deterministic: identical argv produces byte-identical
//! bytes on stdout (or in `--output` files).
//!
//! Exit codes: 0 success, 1 requested level or spectrum has no bound state,
//! 2 invalid parameters, 3 numerical convergence failure. Every nonzero exit
//! is accompanied by a one-line diagnostic on stderr.

use clap::{Args, Parser, Subcommand, ValueEnum};
use qdpt::oracle::{compare_level, OracleError, OracleReport};
use qdpt::potential::{
    from_special_case, potential_scan, ModelParams, ParamError, PtParams, ResolvedCase, ScanCurve,
    SpecialCase,
};
use qdpt::serialize as ser;
use qdpt::special::SpecialError;
use qdpt::spectrum::{
    enumerate_pt_spectrum, enumerate_spectrum, solve_level, EnergyLevel, SolveError, Spectrum,
};
use qdpt::wavefunction::{
    ode_residual_max, pt_wavefunction_value, wavefunction_value, ComplexSample, GridSpec,
    NormalizedState, Sample, WavefunctionError,
};
use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

fn main() -> ExitCode {
    ExitCode::from(run(std::env::args_os()))
}

/// Parse argv, dispatch, write output; returns the process exit code.
fn run<I, T>(argv: I) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let config = match RunConfig::try_parse_from(argv) {
        Ok(config) => config,
        Err(err) => {
            use clap::error::ErrorKind;
            if matches!(
                err.kind(),
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion
            ) {
                print!("{err}");
                return 0;
            }
            let text = err.to_string();
            let first = text
                .lines()
                .find(|l| !l.trim().is_empty())
                .unwrap_or("invalid arguments");
            eprintln!("{first}");
            return 2;
        }
    };
    match dispatch(config.command) {
        Ok((out, rendered)) => {
            match out.output {
                Some(path) => {
                    if let Err(err) = std::fs::write(&path, &rendered.body) {
                        eprintln!("cannot write {}: {err}", path.display());
                        return 2;
                    }
                }
                None => print!("{}", rendered.body),
            }
            if let Some(note) = rendered.note {
                eprintln!("{note}");
            }
            rendered.code
        }
        Err(failure) => {
            eprintln!("{}", failure.message);
            failure.code
        }
    }
}

#[derive(Parser)]
#[command(
    name = "qdpt",
    version,
    about = "Relativistic bound states of the q-deformed modified Poschl-Teller well"
)]
struct RunConfig {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Closed-form bound-state spectrum for the given parameters.
    Spectrum {
        #[command(flatten)]
        params: ParamArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Normalized wavefunction samples for bound level n.
    Wavefunction {
        #[command(flatten)]
        params: ParamArgs,
        /// Level index (0-based).
        #[arg(long)]
        n: u32,
        #[command(flatten)]
        range: RangeArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Potential curves V(r) = -D/cosh_q^2(alpha r) for a list of deformations.
    Potential {
        /// Comma-separated deformation values.
        #[arg(long = "q-list", value_delimiter = ',', default_value = "1")]
        q_list: Vec<f64>,
        /// Well depth D.
        #[arg(long = "D", default_value_t = 1.0, allow_negative_numbers = true)]
        d: f64,
        /// Range parameter alpha.
        #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
        alpha: f64,
        /// Left edge of the r-grid.
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        rmin: f64,
        /// Right edge of the r-grid.
        #[arg(long, default_value_t = 5.0, allow_negative_numbers = true)]
        rmax: f64,
        /// Number of grid points.
        #[arg(long, default_value_t = 501)]
        points: usize,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Exactly reducible special wells (mu = hbar = c = 1).
    Special {
        /// Which special well to resolve.
        #[arg(long, value_enum)]
        case: CaseName,
        /// Shape parameter lambda (reflectionless: integer >= 1; symmetric
        /// families: lambda^2 > 1/4). Default 1 (reflectionless) or 1.5.
        #[arg(long, allow_negative_numbers = true)]
        lambda: Option<f64>,
        /// Deformation for the q-symmetric case (default 2).
        #[arg(long, allow_negative_numbers = true)]
        q: Option<f64>,
        /// Complex-deformation angle for the pt case (|epsilon| > pi/4).
        #[arg(long, allow_negative_numbers = true)]
        epsilon: Option<f64>,
        /// Well depth D for the pt case (default 1).
        #[arg(long = "D", allow_negative_numbers = true)]
        d: Option<f64>,
        /// Range parameter alpha for the pt case (default 1).
        #[arg(long, allow_negative_numbers = true)]
        alpha: Option<f64>,
        /// Also emit wavefunction samples for this level instead of the spectrum.
        #[arg(long)]
        n: Option<u32>,
        #[command(flatten)]
        range: RangeArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Compare a closed-form level against the finite-difference solver.
    Verify {
        #[command(flatten)]
        params: ParamArgs,
        /// Level index (0-based).
        #[arg(long)]
        n: u32,
        /// Comma-separated grid spacings, each half the previous
        /// (default: the level's standard grid at 4001 and 8001 points).
        #[arg(long = "grids", value_delimiter = ',')]
        grids: Option<Vec<f64>>,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// ODE-residual convergence study for the closed-form level n.
    Residual {
        #[command(flatten)]
        params: ParamArgs,
        /// Level index (0-based).
        #[arg(long)]
        n: u32,
        #[command(flatten)]
        out: OutputArgs,
    },
}

/// Physical parameters shared by the closed-form subcommands.
#[derive(Args)]
struct ParamArgs {
    /// Rest mass mu.
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    mu: f64,
    /// Range parameter alpha.
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    alpha: f64,
    /// Well depth D.
    #[arg(long = "D", default_value_t = 1.0, allow_negative_numbers = true)]
    d: f64,
    /// Deformation q > 0.
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    q: f64,
    /// Reduced Planck constant.
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    hbar: f64,
    /// Speed of light.
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    c: f64,
}

impl ParamArgs {
    fn build(&self) -> Result<ModelParams, Failure> {
        Ok(ModelParams::with_constants(
            self.mu, self.alpha, self.d, self.q, self.hbar, self.c,
        )?)
    }
}

/// Sample-range flags shared by the wavefunction-emitting subcommands.
#[derive(Args)]
struct RangeArgs {
    /// Left edge of the sample range (default: -L of the level's standard grid).
    #[arg(long, allow_negative_numbers = true)]
    rmin: Option<f64>,
    /// Right edge of the sample range (default: +L).
    #[arg(long, allow_negative_numbers = true)]
    rmax: Option<f64>,
    /// Number of sample points, >= 2 (default: the standard grid's count).
    #[arg(long)]
    points: Option<usize>,
}

impl RangeArgs {
    fn resolve(&self, default_grid: &GridSpec) -> Result<(f64, f64, usize), Failure> {
        let rmin = self.rmin.unwrap_or(-default_grid.half_width);
        let rmax = self.rmax.unwrap_or(default_grid.half_width);
        let points = self.points.unwrap_or(default_grid.points);
        if !(rmin.is_finite() && rmax.is_finite() && rmin < rmax) {
            return Err(Failure::invalid(format!(
                "sample range needs rmin < rmax (got {rmin} .. {rmax})"
            )));
        }
        if points < 2 {
            return Err(Failure::invalid(format!(
                "sample range needs at least 2 points (got {points})"
            )));
        }
        Ok((rmin, rmax, points))
    }
}

#[derive(Args)]
struct OutputArgs {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
    /// Write output to this file instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Table,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum CaseName {
    /// q = 1, D = lambda(lambda+1)/2 with integer lambda.
    Reflectionless,
    /// D = lambda^2 - 1/4 at arbitrary deformation q.
    QSymmetric,
    /// q = 1, D = lambda^2 - 1/4.
    Symmetric,
    /// Complex deformation q_c = exp(2 i alpha epsilon).
    Pt,
}

/// Rendered output plus the exit disposition it carries.
struct Rendered {
    body: String,
    code: u8,
    note: Option<String>,
}

impl Rendered {
    fn ok(body: String) -> Rendered {
        Rendered {
            body,
            code: 0,
            note: None,
        }
    }

    fn empty_spectrum(body: String) -> Rendered {
        Rendered {
            body,
            code: 1,
            note: Some("no bound states: the spectrum is empty for these parameters".into()),
        }
    }
}

/// A diagnosed failure: one stderr line plus the exit code it maps to.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn invalid(message: String) -> Failure {
        Failure {
            code: 2,
            message: format!("invalid parameters: {message}"),
        }
    }

    fn unbound(message: String) -> Failure {
        Failure { code: 1, message }
    }
}

impl From<ParamError> for Failure {
    fn from(err: ParamError) -> Failure {
        Failure::invalid(err.to_string())
    }
}

impl From<SolveError> for Failure {
    fn from(err: SolveError) -> Failure {
        Failure {
            code: 3,
            message: format!("convergence failure: {err}"),
        }
    }
}

impl From<OracleError> for Failure {
    fn from(err: OracleError) -> Failure {
        match err {
            OracleError::GridLadder => Failure::invalid(err.to_string()),
            OracleError::Solve(inner) => inner.into(),
            other => Failure {
                code: 3,
                message: format!("convergence failure: {other}"),
            },
        }
    }
}

impl From<WavefunctionError> for Failure {
    fn from(err: WavefunctionError) -> Failure {
        match err {
            WavefunctionError::Grid(inner) => inner.into(),
            WavefunctionError::Special(SpecialError::Pole { .. }) => Failure::invalid(format!(
                "the requested range crosses a pole of the complex deformation: {err}"
            )),
            other => Failure {
                code: 3,
                message: format!("convergence failure: {other}"),
            },
        }
    }
}

fn bound_level(spectrum: &Spectrum, n: u32) -> Result<EnergyLevel, Failure> {
    spectrum.levels.get(n as usize).copied().ok_or_else(|| {
        Failure::unbound(format!(
            "no bound state: level n = {n} does not exist ({} bound level(s))",
            spectrum.count
        ))
    })
}

fn dispatch(cmd: Cmd) -> Result<(OutputArgs, Rendered), Failure> {
    match cmd {
        Cmd::Spectrum { params, out } => {
            let params = params.build()?;
            let spectrum = enumerate_spectrum(&params)?;
            let body = render_spectrum(&spectrum, out.format);
            let rendered = if spectrum.count == 0 {
                Rendered::empty_spectrum(body)
            } else {
                Rendered::ok(body)
            };
            Ok((out, rendered))
        }
        Cmd::Wavefunction {
            params,
            n,
            range,
            out,
        } => {
            let params = params.build()?;
            let spectrum = enumerate_spectrum(&params)?;
            let level = bound_level(&spectrum, n)?;
            let state = NormalizedState::new(&params, &level)?;
            let default_grid = GridSpec::default_for(&params, level.xi);
            let (rmin, rmax, points) = range.resolve(&default_grid)?;
            let samples = tabulate_real(&state, rmin, rmax, points);
            let body = render_wavefunction(&params, &level, &state, &samples, out.format);
            Ok((out, Rendered::ok(body)))
        }
        Cmd::Potential {
            q_list,
            d,
            alpha,
            rmin,
            rmax,
            points,
            out,
        } => {
            let curves = potential_scan(&q_list, d, alpha, rmin, rmax, points)?;
            let body = render_scan(&curves, out.format);
            Ok((out, Rendered::ok(body)))
        }
        Cmd::Special {
            case,
            lambda,
            q,
            epsilon,
            d,
            alpha,
            n,
            range,
            out,
        } => {
            let resolved = resolve_case(case, lambda, q, epsilon, d, alpha)?;
            let rendered = match resolved {
                ResolvedCase::Real(params) => {
                    let spectrum = enumerate_spectrum(&params)?;
                    match n {
                        None => {
                            let body = render_spectrum(&spectrum, out.format);
                            if spectrum.count == 0 {
                                Rendered::empty_spectrum(body)
                            } else {
                                Rendered::ok(body)
                            }
                        }
                        Some(n) => {
                            let level = bound_level(&spectrum, n)?;
                            let state = NormalizedState::new(&params, &level)?;
                            let default_grid = GridSpec::default_for(&params, level.xi);
                            let (rmin, rmax, points) = range.resolve(&default_grid)?;
                            let samples = tabulate_real(&state, rmin, rmax, points);
                            render_wavefunction(&params, &level, &state, &samples, out.format)
                                .pipe(Rendered::ok)
                        }
                    }
                }
                ResolvedCase::Pt(pt) => {
                    let spectrum = enumerate_pt_spectrum(&pt)?;
                    match n {
                        None => {
                            let body = render_pt_spectrum(&pt, &spectrum, out.format);
                            if spectrum.count == 0 {
                                Rendered::empty_spectrum(body)
                            } else {
                                Rendered::ok(body)
                            }
                        }
                        Some(n) => {
                            let level = bound_level(&spectrum, n)?;
                            let default_grid = GridSpec::default_for(&pt.spectral_twin(), level.xi);
                            let (rmin, rmax, points) = range.resolve(&default_grid)?;
                            let samples = tabulate_pt(&pt, &level, rmin, rmax, points)?;
                            render_pt_wavefunction(&pt, &level, &samples, out.format)
                                .pipe(Rendered::ok)
                        }
                    }
                }
            };
            Ok((out, rendered))
        }
        Cmd::Verify {
            params,
            n,
            grids,
            out,
        } => {
            let params = params.build()?;
            let ladder = build_verify_grids(&params, n, grids.as_deref())?;
            let report = compare_level(&params, n, &ladder)?;
            let body = render_report(&report, out.format);
            let rendered = if report.e_analytic.is_none() || report.e_numeric.is_none() {
                Rendered {
                    body,
                    code: 1,
                    note: Some(format!(
                        "no bound state at level n = {n} on one or both sides of the comparison"
                    )),
                }
            } else {
                Rendered::ok(body)
            };
            Ok((out, rendered))
        }
        Cmd::Residual { params, n, out } => {
            let params = params.build()?;
            let spectrum = enumerate_spectrum(&params)?;
            let level = bound_level(&spectrum, n)?;
            let state = NormalizedState::new(&params, &level)?;
            let study = residual_ladder(&params, &state)?;
            let body = render_residual(&params, &level, &study, out.format);
            Ok((out, Rendered::ok(body)))
        }
    }
}

trait Pipe: Sized {
    fn pipe<T>(self, f: impl FnOnce(Self) -> T) -> T {
        f(self)
    }
}

impl Pipe for String {}

fn resolve_case(
    case: CaseName,
    lambda: Option<f64>,
    q: Option<f64>,
    epsilon: Option<f64>,
    d: Option<f64>,
    alpha: Option<f64>,
) -> Result<ResolvedCase, Failure> {
    let resolved = match case {
        CaseName::Reflectionless => {
            let lam = lambda.unwrap_or(1.0);
            if !(lam.is_finite() && lam >= 1.0 && lam.fract() == 0.0 && lam <= 4096.0) {
                return Err(Failure::invalid(format!(
                    "the reflectionless case needs an integer lambda >= 1 (got {lam})"
                )));
            }
            from_special_case(&SpecialCase::Reflectionless { lambda: lam as u32 })?
        }
        CaseName::QSymmetric => from_special_case(&SpecialCase::QSymmetric {
            lambda: lambda.unwrap_or(1.5),
            q: q.unwrap_or(2.0),
        })?,
        CaseName::Symmetric => from_special_case(&SpecialCase::Symmetric {
            lambda: lambda.unwrap_or(1.5),
        })?,
        CaseName::Pt => {
            let Some(eps) = epsilon else {
                return Err(Failure::invalid(
                    "the pt case requires --epsilon (with |epsilon| > pi/4)".into(),
                ));
            };
            from_special_case(&SpecialCase::PtSymmetric {
                d: d.unwrap_or(1.0),
                alpha: alpha.unwrap_or(1.0),
                epsilon: eps,
            })?
        }
    };
    Ok(resolved)
}

fn tabulate_real(state: &NormalizedState, rmin: f64, rmax: f64, points: usize) -> Vec<Sample> {
    let step = (rmax - rmin) / (points - 1) as f64;
    (0..points)
        .map(|i| {
            let r = rmin + step * i as f64;
            Sample {
                r,
                psi: wavefunction_value(state, r),
            }
        })
        .collect()
}

fn tabulate_pt(
    params: &PtParams,
    level: &EnergyLevel,
    rmin: f64,
    rmax: f64,
    points: usize,
) -> Result<Vec<ComplexSample>, Failure> {
    let step = (rmax - rmin) / (points - 1) as f64;
    (0..points)
        .map(|i| {
            let r = rmin + step * i as f64;
            Ok(ComplexSample {
                r,
                psi: pt_wavefunction_value(params, level, r)?,
            })
        })
        .collect()
}

/// Grid ladder for `verify`: either the level's standard grid at 4001 and
/// 8001 points, or grids built from user-supplied spacings (which must halve
/// step to step; the half-width is snapped to a whole number of steps).
fn build_verify_grids(
    params: &ModelParams,
    n: u32,
    spacings: Option<&[f64]>,
) -> Result<Vec<GridSpec>, Failure> {
    let xi_est = match solve_level(params, n)? {
        Some(level) => level.xi,
        None => match solve_level(params, 0)? {
            Some(level) => level.xi,
            None => 1.0,
        },
    };
    let base = GridSpec::default_for(params, xi_est);
    match spacings {
        None => Ok(vec![
            GridSpec::new(base.half_width, 4001)?,
            GridSpec::new(base.half_width, 8001)?,
        ]),
        Some(list) => {
            if list.len() < 2 {
                return Err(Failure::invalid(
                    "--grids needs at least two spacings (e.g. 0.02,0.01)".into(),
                ));
            }
            for pair in list.windows(2) {
                let (coarse, fine) = (pair[0], pair[1]);
                if !(coarse.is_finite() && fine.is_finite() && coarse > 0.0 && fine > 0.0) {
                    return Err(Failure::invalid("grid spacings must be positive".into()));
                }
                if (2.0 * fine - coarse).abs() > 1e-9 * coarse {
                    return Err(Failure::invalid(format!(
                        "grid spacings must halve step to step (got {coarse} then {fine})"
                    )));
                }
            }
            let h0 = list[0];
            let m = ((base.half_width / h0).ceil() as usize).max(50);
            let half_width = h0 * m as f64;
            (0..list.len())
                .map(|i| Ok(GridSpec::new(half_width, (2usize << i) * m + 1)?))
                .collect()
        }
    }
}

/// Three-grid residual study at spacings {4e-3, 2e-3, 1e-3}/alpha over the
/// window |alpha r| <= 15 (7501, 15001, 30001 points).
fn residual_ladder(
    params: &ModelParams,
    state: &NormalizedState,
) -> Result<Vec<ser::ResidualSample>, Failure> {
    let m = 3750usize;
    let half_width = 15.0 / params.alpha;
    (0..3)
        .map(|i| {
            let grid = GridSpec::new(half_width, (2usize << i) * m + 1)?;
            Ok(ser::ResidualSample {
                spacing: grid.spacing(),
                residual: ode_residual_max(state, &grid),
            })
        })
        .collect()
}

// ---------------------------------------------------------------------------
// Rendering
// ---------------------------------------------------------------------------

fn render_spectrum(spectrum: &Spectrum, format: Format) -> String {
    match format {
        Format::Json => ser::json_spectrum(spectrum) + "\n",
        Format::Csv => ser::csv_spectrum(spectrum),
        Format::Table => table_spectrum(spectrum),
    }
}

fn render_pt_spectrum(params: &PtParams, spectrum: &Spectrum, format: Format) -> String {
    match format {
        Format::Json => ser::json_pt_spectrum(params, spectrum) + "\n",
        Format::Csv => ser::csv_spectrum(spectrum),
        Format::Table => table_pt_spectrum(params, spectrum),
    }
}

fn render_wavefunction(
    params: &ModelParams,
    level: &EnergyLevel,
    state: &NormalizedState,
    samples: &[Sample],
    format: Format,
) -> String {
    match format {
        Format::Json => ser::json_wavefunction(params, level, samples) + "\n",
        Format::Csv => ser::csv_wavefunction(samples),
        Format::Table => {
            let mut out = table_level_header(level);
            let _ = writeln!(
                out,
                "normalization constant N = {}",
                ser::fmt_f64(state.norm_constant)
            );
            let _ = writeln!(out, "{:>24}  {:>24}", "r", "psi");
            for s in samples {
                let _ = writeln!(
                    out,
                    "{:>24}  {:>24}",
                    ser::fmt_f64(s.r),
                    ser::fmt_f64(s.psi)
                );
            }
            out
        }
    }
}

fn render_pt_wavefunction(
    params: &PtParams,
    level: &EnergyLevel,
    samples: &[ComplexSample],
    format: Format,
) -> String {
    match format {
        Format::Json => ser::json_pt_wavefunction(params, level, samples) + "\n",
        Format::Csv => ser::csv_pt_wavefunction(samples),
        Format::Table => {
            let mut out = table_level_header(level);
            let _ = writeln!(
                out,
                "complex deformation q_c = exp(2i*alpha*epsilon), epsilon = {}",
                params.epsilon
            );
            let _ = writeln!(out, "{:>24}  {:>24}  {:>24}", "r", "psi_real", "psi_imag");
            for s in samples {
                let _ = writeln!(
                    out,
                    "{:>24}  {:>24}  {:>24}",
                    ser::fmt_f64(s.r),
                    ser::fmt_f64(s.psi.re),
                    ser::fmt_f64(s.psi.im)
                );
            }
            out
        }
    }
}

fn render_scan(curves: &[ScanCurve], format: Format) -> String {
    match format {
        Format::Json => ser::json_scan(curves) + "\n",
        Format::Csv => ser::csv_scan(curves),
        Format::Table => {
            let mut out = String::new();
            let _ = write!(out, "{:>24}", "r");
            for curve in curves {
                let _ = write!(out, "  {:>24}", format!("V(q={})", curve.q));
            }
            out.push('\n');
            if curves.is_empty() {
                return out;
            }
            for i in 0..curves[0].samples.len() {
                let _ = write!(out, "{:>24}", ser::fmt_f64(curves[0].samples[i].r));
                for curve in curves {
                    let _ = write!(out, "  {:>24}", ser::fmt_f64(curve.samples[i].v));
                }
                out.push('\n');
            }
            out
        }
    }
}

fn render_report(report: &OracleReport, format: Format) -> String {
    match format {
        Format::Json => ser::json_report(report) + "\n",
        Format::Csv => ser::csv_report(report),
        Format::Table => {
            let mut out = String::new();
            let opt = |x: Option<f64>| x.map(ser::fmt_f64).unwrap_or_else(|| "(none)".into());
            let _ = writeln!(out, "{:<26}{}", "level n", report.n);
            let _ = writeln!(out, "{:<26}{}", "analytic E", opt(report.e_analytic));
            let _ = writeln!(out, "{:<26}{}", "numeric E", opt(report.e_numeric));
            let _ = writeln!(out, "{:<26}{}", "delta", opt(report.delta));
            let _ = writeln!(out, "{:<26}{}", "extrapolated", report.extrapolated);
            let mono = match report.monotone_convergence {
                Some(b) => b.to_string(),
                None => "(n/a)".into(),
            };
            let _ = writeln!(out, "{:<26}{}", "monotone convergence", mono);
            let _ = writeln!(
                out,
                "{:<26}{}",
                "wavefunction max diff",
                opt(report.wavefunction_max_diff)
            );
            for (i, grid) in report.grids_used.iter().enumerate() {
                let _ = writeln!(
                    out,
                    "{:<26}half_width {}, points {}",
                    format!("grid {}", i + 1),
                    ser::fmt_f64(grid.half_width),
                    grid.points
                );
            }
            out
        }
    }
}

fn render_residual(
    params: &ModelParams,
    level: &EnergyLevel,
    study: &[ser::ResidualSample],
    format: Format,
) -> String {
    match format {
        Format::Json => ser::json_residual_study(params, level, study) + "\n",
        Format::Csv => ser::csv_residual_study(study),
        Format::Table => {
            let mut out = table_level_header(level);
            let _ = writeln!(out, "{:>24}  {:>24}", "spacing", "max residual");
            for s in study {
                let _ = writeln!(
                    out,
                    "{:>24}  {:>24}",
                    ser::fmt_f64(s.spacing),
                    ser::fmt_f64(s.residual)
                );
            }
            for w in study.windows(2) {
                let _ = writeln!(
                    out,
                    "halving ratio: {}",
                    ser::fmt_f64(w[0].residual / w[1].residual)
                );
            }
            out
        }
    }
}

fn table_level_header(level: &EnergyLevel) -> String {
    format!(
        "level n = {}:  E = {}, k = {}, xi = {}\n",
        level.n,
        ser::fmt_f64(level.energy),
        ser::fmt_f64(level.k),
        ser::fmt_f64(level.xi)
    )
}

fn table_spectrum(spectrum: &Spectrum) -> String {
    let p = &spectrum.params;
    let mut out = String::new();
    let _ = writeln!(
        out,
        "mu = {}, alpha = {}, D = {}, q = {}, hbar = {}, c = {}",
        p.mu, p.alpha, p.d, p.q, p.hbar, p.c
    );
    let _ = writeln!(out, "bound levels: {}", spectrum.count);
    out.push_str(&table_levels(&spectrum.levels));
    out
}

fn table_pt_spectrum(params: &PtParams, spectrum: &Spectrum) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "mu = {}, alpha = {}, D = {}, epsilon = {}, hbar = {}, c = {}",
        params.mu, params.alpha, params.d, params.epsilon, params.hbar, params.c
    );
    let _ = writeln!(out, "bound levels: {}", spectrum.count);
    out.push_str(&table_levels(&spectrum.levels));
    out
}

fn table_levels(levels: &[EnergyLevel]) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{:>3}  {:>24}  {:>24}  {:>24}", "n", "E", "k", "xi");
    for level in levels {
        let _ = writeln!(
            out,
            "{:>3}  {:>24}  {:>24}  {:>24}",
            level.n,
            ser::fmt_f64(level.energy),
            ser::fmt_f64(level.k),
            ser::fmt_f64(level.xi)
        );
    }
    out
}
