//! The `hermite-asym` command line: `eval`, `zeros`, `table` and `figure`.
//!
//! Results go to the writer handed to [`run`] as CSV (header first) or as
//! one JSON object per line. Diagnostics go to standard error.

mod record;

use std::f64::consts::FRAC_PI_2;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

pub use record::{format_g17, write_records, Field, Format, OutputRecord, LINEAR_LOG_LIMIT};

use crate::asymptotics::{
    classify_region, eval_auto, oscillatory_phase, phi1, phi2, phi3, phi4, phi5, Region, RegionConfig,
};
use crate::error::Error;
use crate::hermite::{hermite_eval_exact, hermite_zeros_exact, SignedLogValue};
use crate::zeros::{
    center_gate, edge_gate, newton_polish, solve_tau, tau_kapteyn, zero_series_center,
    zero_series_edge, zeros_table, ZeroEstimate, ZeroMethod,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_NUMERICAL: i32 = 3;

/// Where the oscillatory figure stops short of `π/2`.
pub const FIGURE_THETA_CLIP: f64 = 0.05;
/// Gap kept between the outer figure samples and the turning points.
pub const FIGURE_OUTER_MARGIN: f64 = 0.1;

/// A failed command: the exit status and the message for standard error.
#[derive(Debug, Clone, PartialEq)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::InvalidArgument(_) | Error::Domain { .. } => EXIT_USAGE,
            Error::NumericalFailure(_) => EXIT_NUMERICAL,
        };
        Self {
            code,
            message: e.to_string(),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Self {
            code: EXIT_NUMERICAL,
            message: format!("output failed: {e}"),
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "hermite-asym", version, about = "Asymptotics of Hermite polynomials and their zeros")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate H_n at one point or over a grid.
    Eval(EvalArgs),
    /// Approximate the zeros of H_n.
    Zeros(ZerosArgs),
    /// Positive zeros of H_n against every approximation.
    Table(TableArgs),
    /// Write figure data to a CSV file.
    Figure(FigureArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Csv,
    Json,
}

impl From<OutputFormat> for Format {
    fn from(f: OutputFormat) -> Self {
        match f {
            OutputFormat::Csv => Format::Csv,
            OutputFormat::Json => Format::Json,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum EvalMethod {
    Exact,
    Outer,
    Transition,
    Oscillatory,
    Auto,
}

#[derive(Debug, Args)]
#[command(group = clap::ArgGroup::new("points").required(true).args(["x", "x_range"]))]
pub struct EvalArgs {
    #[arg(long)]
    pub n: u32,
    #[arg(long, allow_hyphen_values = true)]
    pub x: Option<f64>,
    /// Grid `lo:hi:count`, endpoints included.
    #[arg(long, allow_hyphen_values = true)]
    pub x_range: Option<String>,
    #[arg(long, value_enum, default_value = "auto")]
    pub method: EvalMethod,
    #[arg(long, default_value_t = 2.0)]
    pub beta_cut: f64,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: OutputFormat,
    #[arg(long)]
    pub compare_exact: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ZerosMethod {
    Exact,
    Tau,
    Kapteyn,
    Edge,
    Center,
    Polished,
}

#[derive(Debug, Args)]
pub struct ZerosArgs {
    #[arg(long)]
    pub n: u32,
    #[arg(long, value_enum, default_value = "tau")]
    pub method: ZerosMethod,
    /// Zero indices `lo:hi`, counted from the largest zero; defaults to the
    /// non-negative zeros.
    #[arg(long)]
    pub k_range: Option<String>,
    #[arg(long, default_value_t = 1e-12)]
    pub tol: f64,
    #[arg(long, default_value_t = 5000)]
    pub max_terms: usize,
    #[arg(long, default_value_t = 1e-10)]
    pub term_tol: f64,
    /// Number of series terms (edge: up to 9, center: up to 4).
    #[arg(long)]
    pub terms: Option<usize>,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: OutputFormat,
    #[arg(long)]
    pub compare_exact: bool,
}

#[derive(Debug, Args)]
pub struct TableArgs {
    #[arg(long, default_value_t = 20)]
    pub n: u32,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: OutputFormat,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FigureKind {
    Outer,
    Oscillatory,
}

#[derive(Debug, Args)]
pub struct FigureArgs {
    #[arg(long, value_enum)]
    pub which: FigureKind,
    /// Defaults to 4 for `outer` and 20 for `oscillatory`.
    #[arg(long)]
    pub n: Option<u32>,
    #[arg(long, default_value_t = 200)]
    pub samples: usize,
    #[arg(long)]
    pub out: PathBuf,
}

/// Runs one parsed command, writing its records to `out`.
pub fn run(cli: &Cli, out: &mut dyn Write) -> Result<(), Failure> {
    match &cli.command {
        Command::Eval(a) => {
            let recs = cmd_eval(a)?;
            write_records(out, &recs, a.format.into())?;
        }
        Command::Zeros(a) => {
            let recs = cmd_zeros(a)?;
            write_records(out, &recs, a.format.into())?;
        }
        Command::Table(a) => {
            let recs = cmd_table(a)?;
            write_records(out, &recs, a.format.into())?;
        }
        Command::Figure(a) => {
            let recs = cmd_figure(a)?;
            let file = File::create(&a.out).map_err(|e| Failure {
                code: EXIT_NUMERICAL,
                message: format!("cannot write {}: {e}", a.out.display()),
            })?;
            let mut w = BufWriter::new(file);
            write_records(&mut w, &recs, Format::Csv)?;
        }
    }
    Ok(())
}

/// Parses `lo:hi:count` into `count` equispaced points.
pub fn parse_x_range(s: &str) -> Result<Vec<f64>, Failure> {
    let parts: Vec<&str> = s.split(':').collect();
    let bad = || Failure::usage(format!("--x-range wants lo:hi:count, got {s:?}"));
    if parts.len() != 3 {
        return Err(bad());
    }
    let lo: f64 = parts[0].trim().parse().map_err(|_| bad())?;
    let hi: f64 = parts[1].trim().parse().map_err(|_| bad())?;
    let count: usize = parts[2].trim().parse().map_err(|_| bad())?;
    if count == 0 || !lo.is_finite() || !hi.is_finite() {
        return Err(bad());
    }
    if count == 1 {
        return Ok(vec![lo]);
    }
    let step = (hi - lo) / (count - 1) as f64;
    Ok((0..count)
        .map(|i| if i + 1 == count { hi } else { lo + step * i as f64 })
        .collect())
}

/// Parses `lo:hi` (inclusive) zero indices.
pub fn parse_k_range(s: &str, n: u32) -> Result<(u32, u32), Failure> {
    let bad = || Failure::usage(format!("--k-range wants lo:hi with 1 <= lo <= hi <= {n}, got {s:?}"));
    let (a, b) = s.split_once(':').ok_or_else(bad)?;
    let lo: u32 = a.trim().parse().map_err(|_| bad())?;
    let hi: u32 = b.trim().parse().map_err(|_| bad())?;
    if lo == 0 || lo > hi || hi > n {
        return Err(bad());
    }
    Ok((lo, hi))
}

fn region_field(region: Option<Region>) -> Field {
    region.map_or(Field::Empty, |r| r.as_str().into())
}

fn explicit_approximation(method: EvalMethod, x: f64, n: u32) -> crate::Result<(&'static str, SignedLogValue)> {
    match method {
        EvalMethod::Outer if x >= 0.0 => phi1(x, n).map(|v| ("phi1", v)),
        EvalMethod::Outer => phi2(x, n).map(|v| ("phi2", v)),
        EvalMethod::Transition if x >= 0.0 => phi3(x, n).map(|v| ("phi3", v)),
        EvalMethod::Transition => phi4(x, n).map(|v| ("phi4", v)),
        EvalMethod::Oscillatory => phi5(x, n).map(|v| ("phi5", v)),
        EvalMethod::Exact => hermite_eval_exact(n, x).map(|v| ("exact", v)),
        EvalMethod::Auto => unreachable!("auto is dispatched by eval_auto"),
    }
}

fn approximation_name(region: Region) -> &'static str {
    match region {
        Region::OuterRight => "phi1",
        Region::OuterLeft => "phi2",
        Region::TransitionRight => "phi3",
        Region::TransitionLeft => "phi4",
        Region::Oscillatory => "phi5",
    }
}

pub fn cmd_eval(a: &EvalArgs) -> Result<Vec<OutputRecord>, Failure> {
    let cfg = RegionConfig::new(a.beta_cut)?;
    let xs = match (&a.x, &a.x_range) {
        (Some(x), None) => vec![*x],
        (None, Some(r)) => parse_x_range(r)?,
        _ => return Err(Failure::usage("give exactly one of --x and --x-range")),
    };
    let mut recs = Vec::with_capacity(xs.len());
    for x in xs {
        let region = (a.n >= 1).then(|| classify_region(x, a.n, &cfg));
        let (name, value, region) = if a.method == EvalMethod::Auto {
            let r = eval_auto(x, a.n, &cfg)?;
            (approximation_name(r.region), r.value, Some(r.region))
        } else {
            let (name, v) = explicit_approximation(a.method, x, a.n)?;
            (name, v, region)
        };
        let mut rec = OutputRecord::new();
        rec.push("n", a.n).push("x", x).push("method", name);
        rec.push("region", region_field(region));
        rec.push_signed("", value, true);
        if a.compare_exact {
            let exact = hermite_eval_exact(a.n, x)?;
            rec.push_signed("exact_", exact, false);
            let rel = value.rel_diff(exact);
            if rel.is_infinite() && value.sign != exact.sign {
                rec.push("rel_err", "SIGN");
            } else {
                rec.push("rel_err", rel);
            }
        }
        recs.push(rec);
    }
    Ok(recs)
}

fn zeros_estimate(a: &ZerosArgs, k: u32, exact: Option<&[f64]>) -> Result<ZeroEstimate, Failure> {
    let n = a.n;
    let root2n = (2.0 * n as f64).sqrt();
    let est = |method, value| ZeroEstimate {
        n,
        k,
        method,
        value,
        exact_ref: None,
    };
    let center_j = |k: u32| (n / 2 + 1).checked_sub(k);
    Ok(match a.method {
        ZerosMethod::Exact => est(
            ZeroMethod::ExactOracle,
            exact.expect("exact zeros computed up front")[(n - k) as usize],
        ),
        ZerosMethod::Tau => est(ZeroMethod::TauBisect, root2n * solve_tau(n, k, a.tol)?.sin()),
        ZerosMethod::Kapteyn => {
            let r = tau_kapteyn(n, k, a.term_tol, a.max_terms)?;
            if !r.converged {
                eprintln!(
                    "warning: Kapteyn series for k = {k} stopped at the {}-term cap before converging",
                    r.terms
                );
            }
            est(ZeroMethod::Kapteyn, root2n * r.tau.sin())
        }
        ZerosMethod::Edge => {
            if k > edge_gate(n) {
                return Err(Failure::usage(format!(
                    "edge series is offered only for k <= max(1, floor(n/3)) = {}, got k = {k}",
                    edge_gate(n)
                )));
            }
            zero_series_edge(n, k, a.terms.unwrap_or(9))?
        }
        ZerosMethod::Center => match center_j(k) {
            Some(j) if j <= center_gate(n) => zero_series_center(n, j, a.terms.unwrap_or(4))?,
            _ => {
                return Err(Failure::usage(format!(
                    "center series is offered only for j = floor(n/2) + 1 - k <= floor(n/3) = {}, \
                     i.e. k >= {}, got k = {k}",
                    center_gate(n),
                    (n / 2 + 1).saturating_sub(center_gate(n))
                )))
            }
        },
        ZerosMethod::Polished => {
            let start = if k <= edge_gate(n) {
                zero_series_edge(n, k, 9)?
            } else {
                match center_j(k) {
                    Some(j) if j <= center_gate(n) => zero_series_center(n, j, 4)?,
                    _ => est(ZeroMethod::TauBisect, root2n * solve_tau(n, k, 1e-14)?.sin()),
                }
            };
            newton_polish(start, 100, a.tol)?
        }
    })
}

pub fn cmd_zeros(a: &ZerosArgs) -> Result<Vec<OutputRecord>, Failure> {
    if a.n == 0 {
        return Err(Failure::usage("--n must be at least 1"));
    }
    if !(a.tol > 0.0) {
        return Err(Failure::usage(format!("--tol must be positive, got {}", a.tol)));
    }
    let (lo, hi) = match &a.k_range {
        Some(s) => parse_k_range(s, a.n)?,
        None => (1, a.n.div_ceil(2)),
    };
    let need_exact = a.compare_exact || a.method == ZerosMethod::Exact;
    let exact = if need_exact {
        let tol = if a.method == ZerosMethod::Exact { a.tol } else { 1e-14 };
        Some(hermite_zeros_exact(a.n, tol)?)
    } else {
        None
    };
    let mut recs = Vec::new();
    for k in lo..=hi {
        let e = zeros_estimate(a, k, exact.as_deref())?;
        let mut rec = OutputRecord::new();
        rec.push("k", k).push("method", e.method.as_str()).push("value", e.value);
        if a.compare_exact {
            let r = exact.as_ref().expect("exact zeros computed")[(a.n - k) as usize];
            rec.push("exact_ref", r).push("abs_err", (e.value - r).abs());
        }
        recs.push(rec);
    }
    Ok(recs)
}

pub fn cmd_table(a: &TableArgs) -> Result<Vec<OutputRecord>, Failure> {
    if a.n < 2 || a.n % 2 != 0 {
        return Err(Failure::usage(format!("table needs an even --n >= 2, got {}", a.n)));
    }
    let rows = zeros_table(a.n)?;
    Ok(rows
        .into_iter()
        .map(|r| {
            let mut rec = OutputRecord::new();
            rec.push("k", r.k)
                .push("exact", r.exact)
                .push("tau", r.tau_based)
                .push("center", r.center_series)
                .push("edge", r.edge_series);
            rec
        })
        .collect())
}

fn linear_or_empty(v: SignedLogValue) -> Option<f64> {
    (v.is_zero() || v.log_abs.abs() < LINEAR_LOG_LIMIT).then(|| v.to_real())
}

/// Oscillatory figure: `H_n(√(2n) sin θ)` with the growth
/// `exp{(n/2)[ln 2n - cos 2θ]}` divided out, next to `√(2/cos θ) cos(phase)`.
pub fn figure_oscillatory(n: u32, samples: usize) -> crate::Result<Vec<OutputRecord>> {
    if n == 0 {
        return Err(Error::InvalidArgument("the oscillatory figure needs n >= 1".into()));
    }
    let nf = n as f64;
    let root2n = (2.0 * nf).sqrt();
    let theta_max = FRAC_PI_2 - FIGURE_THETA_CLIP;
    let mut recs = Vec::with_capacity(samples);
    for i in 0..samples {
        let theta = if samples == 1 {
            0.0
        } else {
            theta_max * i as f64 / (samples - 1) as f64
        };
        let h = hermite_eval_exact(n, root2n * theta.sin())?;
        let growth = 0.5 * nf * ((2.0 * nf).ln() - (2.0 * theta).cos());
        let exact_norm = if h.is_zero() {
            0.0
        } else {
            h.sign as f64 * (h.log_abs - growth).exp()
        };
        let asym = (2.0 / theta.cos()).sqrt() * oscillatory_phase(theta, n).cos();
        let mut rec = OutputRecord::new();
        rec.push("theta", theta)
            .push("exact_normalized", exact_norm)
            .push("asym_normalized", asym);
        recs.push(rec);
    }
    Ok(recs)
}

/// Outer figure: exact `H_n` and the outer approximation on both sides of
/// the turning points, `FIGURE_OUTER_MARGIN < |x| - √(2n) <= 4`.
pub fn figure_outer(n: u32, samples: usize) -> crate::Result<Vec<OutputRecord>> {
    let t = (2.0 * n as f64).sqrt();
    let left = samples / 2;
    let right = samples - left;
    let span = 4.0 - FIGURE_OUTER_MARGIN;
    // offsets in (margin, 4], outermost last
    let offsets = |m: usize| -> Vec<f64> {
        (1..=m)
            .map(|i| FIGURE_OUTER_MARGIN + span * i as f64 / m as f64)
            .collect()
    };
    let mut xs: Vec<f64> = offsets(left).into_iter().rev().map(|d| -(t + d)).collect();
    xs.extend(offsets(right).into_iter().map(|d| t + d));
    let mut recs = Vec::with_capacity(samples);
    for x in xs {
        let exact = hermite_eval_exact(n, x)?;
        let asym = if x > 0.0 { phi1(x, n)? } else { phi2(x, n)? };
        let mut rec = OutputRecord::new();
        rec.push("x", x)
            .push("exact", linear_or_empty(exact))
            .push("asymptotic", linear_or_empty(asym));
        recs.push(rec);
    }
    Ok(recs)
}

pub fn cmd_figure(a: &FigureArgs) -> Result<Vec<OutputRecord>, Failure> {
    if a.samples == 0 {
        return Err(Failure::usage("--samples must be at least 1"));
    }
    Ok(match a.which {
        FigureKind::Oscillatory => figure_oscillatory(a.n.unwrap_or(20), a.samples)?,
        FigureKind::Outer => figure_outer(a.n.unwrap_or(4), a.samples)?,
    })
}
