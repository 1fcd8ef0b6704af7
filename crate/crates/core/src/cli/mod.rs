//! Command-line front end.
//!
//! Exit codes: 0 success, 2 argument error, 3 domain error or infeasible
//! request, 4 I/O failure.

mod config;
mod output;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, CommandFactory, FromArgMatches, Parser, Subcommand, ValueEnum};

pub use output::{format_float, OutputTable, MIN_SIGNIFICANT};

use crate::calibration::{
    classical_threshold, positivity_bound, psi, solve_sigma, type_i_error, CalibrationSpec,
};
use crate::error::Error;
use crate::model::{bayes_factor, marginal_alt, AlternativeSpread, Observation};
use crate::montecarlo::{simulate_power, simulate_type_i, MonteCarloReport, SimulationPlan};
use crate::priors::{classify_regime, evaluate_posterior, paradox_sweep, PriorScheme, Regime};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_DOMAIN: i32 = 3;
pub const EXIT_IO: i32 = 4;

/// Published values the `--compare-paper` report sets against ours.
const REFERENCE_SIGMA: f64 = 0.44;
const REFERENCE_DOMAIN_END_TEXT: &str = "1.2930";
const REFERENCE_DOMAIN_END_CAPTION: &str = "1.2933";

#[derive(Debug, Parser)]
#[command(
    name = "lindley",
    version,
    about = "Point-null normal testing: Bayes factors, objective model priors, Type I calibration"
)]
struct Cli {
    /// File of key=value lines supplying default flags.
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Posterior probability of the null for one observation.
    Posterior(PosteriorArgs),
    /// Bayes factor B01 and the marginal density under the alternative.
    Bf(BfArgs),
    /// Solve for the sigma whose Bayesian test has a given Type I error.
    Calibrate(CalibrateArgs),
    /// Tabulate psi(sigma) or the posterior of the null over a sigma grid.
    Sweep(SweepArgs),
    /// Monte Carlo rejection rate of the Bayesian test.
    Simulate(SimulateArgs),
    /// Large-sigma regime of a prior scheme.
    Regime(RegimeArgs),
}

#[derive(Debug, Args)]
#[command(args_override_self = true, allow_negative_numbers = true)]
struct PosteriorArgs {
    #[arg(long, value_parser = finite)]
    x: f64,
    #[arg(long, value_parser = positive)]
    sigma: f64,
    /// fixed:<rho0>, robert, kl or table:<path>
    #[arg(long, default_value = "kl")]
    scheme: String,
    #[arg(long = "alpha-b", default_value_t = 0.05, value_parser = probability)]
    alpha_b: f64,
}

#[derive(Debug, Args)]
#[command(args_override_self = true, allow_negative_numbers = true)]
struct BfArgs {
    #[arg(long, value_parser = finite)]
    x: f64,
    #[arg(long, value_parser = positive)]
    sigma: f64,
}

#[derive(Debug, Args)]
#[command(args_override_self = true)]
struct CalibrateArgs {
    /// Target Type I error.
    #[arg(long, value_parser = probability)]
    alpha: f64,
    #[arg(long = "alpha-b", default_value_t = 0.05, value_parser = probability)]
    alpha_b: f64,
    #[arg(long, default_value = "kl")]
    scheme: String,
    /// Append a report contrasting the published sigma=0.44 and domain end
    /// 1.2930/1.2933 with the computed values.
    #[arg(long = "compare-paper")]
    compare_paper: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SweepKind {
    Psi,
    Paradox,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Spacing {
    Linear,
    Log,
}

#[derive(Debug, Args)]
#[command(args_override_self = true, allow_negative_numbers = true)]
struct SweepArgs {
    #[arg(long, value_enum)]
    kind: SweepKind,
    #[arg(long, default_value = "kl")]
    scheme: String,
    #[arg(long = "alpha-b", default_value_t = 0.05, value_parser = probability)]
    alpha_b: f64,
    /// Observation for the paradox sweep.
    #[arg(long, value_parser = finite)]
    x: Option<f64>,
    #[arg(long = "sigma-min", value_parser = positive)]
    sigma_min: f64,
    #[arg(long = "sigma-max", value_parser = positive)]
    sigma_max: f64,
    #[arg(long, default_value_t = 100, value_parser = clap::value_parser!(u32).range(2..))]
    steps: u32,
    #[arg(long, value_enum, default_value_t = Spacing::Linear)]
    spacing: Spacing,
    /// Write the CSV here instead of stdout.
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
    /// Append the published domain end as trailing comments.
    #[arg(long = "compare-paper")]
    compare_paper: bool,
}

#[derive(Debug, Args)]
#[command(args_override_self = true, allow_negative_numbers = true)]
struct SimulateArgs {
    #[arg(long, value_parser = positive)]
    sigma: f64,
    #[arg(long = "alpha-b", default_value_t = 0.05, value_parser = probability)]
    alpha_b: f64,
    #[arg(long, default_value = "kl")]
    scheme: String,
    #[arg(long, default_value_t = 1_000_000, value_parser = clap::value_parser!(u64).range(1..))]
    n: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// True mean; 0 estimates the Type I error, anything else the power.
    #[arg(long, default_value_t = 0.0, value_parser = finite)]
    theta: f64,
}

#[derive(Debug, Args)]
#[command(args_override_self = true)]
struct RegimeArgs {
    #[arg(long)]
    scheme: String,
}

fn finite(s: &str) -> Result<f64, String> {
    let v: f64 = s.parse().map_err(|_| format!("{s:?} is not a number"))?;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(format!("{s} is not finite"))
    }
}

fn positive(s: &str) -> Result<f64, String> {
    let v = finite(s)?;
    if v > 0.0 {
        Ok(v)
    } else {
        Err(format!("{s} must be positive"))
    }
}

fn probability(s: &str) -> Result<f64, String> {
    let v = finite(s)?;
    if v > 0.0 && v < 1.0 {
        Ok(v)
    } else {
        Err(format!("{s} must lie strictly between 0 and 1"))
    }
}

/// A failed command: message plus exit code.
#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
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
            Error::Io(_) => EXIT_IO,
            Error::Parse(_) => EXIT_USAGE,
            _ => EXIT_DOMAIN,
        };
        Self {
            code,
            message: e.to_string(),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Error::from(e).into()
    }
}

type CmdResult = Result<(), Failure>;

/// Scheme strings are user input: a bad spelling or out-of-range ρ₀ is an
/// argument error, an unreadable table an I/O error.
fn parse_scheme(s: &str) -> Result<PriorScheme, Failure> {
    s.parse::<PriorScheme>().map_err(|e| match e {
        Error::Io(_) => Failure::from(e),
        other => Failure::usage(format!("invalid --scheme: {other}")),
    })
}

struct Summary<'a> {
    out: &'a mut dyn Write,
}

impl Summary<'_> {
    fn text(&mut self, key: &str, value: impl std::fmt::Display) -> std::io::Result<()> {
        writeln!(self.out, "{key}={value}")
    }

    fn num(&mut self, key: &str, value: f64) -> std::io::Result<()> {
        writeln!(self.out, "{key}={}", format_float(value))
    }
}

fn cmd_posterior(a: &PosteriorArgs, out: &mut dyn Write) -> CmdResult {
    let scheme = parse_scheme(&a.scheme)?;
    let r = evaluate_posterior(
        Observation::new(a.x)?,
        AlternativeSpread::new(a.sigma)?,
        &scheme,
        a.alpha_b,
    )?;
    let mut s = Summary { out };
    s.text("command", "posterior")?;
    s.num("x", r.x)?;
    s.num("sigma", r.sigma)?;
    s.text("scheme", &r.scheme)?;
    s.num("alpha_b", r.alpha_b)?;
    s.num("bayes_factor", r.bayes_factor)?;
    s.num("rho0", r.rho0)?;
    s.num("m", r.m_value)?;
    s.num("posterior_h0", r.posterior_h0)?;
    s.text(
        "decision",
        if r.rejected { "reject_h0" } else { "retain_h0" },
    )?;
    Ok(())
}

fn cmd_bf(a: &BfArgs, out: &mut dyn Write) -> CmdResult {
    let obs = Observation::new(a.x)?;
    let spread = AlternativeSpread::new(a.sigma)?;
    let mut s = Summary { out };
    s.num("bayes_factor", bayes_factor(obs, spread))?;
    s.num("marginal", marginal_alt(obs, spread))?;
    Ok(())
}

fn cmd_calibrate(a: &CalibrateArgs, out: &mut dyn Write) -> CmdResult {
    let scheme = parse_scheme(&a.scheme)?;
    let spec = CalibrationSpec::new(a.alpha, a.alpha_b, scheme.clone())?;
    let r = solve_sigma(&spec)?;
    let bound = match positivity_bound(a.alpha_b, &scheme) {
        Ok(b) => b,
        Err(Error::UnsupportedScheme(_)) => None,
        Err(e) => return Err(e.into()),
    };
    let mut s = Summary { out };
    s.text("command", "calibrate")?;
    s.text("scheme", scheme.label())?;
    s.num("alpha", a.alpha)?;
    s.num("alpha_b", a.alpha_b)?;
    s.num("sigma_star", r.sigma_star)?;
    s.num("psi", r.psi_at_sigma)?;
    s.num("achieved_alpha", r.achieved_alpha)?;
    s.num("residual", r.residual)?;
    s.num("bracket_lo", r.bracket_used.lo)?;
    s.num("bracket_hi", r.bracket_used.hi)?;
    s.text("evaluations", r.evaluations)?;
    s.num("classical_threshold", classical_threshold(a.alpha)?)?;
    match bound {
        Some(b) => s.num("positivity_bound", b)?,
        None => s.text("positivity_bound", "none")?,
    }
    if a.compare_paper {
        writeln!(s.out, "# discrepancy report")?;
        s.num("reference_sigma", REFERENCE_SIGMA)?;
        s.num("computed_sigma", r.sigma_star)?;
        s.num(
            "type_i_error_at_reference_sigma",
            type_i_error(REFERENCE_SIGMA, a.alpha_b, &scheme)?,
        )?;
        s.text("reference_domain_end_text", REFERENCE_DOMAIN_END_TEXT)?;
        s.text("reference_domain_end_caption", REFERENCE_DOMAIN_END_CAPTION)?;
        match bound {
            Some(b) => s.num("computed_domain_end", b)?,
            None => s.text("computed_domain_end", "none")?,
        }
        let sigma_matches = (r.sigma_star - REFERENCE_SIGMA).abs() < 5e-3;
        s.text("reference_sigma_reproduced", sigma_matches)?;
    }
    Ok(())
}

fn grid(lo: f64, hi: f64, steps: u32, spacing: Spacing) -> Vec<f64> {
    let last = (steps - 1) as f64;
    (0..steps)
        .map(|i| {
            if i == 0 {
                return lo;
            }
            if i == steps - 1 {
                return hi;
            }
            let t = i as f64 / last;
            match spacing {
                Spacing::Linear => lo + t * (hi - lo),
                Spacing::Log => (lo.ln() + t * (hi.ln() - lo.ln())).exp(),
            }
        })
        .collect()
}

fn psi_table(a: &SweepArgs, scheme: &PriorScheme, sigmas: &[f64]) -> Result<OutputTable, Failure> {
    let mut t = OutputTable::new(&["sigma", "psi", "log_psi"]);
    t.comment("alpha_b", format_float(a.alpha_b));
    let bound = match positivity_bound(a.alpha_b, scheme) {
        Ok(b) => b,
        Err(Error::UnsupportedScheme(_)) => None,
        Err(e) => return Err(e.into()),
    };
    let mut skipped = 0usize;
    for &sigma in sigmas {
        if bound.is_some_and(|b| sigma >= b) {
            break;
        }
        match psi(sigma, a.alpha_b, scheme) {
            Ok(p) => t.push(vec![sigma, p, p.ln()])?,
            Err(Error::Domain(_)) => skipped += 1,
            Err(e) => return Err(e.into()),
        }
    }
    if skipped > 0 {
        t.trailing("skipped_nonpositive", skipped);
    }
    if let Some(b) = bound.filter(|&b| b <= a.sigma_max) {
        t.trailing("domain_end sigma", format_float(b));
    }
    if a.compare_paper {
        t.trailing("reference_domain_end_text", REFERENCE_DOMAIN_END_TEXT);
        t.trailing("reference_domain_end_caption", REFERENCE_DOMAIN_END_CAPTION);
    }
    Ok(t)
}

fn paradox_table(
    a: &SweepArgs,
    scheme: &PriorScheme,
    sigmas: &[f64],
) -> Result<OutputTable, Failure> {
    let x =
        a.x.ok_or_else(|| Failure::usage("sweep --kind paradox requires --x"))?;
    let mut t = OutputTable::new(&["sigma", "rho0", "m", "posterior_h0"]);
    t.comment("x", format_float(x));
    for row in paradox_sweep(scheme, x, sigmas)? {
        t.push(vec![row.sigma, row.rho0, row.m, row.posterior_h0])?;
    }
    Ok(t)
}

fn cmd_sweep(a: &SweepArgs, out: &mut dyn Write) -> CmdResult {
    if a.sigma_min >= a.sigma_max {
        return Err(Failure::usage(format!(
            "--sigma-min ({}) must be below --sigma-max ({})",
            a.sigma_min, a.sigma_max
        )));
    }
    let scheme = parse_scheme(&a.scheme)?;
    let sigmas = grid(a.sigma_min, a.sigma_max, a.steps, a.spacing);
    let mut table = OutputTable::new(&[]);
    table.comment("kind", format!("{:?}", a.kind).to_lowercase());
    table.comment("scheme", scheme.label());
    table.comment("sigma_min", format_float(a.sigma_min));
    table.comment("sigma_max", format_float(a.sigma_max));
    table.comment("steps", a.steps);
    table.comment("spacing", format!("{:?}", a.spacing).to_lowercase());
    let mut body = match a.kind {
        SweepKind::Psi => psi_table(a, &scheme, &sigmas)?,
        SweepKind::Paradox => paradox_table(a, &scheme, &sigmas)?,
    };
    table.leading_comments.append(&mut body.leading_comments);
    body.leading_comments = table.leading_comments;

    let csv = body.to_csv_string()?;
    match &a.out {
        Some(path) => {
            std::fs::write(path, csv)
                .map_err(|e| Error::Io(format!("cannot write {}: {e}", path.display())))?;
            writeln!(out, "out={}", path.display())?;
            writeln!(out, "rows={}", body.rows.len())?;
        }
        None => out.write_all(csv.as_bytes())?,
    }
    Ok(())
}

fn print_report(r: &MonteCarloReport, kind: &str, out: &mut dyn Write) -> std::io::Result<()> {
    let mut s = Summary { out };
    s.text("command", "simulate")?;
    s.text("kind", kind)?;
    s.text("seed", r.seed)?;
    s.text("n", r.n)?;
    s.num("theta", r.theta)?;
    s.num("sigma", r.sigma)?;
    s.num("alpha_b", r.alpha_b)?;
    s.text("scheme", &r.scheme)?;
    s.text("rejections", r.rejections)?;
    s.text("threshold_rejections", r.threshold_rejections)?;
    s.num("estimate", r.estimate)?;
    s.num("std_error", r.std_error)?;
    s.num("ci95_lo", r.ci95.0)?;
    s.num("ci95_hi", r.ci95.1)?;
    s.num("analytic_value", r.analytic_value)?;
    s.text("within_3se", r.within_3se)
}

fn cmd_simulate(a: &SimulateArgs, out: &mut dyn Write) -> CmdResult {
    let plan = SimulationPlan {
        n: a.n,
        seed: a.seed,
        theta: a.theta,
        sigma: a.sigma,
        alpha_b: a.alpha_b,
        scheme: parse_scheme(&a.scheme)?,
    };
    let (report, kind) = if a.theta == 0.0 {
        (simulate_type_i(&plan)?, "type_i")
    } else {
        (simulate_power(&plan)?, "power")
    };
    print_report(&report, kind, out)?;
    Ok(())
}

fn cmd_regime(a: &RegimeArgs, out: &mut dyn Write) -> CmdResult {
    let scheme = parse_scheme(&a.scheme)?;
    let ev = classify_regime(&scheme)?;
    let mut s = Summary { out };
    s.text("command", "regime")?;
    s.text("scheme", scheme.label())?;
    s.text("regime", ev.regime.name())?;
    s.text("case", ev.regime.case_label())?;
    if let Regime::Finite(c) = ev.regime {
        s.num("limit_c", c)?;
    }
    s.num("m_sigma_1e3", ev.m_at_1e3)?;
    s.num("m_sigma_1e6", ev.m_at_1e6)?;
    s.num("log_m_sigma_1e3", ev.log_m_at_1e3)?;
    s.num("log_m_sigma_1e6", ev.log_m_at_1e6)?;
    Ok(())
}

fn dispatch(cli: &Cli, out: &mut dyn Write) -> CmdResult {
    match &cli.command {
        Command::Posterior(a) => cmd_posterior(a, out),
        Command::Bf(a) => cmd_bf(a, out),
        Command::Calibrate(a) => cmd_calibrate(a, out),
        Command::Sweep(a) => cmd_sweep(a, out),
        Command::Simulate(a) => cmd_simulate(a, out),
        Command::Regime(a) => cmd_regime(a, out),
    }
}

/// Parse `args` (including the program name), run the command, and return
/// the process exit code. Output goes to `out`, diagnostics to `err`.
pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString>,
{
    let mut args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let cmd = Cli::command();

    if let Some(path) = config::config_path(&args) {
        match config::read_config(path.as_ref()) {
            Ok(defaults) => args = config::apply_defaults(&cmd, args, &defaults),
            Err(e) => {
                let f = Failure::from(e);
                let _ = writeln!(err, "error: {}", f.message);
                return f.code;
            }
        }
    }

    let parsed = cmd
        .try_get_matches_from(args)
        .and_then(|m| Cli::from_arg_matches(&m));
    let cli = match parsed {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                write!(err, "{text}")
            } else {
                write!(out, "{text}")
            };
            return e.exit_code();
        }
    };

    match dispatch(&cli, out) {
        Ok(()) => EXIT_OK,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

/// Entry point for the binary: real argv, stdout and stderr.
pub fn run() -> i32 {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    let mut out = stdout.lock();
    let mut err = stderr.lock();
    let code = run_with(std::env::args_os(), &mut out, &mut err);
    let _ = out.flush();
    code
}
