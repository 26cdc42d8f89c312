//! Command-line front end: figure data as CSV and measurements of state files.
//!
//! Exit codes: 0 success, 1 usage or parse error, 2 a bound was violated.

use std::f64::consts::PI;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;

use crate::correlations::{self, BoundCheck, CorrelationReport, DiscordOptions, BOUND_SLACK};
use crate::error::Error;
use crate::families::{self, Family};
use crate::state_file::{self, LoadedState, StateFile};
use crate::states;
use crate::tensor::Tolerances;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_VIOLATION: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "hidcorr", version, about = "Hidden quantum correlations of classically correlated states")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub config: RunConfig,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Random classical states on the |00>,|10>,|+1>,|-1> basis: I(a,b) vs MID(1,3)
    Sample,
    /// Sweep one of the alpha, gamma, lambda families
    Family,
    /// Correlation report for a state file
    Measure { state_file: PathBuf },
    /// Bound chain for a classical state file
    Bounds { state_file: PathBuf },
    /// Empirical upper envelope of MID(1,3) over I(a,b)
    Envelope,
}

#[derive(Debug, Clone, Args)]
pub struct RunConfig {
    #[arg(long, global = true, default_value_t = 42)]
    pub seed: u64,
    /// Number of random samples
    #[arg(long = "n", global = true, default_value_t = 10_000)]
    pub n: usize,
    /// Parameter grid size for family sweeps
    #[arg(long, global = true, default_value_t = 200)]
    pub steps: usize,
    #[arg(long, global = true, default_value_t = 20)]
    pub bins: usize,
    #[arg(long, global = true, value_enum, default_value_t = FamilyArg::Lambda)]
    pub family: FamilyArg,
    /// Output path; standard output when absent
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true)]
    pub json: bool,
    #[arg(long, global = true)]
    pub skip_discord: bool,
    /// Jacobi convergence threshold on off-diagonal mass
    #[arg(long, global = true)]
    pub tol_eig: Option<f64>,
    /// Eigenvalue gap below which eigenvalues count as degenerate
    #[arg(long, global = true)]
    pub tol_gap: Option<f64>,
    /// Kept factors of party a (global indices); defaults to the first factor of a
    #[arg(long, global = true, value_delimiter = ',')]
    pub keep_a: Option<Vec<usize>>,
    /// Kept factors of party b (global indices); defaults to the first factor of b
    #[arg(long, global = true, value_delimiter = ',')]
    pub keep_b: Option<Vec<usize>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FamilyArg {
    Alpha,
    Gamma,
    Lambda,
}

impl From<FamilyArg> for Family {
    fn from(f: FamilyArg) -> Self {
        match f {
            FamilyArg::Alpha => Family::Alpha,
            FamilyArg::Gamma => Family::Gamma,
            FamilyArg::Lambda => Family::Lambda,
        }
    }
}

impl RunConfig {
    pub fn tolerances(&self) -> Tolerances {
        let default = Tolerances::default();
        Tolerances {
            gap: self.tol_gap.unwrap_or(default.gap),
            eig: self.tol_eig.unwrap_or(default.eig),
        }
    }

    fn discord_options(&self) -> DiscordOptions {
        DiscordOptions {
            tol: self.tolerances(),
            ..DiscordOptions::default()
        }
    }
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Violation(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Usage(format!("I/O error: {e}"))
    }
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Violation(_) => EXIT_VIOLATION,
        }
    }
}

/// Parses `args` (including the program name), runs the command and returns the exit code.
pub fn run_from<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    match run(&cli) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            match &e {
                CliError::Usage(msg) => eprintln!("error: {msg}"),
                CliError::Violation(msg) => eprintln!("bound violation: {msg}"),
            }
            e.exit_code()
        }
    }
}

pub fn run(cli: &Cli) -> Result<(), CliError> {
    let config = &cli.config;
    match &cli.command {
        Command::Sample => with_output(config.out.as_deref(), |w| cmd_sample(config, w)),
        Command::Family => with_output(config.out.as_deref(), |w| cmd_family(config, w)),
        Command::Envelope => with_output(config.out.as_deref(), |w| cmd_envelope(config, w)),
        Command::Measure { state_file } => {
            let state = state_file::load_path(state_file)?;
            with_output(config.out.as_deref(), |w| cmd_measure(config, &state, w))
        }
        Command::Bounds { state_file } => {
            let state = state_file::load_path(state_file)?;
            with_output(config.out.as_deref(), |w| cmd_bounds(config, &state, w))
        }
    }
}

fn with_output(
    out: Option<&Path>,
    f: impl FnOnce(&mut dyn Write) -> Result<(), CliError>,
) -> Result<(), CliError> {
    match out {
        Some(path) => {
            let mut w = BufWriter::new(File::create(path)?);
            let result = f(&mut w);
            w.flush()?;
            result
        }
        None => {
            let stdout = io::stdout();
            let mut w = stdout.lock();
            f(&mut w)
        }
    }
}

/// Formats with 12 significant digits, dropping trailing zeros.
pub fn fmt_num(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return format!("{x}");
    }
    let sci = format!("{:.11e}", x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..12).contains(&exp) {
        let decimals = (11 - exp).max(0) as usize;
        let fixed = format!("{:.*}", decimals, x);
        trim_zeros(&fixed)
    } else {
        format!("{}e{}", trim_zeros(mantissa), exp)
    }
}

fn trim_zeros(s: &str) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s.to_string()
    }
}

fn check_positive(name: &str, value: usize, min: usize) -> Result<(), CliError> {
    if value < min {
        Err(CliError::Usage(format!("--{name} must be at least {min}")))
    } else {
        Ok(())
    }
}

/// CSV `index,I_ab,mid_13,degenerate_flag` over random classical states.
pub fn cmd_sample(config: &RunConfig, w: &mut dyn Write) -> Result<(), CliError> {
    check_positive("n", config.n, 1)?;
    let tol = config.tolerances();
    let samples = families::sample_random_classical_with(config.n, config.seed, tol)?;
    writeln!(w, "index,I_ab,mid_13,degenerate_flag")?;
    for s in &samples {
        writeln!(w, "{},{},{},{}", s.index, fmt_num(s.i_ab), fmt_num(s.mid_13), s.degenerate)?;
    }
    let violations: Vec<String> = (0..config.n)
        .into_par_iter()
        .filter_map(|i| {
            let spec = families::random_canonical_spec(config.seed, i);
            let checks = correlations::check_bounds(&spec, &families::KEEP_A, &families::KEEP_B).ok()?;
            checks
                .iter()
                .find(|b| !b.satisfied)
                .map(|b| format!("sample {i}: {} ({} > {})", b.name, b.lhs, b.rhs))
        })
        .collect();
    if let Some(first) = violations.first() {
        return Err(CliError::Violation(format!("{first} [{} samples]", violations.len())));
    }
    if let Some(s) = samples.iter().find(|s| s.mid_13 > s.i_ab + BOUND_SLACK) {
        return Err(CliError::Violation(format!("sample {}: MID(1,3) > I(a,b)", s.index)));
    }
    Ok(())
}

/// Evenly spaced family parameters. The lambda grid stops short of its open endpoint 1/2.
pub fn family_grid(family: Family, steps: usize) -> Vec<f64> {
    match family {
        Family::Alpha => (0..steps).map(|k| k as f64 / (steps - 1) as f64).collect(),
        Family::Gamma => (0..steps).map(|k| PI * k as f64 / (steps - 1) as f64).collect(),
        Family::Lambda => (0..steps).map(|k| 0.5 * k as f64 / steps as f64).collect(),
    }
}

pub fn family_point(family: Family, parameter: f64) -> crate::Result<families::FamilyPoint> {
    match family {
        Family::Alpha => families::family_alpha(parameter),
        Family::Gamma => families::family_gamma(parameter),
        Family::Lambda => families::family_lambda(parameter),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FamilyRow {
    pub param: f64,
    pub i_ab: f64,
    pub mid_13: f64,
    pub analytic_mid_13: f64,
    pub ms_13: Option<f64>,
    pub degenerate: bool,
}

/// Pipeline and closed-form values along a family sweep. The symmetric
/// discord is computed for the lambda family only.
pub fn family_rows(config: &RunConfig) -> Result<Vec<FamilyRow>, CliError> {
    check_positive("steps", config.steps, 2)?;
    let family = Family::from(config.family);
    let tol = config.tolerances();
    let discord = (family == Family::Lambda && !config.skip_discord).then(|| config.discord_options());
    family_grid(family, config.steps)
        .into_par_iter()
        .map(|param| {
            let point = family_point(family, param)?;
            let (i_ab, mid_13, degenerate) = families::measure_13_with(&point.spec, tol);
            let ms_13 = match &discord {
                Some(opts) => Some(correlations::symmetric_discord(&point.reduced_13(), opts)?.value),
                None => None,
            };
            Ok(FamilyRow {
                param,
                i_ab,
                mid_13,
                analytic_mid_13: point.analytic.map_or(f64::NAN, |a| a.mid_13),
                ms_13,
                degenerate,
            })
        })
        .collect::<crate::Result<Vec<_>>>()
        .map_err(CliError::from)
}

/// CSV `param,I_ab,mid_13,analytic_mid_13,ms_13,degenerate_flag`.
pub fn cmd_family(config: &RunConfig, w: &mut dyn Write) -> Result<(), CliError> {
    let rows = family_rows(config)?;
    writeln!(w, "param,I_ab,mid_13,analytic_mid_13,ms_13,degenerate_flag")?;
    for r in &rows {
        writeln!(
            w,
            "{},{},{},{},{},{}",
            fmt_num(r.param),
            fmt_num(r.i_ab),
            fmt_num(r.mid_13),
            fmt_num(r.analytic_mid_13),
            r.ms_13.map(fmt_num).unwrap_or_default(),
            r.degenerate
        )?;
    }
    if let Some(r) = rows.iter().find(|r| r.mid_13 > r.i_ab + BOUND_SLACK) {
        return Err(CliError::Violation(format!("param {}: MID(1,3) > I(a,b)", r.param)));
    }
    if let Some(r) = rows.iter().find(|r| !r.degenerate && r.ms_13.is_some_and(|ms| ms > r.mid_13 + correlations::DISCORD_SLACK)) {
        return Err(CliError::Violation(format!("param {}: M_S(1,3) > MID(1,3)", r.param)));
    }
    Ok(())
}

/// `(I(a,b), MID(1,3))` for random samples plus lambda-family points up to and
/// including the lambda = 1/2 endpoint.
pub fn envelope_samples(config: &RunConfig) -> Result<Vec<(f64, f64)>, CliError> {
    check_positive("n", config.n, 1)?;
    check_positive("steps", config.steps, 1)?;
    let tol = config.tolerances();
    let mut points: Vec<(f64, f64)> = families::sample_random_classical_with(config.n, config.seed, tol)?
        .into_iter()
        .map(|s| (s.i_ab, s.mid_13))
        .collect();
    let injected: Vec<(f64, f64)> = (0..=config.steps)
        .into_par_iter()
        .map(|k| {
            let lambda = 0.5 * k as f64 / config.steps as f64;
            let spec = if k == config.steps {
                families::lambda_limit_spec()
            } else {
                families::lambda_spec(lambda).expect("grid stays below 1/2")
            };
            let (i_ab, mid_13, _) = families::measure_13_with(&spec, tol);
            (i_ab, mid_13)
        })
        .collect();
    points.extend(injected);
    Ok(points)
}

/// CSV `I_bin_center,max_mid`.
pub fn cmd_envelope(config: &RunConfig, w: &mut dyn Write) -> Result<(), CliError> {
    check_positive("bins", config.bins, 1)?;
    let bins = families::mid_upper_envelope(&envelope_samples(config)?, config.bins)?;
    writeln!(w, "I_bin_center,max_mid")?;
    for b in &bins {
        writeln!(w, "{},{}", fmt_num(b.center), fmt_num(b.max_mid))?;
    }
    if let Some(b) = bins.iter().find(|b| b.max_mid > b.upper_edge + BOUND_SLACK) {
        return Err(CliError::Violation(format!("bin at {} exceeds its upper edge", b.center)));
    }
    Ok(())
}

fn keep_sets(config: &RunConfig, layout: &states::SubsystemLayout) -> (Vec<usize>, Vec<usize>) {
    let keep_a = config.keep_a.clone().unwrap_or_else(|| vec![0]);
    let keep_b = config.keep_b.clone().unwrap_or_else(|| vec![layout.cut()]);
    (keep_a, keep_b)
}

/// Machine-readable output of `measure`.
#[derive(Debug, Serialize, serde::Deserialize)]
pub struct MeasureOutput {
    pub keep_a: Vec<usize>,
    pub keep_b: Vec<usize>,
    /// Mutual information of the full input state across its cut.
    pub full_mutual_info: f64,
    pub report: CorrelationReport,
    /// Note on anything omitted from the report.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    /// The input, in state-file form.
    pub state: StateFile,
}

pub fn measure(config: &RunConfig, state: &LoadedState) -> Result<MeasureOutput, CliError> {
    let rho = state.density();
    let (keep_a, keep_b) = keep_sets(config, rho.layout());
    let reduced = states::reduce(&rho, &keep_a, &keep_b)?;
    let tol = config.tolerances();
    let qubits = reduced.layout().dim_a() == 2 && reduced.layout().dim_b() == 2;
    let opts = config.discord_options();
    let (discord, note) = match (config.skip_discord, qubits) {
        (true, _) => (None, None),
        (false, true) => (Some(&opts), None),
        (false, false) => (
            None,
            Some(Error::UnsupportedDimension("symmetric discord needs single-qubit parties".into()).to_string()),
        ),
    };
    let mut report = CorrelationReport::for_state(&reduced, discord, tol)?;
    if let LoadedState::Classical(spec) = state {
        report
            .bound_checks
            .extend(correlations::check_bounds(spec, &keep_a, &keep_b)?);
    }
    Ok(MeasureOutput {
        keep_a,
        keep_b,
        full_mutual_info: correlations::mutual_information_with(&rho, tol),
        report,
        note,
        state: match state {
            LoadedState::Dense(rho) => StateFile::from_density(rho),
            LoadedState::Classical(spec) => StateFile::from_spec(spec),
        },
    })
}

pub fn cmd_measure(config: &RunConfig, state: &LoadedState, w: &mut dyn Write) -> Result<(), CliError> {
    let out = measure(config, state)?;
    if config.json {
        writeln!(w, "{}", serde_json::to_string_pretty(&out).expect("report serializes"))?;
    } else {
        let r = &out.report;
        writeln!(w, "reduction: keep_a={:?} keep_b={:?}", out.keep_a, out.keep_b)?;
        writeln!(w, "full_mutual_info: {}", fmt_num(out.full_mutual_info))?;
        writeln!(w, "mutual_info: {}", fmt_num(r.mutual_info))?;
        writeln!(w, "classical_mutual_info: {}", fmt_num(r.classical_mutual_info))?;
        writeln!(w, "mid: {}", fmt_num(r.mid))?;
        match r.symmetric_discord {
            Some(ms) => writeln!(w, "symmetric_discord: {}", fmt_num(ms))?,
            None => writeln!(w, "symmetric_discord: -")?,
        }
        writeln!(w, "degenerate_marginal_flag: {}", r.degenerate_marginal_flag)?;
        if let Some(note) = &out.note {
            writeln!(w, "note: {note}")?;
        }
        write_bound_table(w, &r.bound_checks)?;
    }
    fail_on_violation(&out.report.bound_checks)
}

fn write_bound_table(w: &mut dyn Write, checks: &[BoundCheck]) -> io::Result<()> {
    writeln!(w, "{:<36} {:>16} {:>16} {:>16}  status", "bound", "lhs", "rhs", "margin")?;
    for b in checks {
        writeln!(
            w,
            "{:<36} {:>16} {:>16} {:>16}  {}",
            b.name,
            fmt_num(b.lhs),
            fmt_num(b.rhs),
            fmt_num(b.margin()),
            if b.satisfied { "ok" } else { "VIOLATED" }
        )?;
    }
    Ok(())
}

fn fail_on_violation(checks: &[BoundCheck]) -> Result<(), CliError> {
    match checks.iter().find(|b| !b.satisfied) {
        Some(b) => Err(CliError::Violation(format!("{}: {} > {}", b.name, b.lhs, b.rhs))),
        None => Ok(()),
    }
}

#[derive(Debug, Serialize)]
struct BoundsOutput<'a> {
    keep_a: &'a [usize],
    keep_b: &'a [usize],
    commuting_reduced_projectors: bool,
    bounds: &'a [BoundCheck],
}

pub fn cmd_bounds(config: &RunConfig, state: &LoadedState, w: &mut dyn Write) -> Result<(), CliError> {
    let LoadedState::Classical(spec) = state else {
        return Err(CliError::Usage("bounds needs a \"classical\" state file".into()));
    };
    let (keep_a, keep_b) = keep_sets(config, spec.layout());
    let checks = correlations::check_bounds(spec, &keep_a, &keep_b)?;
    let commuting = correlations::commutation_classicality(spec, &keep_a, &keep_b)?;
    if config.json {
        let out = BoundsOutput {
            keep_a: &keep_a,
            keep_b: &keep_b,
            commuting_reduced_projectors: commuting,
            bounds: &checks,
        };
        writeln!(w, "{}", serde_json::to_string_pretty(&out).expect("bounds serialize"))?;
    } else {
        writeln!(w, "reduction: keep_a={keep_a:?} keep_b={keep_b:?}")?;
        writeln!(w, "commuting reduced projectors: {commuting}")?;
        write_bound_table(w, &checks)?;
    }
    fail_on_violation(&checks)
}
