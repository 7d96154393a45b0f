//! `lwik`: evaluate Lambert W through its integral representations and run
//! the verification suites from the command line.
//!
//! Exit codes: 0 success, 1 a check failed, 2 argument outside the domain,
//! 3 no convergence, 64 usage error.

mod commands;
mod output;
mod parse;

use std::io;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use lwik::analysis::{MAX_DEGREE, MAX_ORDER};
use lwik::quadrature::Rule;
use lwik::representations::RepresentationId;
use lwik::Complex64;

use output::Format;

pub const EXIT_CHECK_FAILED: u8 = 1;
pub const EXIT_DOMAIN: u8 = 2;
pub const EXIT_NOT_CONVERGED: u8 = 3;
pub const EXIT_USAGE: u8 = 64;

#[derive(Parser)]
#[command(name = "lwik", version, about = "Lambert W through its integral representations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate one representation at one point.
    Eval(EvalArgs),
    /// Tabulate representations against the oracle over a set of points.
    Compare(CompareArgs),
    /// Check the definite-integral identities.
    Identities(IdentitiesArgs),
    /// Padé approximants of W(z)/z: poles and interlacing.
    Pade(PadeArgs),
    /// Finite-difference complete-monotonicity check.
    Cm(CmArgs),
    /// Node counts and wall time over a tolerance ladder.
    Bench(BenchArgs),
}

#[derive(Args)]
struct Shared {
    /// Absolute tolerance.
    #[arg(long, env = "LWIK_DEFAULT_TOL", default_value = "1e-10", value_parser = parse::tol)]
    tol: f64,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
}

fn parse_rule(s: &str) -> Result<Rule, String> {
    Rule::from_name(s).ok_or_else(|| format!("unknown rule {s:?}; known: midpoint, gauss, adaptive, semi-infinite"))
}

#[derive(Clone, Debug)]
pub struct Grid(pub Vec<f64>);

#[derive(Clone, Debug)]
pub struct Reals(pub Vec<f64>);

#[derive(Args)]
struct EvalArgs {
    #[arg(long, value_parser = parse::rep)]
    rep: RepresentationId,
    /// `re,im` or a real; `e`, `-e`, `1/e`, `-1/e` are accepted.
    #[arg(long, allow_hyphen_values = true, value_parser = parse::complex)]
    z: Complex64,
    /// Quadrature rule; defaults to the one suited to the integrand.
    #[arg(long, value_parser = parse_rule)]
    rule: Option<Rule>,
    #[command(flatten)]
    shared: Shared,
}

#[derive(Args)]
struct CompareArgs {
    /// Comma-separated representation tags, or `all` (the default).
    #[arg(long)]
    rep: Option<Vec<String>>,
    /// Evaluation point; repeatable.
    #[arg(long, allow_hyphen_values = true, value_parser = parse::complex)]
    z: Vec<Complex64>,
    /// Real points as `start:stop:count[:log]`.
    #[arg(long, allow_hyphen_values = true, value_parser = |s: &str| parse::grid(s).map(Grid))]
    grid: Option<Grid>,
    #[arg(long, value_parser = parse_rule)]
    rule: Option<Rule>,
    /// Report wall time per row.
    #[arg(long)]
    timing: bool,
    #[command(flatten)]
    shared: Shared,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Suite {
    Nuttall,
    Closing,
}

#[derive(Args)]
struct IdentitiesArgs {
    #[arg(long, value_enum)]
    only: Option<Suite>,
    /// Restrict the Nuttall family to one exponent.
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..=12))]
    nu: Option<u32>,
    #[command(flatten)]
    shared: Shared,
}

#[derive(Args)]
struct PadeArgs {
    #[arg(long, default_value_t = 6, value_parser = clap::value_parser!(u64).range(1..=MAX_DEGREE as u64))]
    m_max: u64,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
}

#[derive(Args)]
struct CmArgs {
    /// Function id, e.g. `w-over-x`, `s-a`, `cm-b`.
    #[arg(long = "fn")]
    function: String,
    /// Comma-separated parameters; defaults to the first corpus instance.
    #[arg(long, allow_hyphen_values = true, value_parser = |s: &str| parse::real_list(s).map(Reals))]
    params: Option<Reals>,
    #[arg(long, default_value_t = 6, value_parser = clap::value_parser!(u64).range(0..=MAX_ORDER as u64))]
    order: u64,
    /// Defaults to `0.3:30:16:log`.
    #[arg(long, allow_hyphen_values = true, value_parser = |s: &str| parse::grid(s).map(Grid))]
    grid: Option<Grid>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
}

#[derive(Args)]
struct BenchArgs {
    #[arg(long)]
    rep: Option<Vec<String>>,
    #[arg(long, default_value = "2", allow_hyphen_values = true, value_parser = parse::complex)]
    z: Complex64,
    /// Comma-separated tolerance ladder.
    #[arg(long, default_value = "1e-6,1e-8,1e-10,1e-12", value_parser = |s: &str| parse::tol_list(s).map(Reals))]
    tols: Reals,
    #[arg(long, value_parser = parse_rule)]
    rule: Option<Rule>,
    /// Timed repetitions per row; the median is reported.
    #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u64).range(1..))]
    samples: u64,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
}

/// Why a command stopped early.
#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Lib(lwik::Error),
    Io(io::Error),
}

impl From<lwik::Error> for Failure {
    fn from(e: lwik::Error) -> Self {
        Failure::Lib(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

/// Exit status for a library error.
pub fn lib_exit_code(e: &lwik::Error) -> u8 {
    use lwik::Error::*;
    match e {
        Domain(_) | Pole => EXIT_DOMAIN,
        InvalidSpec(_) => EXIT_USAGE,
        Convergence { .. } | NonFinite { .. } | NotConverged { .. } | SingularSystem { .. }
        | StepTooSmall { .. } => EXIT_NOT_CONVERGED,
    }
}

fn run(cli: Cli) -> Result<u8, Failure> {
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match cli.command {
        Command::Eval(a) => commands::eval(&mut out, a.rep, a.z, a.shared.tol, a.rule, a.shared.format),
        Command::Compare(a) => {
            let reps = parse::rep_filter(a.rep.as_deref()).map_err(Failure::Usage)?;
            let mut points = a.z;
            if let Some(Grid(g)) = a.grid {
                points.extend(g.into_iter().map(|x| lwik::c64(x, 0.0)));
            }
            if points.is_empty() {
                points.push(lwik::c64(1.0, 0.0));
            }
            commands::compare(&mut out, &reps, &points, a.shared.tol, a.rule, a.timing, a.shared.format)
        }
        Command::Identities(a) => {
            let (nuttall, closing) = match a.only {
                None => (true, true),
                Some(Suite::Nuttall) => (true, false),
                Some(Suite::Closing) => (false, true),
            };
            if a.nu.is_some() && !nuttall {
                return Err(Failure::Usage("--nu applies to the nuttall suite".into()));
            }
            let nus: Vec<u32> = match a.nu {
                Some(nu) => vec![nu],
                None if nuttall => (1..=8).collect(),
                None => Vec::new(),
            };
            commands::identities(&mut out, &nus, closing, a.shared.tol, a.shared.format)
        }
        Command::Pade(a) => commands::pade(&mut out, a.m_max as usize, a.format),
        Command::Cm(a) => {
            let grid = a.grid.map(|g| g.0);
            commands::cm(&mut out, &a.function, a.params.map(|p| p.0), a.order as usize, grid, a.format)
        }
        Command::Bench(a) => {
            let reps = parse::rep_filter(a.rep.as_deref()).map_err(Failure::Usage)?;
            commands::bench(&mut out, &reps, a.z, &a.tols.0, a.rule, a.samples as usize, a.format)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Lib(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(lib_exit_code(&e))
        }
        Err(Failure::Io(e)) if e.kind() == io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(Failure::Io(e)) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
