//! The `qfano` command line: `compute`, `enumerate`, `bound`, `verify`.
//!
//! [`run`] does all the work and returns the exit code together with the
//! text meant for stdout and stderr, so the binary stays a one-liner and
//! tests can drive the CLI in-process.
//!
//! Exit codes: 0 success, 1 failed verification, 2 usage or input error.

mod constraints;
mod render;

use std::ffi::OsString;
use std::fs;
use std::io::Read;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::basket::FormalBasket;
use crate::birationality::{birational_bound, GenusClass, GeometricCase};
use crate::enumeration::enumerate;
use crate::error::{Error, Result};
use crate::verify::{self, Suite};

pub use constraints::{parse_constraints, parse_rational};
pub use render::{rational_str, SCHEMA_VERSION};

/// Exit code for a failed verification.
pub const EXIT_FAILED: i32 = 1;
/// Exit code for usage, parse and input errors.
pub const EXIT_USAGE: i32 = 2;

/// Environment variable capping enumeration threads.
pub const THREADS_VAR: &str = "QFANO_THREADS";

/// Default `--max-m` is one full period, capped here.
pub const MAX_M_CAP: u64 = 200;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Parser)]
#[command(
    name = "qfano",
    version,
    about = "Invariants, basket enumeration and birationality bounds for terminal weak Q-Fano 3-folds"
)]
struct Cli {
    #[arg(long, value_enum, default_value = "text", global = true)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Volume, Cartier index, anti-plurigenera, slope and feasibility of a basket.
    Compute(ComputeArgs),
    /// Baskets satisfying a constraint file, in a fixed order.
    Enumerate(EnumerateArgs),
    /// Smallest m with phi_{-m} birational for the given case.
    Bound(BoundArgs),
    /// Replay a built-in check suite.
    Verify(VerifyArgs),
}

#[derive(Debug, Args)]
struct ComputeArgs {
    /// Basket such as "9x(1,2),(1,3),(1,7)"; "" is the empty basket.
    #[arg(long, allow_hyphen_values = true)]
    basket: String,
    /// P[-1].
    #[arg(long)]
    p1: u32,
    /// Last m in the profile; defaults to 2 lcm(r_i), at most 200.
    #[arg(long)]
    max_m: Option<u64>,
    /// Also decompose the series for this residue t.
    #[arg(long)]
    decompose: Option<u64>,
}

#[derive(Debug, Args)]
struct EnumerateArgs {
    /// Constraint file, or "-" for stdin.
    file: String,
    /// Print only the number of baskets.
    #[arg(long)]
    count_only: bool,
}

#[derive(Debug, Args)]
struct BoundArgs {
    /// Dimension of the image of phi_{-m^_0}: 1, 2 or 3.
    #[arg(long)]
    dim: Option<u8>,
    /// Cartier index.
    #[arg(long)]
    r: Option<u32>,
    /// m^_0, the least m with P[-m] >= 2.
    #[arg(long)]
    mhat0: Option<u32>,
    #[arg(long, value_enum, default_value = "unknown")]
    genus: GenusArg,
    /// Standard Q-Fano: m^_0 = 1, |-K| not composed with a pencil, g(C) > 0.
    #[arg(long)]
    standard: bool,
    /// A degree with |-m1 K| not composed with a pencil.
    #[arg(long)]
    m1: Option<u32>,
    /// Read r, m^_0 and m1 off a basket instead.
    #[arg(long, allow_hyphen_values = true, conflicts_with_all = ["r", "mhat0", "standard"], requires = "p1")]
    basket: Option<String>,
    /// P[-1] for --basket.
    #[arg(long)]
    p1: Option<u32>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum GenusArg {
    Zero,
    Positive,
    Unknown,
}

impl From<GenusArg> for GenusClass {
    fn from(g: GenusArg) -> Self {
        match g {
            GenusArg::Zero => GenusClass::Zero,
            GenusArg::Positive => GenusClass::Positive,
            GenusArg::Unknown => GenusClass::Unknown,
        }
    }
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[arg(value_enum)]
    suite: SuiteArg,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum SuiteArg {
    Case1,
    Theorem8,
    Standard,
    Duality,
}

impl From<SuiteArg> for Suite {
    fn from(s: SuiteArg) -> Self {
        match s {
            SuiteArg::Case1 => Suite::Case1,
            SuiteArg::Theorem8 => Suite::Theorem8,
            SuiteArg::Standard => Suite::Standard,
            SuiteArg::Duality => Suite::Duality,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            code: 0,
            stdout,
            stderr: String::new(),
        }
    }

    fn usage(msg: impl std::fmt::Display) -> Self {
        Outcome {
            code: EXIT_USAGE,
            stdout: String::new(),
            stderr: format!("error: {msg}\n"),
        }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            let code = e.exit_code();
            return if code == 0 {
                Outcome::ok(text)
            } else {
                Outcome {
                    code: EXIT_USAGE,
                    stdout: String::new(),
                    stderr: text,
                }
            };
        }
    };
    let format = cli.format;
    let result = match cli.command {
        Command::Compute(a) => compute(&a, format).map(Outcome::ok),
        Command::Enumerate(a) => run_enumerate(&a, format).map(Outcome::ok),
        Command::Bound(a) => bound(&a, format).map(Outcome::ok),
        Command::Verify(a) => Ok(run_verify(a.suite.into(), format)),
    };
    result.unwrap_or_else(Outcome::usage)
}

fn compute(a: &ComputeArgs, format: Format) -> Result<String> {
    let basket = FormalBasket::parse(&a.basket, a.p1)?;
    let max_m = match a.max_m {
        Some(0) => return Err(Error::DomainError("--max-m must be at least 1".into())),
        Some(m) => m,
        None => basket.feasibility_horizon().min(MAX_M_CAP),
    };
    let doc = render::ComputeDoc::build(&basket, max_m, a.decompose)?;
    render::compute(&doc, format)
}

fn thread_count() -> Result<Option<usize>> {
    match std::env::var(THREADS_VAR) {
        Err(std::env::VarError::NotPresent) => Ok(None),
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(n) if n > 0 => Ok(Some(n)),
            _ => Err(Error::Parse(format!(
                "{THREADS_VAR} must be a positive integer, got {v:?}"
            ))),
        },
        Err(e) => Err(Error::Parse(format!("{THREADS_VAR}: {e}"))),
    }
}

fn read_input(path: &str) -> Result<String> {
    let read = if path == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map(|_| s)
    } else {
        fs::read_to_string(path)
    };
    read.map_err(|e| Error::Parse(format!("cannot read {path}: {e}")))
}

fn run_enumerate(a: &EnumerateArgs, format: Format) -> Result<String> {
    let constraints = parse_constraints(&read_input(&a.file)?)?;
    let found = match thread_count()? {
        None => enumerate(&constraints)?,
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| Error::DomainError(format!("thread pool: {e}")))?
            .install(|| enumerate(&constraints))?,
    };
    render::enumeration(&found, a.count_only, format)
}

fn bound(a: &BoundArgs, format: Format) -> Result<String> {
    let genus = GenusClass::from(a.genus);
    let case = if a.standard {
        if a.mhat0.is_some_and(|m| m != 1) {
            return Err(Error::InvalidCase("a standard case has m^_0 = 1".into()));
        }
        if a.dim.is_some_and(|d| d == 1) {
            return Err(Error::InvalidCase(
                "a standard case has |-K| not composed with a pencil".into(),
            ));
        }
        GeometricCase::standard(a.r.unwrap_or(1))?
    } else {
        let dim = a
            .dim
            .ok_or_else(|| Error::InvalidCase("--dim is required".into()))?;
        let case = match &a.basket {
            Some(text) => {
                let basket = FormalBasket::parse(text, a.p1.unwrap_or(0))?;
                GeometricCase::from_basket(&basket, dim, genus)?
            }
            None => {
                let r =
                    a.r.ok_or_else(|| Error::InvalidCase("--r is required".into()))?;
                let mhat0 = a
                    .mhat0
                    .ok_or_else(|| Error::InvalidCase("--mhat0 is required".into()))?;
                GeometricCase::new(mhat0, dim, r, genus)?
            }
        };
        match a.m1 {
            Some(m1) => case.with_m1(m1),
            None => case,
        }
    };
    let result = birational_bound(&case)?;
    render::bound(&case, &result, format)
}

fn run_verify(suite: Suite, format: Format) -> Outcome {
    let report = verify::run(suite);
    match render::verify(&report, format) {
        Ok(stdout) => Outcome {
            code: if report.passed() { 0 } else { EXIT_FAILED },
            stdout,
            stderr: String::new(),
        },
        Err(e) => Outcome::usage(e),
    }
}
