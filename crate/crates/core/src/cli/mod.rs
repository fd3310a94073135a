//! Command-line interface.
//!
//! Exit codes: 0 on success, 1 when a verification check fails, 2 on
//! invalid input.

mod commands;
pub mod suites;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::bd::VertexConvention;
use crate::error::Result;
use crate::multilinear::ScalarMode;

pub use commands::{cmd_invariants, cmd_realize, CommandOutput};
pub use suites::{run_suite, CheckResult, SuiteConfig, SuiteReport};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "fuchsian-bd", version, about = "Bonahon-Dreyer coordinates of Fuchsian representations")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run an identity-verification suite.
    Verify(VerifyArgs),
    /// Compute the coordinates of a surface given by shears and twists.
    Invariants(SurfaceArgs),
    /// Realize a slice point and check the round trip.
    Realize(RealizeArgs),
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// One of triple-ratio, double-ratio, rhombus, band.
    #[arg(long)]
    pub suite: String,
    #[arg(long, default_value_t = 3)]
    pub n: usize,
    #[arg(long, default_value_t = 200)]
    pub samples: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Largest parameter for the rhombus and band suites.
    #[arg(long, default_value_t = 10)]
    pub max: i64,
    /// Exact rational arithmetic (the default).
    #[arg(long, conflicts_with = "float")]
    pub exact: bool,
    /// Double-precision arithmetic.
    #[arg(long)]
    pub float: bool,
    /// Relative tolerance in float mode.
    #[arg(long, default_value_t = 1e-9)]
    pub tol: f64,
    /// Also write the report to `<prefix>.json`.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum ConventionArg {
    SpiralCorner,
    Counterclockwise,
}

impl From<ConventionArg> for VertexConvention {
    fn from(c: ConventionArg) -> Self {
        match c {
            ConventionArg::SpiralCorner => VertexConvention::SpiralCorner,
            ConventionArg::Counterclockwise => VertexConvention::Counterclockwise,
        }
    }
}

#[derive(Debug, Args)]
pub struct SurfaceArgs {
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long)]
    pub n: usize,
    /// Output prefix; writes `<prefix>.json` and `<prefix>.csv`.
    #[arg(long)]
    pub out: PathBuf,
    /// Corner reading of fan triangles in the closed-leaf sums.
    #[arg(long, value_enum, default_value = "spiral-corner")]
    pub vertex_convention: ConventionArg,
}

#[derive(Debug, Args)]
pub struct RealizeArgs {
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub out: PathBuf,
}

fn verify(args: &VerifyArgs, out: &mut dyn Write) -> Result<bool> {
    let cfg = SuiteConfig {
        suite: args.suite.clone(),
        n: args.n,
        samples: args.samples,
        seed: args.seed,
        mode: if args.float { ScalarMode::Float } else { ScalarMode::Exact },
        max: args.max,
        tol: args.tol,
    };
    let report = run_suite(&cfg)?;
    for c in &report.checks {
        writeln!(out, "{}", c.line())?;
    }
    let passed = report.passed();
    writeln!(out, "{}: {}", report.suite, if passed { "all checks passed" } else { "FAILED" })?;
    if let Some(prefix) = &args.out {
        let mut path = prefix.as_os_str().to_owned();
        path.push(".json");
        let mut text = serde_json::to_string_pretty(&report)?;
        text.push('\n');
        std::fs::write(PathBuf::from(path), text)?;
    }
    Ok(passed)
}

fn dispatch(cli: &Cli, out: &mut dyn Write) -> Result<bool> {
    let result = match &cli.command {
        Command::Verify(args) => return verify(args, out),
        Command::Invariants(a) => cmd_invariants(&a.input, a.n, &a.out, a.vertex_convention.into())?,
        Command::Realize(a) => cmd_realize(&a.input, a.n, &a.out)?,
    };
    for line in &result.summary {
        writeln!(out, "{line}")?;
    }
    for f in &result.files {
        writeln!(out, "wrote {}", f.display())?;
    }
    Ok(result.passed)
}

/// Parses `args`, runs the command and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(err, "{}", e.render());
                return EXIT_INPUT;
            }
            let _ = write!(out, "{}", e.render());
            return EXIT_OK;
        }
    };
    match dispatch(&cli, out) {
        Ok(true) => EXIT_OK,
        Ok(false) => EXIT_FAILED,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_INPUT
        }
    }
}
