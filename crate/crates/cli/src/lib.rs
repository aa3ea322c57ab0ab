//! The `muh` command line: every subcommand returns an [`Outcome`], which
//! becomes a JSON [`RunReport`] in the output directory and on stdout.

pub mod commands;
pub mod report;

use std::ffi::OsString;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, Subcommand};
use serde::Serialize;

pub use report::{CliError, OutDir, Outcome, RunReport, Verdict};

#[derive(Debug, Parser)]
#[command(
    name = "muh",
    version,
    about = "Mutually unbiased Hadamard matrices: checks, certificates and searches"
)]
pub struct Cli {
    /// Directory for every file written, reports included.
    #[arg(long, global = true, env = "MUH_OUT_DIR", default_value = ".")]
    pub out_dir: PathBuf,
    /// Worker threads for enumeration, search and scans.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Print one summary line instead of the JSON report.
    #[arg(long, global = true)]
    pub quiet: bool,
    /// Seed for every random choice.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Report file name; defaults to `<subcommand>.report.json`.
    #[arg(long, global = true)]
    pub report: Option<String>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(untagged)]
pub enum Command {
    /// Check a matrix or system and the Fourier-side identities it satisfies.
    Verify(commands::verify::Args),
    /// Write a fixture matrix or system.
    Construct(commands::construct::Args),
    /// Solve a windowed LP exactly and check its certificate.
    LpCertify(commands::lp::Args),
    /// Enumerate Butson Hadamard matrices and complete systems among them.
    Enumerate(commands::enumerate::Args),
    /// Run a forcing argument.
    ForcingCheck(commands::forcing::CheckArgs),
    /// Search for forcing sets against known columns.
    ForcingSearch(commands::forcing::SearchArgs),
    /// Scan a family of order-6 matrices for nonzero g_1 values.
    ConjectureScan(commands::conjecture::Args),
    /// Write F and G over a window as CSV.
    FourierDump(commands::dump::Args),
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Verify(_) => "verify",
            Command::Construct(_) => "construct",
            Command::LpCertify(_) => "lp-certify",
            Command::Enumerate(_) => "enumerate",
            Command::ForcingCheck(_) => "forcing-check",
            Command::ForcingSearch(_) => "forcing-search",
            Command::ConjectureScan(_) => "conjecture-scan",
            Command::FourierDump(_) => "fourier-dump",
        }
    }
}

/// Settings shared by every subcommand.
pub struct Context {
    pub out: OutDir,
    pub seed: u64,
}

fn dispatch(cmd: &Command, ctx: &mut Context) -> report::CliResult<Outcome> {
    match cmd {
        Command::Verify(a) => commands::verify::run(a, ctx),
        Command::Construct(a) => commands::construct::run(a, ctx),
        Command::LpCertify(a) => commands::lp::run(a, ctx),
        Command::Enumerate(a) => commands::enumerate::run(a, ctx),
        Command::ForcingCheck(a) => commands::forcing::run_check(a, ctx),
        Command::ForcingSearch(a) => commands::forcing::run_search(a, ctx),
        Command::ConjectureScan(a) => commands::conjecture::run(a, ctx),
        Command::FourierDump(a) => commands::dump::run(a, ctx),
    }
}

fn execute(cli: Cli) -> report::CliResult<RunReport> {
    if let Some(n) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| CliError::usage(format!("thread pool: {e}")))?;
    }
    let started = Instant::now();
    let mut ctx = Context {
        out: OutDir::new(cli.out_dir.clone()),
        seed: cli.seed,
    };
    let name = cli.command.name();
    let outcome = dispatch(&cli.command, &mut ctx)?;
    let report_name = cli
        .report
        .clone()
        .unwrap_or_else(|| format!("{name}.report.json"));
    let mut outputs = ctx.out.written().to_vec();
    outputs.push(report_name.clone());
    let report = RunReport {
        schema_version: report::SCHEMA_VERSION,
        tool: "muh",
        version: env!("CARGO_PKG_VERSION"),
        subcommand: name.into(),
        inputs: serde_json::json!({
            "args": cli.command,
            "seed": cli.seed,
            "threads": cli.threads,
            "out_dir": cli.out_dir,
        }),
        verdict: outcome.verdict,
        exit_code: outcome.verdict.exit_code(),
        summary: outcome.summary,
        exhaustive: outcome.exhaustive,
        conditional: outcome.conditional,
        elapsed_seconds: started.elapsed().as_secs_f64(),
        outputs,
        details: outcome.details,
    };
    ctx.out.write_json(&report_name, &report)?;
    if cli.quiet {
        println!("{}: {}", name, report.summary);
    } else {
        println!(
            "{}",
            serde_json::to_string_pretty(&report).map_err(|e| CliError::io(e.to_string()))?
        );
    }
    Ok(report)
}

/// Parses `argv` (program name first), runs the subcommand and returns the
/// process exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() {
                report::EXIT_USAGE
            } else {
                0
            };
            let _ = e.print();
            return code;
        }
    };
    match execute(cli) {
        Ok(r) => r.exit_code,
        Err(e) => {
            eprintln!("muh: error: {e}");
            e.code
        }
    }
}
