//! `conjecture-scan`: `|g_1(ρ)|` over an order-6 family.

use muh_conjecture::{scan_family, Sampling, ScanOptions, Verdict as Scan};
use muh_core::families::FamilyId;
use serde::Serialize;
use serde_json::json;

use super::count;
use crate::report::{CliError, CliResult, Outcome, Verdict};
use crate::Context;

#[derive(Debug, clap::Args, Serialize)]
pub struct Args {
    /// f6, f6t, d6 or s6.
    #[arg(long)]
    pub family: String,
    #[arg(long, default_value_t = 100)]
    pub samples: usize,
    /// Take every parameter from the K-th roots of unity instead of sampling.
    #[arg(long, value_name = "K")]
    pub grid: Option<u32>,
    #[arg(long, default_value_t = 1e-8)]
    pub tol: f64,
    /// Working precision in bits.
    #[arg(long, default_value_t = 256)]
    pub prec: u32,
    /// Full scan report file name.
    #[arg(long)]
    pub out: Option<String>,
    /// Per-sample CSV file name.
    #[arg(long)]
    pub csv: Option<String>,
}

/// Bits needed for 50 significant decimal digits.
pub const FIFTY_DIGITS_BITS: u32 = 167;

pub fn run(args: &Args, ctx: &mut Context) -> CliResult<Outcome> {
    let family: FamilyId = args.family.parse()?;
    if args.prec < 64 {
        return Err(CliError::usage("--prec must be at least 64 bits"));
    }
    let sampling = match args.grid {
        Some(0) => return Err(CliError::usage("--grid must be positive")),
        Some(order) => Sampling::Grid { order },
        None => Sampling::Random {
            samples: args.samples,
            seed: ctx.seed,
        },
    };
    let opts = ScanOptions {
        sampling,
        tol: args.tol,
        prec: args.prec,
    };
    let r = scan_family(family, &opts)?;
    let out = args
        .out
        .clone()
        .unwrap_or_else(|| format!("conjecture-{}.json", family.name()));
    ctx.out.write_json(&out, &r)?;
    if let Some(name) = &args.csv {
        let mut w = ctx.out.create(name)?;
        r.write_csv(&mut w)
            .map_err(|e| CliError::io(e.to_string()))?;
    }
    let (verdict, summary) = match (r.asserted, r.verdict) {
        (false, _) => (
            Verdict::Completed,
            format!(
                "{}: measured max |g_1| = {} over {} (not asserted)",
                r.family,
                r.global_max,
                count(r.sample_count, "point", "points")
            ),
        ),
        (true, Scan::Consistent) => (
            Verdict::Verified,
            format!(
                "{}: max |g_1| = {:e} < {:e} over {} points at {} bits",
                r.family, r.global_max, r.tolerance, r.sample_count, r.precision_bits
            ),
        ),
        (true, Scan::Violated) => (
            Verdict::Refuted,
            format!(
                "{}: max |g_1| = {:e} >= {:e} at {:?}",
                r.family,
                r.global_max,
                r.tolerance,
                r.argmax_params.first()
            ),
        ),
    };
    let details = json!({
        "family": r.family,
        "sampling": r.sampling,
        "precision_bits": r.precision_bits,
        "at_least_fifty_digits": r.precision_bits >= FIFTY_DIGITS_BITS,
        "tolerance": r.tolerance,
        "sample_count": r.sample_count,
        "global_max": r.global_max,
        "per_rho_max": r.rho.iter().zip(&r.per_rho_max).map(|(rho, m)| json!({ "rho": rho, "max_abs": m })).collect::<Vec<_>>(),
        "argmax_params": r.argmax_params,
        "asserted": r.asserted,
        "scan_verdict": r.verdict,
        "report": out,
        "csv": args.csv,
    });
    Ok(Outcome::new(verdict, summary, details))
}
