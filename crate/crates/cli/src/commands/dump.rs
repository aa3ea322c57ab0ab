//! `fourier-dump`: `F` and `G` over a window as CSV.

use std::io::Write;
use std::path::PathBuf;

use muh_core::fourier::dump_csv;
use serde::Serialize;
use serde_json::json;

use super::load_system;
use crate::report::{CliError, CliResult, Outcome, Verdict};
use crate::Context;

#[derive(Debug, clap::Args, Serialize)]
pub struct Args {
    /// Matrix or system JSON file.
    #[arg(long, visible_alias = "matrix")]
    pub system: PathBuf,
    #[arg(long)]
    pub radius: i64,
    /// CSV file name.
    #[arg(long, default_value = "fourier-dump.csv")]
    pub out: String,
}

const MAX_ROWS: u64 = 5_000_000;

pub fn run(args: &Args, ctx: &mut Context) -> CliResult<Outcome> {
    let s = load_system(&args.system)?;
    if args.radius < 0 {
        return Err(CliError::usage("radius must be non-negative"));
    }
    let side = (2 * args.radius + 1) as u64;
    let rows = side.checked_pow(s.dim() as u32).filter(|&n| n <= MAX_ROWS);
    if rows.is_none() {
        return Err(CliError::usage(format!(
            "window of radius {} in dimension {} exceeds {MAX_ROWS} rows",
            args.radius,
            s.dim()
        )));
    }
    let mut w = ctx.out.create(&args.out)?;
    let n = dump_csv(&s, args.radius, &mut w)?;
    w.flush()?;
    Ok(Outcome::new(
        Verdict::Completed,
        format!("wrote {n} rows of F and G to {}", args.out),
        json!({ "dim": s.dim(), "matrices": s.len(), "radius": args.radius, "rows": n, "file": args.out }),
    ))
}
