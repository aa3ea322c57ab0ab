//! `construct`: fixture matrices and systems as interchange files.

use clap::ValueEnum;
use muh_core::families::FamilyId;
use muh_core::interchange::{matrix_to_json, system_to_json};
use muh_core::{fourier_matrix, prime_complete_system, PhaseScalar, DEFAULT_PREC};
use serde::Serialize;
use serde_json::json;

use crate::report::{CliError, CliResult, Outcome, Verdict};
use crate::Context;

#[derive(Clone, Copy, Debug, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Kind {
    /// Complete system in a prime dimension.
    Prime,
    /// The Fourier matrix.
    Fourier,
    /// A member of an order-6 family.
    Family,
}

#[derive(Debug, clap::Args, Serialize)]
pub struct Args {
    #[arg(long, value_enum)]
    pub kind: Kind,
    /// Dimension, for `prime` and `fourier`.
    #[arg(long)]
    pub dim: Option<usize>,
    /// Family name: f6, f6t, d6 or s6.
    #[arg(long)]
    pub family: Option<String>,
    /// Family parameters: `p/q` for an exact root of unity, or a decimal angle in turns.
    #[arg(long, allow_hyphen_values = true)]
    pub params: Option<String>,
    /// Write numeric angles instead of exact exponents.
    #[arg(long)]
    pub numeric: bool,
    /// Output file name inside the output directory.
    #[arg(long)]
    pub out: Option<String>,
}

fn parse_param(t: &str) -> CliResult<PhaseScalar> {
    let t = t.trim();
    if let Some((p, q)) = t.split_once('/') {
        let p: i64 = p
            .trim()
            .parse()
            .map_err(|_| CliError::usage(format!("bad parameter {t:?}")))?;
        let q: u32 = q
            .trim()
            .parse()
            .map_err(|_| CliError::usage(format!("bad parameter {t:?}")))?;
        if q == 0 {
            return Err(CliError::usage(format!("bad parameter {t:?}")));
        }
        return Ok(PhaseScalar::root(q, p));
    }
    let x: f64 = t
        .parse()
        .map_err(|_| CliError::usage(format!("bad parameter {t:?}")))?;
    Ok(PhaseScalar::from_turns_f64(DEFAULT_PREC, x))
}

fn need_dim(args: &Args) -> CliResult<usize> {
    match args.dim {
        Some(d) if d >= 1 => Ok(d),
        _ => Err(CliError::usage("--dim is required and must be positive")),
    }
}

pub fn run(args: &Args, ctx: &mut Context) -> CliResult<Outcome> {
    let (default_name, doc, summary) = match args.kind {
        Kind::Prime => {
            let d = need_dim(args)?;
            let mut s = prime_complete_system(d)?;
            if args.numeric {
                s = muh_core::MuhSystem::new(
                    s.matrices()
                        .iter()
                        .map(|m| m.to_numeric(DEFAULT_PREC))
                        .collect(),
                )?;
            }
            (
                format!("prime{d}.json"),
                serde_json::to_value(system_to_json(&s)),
                format!("complete system of {} matrices in dimension {d}", s.len()),
            )
        }
        Kind::Fourier => {
            let d = need_dim(args)?;
            let mut m = fourier_matrix(d);
            if args.numeric {
                m = m.to_numeric(DEFAULT_PREC);
            }
            (
                format!("fourier{d}.json"),
                serde_json::to_value(matrix_to_json(&m)),
                format!("Fourier matrix of dimension {d}"),
            )
        }
        Kind::Family => {
            let name = args
                .family
                .as_deref()
                .ok_or_else(|| CliError::usage("--family is required"))?;
            let f: FamilyId = name.parse()?;
            let params = match &args.params {
                Some(p) if !p.trim().is_empty() => p
                    .split(',')
                    .map(parse_param)
                    .collect::<CliResult<Vec<_>>>()?,
                _ => Vec::new(),
            };
            let mut m = f.instantiate(&params)?;
            if args.numeric {
                m = m.to_numeric(DEFAULT_PREC);
            }
            (
                format!("{}.json", f.name()),
                serde_json::to_value(matrix_to_json(&m)),
                format!(
                    "member of family {} with {} parameters",
                    f.name(),
                    params.len()
                ),
            )
        }
    };
    let doc = doc.map_err(|e| CliError::io(e.to_string()))?;
    let name = args.out.clone().unwrap_or(default_name);
    ctx.out.write_json(&name, &doc)?;
    Ok(Outcome::new(
        Verdict::Completed,
        format!("wrote {summary} to {name}"),
        json!({ "file": name }),
    ))
}
