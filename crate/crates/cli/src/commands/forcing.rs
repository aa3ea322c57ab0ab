//! `forcing-check` and `forcing-search`.

use std::path::PathBuf;
use std::time::Duration;

use clap::ValueEnum;
use muh_butson::Budget;
use muh_core::interchange::Document;
use muh_core::{prime_complete_system, PhaseMatrix, PhaseVector, VanishingMode};
use muh_forcing::{
    forcing_conclusion, no_fourier6_preset, no_real_preset, search_forcing_sets, Conclusion,
    ForcingSet, PipelineReport, SearchOptions, Strategy, Verdict as Pipeline, DEFAULT_SHIFTS,
};
use serde::Serialize;
use serde_json::json;

use super::{load_columns, load_document, load_system, parse_indices, parse_vectors, to_json};
use crate::report::{CliError, CliResult, Outcome, Verdict};
use crate::Context;

#[derive(Clone, Copy, Debug, ValueEnum, Serialize)]
pub enum Preset {
    /// A real first member leaves every other column with vanishing sum of squares.
    #[value(name = "thm-noreal")]
    #[serde(rename = "thm-noreal")]
    NoReal,
    /// The order-6 Fourier matrix is in no complete system.
    #[value(name = "prop-noF6")]
    #[serde(rename = "prop-noF6")]
    NoFourier6,
    /// A single user-supplied set against known columns.
    #[value(name = "set")]
    #[serde(rename = "set")]
    Set,
}

#[derive(Clone, Copy, Debug, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Plain,
    Conjecture,
}

impl From<Mode> for VanishingMode {
    fn from(m: Mode) -> Self {
        match m {
            Mode::Plain => VanishingMode::Plain,
            Mode::Conjecture => VanishingMode::Conjecture,
        }
    }
}

#[derive(Debug, clap::Args, Serialize)]
pub struct CheckArgs {
    #[arg(long, value_enum)]
    pub preset: Preset,
    /// thm-noreal: complete system with a real first member (default: dimension 2).
    /// prop-noF6: matrix or system whose first member supplies the known columns.
    #[arg(long)]
    pub system: Option<PathBuf>,
    /// Known columns for `set`, or for prop-noF6 in place of `--system`.
    #[arg(long)]
    pub known: Option<PathBuf>,
    /// Cyclic coordinate shifts applied to the prop-noF6 sets.
    #[arg(long)]
    pub shifts: Option<String>,
    /// Vectors of the `set` preset, e.g. "1,0,0;0,1,0".
    #[arg(long, allow_hyphen_values = true)]
    pub gamma: Option<String>,
    #[arg(long, value_enum, default_value = "plain")]
    pub mode: Mode,
}

#[derive(Debug, clap::Args, Serialize)]
pub struct SearchArgs {
    #[arg(long)]
    pub dim: Option<usize>,
    /// Block, matrix or system holding the known columns.
    #[arg(long)]
    pub known: PathBuf,
    /// Keep only these known columns, e.g. "0,2,4".
    #[arg(long)]
    pub columns: Option<String>,
    #[arg(long)]
    pub size: usize,
    #[arg(long, value_enum, default_value = "plain")]
    pub mode: Mode,
    /// Search node budget.
    #[arg(long)]
    pub budget: Option<u64>,
    #[arg(long)]
    pub budget_seconds: Option<f64>,
    #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
    pub lo: i64,
    #[arg(long, default_value_t = 2, allow_hyphen_values = true)]
    pub hi: i64,
    #[arg(long, default_value = "auto")]
    pub strategy: String,
    #[arg(long, default_value_t = 100)]
    pub max_results: usize,
    /// Keep translates of a set inside the box.
    #[arg(long)]
    pub translates: bool,
}

pub fn run_check(args: &CheckArgs, _ctx: &mut Context) -> CliResult<Outcome> {
    match args.preset {
        Preset::NoReal => no_real(args),
        Preset::NoFourier6 => no_fourier6(args),
        Preset::Set => single_set(args),
    }
}

fn no_real(args: &CheckArgs) -> CliResult<Outcome> {
    let s = match &args.system {
        Some(p) => load_system(p)?,
        None => prime_complete_system(2)?,
    };
    let r = no_real_preset(&s).map_err(|e| CliError::data(e.to_string()))?;
    let zero = r.columns.iter().filter(|c| c.vanishes).count();
    let summary = if r.holds {
        format!(
            "d={}: sum of squares vanishes on all {} columns outside the real member",
            r.dim,
            r.columns.len()
        )
    } else {
        format!(
            "d={}: {} of {} columns violate, {} real columns",
            r.dim,
            r.columns.len() - zero,
            r.columns.len(),
            r.real_columns.len()
        )
    };
    let verdict = if r.holds {
        Verdict::Verified
    } else {
        Verdict::Refuted
    };
    Ok(Outcome::new(verdict, summary, to_json(&r)?).conditional(false))
}

fn first_matrix(path: &std::path::Path) -> CliResult<PhaseMatrix> {
    match load_document(path)? {
        Document::Matrix(m) => Ok(m),
        Document::System(s) => Ok(s.matrix(0).clone()),
        Document::Block(_) => Err(CliError::data(format!(
            "{}: expected a matrix",
            path.display()
        ))),
    }
}

fn pipeline_summary(r: &PipelineReport) -> (Verdict, String) {
    if let Some(i) = r
        .checks
        .iter()
        .position(|c| matches!(c.conclusion, Conclusion::Inconsistent))
    {
        let c = &r.checks[i];
        return (
            Verdict::Verified,
            format!(
                "contradiction established: set {i} has partial energy {} above the total {}",
                c.partial_energy.text, c.total_energy
            ),
        );
    }
    let energies: Vec<&str> = r
        .checks
        .iter()
        .map(|c| c.partial_energy.text.as_str())
        .collect();
    let relations: Vec<&str> = r
        .relations
        .iter()
        .map(|x| x.relation.statement.as_str())
        .collect();
    let head = format!(
        "partial energies [{}]; relations [{}]",
        energies.join(", "),
        relations.join("; ")
    );
    match &r.contradiction.verdict {
        Pipeline::Contradiction { step, .. } => {
            let s = &r.contradiction.steps[*step];
            let inner = s.inner.as_ref().map_or("?", |n| n.text.as_str());
            (
                Verdict::Verified,
                format!(
                    "contradiction established: {head}; lifts differing by {:?} have inner product {inner} != 0",
                    s.delta
                ),
            )
        }
        Pipeline::Consistent { checked } => (
            Verdict::Inconclusive,
            format!("no contradiction: {head}; {checked} combinations vanish"),
        ),
        Pipeline::Inconclusive { reason } => (
            Verdict::Inconclusive,
            format!("no contradiction: {head}; {reason}"),
        ),
    }
}

fn no_fourier6(args: &CheckArgs) -> CliResult<Outcome> {
    let known = match args.known.as_ref().or(args.system.as_ref()) {
        Some(p) => Some(first_matrix(p)?),
        None => None,
    };
    if known.as_ref().is_some_and(|m| m.dim() != 6) {
        return Err(CliError::data("the known matrix must have dimension 6"));
    }
    let shifts = match &args.shifts {
        Some(s) => parse_indices(s)?,
        None => DEFAULT_SHIFTS.to_vec(),
    };
    let r = no_fourier6_preset(known.as_ref(), &shifts)?;
    let (verdict, summary) = pipeline_summary(&r);
    Ok(Outcome::new(verdict, summary, to_json(&r)?).conditional(r.conditional))
}

fn single_set(args: &CheckArgs) -> CliResult<Outcome> {
    let gamma = parse_vectors(
        args.gamma
            .as_deref()
            .ok_or_else(|| CliError::usage("--gamma is required"))?,
    )?;
    let known: Vec<PhaseVector> = load_columns(
        args.known
            .as_ref()
            .ok_or_else(|| CliError::usage("--known is required"))?,
    )?;
    let d = known
        .first()
        .map(|c| c.dim())
        .ok_or_else(|| CliError::data("no known columns"))?;
    let set = ForcingSet::new(gamma, args.mode.into())?;
    let c = forcing_conclusion(&set, &known, d)?;
    let (verdict, summary) = match &c.conclusion {
        Conclusion::Forced { statement, .. } => (
            Verdict::Verified,
            format!(
                "forced: partial energy {} = {}; {statement}",
                c.partial_energy.text, c.total_energy
            ),
        ),
        Conclusion::NotForced => (
            Verdict::Refuted,
            format!(
                "not forced: partial energy {} < {}",
                c.partial_energy.text, c.total_energy
            ),
        ),
        Conclusion::Inconsistent => (
            Verdict::Refuted,
            format!(
                "known columns cannot sit in a complete system: partial energy {} > {}",
                c.partial_energy.text, c.total_energy
            ),
        ),
    };
    Ok(Outcome::new(verdict, summary, to_json(&c)?).conditional(c.conditional))
}

pub fn run_search(args: &SearchArgs, _ctx: &mut Context) -> CliResult<Outcome> {
    let mut known = load_columns(&args.known)?;
    if let Some(cols) = &args.columns {
        let idx = parse_indices(cols)?;
        if let Some(&bad) = idx.iter().find(|&&i| i >= known.len()) {
            return Err(CliError::usage(format!(
                "column {bad} out of range ({} known)",
                known.len()
            )));
        }
        known = idx.iter().map(|&i| known[i].clone()).collect();
    }
    let d = known
        .first()
        .map(|c| c.dim())
        .ok_or_else(|| CliError::data("no known columns"))?;
    if args.dim.is_some_and(|x| x != d) {
        return Err(CliError::usage(format!(
            "--dim {} does not match columns of dimension {d}",
            args.dim.unwrap()
        )));
    }
    let strategy: Strategy = args.strategy.parse()?;
    let opts = SearchOptions {
        lo: args.lo,
        hi: args.hi,
        strategy,
        budget: Budget {
            max_nodes: args.budget,
            max_time: args.budget_seconds.map(Duration::from_secs_f64),
        },
        max_results: args.max_results,
        translates: args.translates,
    };
    let r = search_forcing_sets(d, &known, args.size, args.mode.into(), &opts)?;
    let conditional = r.results.iter().any(|c| c.conditional);
    let summary = format!(
        "{} forcing sets of size {} in [{},{}]^{d}, {} reaching {}; {}",
        r.found,
        r.size,
        r.bounds.0,
        r.bounds.1,
        r.threshold_hits,
        r.threshold,
        if r.exhaustive {
            "exhaustive"
        } else {
            "budget reached, not exhaustive"
        }
    );
    let verdict = if r.exhaustive {
        Verdict::Completed
    } else {
        Verdict::Inconclusive
    };
    let details = json!({ "search": to_json(&r)? });
    Ok(Outcome::new(verdict, summary, details)
        .exhaustive(r.exhaustive)
        .conditional(conditional))
}
