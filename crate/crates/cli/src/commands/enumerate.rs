//! `enumerate`: Butson Hadamard matrices and complete systems among them.

use std::time::Duration;

use muh_butson::{
    enumerate_bh, search_complete_muh_over_bh, Budget, EnumerateOptions, SearchOptions,
};
use muh_core::interchange::{matrix_to_json, system_to_json};
use muh_core::DEFAULT_TOL;
use serde::Serialize;
use serde_json::json;

use super::count;
use crate::report::{CliError, CliResult, Outcome, Verdict};
use crate::Context;

#[derive(Debug, clap::Args, Serialize)]
pub struct Args {
    #[arg(long)]
    pub dim: usize,
    /// Root order `q` of the entries.
    #[arg(long)]
    pub order: usize,
    /// Group the matrices into equivalence classes and write one per class.
    #[arg(long)]
    pub classes: bool,
    /// Search for complete systems whose members all have `q`-th root entries.
    #[arg(long)]
    pub find_complete_system: bool,
    /// Stop after this many systems.
    #[arg(long, requires = "find_complete_system")]
    pub max_systems: Option<usize>,
    #[arg(long)]
    pub budget_nodes: Option<u64>,
    #[arg(long)]
    pub budget_seconds: Option<f64>,
    /// Prefix depth at which the search splits across threads.
    #[arg(long, default_value_t = 1)]
    pub split_depth: usize,
}

fn budget(args: &Args) -> CliResult<Budget> {
    let max_time = match args.budget_seconds {
        Some(s) if s.is_finite() && s >= 0.0 => Some(Duration::from_secs_f64(s)),
        Some(_) => {
            return Err(CliError::usage(
                "--budget-seconds must be a non-negative number",
            ))
        }
        None => None,
    };
    Ok(Budget {
        max_nodes: args.budget_nodes,
        max_time,
    })
}

pub fn run(args: &Args, ctx: &mut Context) -> CliResult<Outcome> {
    let (d, q) = (args.dim, args.order);
    if args.find_complete_system {
        return run_search(args, ctx);
    }
    let e = enumerate_bh(
        d,
        q,
        &EnumerateOptions {
            up_to_equivalence: args.classes,
            budget: budget(args)?,
            split_depth: args.split_depth,
        },
    )?;
    let dir = format!("bh-d{d}-q{q}");
    let mut files = Vec::new();
    if args.classes {
        for (i, m) in e.class_matrices().iter().enumerate() {
            let name = format!("{dir}/class-{i:03}.json");
            ctx.out.write_json(&name, &matrix_to_json(m))?;
            files.push(name);
        }
    } else {
        for (i, m) in e.dephased_matrices()?.iter().enumerate() {
            let name = format!("{dir}/matrix-{i:04}.json");
            ctx.out.write_json(&name, &matrix_to_json(m))?;
            files.push(name);
        }
    }
    let classes = args.classes.then_some(e.classes.len());
    let summary = format!(
        "BH({d},{q}): {}{}, {}",
        count(
            e.matrices.len(),
            "row-sorted dephased matrix",
            "row-sorted dephased matrices"
        ),
        classes.map_or(String::new(), |c| format!(
            " in {}",
            count(c, "class", "classes")
        )),
        if e.exhaustive {
            "exhaustive"
        } else {
            "budget reached, not exhaustive"
        },
    );
    let details = json!({
        "dim": d,
        "order": q,
        "dephased_matrices": e.matrices.len(),
        "classes": classes,
        "orbit_sizes": e.classes.iter().map(|c| c.orbit_size).collect::<Vec<_>>(),
        "nodes": e.nodes,
        "files": files,
    });
    let verdict = if e.exhaustive {
        Verdict::Completed
    } else {
        Verdict::Inconclusive
    };
    Ok(Outcome::new(verdict, summary, details).exhaustive(e.exhaustive))
}

fn run_search(args: &Args, ctx: &mut Context) -> CliResult<Outcome> {
    let (d, q) = (args.dim, args.order);
    let r = search_complete_muh_over_bh(
        d,
        q,
        &SearchOptions {
            budget: budget(args)?,
            split_depth: args.split_depth,
            max_systems: args.max_systems,
        },
    )?;
    let dir = format!("muh-d{d}-q{q}");
    let mut systems = Vec::new();
    for (i, s) in r.systems.iter().enumerate() {
        let name = format!("{dir}/system-{i:03}.json");
        ctx.out.write_json(&name, &system_to_json(s))?;
        let real_first = s.matrix(0).columns().iter().all(|c| c.is_real(DEFAULT_TOL));
        systems.push(json!({ "file": name, "real_first_member": real_first }));
    }
    let (verdict, summary) = match (r.systems.len(), r.exhaustive) {
        (0, true) => (
            Verdict::Completed,
            format!("no complete system of BH({d},{q}) matrices; search exhaustive"),
        ),
        (0, false) => (
            Verdict::Inconclusive,
            format!("no complete system of BH({d},{q}) matrices found before the budget ran out"),
        ),
        (n, ex) => (
            Verdict::Verified,
            format!(
                "found {} of BH({d},{q}) matrices{}",
                count(n, "complete system", "complete systems"),
                if ex {
                    "; search exhaustive"
                } else {
                    "; search not exhaustive"
                }
            ),
        ),
    };
    let anchors: Vec<_> = r
        .anchors
        .iter()
        .map(|a| {
            json!({
                "anchor": a.anchor,
                "candidate_columns": a.candidate_columns,
                "candidate_members": a.candidate_members,
                "unbiased_pairs": a.unbiased_pairs,
                "systems": a.systems,
            })
        })
        .collect();
    let details = json!({
        "dim": d,
        "order": q,
        "systems": systems,
        "anchors": anchors,
        "nodes": r.nodes,
    });
    Ok(Outcome::new(verdict, summary, details).exhaustive(r.exhaustive))
}
