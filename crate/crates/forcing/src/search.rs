//! Search for forcing sets inside a coordinate box.
//!
//! Every difference in the vanishing set has coordinate sum 0, so a forcing
//! set lies in one hyperplane `Σ γ_i = const`; vertices are grouped by that
//! sum and forcing sets are cliques of the difference graph in a group.
//! Translating a set changes neither its differences nor its energy, so by
//! default only the translate whose coordinate-wise minimum sits on the lower
//! box corner is kept.
//!
//! When `s·k = d²` for `k` known columns the threshold `s·d²` equals the
//! largest possible partial energy `s²·k`, which is reached exactly when
//! `c^γ` is constant over the set for every known column. The threshold
//! strategy therefore also groups by those characters and reports only
//! sets reaching the threshold.

use std::collections::BTreeMap;

use muh_butson::clique::{cliques, Graph, Tracker};
use muh_butson::Budget;
use muh_core::phase::Phases;
use muh_core::{
    in_vanishing_set, MuhError, PhaseVector, Result, Value, VanishingMode, DEFAULT_TOL,
};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::energy::{partial_energy, Num};
use crate::lift::check_columns;
use crate::set::{sub, ForcingSet};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Strategy {
    /// Threshold when `s·k = d²`, ranked otherwise.
    #[default]
    Auto,
    Threshold,
    Ranked,
}

impl std::str::FromStr for Strategy {
    type Err = MuhError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "auto" => Ok(Strategy::Auto),
            "threshold" => Ok(Strategy::Threshold),
            "ranked" => Ok(Strategy::Ranked),
            _ => Err(MuhError::InvalidArgument(format!("unknown strategy {s:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct SearchOptions {
    /// Inclusive coordinate bounds.
    pub lo: i64,
    pub hi: i64,
    pub strategy: Strategy,
    pub budget: Budget,
    pub max_results: usize,
    /// Keep every translate inside the box.
    pub translates: bool,
}

impl Default for SearchOptions {
    fn default() -> Self {
        Self {
            lo: 0,
            hi: 2,
            strategy: Strategy::Auto,
            budget: Budget::default(),
            max_results: 100,
            translates: false,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Candidate {
    pub vectors: Vec<Vec<i64>>,
    pub partial_energy: Num,
    pub reaches_threshold: bool,
    pub conditional: bool,
    #[serde(skip)]
    pub energy: Value,
}

#[derive(Clone, Debug, Serialize)]
pub struct ForcingSearchReport {
    pub dim: usize,
    pub size: usize,
    pub mode: VanishingMode,
    pub known_columns: usize,
    pub bounds: (i64, i64),
    pub strategy: Strategy,
    pub threshold: i64,
    /// Forcing sets found, before truncation to `results`.
    pub found: usize,
    pub threshold_hits: usize,
    pub results: Vec<Candidate>,
    pub nodes: u64,
    /// False when the budget cut the search short.
    pub exhaustive: bool,
}

const MAX_BOX: usize = 1 << 22;
const TURN_GRID: f64 = 1e9;

/// Character of `c^γ` as a hashable key: the exponent for exact columns, the
/// angle rounded to a `1e-9`-turn grid for numeric ones.
fn character_key(c: &PhaseVector, g: &[i64]) -> i64 {
    match c.phases() {
        Phases::Exact { .. } => c.character_exponent(g).unwrap() as i64,
        Phases::Numeric { .. } => {
            let t = c.character_turns(g, c.phases().prec()).to_f64();
            ((t - t.floor()) * TURN_GRID).round() as i64 % TURN_GRID as i64
        }
    }
}

fn box_points(d: usize, lo: i64, hi: i64) -> Result<Vec<Vec<i64>>> {
    let width = (hi - lo + 1).max(0) as usize;
    let total = (0..d).try_fold(1usize, |acc, _| acc.checked_mul(width));
    if hi < lo || total.is_none_or(|t| t > MAX_BOX) {
        return Err(MuhError::InvalidArgument(format!(
            "box [{lo},{hi}]^{d} is empty or too large"
        )));
    }
    let mut out = Vec::with_capacity(total.unwrap());
    let mut v = vec![lo; d];
    loop {
        out.push(v.clone());
        let mut i = d;
        loop {
            if i == 0 {
                return Ok(out);
            }
            i -= 1;
            if v[i] < hi {
                v[i] += 1;
                break;
            }
            v[i] = lo;
        }
    }
}

/// Forcing sets of size `s` in `[lo, hi]^d`, ranked by partial energy on `known`.
pub fn search_forcing_sets(
    d: usize,
    known: &[PhaseVector],
    s: usize,
    mode: VanishingMode,
    opts: &SearchOptions,
) -> Result<ForcingSearchReport> {
    if d == 0 || s == 0 {
        return Err(MuhError::InvalidArgument(
            "dimension and size must be positive".into(),
        ));
    }
    check_columns(known, &vec![0; d])?;
    let k = known.len();
    let strategy = match opts.strategy {
        Strategy::Auto if s * k == d * d => Strategy::Threshold,
        Strategy::Auto => Strategy::Ranked,
        Strategy::Threshold if s * k != d * d => {
            return Err(MuhError::InvalidArgument(format!(
                "threshold strategy needs s·k = d², got {s}·{k}"
            )))
        }
        other => other,
    };
    let points = box_points(d, opts.lo, opts.hi)?;
    let mut groups: BTreeMap<Vec<i64>, Vec<usize>> = BTreeMap::new();
    for (i, p) in points.iter().enumerate() {
        let mut key = vec![p.iter().sum::<i64>()];
        if strategy == Strategy::Threshold {
            key.extend(known.iter().map(|c| character_key(c, p)));
        }
        groups.entry(key).or_default().push(i);
    }
    let groups: Vec<Vec<usize>> = groups.into_values().filter(|g| g.len() >= s).collect();
    log::info!(
        "forcing search: {} points in {} groups",
        points.len(),
        groups.len()
    );
    let tracker = Tracker::new(opts.budget);
    let sets: Vec<Vec<Vec<i64>>> = groups
        .par_iter()
        .flat_map_iter(|members| {
            let graph = Graph::from_fn(members.len(), |a, b| {
                in_vanishing_set(&sub(&points[members[b]], &points[members[a]]), mode)
            });
            cliques(&graph, s, 1, &tracker)
                .into_iter()
                .map(|c| {
                    c.into_iter()
                        .map(|i| points[members[i]].clone())
                        .collect::<Vec<_>>()
                })
                .filter(|set: &Vec<Vec<i64>>| opts.translates || touches_corner(set, opts.lo))
                .collect::<Vec<_>>()
        })
        .collect();
    let threshold = (s * d * d) as i64;
    let mut results = sets
        .into_par_iter()
        .map(|vectors| {
            let energy = partial_energy(&vectors, known)?;
            let reaches_threshold = energy
                .sub(&energy.int_like(threshold))
                .real_sign(DEFAULT_TOL)
                .is_eq();
            let conditional = ForcingSet::new(vectors.clone(), mode)?.is_conditional();
            Ok(Candidate {
                partial_energy: (&energy).into(),
                vectors,
                reaches_threshold,
                conditional,
                energy,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    results.sort_by(|a, b| {
        b.partial_energy
            .approx
            .total_cmp(&a.partial_energy.approx)
            .then_with(|| a.vectors.cmp(&b.vectors))
    });
    let found = results.len();
    let threshold_hits = results.iter().filter(|c| c.reaches_threshold).count();
    results.truncate(opts.max_results);
    Ok(ForcingSearchReport {
        dim: d,
        size: s,
        mode,
        known_columns: k,
        bounds: (opts.lo, opts.hi),
        strategy,
        threshold,
        found,
        threshold_hits,
        results,
        nodes: tracker.nodes(),
        exhaustive: tracker.exhausted(),
    })
}

fn touches_corner(set: &[Vec<i64>], lo: i64) -> bool {
    let d = set[0].len();
    (0..d).all(|i| set.iter().map(|g| g[i]).min() == Some(lo))
}
