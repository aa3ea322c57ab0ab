//! Complete systems of mutually unbiased Butson matrices.
//!
//! A complete system may be transformed by a common left monomial matrix
//! and by a separate right monomial matrix per member without losing
//! unbiasedness. So `H_1` can be taken to be any representative of its
//! class, and every other member to have a zero first row with unordered
//! columns. Each such member is a set of `d` pairwise orthogonal columns
//! drawn from the rows `v` with `v_0 = 0` that are unbiased to every column
//! of `H_1`; the search looks for `d − 1` of those sets that are pairwise
//! unbiased.

use muh_core::{MuhSystem, PhaseMatrix, Result};
use serde::Serialize;

use crate::clique::{cliques, Budget, Graph, Tracker};
use crate::enumerate::{enumerate_bh, rows_to_matrix, EnumerateOptions};
use crate::roots::{for_each_normalized_row, RootSums, Row};

/// The unbiasedness graph among candidate members for one choice of `H_1`.
#[derive(Clone, Debug)]
pub struct UnbiasednessGraph {
    /// Each member as `d` column exponent vectors in increasing order.
    pub members: Vec<Vec<Row>>,
    pub graph: Graph,
}

#[derive(Clone, Debug, Serialize)]
pub struct AnchorSummary {
    /// Row-major exponents of `H_1` over the search order.
    pub anchor: Vec<Vec<u8>>,
    pub candidate_columns: usize,
    pub candidate_members: usize,
    pub unbiased_pairs: usize,
    pub systems: usize,
}

#[derive(Clone, Debug)]
pub struct MuhSearchReport {
    pub dim: usize,
    pub order: usize,
    pub anchors: Vec<AnchorSummary>,
    pub systems: Vec<MuhSystem>,
    pub nodes: u64,
    /// False when a budget cut the search short; an empty result then proves nothing.
    pub exhaustive: bool,
}

#[derive(Clone, Copy, Debug)]
pub struct SearchOptions {
    pub budget: Budget,
    pub split_depth: usize,
    /// Stop after this many systems; the report is then not exhaustive.
    pub max_systems: Option<usize>,
}

impl Default for SearchOptions {
    fn default() -> Self {
        Self {
            budget: Budget::default(),
            split_depth: 1,
            max_systems: None,
        }
    }
}

fn columns(rows: &[Row]) -> Vec<Row> {
    let d = rows.len();
    (0..d)
        .map(|k| rows.iter().map(|r| r[k]).collect())
        .collect()
}

/// Builds the members unbiased to `anchor` and their unbiasedness graph.
pub fn unbiasedness_graph(
    anchor: &[Row],
    q: usize,
    split_depth: usize,
    t: &Tracker,
) -> UnbiasednessGraph {
    let d = anchor.len();
    let cols = columns(anchor);
    let mut sums = RootSums::new(q, d);
    let mut cand: Vec<Row> = Vec::new();
    for_each_normalized_row(d, q, |v| {
        if cols.iter().all(|c| sums.unbiased(c, v)) {
            cand.push(v.to_vec());
        }
    });
    let orth = Graph::from_fn(cand.len(), |i, j| sums.orthogonal(&cand[i], &cand[j]));
    let n = cand.len();
    let unb: Vec<Vec<bool>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| i != j && sums.unbiased(&cand[i], &cand[j]))
                .collect()
        })
        .collect();
    let sets = cliques(&orth, d, split_depth, t);
    let graph = Graph::from_fn(sets.len(), |a, b| {
        sets[a].iter().all(|&i| sets[b].iter().all(|&j| unb[i][j]))
    });
    let members = sets
        .into_iter()
        .map(|s| s.into_iter().map(|i| cand[i].clone()).collect())
        .collect();
    UnbiasednessGraph { members, graph }
}

/// Member given by its columns, as a matrix.
pub fn member_matrix(q: usize, cols: &[Row]) -> Result<PhaseMatrix> {
    rows_to_matrix(q, &columns(cols))
}

/// Searches every class of `BH(d, q)` as `H_1` for complete systems.
pub fn search_complete_muh_over_bh(
    d: usize,
    q: usize,
    opts: &SearchOptions,
) -> Result<MuhSearchReport> {
    let enumeration = enumerate_bh(
        d,
        q,
        &EnumerateOptions {
            up_to_equivalence: true,
            budget: opts.budget,
            split_depth: opts.split_depth,
        },
    )?;
    let mut report = MuhSearchReport {
        dim: d,
        order: q,
        anchors: Vec::new(),
        systems: Vec::new(),
        nodes: enumeration.nodes,
        exhaustive: enumeration.exhaustive,
    };
    if !enumeration.exhaustive {
        return Ok(report);
    }
    let tracker = Tracker::new(Budget {
        max_nodes: opts
            .budget
            .max_nodes
            .map(|n| n.saturating_sub(enumeration.nodes)),
        max_time: opts.budget.max_time,
    });
    for class in &enumeration.classes {
        let lifted = class.canonical.to_matrix().lift(q as u32);
        let anchor: Vec<Row> = lifted
            .exponent_rows()
            .expect("exact")
            .into_iter()
            .map(|r| r.into_iter().map(|e| e as u8).collect())
            .collect();
        let ug = unbiasedness_graph(&anchor, q, opts.split_depth, &tracker);
        let found = if d == 1 {
            Vec::new()
        } else {
            cliques(&ug.graph, d - 1, opts.split_depth, &tracker)
        };
        let unbiased_pairs = (0..ug.graph.len())
            .map(|i| ug.graph.degree(i))
            .sum::<usize>()
            / 2;
        report.anchors.push(AnchorSummary {
            anchor: anchor.clone(),
            candidate_columns: ug
                .members
                .iter()
                .flatten()
                .collect::<std::collections::BTreeSet<_>>()
                .len(),
            candidate_members: ug.members.len(),
            unbiased_pairs,
            systems: found.len(),
        });
        for c in found {
            let mut mats = vec![lifted.clone()];
            for i in c {
                mats.push(member_matrix(q, &ug.members[i])?);
            }
            report.systems.push(MuhSystem::new(mats)?);
            if opts.max_systems.is_some_and(|m| report.systems.len() >= m) {
                break;
            }
        }
        if opts.max_systems.is_some_and(|m| report.systems.len() >= m) {
            break;
        }
    }
    let truncated = opts.max_systems.is_some_and(|m| report.systems.len() >= m);
    report.nodes += tracker.nodes();
    report.exhaustive = tracker.exhausted() && !truncated;
    Ok(report)
}
