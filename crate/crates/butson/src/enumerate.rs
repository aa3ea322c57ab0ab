//! Dephased Butson Hadamard matrices `BH(d, q)` by row-wise backtracking.
//!
//! A dephased matrix has an all-zero first row and first column of
//! exponents. Its remaining rows are pairwise orthogonal rows orthogonal to
//! the zero row, so dephased matrices with rows in increasing order are the
//! `(d−1)`-cliques of the orthogonality graph on such rows.

use std::collections::BTreeSet;

use muh_core::equivalence::dephased_orbit;
use muh_core::{canonical_form, CanonicalForm, MuhError, PhaseMatrix, Result};
use serde::Serialize;

use crate::clique::{cliques, Budget, Graph, Tracker};
use crate::roots::{for_each_normalized_row, RootSums, Row};

/// A normalized prefix of exponent rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ButsonSearchNode {
    dim: usize,
    order: usize,
    rows: Vec<Row>,
}

impl ButsonSearchNode {
    /// Prefix holding only the zero row.
    pub fn root(dim: usize, order: usize) -> Self {
        Self {
            dim,
            order,
            rows: vec![vec![0; dim]],
        }
    }

    /// Validates the prefix: zero first row, zero first exponents, orthogonal rows.
    pub fn new(dim: usize, order: usize, rows: Vec<Row>) -> Result<Self> {
        check_params(dim, order)?;
        if rows.is_empty() {
            return Ok(Self::root(dim, order));
        }
        if rows.len() > dim {
            return Err(MuhError::InvalidArgument(
                "prefix longer than the dimension".into(),
            ));
        }
        for (j, r) in rows.iter().enumerate() {
            if r.len() != dim || r.iter().any(|&e| e as usize >= order) {
                return Err(MuhError::InvalidArgument(format!(
                    "row {j} is not a row over Z_{order}"
                )));
            }
            if r[0] != 0 {
                return Err(MuhError::InvalidArgument(format!(
                    "row {j} is not normalized"
                )));
            }
        }
        if rows[0].iter().any(|&e| e != 0) {
            return Err(MuhError::InvalidArgument(
                "first row is not the zero row".into(),
            ));
        }
        let mut sums = RootSums::new(order, dim);
        for a in 0..rows.len() {
            for b in a + 1..rows.len() {
                if !sums.orthogonal(&rows[a], &rows[b]) {
                    return Err(MuhError::InvalidArgument(format!(
                        "rows {a} and {b} are not orthogonal"
                    )));
                }
            }
        }
        Ok(Self { dim, order, rows })
    }

    pub fn rows(&self) -> &[Row] {
        &self.rows
    }

    /// Rows orthogonal to every prefix row, in lexicographic order.
    pub fn candidates(&self) -> Vec<Row> {
        let mut sums = RootSums::new(self.order, self.dim);
        let mut out = Vec::new();
        for_each_normalized_row(self.dim, self.order, |v| {
            if self.rows.iter().all(|r| sums.orthogonal(r, v)) {
                out.push(v.to_vec());
            }
        });
        out
    }
}

fn check_params(d: usize, q: usize) -> Result<()> {
    if d == 0 || q == 0 || q > 255 {
        return Err(MuhError::InvalidArgument(format!(
            "unsupported BH({d},{q})"
        )));
    }
    Ok(())
}

/// Rows orthogonal to every row of `prefix`; an empty prefix means the zero row.
pub fn orthogonal_row_candidates(prefix: &[Row], d: usize, q: usize) -> Result<Vec<Row>> {
    Ok(ButsonSearchNode::new(d, q, prefix.to_vec())?.candidates())
}

pub fn rows_to_matrix(q: usize, rows: &[Row]) -> Result<PhaseMatrix> {
    let rows: Vec<Vec<i64>> = rows
        .iter()
        .map(|r| r.iter().map(|&e| e as i64).collect())
        .collect();
    PhaseMatrix::from_exponents(q as u32, &rows)
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassSummary {
    pub canonical: CanonicalForm,
    /// Row-sorted dephased matrices in the class.
    pub orbit_size: usize,
}

#[derive(Clone, Debug)]
pub struct BhEnumeration {
    pub dim: usize,
    pub order: usize,
    /// Row-sorted dephased matrices, each as `d` exponent rows.
    pub matrices: Vec<Vec<Row>>,
    /// Equivalence classes, filled when requested.
    pub classes: Vec<ClassSummary>,
    pub nodes: u64,
    pub exhaustive: bool,
}

impl BhEnumeration {
    pub fn class_matrices(&self) -> Vec<PhaseMatrix> {
        self.classes
            .iter()
            .map(|c| c.canonical.to_matrix())
            .collect()
    }

    pub fn dephased_matrices(&self) -> Result<Vec<PhaseMatrix>> {
        self.matrices
            .iter()
            .map(|m| rows_to_matrix(self.order, m))
            .collect()
    }
}

#[derive(Clone, Copy, Debug)]
pub struct EnumerateOptions {
    pub up_to_equivalence: bool,
    pub budget: Budget,
    /// Prefix depth at which the search splits into parallel subtrees.
    pub split_depth: usize,
}

impl Default for EnumerateOptions {
    fn default() -> Self {
        Self {
            up_to_equivalence: true,
            budget: Budget::default(),
            split_depth: 1,
        }
    }
}

/// All row-sorted dephased `BH(d, q)`, optionally grouped into classes.
pub fn enumerate_bh(d: usize, q: usize, opts: &EnumerateOptions) -> Result<BhEnumeration> {
    check_params(d, q)?;
    let tracker = Tracker::new(opts.budget);
    let root = ButsonSearchNode::root(d, q);
    let cand = root.candidates();
    let mut sums = RootSums::new(q, d);
    let graph = Graph::from_fn(cand.len(), |i, j| sums.orthogonal(&cand[i], &cand[j]));
    let found = if d == 1 {
        vec![Vec::new()]
    } else {
        cliques(&graph, d - 1, opts.split_depth, &tracker)
    };
    let matrices: Vec<Vec<Row>> = found
        .into_iter()
        .map(|c| {
            let mut rows = vec![vec![0u8; d]];
            rows.extend(c.into_iter().map(|i| cand[i].clone()));
            rows
        })
        .collect();
    log::info!(
        "BH({d},{q}): {} candidate rows, {} dephased matrices",
        cand.len(),
        matrices.len()
    );
    let mut classes = Vec::new();
    if opts.up_to_equivalence {
        let mut seen = BTreeSet::new();
        for m in &matrices {
            seen.insert(canonical_form(&rows_to_matrix(q, m)?)?);
        }
        for canonical in seen {
            let orbit_size = dephased_orbit(&canonical.to_matrix())?.len();
            classes.push(ClassSummary {
                canonical,
                orbit_size,
            });
        }
    }
    Ok(BhEnumeration {
        dim: d,
        order: q,
        matrices,
        classes,
        nodes: tracker.nodes(),
        exhaustive: tracker.exhausted(),
    })
}
