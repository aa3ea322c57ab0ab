//! Equivalence `H₁ = D₁P₁H₂P₂D₂` of exact matrices, decided by canonical
//! forms.
//!
//! Once the row and column that become the first ones are chosen, the
//! diagonal factors of a dephased representative are forced. The canonical
//! form is therefore the minimum, over that choice and over permutations of
//! the remaining columns, of the dephased exponent matrix with its rows
//! sorted (sorting rows is the minimum over row permutations).

use std::collections::BTreeSet;

use crate::cyclotomic::gcd;
use crate::error::{MuhError, Result};
use crate::matrix::PhaseMatrix;

/// Largest dimension for which canonical forms are computed.
pub const MAX_CANONICAL_DIM: usize = 9;

#[derive(
    Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, serde::Serialize, serde::Deserialize,
)]
pub struct CanonicalForm {
    /// Smallest root order the dephased representative needs.
    pub order: u32,
    pub dim: usize,
    /// Row-major exponents of the representative.
    pub exps: Vec<u32>,
}

impl CanonicalForm {
    pub fn to_matrix(&self) -> PhaseMatrix {
        let rows: Vec<Vec<i64>> = self
            .exps
            .chunks(self.dim)
            .map(|r| r.iter().map(|&e| e as i64).collect())
            .collect();
        PhaseMatrix::from_exponents(self.order, &rows).expect("square")
    }
}

/// Advances `p` to the next permutation in lexicographic order.
pub fn next_permutation<T: Ord>(p: &mut [T]) -> bool {
    if p.len() < 2 {
        return false;
    }
    let mut i = p.len() - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        p.reverse();
        return false;
    }
    let mut j = p.len() - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

fn exact_rows(m: &PhaseMatrix) -> Result<(u32, Vec<Vec<u32>>)> {
    let q = m.order().ok_or(MuhError::ExactRequired)?;
    if m.dim() > MAX_CANONICAL_DIM {
        return Err(MuhError::InvalidArgument(format!(
            "canonical forms are limited to dimension {MAX_CANONICAL_DIM}"
        )));
    }
    Ok((q, m.exponent_rows().expect("exact")))
}

/// Dephased exponents with row `r0` and column `c0` moved to the front.
fn dephase_at(q: u32, e: &[Vec<u32>], r0: usize, c0: usize) -> Vec<Vec<u32>> {
    let d = e.len();
    let rows = std::iter::once(r0).chain((0..d).filter(|&j| j != r0));
    let cols: Vec<usize> = std::iter::once(c0)
        .chain((0..d).filter(|&k| k != c0))
        .collect();
    rows.map(|j| {
        cols.iter()
            .map(|&k| {
                let v = e[j][k] as i64 - e[r0][k] as i64 - e[j][c0] as i64 + e[r0][c0] as i64;
                v.rem_euclid(q as i64) as u32
            })
            .collect()
    })
    .collect()
}

/// Calls `visit` with the row-sorted flattening of every column arrangement
/// of `base` that keeps column 0 in place.
fn for_each_arrangement(base: &[Vec<u32>], mut visit: impl FnMut(&[u32])) {
    let d = base.len();
    let mut perm: Vec<usize> = (1..d).collect();
    let mut rows: Vec<Vec<u32>> = vec![vec![0; d]; d];
    let mut flat = Vec::with_capacity(d * d);
    loop {
        for (j, r) in rows.iter_mut().enumerate() {
            r[0] = base[j][0];
            for (t, &k) in perm.iter().enumerate() {
                r[t + 1] = base[j][k];
            }
        }
        rows.sort_unstable();
        flat.clear();
        for r in &rows {
            flat.extend_from_slice(r);
        }
        visit(&flat);
        if !next_permutation(&mut perm) {
            break;
        }
    }
}

pub fn canonical_form(m: &PhaseMatrix) -> Result<CanonicalForm> {
    let (q, e) = exact_rows(m)?;
    let d = m.dim();
    let mut best: Option<CanonicalForm> = None;
    for r0 in 0..d {
        for c0 in 0..d {
            let mut base = dephase_at(q, &e, r0, c0);
            let g = base
                .iter()
                .flatten()
                .fold(q as u64, |acc, &x| gcd(acc, x as u64)) as u32;
            let order = q / g;
            for v in base.iter_mut().flatten() {
                *v /= g;
            }
            if best.as_ref().is_some_and(|b| b.order < order) {
                continue;
            }
            if best.as_ref().is_some_and(|b| b.order > order) {
                best = None;
            }
            for_each_arrangement(&base, |flat| {
                let better = match &best {
                    None => true,
                    Some(b) => flat < b.exps.as_slice(),
                };
                if better {
                    best = Some(CanonicalForm {
                        order,
                        dim: d,
                        exps: flat.to_vec(),
                    });
                }
            });
        }
    }
    Ok(best.expect("at least one arrangement"))
}

pub fn equivalent(a: &PhaseMatrix, b: &PhaseMatrix) -> Result<bool> {
    if a.dim() != b.dim() {
        return Err(MuhError::DimensionMismatch {
            expected: a.dim(),
            found: b.dim(),
        });
    }
    Ok(canonical_form(a)? == canonical_form(b)?)
}

/// All dephased, row-sorted exponent matrices equivalent to `m`, over the
/// root order of `m`. Each stands for `(d-1)!` dephased matrices that
/// differ only in the order of rows after the first.
pub fn dephased_orbit(m: &PhaseMatrix) -> Result<BTreeSet<Vec<u32>>> {
    let (q, e) = exact_rows(m)?;
    let d = m.dim();
    let mut out = BTreeSet::new();
    for r0 in 0..d {
        for c0 in 0..d {
            let base = dephase_at(q, &e, r0, c0);
            for_each_arrangement(&base, |flat| {
                out.insert(flat.to_vec());
            });
        }
    }
    Ok(out)
}
