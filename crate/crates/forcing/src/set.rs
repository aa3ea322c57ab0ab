//! Sets of exponent vectors whose lifts are pairwise orthogonal.

use std::collections::BTreeSet;

use muh_core::vanishing::is_conjecture_type;
use muh_core::{in_vanishing_set, MuhError, Result, VanishingMode};
use serde::Serialize;

/// One pairwise difference `γ_l − γ_k` and its membership in the vanishing set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Difference {
    pub k: usize,
    pub l: usize,
    pub delta: Vec<i64>,
    pub member: bool,
    /// Member only through the conjectural `(1,1,1,−1,−1,−1)` type.
    pub conjectural: bool,
}

/// Every pairwise difference with its membership, for `k < l`.
pub fn differences(gamma: &[Vec<i64>], mode: VanishingMode) -> Vec<Difference> {
    let mut out = Vec::new();
    for k in 0..gamma.len() {
        for l in k + 1..gamma.len() {
            let delta = sub(&gamma[l], &gamma[k]);
            let plain = in_vanishing_set(&delta, VanishingMode::Plain);
            let member = plain || in_vanishing_set(&delta, mode);
            out.push(Difference {
                k,
                l,
                conjectural: member && !plain && is_conjecture_type(&delta),
                delta,
                member,
            });
        }
    }
    out
}

/// True iff every pairwise difference lies in the vanishing set of `mode`.
///
/// Vectors of unequal length or repeated vectors make the answer false.
pub fn check_forcing_set(gamma: &[Vec<i64>], mode: VanishingMode) -> bool {
    let Some(first) = gamma.first() else {
        return true;
    };
    if gamma.iter().any(|g| g.len() != first.len()) {
        return false;
    }
    differences(gamma, mode).iter().all(|d| d.member)
}

pub(crate) fn sub(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// A validated forcing set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ForcingSet {
    vectors: Vec<Vec<i64>>,
    mode: VanishingMode,
    conditional: bool,
}

impl ForcingSet {
    pub fn new(vectors: Vec<Vec<i64>>, mode: VanishingMode) -> Result<Self> {
        let first = vectors
            .first()
            .ok_or_else(|| MuhError::InvalidArgument("empty forcing set".into()))?;
        let d = first.len();
        if vectors.iter().any(|g| g.len() != d) {
            return Err(MuhError::InvalidArgument(
                "vectors of different lengths".into(),
            ));
        }
        if vectors.iter().collect::<BTreeSet<_>>().len() != vectors.len() {
            return Err(MuhError::InvalidArgument("repeated vector".into()));
        }
        let diffs = differences(&vectors, mode);
        if let Some(bad) = diffs.iter().find(|x| !x.member) {
            return Err(MuhError::InvalidArgument(format!(
                "γ_{} − γ_{} = {:?} is not in the vanishing set",
                bad.l + 1,
                bad.k + 1,
                bad.delta
            )));
        }
        Ok(Self {
            conditional: diffs.iter().any(|x| x.conjectural),
            vectors,
            mode,
        })
    }

    pub fn vectors(&self) -> &[Vec<i64>] {
        &self.vectors
    }

    pub fn mode(&self) -> VanishingMode {
        self.mode
    }

    pub fn dim(&self) -> usize {
        self.vectors[0].len()
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    /// Whether some difference is a conjectural member.
    pub fn is_conditional(&self) -> bool {
        self.conditional
    }

    pub fn differences(&self) -> Vec<Difference> {
        differences(&self.vectors, self.mode)
    }

    /// Every vector cyclically shifted by `s` coordinates.
    pub fn shifted(&self, s: usize) -> Self {
        let d = self.dim();
        let vectors = self
            .vectors
            .iter()
            .map(|g| {
                let mut v = vec![0; d];
                for (i, &x) in g.iter().enumerate() {
                    v[(i + s) % d] = x;
                }
                v
            })
            .collect();
        // Differences are shifted too, and the vanishing set is permutation invariant.
        Self {
            vectors,
            mode: self.mode,
            conditional: self.conditional,
        }
    }
}
