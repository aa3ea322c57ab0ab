//! The generic pipeline (forcing checks, relations, contradiction search) and
//! its two named instances.

use muh_core::{fourier_matrix, MuhSystem, PhaseMatrix, PhaseVector, Result, VanishingMode};
use serde::Serialize;

use crate::energy::{forcing_conclusion, ForcingCheck};
use crate::noreal::{verify_theorem_noreal, NoRealReport};
use crate::relations::{
    derive_contradiction, difference_identities, ContradictionReport, MonomialRelation,
};
use crate::set::ForcingSet;

/// Six vectors whose lifts carry the full energy `216` on the columns of `F_6`.
pub fn six_vector_set() -> Vec<Vec<i64>> {
    vec![
        vec![1, 1, 1, 0, 0, 1],
        vec![0, 0, 1, 1, 1, 1],
        vec![1, 1, 0, 1, 1, 0],
        vec![0, 1, 0, 1, 0, 2],
        vec![1, 0, 0, 0, 1, 2],
        vec![0, 1, 0, 0, 2, 1],
    ]
}

/// The same set with its last vector replaced by `(2,0,0,1,0,1)`.
pub fn six_vector_alternative() -> Vec<Vec<i64>> {
    let mut v = six_vector_set();
    v[5] = vec![2, 0, 0, 1, 0, 1];
    v
}

/// A relation with the indices of the two sets it came from.
#[derive(Clone, Debug, Serialize)]
pub struct DerivedRelation {
    pub sets: (usize, usize),
    pub relation: MonomialRelation,
}

#[derive(Clone, Debug, Serialize)]
pub struct PipelineReport {
    pub dim: usize,
    pub mode: VanishingMode,
    pub known_columns: usize,
    pub checks: Vec<ForcingCheck>,
    pub relations: Vec<DerivedRelation>,
    pub contradiction: ContradictionReport,
    /// Some step relied on a conjectural member of the vanishing set.
    pub conditional: bool,
}

/// Checks every set, differences each pair of forced identities that differ
/// in one vector, and searches the relations for a contradiction.
pub fn run_pipeline(
    sets: &[ForcingSet],
    known: &[PhaseVector],
    d: usize,
    mode: VanishingMode,
) -> Result<PipelineReport> {
    let checks = sets
        .iter()
        .map(|s| forcing_conclusion(s, known, d))
        .collect::<Result<Vec<_>>>()?;
    let mut relations: Vec<DerivedRelation> = Vec::new();
    for i in 0..checks.len() {
        for j in i + 1..checks.len() {
            let (Some(a), Some(b)) = (checks[i].identity(), checks[j].identity()) else {
                continue;
            };
            let Ok(r) = difference_identities(a, b) else {
                continue;
            };
            let dup = relations.iter().any(|x| {
                x.relation.delta == r.delta
                    || x.relation.delta.iter().zip(&r.delta).all(|(p, q)| *p == -q)
            });
            if !r.is_trivial() && !dup {
                relations.push(DerivedRelation {
                    sets: (i, j),
                    relation: r,
                });
            }
        }
    }
    let rels: Vec<MonomialRelation> = relations.iter().map(|r| r.relation.clone()).collect();
    let contradiction = derive_contradiction(&rels, known, d, mode)?;
    let conditional = checks.iter().any(|c| c.conditional)
        || rels.iter().any(|r| r.conditional)
        || matches!(
            contradiction.verdict,
            crate::relations::Verdict::Contradiction {
                conditional: true,
                ..
            }
        );
    Ok(PipelineReport {
        dim: d,
        mode,
        known_columns: known.len(),
        checks,
        relations,
        contradiction,
        conditional,
    })
}

/// The real-first-member check on a complete system.
pub fn no_real_preset(s: &MuhSystem) -> Result<NoRealReport> {
    verify_theorem_noreal(s)
}

/// Shows that `known` (by default `F_6`) cannot be a member of a complete
/// system in dimension 6: the six-vector set and its alternative, each with
/// the given cyclic shifts, are forced, their differences give monomial
/// relations, and two relations combine to a pair of lifts that must be
/// orthogonal but are not.
pub fn no_fourier6_preset(known: Option<&PhaseMatrix>, shifts: &[usize]) -> Result<PipelineReport> {
    let f6 = fourier_matrix(6);
    let known = known.unwrap_or(&f6);
    let base = ForcingSet::new(six_vector_set(), VanishingMode::Plain)?;
    let alt = ForcingSet::new(six_vector_alternative(), VanishingMode::Plain)?;
    let mut sets = Vec::new();
    for &s in shifts {
        sets.push(base.shifted(s));
        sets.push(alt.shifted(s));
    }
    run_pipeline(&sets, &known.columns(), 6, VanishingMode::Plain)
}

/// Shifts used by the default six-vector preset.
pub const DEFAULT_SHIFTS: [usize; 2] = [0, 3];
