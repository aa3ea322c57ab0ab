//! Monomial relations from pairs of forced identities, and the search for a
//! pair of lifts that would have to be orthogonal but is not.

use std::collections::BTreeMap;

use muh_core::vanishing::is_conjecture_type;
use muh_core::{in_vanishing_set, MuhError, PhaseVector, Result, VanishingMode, DEFAULT_TOL};
use serde::Serialize;

use crate::energy::{monomial, ForcedIdentity, Num};
use crate::lift::{check_columns, lift_coordinate};
use crate::set::sub;

/// `z^δ = 1` on every column outside the known block.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MonomialRelation {
    pub delta: Vec<i64>,
    pub unknown_columns: usize,
    pub conditional: bool,
    pub statement: String,
}

impl MonomialRelation {
    fn new(delta: Vec<i64>, unknown_columns: usize, conditional: bool) -> Self {
        let pos: Vec<i64> = delta.iter().map(|&x| x.max(0)).collect();
        let neg: Vec<i64> = delta.iter().map(|&x| (-x).max(0)).collect();
        Self {
            statement: format!("{} = {}", monomial(&pos), monomial(&neg)),
            delta,
            unknown_columns,
            conditional,
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.delta.iter().all(|&x| x == 0)
    }

    pub fn holds_on(&self, z: &PhaseVector) -> bool {
        lift_coordinate(z, std::slice::from_ref(&self.delta))
            .sub(&lift_coordinate(z, &[vec![0; self.delta.len()]]))
            .is_zero(DEFAULT_TOL)
    }
}

fn multiset(v: &[Vec<i64>]) -> BTreeMap<&Vec<i64>, i64> {
    let mut m = BTreeMap::new();
    for g in v {
        *m.entry(g).or_insert(0) += 1;
    }
    m
}

/// Subtracts two forced identities whose sets differ in one vector each.
///
/// With `Γ₁ = Γ ∪ {γ}` and `Γ₂ = Γ ∪ {γ'}` the difference of the identities
/// is `z^γ = z^γ'`, that is `z^{γ−γ'} = 1`. Identical sets give `δ = 0`.
pub fn difference_identities(a: &ForcedIdentity, b: &ForcedIdentity) -> Result<MonomialRelation> {
    if a.unknown_columns != b.unknown_columns || a.known_columns != b.known_columns {
        return Err(MuhError::InvalidArgument(
            "identities refer to different known blocks".into(),
        ));
    }
    let d = a.gamma.first().map_or(0, Vec::len);
    if a.gamma.iter().chain(&b.gamma).any(|g| g.len() != d) {
        return Err(MuhError::InvalidArgument(
            "vectors of different lengths".into(),
        ));
    }
    let (ma, mb) = (multiset(&a.gamma), multiset(&b.gamma));
    let only = |x: &BTreeMap<&Vec<i64>, i64>, y: &BTreeMap<&Vec<i64>, i64>| -> Vec<Vec<i64>> {
        let mut out = Vec::new();
        for (g, &n) in x {
            for _ in 0..(n - y.get(g).copied().unwrap_or(0)).max(0) {
                out.push((*g).clone());
            }
        }
        out
    };
    let (ra, rb) = (only(&ma, &mb), only(&mb, &ma));
    let conditional = a.conditional || b.conditional;
    match (ra.as_slice(), rb.as_slice()) {
        ([], []) => Ok(MonomialRelation::new(
            vec![0; d],
            a.unknown_columns,
            conditional,
        )),
        ([g], [h]) => Ok(MonomialRelation::new(
            sub(g, h),
            a.unknown_columns,
            conditional,
        )),
        _ => Err(MuhError::InvalidArgument(format!(
            "sets differ in {} and {} vectors, expected one each",
            ra.len(),
            rb.len()
        ))),
    }
}

/// One combination of relations giving `z^{ρ1} = z^{ρ2}` on unknown columns.
#[derive(Clone, Debug, Serialize)]
pub struct Combination {
    pub relations: Vec<usize>,
    pub rho1: Vec<i64>,
    pub rho2: Vec<i64>,
    /// `ρ2 − ρ1`.
    pub delta: Vec<i64>,
    pub member: bool,
    pub conjectural: bool,
    /// `g_known(δ)`, when `δ` is a member.
    pub g_known: Option<Num>,
    /// `⟨v(ρ1), v(ρ2)⟩ = g_known(δ) + #unknown`, when `δ` is a member.
    pub inner: Option<Num>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Verdict {
    /// Combination `step` forces a nonzero value where `f` must vanish.
    Contradiction {
        step: usize,
        conditional: bool,
    },
    /// Every combination in the vanishing set evaluated to zero.
    Consistent {
        checked: usize,
    },
    Inconclusive {
        reason: String,
    },
}

#[derive(Clone, Debug, Serialize)]
pub struct ContradictionReport {
    pub unknown_columns: usize,
    pub steps: Vec<Combination>,
    pub verdict: Verdict,
}

impl ContradictionReport {
    pub fn contradiction(&self) -> Option<&Combination> {
        match self.verdict {
            Verdict::Contradiction { step, .. } => Some(&self.steps[step]),
            _ => None,
        }
    }
}

fn neg(a: &[i64]) -> Vec<i64> {
    a.iter().map(|x| -x).collect()
}

/// Tries each relation and each sum and difference of two relations.
///
/// Two relations `z^{δ_a} = 1 = z^{δ_b}` give `z^{δ_a} = z^{δ_b}`, so the
/// lifts `v(δ_a)` and `v(δ_b)` agree on every unknown column and their inner
/// product is `g_known(δ_b − δ_a) + #unknown`. If `δ_b − δ_a` lies in the
/// vanishing set that product is `f(δ_b − δ_a)` and must be zero.
pub fn derive_contradiction(
    relations: &[MonomialRelation],
    known: &[PhaseVector],
    d: usize,
    mode: VanishingMode,
) -> Result<ContradictionReport> {
    let Some(first) = relations.first() else {
        return Ok(ContradictionReport {
            unknown_columns: d * d - known.len().min(d * d),
            steps: Vec::new(),
            verdict: Verdict::Inconclusive {
                reason: "no relations".into(),
            },
        });
    };
    let unknown = first.unknown_columns;
    if relations
        .iter()
        .any(|r| r.unknown_columns != unknown || r.delta.len() != d)
    {
        return Err(MuhError::InvalidArgument(
            "relations refer to different column sets".into(),
        ));
    }
    if known.len() + unknown != d * d {
        return Err(MuhError::InvalidArgument(format!(
            "{} known and {unknown} unknown columns do not make d² = {}",
            known.len(),
            d * d
        )));
    }
    check_columns(known, &first.delta)?;
    let zero = vec![0; d];
    let mut cands: Vec<(Vec<usize>, Vec<i64>, Vec<i64>)> = Vec::new();
    for (i, r) in relations.iter().enumerate() {
        cands.push((vec![i], zero.clone(), r.delta.clone()));
    }
    for i in 0..relations.len() {
        for j in i + 1..relations.len() {
            let (a, b) = (&relations[i].delta, &relations[j].delta);
            cands.push((vec![i, j], a.clone(), b.clone()));
            cands.push((vec![i, j], neg(a), b.clone()));
        }
    }
    let mut steps = Vec::new();
    let mut hit = None;
    let mut checked = 0;
    for (rels, rho1, rho2) in cands {
        let delta = sub(&rho2, &rho1);
        if delta == zero {
            continue;
        }
        let plain = in_vanishing_set(&delta, VanishingMode::Plain);
        let member = plain || in_vanishing_set(&delta, mode);
        let conjectural = member && !plain && is_conjecture_type(&delta);
        let (mut g_known, mut inner) = (None, None);
        if member {
            checked += 1;
            let g = crate::lift::sum(
                known
                    .iter()
                    .map(|c| lift_coordinate(c, std::slice::from_ref(&delta))),
            );
            let ip = g.add(&g.int_like(unknown as i64));
            if hit.is_none() && !ip.is_zero(DEFAULT_TOL) {
                let conditional = conjectural || rels.iter().any(|&r| relations[r].conditional);
                hit = Some((steps.len(), conditional));
            }
            g_known = Some((&g).into());
            inner = Some((&ip).into());
        }
        steps.push(Combination {
            relations: rels,
            rho1,
            rho2,
            delta,
            member,
            conjectural,
            g_known,
            inner,
        });
    }
    let verdict = match hit {
        Some((step, conditional)) => Verdict::Contradiction { step, conditional },
        None if checked > 0 => Verdict::Consistent { checked },
        None => Verdict::Inconclusive {
            reason: "no combination lies in the vanishing set".into(),
        },
    };
    Ok(ContradictionReport {
        unknown_columns: unknown,
        steps,
        verdict,
    })
}
