//! Energy accounting for `w = Σ_{γ∈Γ} v(γ)` against a known block of columns.
//!
//! The lifts in a forcing set are pairwise orthogonal and each has squared
//! norm `d²`, so `‖w‖² = |Γ|·d²`. When the known columns already carry all of
//! that, every other coordinate of `w` vanishes.

use std::cmp::Ordering;

use muh_core::{PhaseVector, Result, Value, DEFAULT_TOL};
use serde::Serialize;

use crate::lift::{check_columns, lift_coordinate, sum};
use crate::set::{Difference, ForcingSet};

/// A value as text plus a double-precision approximation of its real part.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Num {
    pub text: String,
    pub approx: f64,
}

impl From<&Value> for Num {
    fn from(v: &Value) -> Self {
        let text = match v.to_integer() {
            Some(n) => n.to_string(),
            None => v.to_string(),
        };
        Self {
            text,
            approx: v.re_f64(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Coordinate {
    pub column: usize,
    pub value: Num,
    pub modulus_sq: Num,
}

/// `Σ_{c∈known} |Σ_{γ∈Γ} c^γ|²`.
pub fn partial_energy(gamma: &[Vec<i64>], known: &[PhaseVector]) -> Result<Value> {
    Ok(sum(coordinates(gamma, known)?.into_iter().map(|(_, n)| n)))
}

fn coordinates(gamma: &[Vec<i64>], known: &[PhaseVector]) -> Result<Vec<(Value, Value)>> {
    for g in gamma {
        check_columns(known, g)?;
    }
    Ok(known
        .iter()
        .map(|c| {
            let w = lift_coordinate(c, gamma);
            let n = w.norm_sq();
            (w, n)
        })
        .collect())
}

/// `Σ_{γ∈Γ} z^γ = 0` on every column `z` outside the known block.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ForcedIdentity {
    pub gamma: Vec<Vec<i64>>,
    pub known_columns: usize,
    pub unknown_columns: usize,
    pub conditional: bool,
}

impl ForcedIdentity {
    pub fn statement(&self) -> String {
        let terms: Vec<String> = self.gamma.iter().map(|g| monomial(g)).collect();
        format!(
            "{} = 0 for every column z outside the known block",
            terms.join(" + ")
        )
    }

    pub fn evaluate(&self, z: &PhaseVector) -> Value {
        lift_coordinate(z, &self.gamma)
    }

    pub fn holds_on(&self, z: &PhaseVector) -> bool {
        self.evaluate(z).is_zero(DEFAULT_TOL)
    }
}

/// `z_1^2 z_3` style rendering of `z^γ`, 1-based; negative powers keep their sign.
pub fn monomial(g: &[i64]) -> String {
    let parts: Vec<String> = g
        .iter()
        .enumerate()
        .filter(|(_, &e)| e != 0)
        .map(|(i, &e)| match e {
            1 => format!("z_{}", i + 1),
            _ => format!("z_{}^{}", i + 1, e),
        })
        .collect();
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join(" ")
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Conclusion {
    Forced {
        identity: ForcedIdentity,
        statement: String,
    },
    NotForced,
    /// The known block carries more than the total energy, so it cannot sit
    /// inside a complete system.
    Inconsistent,
}

/// Every step of a forcing check.
#[derive(Clone, Debug, Serialize)]
pub struct ForcingCheck {
    pub vectors: Vec<Vec<i64>>,
    pub mode: muh_core::VanishingMode,
    pub conditional: bool,
    pub differences: Vec<Difference>,
    pub coordinates: Vec<Coordinate>,
    pub partial_energy: Num,
    pub total_energy: i64,
    pub conclusion: Conclusion,
    #[serde(skip)]
    pub partial: Value,
}

impl ForcingCheck {
    pub fn identity(&self) -> Option<&ForcedIdentity> {
        match &self.conclusion {
            Conclusion::Forced { identity, .. } => Some(identity),
            _ => None,
        }
    }
}

/// Compares the known block's share of `‖w‖²` with the total `|Γ|·d²`.
pub fn forcing_conclusion(
    set: &ForcingSet,
    known: &[PhaseVector],
    d: usize,
) -> Result<ForcingCheck> {
    if set.dim() != d {
        return Err(muh_core::MuhError::DimensionMismatch {
            expected: d,
            found: set.dim(),
        });
    }
    if known.len() > d * d {
        return Err(muh_core::MuhError::InvalidArgument(format!(
            "{} known columns exceed d² = {}",
            known.len(),
            d * d
        )));
    }
    let coords = coordinates(set.vectors(), known)?;
    let partial = sum(coords.iter().map(|(_, n)| n.clone()));
    let total = (set.len() * d * d) as i64;
    let conclusion = match partial.sub(&partial.int_like(total)).real_sign(DEFAULT_TOL) {
        Ordering::Equal => {
            let identity = ForcedIdentity {
                gamma: set.vectors().to_vec(),
                known_columns: known.len(),
                unknown_columns: d * d - known.len(),
                conditional: set.is_conditional(),
            };
            Conclusion::Forced {
                statement: identity.statement(),
                identity,
            }
        }
        Ordering::Less => Conclusion::NotForced,
        Ordering::Greater => Conclusion::Inconsistent,
    };
    log::debug!("forcing check: partial {partial}, total {total}");
    Ok(ForcingCheck {
        vectors: set.vectors().to_vec(),
        mode: set.mode(),
        conditional: set.is_conditional(),
        differences: set.differences(),
        coordinates: coords
            .iter()
            .enumerate()
            .map(|(column, (w, n))| Coordinate {
                column,
                value: w.into(),
                modulus_sq: n.into(),
            })
            .collect(),
        partial_energy: (&partial).into(),
        total_energy: total,
        conclusion,
        partial,
    })
}
