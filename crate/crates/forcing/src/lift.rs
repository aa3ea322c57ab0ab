//! Lifts `v(γ) = (c^γ)_c` of exponent vectors to one coordinate per column.

use muh_core::{MuhError, MuhSystem, PhaseScalar, PhaseVector, Result, Value};

/// `v(γ)` over a fixed list of columns, usually all `d²` columns of a
/// complete system.
#[derive(Clone, Debug)]
pub struct ColumnLift {
    gamma: Vec<i64>,
    values: Vec<PhaseScalar>,
}

impl ColumnLift {
    pub fn new(s: &MuhSystem, gamma: &[i64]) -> Result<Self> {
        Self::of_columns(&s.columns(), gamma)
    }

    pub fn of_columns(cols: &[PhaseVector], gamma: &[i64]) -> Result<Self> {
        check_columns(cols, gamma)?;
        Ok(Self {
            gamma: gamma.to_vec(),
            values: cols.iter().map(|c| c.character(gamma)).collect(),
        })
    }

    pub fn gamma(&self) -> &[i64] {
        &self.gamma
    }

    pub fn values(&self) -> &[PhaseScalar] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// `‖v(γ)‖²`, which is the number of columns.
    pub fn norm_sq(&self) -> Value {
        sum(self.values.iter().map(|v| v.to_value().norm_sq()))
    }

    /// `⟨v(γ), v(γ')⟩ = Σ_c conj(c^γ) c^γ'`.
    pub fn inner(&self, other: &ColumnLift) -> Result<Value> {
        if self.len() != other.len() {
            return Err(MuhError::DimensionMismatch {
                expected: self.len(),
                found: other.len(),
            });
        }
        Ok(sum(self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a.conj().mul(b).to_value())))
    }
}

pub(crate) fn check_columns(cols: &[PhaseVector], gamma: &[i64]) -> Result<()> {
    for c in cols {
        if c.dim() != gamma.len() {
            return Err(MuhError::DimensionMismatch {
                expected: c.dim(),
                found: gamma.len(),
            });
        }
    }
    Ok(())
}

/// Sum of values; the empty sum is the exact integer 0.
pub(crate) fn sum(items: impl IntoIterator<Item = Value>) -> Value {
    let mut it = items.into_iter();
    let Some(first) = it.next() else {
        return Value::Exact(muh_core::CyclotomicInteger::from_int(1, 0));
    };
    it.fold(first, |acc, v| acc.add(&v))
}

/// Coordinate of `w = Σ_{γ∈Γ} v(γ)` at column `c`: `Σ_γ c^γ`.
pub fn lift_coordinate(c: &PhaseVector, gamma: &[Vec<i64>]) -> Value {
    sum(gamma.iter().map(|g| c.character(g).to_value()))
}
