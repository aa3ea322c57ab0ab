//! Complete systems whose first member is real.
//!
//! With `Γ = {2π_1, …, 2π_d}` every coordinate of `w` on a real column equals
//! `d`, so a real `H_1` carries the whole energy `d³` and every other column
//! satisfies `Σ_k v_k² = 0`. A `±1` column gives `d` instead, so no second
//! real column can occur.

use muh_core::{MuhError, MuhSystem, Result, VanishingMode, DEFAULT_TOL};
use serde::Serialize;

use crate::energy::{forcing_conclusion, ForcingCheck, Num};
use crate::lift::lift_coordinate;
use crate::set::ForcingSet;

/// `{2π_1, …, 2π_d}`.
pub fn doubled_units(d: usize) -> Vec<Vec<i64>> {
    (0..d)
        .map(|k| {
            let mut v = vec![0; d];
            v[k] = 2;
            v
        })
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct ColumnCheck {
    /// 0-based member index, at least 1.
    pub matrix: usize,
    pub column: usize,
    pub sum_of_squares: Num,
    pub vanishes: bool,
    pub real: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct NoRealReport {
    pub dim: usize,
    pub forcing: ForcingCheck,
    pub columns: Vec<ColumnCheck>,
    /// Columns where `Σ v_k² ≠ 0`, as `(matrix, column)`.
    pub violations: Vec<(usize, usize)>,
    /// Real columns outside `H_1`.
    pub real_columns: Vec<(usize, usize)>,
    pub holds: bool,
}

/// Checks `Σ_k v_k² = 0` on every column of `H_2, …, H_d`.
///
/// The system itself is not validated, so a fake system shows up through
/// its violations.
pub fn verify_theorem_noreal(s: &MuhSystem) -> Result<NoRealReport> {
    s.require_complete()?;
    let d = s.dim();
    let h1 = s.matrix(0);
    if !h1.columns().iter().all(|c| c.is_real(DEFAULT_TOL)) {
        return Err(MuhError::InvalidArgument("H_1 is not real".into()));
    }
    let gamma = doubled_units(d);
    let set = ForcingSet::new(gamma.clone(), VanishingMode::Plain)?;
    let forcing = forcing_conclusion(&set, &h1.columns(), d)?;
    let mut columns = Vec::new();
    for (j, m) in s.matrices().iter().enumerate().skip(1) {
        for (k, c) in m.columns().iter().enumerate() {
            let v = lift_coordinate(c, &gamma);
            columns.push(ColumnCheck {
                matrix: j,
                column: k,
                vanishes: v.is_zero(DEFAULT_TOL),
                real: c.is_real(DEFAULT_TOL),
                sum_of_squares: (&v).into(),
            });
        }
    }
    let violations: Vec<_> = columns
        .iter()
        .filter(|c| !c.vanishes)
        .map(|c| (c.matrix, c.column))
        .collect();
    let real_columns: Vec<_> = columns
        .iter()
        .filter(|c| c.real)
        .map(|c| (c.matrix, c.column))
        .collect();
    Ok(NoRealReport {
        dim: d,
        holds: violations.is_empty() && real_columns.is_empty() && forcing.identity().is_some(),
        forcing,
        columns,
        violations,
        real_columns,
    })
}
