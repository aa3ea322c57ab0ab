//! Windowed linear programs over orbit variables `F(o)` and `G(o)`.
//!
//! Constraints are included only when every vector they reference lies in
//! the cube `[−R, R]^d`, so each program is a relaxation of the true
//! constraint system restricted to the window.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{LpError, Result};
use crate::orbit::{for_each_multiset, OrbitIndex};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Relation {
    #[serde(rename = "=")]
    Eq,
    #[serde(rename = "<=")]
    Le,
    #[serde(rename = ">=")]
    Ge,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum VarKind {
    F,
    G,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LpMode {
    /// `G_1` of a single matrix.
    GOnly,
    /// `F` and `G` of a complete system.
    Full,
}

impl LpMode {
    pub fn name(self) -> &'static str {
        match self {
            LpMode::GOnly => "g_only",
            LpMode::Full => "full",
        }
    }

    /// Largest value the objective kind can take.
    pub fn upper_bound(self, d: usize, kind: VarKind) -> i64 {
        let d = d as i64;
        match (self, kind) {
            (LpMode::GOnly, _) => d * d,
            (LpMode::Full, VarKind::F) => d.pow(4),
            (LpMode::Full, VarKind::G) => d.pow(3),
        }
    }
}

impl fmt::Display for LpMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for LpMode {
    type Err = LpError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "g_only" | "g-only" => Ok(LpMode::GOnly),
            "full" => Ok(LpMode::Full),
            _ => Err(LpError::Invalid(format!("unknown mode {s:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sense {
    Min,
    Max,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Variable {
    pub kind: VarKind,
    pub representative: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Row {
    /// `(variable, coefficient)` sorted by variable, no zeros.
    pub coeffs: Vec<(usize, i64)>,
    pub relation: Relation,
    pub rhs: i64,
}

impl Row {
    pub fn new(mut coeffs: Vec<(usize, i64)>, relation: Relation, rhs: i64) -> Self {
        coeffs.sort_unstable();
        let mut merged: Vec<(usize, i64)> = Vec::with_capacity(coeffs.len());
        for (v, c) in coeffs {
            match merged.last_mut() {
                Some(last) if last.0 == v => last.1 += c,
                _ => merged.push((v, c)),
            }
        }
        merged.retain(|e| e.1 != 0);
        Self {
            coeffs: merged,
            relation,
            rhs,
        }
    }

    pub fn activity(&self, x: &[i64]) -> i64 {
        self.coeffs.iter().map(|&(v, c)| c * x[v]).sum()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Objective {
    pub sense: Sense,
    pub var: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LpProblem {
    pub dim: usize,
    pub radius: i64,
    pub mode: LpMode,
    pub vars: Vec<Variable>,
    pub rows: Vec<Row>,
    pub lower: Vec<i64>,
    pub upper: Vec<i64>,
    pub objective: Objective,
}

/// Default objective vector: `(4,−4)` for `d = 2`, otherwise `(d,−d,0,…,0)`.
pub fn forcing_target(d: usize) -> Vec<i64> {
    let k = if d == 2 { 4 } else { d as i64 };
    let mut v = vec![0; d];
    v[0] = k;
    if d > 1 {
        v[1] = -k;
    }
    v
}

fn axis_target(d: usize, k: i64) -> Vec<i64> {
    let mut v = vec![0; d];
    v[0] = k;
    if d > 1 {
        v[1] = -k;
    }
    v
}

struct RowSet {
    seen: BTreeSet<Row>,
    rows: Vec<Row>,
}

impl RowSet {
    fn new() -> Self {
        Self {
            seen: BTreeSet::new(),
            rows: Vec::new(),
        }
    }

    fn push(&mut self, row: Row) {
        if row.coeffs.is_empty() {
            return;
        }
        if self.seen.insert(row.clone()) {
            self.rows.push(row);
        }
    }
}

fn plus_unit(g: &[i64], r: usize) -> Vec<i64> {
    let mut v = g.to_vec();
    v[r] += 1;
    v
}

impl LpProblem {
    /// Program over `G_1(o)` alone: tiling rows, `G_1(0) = d²`, `0 ≤ G_1 ≤ d²`.
    pub fn build_g_only(d: usize, radius: i64) -> Result<Self> {
        if d == 0 || radius < 1 {
            return Err(LpError::Invalid("need d ≥ 1 and R ≥ 1".into()));
        }
        let orbits = OrbitIndex::new(d, radius);
        let n = orbits.len();
        let d2 = (d * d) as i64;
        let mut rows = RowSet::new();
        for_each_multiset(d, -radius, radius - 1, |g| {
            let coeffs = (0..d)
                .map(|r| (orbits.lookup(&plus_unit(g, r)).unwrap(), 1))
                .collect();
            rows.push(Row::new(coeffs, Relation::Eq, d2));
        });
        let origin = orbits.lookup(&vec![0; d]).unwrap();
        rows.push(Row::new(vec![(origin, 1)], Relation::Eq, d2));
        let vars = orbits
            .representatives()
            .iter()
            .map(|r| Variable {
                kind: VarKind::G,
                representative: r.clone(),
            })
            .collect();
        let mut p = Self {
            dim: d,
            radius,
            mode: LpMode::GOnly,
            vars,
            rows: rows.rows,
            lower: vec![0; n],
            upper: vec![d2; n],
            objective: Objective {
                sense: Sense::Min,
                var: 0,
            },
        };
        p.set_default_objective();
        Ok(p)
    }

    /// Program over `F(o)` and `G(o)` of a complete system.
    ///
    /// Variables are ordered `F` first, then `G` at offset `n`.
    pub fn build_full(d: usize, radius: i64) -> Result<Self> {
        if d == 0 || radius < 2 {
            return Err(LpError::Invalid("need d ≥ 1 and R ≥ 2".into()));
        }
        let orbits = OrbitIndex::new(d, radius);
        let n = orbits.len();
        let di = d as i64;
        let (d3, d4) = (di.pow(3), di.pow(4));
        let f = |v: &[i64]| orbits.lookup(v).unwrap();
        let g = |v: &[i64]| n + orbits.lookup(v).unwrap();
        let mut rows = RowSet::new();
        for_each_multiset(d, -radius, radius - 1, |gam| {
            let coeffs = (0..d).map(|r| (g(&plus_unit(gam, r)), 1)).collect();
            rows.push(Row::new(coeffs, Relation::Eq, d3));
        });
        for_each_multiset(d, -radius + 1, radius - 1, |gam| {
            let mut coeffs = vec![(g(gam), di)];
            for r in 0..d {
                for t in 0..d {
                    if r != t {
                        let mut v = gam.to_vec();
                        v[r] += 1;
                        v[t] -= 1;
                        coeffs.push((f(&v), 1));
                    }
                }
            }
            rows.push(Row::new(coeffs, Relation::Eq, d4));
        });
        let zero = vec![0; d];
        rows.push(Row::new(vec![(f(&zero), 1)], Relation::Eq, d4));
        rows.push(Row::new(vec![(g(&zero), 1)], Relation::Eq, d3));
        for o in 0..n {
            rows.push(Row::new(vec![(o, 1), (n + o, -di)], Relation::Le, 0));
        }
        let mut vars = Vec::with_capacity(2 * n);
        for kind in [VarKind::F, VarKind::G] {
            vars.extend(orbits.representatives().iter().map(|r| Variable {
                kind,
                representative: r.clone(),
            }));
        }
        let mut upper = vec![d4; n];
        upper.extend(std::iter::repeat_n(d3, n));
        let mut p = Self {
            dim: d,
            radius,
            mode: LpMode::Full,
            vars,
            rows: rows.rows,
            lower: vec![0; 2 * n],
            upper,
            objective: Objective {
                sense: Sense::Min,
                var: 0,
            },
        };
        p.set_default_objective();
        Ok(p)
    }

    pub fn build(mode: LpMode, d: usize, radius: i64) -> Result<Self> {
        match mode {
            LpMode::GOnly => Self::build_g_only(d, radius),
            LpMode::Full => Self::build_full(d, radius),
        }
    }

    /// Minimize at the forcing target, or at `(R,−R,0,…)` when it does not fit.
    fn set_default_objective(&mut self) {
        let mut t = forcing_target(self.dim);
        if t.iter().any(|x| x.abs() > self.radius) {
            t = axis_target(self.dim, self.radius);
        }
        let kind = match self.mode {
            LpMode::GOnly => VarKind::G,
            LpMode::Full => VarKind::F,
        };
        self.objective = Objective {
            sense: Sense::Min,
            var: self.var_index(kind, &t).unwrap(),
        };
    }

    /// Replaces the objective; fails when `gamma` leaves the window.
    pub fn with_objective(mut self, sense: Sense, kind: VarKind, gamma: &[i64]) -> Result<Self> {
        self.objective = Objective {
            sense,
            var: self.var_index(kind, gamma)?,
        };
        Ok(self)
    }

    pub fn num_vars(&self) -> usize {
        self.vars.len()
    }

    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    /// Column index of `kind` at the orbit of `gamma`.
    pub fn var_index(&self, kind: VarKind, gamma: &[i64]) -> Result<usize> {
        let out = || LpError::WindowTooSmall {
            radius: self.radius,
            vector: gamma.to_vec(),
        };
        if gamma.len() != self.dim || gamma.iter().any(|x| x.abs() > self.radius) {
            return Err(out());
        }
        if self.mode == LpMode::GOnly && kind == VarKind::F {
            return Err(LpError::Invalid(
                "g_only programs have no F variables".into(),
            ));
        }
        let rep = crate::orbit::canon(gamma);
        let n = match self.mode {
            LpMode::GOnly => self.vars.len(),
            LpMode::Full => self.vars.len() / 2,
        };
        let base = if kind == VarKind::G && self.mode == LpMode::Full {
            n
        } else {
            0
        };
        self.vars[base..base + n]
            .binary_search_by(|v| v.representative.cmp(&rep))
            .map(|i| base + i)
            .map_err(|_| out())
    }

    /// Structural checks: index ranges, bound order, sorted rows.
    pub fn validate(&self) -> Result<()> {
        let n = self.vars.len();
        if self.lower.len() != n || self.upper.len() != n {
            return Err(LpError::Invalid(
                "bound vectors do not match variables".into(),
            ));
        }
        if self.objective.var >= n {
            return Err(LpError::Invalid("objective variable out of range".into()));
        }
        for (j, (l, u)) in self.lower.iter().zip(&self.upper).enumerate() {
            if l > u {
                return Err(LpError::Invalid(format!("variable {j} has empty bounds")));
            }
        }
        for (i, row) in self.rows.iter().enumerate() {
            if row.coeffs.windows(2).any(|w| w[0].0 >= w[1].0)
                || row.coeffs.iter().any(|&(v, c)| v >= n || c == 0)
            {
                return Err(LpError::Invalid(format!("row {i} is malformed")));
            }
        }
        Ok(())
    }

    /// Objective coefficients in minimization form.
    pub fn min_costs(&self) -> Vec<i64> {
        let mut c = vec![0; self.vars.len()];
        c[self.objective.var] = match self.objective.sense {
            Sense::Min => 1,
            Sense::Max => -1,
        };
        c
    }

    pub fn describe_var(&self, j: usize) -> String {
        let v = &self.vars[j];
        let kind = match v.kind {
            VarKind::F => "F",
            VarKind::G if self.mode == LpMode::GOnly => "G1",
            VarKind::G => "G",
        };
        let coords: Vec<String> = v.representative.iter().map(i64::to_string).collect();
        format!("{kind}({})", coords.join(","))
    }
}
