//! Exact bounded primal simplex.
//!
//! The program `min cᵀx, A x ⋈ b, l ≤ x ≤ u` is solved in the form
//! `[A | I](x; s) = b`, where the slack `s` of a `≤` row lives in `[0, ∞)`,
//! of a `≥` row in `(−∞, 0]`, and of an `=` row in `[0, 0]`. Every basis is
//! factored mod a prime and all basic quantities are recovered exactly by
//! lifting, so no tolerance appears anywhere.
//!
//! Phase 1 minimizes the sum of bound violations of basic variables. Pricing
//! is Dantzig's rule, falling back to Bland's rule after a run of degenerate
//! pivots.

use rug::{Integer, Rational};

use crate::dixon::{self, RatVec};
use crate::error::{LpError, Result};
use crate::modp::{ModLu, SparseColumns, PRIMES};
use crate::problem::{LpProblem, Relation};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VarStatus {
    Basic,
    AtLower,
    AtUpper,
}

/// Starting basis for the exact simplex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum WarmStart {
    /// Take the optimal basis of a floating-point HiGHS solve.
    #[default]
    Highs,
    /// Start from the all-slack basis.
    None,
}

/// The program in slack form with integer data.
#[derive(Clone, Debug)]
pub struct StdForm {
    pub m: usize,
    pub n: usize,
    /// Columns of `A` only; slack `n + i` is the unit column `e_i`.
    pub cols: SparseColumns,
    pub b: Vec<i64>,
    pub lower: Vec<Option<i64>>,
    pub upper: Vec<Option<i64>>,
    pub cost: Vec<i64>,
}

impl StdForm {
    pub fn from_problem(p: &LpProblem) -> Self {
        let n = p.num_vars();
        let m = p.num_rows();
        let mut cols: SparseColumns = vec![Vec::new(); n];
        let mut b = Vec::with_capacity(m);
        let mut lower: Vec<Option<i64>> = p.lower.iter().map(|&v| Some(v)).collect();
        let mut upper: Vec<Option<i64>> = p.upper.iter().map(|&v| Some(v)).collect();
        for (i, row) in p.rows.iter().enumerate() {
            for &(j, c) in &row.coeffs {
                cols[j].push((i as u32, c));
            }
            b.push(row.rhs);
            let (l, u) = match row.relation {
                Relation::Le => (Some(0), None),
                Relation::Ge => (None, Some(0)),
                Relation::Eq => (Some(0), Some(0)),
            };
            lower.push(l);
            upper.push(u);
        }
        let mut cost = p.min_costs();
        cost.resize(n + m, 0);
        Self {
            m,
            n,
            cols,
            b,
            lower,
            upper,
            cost,
        }
    }

    pub fn total(&self) -> usize {
        self.n + self.m
    }

    pub fn column(&self, j: usize) -> Vec<(u32, i64)> {
        if j < self.n {
            self.cols[j].clone()
        } else {
            vec![((j - self.n) as u32, 1)]
        }
    }

    fn nonbasic_value(&self, j: usize, s: VarStatus) -> i64 {
        match s {
            VarStatus::AtLower => self.lower[j].unwrap_or(0),
            VarStatus::AtUpper => self.upper[j].unwrap_or(0),
            VarStatus::Basic => 0,
        }
    }

    /// A nonbasic status for `j` sitting at a finite bound.
    pub fn resting_status(&self, j: usize) -> VarStatus {
        if self.lower[j].is_some() {
            VarStatus::AtLower
        } else {
            VarStatus::AtUpper
        }
    }

    /// Slack basis: structurals at their lower bounds.
    pub fn slack_basis(&self) -> Vec<VarStatus> {
        let mut st: Vec<VarStatus> = (0..self.n).map(|j| self.resting_status(j)).collect();
        st.extend(std::iter::repeat_n(VarStatus::Basic, self.m));
        st
    }
}

#[derive(Clone, Debug)]
pub enum Outcome {
    Optimal {
        /// Values of all `n + m` variables.
        x: Vec<Rational>,
        /// Row multipliers.
        y: Vec<Rational>,
        status: Vec<VarStatus>,
    },
    /// Phase-1 multipliers proving infeasibility.
    Infeasible {
        y: Vec<Rational>,
    },
    Unbounded,
}

#[derive(Clone, Debug, Default)]
pub struct SimplexStats {
    pub iterations: usize,
    pub bound_flips: usize,
    pub repairs: usize,
    pub bland_steps: usize,
}

const DEGENERATE_SWITCH: usize = 30;
const MAX_ITERATIONS: usize = 1_000_000;

/// Runs the exact simplex from `status` (one status per variable).
pub fn solve_from(
    sf: &StdForm,
    mut status: Vec<VarStatus>,
    stats: &mut SimplexStats,
) -> Result<Outcome> {
    let (m, total) = (sf.m, sf.total());
    assert_eq!(status.len(), total);
    let mut head: Vec<usize> = (0..total)
        .filter(|&j| status[j] == VarStatus::Basic)
        .collect();
    let mut degenerate = 0usize;
    loop {
        if stats.iterations > MAX_ITERATIONS {
            return Err(LpError::Exact("iteration limit reached".into()));
        }
        let (lu, bcols) = factor_basis(sf, &mut head, &mut status, stats);
        debug_assert_eq!(head.len(), m);

        let mut rhs: Vec<i128> = sf.b.iter().map(|&v| v as i128).collect();
        for j in 0..total {
            if status[j] != VarStatus::Basic {
                let v = sf.nonbasic_value(j, status[j]) as i128;
                if v != 0 {
                    for (i, a) in sf.column(j) {
                        rhs[i as usize] -= a as i128 * v;
                    }
                }
            }
        }
        let xb = dixon::solve(&lu, &bcols, &rhs, false)?;

        // Phase-1 costs mark violated basics; phase 2 uses the real costs.
        let mut viol = vec![0i8; m];
        for (k, &j) in head.iter().enumerate() {
            let v = &xb.num[k];
            if let Some(l) = sf.lower[j] {
                if *v < Integer::from(&xb.den * l) {
                    viol[k] = -1;
                    continue;
                }
            }
            if let Some(u) = sf.upper[j] {
                if *v > Integer::from(&xb.den * u) {
                    viol[k] = 1;
                }
            }
        }
        let phase1 = viol.iter().any(|&v| v != 0);
        let cb: Vec<i128> = head
            .iter()
            .enumerate()
            .map(|(k, &j)| {
                if phase1 {
                    viol[k] as i128
                } else {
                    sf.cost[j] as i128
                }
            })
            .collect();
        let y = dixon::solve(&lu, &bcols, &cb, true)?;

        let bland = degenerate >= DEGENERATE_SWITCH;
        let Some((q, dir)) = price(sf, &status, &y, phase1, bland) else {
            if phase1 {
                return Ok(Outcome::Infeasible {
                    y: y.to_rationals(),
                });
            }
            let mut x: Vec<Rational> = (0..total)
                .map(|j| Rational::from(sf.nonbasic_value(j, status[j])))
                .collect();
            for (k, &j) in head.iter().enumerate() {
                x[j] = xb.get(k);
            }
            return Ok(Outcome::Optimal {
                x,
                y: y.to_rationals(),
                status,
            });
        };
        if bland {
            stats.bland_steps += 1;
        }
        stats.iterations += 1;

        let aq: Vec<i128> = {
            let mut v = vec![0i128; m];
            for (i, a) in sf.column(q) {
                v[i as usize] = a as i128;
            }
            v
        };
        let w = dixon::solve(&lu, &bcols, &aq, false)?;

        let step = ratio_test(sf, &head, &xb, &w, &viol, q, dir, phase1);
        match step {
            Step::Unbounded => {
                if phase1 {
                    return Err(LpError::Exact("unbounded phase-1 ray".into()));
                }
                return Ok(Outcome::Unbounded);
            }
            Step::Flip { t_zero } => {
                stats.bound_flips += 1;
                status[q] = if dir > 0 {
                    VarStatus::AtUpper
                } else {
                    VarStatus::AtLower
                };
                degenerate = if t_zero { degenerate + 1 } else { 0 };
            }
            Step::Pivot {
                pos,
                leaves_at,
                t_zero,
            } => {
                let out = head[pos];
                status[out] = leaves_at;
                status[q] = VarStatus::Basic;
                head[pos] = q;
                degenerate = if t_zero { degenerate + 1 } else { 0 };
            }
        }
    }
}

/// Factors the basis, replacing dependent columns by slacks of uncovered rows.
fn factor_basis(
    sf: &StdForm,
    head: &mut Vec<usize>,
    status: &mut [VarStatus],
    stats: &mut SimplexStats,
) -> (ModLu, SparseColumns) {
    let m = sf.m;
    if head.len() > m {
        for &j in &head[m..] {
            status[j] = sf.resting_status(j);
        }
        head.truncate(m);
    }
    const EMPTY: usize = usize::MAX;
    head.resize(m, EMPTY);
    let build = |head: &[usize]| -> SparseColumns {
        head.iter()
            .map(|&j| if j == EMPTY { Vec::new() } else { sf.column(j) })
            .collect()
    };
    let mut cols = build(head);
    let mut lu = ModLu::factor(&cols, PRIMES[0]);
    if lu.is_singular() && !head.contains(&EMPTY) {
        lu = ModLu::factor(&cols, PRIMES[1]);
    }
    if lu.is_singular() {
        stats.repairs += 1;
        let dep = lu.dependent_cols.clone();
        let free = lu.free_rows.clone();
        for (&k, &i) in dep.iter().zip(&free) {
            let old = head[k];
            if old != EMPTY {
                status[old] = sf.resting_status(old);
            }
            head[k] = sf.n + i;
            status[sf.n + i] = VarStatus::Basic;
        }
        cols = build(head);
        lu = ModLu::factor(&cols, PRIMES[0]);
        assert!(!lu.is_singular(), "repaired basis is singular");
    }
    (lu, cols)
}

/// Reduced-cost numerator of `j` over `y.den`.
fn reduced_cost(sf: &StdForm, j: usize, y: &RatVec, cost: i64) -> Integer {
    let mut d = Integer::from(&y.den * cost);
    if j < sf.n {
        for &(i, a) in &sf.cols[j] {
            d -= Integer::from(a) * &y.num[i as usize];
        }
    } else {
        d -= &y.num[j - sf.n];
    }
    d
}

/// Entering variable and its direction (`+1` increase, `−1` decrease).
fn price(
    sf: &StdForm,
    status: &[VarStatus],
    y: &RatVec,
    phase1: bool,
    bland: bool,
) -> Option<(usize, i32)> {
    let mut best: Option<(usize, i32, Integer)> = None;
    for j in 0..sf.total() {
        let s = status[j];
        if s == VarStatus::Basic || sf.lower[j].is_some() && sf.lower[j] == sf.upper[j] {
            continue;
        }
        let cost = if phase1 { 0 } else { sf.cost[j] };
        let d = reduced_cost(sf, j, y, cost);
        let dir = match s {
            VarStatus::AtLower if d < 0 => 1,
            VarStatus::AtUpper if d > 0 => -1,
            _ => continue,
        };
        if bland {
            return Some((j, dir));
        }
        let mag = d.abs();
        if best.as_ref().is_none_or(|b| mag > b.2) {
            best = Some((j, dir, mag));
        }
    }
    best.map(|(j, dir, _)| (j, dir))
}

enum Step {
    Unbounded,
    Flip {
        t_zero: bool,
    },
    Pivot {
        pos: usize,
        leaves_at: VarStatus,
        t_zero: bool,
    },
}

#[allow(clippy::too_many_arguments)]
fn ratio_test(
    sf: &StdForm,
    head: &[usize],
    xb: &RatVec,
    w: &RatVec,
    viol: &[i8],
    q: usize,
    dir: i32,
    phase1: bool,
) -> Step {
    // Basic k moves at rate δ_k = −dir · w_k.
    let mut best: Option<(Rational, usize, usize, VarStatus)> = None;
    for (k, &j) in head.iter().enumerate() {
        if w.num[k] == 0 {
            continue;
        }
        let delta = {
            let r = w.get(k);
            if dir > 0 {
                -r
            } else {
                r
            }
        };
        let x = xb.get(k);
        let (bound, at) = if delta > 0 {
            if phase1 && viol[k] < 0 {
                (sf.lower[j], VarStatus::AtLower)
            } else if viol[k] > 0 {
                continue;
            } else {
                (sf.upper[j], VarStatus::AtUpper)
            }
        } else if phase1 && viol[k] > 0 {
            (sf.upper[j], VarStatus::AtUpper)
        } else if viol[k] < 0 {
            continue;
        } else {
            (sf.lower[j], VarStatus::AtLower)
        };
        let Some(bound) = bound else { continue };
        let t = (Rational::from(bound) - x) / delta;
        let better = match &best {
            None => true,
            Some((bt, _, bj, _)) => t < *bt || (t == *bt && j < *bj),
        };
        if better {
            best = Some((t, k, j, at));
        }
    }
    let flip = match (sf.lower[q], sf.upper[q]) {
        (Some(l), Some(u)) => Some(Rational::from(u - l)),
        _ => None,
    };
    match (best, flip) {
        (None, None) => Step::Unbounded,
        (None, Some(f)) => Step::Flip { t_zero: f == 0 },
        (Some((t, ..)), Some(f)) if f <= t => Step::Flip { t_zero: f == 0 },
        (Some((t, k, _, at)), _) => Step::Pivot {
            pos: k,
            leaves_at: at,
            t_zero: t == 0,
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::problem::{LpMode, Objective, Row, Sense, VarKind, Variable};

    fn tiny(rows: Vec<Row>, upper: Vec<i64>, sense: Sense) -> LpProblem {
        let n = upper.len();
        LpProblem {
            dim: 1,
            radius: 0,
            mode: LpMode::Full,
            vars: (0..n)
                .map(|i| Variable {
                    kind: VarKind::F,
                    representative: vec![i as i64],
                })
                .collect(),
            rows,
            lower: vec![0; n],
            upper,
            objective: Objective { sense, var: 0 },
        }
    }

    #[test]
    fn solves_small_program() {
        // max x0 s.t. x0 + x1 ≤ 4, x0 − x1 ≥ −2 ... x0 ≤ 3 via bound
        let p = tiny(
            vec![
                Row::new(vec![(0, 1), (1, 1)], Relation::Le, 4),
                Row::new(vec![(0, 2), (1, -1)], Relation::Eq, 5),
            ],
            vec![10, 10],
            Sense::Max,
        );
        let sf = StdForm::from_problem(&p);
        let mut st = SimplexStats::default();
        match solve_from(&sf, sf.slack_basis(), &mut st).unwrap() {
            Outcome::Optimal { x, .. } => assert_eq!(x[0], Rational::from(3)),
            o => panic!("{o:?}"),
        }
    }

    #[test]
    fn detects_infeasibility() {
        let p = tiny(
            vec![
                Row::new(vec![(0, 1), (1, 1)], Relation::Ge, 5),
                Row::new(vec![(0, 1)], Relation::Le, 1),
            ],
            vec![10, 3],
            Sense::Min,
        );
        let sf = StdForm::from_problem(&p);
        let mut st = SimplexStats::default();
        assert!(matches!(
            solve_from(&sf, sf.slack_basis(), &mut st).unwrap(),
            Outcome::Infeasible { .. }
        ));
    }
}
