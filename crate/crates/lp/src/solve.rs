use crate::certificate::{CertStatus, LpCertificate};
use crate::error::{LpError, Result};
use crate::problem::LpProblem;
use crate::simplex::{solve_from, Outcome, SimplexStats, StdForm, VarStatus, WarmStart};
use crate::warm::highs_basis;

/// Solves exactly, warm-started from HiGHS.
pub fn solve(p: &LpProblem) -> Result<LpCertificate> {
    solve_with(p, WarmStart::Highs).map(|(c, _)| c)
}

pub fn solve_with(p: &LpProblem, warm: WarmStart) -> Result<(LpCertificate, SimplexStats)> {
    p.validate()?;
    let sf = StdForm::from_problem(p);
    let start = match warm {
        WarmStart::Highs => highs_basis(&sf)?.unwrap_or_else(|| sf.slack_basis()),
        WarmStart::None => sf.slack_basis(),
    };
    let mut stats = SimplexStats::default();
    let outcome = solve_from(&sf, start, &mut stats)?;
    log::debug!(
        "exact simplex: {} pivots, {} flips, {} repairs",
        stats.iterations,
        stats.bound_flips,
        stats.repairs
    );
    let n = p.num_vars();
    let mut cert = LpCertificate {
        dim: p.dim,
        radius: p.radius,
        mode: p.mode,
        num_vars: n,
        num_rows: p.num_rows(),
        sense: p.objective.sense,
        objective_var: p.objective.var,
        objective_label: p.describe_var(p.objective.var),
        status: CertStatus::Optimal,
        optimum: None,
        primal: Vec::new(),
        basis: Vec::new(),
        dual: Vec::new(),
    };
    match outcome {
        Outcome::Optimal { x, y, status } => {
            let v = x[p.objective.var].clone();
            cert.optimum = Some(v);
            cert.basis = (0..status.len())
                .filter(|&j| status[j] == VarStatus::Basic)
                .collect();
            cert.primal = x.into_iter().take(n).collect();
            cert.dual = y;
            Ok((cert, stats))
        }
        Outcome::Infeasible { y } => {
            cert.status = CertStatus::Infeasible;
            cert.dual = y;
            Err(LpError::Infeasible(Box::new(cert)))
        }
        Outcome::Unbounded => Err(LpError::Unbounded),
    }
}
