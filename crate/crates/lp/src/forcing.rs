//! Does the windowed program force the extreme value at the target orbit?

use rug::Rational;
use serde::{Deserialize, Serialize};

use crate::certificate::{ratstr, verify_certificate, LpCertificate};
use crate::error::Result;
use crate::orbit::OrbitIndex;
use crate::problem::{forcing_target, LpMode, LpProblem, Sense, VarKind};
use crate::simplex::WarmStart;
use crate::solve::solve_with;

#[derive(Clone, Debug)]
pub struct ForcingOptions {
    pub start_radius: Option<i64>,
    pub max_radius: Option<i64>,
    /// Largest number of LP variables attempted.
    pub var_budget: usize,
    pub warm: WarmStart,
    pub target: Option<Vec<i64>>,
}

impl Default for ForcingOptions {
    fn default() -> Self {
        Self {
            start_radius: None,
            max_radius: None,
            var_budget: 20_000,
            warm: WarmStart::Highs,
            target: None,
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RadiusAttempt {
    pub radius: i64,
    pub vars: usize,
    pub rows: usize,
    #[serde(with = "ratstr")]
    pub minimum: Rational,
    pub pivots: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ForcingReport {
    pub dim: usize,
    pub mode: LpMode,
    pub target: Vec<i64>,
    /// The extreme value the objective would have to attain.
    pub bound: i64,
    pub forced: bool,
    #[serde(with = "ratstr")]
    pub minimum: Rational,
    pub attempts: Vec<RadiusAttempt>,
    pub verified: bool,
    pub certificate: LpCertificate,
    /// In full mode, the minimum of `G` at the target on the final window.
    #[serde(with = "ratstr::opt")]
    pub companion_g_minimum: Option<Rational>,
    pub companion_certificate: Option<LpCertificate>,
    /// Set when escalation stopped because the next window exceeded the budget.
    pub budget_exhausted: bool,
}

fn program_size(mode: LpMode, d: usize, r: i64) -> usize {
    let n = OrbitIndex::count(d, r);
    match mode {
        LpMode::GOnly => n,
        LpMode::Full => 2 * n,
    }
}

/// Minimizes the target variable on growing windows until it is forced
/// or the variable budget is reached.
pub fn certify_forcing(d: usize, mode: LpMode, opts: &ForcingOptions) -> Result<ForcingReport> {
    let target = opts.target.clone().unwrap_or_else(|| forcing_target(d));
    let kind = match mode {
        LpMode::GOnly => VarKind::G,
        LpMode::Full => VarKind::F,
    };
    let bound = mode.upper_bound(d, kind);
    let reach = target.iter().map(|x| x.abs()).max().unwrap_or(0);
    let min_r = if mode == LpMode::Full { 2 } else { 1 };
    let mut r = opts
        .start_radius
        .unwrap_or_else(|| (d as i64).max(reach))
        .max(reach)
        .max(min_r);
    let mut attempts = Vec::new();
    let mut last: Option<(LpProblem, LpCertificate)> = None;
    let mut budget_exhausted = false;
    loop {
        let size = program_size(mode, d, r);
        if size > opts.var_budget && last.is_some() {
            budget_exhausted = true;
            break;
        }
        let p = LpProblem::build(mode, d, r)?.with_objective(Sense::Min, kind, &target)?;
        let (cert, stats) = solve_with(&p, opts.warm)?;
        let minimum = cert.optimum.clone().expect("optimal certificate");
        log::info!("d={d} {mode} R={r}: minimum {minimum} of {bound}");
        attempts.push(RadiusAttempt {
            radius: r,
            vars: p.num_vars(),
            rows: p.num_rows(),
            minimum: minimum.clone(),
            pivots: stats.iterations,
        });
        let forced = minimum == bound;
        last = Some((p, cert));
        if forced || opts.max_radius.is_some_and(|m| r >= m) {
            break;
        }
        r += 1;
    }
    let (p, cert) = last.expect("at least one window solved");
    let minimum = cert.optimum.clone().unwrap();
    let mut verified = verify_certificate(&p, &cert).is_ok();
    let (companion_g_minimum, companion_certificate) = if mode == LpMode::Full {
        let q = p.clone().with_objective(Sense::Min, VarKind::G, &target)?;
        let (c, _) = solve_with(&q, opts.warm)?;
        verified &= verify_certificate(&q, &c).is_ok();
        (c.optimum.clone(), Some(c))
    } else {
        (None, None)
    };
    Ok(ForcingReport {
        dim: d,
        mode,
        target,
        bound,
        forced: minimum == bound,
        minimum,
        attempts,
        verified,
        certificate: cert,
        companion_g_minimum,
        companion_certificate,
        budget_exhausted,
    })
}
