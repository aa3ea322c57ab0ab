//! `verify`: structure of a matrix or system, then the Fourier-side
//! identities on seeded random window vectors.

use std::path::PathBuf;

use muh_core::fourier::{
    big_f_double_sum, verify_f0g0, verify_f_le_dg, verify_fgtile2, verify_gj0, verify_gjtile,
    verify_gtile,
};
use muh_core::interchange::parse_system_unvalidated;
use muh_core::matrix::hadamard_violation;
use muh_core::{
    big_f_of, big_g_of, enumerate_vanishing_set, f_of, is_unbiased_pair, MuhSystem, Value,
    VanishingMode, DEFAULT_TOL,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use super::{read_text, to_json};
use crate::report::{CliError, CliResult, Outcome, Verdict};
use crate::Context;

#[derive(Debug, clap::Args, Serialize)]
pub struct Args {
    /// Matrix or system JSON file.
    #[arg(long, visible_alias = "matrix")]
    pub system: PathBuf,
    /// Random window vectors per identity.
    #[arg(long, default_value_t = 100)]
    pub samples: usize,
    /// Coordinates of random vectors lie in `[-radius, radius]`.
    #[arg(long, default_value_t = 4)]
    pub radius: i64,
    /// Tolerance for numeric input; exact input is checked with zero tolerance.
    #[arg(long, default_value_t = DEFAULT_TOL)]
    pub tol: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
enum Status {
    Passed,
    Failed,
    Skipped,
}

#[derive(Debug, Serialize)]
struct Check {
    name: &'static str,
    status: Status,
    evaluated: usize,
    /// First few failing cases.
    failures: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    note: Option<String>,
}

const SHOWN_FAILURES: usize = 10;

impl Check {
    fn from_cases(name: &'static str, cases: Vec<(String, bool)>) -> Self {
        let evaluated = cases.len();
        let failures: Vec<String> = cases.into_iter().filter(|c| !c.1).map(|c| c.0).collect();
        Self {
            name,
            status: if failures.is_empty() {
                Status::Passed
            } else {
                Status::Failed
            },
            evaluated,
            failures: failures.into_iter().take(SHOWN_FAILURES).collect(),
            note: None,
        }
    }

    fn skipped(name: &'static str, why: &str) -> Self {
        Self {
            name,
            status: Status::Skipped,
            evaluated: 0,
            failures: Vec::new(),
            note: Some(why.into()),
        }
    }

    fn note(mut self, text: String) -> Self {
        self.note = Some(text);
        self
    }
}

fn random_vectors(seed: u64, d: usize, n: usize, radius: i64) -> Vec<Vec<i64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|_| (0..d).map(|_| rng.gen_range(-radius..=radius)).collect())
        .collect()
}

fn label(g: &[i64]) -> String {
    format!("{g:?}")
}

/// Evaluates `pred` on every vector in parallel, keeping input order.
fn over<F>(name: &'static str, vectors: &[Vec<i64>], pred: F) -> CliResult<Check>
where
    F: Fn(&[i64]) -> muh_core::Result<bool> + Sync,
{
    let cases = vectors
        .par_iter()
        .map(|g| Ok((label(g), pred(g)?)))
        .collect::<muh_core::Result<Vec<_>>>()?;
    Ok(Check::from_cases(name, cases))
}

fn structure(s: &MuhSystem, tol: f64) -> CliResult<Vec<Check>> {
    let rows = s
        .matrices()
        .iter()
        .enumerate()
        .map(|(j, m)| match hadamard_violation(m, tol) {
            None => (format!("matrix {j}"), true),
            Some((a, b)) => (
                format!("matrix {j}: rows {a} and {b} are not orthogonal"),
                false,
            ),
        })
        .collect();
    let mut pairs = Vec::new();
    for j in 0..s.len() {
        for k in j + 1..s.len() {
            let ok = is_unbiased_pair(s.matrix(j), s.matrix(k), tol)?;
            pairs.push((format!("matrices {j} and {k} are not unbiased"), ok));
        }
    }
    let mut size = Check::from_cases(
        "member_count",
        vec![(
            format!("{} matrices exceed the bound {}", s.len(), s.dim()),
            s.len() <= s.dim(),
        )],
    );
    if size.status == Status::Passed {
        size = size.note(format!("{} of {} members", s.len(), s.dim()));
    }
    Ok(vec![
        size,
        Check::from_cases("hadamard", rows),
        Check::from_cases("unbiased", pairs),
    ])
}

fn equals_int(v: &Value, n: i64, tol: f64) -> bool {
    v.sub(&v.int_like(n)).is_zero(tol)
}

fn identities(s: &MuhSystem, args: &Args, seed: u64, tol: f64) -> CliResult<Vec<Check>> {
    let d = s.dim();
    let vectors = random_vectors(seed, d, args.samples, args.radius);
    let mut checks = Vec::new();

    let gj0 = s
        .matrices()
        .iter()
        .enumerate()
        .map(|(j, m)| (format!("matrix {j}"), verify_gj0(m, tol)))
        .collect();
    checks.push(Check::from_cases("gj0", gj0));

    let mut tile = Vec::new();
    for (j, m) in s.matrices().iter().enumerate() {
        for g in &vectors {
            tile.push((
                format!("matrix {j} at {}", label(g)),
                verify_gjtile(m, g, tol)?,
            ));
        }
    }
    checks.push(Check::from_cases("gj_tile", tile));
    checks.push(over("g_tile", &vectors, |g| verify_gtile(s, g, tol))?);
    checks.push(over("f_le_m_g", &vectors, |g| verify_f_le_dg(s, g, tol))?);

    let mut worst = 0.0f64;
    let diffs = vectors
        .par_iter()
        .map(|g| {
            let gap = big_f_of(s, g)?.sub(&big_f_double_sum(s, g)?);
            Ok((label(g), gap.is_zero(tol), gap.abs_f64()))
        })
        .collect::<muh_core::Result<Vec<_>>>()?;
    for x in &diffs {
        worst = worst.max(x.2);
    }
    checks.push(
        Check::from_cases(
            "f_double_sum",
            diffs.into_iter().map(|x| (x.0, x.1)).collect(),
        )
        .note(format!("largest |difference| {worst:e}")),
    );

    const NEEDS_COMPLETE: &str = "requires a complete system";
    if s.is_complete() {
        checks.push(over("fg_tile2", &vectors, |g| verify_fgtile2(s, g, tol))?);
        let z = vec![0; d];
        let f0g0 = if s.is_exact() {
            verify_f0g0(s)?
        } else {
            let n = d as i64;
            equals_int(&big_f_of(s, &z)?, n.pow(4), tol)
                && equals_int(&big_g_of(s, &z)?, n.pow(3), tol)
        };
        checks.push(Check::from_cases("f0_g0", vec![("origin".into(), f0g0)]));
        let rho: Vec<Vec<i64>> = enumerate_vanishing_set(d, VanishingMode::Plain)
            .into_iter()
            .filter(|r| r.iter().all(|x| x.abs() <= args.radius))
            .collect();
        checks.push(over("f_vanishes", &rho, |r| Ok(f_of(s, r)?.is_zero(tol)))?);
    } else {
        for name in ["fg_tile2", "f0_g0", "f_vanishes"] {
            checks.push(Check::skipped(name, NEEDS_COMPLETE));
        }
    }
    Ok(checks)
}

pub fn run(args: &Args, ctx: &mut Context) -> CliResult<Outcome> {
    if args.radius < 0 {
        return Err(CliError::usage("radius must be non-negative"));
    }
    let text = read_text(&args.system)?;
    let s = parse_system_unvalidated(&text).map_err(|e| {
        let mut err = CliError::from(e);
        err.message = format!("{}: {}", args.system.display(), err.message);
        err
    })?;
    let tol = if s.is_exact() { 0.0 } else { args.tol };
    let mut checks = structure(&s, tol)?;
    let valid = checks.iter().all(|c| c.status == Status::Passed);
    if valid {
        checks.extend(identities(&s, args, ctx.seed, tol)?);
    } else {
        for name in [
            "gj0",
            "gj_tile",
            "g_tile",
            "f_le_m_g",
            "f_double_sum",
            "fg_tile2",
            "f0_g0",
            "f_vanishes",
        ] {
            checks.push(Check::skipped(name, "requires a valid system"));
        }
    }
    let failed: Vec<&str> = checks
        .iter()
        .filter(|c| c.status == Status::Failed)
        .map(|c| c.name)
        .collect();
    let passed = checks.iter().filter(|c| c.status == Status::Passed).count();
    let (verdict, summary) = if failed.is_empty() {
        (
            Verdict::Verified,
            format!(
                "all {passed} checks pass on d={} with {} matrices",
                s.dim(),
                s.len()
            ),
        )
    } else {
        let first = checks
            .iter()
            .find(|c| c.status == Status::Failed)
            .and_then(|c| c.failures.first().cloned())
            .unwrap_or_default();
        (
            Verdict::Refuted,
            format!("failed: {} ({first})", failed.join(", ")),
        )
    };
    let details = json!({
        "dim": s.dim(),
        "matrices": s.len(),
        "complete": s.is_complete(),
        "exact": s.is_exact(),
        "tolerance": tol,
        "checks": to_json(&checks)?,
    });
    Ok(Outcome::new(verdict, summary, details))
}
