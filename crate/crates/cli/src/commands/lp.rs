//! `lp-certify`: exact LP optima over a window with checked certificates.

use clap::ValueEnum;
use muh_lp::{
    certify_forcing, forcing_target, solve_with, verify_certificate, CertStatus, ForcingOptions,
    LpCertificate, LpError, LpMode, LpProblem, Sense, VarKind, WarmStart,
};
use serde::Serialize;
use serde_json::json;

use super::parse_vector;
use crate::report::{CliError, CliResult, Outcome, Verdict};
use crate::Context;

#[derive(Clone, Copy, Debug, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    #[value(name = "g_only", alias = "g-only")]
    GOnly,
    Full,
}

#[derive(Clone, Copy, Debug, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    F,
    G,
}

#[derive(Clone, Copy, Debug, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SenseArg {
    Min,
    Max,
}

#[derive(Debug, clap::Args, Serialize)]
pub struct Args {
    #[arg(long)]
    pub dim: usize,
    /// Window radius; with `--forcing`, the first radius tried.
    #[arg(long)]
    pub radius: Option<i64>,
    #[arg(long, value_enum)]
    pub mode: Mode,
    /// Objective orbit, e.g. "5,-5,0,0,0"; defaults to the forcing target.
    #[arg(long, allow_hyphen_values = true)]
    pub target: Option<String>,
    /// Objective variable; `g` in g_only mode, `f` in full mode by default.
    #[arg(long, value_enum)]
    pub kind: Option<Kind>,
    #[arg(long, value_enum, default_value = "min")]
    pub sense: SenseArg,
    /// In full mode, also minimize G at the target on the same window.
    #[arg(long)]
    pub companion_g: bool,
    /// Grow the window until the target is forced or the budget runs out.
    #[arg(long)]
    pub forcing: bool,
    #[arg(long, requires = "forcing")]
    pub max_radius: Option<i64>,
    /// Largest LP, in variables, that `--forcing` will attempt.
    #[arg(long, default_value_t = 20_000)]
    pub var_budget: usize,
    /// Solve with exact pivots only, without a floating-point warm start.
    #[arg(long)]
    pub cold: bool,
    /// Certificate file name.
    #[arg(long)]
    pub out: Option<String>,
}

fn lp_mode(m: Mode) -> LpMode {
    match m {
        Mode::GOnly => LpMode::GOnly,
        Mode::Full => LpMode::Full,
    }
}

fn write_cert(ctx: &mut Context, name: &str, c: &LpCertificate) -> CliResult<()> {
    ctx.out.write_json(name, c)
}

pub fn run(args: &Args, ctx: &mut Context) -> CliResult<Outcome> {
    let mode = lp_mode(args.mode);
    let d = args.dim;
    if d < 2 {
        return Err(CliError::usage("--dim must be at least 2"));
    }
    let target = match &args.target {
        Some(t) => parse_vector(t)?,
        None => forcing_target(d),
    };
    if target.len() != d {
        return Err(CliError::usage(format!(
            "target has {} coordinates, expected {d}",
            target.len()
        )));
    }
    let warm = if args.cold {
        WarmStart::None
    } else {
        WarmStart::Highs
    };
    if args.forcing {
        return run_forcing(args, ctx, mode, target, warm);
    }
    let radius = args
        .radius
        .ok_or_else(|| CliError::usage("--radius is required without --forcing"))?;
    let kind = match args.kind {
        Some(Kind::F) => VarKind::F,
        Some(Kind::G) => VarKind::G,
        None if mode == LpMode::GOnly => VarKind::G,
        None => VarKind::F,
    };
    let sense = match args.sense {
        SenseArg::Min => Sense::Min,
        SenseArg::Max => Sense::Max,
    };
    let p = LpProblem::build(mode, d, radius)?.with_objective(sense, kind, &target)?;
    let name = args
        .out
        .clone()
        .unwrap_or_else(|| format!("lp-{}-d{d}-r{radius}.json", mode.name()));
    let (cert, stats) = match solve_with(&p, warm) {
        Ok(x) => x,
        Err(LpError::Infeasible(cert)) => {
            let ok = verify_certificate(&p, &cert).is_ok();
            write_cert(ctx, &name, &cert)?;
            let (verdict, summary) = if ok {
                (
                    Verdict::Refuted,
                    format!("{mode} d={d} R={radius} is infeasible (Farkas certificate checked)"),
                )
            } else {
                (
                    Verdict::Inconclusive,
                    "infeasibility certificate failed to check".into(),
                )
            };
            return Ok(Outcome::new(
                verdict,
                summary,
                json!({ "status": "infeasible", "certificate": name, "verified": ok }),
            ));
        }
        Err(e) => return Err(e.into()),
    };
    let check = verify_certificate(&p, &cert);
    write_cert(ctx, &name, &cert)?;
    let optimum = cert.optimum.clone().expect("optimal certificate");
    let bound = mode.upper_bound(d, kind);
    let forced = sense == Sense::Min && optimum == bound;

    let mut companion = serde_json::Value::Null;
    let mut companion_ok = true;
    if args.companion_g && mode == LpMode::Full {
        let q = p.clone().with_objective(Sense::Min, VarKind::G, &target)?;
        let (c, _) = solve_with(&q, warm)?;
        companion_ok = verify_certificate(&q, &c).is_ok();
        let cname = name.strip_suffix(".json").unwrap_or(&name).to_string() + "-g.json";
        write_cert(ctx, &cname, &c)?;
        companion = json!({
            "objective": c.objective_label,
            "minimum": c.optimum.as_ref().map(|r| r.to_string()),
            "certificate": cname,
            "verified": companion_ok,
        });
    }
    let verified = check.is_ok() && companion_ok;
    let details = json!({
        "mode": mode.name(),
        "dim": d,
        "radius": radius,
        "target": target,
        "objective": cert.objective_label,
        "sense": sense,
        "optimum": optimum.to_string(),
        "bound": bound,
        "forced": forced,
        "num_vars": p.num_vars(),
        "num_rows": p.num_rows(),
        "pivots": stats.iterations,
        "certificate": name,
        "verified": verified,
        "violation": check.err().map(|v| format!("{v:?}")),
        "companion_g": companion,
    });
    let (verdict, summary) = if verified {
        (
            Verdict::Verified,
            format!(
                "{} {} = {optimum} (bound {bound}{}), certificate checked",
                if sense == Sense::Min { "min" } else { "max" },
                cert.objective_label,
                if forced { ", forced" } else { "" },
            ),
        )
    } else {
        (Verdict::Refuted, "certificate failed to check".to_string())
    };
    debug_assert_eq!(cert.status, CertStatus::Optimal);
    Ok(Outcome::new(verdict, summary, details))
}

fn run_forcing(
    args: &Args,
    ctx: &mut Context,
    mode: LpMode,
    target: Vec<i64>,
    warm: WarmStart,
) -> CliResult<Outcome> {
    let d = args.dim;
    let opts = ForcingOptions {
        start_radius: args.radius,
        max_radius: args.max_radius,
        var_budget: args.var_budget,
        warm,
        target: Some(target),
    };
    let r = certify_forcing(d, mode, &opts)?;
    let name = args
        .out
        .clone()
        .unwrap_or_else(|| format!("lp-forcing-{}-d{d}.json", mode.name()));
    ctx.out.write_json(&name, &r)?;
    let last = r.attempts.last().map_or(0, |a| a.radius);
    let (verdict, summary) = if !r.verified {
        (
            Verdict::Inconclusive,
            "a certificate failed to check".to_string(),
        )
    } else if r.forced {
        (
            Verdict::Verified,
            format!(
                "forced: min {} = {} at R={last}",
                r.certificate.objective_label, r.minimum
            ),
        )
    } else if r.budget_exhausted {
        (
            Verdict::Inconclusive,
            format!(
                "not forced up to R={last} (min {} < {}); variable budget reached",
                r.minimum, r.bound
            ),
        )
    } else {
        (
            Verdict::Refuted,
            format!("not forced at R={last}: min {} < {}", r.minimum, r.bound),
        )
    };
    let details = json!({
        "mode": mode.name(),
        "dim": d,
        "target": r.target,
        "bound": r.bound,
        "forced": r.forced,
        "minimum": r.minimum.to_string(),
        "radii": r.attempts.iter().map(|a| json!({
            "radius": a.radius, "vars": a.vars, "rows": a.rows,
            "minimum": a.minimum.to_string(), "pivots": a.pivots,
        })).collect::<Vec<_>>(),
        "companion_g_minimum": r.companion_g_minimum.as_ref().map(|x| x.to_string()),
        "verified": r.verified,
        "budget_exhausted": r.budget_exhausted,
        "report": name,
    });
    Ok(Outcome::new(verdict, summary, details).exhaustive(!r.budget_exhausted))
}
