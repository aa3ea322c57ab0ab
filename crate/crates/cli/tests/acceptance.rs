//! One line per acceptance criterion, each checked through the `muh` binary
//! with independent recomputation where the criterion names a value.

use std::f64::consts::TAU;
use std::path::Path;
use std::process::Command;

use muh_core::interchange::{read_document, read_system, Document};
use muh_core::{
    big_f_of, equivalent, fourier_matrix, FamilyId, MuhSystem, PhaseMatrix, PhaseScalar,
};
use muh_lp::{verify_certificate, LpCertificate, LpMode, LpProblem, Sense, VarKind};
use serde_json::Value as Json;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

struct Run {
    code: i32,
    report: Json,
}

fn muh(dir: &Path, args: &[&str]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_muh"))
        .arg("--out-dir")
        .arg(dir)
        .arg("--quiet")
        .args(args)
        .output()
        .expect("run muh");
    let name = format!("{}.report.json", args[0]);
    let report = std::fs::read_to_string(dir.join(name))
        .ok()
        .and_then(|t| serde_json::from_str(&t).ok())
        .unwrap_or(Json::Null);
    if !out.status.success() {
        eprintln!(
            "muh {args:?}: {}",
            String::from_utf8_lossy(&out.stderr).trim()
        );
    }
    Run {
        code: out.status.code().unwrap_or(-1),
        report,
    }
}

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn tmp() -> tempfile::TempDir {
    tempfile::tempdir().expect("temp dir")
}

/// Numerator and denominator of a certificate rational.
fn ratio(s: &str) -> (i128, i128) {
    match s.split_once('/') {
        Some((p, q)) => (p.parse().unwrap(), q.parse().unwrap()),
        None => (s.parse().unwrap(), 1),
    }
}

/// Solves through the binary, then re-checks the written certificate
/// against an independently rebuilt program.
fn lp_optimum(
    dir: &Path,
    mode: LpMode,
    d: usize,
    r: i64,
    kind: VarKind,
    target: &[i64],
) -> Result<String, String> {
    let t: Vec<String> = target.iter().map(i64::to_string).collect();
    let kind_arg = if kind == VarKind::F { "f" } else { "g" };
    let run = muh(
        dir,
        &[
            "lp-certify",
            "--dim",
            &d.to_string(),
            "--mode",
            mode.name(),
            "--radius",
            &r.to_string(),
            "--target",
            &t.join(","),
            "--kind",
            kind_arg,
            "--out",
            "cert.json",
        ],
    );
    ensure(run.code == 0, format!("lp-certify d={d} exit {}", run.code))?;
    let cert = LpCertificate::read(&dir.join("cert.json")).map_err(|e| e.to_string())?;
    let p = LpProblem::build(mode, d, r)
        .and_then(|p| p.with_objective(Sense::Min, kind, target))
        .map_err(|e| e.to_string())?;
    verify_certificate(&p, &cert).map_err(|v| format!("certificate rejected: {v:?}"))?;
    let opt = cert.optimum.ok_or("no optimum")?.to_string();
    ensure(
        run.report["details"]["optimum"] == opt.clone(),
        "report and certificate disagree",
    )?;
    Ok(opt)
}

fn criterion_1() -> Outcome {
    let dir = tmp();
    let opt = lp_optimum(
        dir.path(),
        LpMode::GOnly,
        5,
        5,
        VarKind::G,
        &[5, -5, 0, 0, 0],
    )?;
    ensure(opt == "25", format!("min G_1 = {opt}"))?;
    Ok("g_only d=5 R=5: min G_1(5,-5,0,0,0) = 25, certificate re-verified".into())
}

fn criterion_2() -> Outcome {
    let dir = tmp();
    let p = dir.path();
    let cases: [(usize, i64, VarKind, Vec<i64>, &str); 5] = [
        (3, 3, VarKind::F, vec![3, -3, 0], "81"),
        (4, 4, VarKind::F, vec![4, -4, 0, 0], "256"),
        (4, 4, VarKind::G, vec![4, -4, 0, 0], "64"),
        (5, 5, VarKind::F, vec![5, -5, 0, 0, 0], "625"),
        (2, 4, VarKind::F, vec![4, -4], "16"),
    ];
    let mut got = Vec::new();
    for (d, r, kind, target, want) in cases {
        let opt = lp_optimum(p, LpMode::Full, d, r, kind, &target)?;
        ensure(opt == want, format!("d={d} {kind:?}: {opt} != {want}"))?;
        got.push(format!("{kind:?}{target:?}={opt}"));
    }
    Ok(format!("full mode: {}", got.join(", ")))
}

fn criterion_3() -> Outcome {
    let dir = tmp();
    let a = lp_optimum(dir.path(), LpMode::GOnly, 4, 4, VarKind::G, &[4, -4, 0, 0])?;
    let (n, q) = ratio(&a);
    ensure(n < 16 * q, format!("d=4 g_only min {a} is not below 16"))?;
    let b = lp_optimum(
        dir.path(),
        LpMode::Full,
        6,
        6,
        VarKind::F,
        &[6, -6, 0, 0, 0, 0],
    )?;
    let (n, q) = ratio(&b);
    ensure(n < 1296 * q, format!("d=6 full min {b} is not below 1296"))?;
    Ok(format!(
        "d=4 g_only R=4 min {a} < 16; d=6 full R=6 min {b} < 1296"
    ))
}

fn class_matrix(dir: &Path, d: usize) -> Result<PhaseMatrix, String> {
    match read_document(&dir.join(format!("bh-d{d}-q{d}/class-000.json")))
        .map_err(|e| e.to_string())?
    {
        Document::Matrix(m) => Ok(m),
        _ => Err("class file is not a matrix".into()),
    }
}

fn criterion_4() -> Outcome {
    let dir = tmp();
    let p = dir.path();
    for d in [3usize, 5] {
        let ds = d.to_string();
        let run = muh(p, &["enumerate", "--dim", &ds, "--order", &ds, "--classes"]);
        ensure(run.code == 0, format!("BH({d},{d}) exit {}", run.code))?;
        ensure(run.report["exhaustive"] == true, "not exhaustive")?;
        ensure(
            run.report["details"]["classes"] == 1,
            format!("BH({d},{d}) classes {}", run.report["details"]["classes"]),
        )?;
        let m = class_matrix(p, d)?;
        ensure(
            equivalent(&m, &fourier_matrix(d)).unwrap(),
            format!("BH({d},{d}) class is not the Fourier matrix"),
        )?;
    }
    let run = muh(
        p,
        &[
            "enumerate",
            "--dim",
            "6",
            "--order",
            "6",
            "--find-complete-system",
        ],
    );
    ensure(run.code == 0, format!("d=6 search exit {}", run.code))?;
    ensure(
        run.report["exhaustive"] == true,
        "d=6 search not exhaustive",
    )?;
    let systems = run.report["details"]["systems"]
        .as_array()
        .map_or(usize::MAX, Vec::len);
    ensure(systems == 0, format!("{systems} systems in BH(6,6)"))?;
    Ok(format!(
        "BH(3,3) and BH(5,5) have one class each (the Fourier matrix); BH(6,6) complete search empty, exhaustive, {} nodes",
        run.report["details"]["nodes"]
    ))
}

/// `Σ_r c_r²` in double precision.
fn sum_of_squares(m: &PhaseMatrix, k: usize) -> f64 {
    let (mut re, mut im) = (0.0f64, 0.0f64);
    for r in 0..m.dim() {
        let t = 2.0 * m.entry(r, k).turns(64).to_f64() * TAU;
        re += t.cos();
        im += t.sin();
    }
    re.hypot(im)
}

fn real_first(s: &MuhSystem) -> bool {
    s.matrix(0).columns().iter().all(|c| c.is_real(1e-12))
}

fn no_real_on(dir: &Path, s: &MuhSystem, file: Option<&str>) -> Result<usize, String> {
    let mut args = vec!["forcing-check", "--preset", "thm-noreal"];
    if let Some(f) = file {
        args.extend(["--system", f]);
    }
    let run = muh(dir, &args);
    ensure(
        run.code == 0,
        format!("thm-noreal d={} exit {}", s.dim(), run.code),
    )?;
    let cols = run.report["details"]["columns"]
        .as_array()
        .ok_or("no columns")?;
    ensure(cols.len() == s.dim() * (s.len() - 1), "wrong column count")?;
    for c in cols {
        ensure(
            c["sum_of_squares"]["text"] == "0",
            format!("nonzero sum {c}"),
        )?;
    }
    for m in &s.matrices()[1..] {
        for k in 0..s.dim() {
            ensure(
                sum_of_squares(m, k) < 1e-12,
                "oracle: nonzero sum of squares",
            )?;
        }
    }
    Ok(cols.len())
}

fn f6_character_sum(g: &[i64]) -> (f64, f64) {
    let s: i64 = g.iter().enumerate().map(|(j, x)| j as i64 * x).sum();
    (0..6).fold((0.0, 0.0), |(re, im), k| {
        let t = (k * s) as f64 / 6.0 * TAU;
        (re + t.cos(), im + t.sin())
    })
}

fn criterion_5() -> Outcome {
    let dir = tmp();
    let p = dir.path();
    let d2 = muh_core::prime_complete_system(2).unwrap();
    let n2 = no_real_on(p, &d2, None)?;

    let run = muh(
        p,
        &[
            "enumerate",
            "--dim",
            "4",
            "--order",
            "4",
            "--find-complete-system",
        ],
    );
    ensure(run.code == 0, format!("d=4 search exit {}", run.code))?;
    let files: Vec<String> = run.report["details"]["systems"]
        .as_array()
        .ok_or("no systems")?
        .iter()
        .map(|s| s["file"].as_str().unwrap().to_string())
        .collect();
    let (file, s4) = files
        .iter()
        .map(|f| (f.clone(), read_system(&p.join(f)).unwrap()))
        .find(|(_, s)| real_first(s))
        .ok_or("no d=4 system with a real first member")?;
    ensure(s4.is_complete(), "d=4 system incomplete")?;
    let path = p.join(&file);
    let n4 = no_real_on(p, &s4, Some(path.to_str().unwrap()))?;

    let run = muh(p, &["forcing-check", "--preset", "prop-noF6"]);
    ensure(run.code == 0, format!("prop-noF6 exit {}", run.code))?;
    let summary = run.report["summary"].as_str().unwrap_or_default();
    ensure(
        summary.contains("contradiction established"),
        summary.to_string(),
    )?;
    let det = &run.report["details"];
    for c in det["checks"].as_array().ok_or("no checks")? {
        ensure(
            c["partial_energy"]["text"] == "216",
            "partial energy is not 216",
        )?;
        ensure(c["conclusion"]["verdict"] == "forced", "set not forced")?;
        for diff in c["differences"].as_array().unwrap() {
            ensure(
                diff["member"] == true,
                format!("difference outside the vanishing set: {diff}"),
            )?;
        }
        let vectors: Vec<Vec<i64>> = serde_json::from_value(c["vectors"].clone()).unwrap();
        let oracle: f64 = (0..6)
            .map(|k| {
                let (re, im) = vectors.iter().fold((0.0, 0.0), |(re, im), g| {
                    let s: i64 = g.iter().enumerate().map(|(j, x)| j as i64 * x).sum();
                    let t = (k * s) as f64 / 6.0 * TAU;
                    (re + t.cos(), im + t.sin())
                });
                re * re + im * im
            })
            .sum();
        ensure(
            (oracle - 216.0).abs() < 1e-9,
            format!("oracle partial energy {oracle}"),
        )?;
    }
    let statements: Vec<&str> = det["relations"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["relation"]["statement"].as_str().unwrap())
        .collect();
    for want in ["z_2 z_5^2 = z_1^2 z_4", "z_2^2 z_5 = z_1 z_4^2"] {
        ensure(
            statements.contains(&want),
            format!("missing relation {want}: {statements:?}"),
        )?;
    }
    let step = det["contradiction"]["verdict"]["step"]
        .as_u64()
        .ok_or("no contradiction step")? as usize;
    let last = &det["contradiction"]["steps"][step];
    ensure(
        last["inner"]["text"] == "36",
        format!("inner product {}", last["inner"]),
    )?;
    let delta: Vec<i64> = serde_json::from_value(last["delta"].clone()).unwrap();
    let (re, im) = f6_character_sum(&delta);
    ensure(
        (re + 30.0 - 36.0).abs() < 1e-9 && im.abs() < 1e-9,
        "oracle inner product is not 36",
    )?;
    Ok(format!(
        "thm-noreal holds on d=2 ({n2} columns) and d=4 ({n4} columns); prop-noF6: energies 216, relations [{}], inner product 36, contradiction established",
        statements.join("; ")
    ))
}

/// Members of the plain vanishing set in dimension `d`, counted by type.
fn vanishing_count(d: usize) -> usize {
    let c2 = |n: usize| n * n.saturating_sub(1) / 2;
    2 * d * (d - 1) + 2 * d * c2(d - 1) + c2(d) * c2(d - 2)
}

const REQUIRED: [&str; 8] = [
    "gj0",
    "gj_tile",
    "g_tile",
    "fg_tile2",
    "f0_g0",
    "f_le_m_g",
    "f_vanishes",
    "f_double_sum",
];

fn verify_checks(run: &Run) -> Result<&Vec<Json>, String> {
    ensure(
        run.code == 0,
        format!("verify exit {}: {}", run.code, run.report["summary"]),
    )?;
    let checks = run.report["details"]["checks"]
        .as_array()
        .ok_or("no checks")?;
    for name in REQUIRED {
        let c = checks
            .iter()
            .find(|c| c["name"] == name)
            .ok_or(format!("missing {name}"))?;
        ensure(c["status"] == "passed", format!("{name}: {}", c["status"]))?;
    }
    Ok(checks)
}

fn criterion_6() -> Outcome {
    let dir = tmp();
    let p = dir.path();
    for d in [2usize, 3, 5, 7] {
        let ds = d.to_string();
        ensure(
            muh(p, &["construct", "--kind", "prime", "--dim", &ds]).code == 0,
            "construct failed",
        )?;
        let file = p.join(format!("prime{d}.json")).display().to_string();
        let run = muh(
            p,
            &[
                "verify",
                "--system",
                &file,
                "--samples",
                "100",
                "--radius",
                "4",
                "--seed",
                "6",
            ],
        );
        let checks = verify_checks(&run)?;
        ensure(
            run.report["details"]["tolerance"] == 0.0,
            "exact fixture checked with nonzero tolerance",
        )?;
        let tile = checks.iter().find(|c| c["name"] == "g_tile").unwrap();
        ensure(tile["evaluated"] == 100, "not 100 random vectors")?;
        let van = checks.iter().find(|c| c["name"] == "f_vanishes").unwrap();
        ensure(
            van["evaluated"] == vanishing_count(d),
            format!(
                "d={d}: {} vanishing vectors, expected {}",
                van["evaluated"],
                vanishing_count(d)
            ),
        )?;
    }
    Ok("d=2,3,5,7: gj0, Gj tiling, G tiling, FG tiling, F(0)/G(0), F<=dG on 100 vectors and f on the vanishing set, all exact".into())
}

/// `|g_1(ρ)|` in double precision from the entry angles.
fn g1_oracle(h: &PhaseMatrix, rho: &[i64]) -> f64 {
    let (mut re, mut im) = (0.0f64, 0.0f64);
    for k in 0..h.dim() {
        let t: f64 = (0..h.dim())
            .map(|j| h.entry(j, k).turns(64).to_f64() * rho[j] as f64)
            .sum::<f64>()
            * TAU;
        re += t.cos();
        im += t.sin();
    }
    re.hypot(im)
}

fn criterion_7() -> Outcome {
    let dir = tmp();
    let p = dir.path();
    let mut maxima = Vec::new();
    for f in [FamilyId::F6, FamilyId::F6Transposed, FamilyId::D6] {
        let run = muh(
            p,
            &[
                "conjecture-scan",
                "--family",
                f.name(),
                "--samples",
                "100",
                "--seed",
                "7",
                "--tol",
                "1e-8",
            ],
        );
        ensure(run.code == 0, format!("{} exit {}", f.name(), run.code))?;
        let det = &run.report["details"];
        ensure(det["sample_count"] == 100, "not 100 samples")?;
        ensure(
            det["precision_bits"].as_u64().unwrap_or(0) >= 167,
            "below 50 digits",
        )?;
        let max = det["global_max"].as_f64().ok_or("no maximum")?;
        ensure(max < 1e-8, format!("{}: max {max}", f.name()))?;
        let full: Json = serde_json::from_str(
            &std::fs::read_to_string(p.join(det["report"].as_str().unwrap())).unwrap(),
        )
        .unwrap();
        let rho: Vec<Vec<i64>> = serde_json::from_value(full["rho"].clone()).unwrap();
        for s in full["samples"].as_array().unwrap().iter().take(10) {
            let params: Vec<f64> = serde_json::from_value(s["params"].clone()).unwrap();
            let scalars: Vec<PhaseScalar> = params
                .iter()
                .map(|&t| PhaseScalar::from_turns_f64(256, t))
                .collect();
            let h = f.instantiate(&scalars).unwrap();
            for r in &rho {
                ensure(
                    g1_oracle(&h, r) < 1e-12,
                    "double-precision oracle disagrees",
                )?;
            }
        }
        maxima.push(format!("{} {max:.1e}", f.name()));
    }
    let run = muh(p, &["conjecture-scan", "--family", "s6"]);
    ensure(run.code == 0, format!("s6 exit {}", run.code))?;
    ensure(run.report["details"]["asserted"] == false, "s6 asserted")?;
    ensure(p.join("conjecture-s6.json").exists(), "no s6 report")?;
    Ok(format!(
        "max |g_1|: {} at 256 bits; s6 measured {} (not asserted)",
        maxima.join(", "),
        run.report["details"]["global_max"]
    ))
}

/// `Σ_{k,l} c_k^γ conj(c_l^γ)` in double precision.
fn double_sum_oracle(s: &MuhSystem, g: &[i64]) -> f64 {
    let mut cols = Vec::new();
    for m in s.matrices() {
        for k in 0..s.dim() {
            let t: f64 = (0..s.dim())
                .map(|j| m.entry(j, k).turns(64).to_f64() * g[j] as f64)
                .sum();
            cols.push(t * TAU);
        }
    }
    let mut acc = 0.0;
    for a in &cols {
        for b in &cols {
            acc += (a - b).cos();
        }
    }
    acc
}

fn criterion_8() -> Outcome {
    let dir = tmp();
    let p = dir.path();
    for d in ["2", "3"] {
        ensure(
            muh(p, &["construct", "--kind", "prime", "--dim", d]).code == 0,
            "construct failed",
        )?;
        let file = p.join(format!("prime{d}.json")).display().to_string();
        let run = muh(p, &["verify", "--system", &file, "--samples", "100"]);
        verify_checks(&run)?;
        let s = read_system(Path::new(&file)).unwrap();
        for g in [vec![1i64; s.dim()], (0..s.dim() as i64).collect::<Vec<_>>()] {
            let exact = big_f_of(&s, &g).unwrap().re_f64();
            ensure(
                (exact - double_sum_oracle(&s, &g)).abs() < 1e-9,
                "oracle double sum disagrees",
            )?;
        }
    }
    ensure(
        muh(
            p,
            &[
                "construct",
                "--kind",
                "prime",
                "--dim",
                "5",
                "--numeric",
                "--out",
                "p5n.json",
            ],
        )
        .code
            == 0,
        "construct failed",
    )?;
    let file = p.join("p5n.json").display().to_string();
    let run = muh(
        p,
        &[
            "verify",
            "--system",
            &file,
            "--samples",
            "100",
            "--tol",
            "1e-10",
        ],
    );
    let checks = verify_checks(&run)?;
    let note = checks.iter().find(|c| c["name"] == "f_double_sum").unwrap()["note"].clone();
    Ok(format!(
        "exact on d=2,3; numeric d=5 within 1e-10 ({})",
        note.as_str().unwrap_or("")
    ))
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("LP g_only d=5 forces 25", criterion_1),
        ("LP full-mode optima", criterion_2),
        ("LP negative results", criterion_3),
        ("Butson enumeration and d=6 search", criterion_4),
        ("forcing presets", criterion_5),
        ("identities on prime fixtures", criterion_6),
        ("order-6 family scans", criterion_7),
        ("F via g against the double sum", criterion_8),
    ];
    let filter: Vec<String> = std::env::args()
        .skip(1)
        .filter(|a| !a.starts_with('-'))
        .collect();
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let id = format!("criterion {}", i + 1);
        if !filter.is_empty()
            && !filter
                .iter()
                .any(|x| id.contains(x.as_str()) || name.contains(x.as_str()))
        {
            continue;
        }
        match f() {
            Ok(detail) => println!("PASS {id} ({name}): {detail}"),
            Err(why) => {
                failed += 1;
                println!("FAIL {id} ({name}): {why}");
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
