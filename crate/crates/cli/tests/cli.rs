use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value as Json;

fn muh(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_muh"))
        .current_dir(dir)
        .args(args)
        .output()
        .expect("run muh")
}

fn report(dir: &Path, name: &str) -> Json {
    serde_json::from_str(&std::fs::read_to_string(dir.join(name)).unwrap()).unwrap()
}

fn without_timing(mut r: Json) -> Json {
    r.as_object_mut().unwrap().remove("elapsed_seconds");
    r
}

#[test]
fn report_schema_and_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let out = muh(dir.path(), &["construct", "--kind", "prime", "--dim", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let printed: Json = serde_json::from_slice(&out.stdout).unwrap();
    let saved = report(dir.path(), "construct.report.json");
    assert_eq!(printed, saved);
    for key in [
        "schema_version",
        "tool",
        "version",
        "subcommand",
        "inputs",
        "verdict",
        "exit_code",
        "summary",
        "elapsed_seconds",
        "outputs",
        "details",
    ] {
        assert!(saved.get(key).is_some(), "{key}");
    }
    assert_eq!(saved["subcommand"], "construct");
    assert_eq!(saved["inputs"]["args"]["dim"], 3);
    assert_eq!(
        saved["outputs"],
        serde_json::json!(["prime3.json", "construct.report.json"])
    );
}

#[test]
fn quiet_prints_one_line() {
    let dir = tempfile::tempdir().unwrap();
    let out = muh(
        dir.path(),
        &["--quiet", "forcing-check", "--preset", "prop-noF6"],
    );
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 1);
    assert!(text.contains("contradiction established"));
}

#[test]
fn usage_errors_exit_64() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(muh(dir.path(), &["frobnicate"]).status.code(), Some(64));
    assert_eq!(
        muh(dir.path(), &["lp-certify", "--dim", "5"]).status.code(),
        Some(64)
    );
    assert_eq!(muh(dir.path(), &["--help"]).status.code(), Some(0));
    assert_eq!(muh(dir.path(), &["--version"]).status.code(), Some(0));
}

#[test]
fn outputs_stay_inside_the_output_directory() {
    let dir = tempfile::tempdir().unwrap();
    let inner = dir.path().join("out");
    std::fs::create_dir(&inner).unwrap();
    for name in ["../x.json", "/tmp/x.json", "a/../../x.json", ""] {
        let out = muh(
            &inner,
            &[
                "construct",
                "--kind",
                "fourier",
                "--dim",
                "2",
                "--out",
                name,
            ],
        );
        assert_eq!(out.status.code(), Some(64), "{name}");
    }
    let out = muh(
        &inner,
        &[
            "--report",
            "../r.json",
            "construct",
            "--kind",
            "fourier",
            "--dim",
            "2",
        ],
    );
    assert_eq!(out.status.code(), Some(64));
    assert!(!dir.path().join("x.json").exists());
    assert!(!dir.path().join("r.json").exists());

    let out = muh(
        dir.path(),
        &[
            "--out-dir",
            "out",
            "construct",
            "--kind",
            "fourier",
            "--dim",
            "2",
            "--out",
            "sub/f2.json",
        ],
    );
    assert_eq!(out.status.code(), Some(0));
    assert!(inner.join("sub/f2.json").exists());
}

#[test]
fn output_directory_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_muh"))
        .current_dir(dir.path())
        .env("MUH_OUT_DIR", "envout")
        .args(["construct", "--kind", "fourier", "--dim", "3"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(dir.path().join("envout/fourier3.json").exists());
}

#[test]
fn malformed_input_names_the_invariant() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path();
    std::fs::write(
        p.join("bad.json"),
        r#"{"dim": 2, "mode": "exact", "root_order": 2, "entries": [[0, 0], [0, 0]]}"#,
    )
    .unwrap();
    let out = muh(p, &["verify", "--system", "bad.json"]);
    assert_eq!(out.status.code(), Some(1));
    let r = report(p, "verify.report.json");
    assert_eq!(r["verdict"], "refuted");
    assert!(r["summary"]
        .as_str()
        .unwrap()
        .contains("rows 0 and 1 are not orthogonal"));

    let out = muh(
        p,
        &["fourier-dump", "--system", "bad.json", "--radius", "1"],
    );
    assert_eq!(out.status.code(), Some(65));
    assert!(String::from_utf8_lossy(&out.stderr).contains("orthogonality"));

    std::fs::write(
        p.join("short.json"),
        r#"{"dim": 2, "mode": "exact", "root_order": 2, "entries": [[0, 0]]}"#,
    )
    .unwrap();
    assert_eq!(
        muh(p, &["verify", "--system", "short.json"]).status.code(),
        Some(65)
    );
    assert_eq!(
        muh(p, &["verify", "--system", "absent.json"]).status.code(),
        Some(74)
    );
}

#[test]
fn verdicts_do_not_depend_on_threads() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path();
    let mut runs = Vec::new();
    for threads in ["1", "4"] {
        for args in [
            &[
                "conjecture-scan",
                "--family",
                "f6t",
                "--samples",
                "20",
                "--seed",
                "11",
                "--report",
                "scan.json",
            ][..],
            &[
                "enumerate",
                "--dim",
                "4",
                "--order",
                "4",
                "--classes",
                "--report",
                "enum.json",
            ][..],
        ] {
            let mut full = vec!["--threads", threads];
            full.extend_from_slice(args);
            assert_eq!(muh(p, &full).status.code(), Some(0));
        }
        let mut scan = without_timing(report(p, "scan.json"));
        let mut enumeration = without_timing(report(p, "enum.json"));
        scan["inputs"]["threads"] = Json::Null;
        enumeration["inputs"]["threads"] = Json::Null;
        runs.push((
            scan,
            enumeration,
            std::fs::read(p.join("conjecture-f6t.json")).unwrap(),
        ));
    }
    assert_eq!(runs[0], runs[1]);
}

#[test]
fn lp_forcing_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path();
    let forced = muh(
        p,
        &["lp-certify", "--dim", "3", "--mode", "full", "--forcing"],
    );
    assert_eq!(forced.status.code(), Some(0));
    let not_forced = muh(
        p,
        &[
            "lp-certify",
            "--dim",
            "4",
            "--mode",
            "g_only",
            "--forcing",
            "--max-radius",
            "4",
        ],
    );
    assert_eq!(not_forced.status.code(), Some(1));
    let budget = muh(
        p,
        &[
            "lp-certify",
            "--dim",
            "4",
            "--mode",
            "g_only",
            "--forcing",
            "--var-budget",
            "1",
        ],
    );
    assert_eq!(budget.status.code(), Some(2));
    assert_eq!(report(p, "lp-certify.report.json")["exhaustive"], false);
}

#[test]
fn budgeted_search_is_inconclusive() {
    let dir = tempfile::tempdir().unwrap();
    let out = muh(
        dir.path(),
        &[
            "enumerate",
            "--dim",
            "6",
            "--order",
            "6",
            "--find-complete-system",
            "--budget-nodes",
            "50",
        ],
    );
    assert_eq!(out.status.code(), Some(2));
    let r = report(dir.path(), "enumerate.report.json");
    assert_eq!(r["exhaustive"], false);
    assert_eq!(r["verdict"], "inconclusive");
}

#[test]
fn forcing_search_reports_conditionality() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path();
    assert_eq!(
        muh(p, &["construct", "--kind", "fourier", "--dim", "6"])
            .status
            .code(),
        Some(0)
    );
    let out = muh(
        p,
        &[
            "forcing-search",
            "--dim",
            "6",
            "--known",
            "fourier6.json",
            "--size",
            "6",
            "--mode",
            "plain",
        ],
    );
    assert_eq!(out.status.code(), Some(0));
    let r = report(p, "forcing-search.report.json");
    assert_eq!(r["exhaustive"], true);
    assert_eq!(r["conditional"], false);
    assert_eq!(r["details"]["search"]["threshold_hits"], 17);
}

#[test]
fn fourier_dump_rows() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path();
    assert_eq!(
        muh(p, &["construct", "--kind", "prime", "--dim", "2"])
            .status
            .code(),
        Some(0)
    );
    assert_eq!(
        muh(
            p,
            &["fourier-dump", "--system", "prime2.json", "--radius", "1"]
        )
        .status
        .code(),
        Some(0)
    );
    let text = std::fs::read_to_string(p.join("fourier-dump.csv")).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "r1,r2,F,G");
    assert_eq!(lines.len(), 10);
    // F(0) = d⁴ and G(0) = d³.
    assert!(lines.contains(&"0,0,16,8"));
}
