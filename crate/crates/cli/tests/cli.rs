use std::fs;
use std::process::{Command, Output};

use lowdeg_core::destab::DestabCertificate;
use lowdeg_core::sheaf::SheafReport;
use lowdeg_core::{BoundCertificate, ExcReport};

fn lowdeg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lowdeg"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn invariants_table_for_a_4_5_curve() {
    let o = lowdeg(&["invariants", "--model", "p1p1", "--class", "[4,5]"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let out = stdout(&o);
    assert!(out.contains("| gon                  | 4     |"), "{out}");
    assert!(out.contains("| airr                 | 4     |"), "{out}");
}

#[test]
fn exc_on_the_unimodular_rank_one_lattice() {
    let o = lowdeg(&["exc", "--model", "rank1:1", "--json"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let r: ExcReport = serde_json::from_str(&stdout(&o)).unwrap();
    let alphas: Vec<String> = r.classes().iter().map(|c| c.to_string()).collect();
    assert_eq!(
        alphas,
        ["(1)", "(2)", "(3)", "(4)", "(5)", "(6)", "(7)", "(8)"]
    );
}

#[test]
fn destab_exp1_verdict() {
    let o = lowdeg(&["destab", "--model", "exp1", "--curve", "[5,4]", "--e", "4"]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(stdout(&o).contains("verdict: gon > 4"));
}

#[test]
fn destab_outside_the_bogomolov_range_names_the_hypothesis() {
    let o = lowdeg(&["destab", "--model", "exp1", "--curve", "[5,4]", "--e", "10"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("C²/4 required"), "{}", stderr(&o));
}

#[test]
fn exc_from_files_and_json_output_file() {
    let dir = tempfile::tempdir().unwrap();
    let lattice = dir.path().join("l.json");
    let cone = dir.path().join("n.json");
    let out = dir.path().join("out.json");
    fs::write(
        &lattice,
        r#"{"rank": 2, "gram": [[0,1],[1,0]], "canonical": [-2,-2]}"#,
    )
    .unwrap();
    fs::write(&cone, r#"{"rays": [[1,2],[2,1]]}"#).unwrap();
    let args = [
        "exc",
        "--lattice",
        lattice.to_str().unwrap(),
        "--cone",
        cone.to_str().unwrap(),
        "--p",
        "[1,1]",
        "--json",
        out.to_str().unwrap(),
    ];
    let o = lowdeg(&args);
    assert!(o.status.success(), "{}", stderr(&o));
    let first = fs::read(&out).unwrap();
    let r: ExcReport = serde_json::from_slice(&first).unwrap();
    assert_eq!(r.level_bound, 20.into());
    assert_eq!(lowdeg_core::num::render_rat(&r.slice_min), "4/9");
    let classes: Vec<String> = r.classes().iter().map(|c| c.to_string()).collect();
    assert!(classes.contains(&"(6,12)".to_string()));
    assert!(!classes.contains(&"(7,14)".to_string()));
    // byte-identical on a second run
    assert!(lowdeg(&args).status.success());
    assert_eq!(fs::read(&out).unwrap(), first);
}

#[test]
fn malformed_lattice_json_reports_position() {
    let dir = tempfile::tempdir().unwrap();
    let lattice = dir.path().join("l.json");
    fs::write(&lattice, "{\"rank\": 2,\n \"gram\": [[0,1],[1,0]]\n").unwrap();
    let o = lowdeg(&[
        "sheaf",
        "--lattice",
        lattice.to_str().unwrap(),
        "--curve",
        "[5,4]",
        "--e",
        "4",
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("line 3"), "{}", stderr(&o));
}

#[test]
fn missing_gram_field_is_named() {
    let dir = tempfile::tempdir().unwrap();
    let lattice = dir.path().join("l.json");
    fs::write(&lattice, r#"{"rank": 1}"#).unwrap();
    let o = lowdeg(&[
        "sheaf",
        "--lattice",
        lattice.to_str().unwrap(),
        "--curve",
        "[5]",
        "--e",
        "4",
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("gram"), "{}", stderr(&o));
}

#[test]
fn rank_above_the_limit_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let lattice = dir.path().join("l.json");
    let cone = dir.path().join("n.json");
    fs::write(
        &lattice,
        r#"{"rank": 3, "gram": [[1,0,0],[0,-1,0],[0,0,-1]]}"#,
    )
    .unwrap();
    fs::write(&cone, r#"{"rays": [[3,1,0],[3,0,1],[3,-1,0],[3,0,-1]]}"#).unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_lowdeg"))
        .env("LOWDEG_MAX_RANK", "2")
        .args([
            "exc",
            "--lattice",
            lattice.to_str().unwrap(),
            "--cone",
            cone.to_str().unwrap(),
            "--p",
            "[1,0,0]",
        ])
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("unsupported rank 3"), "{}", stderr(&o));
}

#[test]
fn non_hyperbolic_lattice_is_an_input_error() {
    let dir = tempfile::tempdir().unwrap();
    let lattice = dir.path().join("l.json");
    let cone = dir.path().join("n.json");
    fs::write(&lattice, r#"{"rank": 2, "gram": [[1,0],[0,1]]}"#).unwrap();
    fs::write(&cone, r#"{"rays": [[1,0],[0,1]]}"#).unwrap();
    let o = lowdeg(&[
        "exc",
        "--lattice",
        lattice.to_str().unwrap(),
        "--cone",
        cone.to_str().unwrap(),
        "--p",
        "[1,1]",
    ]);
    assert_eq!(o.status.code(), Some(1), "{}", stderr(&o));
}

#[test]
fn bad_flags_exit_one() {
    assert_eq!(
        lowdeg(&["invariants", "--model", "p1p1"]).status.code(),
        Some(1)
    );
    assert_eq!(
        lowdeg(&["invariants", "--model", "k3", "--class", "[1]"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        lowdeg(&["invariants", "--model", "p1p1", "--class", "[0,3]"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        lowdeg(&[
            "invariants",
            "--model",
            "p1p1",
            "--class",
            "[4,5]",
            "--bielliptic",
            "yes"
        ])
        .status
        .code(),
        Some(1)
    );
}

#[test]
fn json_outputs_round_trip() {
    let o = lowdeg(&[
        "invariants",
        "--model",
        "exp1",
        "--class",
        "[10,5]",
        "--json",
    ]);
    let text = stdout(&o);
    let cert: BoundCertificate = serde_json::from_str(&text).unwrap();
    assert_eq!(serde_json::to_string_pretty(&cert).unwrap() + "\n", text);
    assert!(cert.provenance.iter().all(|p| p.reference != "thm:main_q0"));

    let o = lowdeg(&[
        "destab", "--model", "p1p1", "--curve", "[4,4]", "--e", "6", "--json",
    ]);
    let text = stdout(&o);
    let cert: DestabCertificate = serde_json::from_str(&text).unwrap();
    assert_eq!(serde_json::to_string_pretty(&cert).unwrap() + "\n", text);

    let o = lowdeg(&[
        "sheaf", "--model", "p1p1", "--curve", "[4,5]", "--e", "3", "--json",
    ]);
    let text = stdout(&o);
    let r: SheafReport = serde_json::from_str(&text).unwrap();
    assert_eq!(serde_json::to_string_pretty(&r).unwrap() + "\n", text);
}

#[test]
fn certificate_json_has_the_documented_keys() {
    let o = lowdeg(&[
        "invariants",
        "--model",
        "ci:9,10",
        "--class",
        "[9]",
        "--json",
    ]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["gon"], serde_json::json!([80, 90]));
    assert_eq!(v["finiteness_threshold"], serde_json::json!(80));
    for key in ["airr", "exact", "provenance"] {
        assert!(v.get(key).is_some(), "{key}");
    }
}

#[test]
fn generic_destab_warns_about_the_pencil_filter() {
    let dir = tempfile::tempdir().unwrap();
    let lattice = dir.path().join("l.json");
    let cone = dir.path().join("e.json");
    fs::write(&lattice, r#"{"rank": 2, "gram": [[0,1],[1,0]]}"#).unwrap();
    fs::write(&cone, r#"{"rays": [[1,0],[0,1]]}"#).unwrap();
    let o = lowdeg(&[
        "destab",
        "--model",
        "generic",
        "--lattice",
        lattice.to_str().unwrap(),
        "--effective-cone",
        cone.to_str().unwrap(),
        "--curve",
        "[4,4]",
        "--e",
        "6",
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    let out = stdout(&o);
    assert!(out.contains("warning:"), "{out}");
    assert!(out.contains("(0,0)"), "{out}");
}

#[test]
fn selftest_passes_and_negative_controls_fail() {
    let o = lowdeg(&["selftest"]);
    assert!(o.status.success(), "{}", stdout(&o));
    assert!(!stdout(&o).contains("FAIL"));

    let o = lowdeg(&["selftest", "--perturb-gram"]);
    assert_ne!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("FAIL signature"), "{}", stdout(&o));

    let o = lowdeg(&["selftest", "--level-cut", "3"]);
    assert_ne!(o.status.code(), Some(0));
    assert!(
        stdout(&o).contains("FAIL exc_completeness"),
        "{}",
        stdout(&o)
    );
}
