use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn cli() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_torsionlab"));
    c.env_remove("TORSIONLAB_TOL");
    c
}

fn run(args: &[&str]) -> Output {
    cli().args(args).output().unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap_or(-1)
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn emit(dir: &Path, name: &str) -> PathBuf {
    let p = dir.join(format!("{name}.json"));
    let o = run(&["examples", "emit", name, "--out", p.to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    p
}

#[test]
fn classify_ledger_obata_is_w1() {
    let o = run(&["classify", "--model", "builtin:ledger_obata6"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("W1"), "{}", stdout(&o));
}

#[test]
fn reduce_product12_gives_two_leaves() {
    let dir = tempfile::tempdir().unwrap();
    let p = emit(dir.path(), "product12");
    let o = run(&["reduce", "--in", p.to_str().unwrap(), "--seed", "7"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let text = stdout(&o);
    assert!(text.contains("2 leaves"), "{text}");
    assert!(text.contains("irreducible  dim 6") && text.contains("special  dim 6"), "{text}");
}

#[test]
fn zero_psi_is_refused_with_its_clause() {
    let dir = tempfile::tempdir().unwrap();
    let p = emit(dir.path(), "product12");
    let mut v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&p).unwrap()).unwrap();
    v["psi_plus"]["terms"] = serde_json::json!([]);
    let broken = dir.path().join("broken.json");
    std::fs::write(&broken, v.to_string()).unwrap();
    let o = run(&["validate", "--in", broken.to_str().unwrap()]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("clause (ii)"), "{}", stderr(&o));
}

#[test]
fn perturbed_psi_renders_fail_lines_and_exits_1() {
    let dir = tempfile::tempdir().unwrap();
    let p = emit(dir.path(), "product12");
    let mut v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&p).unwrap()).unwrap();
    let c = v["psi_plus"]["terms"][0]["c"].as_f64().unwrap();
    v["psi_plus"]["terms"][0]["c"] = serde_json::json!(c + 1e-3);
    let pert = dir.path().join("perturbed.json");
    std::fs::write(&pert, v.to_string()).unwrap();
    let out = dir.path().join("report.json");
    let o = run(&["report", "--suite", "holonomy", "--in", pert.to_str().unwrap(), "--out", out.to_str().unwrap()]);
    assert_eq!(code(&o), 1);
    let text = stdout(&o);
    assert!(text.lines().any(|l| l.contains("FAIL") && l.contains("ψ⁺ ∈ λ³")), "{text}");
    // The written report renders back to the same text.
    let again = run(&["report", "--in", out.to_str().unwrap()]);
    assert_eq!(code(&again), 1);
    assert_eq!(stdout(&again), text);
}

#[test]
fn malformed_json_reports_line_and_column() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("bad.json");
    std::fs::write(&p, "{\n  \"degree\": 2,\n  \"terms\": [ {\"idx\": [1, 2], \"c\": } ]\n}\n").unwrap();
    let o = run(&["validate", "--in", p.to_str().unwrap()]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("line 3, column"), "{}", stderr(&o));
}

#[test]
fn unknown_verb_and_unknown_suite_exit_2() {
    assert_eq!(code(&run(&["frobnicate"])), 2);
    let o = run(&["report", "--suite", "nope", "--model", "builtin:flag6"]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("unknown suite"), "{}", stderr(&o));
}

#[test]
fn unknown_builtin_exits_2() {
    assert_eq!(code(&run(&["examples", "emit", "no_such_model"])), 2);
    assert_eq!(code(&run(&["classify", "--model", "builtin:no_such_model"])), 2);
}

#[test]
fn env_tolerance_applies_and_flag_overrides_it() {
    let args = ["report", "--suite", "g1", "--model", "builtin:hopf6"];
    let strict = cli().args(args).env("TORSIONLAB_TOL", "1e-30").output().unwrap();
    assert_eq!(code(&strict), 1);
    let relaxed = cli().args(args).args(["--tol", "1e-8"]).env("TORSIONLAB_TOL", "1e-30").output().unwrap();
    assert_eq!(code(&relaxed), 0, "{}", stdout(&relaxed));
}

#[test]
fn seed_changes_nothing_for_model_suites_but_is_recorded_by_reduce() {
    let a = run(&["report", "--suite", "g1", "--model", "builtin:flag6", "--seed", "3", "--json", "-"]);
    let b = run(&["report", "--suite", "g1", "--model", "builtin:flag6", "--json", "-"]);
    assert_eq!(a.stdout, b.stdout);
    let r = run(&["reduce", "--model", "builtin:flag6", "--seed", "5", "--json", "-"]);
    assert_eq!(code(&r), 0);
    let v: serde_json::Value = serde_json::from_slice(&r.stdout).unwrap();
    assert_eq!(v["seed"], 5);
}

#[test]
fn emitted_models_validate_and_classify_like_builtins() {
    let dir = tempfile::tempdir().unwrap();
    for name in ["torus6", "hopf6", "flag6", "twistor6"] {
        let p = emit(dir.path(), name);
        assert_eq!(code(&run(&["validate", "--in", p.to_str().unwrap()])), 0, "{name}");
        let from_file = run(&["classify", "--model", p.to_str().unwrap(), "--json", "-"]);
        let from_builtin = run(&["classify", "--model", &format!("builtin:{name}"), "--json", "-"]);
        let f: serde_json::Value = serde_json::from_slice(&from_file.stdout).unwrap();
        let b: serde_json::Value = serde_json::from_slice(&from_builtin.stdout).unwrap();
        assert_eq!(f["class"], b["class"], "{name}");
        assert_eq!(f["flags"], b["flags"], "{name}");
    }
}

#[test]
fn torus_example_has_no_brackets() {
    let o = run(&["examples", "emit", "torus6"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["brackets"].as_array().unwrap().len(), 0);
}

#[test]
fn algebra_suites_run_without_a_model() {
    for s in ["operators", "curvature-algebra"] {
        let o = run(&["report", "--suite", s]);
        assert_eq!(code(&o), 0, "{s}: {}", stdout(&o));
        assert!(stdout(&o).ends_with("all gated checks pass\n"));
    }
}

#[test]
fn examples_list_names_every_builtin() {
    let text = stdout(&run(&["examples", "list"]));
    for name in ["torus6", "hopf4", "ledger_obata6", "flag6", "twistor6", "product12"] {
        assert!(text.contains(name), "{text}");
    }
}
