//! One PASS/FAIL line per acceptance criterion.
//!
//! Known deviations are printed as FAIL lines with their residuals but do not
//! fail the test; every other FAIL does.

use std::path::PathBuf;
use std::process::Command;

use torsionlab::curvature::curvature_algebra_suite;
use torsionlab::forms::operator_suite;
use torsionlab::holonomy::linalg::{max_angle_sin, Mat};
use torsionlab::holonomy::{
    nk_suite, random_unitary, reduce_system, ricci_panel, riemannian_reduction, subspace_suite, HolonomySystem, NodeKind,
};
use torsionlab::model::{builtin, builtin_names};
use torsionlab::report::ResidualReport;
use torsionlab::{suites, tol, Error};

const NK: [&str; 3] = ["ledger_obata6", "flag6", "twistor6"];

struct Ledger {
    lines: Vec<String>,
    unexpected: Vec<String>,
}

impl Ledger {
    fn record(&mut self, id: &str, pass: bool, detail: String) {
        let line = format!("criterion {id}: {} ({detail})", if pass { "PASS" } else { "FAIL" });
        println!("{line}");
        if !pass {
            self.unexpected.push(line.clone());
        }
        self.lines.push(line);
    }

    fn deviation(&mut self, id: &str, pass: bool, detail: String) {
        let line = format!("criterion {id}: {} ({detail}; known deviation)", if pass { "PASS" } else { "FAIL" });
        println!("{line}");
        self.lines.push(line);
    }
}

fn worst(r: &ResidualReport) -> f64 {
    r.items.iter().filter(|i| i.gated).map(|i| i.residual).fold(0.0, f64::max)
}

fn failing(r: &ResidualReport) -> Vec<String> {
    r.items.iter().filter(|i| i.gated && !i.pass).map(|i| format!("{}: {}", r.model, i.name)).collect()
}

fn system(name: &str) -> HolonomySystem {
    HolonomySystem::from_model(&builtin(name).unwrap(), tol::MODEL).unwrap()
}

fn criterion1(l: &mut Ledger) {
    let mut max = 0.0f64;
    let mut bad = Vec::new();
    for dim in [6, 8] {
        let r = operator_suite(dim, 200, 1, 1e-9).unwrap();
        max = max.max(worst(&r));
        bad.extend(failing(&r));
    }
    l.record("1 operator calculus", bad.is_empty() && max <= 1e-9, format!("dims 6, 8; max residual {max:.2e}; failing {bad:?}"));
}

fn criterion2(l: &mut Ledger) {
    let r = curvature_algebra_suite(6, 100, 2, 1e-10).unwrap();
    l.record("2 curvature algebra", r.all_pass(), format!("100 samples, dim 6; max residual {:.2e}; failing {:?}", worst(&r), failing(&r)));
}

fn criterion3(l: &mut Ledger) {
    let mut max = 0.0f64;
    let mut bad = Vec::new();
    for name in ["ledger_obata6", "hopf4"] {
        let r = suites::run("curvature", &builtin(name).unwrap(), 0, tol::MODEL).unwrap();
        for key in ["split: reconstruction", "split: Ra Bianchi (A1, A2)", "split: Rm Bianchi (A3, A4)", "Ω in the torsion"] {
            assert!(r.get(key).is_some(), "{name}: missing {key}");
        }
        max = max.max(worst(&r));
        bad.extend(failing(&r));
    }
    l.record("3 decomposition pipeline", bad.is_empty(), format!("ledger_obata6, hopf4; max residual {max:.2e}; failing {bad:?}"));
}

fn criterion4(l: &mut Ledger) {
    let mut applicable = Vec::new();
    let mut bad = Vec::new();
    let mut max = 0.0f64;
    for name in builtin_names() {
        let m = builtin(name).unwrap();
        for s in ["g1", "killing"] {
            match suites::run(s, &m, 0, tol::MODEL) {
                Ok(r) => {
                    applicable.push(format!("{name}/{s}"));
                    max = max.max(worst(&r));
                    bad.extend(failing(&r));
                }
                Err(Error::ClassMismatch(_)) => {}
                Err(e) => bad.push(format!("{name}/{s}: {e}")),
            }
        }
    }
    l.record("4 𝒢₁ theorems", bad.is_empty(), format!("{} suite runs; max residual {max:.2e}; failing {bad:?}", applicable.len()));

    let nk = nk_suite(&builtin("ledger_obata6").unwrap(), tol::MODEL).unwrap();
    l.record("4 ledger_obata6 NK identities", nk.all_pass(), format!("Dψ⁺, N^J, Gray, Ric > 0, Ric̄ = Ric − ¼r; failing {:?}", failing(&nk)));
    let three = nk.get("Ric̄ = Ric − ¾r").expect("¾ comparison is reported");
    l.deviation("4 Ric̄ = Ric − ¾r as printed", three.residual <= 1e-10, format!("residual {:.3e}; the ¼ coefficient holds", three.residual));
}

fn criterion5(l: &mut Ledger) {
    let t = tol::MODEL;
    let sum = HolonomySystem::direct_sum(&system("ledger_obata6"), &system("flag6"), t).unwrap();
    let q = random_unitary(12, 7);
    let sys = sum.transform(&q, t).unwrap();
    let a = &q * Mat::from_fn(12, 6, |r, c| if r == c { 1.0 } else { 0.0 });
    let b = &q * Mat::from_fn(12, 6, |r, c| if r == c + 6 { 1.0 } else { 0.0 });
    let tree = reduce_system(&sys, 7, t).unwrap();
    let leaves = tree.leaves();
    let angle = if leaves.len() == 2 {
        let s0 = max_angle_sin(&leaves[0].basis, &a).min(max_angle_sin(&leaves[1].basis, &a));
        let s1 = max_angle_sin(&leaves[0].basis, &b).min(max_angle_sin(&leaves[1].basis, &b));
        s0.max(s1)
    } else {
        1.0
    };
    let ok = leaves.len() == 2 && leaves.iter().all(|x| x.dim == 6) && angle <= 1e-7 && tree.worst_certificate() <= t;
    l.record("5a shuffled product", ok, format!("{} leaves; principal-angle sine {angle:.2e}; worst certificate {:.2e}", leaves.len(), tree.worst_certificate()));

    let lo = reduce_system(&system("ledger_obata6"), 0, t).unwrap();
    l.record("5b irreducible system", lo.leaves().len() == 1 && lo.kind == NodeKind::Irreducible, format!("ledger_obata6: {} leaf", lo.leaves().len()));

    let fl = system("flag6");
    let tree = reduce_system(&fl, 0, t).unwrap();
    let v = tree.special.clone();
    let rank = v.as_ref().map(|v| v.ncols()).unwrap_or(0);
    let (sub_ok, rr_ok, detail) = match &v {
        Some(v) => {
            let sub = subspace_suite(&fl, v, "flag6", t).unwrap();
            let rr = riemannian_reduction(&fl, v, "flag6", t).unwrap();
            let d = format!("subspace max {:.2e}, reduction max {:.2e}", worst(&sub), worst(&rr.report));
            (sub.all_pass(), rr.report.all_pass() && rr.report.get("R^H(ψ⁺_v) = ½ψ⁺_{rv}").is_some_and(|i| i.pass), d)
        }
        None => (false, false, "no special subspace".into()),
    };
    l.record("5c flag6 special subspace", rank == 2 && sub_ok && rr_ok, format!("rank {rank}; {detail}"));

    let mut bad = Vec::new();
    for name in ["flag6", "twistor6"] {
        let s = system(name);
        let v = reduce_system(&s, 0, t).unwrap().special.expect("special subspace");
        let rr = riemannian_reduction(&s, &v, name, t).unwrap();
        for key in ["𝔭 ∩ 𝔮 = 0", "[𝔥^H, 𝔯] ⊆ 𝔯", "𝔯 closed"] {
            if !rr.report.get(key).is_some_and(|i| i.pass) {
                bad.push(format!("{name}: {key}"));
            }
        }
    }
    l.record("5d 𝔭∩𝔮 and 𝔯-ideal", bad.is_empty(), format!("flag6, twistor6; failing {bad:?}"));
}

fn criterion6(l: &mut Ledger) {
    let mut bad = Vec::new();
    let mut counts = Vec::new();
    for name in NK {
        let p = ricci_panel(&system(name), None, name, tol::MODEL).unwrap();
        for key in ["ricf", "chern"] {
            if !p.report.get(key).is_some_and(|i| i.pass && i.residual <= 1e-8) {
                bad.push(format!("{name}: {key}"));
            }
        }
        counts.push(format!("{name}:{}", p.c_eigenvalue_count));
        if p.c_eigenvalue_count > 3 {
            bad.push(format!("{name}: {} eigenvalue clusters", p.c_eigenvalue_count));
        }
    }
    l.record("6 Ricci/Chern panel", bad.is_empty(), format!("C clusters {counts:?}; failing {bad:?}"));

    let tw = system("twistor6");
    let v = reduce_system(&tw, 0, tol::MODEL).unwrap().special.expect("special subspace");
    let p = ricci_panel(&tw, Some(&v), "twistor6", tol::MODEL).unwrap();
    let fit = p.best_fit().expect("table comparison ran");
    println!(
        "criterion 6 twistor6 table: reading {} (n = {}, d = {}, k = {:.6}), mismatch {:.2e} (informational)",
        fit.interpretation, fit.n, fit.d, fit.k, fit.residual
    );
}

fn bin() -> PathBuf {
    PathBuf::from(env!("CARGO_BIN_EXE_torsionlab"))
}

fn run(args: &[&str]) -> (i32, Vec<u8>) {
    let out = Command::new(bin()).args(args).env_remove("TORSIONLAB_TOL").output().unwrap();
    (out.status.code().unwrap_or(-1), out.stdout)
}

fn golden_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests").join("golden")
}

fn criterion7(l: &mut Ledger) {
    let bless = std::env::var_os("TORSIONLAB_BLESS").is_some();
    let mut bad = Vec::new();
    let mut files = 0;
    for name in builtin_names() {
        let model = format!("builtin:{name}");
        let cases: [(&str, Vec<&str>); 3] = [
            ("classify", vec!["classify", "--model", &model, "--json", "-"]),
            ("report", vec!["report", "--suite", "g1", "--model", &model, "--json", "-"]),
            ("emit", vec!["examples", "emit", name]),
        ];
        for (tag, args) in cases {
            let (c1, o1) = run(&args);
            let (c2, o2) = run(&args);
            if c1 != 0 || c2 != 0 || o1 != o2 {
                bad.push(format!("{name} {tag}: exit {c1}/{c2}, identical {}", o1 == o2));
                continue;
            }
            let path = golden_dir().join(format!("{name}.{tag}.json"));
            if bless {
                std::fs::create_dir_all(golden_dir()).unwrap();
                std::fs::write(&path, &o1).unwrap();
            } else if std::fs::read(&path).ok().as_deref() != Some(o1.as_slice()) {
                bad.push(format!("{name} {tag}: differs from {}", path.display()));
            }
            files += 1;
        }
    }
    l.record("7 golden determinism", bad.is_empty(), format!("{files} outputs compared across two runs and against golden files; failing {bad:?}"));

    let dir = tempfile::tempdir().unwrap();
    let bad_json = dir.path().join("bad.json");
    std::fs::write(&bad_json, "{\n  \"degree\": 2,\n  \"terms\": [\n").unwrap();
    let codes = [
        run(&["classify", "--model", "builtin:ledger_obata6"]).0,
        run(&["report", "--suite", "g1", "--model", "builtin:hopf6", "--tol", "1e-30"]).0,
        run(&["validate", "--in", bad_json.to_str().unwrap()]).0,
    ];
    l.record("7 exit codes", codes == [0, 1, 2], format!("pass/fail/input error gave {codes:?}"));
}

fn main() {
    let mut l = Ledger { lines: Vec::new(), unexpected: Vec::new() };
    criterion1(&mut l);
    criterion2(&mut l);
    criterion3(&mut l);
    criterion4(&mut l);
    criterion5(&mut l);
    criterion6(&mut l);
    criterion7(&mut l);
    if !l.unexpected.is_empty() {
        eprintln!("failing criteria:\n{}", l.unexpected.join("\n"));
        std::process::exit(1);
    }
    println!("acceptance: {} lines, no unexpected failures", l.lines.len());
}
