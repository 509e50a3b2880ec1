use std::fmt::Write as _;
use std::path::Path;

use serde_json::{json, Value};
use torsionlab::hermitian::{gh_classify, AHPoint};
use torsionlab::holonomy::{clause_report, holonomy_suite, random_unitary, reduce_system, FactorNode, HolonomySystem, NodeKind};
use torsionlab::io;
use torsionlab::model::{builtin, builtin_names, HomogeneousModel};
use torsionlab::report::ResidualReport;
use torsionlab::{suites, tol, Error, Result};

use crate::Common;

/// Seed of the shuffling isometry in the `product12` example.
const PRODUCT_SEED: u64 = 7;

pub fn exit_code(e: &Error) -> u8 {
    match e {
        Error::CannotCertify(_) => 1,
        _ => 2,
    }
}

fn tolerance(c: &Common) -> f64 {
    c.tol.unwrap_or(tol::MODEL)
}

fn read(path: &Path) -> Result<(String, Value)> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Input(format!("{}: {e}", path.display())))?;
    let v = io::parse(&text, &path.display().to_string())?;
    Ok((text, v))
}

fn write(path: &Path, body: &str) -> Result<()> {
    std::fs::write(path, body).map_err(|e| Error::Input(format!("{}: {e}", path.display())))
}

fn decode<T: serde::de::DeserializeOwned>(text: &str, path: &Path) -> Result<T> {
    io::parse(text, &path.display().to_string())
}

/// Which schema a JSON document follows, judged by its keys.
fn kind_of(v: &Value) -> Option<&'static str> {
    let has = |k: &str| v.get(k).is_some();
    if has("brackets") {
        Some("model")
    } else if has("psi_plus") {
        Some("system")
    } else if has("nabla_omega") {
        Some("point")
    } else if has("suite") && has("items") {
        Some("report")
    } else if has("values") {
        Some("curvature")
    } else if has("terms") {
        Some("form")
    } else {
        None
    }
}

fn model_from_spec(spec: &str, tol: f64) -> Result<HomogeneousModel> {
    match spec.strip_prefix("builtin:") {
        Some(name) => builtin(name),
        None => {
            let p = Path::new(spec);
            let (text, _) = read(p)?;
            io::model_from_json(&decode(&text, p)?, tol)
        }
    }
}

fn load_model(c: &Common, tol: f64) -> Result<HomogeneousModel> {
    if let Some(spec) = &c.model {
        return model_from_spec(spec, tol);
    }
    if let Some(p) = &c.input {
        let (text, v) = read(p)?;
        if kind_of(&v) != Some("model") {
            return Err(Error::Input(format!("{}: expected a model file (with `brackets`)", p.display())));
        }
        return io::model_from_json(&decode(&text, p)?, tol);
    }
    Err(Error::Input("a model is required: --model builtin:NAME, --model FILE or --in FILE".into()))
}

fn load_system(c: &Common, tol: f64) -> Result<(HolonomySystem, String)> {
    if let Some(p) = &c.input {
        let (text, v) = read(p)?;
        match kind_of(&v) {
            Some("system") => {
                let sys = io::system_from_json(&decode(&text, p)?, tol)?;
                let name = p.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
                return Ok((sys, name));
            }
            Some("model") => {
                let m = io::model_from_json(&decode(&text, p)?, tol)?;
                return Ok((HolonomySystem::from_model(&m, tol)?, m.name().to_string()));
            }
            _ => return Err(Error::Input(format!("{}: expected a system or model file", p.display()))),
        }
    }
    let m = load_model(c, tol)?;
    Ok((HolonomySystem::from_model(&m, tol)?, m.name().to_string()))
}

/// Text to stdout unless `--json -`; JSON to the `--json` path when given.
fn emit_result(c: &Common, text: &str, json: &str) -> Result<()> {
    match c.json.as_deref() {
        Some(p) if p == Path::new("-") => print!("{json}"),
        Some(p) => {
            print!("{text}");
            write(p, json)?;
        }
        None => print!("{text}"),
    }
    Ok(())
}

pub fn validate(c: &Common) -> Result<u8> {
    let tol = tolerance(c);
    let mut text = String::new();
    let summary: Value;
    if c.model.is_some() {
        let m = load_model(c, tol)?;
        let _ = writeln!(text, "valid model {}: dim 𝔪 = {}, dim 𝔥 = {}, digest {}", m.name(), m.dim_m(), m.dim_h(), m.digest());
        summary = json!({"kind": "model", "name": m.name(), "dim_m": m.dim_m(), "dim_h": m.dim_h(), "digest": m.digest()});
    } else {
        let p = c.input.as_deref().ok_or_else(|| Error::Input("validate needs --in FILE or --model".into()))?;
        let (raw, v) = read(p)?;
        let kind = kind_of(&v).ok_or_else(|| Error::Input(format!("{}: unrecognised schema", p.display())))?;
        match kind {
            "model" => {
                let m = io::model_from_json(&decode(&raw, p)?, tol)?;
                let _ = writeln!(text, "valid model {}: dim 𝔪 = {}, dim 𝔥 = {}, digest {}", m.name(), m.dim_m(), m.dim_h(), m.digest());
                summary = json!({"kind": "model", "name": m.name(), "dim_m": m.dim_m(), "dim_h": m.dim_h(), "digest": m.digest()});
            }
            "system" => {
                let s = io::system_from_json(&decode(&raw, p)?, tol)?;
                let _ = writeln!(text, "valid holonomy system: dim {}, strict {}, digest {}", s.dim(), s.is_strict(), s.digest());
                for (clause, r) in s.checks() {
                    let _ = writeln!(text, "  {clause}  {:.3e}", torsionlab::report::round_sig(*r));
                }
                let checks: Vec<Value> = s.checks().iter().map(|(n, r)| json!({"clause": n, "residual": r})).collect();
                summary = json!({"kind": "system", "dim": s.dim(), "strict": s.is_strict(), "sigma_min": s.sigma_min(), "digest": s.digest(), "checks": checks});
            }
            "point" => {
                let pt = io::point_from_json(&decode(&raw, p)?, tol)?;
                let _ = writeln!(text, "valid almost-Hermitian point: dim {}", pt.dim());
                summary = json!({"kind": "point", "dim": pt.dim()});
            }
            "curvature" => {
                let r = io::curvature_from_json(&decode(&raw, p)?, tol)?;
                let f = r.flags(tol);
                let _ = writeln!(text, "valid curvature tensor: dim {}, pair symmetric {}, values in λ^{{1,1}} {}", r.dim(), f.pair_symmetric, f.value_slot_11);
                summary = json!({"kind": "curvature", "dim": r.dim(), "flags": f});
            }
            "form" => {
                let fj: io::FormJson = decode(&raw, p)?;
                let dim = fj.dim.ok_or_else(|| Error::Input(format!("{}: a standalone form needs `dim`", p.display())))?;
                let f = io::form_from_json(&fj, dim)?;
                let _ = writeln!(text, "valid form: dim {dim}, degree {}, {} terms", f.degree(), f.terms(io::DROP).len());
                summary = json!({"kind": "form", "dim": dim, "degree": f.degree()});
            }
            _ => {
                let r: ResidualReport = decode(&raw, p)?;
                let _ = writeln!(text, "valid report: suite {}, {} items", r.suite, r.items.len());
                summary = json!({"kind": "report", "suite": r.suite, "items": r.items.len()});
            }
        }
    }
    emit_result(c, &text, &io::to_canonical_json(&summary)?)?;
    Ok(0)
}

pub fn classify(c: &Common) -> Result<u8> {
    let tol = class_tolerance(c);
    let (source, pt) = match (&c.model, &c.input) {
        (None, Some(p)) => {
            let (raw, v) = read(p)?;
            match kind_of(&v) {
                Some("point") => (p.display().to_string(), io::point_from_json(&decode(&raw, p)?, tol)?),
                Some("model") => {
                    let m = io::model_from_json(&decode(&raw, p)?, tol)?;
                    (m.name().to_string(), AHPoint::from_model(&m))
                }
                _ => return Err(Error::Input(format!("{}: expected a model or point file", p.display()))),
            }
        }
        _ => {
            let m = load_model(c, tol)?;
            (m.name().to_string(), AHPoint::from_model(&m))
        }
    };
    let class = gh_classify(&pt, tol);
    let labels = ["|ψ⁺|", "|N̂^J|", "|t − θ∧ω|", "|θ|"];
    let mut text = String::new();
    let _ = writeln!(text, "{source}: {}", class.label());
    let _ = writeln!(text, "  𝒢₁ (N^J totally skew): {}", class.norms[1] <= tol);
    for (l, v) in labels.iter().zip(class.norms) {
        let _ = writeln!(text, "  {l:<10} {:.11e}", torsionlab::report::round_sig(v));
    }
    let flags: Vec<String> = class.flags.iter().map(|f| f.to_string()).collect();
    let j = json!({
        "source": source,
        "class": class.label(),
        "flags": flags,
        "g1": class.norms[1] <= tol,
        "norms": {"psi_plus": class.norms[0], "nj_hat": class.norms[1], "w3": class.norms[2], "theta": class.norms[3]},
    });
    emit_result(c, &text, &io::to_canonical_json(&j)?)?;
    Ok(0)
}

fn class_tolerance(c: &Common) -> f64 {
    c.tol.unwrap_or(tol::CLASS)
}

fn finish_report(c: &Common, r: &ResidualReport) -> Result<u8> {
    emit_result(c, &r.render(), &io::to_canonical_json(r)?)?;
    if let Some(out) = &c.out {
        write(out, &io::to_canonical_json(r)?)?;
    }
    Ok(if r.all_pass() { 0 } else { 1 })
}

pub fn suite_verb(c: &Common, suite: &str) -> Result<u8> {
    let tol = tolerance(c);
    let m = load_model(c, tol)?;
    let r = suites::run(suite, &m, c.seed, tol)?;
    finish_report(c, &r)
}

/// Holonomy report for a system file; an uncertifiable system yields its
/// clause residuals instead of an error.
fn system_report(c: &Common, tol: f64) -> Result<Option<ResidualReport>> {
    let Some(p) = &c.input else { return Ok(None) };
    let (text, v) = read(p)?;
    if kind_of(&v) != Some("system") {
        return Ok(None);
    }
    let (psi, r) = io::system_parts_from_json(&decode(&text, p)?, tol)?;
    let name = p.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    match HolonomySystem::new(psi.clone(), r.clone(), tol) {
        Ok(sys) => Ok(Some(holonomy_suite(&sys, &name, c.seed, tol)?)),
        Err(Error::Validation(_)) => Ok(Some(clause_report(&psi, &r, &name, tol)?)),
        Err(e) => Err(e),
    }
}

pub fn report(c: &Common) -> Result<u8> {
    let tol = tolerance(c);
    if let Some(s) = &c.suite {
        if suites::ALGEBRA.contains(&s.as_str()) {
            let dim = match &c.model {
                Some(_) => load_model(c, tol)?.dim_m(),
                None => 6,
            };
            let r = suites::run_algebra(s, dim, c.seed, c.tol.unwrap_or(suites::algebra_tol(s)))?;
            return finish_report(c, &r);
        }
        if s == "holonomy" {
            if let Some(r) = system_report(c, tol)? {
                return finish_report(c, &r);
            }
        }
        let m = load_model(c, tol)?;
        let r = suites::run(s, &m, c.seed, tol)?;
        return finish_report(c, &r);
    }
    match (&c.input, &c.model) {
        (Some(p), None) => {
            let (raw, v) = read(p)?;
            if kind_of(&v) != Some("report") {
                return Err(Error::Input(format!("{}: expected a report file (with `suite` and `items`), or pass --suite", p.display())));
            }
            let r: ResidualReport = decode(&raw, p)?;
            finish_report(c, &r)
        }
        _ => Err(Error::Input(format!("report needs --suite ({}, {}) or --in REPORT.json", suites::ALL.join(", "), suites::ALGEBRA.join(", ")))),
    }
}

fn render_tree(node: &FactorNode, depth: usize, out: &mut String) {
    let kind = match node.kind {
        NodeKind::Split => "split",
        NodeKind::Irreducible => "irreducible",
        NodeKind::Special => "special",
    };
    let worst = node.certificates.iter().map(|(_, v)| *v).fold(0.0, f64::max);
    let extra = node.special.as_ref().map(|v| format!("  special subspace of rank {}", v.ncols())).unwrap_or_default();
    let _ = writeln!(out, "{}{kind}  dim {}{extra}  worst certificate {:.3e}", "  ".repeat(depth), node.dim, torsionlab::report::round_sig(worst));
    for ch in &node.children {
        render_tree(ch, depth + 1, out);
    }
}

pub fn reduce(c: &Common) -> Result<u8> {
    let tol = tolerance(c);
    let (sys, name) = load_system(c, tol)?;
    let tree = reduce_system(&sys, c.seed, tol)?;
    let mut text = String::new();
    let _ = writeln!(text, "{name}: {} leaves (seed {})", tree.leaves().len(), c.seed);
    render_tree(&tree, 1, &mut text);
    let body = io::to_canonical_json(&json!({"system": name, "digest": sys.digest(), "seed": c.seed, "tree": tree}))?;
    emit_result(c, &text, &body)?;
    if let Some(out) = &c.out {
        write(out, &body)?;
    }
    let scale = 1.0 + sys.psi().norm() + sys.curvature().norm();
    Ok(if tree.worst_certificate() <= tol * scale { 0 } else { 1 })
}

fn example_names() -> Vec<&'static str> {
    builtin_names().iter().copied().chain(["product12"]).collect()
}

pub fn list_examples() -> Result<u8> {
    for n in example_names() {
        let what = if n == "product12" { "system" } else { "model" };
        println!("{n}  ({what})");
    }
    Ok(0)
}

/// ledger_obata6 ⊕ flag6 moved by a seeded J-commuting isometry.
fn product12() -> Result<HolonomySystem> {
    let t = tol::MODEL;
    let a = HolonomySystem::from_model(&builtin("ledger_obata6")?, t)?;
    let b = HolonomySystem::from_model(&builtin("flag6")?, t)?;
    HolonomySystem::direct_sum(&a, &b, t)?.transform(&random_unitary(12, PRODUCT_SEED), t)
}

pub fn example_json(name: &str) -> Result<String> {
    if name == "product12" {
        return io::to_canonical_json(&io::system_to_json(&product12()?, tol::IDENTITY));
    }
    io::to_canonical_json(&io::model_to_json(&builtin(name)?))
}

pub fn emit(name: &str, out: Option<&Path>) -> Result<u8> {
    if !example_names().contains(&name) {
        return Err(Error::UnknownModel(format!("{name} (known: {})", example_names().join(", "))));
    }
    let body = example_json(name)?;
    match out {
        Some(p) => write(p, &body)?,
        None => print!("{body}"),
    }
    Ok(0)
}
