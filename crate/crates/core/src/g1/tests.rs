use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::error::Error;
use crate::forms::{proj, Form};
use crate::model::builtin;

const TOL: f64 = 1e-8;

fn suite(model: &str, s: &str) -> crate::report::ResidualReport {
    let m = builtin(model).unwrap();
    run_suite(s, &m, TOL).unwrap()
}

#[test]
fn every_applicable_suite_passes_on_builtins() {
    for name in builtin::builtin_names() {
        let m = builtin(name).unwrap();
        for s in SUITES {
            match run_suite(s, &m, TOL) {
                Ok(r) => assert!(r.all_pass(), "{}", r.render()),
                Err(Error::ClassMismatch(_)) => assert!(*name == "calabi_eckmann6" && s == "w1w4"),
                Err(e) => panic!("{name} {s}: {e}"),
            }
        }
    }
}

#[test]
fn nearly_kaehler_main_theorem() {
    for name in ["ledger_obata6", "flag6", "twistor6"] {
        let r = suite(name, "g1");
        assert!(r.get("|DN_J|").unwrap().residual < TOL);
        assert!(r.get("dT^D off λ^{2,2}").unwrap().residual < TOL);
        let ctx_model = builtin(name).unwrap();
        let ctx = G1Context::new(&ctx_model, TOL).unwrap();
        assert!(ctx.torsion.psi_minus.norm() > 0.1);
        assert!(ctx.torsion.t.norm() < TOL);
    }
}

#[test]
fn hopf_differential_relations() {
    for name in ["hopf4", "hopf6"] {
        let r = suite(name, "w1w4");
        assert!(r.all_pass(), "{}", r.render());
        let printed = r.get("Lee form, printed constant").unwrap();
        assert!(!printed.gated && printed.residual > 0.1);
        let g = suite(name, "g1");
        for item in ["∂_D t", "∂_Dψ⁺ and ∂̄_D t", "∂̄_Dψ⁺"] {
            assert!(g.get(item).unwrap().pass, "{name} {item}");
        }
    }
}

#[test]
fn w1w4_suite_rejects_calabi_eckmann() {
    let m = builtin("calabi_eckmann6").unwrap();
    assert!(matches!(run_suite("w1w4", &m, TOL), Err(Error::ClassMismatch(_))));
}

#[test]
fn random_type_three_form_is_not_killing() {
    let m = builtin("hopf6").unwrap();
    let ctx = G1Context::new(&m, TOL).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let phi = proj(&Form::random(&mut rng, 6, 3), 0, 3);
    let cert = killing_check(&ctx, &phi, TOL).unwrap();
    assert!(!cert.valid);
    assert!(cert.defect > 1e-3);
    assert!(cert.lemma_defect < 1e-9);
}

#[test]
fn killing_check_rejects_mixed_type() {
    let m = builtin("ledger_obata6").unwrap();
    let ctx = G1Context::new(&m, TOL).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let phi = Form::random(&mut rng, 6, 3);
    assert!(matches!(killing_check(&ctx, &phi, TOL), Err(Error::Membership { .. })));
}

#[test]
fn psi_minus_is_killing_on_nearly_kaehler() {
    let m = builtin("flag6").unwrap();
    let ctx = G1Context::new(&m, TOL).unwrap();
    let cert = killing_check(&ctx, &ctx.torsion.psi_minus, TOL).unwrap();
    assert!(cert.valid && cert.jphi_defect < TOL && cert.middle_defect < TOL);
}

#[test]
fn product_rules_on_random_form() {
    let m = builtin("hopf6").unwrap();
    let ctx = G1Context::new(&m, TOL).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let phi = proj(&Form::random(&mut rng, 6, 3), 0, 3);
    let r = product_rule_suite(&ctx, &phi).unwrap();
    assert!(r.all_pass(), "{}", r.render());
    assert!(r.get("Killing defect").unwrap().residual > 1e-3);
}

#[test]
fn product_rules_need_odd_degree() {
    let m = builtin("ledger_obata6").unwrap();
    let ctx = G1Context::new(&m, TOL).unwrap();
    assert!(product_rule_suite(&ctx, &crate::forms::kahler_form(6)).is_err());
}

#[test]
fn kaehler_torus_is_trivial() {
    let m = builtin("torus6").unwrap();
    let ctx = G1Context::new(&m, TOL).unwrap();
    assert!(ctx.class.is_kahler());
    assert!(ctx.torsion.td.norm() < TOL);
    assert_eq!(kahler_identity_defects(&ctx.d, 3).iter().copied().fold(0.0, f64::max), 0.0);
}

#[test]
fn kahler_identity_sign_is_detected() {
    let m = builtin("hopf6").unwrap();
    let ctx = G1Context::new(&m, TOL).unwrap();
    let k = kahler_identity_defects(&ctx.d, 9);
    assert!(k[..4].iter().all(|v| *v < 1e-10));
    assert!(k[4] > 0.1 && k[5] > 0.1);
}
