use super::*;
use crate::model::builtin;

const TOL: f64 = 1e-8;

fn system(name: &str) -> HolonomySystem {
    HolonomySystem::from_model(&builtin(name).unwrap(), TOL).unwrap()
}

fn holonomy(sys: &HolonomySystem) -> LieAlgebraSpan {
    LieAlgebraSpan::generated(sys.dim(), sys.curvature().rows(), crate::tol::RANK, TOL)
}

const NK: [&str; 3] = ["ledger_obata6", "flag6", "twistor6"];

fn product12(seed: u64) -> (HolonomySystem, Mat, Mat) {
    let sum = HolonomySystem::direct_sum(&system("ledger_obata6"), &system("flag6"), TOL).unwrap();
    let q = random_unitary(12, seed);
    assert!(unitary_defect(&q) < 1e-12);
    let a = Mat::from_fn(12, 6, |r, c| if r == c { 1.0 } else { 0.0 });
    let b = Mat::from_fn(12, 6, |r, c| if r == c + 6 { 1.0 } else { 0.0 });
    (sum.transform(&q, TOL).unwrap(), &q * a, &q * b)
}

#[test]
fn nearly_kaehler_models_give_strict_systems() {
    for name in NK {
        let sys = system(name);
        assert!(sys.is_strict(), "{name}");
        assert!(sys.checks().iter().all(|(_, r)| *r < 1e-10), "{name}: {:?}", sys.checks());
    }
    let err = HolonomySystem::from_model(&builtin("hopf6").unwrap(), TOL).unwrap_err();
    assert!(matches!(err, crate::Error::ClassMismatch(_)));
}

#[test]
fn zero_psi_is_rejected_with_clause() {
    let sys = system("flag6");
    let err = HolonomySystem::new(crate::forms::Form::zero(6, 3), sys.curvature().clone(), TOL).unwrap_err();
    assert!(err.to_string().contains("non-zero 3-form"), "{err}");
}

#[test]
fn perturbed_curvature_is_rejected() {
    let sys = system("ledger_obata6");
    let mut rng = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(5);
    let bad = sys.curvature().add(&crate::curvature::random_kahler_curvature(&mut rng, 6).scaled(0.1));
    let err = HolonomySystem::new(sys.psi().clone(), bad, TOL).unwrap_err();
    assert!(err.to_string().contains("clause (iii)"), "{err}");
}

#[test]
fn holonomy_sits_in_isotropy_and_lambda11() {
    for name in NK {
        let sys = system(name);
        let h = holonomy(&sys);
        let g = stabilizer(sys.psi(), 1e-9);
        assert!(h.closed, "{name}");
        assert_eq!(g.rank, 8, "{name}");
        assert!(g.containment_defect(&h) < 1e-10, "{name}");
        let l11: Vec<_> = g.basis.iter().map(|a| a.dist(&crate::forms::proj(a, 1, 1))).collect();
        assert!(l11.iter().all(|d| *d < 1e-10), "{name}");
    }
    let h = holonomy(&system("flag6"));
    assert_eq!(h.rank, 2);
    assert!(h.abelian_defect() < 1e-10);
}

#[test]
fn invariant_splittings_of_builtins() {
    let dims = |name: &str| {
        let sys = system(name);
        let h = holonomy(&sys);
        let recs = invariant_splitting(&sys, &h, 3, TOL);
        assert!(recs.iter().all(|r| r.j_invariant && r.h_invariant), "{name}");
        let mut d: Vec<usize> = recs.iter().map(|r| r.dim).collect();
        d.sort();
        d
    };
    assert_eq!(dims("ledger_obata6"), vec![6]);
    assert_eq!(dims("flag6"), vec![2, 2, 2]);
    assert_eq!(dims("twistor6"), vec![2, 4]);
}

#[test]
fn two_planes_in_dimension_six_are_null() {
    let sys = system("ledger_obata6");
    let q = random_unitary(6, 11);
    let plane = q.columns(0, 2).into_owned();
    let (kind, _) = classify_subspace(&sys, &plane, TOL).unwrap();
    assert!(matches!(kind, SubspaceKind::Null | SubspaceKind::Special));
    let line = Mat::from_fn(6, 1, |r, _| if r == 0 { 1.0 } else { 0.0 });
    assert!(classify_subspace(&sys, &line, TOL).is_err());
    assert!(classify_subspace(&sys, &Mat::identity(6, 6), TOL).is_err());
}

#[test]
fn product_factors_are_isotropic_and_refuse_riemannian_reduction() {
    let (sys, a, b) = product12(7);
    for w in [&a, &b] {
        let (kind, _) = classify_subspace(&sys, w, TOL).unwrap();
        assert_eq!(kind, SubspaceKind::Isotropic);
        assert!(riemannian_reduction(&sys, w, "p", TOL).is_err());
        let rep = subspace_suite(&sys, w, "product", TOL).unwrap();
        assert!(rep.all_pass(), "{}", rep.render());
    }
}

#[test]
fn shuffled_product_splits_into_two_leaves() {
    let (sys, a, b) = product12(7);
    let tree = reduce_system(&sys, 7, TOL).unwrap();
    assert_eq!(tree.kind, NodeKind::Split);
    let leaves = tree.leaves();
    assert_eq!(leaves.len(), 2);
    assert!(leaves.iter().all(|l| l.dim == 6));
    let kinds: Vec<NodeKind> = leaves.iter().map(|l| l.kind).collect();
    let (lo, fl) = if kinds[0] == NodeKind::Irreducible { (leaves[0], leaves[1]) } else { (leaves[1], leaves[0]) };
    assert_eq!(lo.kind, NodeKind::Irreducible);
    assert_eq!(fl.kind, NodeKind::Special);
    assert!(linalg::max_angle_sin(&lo.basis, &a) < 1e-7);
    assert!(linalg::max_angle_sin(&fl.basis, &b) < 1e-7);
    assert_eq!(fl.special.as_ref().unwrap().ncols(), 2);
    assert!(tree.worst_certificate() < 1e-8, "{:?}", leaves.iter().flat_map(|l| l.certificates.iter().filter(|c| c.1 >= 1e-8)).collect::<Vec<_>>());
    let again = reduce_system(&sys, 7, TOL).unwrap();
    assert_eq!(serde_json::to_string(&tree).unwrap(), serde_json::to_string(&again).unwrap());
}

#[test]
fn irreducible_system_is_a_single_leaf() {
    let tree = reduce_system(&system("ledger_obata6"), 0, TOL).unwrap();
    assert_eq!(tree.kind, NodeKind::Irreducible);
    assert!(tree.children.is_empty());
}

#[test]
fn flag_and_twistor_have_special_leaves() {
    for name in ["flag6", "twistor6"] {
        let sys = system(name);
        let tree = reduce_system(&sys, 0, TOL).unwrap();
        assert_eq!(tree.kind, NodeKind::Special, "{name}");
        let v = tree.special.clone().unwrap();
        assert_eq!(v.ncols(), 2);
        let sub = subspace_suite(&sys, &v, name, TOL).unwrap();
        assert!(sub.all_pass(), "{}", sub.render());
        let rr = riemannian_reduction(&sys, &v, name, TOL).unwrap();
        assert!(rr.report.all_pass(), "{}", rr.report.render());
        assert!(rr.is_irreducible());
        assert_eq!(rr.p.rank, 2);
        assert!(rr.r.closed);
        assert!(rr.r_is_sp1(), "{name}");
        let panel = ricci_panel(&sys, Some(&v), name, TOL).unwrap();
        assert!(panel.report.all_pass(), "{}", panel.report.render());
        assert!(panel.best_fit().unwrap().residual < 1e-9);
    }
}

#[test]
fn ricci_panel_and_nk_suite_on_builtins() {
    for name in NK {
        let sys = system(name);
        let p = ricci_panel(&sys, None, name, TOL).unwrap();
        assert!(p.report.all_pass(), "{}", p.report.render());
        assert!(p.c_eigenvalue_count <= 3);
        let nk = nk_suite(&builtin(name).unwrap(), TOL).unwrap();
        assert!(nk.all_pass(), "{}", nk.render());
    }
    let lo = ricci_panel(&system("ledger_obata6"), None, "lo", TOL).unwrap();
    let r = lo.spectrum("r").unwrap();
    assert_eq!(r.len(), 1);
    assert!(r[0].0 > 0.0);
}

#[test]
fn orth_spans_rank_deficient_columns() {
    let (sys, _, _) = product12(7);
    let rows = sys.curvature().rows();
    let m = Mat::from_fn(66, rows.len(), |r, k| rows[k].coeffs()[r]);
    let q = linalg::orth(&m, crate::tol::RANK);
    assert!(linalg::excess(&m, &q) < 1e-10);
    assert!((q.transpose() * &q - Mat::identity(q.ncols(), q.ncols())).norm() < 1e-12);
}
