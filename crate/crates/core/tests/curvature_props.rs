use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use torsionlab::curvature::{
    bianchi_b1, curvature_algebra_suite, four_form_tensor, random_kahler_curvature, random_s2_lambda11, r_omega,
    split_s2_lambda11, CurvatureLike,
};
use torsionlab::forms::basis::{indices, table};
use torsionlab::forms::{j_vector, proj, pull_j, unit, Form};

const TOL: f64 = 1e-10;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Σ_{a<b} e^{ab} ∧ R(e_a, e_b).
fn total_alternation(r: &CurvatureLike) -> Form {
    let n = r.dim();
    let mut out = Form::zero(n, 4);
    for (row, &mask) in r.rows().iter().zip(&table(n).masks[2]) {
        let ab = indices(mask);
        out += &Form::basis(n, &ab).wedge(row);
    }
    out
}

fn random_pair_symmetric(seed: u64, n: usize) -> CurvatureLike {
    let m = CurvatureLike::random(&mut rng(seed), n);
    m.add(&m.transpose())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn algebraic_curvature_tensors_have_no_bianchi_defect(seed in any::<u64>()) {
        let mut g = rng(seed);
        let rk = random_kahler_curvature(&mut g, 6);
        let om = proj(&Form::random(&mut g, 6, 4), 2, 2);
        let r = rk.add(&r_omega(&om));
        prop_assert!(bianchi_b1(&r).norm() <= TOL);
        prop_assert!(r.pair_symmetry_defect() <= TOL);
        prop_assert!(total_alternation(&r).norm() <= TOL);
    }

    #[test]
    fn pair_symmetric_with_zero_alternation_is_bianchi_free(seed in any::<u64>(), n in prop_oneof![Just(6usize), Just(8usize)]) {
        let r = random_pair_symmetric(seed, n);
        let psi = total_alternation(&r);
        // The Λ⁴ summand of S²(Λ²) is spanned by four-form tensors; remove it.
        let unit_part = total_alternation(&four_form_tensor(&psi));
        let c = psi.dot(&unit_part) / unit_part.dot(&unit_part);
        let cleaned = r.sub(&four_form_tensor(&psi).scaled(c));
        prop_assert!(total_alternation(&cleaned).norm() <= TOL * (1.0 + r.norm()));
        prop_assert!(bianchi_b1(&cleaned).norm() <= TOL * (1.0 + r.norm()));
        // Conversely a non-zero four-form tensor is pair-symmetric but not Bianchi-free.
        if psi.norm() > 1e-3 {
            prop_assert!(bianchi_b1(&four_form_tensor(&psi)).norm() > 1e-6);
        }
    }

    #[test]
    fn split_is_repeatable_and_recovers_planted_parts(seed in any::<u64>()) {
        let mut g = rng(seed);
        let q = random_s2_lambda11(&mut g, 6);
        let (a, om_a) = split_s2_lambda11(&q, TOL).unwrap();
        let (b, om_b) = split_s2_lambda11(&q, TOL).unwrap();
        prop_assert!(a.dist(&b) <= 1e-12 && om_a.dist(&om_b) <= 1e-12);
        let r = a.add(&torsionlab::curvature::hat_embed(&om_a, TOL).unwrap());
        prop_assert!(r.dist(&q) <= TOL);
    }

    #[test]
    fn bianchi_map_on_lambda2_of_lambda11(seed in any::<u64>()) {
        // R ∈ Λ²(λ^{1,1}): pair-antisymmetric with both slots of type (1,1).
        let m = CurvatureLike::random(&mut rng(seed), 6);
        let skew = m.sub(&m.transpose());
        let r = skew.map_values(|v| proj(v, 1, 1)).transpose().map_values(|v| proj(v, 1, 1)).scaled(-1.0);
        prop_assert!(r.add(&r.transpose()).norm() <= TOL);
        let z = bianchi_b1(&r);
        prop_assert!(z.alternation().norm() <= TOL);
        for i in 0..6 {
            let zx = z.at_basis(i);
            prop_assert!(zx.dist(&proj(zx, 1, 2)) <= TOL);
            let zjx = z.at(&j_vector(&unit(6, i)));
            prop_assert!(zjx.dist(&pull_j(zx).scaled(-1.0)) <= TOL, "ζ_Jx = −Jζ_x fails at {i}");
        }
    }

    #[test]
    fn curvature_algebra_identities_hold_for_any_seed(seed in any::<u64>()) {
        let rep = curvature_algebra_suite(6, 2, seed, TOL).unwrap();
        prop_assert!(rep.all_pass(), "{}", rep.render());
    }
}

#[test]
fn four_form_tensor_of_omega_squared_is_pair_symmetric() {
    let w = torsionlab::forms::kahler_form(6);
    let t = four_form_tensor(&w.wedge(&w));
    assert!(t.pair_symmetry_defect() < 1e-14);
}
