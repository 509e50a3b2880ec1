use nalgebra as na;
use proptest::prelude::*;
use torsionlab::forms::basis::binomial;
use torsionlab::forms::{bul, calj, comm, kahler_form, lefschetz, lefschetz_adjoint, proj, pull_j, split, Form};
use torsionlab::holonomy::random_unitary;

const TOL: f64 = 1e-10;

fn form(dim: usize, p: usize) -> impl Strategy<Value = Form> {
    prop::collection::vec(-1.0..1.0f64, binomial(dim, p)).prop_map(move |c| Form::from_coeffs(dim, p, c))
}

fn dim() -> impl Strategy<Value = usize> {
    prop_oneof![Just(6usize), Just(8usize)]
}

fn dim_form(max_p: usize) -> impl Strategy<Value = Form> {
    (dim(), 0..=max_p).prop_flat_map(|(n, p)| form(n, p))
}

/// A random orthogonal matrix from the QR factor of a seeded Gaussian-like matrix.
fn orthogonal(n: usize, seed: u64) -> na::DMatrix<f64> {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let a = na::DMatrix::from_fn(n, n, |_, _| rng.gen_range(-1.0..1.0));
    a.qr().q()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn projections_sum_to_the_form(a in dim_form(4)) {
        let mut sum = Form::zero(a.dim(), a.degree());
        for (_, c) in split(&a) {
            sum += &c;
        }
        prop_assert!(sum.dist(&a) <= TOL);
    }

    #[test]
    fn components_are_eigenvectors_of_calj_squared(a in dim_form(4)) {
        for (label, c) in split(&a) {
            let r = calj(&calj(&c)).dist(&c.scaled(label.eigenvalue()));
            prop_assert!(r <= TOL, "{label}: {r}");
        }
    }

    #[test]
    fn projections_are_orthogonal(a in dim_form(4)) {
        let parts = split(&a);
        for i in 0..parts.len() {
            for j in i + 1..parts.len() {
                prop_assert!(parts[i].1.dot(&parts[j].1).abs() <= TOL);
            }
        }
    }

    #[test]
    fn calj_is_a_derivation((a, b) in dim().prop_flat_map(|n| (1..=3usize, 1..=3usize).prop_flat_map(move |(p, q)| (form(n, p), form(n, q))))) {
        let lhs = calj(&a.wedge(&b));
        let rhs = calj(&a).wedge(&b) + a.wedge(&calj(&b));
        prop_assert!(lhs.dist(&rhs) <= TOL);
    }

    #[test]
    fn wedge_is_graded_commutative_and_associative(
        (a, b, c) in dim().prop_flat_map(|n| (1..=2usize, 1..=2usize, 1..=2usize).prop_flat_map(move |(p, q, r)| (form(n, p), form(n, q), form(n, r))))
    ) {
        let sign = if a.degree() * b.degree() % 2 == 0 { 1.0 } else { -1.0 };
        prop_assert!(a.wedge(&b).dist(&b.wedge(&a).scaled(sign)) <= TOL);
        prop_assert!(a.wedge(&b).wedge(&c).dist(&a.wedge(&b.wedge(&c))) <= TOL);
    }

    #[test]
    fn contraction_is_an_antiderivation(
        (a, b, x) in dim().prop_flat_map(|n| (1..=3usize, 1..=3usize).prop_flat_map(move |(p, q)| (form(n, p), form(n, q), prop::collection::vec(-1.0..1.0f64, n))))
    ) {
        let sign = if a.degree() % 2 == 0 { 1.0 } else { -1.0 };
        let lhs = a.wedge(&b).contract(&x);
        let rhs = a.contract(&x).wedge(&b) + a.wedge(&b.contract(&x)).scaled(sign);
        prop_assert!(lhs.dist(&rhs) <= TOL);
    }

    #[test]
    fn commutator_with_kahler_form_is_minus_calj(a in dim_form(4)) {
        let w = kahler_form(a.dim());
        prop_assert!(comm(&w, &a).dist(&calj(&a).scaled(-1.0)) <= TOL);
    }

    #[test]
    fn lefschetz_adjointness_and_commutator((a, b) in dim().prop_flat_map(|n| (0..=3usize).prop_flat_map(move |p| (form(n, p), form(n, p + 2))))) {
        prop_assert!((lefschetz(&a).dot(&b) - a.dot(&lefschetz_adjoint(&b))).abs() <= TOL);
        let m = a.dim() / 2;
        let p = a.degree();
        let mut br = lefschetz_adjoint(&lefschetz(&a));
        if p >= 2 {
            br -= &lefschetz(&lefschetz_adjoint(&a));
        }
        prop_assert!(br.dist(&a.scaled(m as f64 - p as f64)) <= TOL);
    }

    #[test]
    fn pull_j_squares_to_the_degree_sign(a in dim_form(4)) {
        let sign = if a.degree() % 2 == 0 { 1.0 } else { -1.0 };
        prop_assert!(pull_j(&pull_j(&a)).dist(&a.scaled(sign)) <= TOL);
    }

    #[test]
    fn bullet_typing_on_lambda3_and_lambda12(
        (psi1, psi2, phi) in dim().prop_flat_map(|n| (form(n, 3), form(n, 3), form(n, 3)))
    ) {
        let psi1 = proj(&psi1, 3, 0);
        let psi2 = proj(&psi2, 3, 0);
        let phi = proj(&phi, 1, 2);
        let p = bul(&psi1, &psi2);
        prop_assert!(proj(&p, 1, 3).norm() <= TOL);
        prop_assert!(bul(&psi1, &pull_j(&psi1)).norm() <= TOL);
        let q = bul(&phi, &pull_j(&phi));
        prop_assert!(q.dist(&proj(&q, 1, 3)) <= TOL);
        let s = bul(&phi, &psi1);
        prop_assert!(proj(&s, 2, 2).norm() <= TOL);
    }

    #[test]
    fn frame_sums_do_not_depend_on_the_orthonormal_frame(
        (a, b, seed) in dim().prop_flat_map(|n| (form(n, 3), form(n, 2), any::<u64>()))
    ) {
        // Orthogonal frames for the metric operations, unitary ones for 𝒥.
        let q = orthogonal(a.dim(), seed);
        prop_assert!(bul(&a.pullback(&q), &b.pullback(&q)).dist(&bul(&a, &b).pullback(&q)) <= TOL);
        prop_assert!(comm(&b.pullback(&q), &a.pullback(&q)).dist(&comm(&b, &a).pullback(&q)) <= TOL);
        let u = random_unitary(a.dim(), seed);
        prop_assert!(calj(&a.pullback(&u)).dist(&calj(&a).pullback(&u)) <= TOL);
        prop_assert!(proj(&a.pullback(&u), 3, 0).dist(&proj(&a, 3, 0).pullback(&u)) <= TOL);
    }
}
