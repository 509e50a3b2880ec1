use proptest::prelude::*;
use torsionlab::forms::basis::binomial;
use torsionlab::forms::Form;
use torsionlab::holonomy::{holonomy_suite, random_unitary, reduce_system, HolonomySystem, NodeKind};
use torsionlab::io;
use torsionlab::model::builtin;
use torsionlab::report::round_sig;

fn form(dim: usize, p: usize) -> impl Strategy<Value = Form> {
    prop::collection::vec(-1.0..1.0f64, binomial(dim, p)).prop_map(move |c| Form::from_coeffs(dim, p, c))
}

fn system(name: &str) -> HolonomySystem {
    HolonomySystem::from_model(&builtin(name).unwrap(), 1e-8).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn form_json_round_trip((f, n) in (prop_oneof![Just(6usize), Just(8usize), Just(12usize)], 0..=4usize).prop_flat_map(|(n, p)| (form(n, p), Just(n)))) {
        let back = io::form_from_json(&io::form_to_json(&f), n).unwrap();
        prop_assert!(back.dist(&f) <= 1e-15);
    }

    #[test]
    fn canonical_json_is_idempotent(f in form(6, 3)) {
        let once = io::to_canonical_json(&io::form_to_json(&f)).unwrap();
        let parsed: serde_json::Value = io::parse(&once, "once").unwrap();
        let twice = io::to_canonical_json(&parsed).unwrap();
        prop_assert_eq!(once, twice);
    }

    #[test]
    fn rounding_keeps_twelve_significant_digits(x in -1e6..1e6f64) {
        let r = round_sig(x);
        prop_assert!((r - x).abs() <= 1e-11 * x.abs().max(1e-300));
        prop_assert_eq!(round_sig(r), r);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(6))]

    #[test]
    fn unitary_moves_preserve_the_factorization(seed in any::<u64>(), which in 0..3usize) {
        let name = ["ledger_obata6", "flag6", "twistor6"][which];
        let sys = system(name);
        let moved = sys.transform(&random_unitary(6, seed), 1e-8).unwrap();
        let a = reduce_system(&sys, 0, 1e-8).unwrap();
        let b = reduce_system(&moved, seed, 1e-8).unwrap();
        prop_assert_eq!(a.kind, b.kind);
        prop_assert_eq!(a.leaves().len(), b.leaves().len());
        if b.kind == NodeKind::Special {
            prop_assert_eq!(b.special.as_ref().map(|v| v.ncols()), Some(2));
        }
        let rep = holonomy_suite(&moved, name, seed, 1e-8).unwrap();
        prop_assert!(rep.all_pass(), "{}", rep.render());
    }
}
