mod common;

use hurwitz_tnn::harness::{
    check_gap_lemma, check_proportionality, check_ratio_chain, check_termination_coupling, gen_chain_violating_pair,
    gen_interlaced_pair, gen_polynomial_pair, run_structural, spec_support, verify_forward, ChainOutcome,
    ProportionalityOutcome, ScenarioConfig, StructuralSuite,
};
use hurwitz_tnn::laurent::{edrei_coeffs, EdreiSpec, LaurentWindow};
use hurwitz_tnn::rational::int;
use hurwitz_tnn::sfunc::ratio_classify;
use proptest::prelude::*;

fn cfg(seed: u64) -> ScenarioConfig {
    ScenarioConfig {
        seed,
        ..Default::default()
    }
}

fn poly_windows(seed: u64) -> (LaurentWindow, LaurentWindow) {
    let (p, q) = gen_polynomial_pair(&cfg(seed));
    let (lo, hi) = spec_support(&p);
    let w = |s| edrei_coeffs(s, lo - 3, hi + 3, 0).unwrap();
    (w(&p), w(&q))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn generated_windows_have_no_gaps(seed in any::<u64>()) {
        let (p, q) = gen_interlaced_pair(&cfg(seed));
        let (lo, hi) = spec_support(&p);
        for s in [&p, &q] {
            let w = edrei_coeffs(s, lo - 6, hi + 6, 24).unwrap();
            prop_assert!(check_gap_lemma(&w).is_ok());
        }
    }

    #[test]
    fn ratio_chain_holds_on_polynomial_pairs(seed in any::<u64>()) {
        let (pw, qw) = poly_windows(seed);
        let out = check_ratio_chain(&pw, &qw, pw.lo() + 1..=pw.hi() - 1).unwrap();
        prop_assert!(matches!(out, ChainOutcome::Holds(_)), "{:?}", out);
    }

    #[test]
    fn polynomial_pairs_are_coupled(seed in any::<u64>()) {
        let (pw, qw) = poly_windows(seed);
        prop_assert_eq!(check_termination_coupling(&pw, &qw).unwrap(), None);
    }

    #[test]
    fn scaled_copy_is_proportional(seed in any::<u64>(), c in 1i64..9) {
        // two zeros at least, so a proportional pair sits below the top term
        let (_, q) = gen_polynomial_pair(&cfg(seed));
        let q = q.times(&EdreiSpec::with_zeros_pos(vec![int(c)]));
        let (lo, hi) = spec_support(&q);
        let qw = edrei_coeffs(&q, lo - 2, hi + 2, 0).unwrap();
        let pw = qw.scale(&int(c));
        match check_proportionality(&pw, &qw).unwrap() {
            ProportionalityOutcome::Proportional { ratio, .. } => prop_assert_eq!(ratio, int(c)),
            other => prop_assert!(false, "{:?}", other),
        }
    }

    #[test]
    fn violating_pairs_are_not_s_functions(seed in any::<u64>()) {
        let (p, q) = gen_chain_violating_pair(&cfg(seed));
        prop_assert!(ratio_classify(&p, &q).is_err());
    }
}

#[test]
fn structural_suites_pass_and_replay() {
    let c = ScenarioConfig {
        trials: 8,
        ..Default::default()
    };
    for suite in StructuralSuite::ALL {
        let a = run_structural(suite, &c);
        assert!(a.all_passed(), "{}: {:?}", suite.name(), a.failures);
        let b = run_structural(suite, &c);
        assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
    }
}

#[test]
fn forward_suite_small_budget() {
    let c = ScenarioConfig {
        trials: 10,
        section_size: 8,
        max_minor_order: 3,
        ..Default::default()
    };
    let r = verify_forward(&c);
    assert_eq!(r.trials_passed, 10, "{:?}", r.failures);
}
