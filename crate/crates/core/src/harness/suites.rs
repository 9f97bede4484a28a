use super::{
    gen_chain_violating_pair, gen_interlaced_pair, run_trials, spec_support, Direction, ScenarioConfig, TrialFailure,
    TrialResult, VerificationReport,
};
use crate::error::Result;
use crate::laurent::{edrei_coeffs, EdreiSpec, LaurentWindow, DEFAULT_TRUNC};
use crate::matrices::{hurwitz_section, MatrixSection};
use crate::tnn::{centred_anchor, check_tnn, find_negative_minor, SectionSchedule, TnnStatus};

pub(crate) fn windows(p: &EdreiSpec, q: &EdreiSpec, lo: i64, hi: i64) -> Result<(LaurentWindow, LaurentWindow)> {
    Ok((edrei_coeffs(p, lo, hi, DEFAULT_TRUNC)?, edrei_coeffs(q, lo, hi, DEFAULT_TRUNC)?))
}

/// Square section of `H(p, q)` on rows `1..=size`, columns centred on the
/// support of `p`'s zero factors.
pub(crate) fn centred_section(p: &EdreiSpec, q: &EdreiSpec, size: usize) -> Result<MatrixSection> {
    let (lo, hi) = spec_support(p);
    let c0 = centred_anchor(lo, hi, size);
    let s = size as i64;
    let (pw, qw) = windows(p, q, c0 + 1 - (s + 1) / 2, c0 + s - 1)?;
    let rows: Vec<i64> = (1..=s).collect();
    let cols: Vec<i64> = (c0 + 1..=c0 + s).collect();
    hurwitz_section(&pw, &qw, &rows, &cols)
}

fn forward_trial(cfg: &ScenarioConfig) -> TrialResult {
    let (p, q) = gen_interlaced_pair(cfg);
    let section = centred_section(&p, &q, cfg.section_size)?;
    let report = check_tnn(&section, cfg.max_minor_order);
    match report.status {
        TnnStatus::AllNonnegative => Ok(()),
        status => Err(TrialFailure::new(format!("{status:?}")).with_witness(report.witness)),
    }
}

/// Interlaced pairs must give TNN sections; any negative minor is a
/// counterexample and is recorded with its trial seed.
pub fn verify_forward(cfg: &ScenarioConfig) -> VerificationReport {
    run_trials(Direction::ForwardAToB, "forward", cfg, forward_trial)
}

fn reverse_trial(cfg: &ScenarioConfig) -> TrialResult {
    let (p, q) = gen_chain_violating_pair(cfg);
    let (lo_p, hi_p) = spec_support(&p);
    let (lo_q, hi_q) = spec_support(&q);
    let s = cfg.section_size as i64;
    let (pw, qw) = windows(&p, &q, lo_p.min(lo_q) - s, hi_p.max(hi_q) + s)?;
    let schedule = SectionSchedule::up_to(cfg.section_size, cfg.max_minor_order);
    match find_negative_minor(&pw, &qw, &schedule) {
        Some(_) => Ok(()),
        None => Err(TrialFailure::new("no negative minor within budget")),
    }
}

/// Chain-violating pairs must expose a negative minor within the budget
/// of square sections up to `cfg.section_size`.
pub fn verify_reverse(cfg: &ScenarioConfig) -> VerificationReport {
    run_trials(Direction::ReverseViolation, "reverse", cfg, reverse_trial)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};

    #[test]
    fn small_forward_and_reverse() {
        let cfg = ScenarioConfig {
            trials: 6,
            section_size: 8,
            max_minor_order: 3,
            ..Default::default()
        };
        let f = verify_forward(&cfg);
        assert_eq!((f.trials_run, f.trials_passed), (6, 6), "{f:?}");
        // interior swaps can need minors above the order budget, so only
        // the bookkeeping is asserted here
        let r = verify_reverse(&cfg);
        assert!(r.trials_passed >= 1 && r.trials_passed + r.failures.len() == 6, "{r:?}");
        for f in &r.failures {
            let (p, q) = gen_chain_violating_pair(&cfg.with_seed(f.seed));
            assert!(crate::sfunc::ratio_classify(&p, &q).is_err());
        }
    }

    #[test]
    fn equal_pair_is_tnn() {
        let p = EdreiSpec::with_zeros_pos(vec![int(1), frac(5, 2)]);
        let m = centred_section(&p, &p, 8).unwrap();
        assert_eq!(check_tnn(&m, 4).status, TnnStatus::AllNonnegative);
    }

    #[test]
    fn two_zero_swap_found_by_eight() {
        // β = (1, 3), α = (2, 4) with the second pair exchanged
        let q = EdreiSpec::with_zeros_pos(vec![int(1), int(4)]);
        let p = EdreiSpec::with_zeros_pos(vec![int(2), int(3)]);
        let (pw, qw) = windows(&p, &q, -8, 10).unwrap();
        assert!(find_negative_minor(&pw, &qw, &SectionSchedule::up_to(8, 4)).is_some());
    }

    #[test]
    fn exponential_mismatch_found() {
        let p = EdreiSpec {
            a: int(1),
            ..Default::default()
        };
        let q = EdreiSpec::default();
        let (pw, qw) = windows(&p, &q, -6, 12).unwrap();
        let w = find_negative_minor(&pw, &qw, &SectionSchedule::up_to(12, 4));
        assert!(w.is_some_and(|w| w.value < int(0)));
    }
}
