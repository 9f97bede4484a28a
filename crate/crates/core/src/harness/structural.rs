use std::fmt;
use std::ops::RangeInclusive;

use num_traits::{One, Signed, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize, Serializer};

use super::suites::{centred_section, windows};
use super::{
    gen_chain_violating_pair, gen_polynomial_pair, run_trials, spec_support, Direction, ScenarioConfig,
    TrialFailure, TrialResult, VerificationReport,
};
use crate::error::{Error, Result};
use crate::laurent::{EdreiSpec, LaurentWindow};
use crate::matrices::{hurwitz_section, reversal_labels, toeplitz_section};
use crate::rational::{self, frac, Rational};
use crate::tnn::{centred_anchor, check_tnn, det_exact, find_negative_minor, MinorWitness, SectionSchedule, TnnStatus};
use crate::transforms::{reversal, reversal_check, shift_check, strip_common_poles};

fn at(w: &LaurentWindow, n: i64) -> Rational {
    w.coeff(n).unwrap_or_else(Rational::zero)
}

fn nonzero_support(w: &LaurentWindow) -> Option<(i64, i64)> {
    let mut nz = (w.lo()..=w.hi()).filter(|&n| !at(w, n).is_zero());
    let first = nz.next()?;
    Some((first, nz.next_back().unwrap_or(first)))
}

fn minor_2x2(m: &crate::matrices::MatrixSection) -> Result<Rational> {
    det_exact(m, &[0, 1], &[0, 1])
}

/// A zero coefficient strictly inside the support.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GapWitness {
    /// First zero index of the gap.
    pub zero_index: i64,
    /// Last nonzero index before the gap.
    pub before: i64,
    /// First nonzero index after the gap.
    pub after: i64,
    /// Negative 2×2 minor of `T(w)` on rows `{1, 2}`.
    pub minor: MinorWitness,
}

/// `Ok` when the nonzero coefficients of `w` form one contiguous block.
pub fn check_gap_lemma(w: &LaurentWindow) -> std::result::Result<(), GapWitness> {
    let nz: Vec<i64> = (w.lo()..=w.hi()).filter(|&n| !at(w, n).is_zero()).collect();
    let Some(pair) = nz.windows(2).find(|p| p[1] > p[0] + 1) else {
        return Ok(());
    };
    let (before, after) = (pair[0], pair[1]);
    let k = before + 1;
    // [[a_k, a_after], [a_before, a_{after−1}]] with a_k = a_{after−1} = 0
    let rows = vec![1, 2];
    let cols = vec![k + 1, after + 1];
    let value = toeplitz_section(w, &rows, &cols)
        .and_then(|m| minor_2x2(&m))
        .unwrap_or_else(|_| -(at(w, after) * at(w, before)));
    Err(GapWitness {
        zero_index: k,
        before,
        after,
        minor: MinorWitness { rows, cols, value },
    })
}

/// A ratio of nonnegative coefficients; `x/0` with `x > 0` is `+∞`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Ratio {
    Finite(Rational),
    Infinite,
}

impl Ratio {
    fn of(x: &Rational, y: &Rational) -> Option<Ratio> {
        if !y.is_zero() {
            Some(Ratio::Finite(x / y))
        } else if !x.is_zero() {
            Some(Ratio::Infinite)
        } else {
            None
        }
    }

    fn le(&self, other: &Ratio) -> bool {
        match (self, other) {
            (_, Ratio::Infinite) => true,
            (Ratio::Infinite, Ratio::Finite(_)) => false,
            (Ratio::Finite(x), Ratio::Finite(y)) => x <= y,
        }
    }
}

impl fmt::Display for Ratio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ratio::Finite(x) => f.write_str(&rational::format(x)),
            Ratio::Infinite => f.write_str("inf"),
        }
    }
}

impl Serialize for Ratio {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChainWitness {
    pub k: i64,
    /// 1 for `a_{k−1}/a_k ≤ b_k/b_{k+1}`, 2 for `b_k/b_{k+1} ≤ a_k/a_{k+1}`.
    pub inequality: u8,
    pub lhs: Ratio,
    pub rhs: Ratio,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChainReport {
    pub checked: Vec<i64>,
    /// Indices where every comparison involved a `0/0`.
    pub skipped: Vec<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum ChainOutcome {
    Holds(ChainReport),
    Violated(ChainWitness),
}

fn known(w: &LaurentWindow, series: &str, n: i64) -> Result<Rational> {
    w.coeff(n).ok_or_else(|| Error::OutOfWindow {
        series: series.into(),
        exponent: n,
    })
}

/// Checks `a_{k−1}/a_k ≤ b_k/b_{k+1} ≤ a_k/a_{k+1}` for each `k` in `ks`.
/// Comparisons with a `0/0` side are skipped.
pub fn check_ratio_chain(p: &LaurentWindow, q: &LaurentWindow, ks: RangeInclusive<i64>) -> Result<ChainOutcome> {
    let mut report = ChainReport {
        checked: Vec::new(),
        skipped: Vec::new(),
    };
    for k in ks {
        let a = |n| known(p, "p", n);
        let b = |n| known(q, "q", n);
        let r1 = Ratio::of(&a(k - 1)?, &a(k)?);
        let r2 = Ratio::of(&b(k)?, &b(k + 1)?);
        let r3 = Ratio::of(&a(k)?, &a(k + 1)?);
        let mut compared = false;
        for (inequality, lhs, rhs) in [(1u8, &r1, &r2), (2, &r2, &r3)] {
            if let (Some(l), Some(r)) = (lhs, rhs) {
                compared = true;
                if !l.le(r) {
                    return Ok(ChainOutcome::Violated(ChainWitness {
                        k,
                        inequality,
                        lhs: l.clone(),
                        rhs: r.clone(),
                    }));
                }
            }
        }
        if compared {
            report.checked.push(k);
        } else {
            report.skipped.push(k);
        }
    }
    if report.checked.is_empty() {
        return Err(Error::ZeroCoefficient("every ratio in the range is 0/0".into()));
    }
    Ok(ChainOutcome::Holds(report))
}

/// True iff every 2×2 minor of the `size × size` section of `H(p, q)` on
/// rows `1..=size`, centred on `p`'s window, vanishes.
pub fn check_degenerate(p: &LaurentWindow, q: &LaurentWindow, size: usize) -> Result<bool> {
    let c0 = centred_anchor(p.lo(), p.hi(), size);
    let rows: Vec<i64> = (1..=size as i64).collect();
    let cols: Vec<i64> = (c0 + 1..=c0 + size as i64).collect();
    let m = hurwitz_section(p, q, &rows, &cols)?;
    for i in 0..size {
        for i2 in i + 1..size {
            for j in 0..size {
                for j2 in j + 1..size {
                    let d = m.get(i, j) * m.get(i2, j2) - m.get(i, j2) * m.get(i2, j);
                    if !d.is_zero() {
                        return Ok(false);
                    }
                }
            }
        }
    }
    Ok(true)
}

/// One of the four ways two Laurent polynomials can fail to end together,
/// with the 2×2 minor of `H(p, q)` that turns negative.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CouplingViolation {
    /// 1: `a_k = 0 ≠ a_{k−1}` but `b_{k+r} ≠ 0`;
    /// 2: `a_k = 0 ≠ a_{k+1}` but `b_{k−r+1} ≠ 0`;
    /// 3: `b_k = 0 ≠ b_{k−1}` but `a_{k+r−1} ≠ 0`;
    /// 4: `b_k = 0 ≠ b_{k+1}` but `a_{k−r} ≠ 0`.
    pub bullet: u8,
    pub k: i64,
    pub r: i64,
    pub minor: MinorWitness,
    /// The product form of the minor, e.g. `−a_{k−1}·b_{k+r}`.
    #[serde(with = "rational::serde_str")]
    pub displayed: Rational,
}

/// First violation of the termination coupling between two Laurent
/// polynomials, in the order bullet, `k`, `r`.
pub fn check_termination_coupling(p: &LaurentWindow, q: &LaurentWindow) -> Result<Option<CouplingViolation>> {
    if !p.is_complete() || !q.is_complete() {
        return Err(Error::InvalidArgument("termination coupling needs Laurent polynomials".into()));
    }
    let a = |n: i64| at(p, n);
    let b = |n: i64| at(q, n);
    let lo = p.lo().min(q.lo()) - 1;
    let hi = p.hi().max(q.hi()) + 1;
    let span = hi - lo + 1;
    for bullet in 1u8..=4 {
        for k in lo..=hi {
            for r in 1..=span {
                let hit = match bullet {
                    1 => (a(k).is_zero() && !a(k - 1).is_zero() && !b(k + r).is_zero())
                        .then(|| ([2, 3], [k + 1, k + r + 1], -(a(k - 1) * b(k + r)))),
                    2 => (a(k).is_zero() && !a(k + 1).is_zero() && !b(k - r + 1).is_zero())
                        .then(|| ([1, 2], [k - r + 2, k + 2], -(a(k + 1) * b(k - r + 1)))),
                    3 => (b(k).is_zero() && !b(k - 1).is_zero() && !a(k + r - 1).is_zero())
                        .then(|| ([1, 2], [k, k + r], -(b(k - 1) * a(k + r - 1)))),
                    _ => (b(k).is_zero() && !b(k + 1).is_zero() && !a(k - r).is_zero())
                        .then(|| ([2, 3], [k - r + 2, k + 2], -(b(k + 1) * a(k - r)))),
                };
                if let Some((rows, cols, displayed)) = hit {
                    let m = hurwitz_section(p, q, &rows, &cols)?;
                    return Ok(Some(CouplingViolation {
                        bullet,
                        k,
                        r,
                        minor: MinorWitness {
                            rows: rows.to_vec(),
                            cols: cols.to_vec(),
                            value: minor_2x2(&m)?,
                        },
                        displayed,
                    }));
                }
            }
        }
    }
    Ok(None)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum ProportionalityOutcome {
    /// No `k < n` with `a_{k−1} b_k = a_k b_{k−1} ≠ 0`.
    NoProportionalPair,
    /// Such a `k` exists and `p = ratio · q` throughout.
    Proportional {
        k: i64,
        #[serde(with = "rational::serde_str")]
        ratio: Rational,
    },
    /// Such a `k` exists but `p` and `q` differ in shape at `index`.
    Violated { k: i64, index: i64 },
}

/// For `p` ending at `z^n`: looks for two proportional adjacent columns
/// `a_{k−1} b_k = a_k b_{k−1} ≠ 0` with `k < n` and, if found, tests
/// `p = (a_n/b_n)·q` coefficient by coefficient.
pub fn check_proportionality(p: &LaurentWindow, q: &LaurentWindow) -> Result<ProportionalityOutcome> {
    if !p.exact_right() {
        return Err(Error::InvalidArgument("p must terminate on the right".into()));
    }
    let Some((_, n)) = nonzero_support(p) else {
        return Err(Error::InvalidArgument("p is identically zero".into()));
    };
    if nonzero_support(q).is_none() {
        return Err(Error::InvalidArgument("q is identically zero".into()));
    }
    let lo = p.lo().max(q.lo()) + 1;
    let found = (lo..n).find(|&k| {
        let (a0, a1, b0, b1) = (at(p, k - 1), at(p, k), at(q, k - 1), at(q, k));
        let lhs = &a0 * &b1;
        !lhs.is_zero() && lhs == a1 * b0
    });
    let Some(k) = found else {
        return Ok(ProportionalityOutcome::NoProportionalPair);
    };
    let (an, bn) = (at(p, n), at(q, n));
    if bn.is_zero() {
        return Ok(ProportionalityOutcome::Violated { k, index: n });
    }
    let lo = p.lo().min(q.lo());
    let hi = p.hi().max(q.hi());
    for m in lo..=hi {
        match (p.coeff(m), q.coeff(m)) {
            (Some(x), Some(y)) if &x * &bn != &an * &y => {
                return Ok(ProportionalityOutcome::Violated { k, index: m });
            }
            _ => {}
        }
    }
    Ok(ProportionalityOutcome::Proportional { k, ratio: an / bn })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StructuralSuite {
    GapLemma,
    Degenerate,
    RatioChain,
    Symmetry,
    PoleRemoval,
    TerminationCoupling,
    Proportionality,
}

impl StructuralSuite {
    pub const ALL: [StructuralSuite; 7] = [
        StructuralSuite::GapLemma,
        StructuralSuite::Degenerate,
        StructuralSuite::RatioChain,
        StructuralSuite::Symmetry,
        StructuralSuite::PoleRemoval,
        StructuralSuite::TerminationCoupling,
        StructuralSuite::Proportionality,
    ];

    pub fn name(self) -> &'static str {
        match self {
            StructuralSuite::GapLemma => "gap_lemma",
            StructuralSuite::Degenerate => "degenerate",
            StructuralSuite::RatioChain => "ratio_chain",
            StructuralSuite::Symmetry => "symmetry",
            StructuralSuite::PoleRemoval => "pole_removal",
            StructuralSuite::TerminationCoupling => "termination_coupling",
            StructuralSuite::Proportionality => "proportionality",
        }
    }
}

fn fail(msg: impl Into<String>) -> TrialResult {
    Err(TrialFailure::new(msg))
}

/// Exact windows of two Laurent-polynomial specs, padded around their
/// joint support.
fn poly_windows(p: &EdreiSpec, q: &EdreiSpec, pad: i64) -> Result<(LaurentWindow, LaurentWindow)> {
    let (lp, hp) = spec_support(p);
    let (lq, hq) = spec_support(q);
    windows(p, q, lp.min(lq) - pad, hp.max(hq) + pad)
}

fn require_tnn(p: &EdreiSpec, q: &EdreiSpec, size: usize, order: usize) -> TrialResult {
    let report = check_tnn(&centred_section(p, q, size)?, order);
    if report.status != TnnStatus::AllNonnegative {
        return Err(TrialFailure::new("generated section is not TNN").with_witness(report.witness));
    }
    Ok(())
}

fn gap_trial(cfg: &ScenarioConfig) -> TrialResult {
    let (p, q) = gen_polynomial_pair(cfg);
    let (pw, qw) = poly_windows(&p, &q, 2)?;
    for w in [&pw, &qw] {
        if let Err(g) = check_gap_lemma(w) {
            return Err(TrialFailure::new("gap in a generated window").with_witness(Some(g.minor)));
        }
    }
    // negative control: a lone coefficient two steps past the top
    let (_, top) = nonzero_support(&pw).ok_or_else(|| TrialFailure::new("p vanishes"))?;
    let gapped = pw.add(&LaurentWindow::polynomial(top + 2, vec![Rational::one()])?)?;
    match check_gap_lemma(&gapped) {
        Err(g) if g.before == top && g.after == top + 2 && g.minor.value == -at(&pw, top) && g.minor.value.is_negative() => {
            Ok(())
        }
        other => fail(format!("gap control gave {other:?}")),
    }
}

fn degenerate_trial(cfg: &ScenarioConfig) -> TrialResult {
    let mut rng = cfg.rng();
    let mut draw = || frac(rng.gen_range(1..=16), 4);
    let (a0, a1, b0) = (draw(), draw(), draw());
    let ks = -8i64..=8;
    let a: Vec<Rational> = ks
        .clone()
        .map(|k| rational::pow(&a0, 1 - k) * rational::pow(&a1, k))
        .collect();
    let b: Vec<Rational> = a.iter().map(|x| &b0 / &a0 * x).collect();
    let pw = LaurentWindow::new(-8, a, false, false)?;
    let qw = LaurentWindow::new(-8, b, false, false)?;
    if !check_degenerate(&pw, &qw, 6)? {
        return fail("geometric pair has a nonzero 2×2 minor");
    }
    let (p, q) = gen_polynomial_pair(cfg);
    let (pw, qw) = poly_windows(&p, &q, 8)?;
    if check_degenerate(&pw, &qw, 6)? {
        return fail("interlaced pair reported degenerate");
    }
    Ok(())
}

fn chain_trial(cfg: &ScenarioConfig) -> TrialResult {
    let (p, q) = gen_polynomial_pair(cfg);
    require_tnn(&p, &q, 6, 2)?;
    let (pw, qw) = poly_windows(&p, &q, 3)?;
    let (lo, hi) = (pw.lo() + 2, pw.hi() - 2);
    let ks = lo - 1..=hi + 1;
    if let ChainOutcome::Violated(w) = check_ratio_chain(&pw, &qw, ks.clone())? {
        return fail(format!("chain fails on a TNN pair: {w:?}"));
    }
    // negative control: b gains a coefficient where a has already ended
    let (_, top) = nonzero_support(&pw).ok_or_else(|| TrialFailure::new("p vanishes"))?;
    let bumped = qw.add(&LaurentWindow::polynomial(top + 2, vec![Rational::one()])?)?;
    match check_ratio_chain(&pw, &bumped, ks)? {
        ChainOutcome::Violated(_) => Ok(()),
        ChainOutcome::Holds(_) => fail("perturbed b kept the chain"),
    }
}

fn symmetry_trial(cfg: &ScenarioConfig) -> TrialResult {
    let (p, q) = if cfg.seed.is_multiple_of(2) {
        gen_polynomial_pair(cfg)
    } else {
        gen_chain_violating_pair(cfg)
    };
    let (pw, qw) = poly_windows(&p, &q, 2)?;
    let size = 6i64;
    let rows: Vec<i64> = (1..=size).collect();
    let c0 = centred_anchor(pw.lo(), pw.hi(), size as usize);
    let cols: Vec<i64> = (c0 + 1..=c0 + size).collect();
    if !reversal_check(&pw, &qw, &rows, &cols)? {
        return fail("reversed section differs");
    }
    if !shift_check(&pw, &qw, &rows, &cols)? {
        return fail("shifted section differs");
    }
    let direct = check_tnn(&hurwitz_section(&pw, &qw, &rows, &cols)?, 3);
    let (pr, qr) = reversal(&pw, &qw);
    let (r2, c2) = reversal_labels(&rows, &cols);
    let mirrored = check_tnn(&hurwitz_section(&pr, &qr, &r2, &c2)?, 3);
    if direct.status != mirrored.status {
        return Err(TrialFailure::new("verdicts differ under reversal").with_witness(direct.witness));
    }
    Ok(())
}

fn pole_removal_trial(cfg: &ScenarioConfig) -> TrialResult {
    let mut rng = cfg.rng();
    let (p0, q0) = gen_polynomial_pair(cfg);
    let delta = Rational::from_integer(rng.gen_range(2..=5).into());
    let right = rng.gen_bool(0.5);
    let g = if right {
        EdreiSpec {
            poles_pos: vec![delta.clone()],
            ..Default::default()
        }
    } else {
        EdreiSpec {
            poles_neg: vec![delta.clone()],
            ..Default::default()
        }
    };
    let (p, q) = (p0.times(&g), q0.times(&g));
    let size = 6i64;
    let (lo, hi) = spec_support(&p0);
    let c0 = centred_anchor(lo, hi, size as usize);
    let (elo, ehi) = (c0 + 1 - (size + 1) / 2, c0 + size - 1);
    let (pw, qw) = windows(&p, &q, elo - 1, ehi + 1)?;
    let rows: Vec<i64> = (1..=size).collect();
    let cols: Vec<i64> = (c0 + 1..=c0 + size).collect();
    let before = check_tnn(&hurwitz_section(&pw, &qw, &rows, &cols)?, 3);
    if before.status != TnnStatus::AllNonnegative {
        return Err(TrialFailure::new("section with shared pole is not TNN").with_witness(before.witness));
    }
    let (rp, lp) = if right {
        (vec![delta], vec![])
    } else {
        (vec![], vec![delta.recip()])
    };
    let (p1, q1, traces) = strip_common_poles(&pw, &qw, &rp, &lp)?;
    if !traces.iter().all(|t| t.identity_checked) {
        return fail("multiplying back did not reproduce the input");
    }
    let after = check_tnn(&hurwitz_section(&p1, &q1, &rows, &cols)?, 3);
    if after.status != TnnStatus::AllNonnegative {
        return Err(TrialFailure::new("pole removal broke TNN").with_witness(after.witness));
    }
    // the shared pole is gone: what is left is the polynomial part
    let (pp, qp) = windows(&p0, &q0, elo, ehi)?;
    for n in elo..=ehi {
        if p1.coeff(n) != pp.coeff(n) || q1.coeff(n) != qp.coeff(n) {
            return fail(format!("coefficient {n} differs from the pole-free pair"));
        }
    }
    Ok(())
}

fn coupling_trial(cfg: &ScenarioConfig) -> TrialResult {
    let (p, q) = gen_polynomial_pair(cfg);
    require_tnn(&p, &q, 6, 2)?;
    let (pw, qw) = poly_windows(&p, &q, 2)?;
    if let Some(v) = check_termination_coupling(&pw, &qw)? {
        return Err(TrialFailure::new(format!("coupling bullet {} fails", v.bullet)).with_witness(Some(v.minor)));
    }
    let (Some((lp, hp)), Some((lq, hq))) = (nonzero_support(&pw), nonzero_support(&qw)) else {
        return fail("a generated series vanishes");
    };
    if !(lp <= lq && lq <= lp + 1 && hp <= hq && hq <= hp + 1) {
        return fail(format!("supports [{lp},{hp}] and [{lq},{hq}] are not aligned"));
    }
    // negative control: push one series two steps to the right
    let (pc, qc) = if cfg.seed.is_multiple_of(2) {
        (pw.clone(), qw.shift_mul_z(2, &Rational::one()))
    } else {
        (pw.shift_mul_z(2, &Rational::one()), qw.clone())
    };
    match check_termination_coupling(&pc, &qc)? {
        Some(v) if v.minor.value == v.displayed && v.displayed.is_negative() => Ok(()),
        other => fail(format!("coupling control gave {other:?}")),
    }
}

fn proportionality_trial(cfg: &ScenarioConfig) -> TrialResult {
    let mut rng = cfg.rng();
    let c = frac(rng.gen_range(1..=16), 4);
    let (p, q) = gen_polynomial_pair(cfg);

    // an extra zero gives at least three terms, so there is an adjacent
    // pair of nonzero columns below the top one
    let extra = EdreiSpec::with_zeros_pos(vec![frac(rng.gen_range(1..=24), 4)]);
    let base_spec = q.times(&extra);
    let (base, _) = poly_windows(&base_spec, &base_spec, 2)?;
    let scaled = base.scale(&c);
    match check_proportionality(&base, &scaled)? {
        ProportionalityOutcome::Proportional { ratio, .. } if ratio == c.recip() => {}
        other => return fail(format!("proportional pair gave {other:?}")),
    }
    let scaled_spec = base_spec.times(&EdreiSpec { c: c.clone(), ..Default::default() });
    require_tnn(&base_spec, &scaled_spec, 6, 3)?;

    let (pw, qw) = poly_windows(&p, &q, 2)?;
    match check_proportionality(&pw, &qw)? {
        ProportionalityOutcome::NoProportionalPair => {}
        other => return fail(format!("interlaced pair gave {other:?}")),
    }

    // negative control: proportional except for one extra term, so the
    // pair cannot be TNN
    let (_, top) = nonzero_support(&base).ok_or_else(|| TrialFailure::new("q vanishes"))?;
    let bent = scaled.add(&LaurentWindow::polynomial(top + 1, vec![Rational::one()])?)?;
    match check_proportionality(&base, &bent)? {
        ProportionalityOutcome::Violated { .. } => {}
        other => return fail(format!("bent pair gave {other:?}")),
    }
    let schedule = SectionSchedule::up_to(cfg.section_size, cfg.max_minor_order);
    if find_negative_minor(&base, &bent, &schedule).is_none() {
        return fail("bent pair shows no negative minor");
    }
    Ok(())
}

/// Runs one structural suite for `cfg.trials` seeded instances.
pub fn run_structural(suite: StructuralSuite, cfg: &ScenarioConfig) -> VerificationReport {
    let trial: fn(&ScenarioConfig) -> TrialResult = match suite {
        StructuralSuite::GapLemma => gap_trial,
        StructuralSuite::Degenerate => degenerate_trial,
        StructuralSuite::RatioChain => chain_trial,
        StructuralSuite::Symmetry => symmetry_trial,
        StructuralSuite::PoleRemoval => pole_removal_trial,
        StructuralSuite::TerminationCoupling => coupling_trial,
        StructuralSuite::Proportionality => proportionality_trial,
    };
    run_trials(Direction::Structural, suite.name(), cfg, trial)
}
