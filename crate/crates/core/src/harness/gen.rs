use num_traits::{ToPrimitive, Zero};
use rand::seq::index::sample;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::ScenarioConfig;
use crate::laurent::EdreiSpec;
use crate::rational::{frac, int, Rational};

#[derive(Clone, Copy, PartialEq, Eq)]
enum Mode {
    /// Shared factor may carry a pole or an exponential.
    Forward,
    /// Laurent polynomials only.
    Polynomial,
}

/// Grid `k/den` restricted to `lo..=hi` (or `lo..hi` when `open_top`).
fn grid(lo: &Rational, hi: &Rational, den: i64, open_top: bool) -> Vec<Rational> {
    let d = int(den);
    let start = (lo * &d).ceil().to_integer().to_i64().unwrap_or(i64::MAX);
    let end = (hi * &d).floor().to_integer().to_i64().unwrap_or(i64::MIN);
    (start.max(1)..=end)
        .map(|k| frac(k, den))
        .filter(|x| !open_top || x < hi)
        .collect()
}

fn draw_sorted(rng: &mut ChaCha8Rng, pool: &[Rational], count: usize) -> Vec<Rational> {
    let count = count.min(pool.len());
    let mut idx = sample(rng, pool.len(), count).into_vec();
    idx.sort_unstable();
    idx.into_iter().map(|i| pool[i].clone()).collect()
}

/// Number of chain values on one side: `2m` or, when `ragged`, sometimes
/// `2m − 1` so that one family has an extra member.
fn side_count(rng: &mut ChaCha8Rng, m: usize, ragged: bool) -> usize {
    if m > 0 && ragged && rng.gen_bool(0.5) {
        2 * m - 1
    } else {
        2 * m
    }
}

/// Assigns chain values to zeros of `p` and `q`.
///
/// `pos` (increasing, all above every `neg` value) alternates `β₁ < α₁ <
/// β₂ < …`: `β`s are zeros of `q`, `α`s of `p`. `neg` (increasing) is read
/// from the largest down as `α₋₁⁻¹ > β₋₁⁻¹ > α₋₂⁻¹ > …`, and the stored
/// parameters are the reciprocals.
pub fn interlaced_pair_from_draws(pos: &[Rational], neg: &[Rational]) -> (EdreiSpec, EdreiSpec) {
    let mut p = EdreiSpec::default();
    let mut q = EdreiSpec::default();
    for (i, v) in pos.iter().enumerate() {
        if i % 2 == 0 {
            q.zeros_pos.push(v.clone());
        } else {
            p.zeros_pos.push(v.clone());
        }
    }
    for (i, v) in neg.iter().rev().enumerate() {
        if i % 2 == 0 {
            p.zeros_neg.push(v.recip());
        } else {
            q.zeros_neg.push(v.recip());
        }
    }
    (p, q)
}

fn draw_chain(rng: &mut ChaCha8Rng, cfg: &ScenarioConfig, ragged: bool) -> (Vec<Rational>, Vec<Rational>) {
    let n = cfg.n_zeros.max(1);
    let pool = grid(&cfg.value_range.0, &cfg.value_range.1, 4, false);
    let m = rng.gen_range(1..=n);
    let count = side_count(rng, m, ragged);
    let mut pos = draw_sorted(rng, &pool, count);
    if pos.is_empty() {
        pos.push(cfg.value_range.0.clone());
    }
    let below = grid(&frac(1, 16), &pos[0], 16, true);
    let m_neg = rng.gen_range(0..=n);
    let count = side_count(rng, m_neg, ragged);
    let neg = draw_sorted(rng, &below, count);
    (pos, neg)
}

fn draw_shared(rng: &mut ChaCha8Rng, mode: Mode) -> EdreiSpec {
    let mut g = EdreiSpec {
        j: rng.gen_range(-1..=1),
        ..Default::default()
    };
    if rng.gen_bool(0.5) {
        g.zeros_pos.push(frac(rng.gen_range(1..=24), 4));
    }
    if mode == Mode::Forward {
        if rng.gen_bool(0.5) {
            g.poles_pos.push(int([2, 3, 10][rng.gen_range(0..3)]));
        }
        if rng.gen_bool(0.25) {
            g.a = frac(1, 2);
        }
    }
    g
}

fn draw_pair(cfg: &ScenarioConfig, mode: Mode, ragged: bool) -> (EdreiSpec, EdreiSpec) {
    let mut rng = cfg.rng();
    let (pos, neg) = draw_chain(&mut rng, cfg, ragged);
    let (p, q) = interlaced_pair_from_draws(&pos, &neg);
    if cfg.shared_factor && rng.gen_bool(0.5) {
        let g = draw_shared(&mut rng, mode);
        return (p.times(&g), q.times(&g));
    }
    (p, q)
}

/// Interlaced pair `(p, q)` drawn from `cfg.seed`, so that `q/p` is an
/// S-function; optionally both carry a common factor (zero, pole, `e^{Az}`,
/// power of `z`).
pub fn gen_interlaced_pair(cfg: &ScenarioConfig) -> (EdreiSpec, EdreiSpec) {
    draw_pair(cfg, Mode::Forward, true)
}

/// Like [`gen_interlaced_pair`] but both members are Laurent polynomials.
pub fn gen_polynomial_pair(cfg: &ScenarioConfig) -> (EdreiSpec, EdreiSpec) {
    draw_pair(cfg, Mode::Polynomial, true)
}

/// Interlaced polynomial pair with one adjacent `(β, α)` pair exchanged
/// between `q` and `p`, which breaks the chain.
pub fn gen_chain_violating_pair(cfg: &ScenarioConfig) -> (EdreiSpec, EdreiSpec) {
    let mut rng = cfg.rng();
    let (pos, neg) = draw_chain(&mut rng, cfg, false);
    let (mut p, mut q) = interlaced_pair_from_draws(&pos, &neg);
    let n_pos = p.zeros_pos.len().min(q.zeros_pos.len());
    let n_neg = p.zeros_neg.len().min(q.zeros_neg.len());
    let pick = rng.gen_range(0..n_pos + n_neg);
    if pick < n_pos {
        std::mem::swap(&mut p.zeros_pos[pick], &mut q.zeros_pos[pick]);
    } else {
        let k = pick - n_pos;
        std::mem::swap(&mut p.zeros_neg[k], &mut q.zeros_neg[k]);
    }
    if cfg.shared_factor && rng.gen_bool(0.5) {
        let g = draw_shared(&mut rng, Mode::Polynomial);
        return (p.times(&g), q.times(&g));
    }
    (p, q)
}

/// Exponent range `(lo, hi)` of the zero factors times `z^j`.
pub fn spec_support(spec: &EdreiSpec) -> (i64, i64) {
    if spec.c.is_zero() {
        return (spec.j, spec.j);
    }
    let poly = spec.zero_polynomial();
    (poly.lo() + spec.j, poly.hi() + spec.j)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laurent::edrei_coeffs;
    use crate::matrices::hurwitz_section;
    use crate::sfunc::ratio_classify;
    use crate::tnn::{centred_anchor, check_tnn, TnnStatus};

    fn cfg(seed: u64) -> ScenarioConfig {
        ScenarioConfig {
            seed,
            ..Default::default()
        }
    }

    #[test]
    fn draws_to_specs() {
        let (p, q) = interlaced_pair_from_draws(&[int(1), int(2)], &[]);
        assert_eq!(q.zeros_pos, vec![int(1)]);
        assert_eq!(p.zeros_pos, vec![int(2)]);
        let (p, q) = interlaced_pair_from_draws(&[int(1), int(2), int(3), int(4)], &[]);
        assert_eq!(q.zeros_pos, vec![int(1), int(3)]);
        assert_eq!(p.zeros_pos, vec![int(2), int(4)]);
        assert!(ratio_classify(&p, &q).is_ok());
        let (p, q) = interlaced_pair_from_draws(&[int(1), int(2)], &[frac(1, 4), frac(1, 2)]);
        assert_eq!(p.zeros_neg, vec![int(2)]);
        assert_eq!(q.zeros_neg, vec![int(4)]);
        assert!(ratio_classify(&p, &q).is_ok());
    }

    #[test]
    fn generated_pairs_classify() {
        for seed in 0..200 {
            let (p, q) = gen_interlaced_pair(&cfg(seed));
            assert!(ratio_classify(&p, &q).is_ok(), "seed {seed}: {p:?} {q:?}");
            let (p, q) = gen_chain_violating_pair(&cfg(seed));
            assert!(ratio_classify(&p, &q).is_err(), "seed {seed}: {p:?} {q:?}");
        }
    }

    #[test]
    fn generation_is_deterministic() {
        assert_eq!(gen_interlaced_pair(&cfg(5)), gen_interlaced_pair(&cfg(5)));
        assert_eq!(gen_polynomial_pair(&cfg(5)), gen_polynomial_pair(&cfg(5)));
    }

    #[test]
    fn shared_pole_keeps_tnn() {
        let (p, q) = interlaced_pair_from_draws(&[int(1), int(2), int(3), int(4)], &[]);
        let g = EdreiSpec {
            poles_pos: vec![int(10)],
            ..Default::default()
        };
        let (p, q) = (p.times(&g), q.times(&g));
        assert!(ratio_classify(&p, &q).is_ok());
        let size = 8;
        let c0 = centred_anchor(0, 2, size);
        let pw = edrei_coeffs(&p, c0 - 3, c0 + 8, 0).unwrap();
        let qw = edrei_coeffs(&q, c0 - 3, c0 + 8, 0).unwrap();
        let rows: Vec<i64> = (1..=8).collect();
        let cols: Vec<i64> = (c0 + 1..=c0 + 8).collect();
        let m = hurwitz_section(&pw, &qw, &rows, &cols).unwrap();
        assert_eq!(check_tnn(&m, 4).status, TnnStatus::AllNonnegative);
    }
}
