//! Exact Laurent-coefficient windows.
//!
//! A [`LaurentWindow`] stores the coefficients of a (possibly doubly
//! infinite) series on a contiguous exponent range `lo..=hi`. Outside the
//! range a coefficient is either known to vanish (the side is *exact*) or
//! unknown. Inside the range the `trusted` sub-range marks coefficients that
//! are exactly correct; the rest are truncation-affected approximations
//! (they only arise from doubly infinite products, where every coefficient
//! is an infinite sum).

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{self, Rational};

/// Default number of extra terms kept in truncated doubly infinite sums.
pub const DEFAULT_TRUNC: u32 = 24;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "WindowJson", into = "WindowJson")]
pub struct LaurentWindow {
    lo: i64,
    coeffs: Vec<Rational>,
    exact_left: bool,
    exact_right: bool,
    trusted: Option<(i64, i64)>,
}

#[derive(Serialize, Deserialize)]
struct WindowJson {
    lo: i64,
    hi: i64,
    #[serde(with = "rational::serde_str::vec")]
    coeffs: Vec<Rational>,
    exact_left: bool,
    exact_right: bool,
    #[serde(default = "default_trusted")]
    trusted: Option<[i64; 2]>,
}

fn default_trusted() -> Option<[i64; 2]> {
    Some([i64::MIN, i64::MAX])
}

impl TryFrom<WindowJson> for LaurentWindow {
    type Error = Error;

    fn try_from(j: WindowJson) -> Result<Self> {
        if j.coeffs.is_empty() || j.hi - j.lo + 1 != j.coeffs.len() as i64 {
            return Err(Error::Parse(format!(
                "window [{}, {}] does not match {} coefficients",
                j.lo,
                j.hi,
                j.coeffs.len()
            )));
        }
        let trusted = match j.trusted {
            None => None,
            Some([a, b]) => {
                let (a, b) = (a.max(j.lo), b.min(j.hi));
                (a <= b).then_some((a, b))
            }
        };
        Ok(LaurentWindow {
            lo: j.lo,
            coeffs: j.coeffs,
            exact_left: j.exact_left,
            exact_right: j.exact_right,
            trusted,
        })
    }
}

impl From<LaurentWindow> for WindowJson {
    fn from(w: LaurentWindow) -> Self {
        WindowJson {
            lo: w.lo,
            hi: w.hi(),
            exact_left: w.exact_left,
            exact_right: w.exact_right,
            trusted: w.trusted.map(|(a, b)| [a, b]),
            coeffs: w.coeffs,
        }
    }
}

/// Longest run of consecutive exponents in `lo..=hi` satisfying `ok`
/// (the leftmost one on ties).
fn longest_run(lo: i64, hi: i64, ok: impl Fn(i64) -> bool) -> Option<(i64, i64)> {
    let mut best: Option<(i64, i64)> = None;
    let mut start: Option<i64> = None;
    for n in lo..=hi + 1 {
        if n <= hi && ok(n) {
            start.get_or_insert(n);
        } else if let Some(s) = start.take() {
            let better = best.is_none_or(|(a, b)| n - 1 - s > b - a);
            if better {
                best = Some((s, n - 1));
            }
        }
    }
    best
}

impl LaurentWindow {
    /// Window on `lo..lo+len` with every stored coefficient trusted.
    pub fn new(lo: i64, coeffs: Vec<Rational>, exact_left: bool, exact_right: bool) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::EmptyWindow);
        }
        let hi = lo + coeffs.len() as i64 - 1;
        Ok(LaurentWindow {
            lo,
            coeffs,
            exact_left,
            exact_right,
            trusted: Some((lo, hi)),
        })
    }

    /// A Laurent polynomial: exact on both sides.
    pub fn polynomial(lo: i64, coeffs: Vec<Rational>) -> Result<Self> {
        Self::new(lo, coeffs, true, true)
    }

    pub fn constant(c: Rational) -> Self {
        LaurentWindow {
            lo: 0,
            coeffs: vec![c],
            exact_left: true,
            exact_right: true,
            trusted: Some((0, 0)),
        }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn zero() -> Self {
        Self::constant(Rational::zero())
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn hi(&self) -> i64 {
        self.lo + self.coeffs.len() as i64 - 1
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn exact_left(&self) -> bool {
        self.exact_left
    }

    pub fn exact_right(&self) -> bool {
        self.exact_right
    }

    /// Sub-range of exactly correct stored coefficients.
    pub fn trusted(&self) -> Option<(i64, i64)> {
        self.trusted
    }

    /// True when the whole window is a complete Laurent polynomial.
    pub fn is_complete(&self) -> bool {
        self.exact_left && self.exact_right && self.trusted == Some((self.lo, self.hi()))
    }

    /// True for the exact zero series.
    pub fn is_zero_series(&self) -> bool {
        self.is_complete() && self.coeffs.iter().all(Zero::is_zero)
    }

    fn stored(&self, n: i64) -> Option<&Rational> {
        if n < self.lo {
            return None;
        }
        self.coeffs.get((n - self.lo) as usize)
    }

    /// Coefficient of `z^n` when it is known (stored, or in an exact tail).
    pub fn coeff(&self, n: i64) -> Option<Rational> {
        if let Some(c) = self.stored(n) {
            return Some(c.clone());
        }
        let zero_tail = (n < self.lo && self.exact_left) || (n > self.hi() && self.exact_right);
        zero_tail.then(Rational::zero)
    }

    pub fn is_known(&self, n: i64) -> bool {
        self.stored(n).is_some()
            || (n < self.lo && self.exact_left)
            || (n > self.hi() && self.exact_right)
    }

    /// Whether the coefficient of `z^n` is known to be exactly correct.
    pub fn is_trusted(&self, n: i64) -> bool {
        if self.stored(n).is_some() {
            return matches!(self.trusted, Some((a, b)) if a <= n && n <= b);
        }
        self.is_known(n)
    }

    fn is_trusted_zero(&self, n: i64) -> bool {
        self.is_trusted(n) && self.coeff(n).is_some_and(|c| c.is_zero())
    }

    /// Marks every stored coefficient as truncation-affected.
    pub fn into_untrusted(mut self) -> Self {
        self.trusted = None;
        self
    }

    fn with_flags(mut self, exact_left: bool, exact_right: bool) -> Self {
        self.exact_left = exact_left;
        self.exact_right = exact_right;
        self
    }

    /// Lowest exponent at which the series may be nonzero; `None` when the
    /// left tail is unknown.
    fn low_support(&self) -> Option<i64> {
        if !self.exact_left {
            return None;
        }
        let first = self.coeffs.iter().position(|c| !c.is_zero());
        Some(match first {
            Some(i) => self.lo + i as i64,
            None => self.hi() + 1,
        })
    }

    fn high_support(&self) -> Option<i64> {
        if !self.exact_right {
            return None;
        }
        let last = self.coeffs.iter().rposition(|c| !c.is_zero());
        Some(match last {
            Some(i) => self.lo + i as i64,
            None => self.lo - 1,
        })
    }

    /// Re-cuts the window to `lo..=hi`, filling from exact tails.
    pub fn restrict(&self, lo: i64, hi: i64) -> Result<Self> {
        if lo > hi {
            return Err(Error::EmptyWindow);
        }
        for n in [lo, hi] {
            if !self.is_known(n) {
                return Err(Error::OutOfWindow {
                    series: "window".into(),
                    exponent: n,
                });
            }
        }
        let coeffs: Vec<Rational> = (lo..=hi).map(|n| self.coeff(n).unwrap()).collect();
        let dropped_left_zero = (self.lo..lo).all(|n| self.is_trusted_zero(n));
        let dropped_right_zero = (hi + 1..=self.hi()).all(|n| self.is_trusted_zero(n));
        Ok(LaurentWindow {
            lo,
            exact_left: self.exact_left && dropped_left_zero,
            exact_right: self.exact_right && dropped_right_zero,
            trusted: longest_run(lo, hi, |n| self.is_trusted(n)),
            coeffs,
        })
    }

    /// Drops trusted zero coefficients at exact ends (keeps at least one).
    pub fn trim(&self) -> Self {
        let mut lo = self.lo;
        let mut hi = self.hi();
        if self.exact_left {
            while lo < hi && self.is_trusted_zero(lo) {
                lo += 1;
            }
        }
        if self.exact_right {
            while hi > lo && self.is_trusted_zero(hi) {
                hi -= 1;
            }
        }
        self.restrict(lo, hi).expect("trim stays inside the window")
    }

    /// `c · z^k · w`.
    pub fn shift_mul_z(&self, k: i64, c: &Rational) -> Self {
        if c.is_zero() {
            let n = self.coeffs.len();
            return LaurentWindow {
                lo: self.lo + k,
                coeffs: vec![Rational::zero(); n],
                exact_left: true,
                exact_right: true,
                trusted: Some((self.lo + k, self.hi() + k)),
            };
        }
        LaurentWindow {
            lo: self.lo + k,
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
            exact_left: self.exact_left,
            exact_right: self.exact_right,
            trusted: self.trusted.map(|(a, b)| (a + k, b + k)),
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        self.shift_mul_z(0, c)
    }

    /// `w(1/z)`: the coefficient at `n` moves to `-n`.
    pub fn reverse(&self) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs.reverse();
        LaurentWindow {
            lo: -self.hi(),
            coeffs,
            exact_left: self.exact_right,
            exact_right: self.exact_left,
            trusted: self.trusted.map(|(a, b)| (-b, -a)),
        }
    }

    /// Coefficient-wise sum on the range where both summands are known.
    pub fn add(&self, other: &Self) -> Result<Self> {
        let lo = match (self.exact_left, other.exact_left) {
            (true, true) => self.lo.min(other.lo),
            (true, false) => other.lo,
            (false, true) => self.lo,
            (false, false) => self.lo.max(other.lo),
        };
        let hi = match (self.exact_right, other.exact_right) {
            (true, true) => self.hi().max(other.hi()),
            (true, false) => other.hi(),
            (false, true) => self.hi(),
            (false, false) => self.hi().min(other.hi()),
        };
        if lo > hi {
            return Err(Error::EmptyWindow);
        }
        let coeffs = (lo..=hi)
            .map(|n| self.coeff(n).unwrap() + other.coeff(n).unwrap())
            .collect();
        Ok(LaurentWindow {
            lo,
            coeffs,
            exact_left: self.exact_left && other.exact_left,
            exact_right: self.exact_right && other.exact_right,
            trusted: longest_run(lo, hi, |n| self.is_trusted(n) && other.is_trusted(n)),
        })
    }
}

/// Cauchy product `c_n = Σ_k a_k b_{n-k}` on the exponent range where every
/// term is determined by the two windows and their exactness flags.
pub fn window_mul(a: &LaurentWindow, b: &LaurentWindow) -> Result<LaurentWindow> {
    if a.is_zero_series() || b.is_zero_series() {
        return Ok(LaurentWindow::zero());
    }
    let mut lo = a.lo + b.lo;
    let mut hi = a.hi() + b.hi();
    // An unknown tail of one factor must meet an exactly vanishing tail of
    // the other; that caps the determined range.
    if !a.exact_right {
        hi = hi.min(a.hi() + b.low_support().ok_or(Error::EmptyWindow)?);
    }
    if !b.exact_right {
        hi = hi.min(b.hi() + a.low_support().ok_or(Error::EmptyWindow)?);
    }
    if !a.exact_left {
        lo = lo.max(a.lo + b.high_support().ok_or(Error::EmptyWindow)?);
    }
    if !b.exact_left {
        lo = lo.max(b.lo + a.high_support().ok_or(Error::EmptyWindow)?);
    }
    if lo > hi {
        return Err(Error::EmptyWindow);
    }

    let mut coeffs = Vec::with_capacity((hi - lo + 1) as usize);
    let mut exact = Vec::with_capacity(coeffs.capacity());
    for n in lo..=hi {
        let k_lo = a.lo.max(n - b.hi());
        let k_hi = a.hi().min(n - b.lo);
        let mut acc = Rational::zero();
        let mut ok = true;
        for k in k_lo..=k_hi {
            let (x, y) = (a.stored(k).unwrap(), b.stored(n - k).unwrap());
            let (tx, ty) = (a.is_trusted(k), b.is_trusted(n - k));
            if !((tx || (ty && y.is_zero())) && (ty || (tx && x.is_zero()))) {
                ok = false;
            }
            if !x.is_zero() && !y.is_zero() {
                acc += x * y;
            }
        }
        coeffs.push(acc);
        exact.push(ok);
    }
    Ok(LaurentWindow {
        lo,
        exact_left: a.exact_left && b.exact_left,
        exact_right: a.exact_right && b.exact_right,
        trusted: longest_run(lo, hi, |n| exact[(n - lo) as usize]),
        coeffs,
    })
}

/// Laurent coefficients of `exp(A z + A0 / z)` on `lo..=hi`:
/// `c_n = Σ_{k=max(0,-n)}^{trunc} A^{n+k} A0^k / ((n+k)! k!)`.
///
/// With `A0 = 0` (or `A = 0`) each coefficient is a single term and is
/// returned exactly whatever `trunc` is; otherwise every coefficient is a
/// truncated sum and the window is marked untrusted.
pub fn exp_factor_coeffs(
    a: &Rational,
    a0: &Rational,
    lo: i64,
    hi: i64,
    trunc: u32,
) -> Result<LaurentWindow> {
    if a.is_negative() || a0.is_negative() {
        return Err(Error::InvalidSpec("exponential rates must be nonnegative".into()));
    }
    if lo > hi {
        return Err(Error::EmptyWindow);
    }
    let fact = |n: i64| Rational::from_integer(rational::factorial(n as u64));
    let single = |rate: &Rational, m: i64| -> Rational {
        // rate^m / m! with 0^0 = 1
        if m < 0 {
            Rational::zero()
        } else {
            rational::pow(rate, m) / fact(m)
        }
    };
    let coeffs: Vec<Rational> = if a0.is_zero() {
        (lo..=hi).map(|n| single(a, n)).collect()
    } else if a.is_zero() {
        (lo..=hi).map(|n| single(a0, -n)).collect()
    } else {
        (lo..=hi)
            .map(|n| {
                let k0 = (-n).max(0);
                (k0..=trunc as i64)
                    .map(|k| {
                        rational::pow(a, n + k) * rational::pow(a0, k) / (fact(n + k) * fact(k))
                    })
                    .fold(Rational::zero(), |s, t| s + t)
            })
            .collect()
    };
    let w = LaurentWindow::new(lo, coeffs, a0.is_zero(), a.is_zero())?;
    Ok(if a.is_zero() || a0.is_zero() {
        w
    } else {
        w.into_untrusted()
    })
}

/// Data of a function `C z^j e^{Az + A0/z} · Π(1+z/β)·Π(1+z⁻¹/β) / (Π(1−z/δ)·Π(1−z⁻¹/δ))`
/// with finitely many factors.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdreiSpec {
    #[serde(rename = "C", with = "rational::serde_str", default = "one")]
    pub c: Rational,
    #[serde(default)]
    pub j: i64,
    #[serde(rename = "A", with = "rational::serde_str", default = "Rational::zero")]
    pub a: Rational,
    #[serde(rename = "A0", with = "rational::serde_str", default = "Rational::zero")]
    pub a0: Rational,
    #[serde(with = "rational::serde_str::vec", default)]
    pub zeros_pos: Vec<Rational>,
    #[serde(with = "rational::serde_str::vec", default)]
    pub zeros_neg: Vec<Rational>,
    #[serde(with = "rational::serde_str::vec", default)]
    pub poles_pos: Vec<Rational>,
    #[serde(with = "rational::serde_str::vec", default)]
    pub poles_neg: Vec<Rational>,
}

fn one() -> Rational {
    Rational::one()
}

impl Default for EdreiSpec {
    fn default() -> Self {
        EdreiSpec {
            c: Rational::one(),
            j: 0,
            a: Rational::zero(),
            a0: Rational::zero(),
            zeros_pos: Vec::new(),
            zeros_neg: Vec::new(),
            poles_pos: Vec::new(),
            poles_neg: Vec::new(),
        }
    }
}

impl EdreiSpec {
    /// `Π(1 + z/β)` over the given positive-side zeros.
    pub fn with_zeros_pos(zeros: Vec<Rational>) -> Self {
        EdreiSpec {
            zeros_pos: zeros,
            ..Default::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.c.is_negative() || self.a.is_negative() || self.a0.is_negative() {
            return Err(Error::InvalidSpec("C, A and A0 must be nonnegative".into()));
        }
        let lists = [
            ("zeros_pos", &self.zeros_pos),
            ("zeros_neg", &self.zeros_neg),
            ("poles_pos", &self.poles_pos),
            ("poles_neg", &self.poles_neg),
        ];
        for (name, list) in lists {
            if let Some(bad) = list.iter().find(|x| !x.is_positive()) {
                return Err(Error::InvalidSpec(format!(
                    "{name} entry {} is not strictly positive",
                    rational::format(bad)
                )));
            }
        }
        Ok(())
    }

    /// Product of this spec with another (concatenated factor lists).
    pub fn times(&self, other: &EdreiSpec) -> EdreiSpec {
        let cat = |x: &[Rational], y: &[Rational]| {
            let mut v = x.to_vec();
            v.extend_from_slice(y);
            v
        };
        EdreiSpec {
            c: &self.c * &other.c,
            j: self.j + other.j,
            a: &self.a + &other.a,
            a0: &self.a0 + &other.a0,
            zeros_pos: cat(&self.zeros_pos, &other.zeros_pos),
            zeros_neg: cat(&self.zeros_neg, &other.zeros_neg),
            poles_pos: cat(&self.poles_pos, &other.poles_pos),
            poles_neg: cat(&self.poles_neg, &other.poles_neg),
        }
    }

    fn has_right_tail(&self) -> bool {
        !self.poles_pos.is_empty() || !self.a.is_zero()
    }

    fn has_left_tail(&self) -> bool {
        !self.poles_neg.is_empty() || !self.a0.is_zero()
    }

    /// Product of the zero factors as an exact Laurent polynomial.
    pub fn zero_polynomial(&self) -> LaurentWindow {
        let mut acc = LaurentWindow::one();
        for beta in &self.zeros_pos {
            let f = LaurentWindow::polynomial(0, vec![Rational::one(), beta.recip()]).unwrap();
            acc = window_mul(&acc, &f).unwrap();
        }
        for beta in &self.zeros_neg {
            let f = LaurentWindow::polynomial(-1, vec![beta.recip(), Rational::one()]).unwrap();
            acc = window_mul(&acc, &f).unwrap();
        }
        acc
    }
}

/// `(1 − z/δ)⁻¹` expanded to `z^terms`.
pub fn geometric_right(delta: &Rational, terms: i64) -> LaurentWindow {
    let ratio = delta.recip();
    let mut coeffs = Vec::with_capacity(terms as usize + 1);
    let mut c = Rational::one();
    for _ in 0..=terms {
        coeffs.push(c.clone());
        c *= &ratio;
    }
    LaurentWindow::new(0, coeffs, true, false).unwrap()
}

/// `(1 − z⁻¹/δ)⁻¹` expanded to `z^-terms`.
pub fn geometric_left(delta: &Rational, terms: i64) -> LaurentWindow {
    geometric_right(delta, terms).reverse()
}

/// Coefficients of the function described by `spec` on `lo..=hi`.
///
/// Zero factors are multiplied exactly; each pole factor is expanded far
/// enough that the requested range is determined. When the spec carries
/// infinite tails on both sides (poles or exponentials toward `+∞` and
/// toward `−∞`), every coefficient is an infinite sum: the expansions are
/// extended by `trunc` extra terms and the result is marked untrusted.
pub fn edrei_coeffs(spec: &EdreiSpec, lo: i64, hi: i64, trunc: u32) -> Result<LaurentWindow> {
    spec.validate()?;
    if lo > hi {
        return Err(Error::EmptyWindow);
    }
    if spec.c.is_zero() {
        return LaurentWindow::zero().restrict(lo, hi);
    }
    let poly = spec.zero_polynomial();
    let (tl, th) = (lo - spec.j, hi - spec.j);
    let right = spec.has_right_tail();
    let left = spec.has_left_tail();
    let approximate = right && left;
    let extra = if approximate { trunc as i64 } else { 0 };
    let n_right = (th - poly.lo()).max(0) + extra;
    let n_left = (poly.hi() - tl).max(0) + extra;

    let mut factors = Vec::new();
    for d in &spec.poles_pos {
        factors.push(geometric_right(d, n_right));
    }
    if !spec.a.is_zero() {
        factors.push(exp_factor_coeffs(&spec.a, &Rational::zero(), 0, n_right, trunc)?);
    }
    for d in &spec.poles_neg {
        factors.push(geometric_left(d, n_left));
    }
    if !spec.a0.is_zero() {
        factors.push(exp_factor_coeffs(&Rational::zero(), &spec.a0, -n_left, 0, trunc)?);
    }

    let mut acc = poly;
    for f in &factors {
        let f = if approximate {
            // treat the truncated expansions as finite; the result is
            // flagged below
            f.clone().with_flags(true, true)
        } else {
            f.clone()
        };
        acc = window_mul(&acc, &f)?;
    }
    let acc = if approximate {
        acc.with_flags(true, true)
            .restrict(tl, th)?
            .with_flags(false, false)
            .into_untrusted()
    } else {
        acc.restrict(tl, th)?
    };
    Ok(acc.shift_mul_z(spec.j, &spec.c))
}

/// Convenience for tests and fixtures: `Π (1 + z/β)` over rational `β`s.
pub fn polynomial_from_zeros(zeros_pos: &[Rational]) -> LaurentWindow {
    EdreiSpec::with_zeros_pos(zeros_pos.to_vec()).zero_polynomial()
}

/// `Σ_{n=lo}^{hi} x^n` style window from explicit integers (test helper).
pub fn window_from_ints(lo: i64, values: &[i64], exact_left: bool, exact_right: bool) -> LaurentWindow {
    let coeffs = values.iter().map(|&v| Rational::from_integer(BigInt::from(v))).collect();
    LaurentWindow::new(lo, coeffs, exact_left, exact_right).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};

    fn poly(lo: i64, c: &[Rational]) -> LaurentWindow {
        LaurentWindow::polynomial(lo, c.to_vec()).unwrap()
    }

    #[test]
    fn mul_identity_and_binomial() {
        let w = geometric_right(&int(3), 4);
        assert_eq!(window_mul(&LaurentWindow::one(), &w).unwrap(), w);
        let one_plus_z = poly(0, &[int(1), int(1)]);
        let sq = window_mul(&one_plus_z, &one_plus_z).unwrap();
        assert_eq!(sq, poly(0, &[int(1), int(2), int(1)]));
    }

    #[test]
    fn mul_against_truncated_geometric() {
        // hand convolution: (1 + z/2)(1 + z/2 + z²/4 + z³/8 + ?z⁴ ...)
        let a = poly(0, &[int(1), frac(1, 2)]);
        let b = geometric_right(&int(2), 3);
        let c = window_mul(&a, &b).unwrap();
        assert_eq!(c.lo(), 0);
        assert_eq!(c.hi(), 3);
        assert_eq!(c.coeffs(), &[int(1), int(1), frac(1, 2), frac(1, 4)]);
        assert!(c.exact_left() && !c.exact_right());
    }

    #[test]
    fn mul_of_opposite_unknown_tails_is_empty() {
        let r = geometric_right(&int(2), 3);
        let l = geometric_left(&int(2), 3);
        assert_eq!(window_mul(&r, &l), Err(Error::EmptyWindow));
    }

    #[test]
    fn exp_coefficients() {
        let w = exp_factor_coeffs(&int(1), &int(0), -1, 2, DEFAULT_TRUNC).unwrap();
        assert_eq!(w.coeffs(), &[int(0), int(1), int(1), frac(1, 2)]);
        assert!(w.exact_left() && !w.exact_right());
        assert_eq!(w.trusted(), Some((-1, 2)));

        let w = exp_factor_coeffs(&int(0), &int(0), -2, 2, DEFAULT_TRUNC).unwrap();
        assert_eq!(w.coeffs(), &[int(0), int(0), int(1), int(0), int(0)]);
        assert!(w.is_complete());

        let w = exp_factor_coeffs(&int(1), &int(1), 0, 0, 2).unwrap();
        assert_eq!(w.coeffs(), &[frac(9, 4)]);
        assert_eq!(w.trusted(), None);
    }

    #[test]
    fn exp_two_sided_truncation_converges() {
        // Oracle: c_0 of e^{z+1/z} is Σ 1/(k!)²; compare against a direct
        // partial sum with many terms.
        let oracle: Rational = (0..40u64)
            .map(|k| {
                let f = Rational::from_integer(rational::factorial(k));
                (f.clone() * f).recip()
            })
            .fold(Rational::zero(), |s, t| s + t);
        let w = exp_factor_coeffs(&int(1), &int(1), 0, 0, 20).unwrap();
        let err = rational::to_f64(&(oracle - &w.coeffs()[0])).abs();
        assert!(err < 1e-30);
    }

    #[test]
    fn edrei_basic_cases() {
        let w = edrei_coeffs(&EdreiSpec::default(), 0, 0, DEFAULT_TRUNC).unwrap();
        assert_eq!(w.coeffs(), &[int(1)]);
        assert!(w.is_complete());

        let w = edrei_coeffs(&EdreiSpec::with_zeros_pos(vec![int(1)]), 0, 1, DEFAULT_TRUNC).unwrap();
        assert_eq!(w.coeffs(), &[int(1), int(1)]);
        assert!(w.exact_left() && w.exact_right());

        let spec = EdreiSpec {
            poles_pos: vec![int(2)],
            ..Default::default()
        };
        let w = edrei_coeffs(&spec, 0, 3, DEFAULT_TRUNC).unwrap();
        assert_eq!(w.coeffs(), &[int(1), frac(1, 2), frac(1, 4), frac(1, 8)]);
        assert!(w.exact_left() && !w.exact_right());
    }

    #[test]
    fn edrei_shift_scale_and_padding() {
        let spec = EdreiSpec {
            c: int(3),
            j: -2,
            zeros_pos: vec![int(1)],
            ..Default::default()
        };
        let w = edrei_coeffs(&spec, -4, 0, DEFAULT_TRUNC).unwrap();
        assert_eq!(w.coeffs(), &[int(0), int(0), int(3), int(3), int(0)]);
        assert!(w.is_complete());
    }

    #[test]
    fn edrei_left_pole_and_zero_neg() {
        // (1 + z⁻¹/2)/(1 − z⁻¹/3): coefficients at -n are 3^-n + 3^-(n-1)/2
        let spec = EdreiSpec {
            zeros_neg: vec![int(2)],
            poles_neg: vec![int(3)],
            ..Default::default()
        };
        let w = edrei_coeffs(&spec, -3, 1, DEFAULT_TRUNC).unwrap();
        let expect = |n: i64| -> Rational {
            let m = -n;
            if m < 0 {
                return int(0);
            }
            let mut v = rational::pow(&frac(1, 3), m);
            if m >= 1 {
                v += rational::pow(&frac(1, 3), m - 1) * frac(1, 2);
            }
            v
        };
        for n in -3..=1 {
            assert_eq!(w.coeff(n).unwrap(), expect(n), "n = {n}");
        }
        assert!(!w.exact_left() && w.exact_right());
    }

    #[test]
    fn edrei_two_sided_poles_are_untrusted_but_close() {
        // 1/((1 − z/2)(1 − z⁻¹/2)): c_n = 2^{-|n|} / (1 − 1/4)
        let spec = EdreiSpec {
            poles_pos: vec![int(2)],
            poles_neg: vec![int(2)],
            ..Default::default()
        };
        let w = edrei_coeffs(&spec, -2, 2, 40).unwrap();
        assert_eq!(w.trusted(), None);
        for n in -2..=2i64 {
            let exact = rational::pow(&frac(1, 2), n.abs()) * frac(4, 3);
            let err = rational::to_f64(&(exact - w.coeff(n).unwrap())).abs();
            assert!(err < 1e-20, "n = {n}");
        }
    }

    #[test]
    fn edrei_rejects_nonpositive_entries() {
        let spec = EdreiSpec::with_zeros_pos(vec![int(0)]);
        assert!(matches!(edrei_coeffs(&spec, 0, 1, 4), Err(Error::InvalidSpec(_))));
        let spec = EdreiSpec {
            a: int(-1),
            ..Default::default()
        };
        assert!(matches!(edrei_coeffs(&spec, 0, 1, 4), Err(Error::InvalidSpec(_))));
    }

    #[test]
    fn reverse_cases() {
        let one = LaurentWindow::one();
        assert_eq!(one.reverse(), one);
        let w = poly(0, &[int(1), int(1)]).reverse();
        assert_eq!((w.lo(), w.hi()), (-1, 0));
        let spec = EdreiSpec {
            poles_pos: vec![int(2)],
            ..Default::default()
        };
        let g = edrei_coeffs(&spec, 0, 2, 4).unwrap().reverse();
        assert_eq!(g.coeff(0).unwrap(), int(1));
        assert_eq!(g.coeff(-1).unwrap(), frac(1, 2));
        assert_eq!(g.coeff(-2).unwrap(), frac(1, 4));
        assert!(g.exact_right() && !g.exact_left());
    }

    #[test]
    fn shift_cases() {
        let w = poly(0, &[int(1), int(1)]);
        assert_eq!(w.shift_mul_z(0, &int(1)), w);
        let s = w.shift_mul_z(1, &int(1));
        assert_eq!((s.lo(), s.hi()), (1, 2));
        let h = poly(0, &[int(1), frac(1, 2)]).shift_mul_z(-1, &int(2));
        assert_eq!(h.lo(), -1);
        assert_eq!(h.coeffs(), &[int(2), int(1)]);
    }

    #[test]
    fn restrict_and_trim() {
        let w = poly(0, &[int(1), int(2)]);
        let r = w.restrict(-2, 3).unwrap();
        assert_eq!(r.coeffs(), &[int(0), int(0), int(1), int(2), int(0), int(0)]);
        assert_eq!(r.trim(), w);
        let g = geometric_right(&int(2), 3);
        assert!(matches!(g.restrict(0, 4), Err(Error::OutOfWindow { .. })));
        let cut = g.restrict(1, 2).unwrap();
        assert!(!cut.exact_left());
    }

    #[test]
    fn add_ranges() {
        let p = poly(0, &[int(1), int(1)]);
        let g = geometric_right(&int(2), 3);
        let s = p.add(&g).unwrap();
        assert_eq!((s.lo(), s.hi()), (0, 3));
        assert_eq!(s.coeffs(), &[int(2), frac(3, 2), frac(1, 4), frac(1, 8)]);
        assert!(s.exact_left() && !s.exact_right());
    }

    #[test]
    fn json_shape() {
        let w = poly(0, &[int(1), frac(1, 2)]);
        let v = serde_json::to_value(&w).unwrap();
        assert_eq!(
            v,
            serde_json::json!({"lo":0,"hi":1,"coeffs":["1","1/2"],"exact_left":true,"exact_right":true,"trusted":[0,1]})
        );
        let back: LaurentWindow = serde_json::from_value(v).unwrap();
        assert_eq!(back, w);
        let bad = serde_json::json!({"lo":0,"hi":3,"coeffs":["1"],"exact_left":true,"exact_right":true});
        assert!(serde_json::from_value::<LaurentWindow>(bad).is_err());
    }

    #[test]
    fn edrei_json_defaults() {
        let s: EdreiSpec = serde_json::from_str(r#"{"zeros_pos":["2","1/3"]}"#).unwrap();
        assert_eq!(s.c, int(1));
        assert_eq!(s.zeros_pos, vec![int(2), frac(1, 3)]);
        let v = serde_json::to_value(&s).unwrap();
        assert_eq!(v["A0"], "0");
    }
}
