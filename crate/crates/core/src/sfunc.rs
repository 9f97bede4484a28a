//! S-functions with interlaced zeros and poles.
//!
//! Three shapes are representable:
//!
//! * `doubly_infinite`: `C·Π(1+z/β_μ)/Π(1+z/α_ν) · Π(1+z⁻¹/β_μ)/Π(1+z⁻¹/α_ν)` with
//!   `0 < … < α₋₂⁻¹ < β₋₁⁻¹ < α₋₁⁻¹ < β₁ < α₁ < β₂ < …`;
//! * `meromorphic`: `C·(z+β₀)/(z+α₀) · Π(1+z/β_μ)/Π(1+z/α_ν)` with
//!   `0 ≤ β₀ < α₀ < β₁ < α₁ < …`;
//! * `affine`: `C·(z+β₀)`.
//!
//! Lists are stored in index order (`β₁, β₂, …` and `β₋₁, β₋₂, …`), which is
//! increasing in value for a valid spec on both sides.
//!
//! Internally every finite spec is reduced to a [`RootForm`]
//! `K·z^e·Π(z+ζ)/Π(z+π)`, which is what equality, the reciprocal and the
//! ratio classification work on.

use num_complex::Complex;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::laurent::{EdreiSpec, LaurentWindow};
use crate::rational::{self, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SKind {
    DoublyInfinite,
    Meromorphic,
    Affine,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SFunctionSpec {
    pub kind: SKind,
    #[serde(rename = "C", with = "rational::serde_str")]
    pub c: Rational,
    #[serde(with = "rational::serde_str::vec", default)]
    pub alphas_pos: Vec<Rational>,
    #[serde(with = "rational::serde_str::vec", default)]
    pub betas_pos: Vec<Rational>,
    #[serde(with = "rational::serde_str::vec", default)]
    pub alphas_neg: Vec<Rational>,
    #[serde(with = "rational::serde_str::vec", default)]
    pub betas_neg: Vec<Rational>,
    #[serde(with = "rational::serde_str::opt", default)]
    pub alpha0: Option<Rational>,
    #[serde(with = "rational::serde_str::opt", default)]
    pub beta0: Option<Rational>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    Alpha,
    Beta,
    Origin,
}

/// One position of an interlacing chain. For negative indices `value` is
/// the reciprocal that actually appears in the chain.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainEntry {
    pub family: Family,
    pub index: i64,
    #[serde(with = "rational::serde_str")]
    pub value: Rational,
}

/// First adjacent pair of a chain that is out of order (or two entries of
/// the same family next to each other).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainViolation {
    pub left: ChainEntry,
    pub right: ChainEntry,
}

/// Why a ratio `q/p` is not one of the representable S-functions.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "reason", rename_all = "snake_case")]
pub enum NotSForm {
    ExponentialMismatch,
    /// A pole factor survives cancellation; `side` is `"p"` or `"q"`.
    ResidualPole {
        side: String,
        #[serde(with = "rational::serde_str")]
        value: Rational,
    },
    ChainViolation(ChainViolation),
    /// Net power of `z` outside `{0, 1}`.
    ZPower { power: i64 },
    ZeroDenominator,
}

fn entry(family: Family, index: i64, value: Rational) -> ChainEntry {
    ChainEntry { family, index, value }
}

fn first_violation(seq: &[ChainEntry], origin_inclusive: bool) -> Option<ChainViolation> {
    seq.windows(2).find_map(|w| {
        let (a, b) = (&w[0], &w[1]);
        let bad = if a.family == Family::Origin {
            if origin_inclusive {
                b.value < a.value
            } else {
                b.value <= a.value
            }
        } else {
            a.family == b.family || b.value <= a.value
        };
        bad.then(|| ChainViolation {
            left: a.clone(),
            right: b.clone(),
        })
    })
}

impl SFunctionSpec {
    pub fn constant(c: Rational) -> Self {
        SFunctionSpec {
            kind: SKind::Meromorphic,
            c,
            alphas_pos: Vec::new(),
            betas_pos: Vec::new(),
            alphas_neg: Vec::new(),
            betas_neg: Vec::new(),
            alpha0: None,
            beta0: None,
        }
    }

    pub fn meromorphic(c: Rational, betas_pos: Vec<Rational>, alphas_pos: Vec<Rational>) -> Self {
        SFunctionSpec {
            betas_pos,
            alphas_pos,
            ..Self::constant(c)
        }
    }

    pub fn doubly_infinite(
        c: Rational,
        betas_pos: Vec<Rational>,
        alphas_pos: Vec<Rational>,
        betas_neg: Vec<Rational>,
        alphas_neg: Vec<Rational>,
    ) -> Self {
        SFunctionSpec {
            kind: SKind::DoublyInfinite,
            betas_pos,
            alphas_pos,
            betas_neg,
            alphas_neg,
            ..Self::constant(c)
        }
    }

    pub fn affine(c: Rational, beta0: Rational) -> Self {
        SFunctionSpec {
            kind: SKind::Affine,
            beta0: Some(beta0),
            ..Self::constant(c)
        }
    }

    /// The kind's chain, starting with the origin.
    pub fn chain(&self) -> Vec<ChainEntry> {
        let mut seq = vec![entry(Family::Origin, 0, Rational::zero())];
        match self.kind {
            SKind::Affine => {
                if let Some(b) = &self.beta0 {
                    seq.push(entry(Family::Beta, 0, b.clone()));
                }
            }
            SKind::Meromorphic | SKind::DoublyInfinite => {
                if self.kind == SKind::DoublyInfinite {
                    let m = self.alphas_neg.len().max(self.betas_neg.len());
                    for k in (1..=m).rev() {
                        if let Some(b) = self.betas_neg.get(k - 1) {
                            seq.push(entry(Family::Beta, -(k as i64), b.recip()));
                        }
                        if let Some(a) = self.alphas_neg.get(k - 1) {
                            seq.push(entry(Family::Alpha, -(k as i64), a.recip()));
                        }
                    }
                } else {
                    if let Some(b) = &self.beta0 {
                        seq.push(entry(Family::Beta, 0, b.clone()));
                    }
                    if let Some(a) = &self.alpha0 {
                        seq.push(entry(Family::Alpha, 0, a.clone()));
                    }
                }
                let m = self.alphas_pos.len().max(self.betas_pos.len());
                for k in 1..=m {
                    if let Some(b) = self.betas_pos.get(k - 1) {
                        seq.push(entry(Family::Beta, k as i64, b.clone()));
                    }
                    if let Some(a) = self.alphas_pos.get(k - 1) {
                        seq.push(entry(Family::Alpha, k as i64, a.clone()));
                    }
                }
            }
        }
        seq
    }

    /// Checks the kind's strict chain (`β₀ = 0` allowed).
    pub fn validate_interlacing(&self) -> std::result::Result<(), ChainViolation> {
        let seq = self.chain();
        if let Some(v) = first_violation(&seq, self.kind != SKind::DoublyInfinite) {
            return Err(v);
        }
        // The part with index ≥ 0 must open with a β, and a nonempty negative
        // part must close with α₋₁ (otherwise F has a pole at the origin).
        let split = seq.iter().skip(1).position(|e| e.index >= 0).map(|i| i + 1);
        let neg_last = match split {
            Some(i) => seq[i - 1].clone(),
            None => seq.last().unwrap().clone(),
        };
        if let Some(i) = split {
            if seq[i].family == Family::Alpha && neg_last.family == Family::Origin {
                return Err(ChainViolation {
                    left: neg_last,
                    right: seq[i].clone(),
                });
            }
        }
        if neg_last.family == Family::Beta && neg_last.index < 0 {
            let right = split.map_or_else(|| neg_last.clone(), |i| seq[i].clone());
            return Err(ChainViolation { left: neg_last, right });
        }
        Ok(())
    }

    /// Full validity: sign of `C`, kind-specific fields and the chain.
    pub fn check(&self) -> Result<()> {
        if self.c.is_negative() || (self.kind == SKind::DoublyInfinite && self.c.is_zero()) {
            return Err(Error::InvalidSpec("C out of range for this kind".into()));
        }
        let has_neg = !self.alphas_neg.is_empty() || !self.betas_neg.is_empty();
        let has_zero_index = self.alpha0.is_some() || self.beta0.is_some();
        let bad_fields = match self.kind {
            SKind::DoublyInfinite => has_zero_index,
            SKind::Meromorphic => has_neg,
            SKind::Affine => {
                has_neg
                    || self.alpha0.is_some()
                    || self.beta0.is_none()
                    || !self.alphas_pos.is_empty()
                    || !self.betas_pos.is_empty()
            }
        };
        if bad_fields {
            return Err(Error::InvalidSpec(format!("fields do not match kind {:?}", self.kind)));
        }
        self.validate_interlacing().map_err(|v| {
            Error::InvalidSpec(format!(
                "chain violated between {:?} {} and {:?} {}",
                v.left.family, v.left.index, v.right.family, v.right.index
            ))
        })
    }

    /// `K·z^e·Π(z+ζ)/Π(z+π)` with the same value as the product form.
    pub fn root_form(&self) -> RootForm {
        let mut r = RootForm {
            k: self.c.clone(),
            e: 0,
            zeros: Vec::new(),
            poles: Vec::new(),
        };
        for b in &self.betas_pos {
            r.k /= b;
            r.zeros.push(b.clone());
        }
        for a in &self.alphas_pos {
            r.k *= a;
            r.poles.push(a.clone());
        }
        for b in &self.betas_neg {
            r.e -= 1;
            r.zeros.push(b.recip());
        }
        for a in &self.alphas_neg {
            r.e += 1;
            r.poles.push(a.recip());
        }
        if let Some(b) = &self.beta0 {
            if b.is_zero() {
                r.e += 1;
            } else {
                r.zeros.push(b.clone());
            }
        }
        if let Some(a) = &self.alpha0 {
            r.poles.push(a.clone());
        }
        r.sort();
        r
    }

    /// Canonical representative of the same function (used for equality).
    pub fn normalize(&self) -> std::result::Result<SFunctionSpec, NotSForm> {
        self.root_form().canonical()
    }

    /// Numerator and denominator Laurent polynomials `q`, `p` with
    /// `F = C·q/p`.
    pub fn numerator_denominator(&self) -> (LaurentWindow, LaurentWindow) {
        let q = EdreiSpec {
            zeros_pos: self.betas_pos.clone(),
            zeros_neg: self.betas_neg.clone(),
            ..Default::default()
        }
        .zero_polynomial();
        let p = EdreiSpec {
            zeros_pos: self.alphas_pos.clone(),
            zeros_neg: self.alphas_neg.clone(),
            ..Default::default()
        }
        .zero_polynomial();
        let linear = |c: &Option<Rational>, w: LaurentWindow| match c {
            Some(c) => {
                let f = LaurentWindow::polynomial(0, vec![c.clone(), Rational::one()]).unwrap();
                crate::laurent::window_mul(&w, &f).unwrap()
            }
            None => w,
        };
        (linear(&self.beta0, q), linear(&self.alpha0, p))
    }

    /// Pole locations `−α_ν` (and `−α₀`, `−1/α_ν` for `ν < 0`).
    pub fn pole_locations(&self) -> Vec<Rational> {
        let mut out = Vec::new();
        if let Some(a) = &self.alpha0 {
            out.push(-a.clone());
        }
        out.extend(self.alphas_pos.iter().map(|a| -a.clone()));
        out.extend(self.alphas_neg.iter().map(|a| -a.recip()));
        out
    }
}

/// `K·z^e·Π(z+ζ_i)/Π(z+π_k)` with positive `ζ`, `π`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootForm {
    pub k: Rational,
    pub e: i64,
    pub zeros: Vec<Rational>,
    pub poles: Vec<Rational>,
}

impl RootForm {
    fn sort(&mut self) {
        self.zeros.sort();
        self.poles.sort();
    }

    /// Removes zero/pole pairs at the same location.
    pub fn cancelled(&self) -> RootForm {
        let mut zeros = Vec::new();
        let mut poles = self.poles.clone();
        for z in &self.zeros {
            if let Some(i) = poles.iter().position(|p| p == z) {
                poles.remove(i);
            } else {
                zeros.push(z.clone());
            }
        }
        let mut r = RootForm {
            k: self.k.clone(),
            e: self.e,
            zeros,
            poles,
        };
        r.sort();
        r
    }

    /// `z/F`.
    pub fn reciprocal_times_z(&self) -> RootForm {
        RootForm {
            k: self.k.recip(),
            e: 1 - self.e,
            zeros: self.poles.clone(),
            poles: self.zeros.clone(),
        }
    }

    /// Exact value at a Gaussian rational; `None` at a pole (or at `0` when
    /// `e < 0`).
    pub fn eval(&self, z: &Complex<Rational>) -> Option<Complex<Rational>> {
        let mut num = Complex::new(self.k.clone(), Rational::zero());
        let mut den = Complex::new(Rational::one(), Rational::zero());
        for zeta in &self.zeros {
            num *= z + Complex::new(zeta.clone(), Rational::zero());
        }
        for pi in &self.poles {
            den *= z + Complex::new(pi.clone(), Rational::zero());
        }
        for _ in 0..self.e.max(0) {
            num *= z;
        }
        for _ in 0..(-self.e).max(0) {
            den *= z;
        }
        if den.re.is_zero() && den.im.is_zero() {
            return None;
        }
        Some(num / den)
    }

    pub fn eval_real(&self, x: &Rational) -> Option<Rational> {
        self.eval(&Complex::new(x.clone(), Rational::zero())).map(|v| v.re)
    }

    /// The canonical S-function spec, or the first obstruction.
    pub fn canonical(&self) -> std::result::Result<SFunctionSpec, NotSForm> {
        let r = self.cancelled();
        if r.k.is_zero() {
            return Ok(SFunctionSpec::constant(Rational::zero()));
        }
        if r.e != 0 && r.e != 1 {
            return Err(NotSForm::ZPower { power: r.e });
        }
        // merged sequence: (is_zero, location)
        let mut seq: Vec<(bool, Rational)> = r
            .zeros
            .iter()
            .map(|z| (true, z.clone()))
            .chain(r.poles.iter().map(|p| (false, p.clone())))
            .collect();
        seq.sort_by(|a, b| a.1.cmp(&b.1).then(b.0.cmp(&a.0)));
        if r.e == 1 {
            seq.insert(0, (true, Rational::zero()));
        }
        let first_index = if r.e == 1 { 0 } else { 1 };
        let (mut zi, mut pi) = (first_index, first_index);
        let mut chain = vec![entry(Family::Origin, 0, Rational::zero())];
        for (is_zero, v) in &seq {
            if *is_zero {
                chain.push(entry(Family::Beta, zi, v.clone()));
                zi += 1;
            } else {
                chain.push(entry(Family::Alpha, pi, v.clone()));
                pi += 1;
            }
        }
        if let Some(v) = first_violation(&chain, true) {
            return Err(NotSForm::ChainViolation(v));
        }
        if chain.len() > 1 && chain[1].family == Family::Alpha {
            return Err(NotSForm::ChainViolation(ChainViolation {
                left: chain[0].clone(),
                right: chain[1].clone(),
            }));
        }

        if r.poles.is_empty() && r.zeros.len() as i64 + r.e == 1 {
            let beta0 = r.zeros.first().cloned().unwrap_or_else(Rational::zero);
            return Ok(SFunctionSpec::affine(r.k, beta0));
        }
        let prod = |v: &[Rational]| v.iter().fold(Rational::one(), |acc, x| acc * x);
        if r.e == 1 {
            let alphas_pos = r.poles[1..].to_vec();
            let c = &r.k * prod(&r.zeros) / prod(&alphas_pos);
            Ok(SFunctionSpec {
                beta0: Some(Rational::zero()),
                alpha0: Some(r.poles[0].clone()),
                ..SFunctionSpec::meromorphic(c, r.zeros.clone(), alphas_pos)
            })
        } else {
            let c = &r.k * prod(&r.zeros) / prod(&r.poles);
            Ok(SFunctionSpec::meromorphic(c, r.zeros, r.poles))
        }
    }
}

/// `F(z) = constant + linear·z + Σ A_ν·z/(z − pole_ν)` (poles are negative).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartialFractions {
    #[serde(with = "rational::serde_str")]
    pub constant: Rational,
    #[serde(with = "rational::serde_str")]
    pub linear: Rational,
    pub terms: Vec<PartialFractionTerm>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartialFractionTerm {
    #[serde(with = "rational::serde_str")]
    pub pole: Rational,
    #[serde(with = "rational::serde_str")]
    pub residue: Rational,
}

impl PartialFractions {
    pub fn eval(&self, x: &Rational) -> Option<Rational> {
        let mut acc = &self.constant + &self.linear * x;
        for t in &self.terms {
            let d = x - &t.pole;
            if d.is_zero() {
                return None;
            }
            acc += &t.residue * x / d;
        }
        Some(acc)
    }
}

fn eval_laurent(w: &LaurentWindow, x: &Rational) -> Rational {
    w.coeffs()
        .iter()
        .enumerate()
        .map(|(i, c)| c * rational::pow(x, w.lo() + i as i64))
        .fold(Rational::zero(), |s, t| s + t)
}

fn eval_laurent_derivative(w: &LaurentWindow, x: &Rational) -> Rational {
    w.coeffs()
        .iter()
        .enumerate()
        .map(|(i, c)| {
            let n = w.lo() + i as i64;
            c * rational::int(n) * rational::pow(x, n - 1)
        })
        .fold(Rational::zero(), |s, t| s + t)
}

/// Expansion into simple fractions with residue coefficients
/// `A_ν = C·q(z)/(z·p'(z))` at each pole.
pub fn partial_fractions(spec: &SFunctionSpec) -> Result<PartialFractions> {
    let poles = spec.pole_locations();
    for (i, a) in poles.iter().enumerate() {
        if poles[..i].contains(a) {
            return Err(Error::DegenerateSpec(format!(
                "repeated pole at {}",
                rational::format(a)
            )));
        }
    }
    let (q, p) = spec.numerator_denominator();
    let mut terms = Vec::with_capacity(poles.len());
    for z0 in &poles {
        let qv = eval_laurent(&q, z0);
        if qv.is_zero() {
            return Err(Error::DegenerateSpec(format!(
                "numerator and denominator share the zero {}",
                rational::format(z0)
            )));
        }
        let residue = &spec.c * qv / (z0 * eval_laurent_derivative(&p, z0));
        terms.push(PartialFractionTerm {
            pole: z0.clone(),
            residue,
        });
    }
    let r = spec.root_form();
    if r.e < 0 {
        return Err(Error::DegenerateSpec("pole at the origin".into()));
    }
    let growth = r.e + r.zeros.len() as i64 - r.poles.len() as i64;
    if growth > 1 {
        return Err(Error::DegenerateSpec("grows faster than z at infinity".into()));
    }
    let constant = r.eval_real(&Rational::zero()).expect("regular at the origin");
    let linear = if growth == 1 { r.k.clone() } else { Rational::zero() };
    Ok(PartialFractions {
        constant,
        linear,
        terms,
    })
}

/// Exact value of the product form at a real rational point.
pub fn eval_exact(spec: &SFunctionSpec, x: &Rational) -> Result<Rational> {
    spec.root_form()
        .eval_real(x)
        .ok_or_else(|| Error::PoleHit(rational::format(x)))
}

/// Floating-point value at `re + i·im`. Rationals are rounded to the
/// nearest `f64` (relative error `2⁻⁵³` each), so the result carries a
/// relative error of about `(number of factors)·2⁻⁵²`.
pub fn evaluate(spec: &SFunctionSpec, re: &Rational, im: &Rational) -> Result<Complex<f64>> {
    if im.is_zero() && spec.pole_locations().contains(re) {
        return Err(Error::PoleHit(rational::format(re)));
    }
    let has_neg = !spec.alphas_neg.is_empty() || !spec.betas_neg.is_empty();
    if re.is_zero() && im.is_zero() && has_neg {
        return Err(Error::InvalidArgument("z = 0 is an essential point of this product".into()));
    }
    let f = |r: &Rational| rational::to_f64(r);
    let z = Complex::new(f(re), f(im));
    let one = Complex::new(1.0, 0.0);
    let mut v = Complex::new(f(&spec.c), 0.0);
    for b in &spec.betas_pos {
        v *= one + z / f(b);
    }
    for a in &spec.alphas_pos {
        v /= one + z / f(a);
    }
    for b in &spec.betas_neg {
        v *= one + one / (z * f(b));
    }
    for a in &spec.alphas_neg {
        v /= one + one / (z * f(a));
    }
    if let Some(b) = &spec.beta0 {
        v *= z + f(b);
    }
    if let Some(a) = &spec.alpha0 {
        v /= z + f(a);
    }
    Ok(v)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HalfplaneReport {
    pub samples: usize,
    #[serde(with = "rational::serde_str")]
    pub min_im: Rational,
    #[serde(with = "rational::serde_str::vec")]
    pub argmin: Vec<Rational>,
    pub nonnegative: bool,
}

/// Samples `z = x + iy` with `x ∈ [−8, 8]`, `y ∈ (0, 8]` on a grid of
/// step `1/8` and evaluates `Im F(z)` exactly.
pub fn check_halfplane_map(spec: &SFunctionSpec, n_samples: usize, seed: u64) -> HalfplaneReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let r = spec.root_form();
    let mut best: Option<(Rational, Vec<Rational>)> = None;
    for _ in 0..n_samples {
        let x = rational::frac(rng.gen_range(-64..=64), 8);
        let y = rational::frac(rng.gen_range(1..=64), 8);
        let v = r
            .eval(&Complex::new(x.clone(), y.clone()))
            .expect("no poles off the real axis");
        if best.as_ref().is_none_or(|(m, _)| v.im < *m) {
            best = Some((v.im, vec![x, y]));
        }
    }
    let (min_im, argmin) = best.unwrap_or((Rational::zero(), Vec::new()));
    HalfplaneReport {
        samples: n_samples,
        nonnegative: !min_im.is_negative(),
        min_im,
        argmin,
    }
}

/// Spec of `z/F(z)`.
pub fn reciprocal_transform(spec: &SFunctionSpec) -> Result<SFunctionSpec> {
    if spec.c.is_zero() {
        return Err(Error::DegenerateSpec("F vanishes identically".into()));
    }
    if spec.kind == SKind::DoublyInfinite && !spec.alphas_neg.is_empty() {
        // z/F = 1/(C·α₋₁) · (1 + z·α₋₁) · Π(1+z/α_ν)/Π(1+z/β_μ) · (ν < −1 over μ < 0)
        let a1 = &spec.alphas_neg[0];
        let mut betas_pos = vec![a1.recip()];
        betas_pos.extend(spec.alphas_pos.iter().cloned());
        return Ok(SFunctionSpec::doubly_infinite(
            (&spec.c * a1).recip(),
            betas_pos,
            spec.betas_pos.clone(),
            spec.alphas_neg[1..].to_vec(),
            spec.betas_neg.clone(),
        ));
    }
    spec.root_form()
        .reciprocal_times_z()
        .canonical()
        .map_err(|e| Error::DegenerateSpec(format!("z/F is not representable: {e:?}")))
}

fn remove_common(a: &mut Vec<Rational>, b: &mut Vec<Rational>) {
    let mut keep = Vec::new();
    for x in a.drain(..) {
        if let Some(i) = b.iter().position(|y| *y == x) {
            b.remove(i);
        } else {
            keep.push(x);
        }
    }
    *a = keep;
}

/// Classifies `q/p` after cancelling common factors.
pub fn ratio_classify(p: &EdreiSpec, q: &EdreiSpec) -> std::result::Result<SFunctionSpec, NotSForm> {
    if p.c.is_zero() {
        return Err(NotSForm::ZeroDenominator);
    }
    if p.a != q.a || p.a0 != q.a0 {
        return Err(NotSForm::ExponentialMismatch);
    }
    let (mut p, mut q) = (p.clone(), q.clone());
    remove_common(&mut p.zeros_pos, &mut q.zeros_pos);
    remove_common(&mut p.zeros_neg, &mut q.zeros_neg);
    remove_common(&mut p.poles_pos, &mut q.poles_pos);
    remove_common(&mut p.poles_neg, &mut q.poles_neg);
    for (side, s) in [("q", &q), ("p", &p)] {
        if let Some(v) = s.poles_pos.iter().chain(&s.poles_neg).next() {
            return Err(NotSForm::ResidualPole {
                side: side.into(),
                value: v.clone(),
            });
        }
    }
    if q.c.is_zero() {
        return Ok(SFunctionSpec::constant(Rational::zero()));
    }
    let c = &q.c / &p.c;
    let sorted = |v: &[Rational]| {
        let mut v = v.to_vec();
        v.sort();
        v
    };
    let direct = SFunctionSpec::doubly_infinite(
        c.clone(),
        sorted(&q.zeros_pos),
        sorted(&p.zeros_pos),
        sorted(&q.zeros_neg),
        sorted(&p.zeros_neg),
    );
    let mut root = direct.root_form();
    root.e += q.j - p.j;
    let canonical = root.canonical()?;
    let has_neg = !direct.alphas_neg.is_empty() || !direct.betas_neg.is_empty();
    if q.j == p.j && has_neg && direct.validate_interlacing().is_ok() {
        return Ok(direct);
    }
    Ok(canonical)
}
