//! Total nonnegativity of finite sections by exhaustive minor enumeration.
//!
//! Minors are visited by order, then by row combination, then by column
//! combination, each combination in lexicographic order. The first negative
//! minor in that order is the witness, so verdicts and witnesses do not
//! depend on how the work is scheduled.

use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::laurent::LaurentWindow;
use crate::matrices::{hurwitz_section, MatrixSection};
use crate::rational::{self, Rational};

pub const DEFAULT_MAX_ORDER: usize = 5;

/// Minor-order cap, overridable through `TNN_MAX_ORDER`.
pub fn default_max_order() -> usize {
    std::env::var("TNN_MAX_ORDER")
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .filter(|&k| k >= 1)
        .unwrap_or(DEFAULT_MAX_ORDER)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinorWitness {
    pub rows: Vec<i64>,
    pub cols: Vec<i64>,
    #[serde(with = "rational::serde_str")]
    pub value: Rational,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TnnStatus {
    AllNonnegative,
    NegativeFound,
    InconclusiveUntrusted,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TnnReport {
    pub status: TnnStatus,
    #[serde(rename = "max_order")]
    pub max_order_checked: usize,
    pub witness: Option<MinorWitness>,
    #[serde(rename = "count")]
    pub minors_evaluated: u64,
}

fn bareiss_i128(mut a: Vec<i128>, n: usize) -> Option<i128> {
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if a[k * n + k] == 0 {
            let Some(r) = (k + 1..n).find(|&r| a[r * n + k] != 0) else {
                return Some(0);
            };
            for j in 0..n {
                a.swap(k * n + j, r * n + j);
            }
            sign = -sign;
        }
        let piv = a[k * n + k];
        for i in k + 1..n {
            let lead = a[i * n + k];
            for j in k + 1..n {
                let x = a[i * n + j].checked_mul(piv)?;
                let y = lead.checked_mul(a[k * n + j])?;
                a[i * n + j] = x.checked_sub(y)? / prev;
            }
        }
        prev = piv;
    }
    Some(sign * a[n * n - 1])
}

fn bareiss_big(mut a: Vec<BigInt>, n: usize) -> BigInt {
    let mut negate = false;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k * n + k].is_zero() {
            let Some(r) = (k + 1..n).find(|&r| !a[r * n + k].is_zero()) else {
                return BigInt::zero();
            };
            for j in 0..n {
                a.swap(k * n + j, r * n + j);
            }
            negate = !negate;
        }
        let piv = a[k * n + k].clone();
        for i in k + 1..n {
            let lead = a[i * n + k].clone();
            for j in k + 1..n {
                let v = &a[i * n + j] * &piv - &lead * &a[k * n + j];
                a[i * n + j] = v / &prev;
            }
        }
        prev = piv;
    }
    let d = a.pop().unwrap();
    if negate {
        -d
    } else {
        d
    }
}

/// The section with every row multiplied by the common denominator of that
/// row. Row scales are positive, so minors keep their sign and only pick
/// up the product of the selected scales.
struct MinorEngine {
    n_cols: usize,
    scale: Vec<BigInt>,
    big: Vec<BigInt>,
    /// `big` narrowed to `i128` wherever it fits.
    small: Vec<Option<i128>>,
}

impl MinorEngine {
    fn new(m: &MatrixSection) -> Self {
        let nc = m.n_cols();
        let mut scale = Vec::with_capacity(m.n_rows());
        let mut big = Vec::with_capacity(m.n_rows() * nc);
        for i in 0..m.n_rows() {
            let l = rational::denom_lcm((0..nc).map(|j| m.get(i, j)));
            for j in 0..nc {
                let v = m.get(i, j);
                big.push(v.numer() * (&l / v.denom()));
            }
            scale.push(l);
        }
        let small = big.iter().map(|x| x.to_i128().filter(|v| v.abs() < 1 << 62)).collect();
        MinorEngine {
            n_cols: nc,
            scale,
            big,
            small,
        }
    }

    fn det_small(&self, rows: &[usize], cols: &[usize]) -> Option<i128> {
        let n = rows.len();
        let mut a = Vec::with_capacity(n * n);
        for &i in rows {
            for &j in cols {
                a.push(self.small[i * self.n_cols + j]?);
            }
        }
        bareiss_i128(a, n)
    }

    /// Determinant of the scaled minor.
    fn det_scaled(&self, rows: &[usize], cols: &[usize]) -> BigInt {
        if let Some(d) = self.det_small(rows, cols) {
            return d.into();
        }
        let n = rows.len();
        let mut a = Vec::with_capacity(n * n);
        for &i in rows {
            for &j in cols {
                a.push(self.big[i * self.n_cols + j].clone());
            }
        }
        bareiss_big(a, n)
    }

    fn is_negative(&self, rows: &[usize], cols: &[usize]) -> bool {
        match self.det_small(rows, cols) {
            Some(d) => d < 0,
            None => self.det_scaled(rows, cols).is_negative(),
        }
    }

    fn value(&self, rows: &[usize], cols: &[usize]) -> Rational {
        let s: BigInt = rows.iter().map(|&i| &self.scale[i]).product();
        Rational::new(self.det_scaled(rows, cols), s)
    }
}

/// Exact determinant of the submatrix on positional `rows × cols`.
pub fn det_exact(m: &MatrixSection, rows: &[usize], cols: &[usize]) -> Result<Rational> {
    if rows.is_empty() || rows.len() != cols.len() {
        return Err(Error::ShapeMismatch(format!(
            "{} rows and {} columns do not select a square minor",
            rows.len(),
            cols.len()
        )));
    }
    if let Some(&i) = rows.iter().find(|&&i| i >= m.n_rows()) {
        return Err(Error::ShapeMismatch(format!("row position {i} out of range")));
    }
    if let Some(&j) = cols.iter().find(|&&j| j >= m.n_cols()) {
        return Err(Error::ShapeMismatch(format!("column position {j} out of range")));
    }
    for &i in rows {
        for &j in cols {
            if !m.is_entry_trusted(i, j) {
                return Err(Error::UntrustedEntry {
                    row: m.row_labels()[i],
                    col: m.col_labels()[j],
                });
            }
        }
    }
    Ok(MinorEngine::new(m).value(rows, cols))
}

fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    (0..k as u64).fold(1u64, |acc, i| acc * (n as u64 - i) / (i + 1))
}

/// `Σ_{k=1}^{K} C(n,k)·C(m,k)`.
pub fn minor_count(n_rows: usize, n_cols: usize, max_order: usize) -> u64 {
    (1..=max_order.min(n_rows).min(n_cols))
        .map(|k| binomial(n_rows, k) * binomial(n_cols, k))
        .sum()
}

/// Checks all minors of order `1..=max_order`, skipping the ones that touch
/// truncation-affected entries.
pub fn check_tnn(m: &MatrixSection, max_order: usize) -> TnnReport {
    let (nr, nc) = (m.n_rows(), m.n_cols());
    let top = max_order.max(1).min(nr).min(nc);
    let engine = MinorEngine::new(m);

    // untrusted[i] has bit j set when entry (i, j) is truncation-affected
    assert!(nc <= 128, "sections wider than 128 columns are not supported");
    let untrusted: Vec<u128> = (0..nr)
        .map(|i| {
            (0..nc)
                .filter(|&j| !m.is_entry_trusted(i, j))
                .fold(0u128, |acc, j| acc | (1 << j))
        })
        .collect();
    let any_untrusted = untrusted.iter().any(|&u| u != 0);
    let col_mask = |cols: &[usize]| cols.iter().fold(0u128, |acc, &j| acc | (1 << j));
    let row_mask = |rows: &[usize]| rows.iter().fold(0u128, |acc, &i| acc | untrusted[i]);

    let mut found = None;
    for k in 1..=top {
        let row_sets: Vec<Vec<usize>> = (0..nr).combinations(k).collect();
        let col_sets: Vec<Vec<usize>> = (0..nc).combinations(k).collect();
        let hit = row_sets.par_iter().enumerate().find_map_first(|(ri, rows)| {
            let bad = row_mask(rows);
            col_sets.iter().enumerate().find_map(|(ci, cols)| {
                let skip = bad != 0 && bad & col_mask(cols) != 0;
                (!skip && engine.is_negative(rows, cols)).then_some((ri, ci))
            })
        });
        if let Some((ri, ci)) = hit {
            found = Some((k, row_sets[ri].clone(), col_sets[ci].clone(), ri, ci));
            break;
        }
    }

    // number of evaluated minors up to and including the witness
    let skipped_before = |stop: Option<(usize, usize, usize)>| -> u64 {
        if !any_untrusted {
            return 0;
        }
        let mut skipped = 0u64;
        for k in 1..=top {
            for (ri, rows) in (0..nr).combinations(k).enumerate() {
                let bad = row_mask(&rows);
                for (ci, cols) in (0..nc).combinations(k).enumerate() {
                    if stop == Some((k, ri, ci)) {
                        return skipped;
                    }
                    if bad & col_mask(&cols) != 0 {
                        skipped += 1;
                    }
                }
            }
        }
        skipped
    };

    match found {
        Some((k, rows, cols, ri, ci)) => {
            let before = minor_count(nr, nc, k - 1) + ri as u64 * binomial(nc, k) + ci as u64 + 1;
            TnnReport {
                status: TnnStatus::NegativeFound,
                max_order_checked: top,
                witness: Some(MinorWitness {
                    rows: rows.iter().map(|&i| m.row_labels()[i]).collect(),
                    cols: cols.iter().map(|&j| m.col_labels()[j]).collect(),
                    value: engine.value(&rows, &cols),
                }),
                minors_evaluated: before - skipped_before(Some((k, ri, ci))),
            }
        }
        None => {
            let skipped = skipped_before(None);
            TnnReport {
                status: if skipped > 0 {
                    TnnStatus::InconclusiveUntrusted
                } else {
                    TnnStatus::AllNonnegative
                },
                max_order_checked: top,
                witness: None,
                minors_evaluated: minor_count(nr, nc, top) - skipped,
            }
        }
    }
}

/// Budget for [`find_negative_minor`]: square sections of the given sizes,
/// rows `1..=size`, at several column anchors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SectionSchedule {
    pub sizes: Vec<usize>,
    pub max_order: usize,
    /// Column shifts tried around the anchor centred on `p`'s window.
    pub col_shifts: Vec<i64>,
}

impl Default for SectionSchedule {
    fn default() -> Self {
        SectionSchedule {
            sizes: vec![2, 4, 6, 8, 10, 12],
            max_order: 4,
            col_shifts: vec![0, -1, 1, -2, 2],
        }
    }
}

impl SectionSchedule {
    pub fn up_to(max_size: usize, max_order: usize) -> Self {
        SectionSchedule {
            sizes: (2..=max_size.max(2)).step_by(2).collect(),
            max_order,
            ..Default::default()
        }
    }
}

/// Column offset `c0` such that the square section on rows `1..=size` and
/// columns `c0+1..=c0+size` of `H(p, q)` is centred on exponents `lo..=hi`.
pub fn centred_anchor(lo: i64, hi: i64, size: usize) -> i64 {
    let s = size as i64;
    let mid = (lo + hi).div_euclid(2);
    mid + (s + 2).div_euclid(4) - (s + 1).div_euclid(2)
}

/// Column offsets `c0` (columns `c0+1..=c0+size`) probed for one size.
fn anchors(p: &LaurentWindow, size: usize, shifts: &[i64]) -> Vec<i64> {
    let centred = centred_anchor(p.lo(), p.hi(), size);
    let mut out = vec![0];
    for d in shifts {
        let c = centred + d;
        if !out.contains(&c) {
            out.push(c);
        }
    }
    out
}

/// First negative minor met along a growing schedule of `H(p, q)` sections.
/// `None` only means the budget ran out.
pub fn find_negative_minor(
    p: &LaurentWindow,
    q: &LaurentWindow,
    schedule: &SectionSchedule,
) -> Option<MinorWitness> {
    for &size in &schedule.sizes {
        let rows: Vec<i64> = (1..=size as i64).collect();
        for c0 in anchors(p, size, &schedule.col_shifts) {
            let cols: Vec<i64> = (c0 + 1..=c0 + size as i64).collect();
            let Ok(section) = hurwitz_section(p, q, &rows, &cols) else {
                continue;
            };
            let report = check_tnn(&section, schedule.max_order);
            if report.witness.is_some() {
                return report.witness;
            }
        }
    }
    None
}
