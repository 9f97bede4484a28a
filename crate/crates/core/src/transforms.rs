//! Constructive transforms on series pairs and sections, each paired with
//! an exact check of the identity it relies on.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::laurent::{geometric_left, geometric_right, window_mul, LaurentWindow};
use crate::matrices::{
    hurwitz_section, reversal_labels, selector_section, toeplitz_section, MatrixSection, Provenance,
};
use crate::rational::{self, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TransformName {
    RemovePoleRight,
    RemovePoleLeft,
    Whitney,
    Reversal,
    Shift,
    Combine,
}

/// Record of one applied transform. `identity_checked` is set only after
/// the defining identity was verified exactly on the data at hand.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TransformTrace {
    pub name: TransformName,
    #[serde(with = "rational::serde_str::opt")]
    pub parameter: Option<Rational>,
    pub inputs: Vec<LaurentWindow>,
    pub outputs: Vec<LaurentWindow>,
    pub identity_checked: bool,
}

fn positive(x: &Rational, what: &str) -> Result<()> {
    if *x <= Rational::zero() {
        return Err(Error::InvalidArgument(format!("{what} must be positive")));
    }
    Ok(())
}

/// `((1 − z/R)·p, (1 − z/R)·q)`; coefficients `a_n − a_{n−1}/R`.
pub fn remove_pole_right(
    p: &LaurentWindow,
    q: &LaurentWindow,
    big_r: &Rational,
) -> Result<(LaurentWindow, LaurentWindow)> {
    positive(big_r, "R")?;
    let f = LaurentWindow::polynomial(0, vec![Rational::one(), -big_r.recip()])?;
    Ok((window_mul(p, &f)?, window_mul(q, &f)?))
}

/// `((1 − r/z)·p, (1 − r/z)·q)`; coefficients `a_k − r·a_{k+1}`.
pub fn remove_pole_left(
    p: &LaurentWindow,
    q: &LaurentWindow,
    r: &Rational,
) -> Result<(LaurentWindow, LaurentWindow)> {
    positive(r, "r")?;
    let f = LaurentWindow::polynomial(-1, vec![-r.clone(), Rational::one()])?;
    Ok((window_mul(p, &f)?, window_mul(q, &f)?))
}

/// Column-subtraction step: `M` has ones in rows `1..=j` of its first
/// column and zeros below. The result drops that column and replaces rows
/// `2..=j` by consecutive differences; both matrices are TNN together.
pub fn whitney_reduce(m: &MatrixSection, j: usize) -> Result<MatrixSection> {
    let (nr, nc) = (m.n_rows(), m.n_cols());
    if j == 0 || j > nr || nc < 2 {
        return Err(Error::ShapeMismatch(format!(
            "need 1 <= j <= {nr} and at least two columns, got j = {j}, {nc} columns"
        )));
    }
    for i in 0..nr {
        let want = if i < j { Rational::one() } else { Rational::zero() };
        if *m.get(i, 0) != want {
            return Err(Error::ShapeMismatch(format!(
                "first column entry {} is {}, expected {}",
                i + 1,
                rational::format(m.get(i, 0)),
                rational::format(&want)
            )));
        }
    }
    let rows = (0..nr)
        .map(|i| {
            (1..nc)
                .map(|c| {
                    if i == 0 || i >= j {
                        (m.get(i, c).clone(), m.provenance(i, c), m.is_entry_trusted(i, c))
                    } else {
                        let v = m.get(i, c) - m.get(i - 1, c);
                        let t = m.is_entry_trusted(i, c) && m.is_entry_trusted(i - 1, c);
                        (v, Provenance::Derived, t)
                    }
                })
                .collect()
        })
        .collect();
    Ok(MatrixSection::from_parts(
        rows,
        m.row_labels().to_vec(),
        m.col_labels()[1..].to_vec(),
    ))
}

/// `(A·p + B·q, A·q + B·z·p)`, trimmed at exact ends.
pub fn combine(
    a: &Rational,
    b: &Rational,
    p: &LaurentWindow,
    q: &LaurentWindow,
) -> Result<(LaurentWindow, LaurentWindow)> {
    let first = p.scale(a).add(&q.scale(b))?;
    let second = q.scale(a).add(&p.shift_mul_z(1, b))?;
    Ok((first.trim(), second.trim()))
}

/// Both sides of `T(Ap+Bq) = Hᵀ(A,B)·H(p,q)` on `size × size` sections. The
/// Hurwitz rows are `1+offset..=2·size+offset`; only `offset = 0` is the
/// correct anchoring.
pub fn cauchy_binet_sides(
    a: &Rational,
    b: &Rational,
    p: &LaurentWindow,
    q: &LaurentWindow,
    size: usize,
    offset: i64,
) -> Result<(MatrixSection, MatrixSection)> {
    if size == 0 {
        return Err(Error::InvalidArgument("size must be positive".into()));
    }
    let n = size as i64;
    let idx: Vec<i64> = (1..=n).collect();
    let h_rows: Vec<i64> = (1 + offset..=2 * n + offset).collect();
    let (f, _) = combine(a, b, p, q)?;
    let lhs = toeplitz_section(&f, &idx, &idx)?;
    let sel = selector_section(a, b, size, 2 * size)?;
    let rhs = sel.matmul(&hurwitz_section(p, q, &h_rows, &idx)?)?;
    Ok((lhs, rhs))
}

fn cauchy_binet_with_offset(
    a: &Rational,
    b: &Rational,
    p: &LaurentWindow,
    q: &LaurentWindow,
    size: usize,
    offset: i64,
) -> Result<bool> {
    let (lhs, rhs) = cauchy_binet_sides(a, b, p, q, size, offset)?;
    if !lhs.same_entries(&rhs) {
        return Ok(false);
    }
    // companion identity: T(Aq + B·zp) = Hᵀ(A,B)·H(q, zp)
    let zp = p.shift_mul_z(1, &Rational::one());
    let (lhs, rhs) = cauchy_binet_sides(a, b, q, &zp, size, offset)?;
    Ok(lhs.same_entries(&rhs))
}

/// Exact check of both factorizations through the selector matrix.
pub fn cauchy_binet_check(
    a: &Rational,
    b: &Rational,
    p: &LaurentWindow,
    q: &LaurentWindow,
    size: usize,
) -> Result<bool> {
    cauchy_binet_with_offset(a, b, p, q, size, 0)
}

/// The same comparison with the Hurwitz rows shifted by `offset`
/// (a negative control when `offset != 0`).
pub fn cauchy_binet_check_misanchored(
    a: &Rational,
    b: &Rational,
    p: &LaurentWindow,
    q: &LaurentWindow,
    size: usize,
    offset: i64,
) -> Result<bool> {
    cauchy_binet_with_offset(a, b, p, q, size, offset)
}

/// `(q̌, p̌)` with `p̌(z) = p(1/z)`.
pub fn reversal(p: &LaurentWindow, q: &LaurentWindow) -> (LaurentWindow, LaurentWindow) {
    (q.reverse(), p.reverse())
}

/// `(q, z·p)`.
pub fn shift(p: &LaurentWindow, q: &LaurentWindow) -> (LaurentWindow, LaurentWindow) {
    (q.clone(), p.shift_mul_z(1, &Rational::one()))
}

/// Section of `H(q̌, p̌)` on `rows × cols` against the section of `H(p, q)`
/// on the mirrored labels, listed in the opposite order.
pub fn reversal_check(p: &LaurentWindow, q: &LaurentWindow, rows: &[i64], cols: &[i64]) -> Result<bool> {
    let (pr, qr) = reversal(p, q);
    let lhs = hurwitz_section(&pr, &qr, rows, cols)?;
    let (r2, c2) = reversal_labels(rows, cols);
    let rhs = hurwitz_section(p, q, &r2, &c2)?.reverse_both();
    Ok(lhs.same_entries(&rhs))
}

/// Rows of `H(q, zp)` are the rows of `H(p, q)` moved up by one.
pub fn shift_check(p: &LaurentWindow, q: &LaurentWindow, rows: &[i64], cols: &[i64]) -> Result<bool> {
    let (ps, qs) = shift(p, q);
    let lhs = hurwitz_section(&ps, &qs, rows, cols)?;
    let moved: Vec<i64> = rows.iter().map(|r| r + 1).collect();
    let rhs = hurwitz_section(p, q, &moved, cols)?;
    Ok(lhs.same_entries(&rhs))
}

/// True when `product` and `original` agree wherever both are known and
/// trusted, and they share at least one such coefficient.
fn agrees(product: &LaurentWindow, original: &LaurentWindow) -> bool {
    let lo = product.lo().max(original.lo());
    let hi = product.hi().min(original.hi());
    let mut compared = 0;
    for n in lo..=hi {
        if product.is_trusted(n) && original.is_trusted(n) {
            if product.coeff(n) != original.coeff(n) {
                return false;
            }
            compared += 1;
        }
    }
    compared > 0
}

fn multiply_back(w: &LaurentWindow, geo: &LaurentWindow, original: &LaurentWindow) -> bool {
    window_mul(w, geo).is_ok_and(|back| agrees(&back, original))
}

/// Removes the listed common poles one at a time, verifying each step by
/// multiplying back with the matching geometric series.
pub fn strip_common_poles(
    p: &LaurentWindow,
    q: &LaurentWindow,
    right_poles: &[Rational],
    left_poles: &[Rational],
) -> Result<(LaurentWindow, LaurentWindow, Vec<TransformTrace>)> {
    let (mut p, mut q) = (p.clone(), q.clone());
    let mut traces = Vec::new();
    for big_r in right_poles {
        let (p1, q1) = remove_pole_right(&p, &q, big_r)?;
        let terms = (p.hi() - p.lo()).max(q.hi() - q.lo()) + 2;
        let geo = geometric_right(big_r, terms);
        let ok = multiply_back(&p1, &geo, &p) && multiply_back(&q1, &geo, &q);
        traces.push(TransformTrace {
            name: TransformName::RemovePoleRight,
            parameter: Some(big_r.clone()),
            inputs: vec![p, q],
            outputs: vec![p1.clone(), q1.clone()],
            identity_checked: ok,
        });
        (p, q) = (p1, q1);
    }
    for r in left_poles {
        let (p2, q2) = remove_pole_left(&p, &q, r)?;
        let terms = (p.hi() - p.lo()).max(q.hi() - q.lo()) + 2;
        // (1 − r/z)⁻¹ = Σ (r/z)^n is the left geometric series with δ = 1/r
        let geo = geometric_left(&r.recip(), terms);
        let ok = multiply_back(&p2, &geo, &p) && multiply_back(&q2, &geo, &q);
        traces.push(TransformTrace {
            name: TransformName::RemovePoleLeft,
            parameter: Some(r.clone()),
            inputs: vec![p, q],
            outputs: vec![p2.clone(), q2.clone()],
            identity_checked: ok,
        });
        (p, q) = (p2, q2);
    }
    Ok((p, q, traces))
}
