//! Finite sections of the Toeplitz matrix `T(f)`, the Hurwitz-type matrix
//! `H(p, q)` and the selector matrix used to factor `T(Ap + Bq)`.
//!
//! Labels follow the usual display convention: the top-left entry of every
//! infinite array is `(1, 1)`, and row 1 of `H(p, q)` is the `a_0, a_1, …`
//! row. Odd rows `2i − 1` carry `a_{j−i}` and even rows `2i` carry `b_{j−i}`.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::laurent::LaurentWindow;
use crate::rational::{self, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SeriesId {
    F,
    P,
    Q,
}

/// Where a matrix entry came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Provenance {
    Coeff { series: SeriesId, exponent: i64 },
    Constant,
    Derived,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatrixSection {
    n_rows: usize,
    n_cols: usize,
    entries: Vec<Rational>,
    row_labels: Vec<i64>,
    col_labels: Vec<i64>,
    provenance: Vec<Provenance>,
    entry_trusted: Vec<bool>,
}

#[derive(Serialize, Deserialize)]
struct SectionJson {
    rows: Vec<i64>,
    cols: Vec<i64>,
    #[serde(with = "rational::serde_str::matrix")]
    entries: Vec<Vec<Rational>>,
}

impl Serialize for MatrixSection {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        SectionJson {
            rows: self.row_labels.clone(),
            cols: self.col_labels.clone(),
            entries: self.to_rows(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for MatrixSection {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = SectionJson::deserialize(d)?;
        let mut m = MatrixSection::from_rows(j.entries).map_err(serde::de::Error::custom)?;
        m.relabel(j.rows, j.cols).map_err(serde::de::Error::custom)?;
        Ok(m)
    }
}

fn labels(n: usize) -> Vec<i64> {
    (1..=n as i64).collect()
}

impl MatrixSection {
    /// Dense section from rows, labelled `1..=n`, every entry trusted.
    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let n_rows = rows.len();
        let n_cols = rows.first().map_or(0, Vec::len);
        if n_rows == 0 || n_cols == 0 {
            return Err(Error::ShapeMismatch("empty matrix".into()));
        }
        if rows.iter().any(|r| r.len() != n_cols) {
            return Err(Error::ShapeMismatch("ragged rows".into()));
        }
        let entries: Vec<Rational> = rows.into_iter().flatten().collect();
        Ok(MatrixSection {
            n_rows,
            n_cols,
            provenance: vec![Provenance::Derived; entries.len()],
            entry_trusted: vec![true; entries.len()],
            entries,
            row_labels: labels(n_rows),
            col_labels: labels(n_cols),
        })
    }

    pub(crate) fn from_parts(
        entries: Vec<Vec<(Rational, Provenance, bool)>>,
        row_labels: Vec<i64>,
        col_labels: Vec<i64>,
    ) -> Self {
        let n_rows = entries.len();
        let n_cols = col_labels.len();
        debug_assert_eq!(row_labels.len(), n_rows);
        let mut m = MatrixSection {
            n_rows,
            n_cols,
            entries: Vec::with_capacity(n_rows * n_cols),
            row_labels,
            col_labels,
            provenance: Vec::with_capacity(n_rows * n_cols),
            entry_trusted: Vec::with_capacity(n_rows * n_cols),
        };
        for (v, p, t) in entries.into_iter().flatten() {
            m.entries.push(v);
            m.provenance.push(p);
            m.entry_trusted.push(t);
        }
        m
    }

    pub fn from_ints(rows: &[&[i64]]) -> Result<Self> {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&x| rational::int(x)).collect()).collect())
    }

    pub fn relabel(&mut self, rows: Vec<i64>, cols: Vec<i64>) -> Result<()> {
        if rows.len() != self.n_rows || cols.len() != self.n_cols {
            return Err(Error::ShapeMismatch(format!(
                "{} row and {} column labels for a {}x{} matrix",
                rows.len(),
                cols.len(),
                self.n_rows,
                self.n_cols
            )));
        }
        self.row_labels = rows;
        self.col_labels = cols;
        Ok(())
    }

    pub fn n_rows(&self) -> usize {
        self.n_rows
    }

    pub fn n_cols(&self) -> usize {
        self.n_cols
    }

    pub fn row_labels(&self) -> &[i64] {
        &self.row_labels
    }

    pub fn col_labels(&self) -> &[i64] {
        &self.col_labels
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.entries[i * self.n_cols + j]
    }

    pub fn provenance(&self, i: usize, j: usize) -> Provenance {
        self.provenance[i * self.n_cols + j]
    }

    pub fn is_entry_trusted(&self, i: usize, j: usize) -> bool {
        self.entry_trusted[i * self.n_cols + j]
    }

    pub fn row_trusted(&self, i: usize) -> bool {
        (0..self.n_cols).all(|j| self.is_entry_trusted(i, j))
    }

    pub fn col_trusted(&self, j: usize) -> bool {
        (0..self.n_rows).all(|i| self.is_entry_trusted(i, j))
    }

    pub fn is_fully_trusted(&self) -> bool {
        self.entry_trusted.iter().all(|&t| t)
    }

    pub fn to_rows(&self) -> Vec<Vec<Rational>> {
        self.entries.chunks(self.n_cols).map(<[Rational]>::to_vec).collect()
    }

    /// Positional submatrix; labels, provenance and trust are carried over.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> MatrixSection {
        let mut entries = Vec::with_capacity(rows.len() * cols.len());
        let mut provenance = Vec::with_capacity(entries.capacity());
        let mut trusted = Vec::with_capacity(entries.capacity());
        for &i in rows {
            for &j in cols {
                entries.push(self.get(i, j).clone());
                provenance.push(self.provenance(i, j));
                trusted.push(self.is_entry_trusted(i, j));
            }
        }
        MatrixSection {
            n_rows: rows.len(),
            n_cols: cols.len(),
            entries,
            row_labels: rows.iter().map(|&i| self.row_labels[i]).collect(),
            col_labels: cols.iter().map(|&j| self.col_labels[j]).collect(),
            provenance,
            entry_trusted: trusted,
        }
    }

    pub fn transpose(&self) -> MatrixSection {
        let mut entries = Vec::with_capacity(self.entries.len());
        let mut provenance = Vec::with_capacity(self.entries.len());
        let mut trusted = Vec::with_capacity(self.entries.len());
        for j in 0..self.n_cols {
            for i in 0..self.n_rows {
                entries.push(self.get(i, j).clone());
                provenance.push(self.provenance(i, j));
                trusted.push(self.is_entry_trusted(i, j));
            }
        }
        MatrixSection {
            n_rows: self.n_cols,
            n_cols: self.n_rows,
            entries,
            row_labels: self.col_labels.clone(),
            col_labels: self.row_labels.clone(),
            provenance,
            entry_trusted: trusted,
        }
    }

    /// Rows and columns both listed in the opposite order.
    pub fn reverse_both(&self) -> MatrixSection {
        let rows: Vec<usize> = (0..self.n_rows).rev().collect();
        let cols: Vec<usize> = (0..self.n_cols).rev().collect();
        self.submatrix(&rows, &cols)
    }

    /// Exact product. The result is labelled by `self`'s rows and `other`'s
    /// columns; an entry is trusted when every factor it used is.
    pub fn matmul(&self, other: &MatrixSection) -> Result<MatrixSection> {
        if self.n_cols != other.n_rows {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} times {}x{}",
                self.n_rows, self.n_cols, other.n_rows, other.n_cols
            )));
        }
        let mut entries = Vec::with_capacity(self.n_rows * other.n_cols);
        let mut trusted = Vec::with_capacity(entries.capacity());
        for i in 0..self.n_rows {
            for j in 0..other.n_cols {
                let mut acc = Rational::zero();
                let mut ok = true;
                for k in 0..self.n_cols {
                    let (x, y) = (self.get(i, k), other.get(k, j));
                    let (tx, ty) = (self.is_entry_trusted(i, k), other.is_entry_trusted(k, j));
                    if !((tx || (ty && y.is_zero())) && (ty || (tx && x.is_zero()))) {
                        ok = false;
                    }
                    if !x.is_zero() && !y.is_zero() {
                        acc += x * y;
                    }
                }
                entries.push(acc);
                trusted.push(ok);
            }
        }
        Ok(MatrixSection {
            n_rows: self.n_rows,
            n_cols: other.n_cols,
            provenance: vec![Provenance::Derived; entries.len()],
            entries,
            row_labels: self.row_labels.clone(),
            col_labels: other.col_labels.clone(),
            entry_trusted: trusted,
        })
    }

    /// Multiplies column `j` by `factors[j]`.
    pub fn scale_cols(&self, factors: &[Rational]) -> Result<MatrixSection> {
        if factors.len() != self.n_cols {
            return Err(Error::ShapeMismatch("one factor per column expected".into()));
        }
        let mut m = self.clone();
        for i in 0..m.n_rows {
            for (j, f) in factors.iter().enumerate() {
                m.entries[i * m.n_cols + j] *= f;
                if !f.is_one() {
                    m.provenance[i * m.n_cols + j] = Provenance::Derived;
                }
            }
        }
        Ok(m)
    }

    /// Exact equality of entries, ignoring labels and metadata.
    pub fn same_entries(&self, other: &MatrixSection) -> bool {
        self.n_rows == other.n_rows && self.n_cols == other.n_cols && self.entries == other.entries
    }
}

fn read(w: &LaurentWindow, series: SeriesId, n: i64) -> Result<(Rational, bool)> {
    let name = match series {
        SeriesId::F => "f",
        SeriesId::P => "p",
        SeriesId::Q => "q",
    };
    let c = w.coeff(n).ok_or_else(|| Error::OutOfWindow {
        series: name.into(),
        exponent: n,
    })?;
    Ok((c, w.is_trusted(n)))
}

fn build(
    rows: &[i64],
    cols: &[i64],
    mut entry: impl FnMut(i64, i64) -> Result<(Rational, bool, Provenance)>,
) -> Result<MatrixSection> {
    if rows.is_empty() || cols.is_empty() {
        return Err(Error::ShapeMismatch("empty index list".into()));
    }
    let mut entries = Vec::with_capacity(rows.len() * cols.len());
    let mut trusted = Vec::with_capacity(entries.capacity());
    let mut provenance = Vec::with_capacity(entries.capacity());
    for &r in rows {
        for &c in cols {
            let (v, t, p) = entry(r, c)?;
            entries.push(v);
            trusted.push(t);
            provenance.push(p);
        }
    }
    Ok(MatrixSection {
        n_rows: rows.len(),
        n_cols: cols.len(),
        entries,
        row_labels: rows.to_vec(),
        col_labels: cols.to_vec(),
        provenance,
        entry_trusted: trusted,
    })
}

/// Section of `T(f)` with entry `(i, j) = f_{j−i}`.
pub fn toeplitz_section(f: &LaurentWindow, rows: &[i64], cols: &[i64]) -> Result<MatrixSection> {
    build(rows, cols, |i, j| {
        let (v, t) = read(f, SeriesId::F, j - i)?;
        let series = SeriesId::F;
        Ok((v, t, Provenance::Coeff { series, exponent: j - i }))
    })
}

/// Series and exponent read by entry `(row, col)` of `H(p, q)`.
pub fn hurwitz_source(row: i64, col: i64) -> (SeriesId, i64) {
    let i = (row + 1).div_euclid(2);
    let series = if row.rem_euclid(2) == 1 {
        SeriesId::P
    } else {
        SeriesId::Q
    };
    (series, col - i)
}

/// Section of `H(p, q)`.
pub fn hurwitz_section(
    p: &LaurentWindow,
    q: &LaurentWindow,
    rows: &[i64],
    cols: &[i64],
) -> Result<MatrixSection> {
    build(rows, cols, |r, c| {
        let (series, exponent) = hurwitz_source(r, c);
        let w = if series == SeriesId::P { p } else { q };
        let (v, t) = read(w, series, exponent)?;
        Ok((v, t, Provenance::Coeff { series, exponent }))
    })
}

/// `n_rows × n_cols` section of the selector with `h_{i,2i−1} = A`,
/// `h_{i,2i} = B`.
pub fn selector_section(a: &Rational, b: &Rational, n_rows: usize, n_cols: usize) -> Result<MatrixSection> {
    let rows = labels(n_rows);
    let cols = labels(n_cols);
    build(&rows, &cols, |i, j| {
        let v = if j == 2 * i - 1 {
            a.clone()
        } else if j == 2 * i {
            b.clone()
        } else {
            Rational::zero()
        };
        Ok((v, true, Provenance::Constant))
    })
}

/// Labels of `H(p, q)` carrying the entries of `H(q̌, p̌)` on `rows × cols`:
/// entry `(R, C)` of the latter equals entry `(−1 − R, −C)` of the former.
/// Both returned lists are increasing, i.e. listed in the opposite order.
pub fn reversal_labels(rows: &[i64], cols: &[i64]) -> (Vec<i64>, Vec<i64>) {
    let r = rows.iter().rev().map(|&x| -1 - x).collect();
    let c = cols.iter().rev().map(|&x| -x).collect();
    (r, c)
}
