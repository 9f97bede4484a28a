#![allow(dead_code)]

use hurwitz_tnn::laurent::{EdreiSpec, LaurentWindow};
use hurwitz_tnn::rational::{frac, int};
use hurwitz_tnn::Rational;
use proptest::prelude::*;

pub fn rational() -> impl Strategy<Value = Rational> {
    (-12i64..=12, 1i64..=6).prop_map(|(n, d)| frac(n, d))
}

pub fn positive() -> impl Strategy<Value = Rational> {
    (1i64..=24, 1i64..=4).prop_map(|(n, d)| frac(n, d))
}

/// Laurent polynomial with arbitrary rational coefficients.
pub fn poly_window() -> impl Strategy<Value = LaurentWindow> {
    (-3i64..=2, prop::collection::vec(rational(), 1..6))
        .prop_map(|(lo, c)| LaurentWindow::polynomial(lo, c).unwrap())
}

/// Window of the given exponent range with random flags.
pub fn any_window(lo: i64, hi: i64) -> impl Strategy<Value = LaurentWindow> {
    (
        prop::collection::vec(rational(), (hi - lo + 1) as usize),
        any::<bool>(),
        any::<bool>(),
    )
        .prop_map(move |(c, l, r)| LaurentWindow::new(lo, c, l, r).unwrap())
}

/// Spec with only positive-side zeros: a polynomial with negative roots.
pub fn zeros_spec() -> impl Strategy<Value = EdreiSpec> {
    prop::collection::vec(positive(), 0..4).prop_map(EdreiSpec::with_zeros_pos)
}

/// Valid spec with zeros on both sides, a power of z and at most one
/// infinite tail.
pub fn one_tail_spec() -> impl Strategy<Value = EdreiSpec> {
    (
        prop::collection::vec(positive(), 0..3),
        prop::collection::vec(positive(), 0..3),
        prop::collection::vec(positive(), 0..2),
        0u8..3,
        -1i64..=1,
        positive(),
    )
        .prop_map(|(zp, zn, poles, a, j, c)| {
            let right = a != 0 || !poles.is_empty();
            EdreiSpec {
                c,
                j,
                a: if a == 2 { frac(1, 2) } else { int(0) },
                a0: if a == 1 && !right { frac(1, 3) } else { int(0) },
                zeros_pos: zp,
                zeros_neg: zn,
                poles_pos: if a == 1 { Vec::new() } else { poles.clone() },
                poles_neg: if a == 1 { poles } else { Vec::new() },
            }
        })
}

pub fn matrix(n: usize, m: usize) -> impl Strategy<Value = Vec<Vec<Rational>>> {
    prop::collection::vec(prop::collection::vec(rational(), m), n)
}

/// Cofactor expansion along the first row.
pub fn cofactor_det(m: &[Vec<Rational>]) -> Rational {
    let n = m.len();
    if n == 1 {
        return m[0][0].clone();
    }
    let mut acc = int(0);
    for j in 0..n {
        let minor: Vec<Vec<Rational>> = m[1..]
            .iter()
            .map(|row| row.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, x)| x.clone()).collect())
            .collect();
        let term = &m[0][j] * cofactor_det(&minor);
        if j % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    acc
}

pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let mut num = 1u64;
    let mut den = 1u64;
    for i in 0..k {
        num *= n - i;
        den *= i + 1;
    }
    num / den
}
