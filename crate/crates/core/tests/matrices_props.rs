mod common;

use common::*;
use hurwitz_tnn::matrices::{hurwitz_section, reversal_labels, toeplitz_section};
use hurwitz_tnn::transforms::{reversal, shift};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn toeplitz_constant_on_diagonals(f in poly_window(), r0 in -2i64..3, c0 in -2i64..3) {
        let rows: Vec<i64> = (r0..r0 + 5).collect();
        let cols: Vec<i64> = (c0..c0 + 5).collect();
        let m = toeplitz_section(&f, &rows, &cols).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                prop_assert_eq!(m.get(i, j), m.get(i + 1, j + 1));
            }
        }
    }

    #[test]
    fn toeplitz_of_p_inside_hurwitz(p in poly_window(), q in poly_window(), c0 in -3i64..3) {
        // odd rows 2i−1 of H(p, q) are row i of T(p)
        let cols: Vec<i64> = (c0..c0 + 6).collect();
        let h_rows: Vec<i64> = (1..=5).map(|i| 2 * i - 1).collect();
        let t_rows: Vec<i64> = (1..=5).collect();
        let h = hurwitz_section(&p, &q, &h_rows, &cols).unwrap();
        let t = toeplitz_section(&p, &t_rows, &cols).unwrap();
        prop_assert!(h.same_entries(&t));
    }

    #[test]
    fn reversal_duality(p in poly_window(), q in poly_window(), r0 in -4i64..4, c0 in -4i64..4) {
        let rows: Vec<i64> = (r0..r0 + 4).collect();
        let cols: Vec<i64> = (c0..c0 + 5).collect();
        let (pr, qr) = reversal(&p, &q);
        let lhs = hurwitz_section(&pr, &qr, &rows, &cols).unwrap();
        let (r2, c2) = reversal_labels(&rows, &cols);
        let rhs = hurwitz_section(&p, &q, &r2, &c2).unwrap().reverse_both();
        prop_assert!(lhs.same_entries(&rhs));
    }

    #[test]
    fn shift_duality(p in poly_window(), q in poly_window(), r0 in -4i64..4, c0 in -4i64..4) {
        let rows: Vec<i64> = (r0..r0 + 4).collect();
        let cols: Vec<i64> = (c0..c0 + 5).collect();
        let (ps, qs) = shift(&p, &q);
        let lhs = hurwitz_section(&ps, &qs, &rows, &cols).unwrap();
        let moved: Vec<i64> = rows.iter().map(|r| r + 1).collect();
        let rhs = hurwitz_section(&p, &q, &moved, &cols).unwrap();
        prop_assert!(lhs.same_entries(&rhs));
    }
}
