//! Exact linear algebra against an independent fraction-free route.

use homcoh_core::exact::{
    format_rational, frac, in_span, nullspace_basis, parse_rational, rank_of, rat, rref, solve, Matrix,
};
use homcoh_core::Rational;
use num::{BigInt, Zero};
use proptest::prelude::*;

/// Bareiss elimination over the integers; shares no code with `rref`.
fn bareiss_rank(rows: &[Vec<i64>]) -> usize {
    let mut m: Vec<Vec<BigInt>> = rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
    let (nr, nc) = (m.len(), m.first().map_or(0, Vec::len));
    let mut prev = BigInt::from(1);
    let mut rank = 0;
    for c in 0..nc {
        if rank == nr {
            break;
        }
        let Some(p) = (rank..nr).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(rank, p);
        for i in rank + 1..nr {
            for j in c + 1..nc {
                let v = &m[rank][c] * &m[i][j] - &m[i][c] * &m[rank][j];
                m[i][j] = v / &prev;
            }
            m[i][c] = BigInt::zero();
        }
        prev = m[rank][c].clone();
        rank += 1;
    }
    rank
}

fn to_matrix(rows: &[Vec<i64>]) -> Matrix {
    Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| rat(x)).collect()).collect()).unwrap()
}

fn int_matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..6, 1usize..7).prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-3i64..=3, c), r))
}

proptest! {
    #[test]
    fn rank_agrees_with_bareiss(rows in int_matrix()) {
        prop_assert_eq!(rref(&to_matrix(&rows)).rank, bareiss_rank(&rows));
    }

    #[test]
    fn nullspace_is_kernel_of_right_size(rows in int_matrix()) {
        let m = to_matrix(&rows);
        let ker = nullspace_basis(&m);
        prop_assert_eq!(ker.len() + bareiss_rank(&rows), m.ncols());
        for v in &ker {
            prop_assert!(m.mul_vec(v).iter().all(Zero::is_zero));
        }
        prop_assert_eq!(rank_of(&ker), ker.len());
    }

    #[test]
    fn solve_finds_solution_exactly_when_consistent(rows in int_matrix(), seed in prop::collection::vec(-2i64..=2, 7)) {
        let m = to_matrix(&rows);
        let x0: Vec<Rational> = seed[..m.ncols()].iter().map(|&v| rat(v)).collect();
        let b = m.mul_vec(&x0);
        let x = solve(&m, &b).unwrap().expect("b is in the image");
        prop_assert_eq!(m.mul_vec(&x), b);
        // a column outside the span of the columns has no solution
        let cols: Vec<Vec<Rational>> = (0..m.ncols()).map(|j| m.column(j)).collect();
        let e0: Vec<Rational> = (0..m.nrows()).map(|i| rat(i64::from(i == 0))).collect();
        prop_assert_eq!(solve(&m, &e0).unwrap().is_some(), in_span(&cols, &e0).is_some());
    }

    #[test]
    fn inverse_round_trips(rows in prop::collection::vec(prop::collection::vec(-3i64..=3, 3), 3)) {
        let m = to_matrix(&rows);
        match m.inverse() {
            Some(inv) => prop_assert_eq!(m.mul(&inv).unwrap(), Matrix::identity(3)),
            None => prop_assert!(bareiss_rank(&rows) < 3),
        }
    }

    #[test]
    fn rational_text_round_trips(p in -1000i64..1000, q in 1i64..1000) {
        let r = frac(p, q);
        prop_assert_eq!(parse_rational(&format_rational(&r)).unwrap(), r);
    }

    #[test]
    fn field_axioms_on_small_rationals(a in -20i64..20, b in 1i64..20, c in -20i64..20, d in 1i64..20) {
        let (x, y) = (frac(a, b), frac(c, d));
        prop_assert_eq!(&x + &y - &y, x.clone());
        prop_assert_eq!(&x * &y, frac(a * c, b * d));
        if !y.is_zero() {
            prop_assert_eq!(&x / &y * &y, x);
        }
    }
}

#[test]
fn malformed_rationals_are_rejected() {
    for s in ["", "1/0", "1/-2", " 1", "1.5", "--1", "1/", "/2", "a"] {
        assert!(parse_rational(s).is_err(), "{s:?} accepted");
    }
    assert_eq!(parse_rational("-6/4").unwrap(), frac(-3, 2));
}
