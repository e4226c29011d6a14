use logpade::series_kernel::{determinant, nullspace, rank, solve, Polynomial, RationalMatrix, Series};
use proptest::prelude::*;
use rug::Rational;

fn small_rational() -> impl Strategy<Value = Rational> {
    (-20i64..=20, 1i64..=6).prop_map(|(n, d)| Rational::from((n, d)))
}

fn series(t: usize) -> impl Strategy<Value = Series> {
    prop::collection::vec(small_rational(), t + 1).prop_map(move |c| Series::from_coeffs(c, t))
}

fn poly() -> impl Strategy<Value = Polynomial> {
    prop::collection::vec(small_rational(), 0..6).prop_map(Polynomial::from_coeffs)
}

fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = RationalMatrix> {
    prop::collection::vec(prop::collection::vec((-3i64..=3).prop_map(Rational::from), cols), rows)
        .prop_map(RationalMatrix::from_rows)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn cauchy_product_commutes(a in series(6), b in series(6)) {
        prop_assert_eq!(a.mul(&b), b.mul(&a));
    }

    #[test]
    fn cauchy_product_associates(a in series(5), b in series(5), c in series(5)) {
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
    }

    #[test]
    fn cauchy_product_distributes(a in series(5), b in series(5), c in series(5)) {
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
    }

    #[test]
    fn truncated_product_matches_polynomial_product(p in poly(), q in poly()) {
        let t = 12;
        let lhs = Series::from_polynomial(&p, t).mul(&Series::from_polynomial(&q, t));
        prop_assert_eq!(lhs, Series::from_polynomial(&(&p * &q), t));
    }

    #[test]
    fn division_reconstructs(p in poly(), q in poly()) {
        prop_assume!(!q.is_zero());
        let (quot, rem) = p.div_rem(&q);
        prop_assert_eq!(&(&quot * &q) + &rem, p);
        prop_assert!(rem.is_zero() || rem.degree() < q.degree());
    }

    #[test]
    fn rationals_stay_reduced(a in small_rational(), b in small_rational()) {
        let s = Rational::from(&a + &b);
        let g = s.numer().clone().gcd(s.denom());
        prop_assert_eq!(g, 1);
        prop_assert!(*s.denom() > 0);
    }

    #[test]
    fn nullspace_basis_is_in_kernel_and_complete(m in matrix(3, 5)) {
        let basis = nullspace(&m);
        prop_assert_eq!(basis.len() + rank(&m), m.cols());
        for v in &basis {
            prop_assert!(m.mul_vec(v).iter().all(|x| *x == 0));
            // normalized: first nonzero coordinate is 1
            prop_assert_eq!(v.iter().find(|x| **x != 0).cloned(), Some(Rational::from(1)));
        }
    }

    #[test]
    fn solve_inverts_regular_systems(m in matrix(3, 3), x in prop::collection::vec(small_rational(), 3)) {
        prop_assume!(determinant(&m) != 0);
        let b = m.mul_vec(&x);
        prop_assert_eq!(solve(&m, &b), Some(x));
    }
}

#[test]
fn determinant_of_known_matrix() {
    // oracle: cofactor expansion by hand
    let m = RationalMatrix::from_ints(&[&[2, 0, 1], &[1, 3, 2], &[1, 1, 1]]);
    // 2(3-2) - 0 + 1(1-3) = 0
    assert_eq!(determinant(&m), 0);
    let m = RationalMatrix::from_ints(&[&[0, 1], &[1, 0]]);
    assert_eq!(determinant(&m), -1);
}
