use logpade::measure_bounds::{integrality_scaler, table_scaler};
use logpade::pade_construct::{
    build_system, degree_check, determinant, normality_check, partial_fractions, q_polynomial, ConstructionParams,
};
use logpade::series_kernel::{
    log_power_series, log_power_table, pade_from_kernel, proportionality, Polynomial, Series,
};
use rug::ops::Pow;
use rug::{Integer, Rational};

fn q(n: i64, d: i64) -> Rational {
    Rational::from((n, d))
}

/// Taylor coefficients of `1/P(u)` up to `u^order`, by the schoolbook
/// recurrence `c_k = −(Σ_{t≥1} p_t c_{k−t}) / p_0`.
fn inverse_taylor(p: &Polynomial, order: usize) -> Vec<Rational> {
    let p0 = p.coeff(0);
    let mut c: Vec<Rational> = Vec::with_capacity(order + 1);
    for k in 0..=order {
        let mut acc = if k == 0 { Rational::from(1) } else { Rational::new() };
        for t in 1..=k {
            acc -= Rational::from(&p.coeff(t) * &c[k - t]);
        }
        c.push(acc / &p0);
    }
    c
}

/// Partial-fraction coefficients from the local Taylor expansion of
/// `(x−h)^{mult}/Q(x)` at each pole, independent of the library's solvers.
fn residue_oracle(m: usize, n: usize, i: usize) -> Vec<Vec<Rational>> {
    let mult = |h: usize| if h <= n { m } else { i };
    (0..=n + 1)
        .map(|h| {
            let others = (0..=n + 1).filter(|&g| g != h).fold(Polynomial::constant(1), |acc, g| {
                let shift = Rational::from(h as i64 - g as i64);
                &acc * &Polynomial::shifted_power(&shift, mult(g) as u32)
            });
            let mh = mult(h);
            let c = inverse_taylor(&others, mh - 1);
            (1..=m)
                .map(|j| if j <= mh { c[mh - j].clone() } else { Rational::new() })
                .collect()
        })
        .collect()
}

#[test]
fn partial_fractions_match_residue_oracle() {
    for m in 2..=3 {
        for n in 0..=4 {
            let params = ConstructionParams::new(m, n).unwrap();
            for i in 1..=m {
                let table = partial_fractions(&params, i).unwrap();
                assert_eq!(table.rows(), residue_oracle(m, n, i).as_slice(), "m={m} n={n} i={i}");
            }
        }
    }
}

#[test]
fn smallest_tables_by_hand() {
    let params = ConstructionParams::new(2, 0).unwrap();
    let t1 = partial_fractions(&params, 1).unwrap();
    assert_eq!(
        (t1.get(0, 1), t1.get(0, 2), t1.get(1, 1)),
        (&q(-1, 1), &q(-1, 1), &q(1, 1))
    );
    let t2 = partial_fractions(&params, 2).unwrap();
    assert_eq!(
        [t2.get(0, 1), t2.get(0, 2), t2.get(1, 1), t2.get(1, 2)],
        [&q(2, 1), &q(1, 1), &q(-2, 1), &q(1, 1)]
    );
    assert_eq!(q_polynomial(&params, 1), Polynomial::from_ints(&[0, 0, -1, 1]));
}

#[test]
fn remainders_have_exact_order_and_leading_term() {
    for m in 2..=3 {
        for n in 0..=5 {
            let params = ConstructionParams::new(m, n).unwrap();
            let sys = build_system(params).unwrap();
            for c in sys.order_checks() {
                assert!(c.order_ok() && c.leading_ok(), "m={m} n={n} i={}", c.family);
            }
            assert!(degree_check(&sys));
        }
    }
}

#[test]
fn smallest_system_remainders() {
    let sys = build_system(ConstructionParams::new(2, 0).unwrap()).unwrap();
    assert_eq!(
        sys.family(1),
        &[Polynomial::from_ints(&[0, 1]), Polynomial::from_ints(&[-1])]
    );
    assert_eq!(
        sys.family(2),
        &[Polynomial::from_ints(&[0, -2]), Polynomial::from_ints(&[2, 1])]
    );
    // z − log(1+z) = z²/2 − z³/3 + …
    let r1 = sys.remainder(1);
    assert_eq!((r1.coeff(2), r1.coeff(3)), (&q(1, 2), &q(-1, 3)));
    assert_eq!(sys.remainder(2).coeff(3), &q(1, 6));
    assert_eq!(sys.remainder(2).order(), Some(3));
}

#[test]
fn determinant_is_a_monomial_of_the_expected_degree() {
    for m in 2..=3 {
        for n in 0..=5 {
            let sys = build_system(ConstructionParams::new(m, n).unwrap()).unwrap();
            let (gamma, k) = determinant(&sys).unwrap();
            assert_ne!(gamma, 0);
            assert_eq!(k, (n + 1) * m);
        }
    }
    let sys = build_system(ConstructionParams::new(2, 0).unwrap()).unwrap();
    assert_eq!(determinant(&sys).unwrap(), (q(1, 1), 2));
}

#[test]
fn scaled_tables_and_values_are_integral() {
    for m in 2..=4 {
        for n in 0..=4 {
            let params = ConstructionParams::new(m, n).unwrap();
            let sys = build_system(params).unwrap();
            let scaler = Rational::from(table_scaler(m, n));
            for i in 1..=m {
                for (_, _, a) in sys.table(i).iter() {
                    assert_eq!(*Rational::from(&scaler * a).denom(), 1);
                }
                for alpha in [q(1, 10), q(-1, 10), q(3, 7)] {
                    let d = alpha.denom().clone();
                    let s = Rational::from(integrality_scaler(m, n) * d.pow(n as u32 + 1));
                    for poly in sys.family(i) {
                        assert_eq!(*Rational::from(&s * &poly.eval(&alpha)).denom(), 1);
                    }
                }
            }
        }
    }
    assert_eq!(integrality_scaler(2, 1), Integer::from(16));
}

#[test]
fn kernel_solver_agrees_with_explicit_construction() {
    for m in 2..=3 {
        for n in 0..=3 {
            let params = ConstructionParams::new(m, n).unwrap();
            let sys = build_system(params).unwrap();
            let logs = log_power_table(m - 1, params.truncation());
            for i in 1..=m {
                let kernel = pade_from_kernel(&logs, &params.weight(i)).unwrap();
                assert!(proportionality(&kernel, sys.family(i)).is_some(), "m={m} n={n} i={i}");
            }
        }
    }
}

#[test]
fn normality_examples() {
    let logs = log_power_table(2, 12);
    assert!(normality_check(&logs[..2], &[1, 1]));
    assert!(normality_check(&logs, &[2, 2, 2]));
    let one = log_power_series(0, 8);
    let linear = Series::from_polynomial(&Polynomial::from_ints(&[1, 1]), 8);
    assert!(!normality_check(&[one, linear], &[1, 1]));
}
