use logpade::padic_eval::{padic_linear_form, padic_log1p, padic_log1p_rational, padic_log1p_with_terms, PAdicNumber};
use logpade::Error;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rug::{Integer, Rational};

fn q(c: i64, d: i64) -> Rational {
    Rational::from((c, d))
}

/// `x ≡ y (mod p^M)` in the absolute sense.
fn agree_to(x: &PAdicNumber, y: &PAdicNumber, m: i64) -> bool {
    let d = x.sub(y);
    d.is_exact_zero() || d.valuation_floor() >= m
}

/// Exact rational partial sum `Σ_{k≤K} (−1)^{k+1} α^k / k`.
fn rational_log_series(alpha: &Rational, terms: u32) -> Rational {
    let mut sum = Rational::new();
    let mut power = Rational::from(1);
    for k in 1..=terms {
        power *= alpha;
        let term = Rational::from(&power / k);
        if k % 2 == 1 {
            sum += term;
        } else {
            sum -= term;
        }
    }
    sum
}

#[test]
fn from_rational_examples() {
    let m = 12;
    let five = PAdicNumber::from_rational(&q(5, 1), 5, m).unwrap();
    assert_eq!(
        (five.certified_valuation(), five.unit().clone()),
        (Some(1), Integer::from(1))
    );

    let tenth = PAdicNumber::from_rational(&q(1, 10), 5, m).unwrap();
    assert_eq!(tenth.certified_valuation(), Some(-1));
    let modulus = Integer::from(Integer::u_pow_u(5, m as u32));
    let inv2 = Integer::from(2).invert(&modulus).unwrap();
    assert_eq!(*tenth.unit(), inv2);

    assert!(PAdicNumber::from_rational(&q(0, 3), 5, m).unwrap().is_exact_zero());
    assert!(matches!(
        PAdicNumber::from_rational(&q(1, 3), 6, m),
        Err(Error::InvalidParams(_))
    ));
}

#[test]
fn norm_is_p_to_minus_valuation() {
    let x = PAdicNumber::from_rational(&q(50, 3), 5, 8).unwrap();
    assert_eq!(x.norm(), Some(q(1, 25)));
}

#[test]
fn log_matches_exact_rational_series() {
    let m = 20;
    for (p, c) in [(3u64, 3i64), (5, 5), (5, 10), (7, 49), (2, 4), (2, 12)] {
        let alpha = q(c, 1);
        let got = padic_log1p_rational(&alpha, p, m).unwrap();
        // 80 terms leave a tail of valuation far above 20 for every case here
        let exact = rational_log_series(&alpha, 80);
        let oracle = PAdicNumber::from_rational(&exact, p, m + 40).unwrap();
        assert!(agree_to(&got.value, &oracle, m), "p={p} α={c}");
        assert!(got.tail_valuation_floor >= m);
    }
}

#[test]
fn log_of_one_plus_p_has_valuation_one() {
    for p in [3u64, 5, 7, 11, 13] {
        let l = padic_log1p_rational(&q(p as i64, 1), p, 20).unwrap();
        assert_eq!(l.value.certified_valuation(), Some(1));
    }
    let zero = PAdicNumber::zero(5);
    assert!(padic_log1p(&zero, 20).unwrap().value.is_exact_zero());
}

#[test]
fn log_is_additive() {
    let m = 20;
    for p in [3u64, 5, 7] {
        let a = q(p as i64, 1);
        let squared = Rational::from(&(Rational::from(1) + &a) * &(Rational::from(1) + &a)) - 1u32;
        let lhs = padic_log1p_rational(&squared, p, m).unwrap().value;
        let rhs = padic_log1p_rational(&a, p, m).unwrap().value.mul_rational(&q(2, 1));
        assert!(agree_to(&lhs, &rhs, m));
    }
}

#[test]
fn convergence_gate() {
    assert!(matches!(
        padic_log1p_rational(&q(1, 1), 5, 10),
        Err(Error::OutsideConvergenceDisk { .. })
    ));
    assert!(matches!(
        padic_log1p_rational(&q(2, 1), 2, 10),
        Err(Error::OutsideConvergenceDisk { .. })
    ));
}

#[test]
fn linear_form_trivial_cases() {
    let l = padic_log1p_rational(&q(5, 1), 5, 30).unwrap().value;
    assert!(padic_linear_form(&[Rational::new(), Rational::new()], &l, 30)
        .unwrap()
        .is_exact_zero());
    let only = padic_linear_form(&[q(50, 1)], &l, 30).unwrap();
    assert_eq!(only.certified_valuation(), Some(2));
}

/// Randomized stability: 20 seeded `(p, α)` instances with `v_p(α) ≥ 1`
/// (`v₂ ≥ 2`); extra terms and doubled precision agree to `M` digits and
/// never move a certified valuation.
#[test]
fn log_is_stable_under_extra_terms_and_doubling() {
    let primes = [2u64, 3, 5, 7, 11, 13];
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for case in 0..20 {
        let p = primes[rng.gen_range(0..primes.len())];
        let min_v = if p == 2 { 2 } else { 1 };
        let v = rng.gen_range(min_v..=3u32);
        let unit = loop {
            let u = rng.gen_range(-400i64..=400);
            if u != 0 && u % p as i64 != 0 {
                break u;
            }
        };
        let den = loop {
            let d = rng.gen_range(1i64..=50);
            if d % p as i64 != 0 {
                break d;
            }
        };
        let alpha = Rational::from((unit, den)) * Integer::from(Integer::u_pow_u(p as u32, v));
        let m = 24;

        let base = padic_log1p_rational(&alpha, p, m).unwrap();
        let input = PAdicNumber::from_rational(&alpha, p, 2 * m + 16).unwrap();
        let extra = padic_log1p_with_terms(&input, m, 5).unwrap();
        let doubled = padic_log1p_rational(&alpha, p, 2 * m).unwrap();

        assert!(agree_to(&base.value, &extra.value, m), "case {case}: p={p} α={alpha}");
        assert!(agree_to(&base.value, &doubled.value, m), "case {case}: p={p} α={alpha}");
        if let Some(val) = base.value.certified_valuation() {
            assert_eq!(doubled.value.certified_valuation(), Some(val), "case {case}");
            assert_eq!(extra.value.certified_valuation(), Some(val), "case {case}");
        }
    }
}
