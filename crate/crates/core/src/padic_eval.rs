//! Finite-precision p-adic arithmetic with explicit valuation bookkeeping.
//!
//! A [`PAdicNumber`] is known modulo `p^abs_precision`. Its valuation is
//! exact whenever it lies below the absolute precision; otherwise the value
//! is indistinguishable from zero at that precision.

use std::fmt;

use rug::ops::RemRounding;
use rug::{Integer, Rational};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::measure_bounds::is_prime;

/// Extra p-adic digits demanded of every omitted series term.
pub const LOG_GUARD_DIGITS: i64 = 2;
/// Starting absolute precision for escalating evaluations.
pub const START_PRECISION: i64 = 64;
/// Hard ceiling for escalating evaluations.
pub const MAX_PRECISION: i64 = 4096;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PAdicNumber {
    p: u64,
    valuation: i64,
    /// unit part modulo `p^(abs_precision − valuation)`; zero iff the value
    /// vanishes at the working precision
    unit: Integer,
    abs_precision: i64,
    exact_zero: bool,
}

fn p_pow(p: u64, e: i64) -> Integer {
    debug_assert!(e >= 0);
    Integer::from(Integer::u_pow_u(p as u32, e as u32))
}

/// Splits a nonzero integer into `(v_p(k), k / p^{v_p(k)})`.
fn split_integer(k: &Integer, p: u64) -> (i64, Integer) {
    let (rest, v) = Integer::from(k).remove_factor(&Integer::from(p));
    (v as i64, rest)
}

fn check_prime(p: u64) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(Error::InvalidParams(format!("{p} is not prime")))
    }
}

impl PAdicNumber {
    /// The exact value `0`.
    pub fn zero(p: u64) -> Self {
        Self {
            p,
            valuation: i64::MAX,
            unit: Integer::new(),
            abs_precision: i64::MAX,
            exact_zero: true,
        }
    }

    /// Normalizes `p^v · x` known modulo `p^abs`.
    fn from_scaled(p: u64, v: i64, x: Integer, abs: i64) -> Self {
        if abs <= v {
            return Self::vanishing(p, abs);
        }
        let modulus = p_pow(p, abs - v);
        let x = x.rem_euc(&modulus);
        if x == 0 {
            return Self::vanishing(p, abs);
        }
        let (extra, unit) = split_integer(&x, p);
        let valuation = v + extra;
        let unit = unit.rem_euc(&p_pow(p, abs - valuation));
        Self {
            p,
            valuation,
            unit,
            abs_precision: abs,
            exact_zero: false,
        }
    }

    fn vanishing(p: u64, abs: i64) -> Self {
        Self {
            p,
            valuation: abs,
            unit: Integer::new(),
            abs_precision: abs,
            exact_zero: false,
        }
    }

    /// `c/d` with `relative_precision` unit digits.
    pub fn from_rational(q: &Rational, p: u64, relative_precision: i64) -> Result<Self> {
        check_prime(p)?;
        if relative_precision < 1 {
            return Err(Error::InvalidParams("precision must be positive".into()));
        }
        if *q == 0 {
            return Ok(Self::zero(p));
        }
        let (vn, un) = split_integer(q.numer(), p);
        let (vd, ud) = split_integer(q.denom(), p);
        let v = vn - vd;
        let modulus = p_pow(p, relative_precision);
        let inv = ud
            .invert(&modulus)
            .map_err(|_| Error::Internal("denominator unit not invertible".into()))?;
        let unit = (un * inv).rem_euc(&modulus);
        Ok(Self {
            p,
            valuation: v,
            unit,
            abs_precision: v + relative_precision,
            exact_zero: false,
        })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn is_exact_zero(&self) -> bool {
        self.exact_zero
    }

    /// Zero modulo `p^abs_precision` (including the exact zero).
    pub fn vanishes(&self) -> bool {
        self.exact_zero || self.unit == 0
    }

    /// The exact valuation, when it is certified by the working precision.
    pub fn certified_valuation(&self) -> Option<i64> {
        (!self.vanishes()).then_some(self.valuation)
    }

    /// A lower bound for the valuation: exact when certified, the absolute
    /// precision otherwise.
    pub fn valuation_floor(&self) -> i64 {
        self.valuation
    }

    pub fn abs_precision(&self) -> i64 {
        self.abs_precision
    }

    pub fn relative_precision(&self) -> i64 {
        if self.exact_zero {
            i64::MAX
        } else {
            self.abs_precision - self.valuation
        }
    }

    pub fn unit(&self) -> &Integer {
        &self.unit
    }

    /// `|x|_p = p^{−v}` for a certified valuation.
    pub fn norm(&self) -> Option<Rational> {
        let v = self.certified_valuation()?;
        let pk = p_pow(self.p, v.abs());
        Some(if v >= 0 {
            Rational::from((Integer::from(1), pk))
        } else {
            Rational::from(pk)
        })
    }

    /// Representative of the value modulo `p^abs` as `p^v·unit`, with
    /// `v ≥ base`, scaled by `p^{−base}`.
    fn scaled_to(&self, base: i64) -> Integer {
        if self.vanishes() {
            return Integer::new();
        }
        &self.unit * p_pow(self.p, self.valuation - base)
    }

    /// The value truncated to absolute precision `abs`.
    pub fn reduce(&self, abs: i64) -> Self {
        if self.exact_zero || abs >= self.abs_precision {
            return self.clone();
        }
        Self::from_scaled(
            self.p,
            self.valuation.min(abs),
            self.scaled_to(self.valuation.min(abs)),
            abs,
        )
    }

    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!(self.p, rhs.p, "mixed primes");
        if self.exact_zero {
            return rhs.clone();
        }
        if rhs.exact_zero {
            return self.clone();
        }
        let abs = self.abs_precision.min(rhs.abs_precision);
        let base = self.valuation.min(rhs.valuation).min(abs);
        let sum = self.scaled_to(base) + rhs.scaled_to(base);
        Self::from_scaled(self.p, base, sum, abs)
    }

    pub fn neg(&self) -> Self {
        if self.vanishes() {
            return self.clone();
        }
        let modulus = p_pow(self.p, self.abs_precision - self.valuation);
        Self {
            unit: Integer::from(-&self.unit).rem_euc(&modulus),
            ..self.clone()
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.p, rhs.p, "mixed primes");
        if self.exact_zero || rhs.exact_zero {
            return Self::zero(self.p);
        }
        match (self.vanishes(), rhs.vanishes()) {
            (false, false) => {
                let v = self.valuation + rhs.valuation;
                let rel = self.relative_precision().min(rhs.relative_precision());
                Self::from_scaled(self.p, v, Integer::from(&self.unit * &rhs.unit), v + rel)
            }
            // x·y with x ≡ 0 mod p^a: the product is ≡ 0 mod p^{a + v(y)}
            (true, false) => Self::vanishing(self.p, self.abs_precision + rhs.valuation),
            (false, true) => Self::vanishing(self.p, rhs.abs_precision + self.valuation),
            (true, true) => Self::vanishing(self.p, self.abs_precision + rhs.abs_precision),
        }
    }

    /// Multiplication by an exact rational; relative precision is kept.
    pub fn mul_rational(&self, q: &Rational) -> Self {
        if *q == 0 || self.exact_zero {
            return Self::zero(self.p);
        }
        let (vn, un) = split_integer(q.numer(), self.p);
        let (vd, ud) = split_integer(q.denom(), self.p);
        let shift = vn - vd;
        if self.vanishes() {
            return Self::vanishing(self.p, self.abs_precision + shift);
        }
        let rel = self.relative_precision();
        let modulus = p_pow(self.p, rel);
        let inv = ud.invert(&modulus).expect("unit denominators are invertible");
        Self::from_scaled(
            self.p,
            self.valuation + shift,
            self.unit.clone() * un * inv,
            self.abs_precision + shift,
        )
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(
            PAdicNumber::from_rational(&Rational::from(1), self.p, self.relative_precision().min(i64::MAX / 4))
                .expect("prime already checked"),
            |acc, _| acc.mul(self),
        )
    }
}

impl fmt::Display for PAdicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exact_zero {
            write!(f, "0")
        } else if self.vanishes() {
            write!(f, "O({}^{})", self.p, self.abs_precision)
        } else {
            write!(
                f,
                "{}^{}·{} + O({}^{})",
                self.p, self.valuation, self.unit, self.p, self.abs_precision
            )
        }
    }
}

/// Serializable view: exact integers as decimal strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PAdicRepr {
    pub p: u64,
    pub certified_valuation: Option<i64>,
    pub valuation_floor: Option<i64>,
    pub unit: String,
    pub abs_precision: Option<i64>,
    pub exact_zero: bool,
}

impl From<&PAdicNumber> for PAdicRepr {
    fn from(x: &PAdicNumber) -> Self {
        Self {
            p: x.p,
            certified_valuation: x.certified_valuation(),
            valuation_floor: (!x.exact_zero).then_some(x.valuation),
            unit: x.unit.to_string(),
            abs_precision: (!x.exact_zero).then_some(x.abs_precision),
            exact_zero: x.exact_zero,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PAdicLogResult {
    pub value: PAdicNumber,
    /// number of series terms summed
    pub terms: u64,
    /// certified lower bound on the valuation of the omitted tail
    pub tail_valuation_floor: i64,
}

/// `floor(log_p k)` for `k ≥ 1`.
fn floor_log(p: u64, k: u64) -> i64 {
    let mut e = 0;
    let mut pw = p;
    while pw <= k {
        e += 1;
        pw = match pw.checked_mul(p) {
            Some(x) => x,
            None => break,
        };
    }
    e
}

/// `(K+1)·v − floor(log_p(K+1))`, a lower bound for the valuation of every
/// term `α^k/k` with `k > K` (the bound is non-decreasing in `k`).
pub fn tail_floor(p: u64, v: i64, terms: u64) -> i64 {
    (terms as i64 + 1) * v - floor_log(p, terms + 1)
}

/// Smallest `K` with `tail_floor(K) ≥ target`.
pub fn log_terms_needed(p: u64, v: i64, target: i64) -> u64 {
    let mut k = 0u64;
    while tail_floor(p, v, k) < target {
        k += 1;
    }
    k
}

fn check_log_argument(alpha: &PAdicNumber) -> Result<i64> {
    let p = alpha.p;
    let v = alpha.certified_valuation().ok_or(Error::PrecisionExhausted {
        precision: alpha.abs_precision,
    })?;
    let min_v = if p == 2 { 2 } else { 1 };
    if v < min_v {
        return Err(Error::OutsideConvergenceDisk { p, valuation: v });
    }
    Ok(v)
}

/// `log_p(1+α)` to absolute precision `m_digits`, with `extra_terms` series
/// terms summed beyond the minimum (used for stability checks).
pub fn padic_log1p_with_terms(alpha: &PAdicNumber, m_digits: i64, extra_terms: u64) -> Result<PAdicLogResult> {
    let p = alpha.p;
    if alpha.is_exact_zero() {
        return Ok(PAdicLogResult {
            value: PAdicNumber::zero(p),
            terms: 0,
            tail_valuation_floor: i64::MAX,
        });
    }
    let v = check_log_argument(alpha)?;
    let terms = log_terms_needed(p, v, m_digits + LOG_GUARD_DIGITS) + extra_terms;
    let mut sum = PAdicNumber::zero(p);
    let mut power = alpha.clone();
    for k in 1..=terms {
        let sign = if k % 2 == 1 { 1 } else { -1 };
        sum = sum.add(&power.mul_rational(&Rational::from((sign, k as i64))));
        power = power.mul(alpha);
    }
    let tail = tail_floor(p, v, terms);
    let value = sum.reduce(m_digits.min(tail));
    Ok(PAdicLogResult {
        value,
        terms,
        tail_valuation_floor: tail,
    })
}

/// `log_p(1+α)` via the series `Σ (−1)^{k+1} α^k / k`, truncated so that
/// every omitted term vanishes modulo `p^{M+2}`; the value is reported to
/// absolute precision `M` (or less if `α` itself is known less precisely).
pub fn padic_log1p(alpha: &PAdicNumber, m_digits: i64) -> Result<PAdicLogResult> {
    padic_log1p_with_terms(alpha, m_digits, 0)
}

/// `log_p(1+α)` for a rational `α`, with enough input digits that the
/// divisions by `k` cannot eat into the requested precision.
pub fn padic_log1p_rational(alpha: &Rational, p: u64, m_digits: i64) -> Result<PAdicLogResult> {
    let probe = PAdicNumber::from_rational(alpha, p, 1)?;
    if probe.is_exact_zero() {
        return padic_log1p(&probe, m_digits);
    }
    let v = check_log_argument(&probe)?;
    let terms = log_terms_needed(p, v, m_digits + LOG_GUARD_DIGITS);
    let guard = floor_log(p, terms.max(1)) + LOG_GUARD_DIGITS;
    let a = PAdicNumber::from_rational(alpha, p, m_digits + guard)?;
    padic_log1p(&a, m_digits)
}

/// `Σ_j a_j · L^j` at working precision `M`. Fails with
/// `PrecisionExhausted` when cancellation leaves no certified valuation.
pub fn padic_linear_form(coeffs: &[Rational], log: &PAdicNumber, m_digits: i64) -> Result<PAdicNumber> {
    let p = log.p;
    if coeffs.iter().all(|c| *c == 0) {
        return Ok(PAdicNumber::zero(p));
    }
    let one = PAdicNumber::from_rational(&Rational::from(1), p, m_digits)?;
    let mut power = one;
    let mut sum = PAdicNumber::zero(p);
    for (j, a) in coeffs.iter().enumerate() {
        if j > 0 {
            power = power.mul(log);
        }
        sum = sum.add(&power.mul_rational(a));
    }
    if sum.certified_valuation().is_none() && !sum.is_exact_zero() {
        return Err(Error::PrecisionExhausted { precision: m_digits });
    }
    Ok(sum)
}

/// The outcome of an escalating linear-form evaluation.
#[derive(Clone, Debug)]
pub struct LinearFormMeasurement {
    pub value: PAdicNumber,
    pub log: PAdicLogResult,
    pub precision: i64,
}

/// Evaluates `Σ_j a_j log_p^j(1+α)` starting at [`START_PRECISION`] digits
/// and doubling on `PrecisionExhausted` up to [`MAX_PRECISION`].
pub fn measure_linear_form(coeffs: &[Rational], alpha: &Rational, p: u64) -> Result<LinearFormMeasurement> {
    let mut digits = START_PRECISION;
    loop {
        let log = padic_log1p_rational(alpha, p, digits)?;
        match padic_linear_form(coeffs, &log.value, digits) {
            Ok(value) => {
                return Ok(LinearFormMeasurement {
                    value,
                    log,
                    precision: digits,
                })
            }
            Err(Error::PrecisionExhausted { .. }) if digits < MAX_PRECISION => digits *= 2,
            Err(e) => return Err(e),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(c: i64, d: i64) -> Rational {
        Rational::from((c, d))
    }

    #[test]
    fn rational_embedding() {
        let x = PAdicNumber::from_rational(&q(5, 1), 5, 10).unwrap();
        assert_eq!(x.certified_valuation(), Some(1));
        assert_eq!(*x.unit(), 1);

        let y = PAdicNumber::from_rational(&q(1, 10), 5, 10).unwrap();
        assert_eq!(y.certified_valuation(), Some(-1));
        let modulus = Integer::from(5).pow(10u32);
        assert_eq!(Integer::from(y.unit() * 2u32).rem_euc(&modulus), 1);

        assert!(PAdicNumber::from_rational(&q(0, 3), 5, 10).unwrap().is_exact_zero());
        assert!(PAdicNumber::from_rational(&q(1, 3), 6, 10).is_err());
    }

    use rug::ops::Pow;

    #[test]
    fn arithmetic_tracks_cancellation() {
        let a = PAdicNumber::from_rational(&q(1, 1), 3, 5).unwrap();
        let b = PAdicNumber::from_rational(&q(-1 + 81, 1), 3, 5).unwrap();
        let s = a.add(&b);
        assert_eq!(s.certified_valuation(), Some(4));
        let c = PAdicNumber::from_rational(&q(-1 + 243, 1), 3, 5).unwrap();
        let t = a.add(&c);
        assert!(t.vanishes());
        assert_eq!(t.valuation_floor(), 5);
        let prod = a.mul(&PAdicNumber::from_rational(&q(9, 2), 3, 5).unwrap());
        assert_eq!(prod.certified_valuation(), Some(2));
        assert_eq!(prod.abs_precision(), 7);
    }

    #[test]
    fn log_of_one_plus_p() {
        for p in [3u64, 5, 7] {
            let r = padic_log1p_rational(&q(p as i64, 1), p, 20).unwrap();
            assert_eq!(r.value.certified_valuation(), Some(1));
            assert!(r.tail_valuation_floor >= 22);
        }
        let zero = padic_log1p(&PAdicNumber::zero(5), 20).unwrap();
        assert!(zero.value.is_exact_zero());
    }

    #[test]
    fn log_convergence_gate() {
        assert!(matches!(
            padic_log1p_rational(&q(1, 1), 5, 10),
            Err(Error::OutsideConvergenceDisk { .. })
        ));
        assert!(matches!(
            padic_log1p_rational(&q(2, 1), 2, 10),
            Err(Error::OutsideConvergenceDisk { .. })
        ));
        assert!(padic_log1p_rational(&q(4, 1), 2, 10).is_ok());
    }

    #[test]
    fn log_is_additive_on_squares() {
        let p = 5u64;
        let m = 30;
        let alpha = q(5, 1);
        // (1+α)² − 1 = α² + 2α
        let sq = Rational::from(&alpha * &alpha) + Rational::from(&alpha * 2u32);
        let lhs = padic_log1p_rational(&sq, p, m).unwrap().value;
        let rhs = padic_log1p_rational(&alpha, p, m).unwrap().value.mul_rational(&q(2, 1));
        let diff = lhs.sub(&rhs);
        assert!(diff.vanishes());
        assert!(diff.valuation_floor() >= m);
    }

    #[test]
    fn linear_form_edge_cases() {
        let log = padic_log1p_rational(&q(5, 1), 5, 20).unwrap().value;
        assert!(padic_linear_form(&[q(0, 1), q(0, 1)], &log, 20)
            .unwrap()
            .is_exact_zero());
        let only_const = padic_linear_form(&[q(25, 3)], &log, 20).unwrap();
        assert_eq!(only_const.certified_valuation(), Some(2));
    }

    #[test]
    fn tail_floor_is_monotone() {
        for p in [2u64, 3, 5] {
            for v in 1..3 {
                let mut prev = tail_floor(p, v, 0);
                for k in 1..200 {
                    let t = tail_floor(p, v, k);
                    assert!(t >= prev);
                    prev = t;
                }
            }
        }
        assert_eq!(floor_log(5, 24), 1);
        assert_eq!(floor_log(5, 25), 2);
    }
}
