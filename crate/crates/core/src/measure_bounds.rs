//! Quantitative bounds and effective measure constants.
//!
//! Everything transcendental is evaluated with [`Interval`] arithmetic, and
//! every reported bound is read from the side of the interval that keeps it
//! conservative: upper bounds are rounded up, lower bounds down.

use std::fmt;
use std::str::FromStr;

use rug::ops::Pow;
use rug::{Float, Integer, Rational};
use serde::Serialize;

use crate::directed::{DirectedFloat, Interval, DEFAULT_PRECISION};
use crate::error::{Error, Result};

/// Precision ceiling for automatic escalation.
pub const MAX_PRECISION: u32 = 4096;

/// Default upper limit for the admissible-`n` search.
pub const DEFAULT_SEARCH_CAP: u64 = 1_000_000_000_000;

/// Relative slack below which a decided inequality is re-checked at doubled
/// precision.
const DECISION_SLACK_LOG2: i32 = -32;

/// `lcm(1, 2, …, n)`; 1 for `n = 0`.
pub fn lcm_upto(n: u64) -> Integer {
    (2..=n).fold(Integer::from(1), |acc, k| acc.lcm(&Integer::from(k)))
}

/// Running `(n, lcm(1..n))` for `n = 1, 2, …`.
pub fn lcm_sequence() -> impl Iterator<Item = (u64, Integer)> {
    (1u64..).scan(Integer::from(1), |acc, n| {
        acc.lcm_mut(&Integer::from(n));
        Some((n, acc.clone()))
    })
}

fn sqrt_i(k: i64, prec: u32) -> Interval {
    Interval::from_i64(k, prec).sqrt()
}

/// `515 / (√546 − √322)²`.
pub fn rs_constant(prec: u32) -> Interval {
    let diff = sqrt_i(546, prec).sub(&sqrt_i(322, prec));
    Interval::from_i64(515, prec).div(&diff.mul(&diff))
}

fn ln_integer(n: &Integer, prec: u32) -> Interval {
    if *n == 1 {
        Interval::from_i64(0, prec)
    } else {
        Interval::from_integer(n, prec).ln()
    }
}

/// `g(n) = n·√(log n)·exp(−√(log n / R))`.
pub fn g_envelope(n: &Integer, prec: u32) -> Interval {
    let ln = ln_integer(n, prec);
    let decay = ln.div(&rs_constant(prec)).sqrt().neg().exp();
    Interval::from_integer(n, prec).mul(&ln.sqrt()).mul(&decay)
}

/// `√(log n)·exp((√322 − √546)·√(log n)/√515)`, the `n`-dependent factor of
/// the first admissibility condition.
pub fn sublinear_factor(n: &Integer, prec: u32) -> Interval {
    let root_ln = ln_integer(n, prec).sqrt();
    let k = sqrt_i(322, prec).sub(&sqrt_i(546, prec)).div(&sqrt_i(515, prec));
    root_ln.mul(&root_ln.mul(&k).exp())
}

/// `(exp(n − g(n)), exp(n + g(n)))`, rounded down and up respectively.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Envelope {
    pub lower: DirectedFloat,
    pub upper: DirectedFloat,
}

pub fn rosser_schoenfeld_envelope(n: u64, prec: u32) -> Result<Envelope> {
    if n < 2 {
        return Err(Error::InvalidParams(format!("envelope needs n >= 2, got {n}")));
    }
    let big = Integer::from(n);
    let g = g_envelope(&big, prec);
    let ni = Interval::from_integer(&big, prec);
    Ok(Envelope {
        lower: ni.sub(&g).exp().lower(),
        upper: ni.add(&g).exp().upper(),
    })
}

fn factorial(k: u64) -> Integer {
    Integer::from(Integer::factorial(k as u32))
}

/// `d_{n+1}^m (n+1)!^m`, the scaler that clears partial-fraction denominators.
pub fn table_scaler(m: usize, n: usize) -> Integer {
    let d = lcm_upto(n as u64 + 1);
    let f = factorial(n as u64 + 1);
    (d * f).pow(m as u32)
}

/// `d_{n+1}^m (n+1)!^m (m−1)!`.
pub fn integrality_scaler(m: usize, n: usize) -> Integer {
    table_scaler(m, n) * factorial(m as u64 - 1)
}

/// `2^m(1+a)/a · (n+1)^m · ((1+a)2^m)^{n+1} · n!^{−m}` for `a = |α| > 0`,
/// evaluated exactly.
pub fn coeff_bound_exact(m: usize, n: usize, abs_alpha: &Rational) -> Rational {
    let two_m = Rational::from(Integer::from(1) << m as u32);
    let one_plus = Rational::from(abs_alpha + 1u32);
    let pre = Rational::from(&two_m * &one_plus) / abs_alpha;
    let poly = Rational::from(Integer::from(n + 1).pow(m as u32));
    let growth = (one_plus * two_m).pow(n as i32 + 1);
    let nfact = Rational::from(factorial(n as u64).pow(m as u32));
    pre * poly * growth / nfact
}

/// The same bound for an enclosure of `|α|`, rounded up. The expression is
/// not monotone in `|α|`, so the whole interval is propagated.
pub fn coeff_bound(m: usize, n: usize, abs_alpha: &Interval) -> Result<DirectedFloat> {
    if !abs_alpha.is_positive() {
        return Err(Error::InvalidAlpha("coefficient bound needs |alpha| > 0".into()));
    }
    let prec = abs_alpha.prec();
    let two_m = Interval::from_integer(&(Integer::from(1) << m as u32), prec);
    let one_plus = abs_alpha.add(&Interval::from_i64(1, prec));
    let pre = two_m.mul(&one_plus).div(abs_alpha);
    let poly = Interval::from_integer(&Integer::from(n + 1).pow(m as u32), prec);
    let growth = one_plus.mul(&two_m).pow_u(n as u32 + 1);
    let nfact = Interval::from_integer(&factorial(n as u64).pow(m as u32), prec);
    Ok(pre.mul(&poly).mul(&growth).div(&nfact).upper())
}

/// Pieces shared by the archimedean remainder bound and the constants:
/// `s = √(1+4L)` and `2L/(1+s)`.
fn log_shape(log_term: &Interval) -> (Interval, Interval) {
    let prec = log_term.prec();
    let one = Interval::from_i64(1, prec);
    let s = one.add(&log_term.mul_i64(4)).sqrt();
    let frac = log_term.mul_i64(2).div(&one.add(&s));
    (s, frac)
}

/// Upper bound for `|R_{i,n+1}(α)|` in terms of `L = |log(1+α)|`:
///
/// ```text
/// exp(2L/(1+s)) · [exp(m(1+s)/2 + 2L/(1+s)) (L/m)^m]^{n+1} · (n+1)^{−m(n+1)}
/// ```
///
/// valid when `m/L ≥ 2`.
pub fn remainder_bound_arch(m: usize, n: usize, log_term: &Interval) -> Result<DirectedFloat> {
    let prec = log_term.prec();
    let half_m = Interval::from_rational(&Rational::from((m as i64, 2)), prec);
    if !log_term.certainly_le(&half_m) {
        return Err(Error::HypothesisViolated(format!(
            "m/|log(1+alpha)| >= 2 fails for m = {m}, |log(1+alpha)| in {log_term}"
        )));
    }
    let (s, frac) = log_shape(log_term);
    let one = Interval::from_i64(1, prec);
    let lead = frac.exp();
    let bracket = half_m
        .mul(&one.add(&s))
        .add(&frac)
        .exp()
        .mul(&log_term.div_i64(m as i64).pow_u(m as u32));
    let n1 = Integer::from(n + 1);
    let decay = Interval::from_integer(&n1.pow((m * (n + 1)) as u32), prec);
    Ok(lead.mul(&bracket.pow_u(n as u32 + 1)).div(&decay).upper())
}

/// `1/(v·log p) + 1/m`, the smallest admissible `n` for the p-adic
/// remainder bound.
pub fn padic_threshold(m: usize, p: u64, v: i64, prec: u32) -> Interval {
    let ln_p = Interval::from_i64(p as i64, prec).ln();
    let one = Interval::from_i64(1, prec);
    one.div(&ln_p.mul_i64(v))
        .add(&Interval::from_rational(&Rational::from((1, m as i64)), prec))
}

/// `(m(n+1)+m−2)^{m−1} · p^{−v(m(n+1)−1)}` without the range check.
pub fn remainder_bound_padic_value(m: usize, n: usize, p: u64, v: i64) -> Rational {
    let base = Integer::from(m * (n + 1) + m - 2).pow(m as u32 - 1);
    let exp = v * (m as i64 * (n as i64 + 1) - 1);
    let den = Integer::from(p).pow(exp as u32);
    Rational::from((base, den))
}

/// The p-adic remainder bound, rounded up; errors below the threshold
/// `n ≥ 1/(v log p) + 1/m`.
pub fn remainder_bound_padic(m: usize, n: usize, p: u64, v: i64) -> Result<DirectedFloat> {
    if v < 1 {
        return Err(Error::PadicSmallness { p, valuation: v });
    }
    let threshold = padic_threshold(m, p, v, DEFAULT_PRECISION);
    if *threshold.hi() > n as u64 {
        return Err(Error::NTooSmall {
            n: n as u64,
            threshold: threshold.upper().to_decimal(12),
        });
    }
    let exact = remainder_bound_padic_value(m, n, p, v);
    Ok(Interval::from_rational(&exact, DEFAULT_PRECISION).upper())
}

/// A rational `α = c/d ∉ {0, −1}` in lowest terms with `d ≥ 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AlphaInput {
    c: i64,
    d: i64,
}

impl AlphaInput {
    pub fn new(c: i64, d: i64) -> Result<Self> {
        if d == 0 {
            return Err(Error::InvalidAlpha("zero denominator".into()));
        }
        let q = Rational::from((c, d));
        if q == 0 || q == -1 {
            return Err(Error::InvalidAlpha(format!("alpha = {q} is excluded")));
        }
        let c = q.numer().to_i64().unwrap();
        let d = q.denom().to_i64().unwrap();
        Ok(Self { c, d })
    }

    pub fn c(&self) -> i64 {
        self.c
    }

    pub fn d(&self) -> i64 {
        self.d
    }

    pub fn as_rational(&self) -> Rational {
        Rational::from((self.c, self.d))
    }

    pub fn abs(&self) -> Rational {
        Rational::from((self.c.abs(), self.d))
    }

    /// Absolute height `max(|c|, d)`.
    pub fn height(&self) -> i64 {
        self.c.abs().max(self.d)
    }

    /// `|log(1+α)|` for real `α > −1`.
    pub fn log_term(&self, prec: u32) -> Result<Interval> {
        let one_plus = self.as_rational() + 1u32;
        if one_plus <= 0 {
            return Err(Error::InvalidAlpha(format!(
                "alpha = {} must exceed -1 for a real logarithm",
                self
            )));
        }
        Ok(Interval::from_rational(&one_plus, prec).ln().abs())
    }

    /// `v_p(α)`.
    pub fn valuation(&self, p: u64) -> i64 {
        let pi = Integer::from(p);
        let vc = Integer::from(self.c).remove_factor(&pi).1 as i64;
        let vd = Integer::from(self.d).remove_factor(&pi).1 as i64;
        vc - vd
    }
}

impl fmt::Display for AlphaInput {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.c, self.d)
    }
}

impl FromStr for AlphaInput {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidAlpha(format!("cannot parse '{s}' as c/d"));
        let (c, d) = match s.split_once('/') {
            Some((c, d)) => (c.trim(), d.trim()),
            None => (s.trim(), "1"),
        };
        let c = c.parse::<i64>().map_err(|_| bad())?;
        let d = d.parse::<i64>().map_err(|_| bad())?;
        Self::new(c, d)
    }
}

/// Which coefficient multiplies `log(m/L)` in the decay rate `A(α)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum DecayVariant {
    /// `m·log(m/L)` paired with the `n^{m/2}` growth factor (the default).
    #[default]
    Statement,
    /// `(m/2)·log(m/L)`, the sharper normalization with `c = m/2`.
    Proof,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Sign {
    Positive,
    Negative,
    Undecided,
}

fn sign_of(iv: &Interval) -> Sign {
    if iv.is_positive() {
        Sign::Positive
    } else if iv.is_negative() || (*iv.hi() == 0 && *iv.lo() == 0) {
        Sign::Negative
    } else {
        Sign::Undecided
    }
}

/// Archimedean constants for rational `α`, each kept as an enclosure.
#[derive(Clone, Debug)]
pub struct MeasureConstants {
    pub m: usize,
    pub alpha: AlphaInput,
    pub variant: DecayVariant,
    pub precision: u32,
    /// `L = |log(1+α)|`
    pub log_term: Interval,
    /// growth rate `m(1+log 2) + log den(α) + log(1+|α|)`
    pub growth: Interval,
    /// decay rate `A(α)`
    pub decay: Interval,
    /// `T(α) = exp(2L/(1+√(1+4L)))·(m−1)!`
    pub t_remainder: Interval,
    /// `T^{(1)}(α) = 2^m(1+|α|)(m−1)!/|α|`
    pub t_coeff: Interval,
    /// exponent of `n` in the remainder bound, `m/2`
    pub c_exp: Rational,
    pub nu: Interval,
    pub delta: Interval,
}

impl MeasureConstants {
    pub fn delta_sign(&self) -> Sign {
        sign_of(&self.delta)
    }

    /// `ν/δ + ε/2` rounded up, when `δ > 0` is certain.
    pub fn exponent(&self, epsilon: &Rational) -> Option<DirectedFloat> {
        exponent_of(&self.nu, &self.delta, epsilon)
    }

    /// `ν/δ` rounded up.
    pub fn ratio(&self) -> Option<DirectedFloat> {
        exponent_of(&self.nu, &self.delta, &Rational::new())
    }
}

fn exponent_of(nu: &Interval, delta: &Interval, epsilon: &Rational) -> Option<DirectedFloat> {
    if !delta.is_positive() {
        return None;
    }
    let prec = nu.prec();
    let half_eps = Interval::from_rational(&Rational::from(epsilon / 2u32), prec);
    Some(nu.div(delta).add(&half_eps).upper())
}

fn growth_rate(m: usize, alpha: &AlphaInput, prec: u32) -> Interval {
    let one = Interval::from_i64(1, prec);
    let d = Interval::from_i64(alpha.d, prec).ln();
    let abs1 = Interval::from_rational(&(alpha.abs() + 1u32), prec).ln();
    one.add(&Interval::ln2(prec)).mul_i64(m as i64).add(&d).add(&abs1)
}

fn t_coeff(m: usize, alpha: &AlphaInput, prec: u32) -> Interval {
    let abs = alpha.abs();
    let exact = Rational::from(Integer::from(1) << m as u32)
        * Rational::from(&abs + 1u32)
        * Rational::from(factorial(m as u64 - 1))
        / abs;
    Interval::from_rational(&exact, prec)
}

fn constants_arch_at(m: usize, alpha: &AlphaInput, prec: u32, variant: DecayVariant) -> Result<MeasureConstants> {
    let log_term = alpha.log_term(prec)?;
    let quarter_m = Interval::from_rational(&Rational::from((m as i64, 4)), prec);
    if !log_term.certainly_le(&quarter_m) {
        return Err(Error::HypothesisViolated(format!(
            "m/|log(1+alpha)| >= 4 fails for m = {m}, alpha = {alpha}"
        )));
    }
    let (s, frac) = log_shape(&log_term);
    let one = Interval::from_i64(1, prec);
    let m_i = Interval::from_i64(m as i64, prec);
    let log_ratio = m_i.div(&log_term).ln();
    let lead = match variant {
        DecayVariant::Statement => log_ratio.mul_i64(m as i64),
        DecayVariant::Proof => log_ratio.mul_i64(m as i64).div_i64(2),
    };
    let ln_d = Interval::from_i64(alpha.d, prec).ln();
    let decay = lead.sub(&m_i.mul(&one.add(&s)).div_i64(2).add(&frac)).sub(&ln_d);
    let growth = growth_rate(m, alpha, prec);
    let nu = decay.add(&growth);
    let delta = decay.sub(&growth.mul_i64(m as i64 - 2));
    let t_remainder = frac.exp().mul(&Interval::from_integer(&factorial(m as u64 - 1), prec));
    Ok(MeasureConstants {
        m,
        alpha: alpha.clone(),
        variant,
        precision: prec,
        log_term,
        growth,
        decay,
        t_remainder,
        t_coeff: t_coeff(m, alpha, prec),
        c_exp: Rational::from((m as i64, 2)),
        nu,
        delta,
    })
}

/// Archimedean constants. The precision is doubled (up to
/// [`MAX_PRECISION`]) while the sign of `δ` is undecided.
pub fn constants_arch(
    m: usize,
    alpha: &AlphaInput,
    precision_bits: u32,
    variant: DecayVariant,
) -> Result<MeasureConstants> {
    if m < 2 {
        return Err(Error::InvalidParams(format!("m must be at least 2, got {m}")));
    }
    let mut prec = precision_bits;
    loop {
        let c = constants_arch_at(m, alpha, prec, variant)?;
        if c.delta_sign() != Sign::Undecided || prec >= MAX_PRECISION {
            return Ok(c);
        }
        prec *= 2;
    }
}

/// p-adic constants for rational `α` with `v_p(α) ≥ 1`.
#[derive(Clone, Debug)]
pub struct PAdicConstants {
    pub m: usize,
    pub alpha: AlphaInput,
    pub p: u64,
    pub valuation: i64,
    pub precision: u32,
    /// `A_p = m·v·log p`
    pub decay: Interval,
    /// `T_p = (2m)^{m−1} p^v`
    pub t_remainder: Integer,
    pub c_exp: usize,
    /// archimedean growth rate, as for [`MeasureConstants::growth`]
    pub growth: Interval,
    pub t_coeff: Interval,
    pub nu: Interval,
    pub delta: Interval,
}

impl PAdicConstants {
    pub fn delta_sign(&self) -> Sign {
        sign_of(&self.delta)
    }

    pub fn exponent(&self, epsilon: &Rational) -> Option<DirectedFloat> {
        exponent_of(&self.nu, &self.delta, epsilon)
    }
}

pub fn is_prime(p: u64) -> bool {
    Integer::from(p).is_probably_prime(40) != rug::integer::IsPrime::No
}

pub fn constants_padic(m: usize, alpha: &AlphaInput, p: u64, precision_bits: u32) -> Result<PAdicConstants> {
    if m < 2 {
        return Err(Error::InvalidParams(format!("m must be at least 2, got {m}")));
    }
    if !is_prime(p) {
        return Err(Error::InvalidParams(format!("{p} is not prime")));
    }
    let v = alpha.valuation(p);
    if v < 1 {
        return Err(Error::PadicSmallness { p, valuation: v });
    }
    let mut prec = precision_bits;
    loop {
        let decay = Interval::from_i64(p as i64, prec).ln().mul_i64(m as i64 * v);
        let growth = growth_rate(m, alpha, prec);
        let delta = decay.sub(&growth.mul_i64(m as i64 - 1));
        let c = PAdicConstants {
            m,
            alpha: alpha.clone(),
            p,
            valuation: v,
            precision: prec,
            nu: decay.clone(),
            decay,
            t_remainder: Integer::from(2 * m).pow(m as u32 - 1) * Integer::from(p).pow(v as u32),
            c_exp: m - 1,
            growth,
            t_coeff: t_coeff(m, alpha, prec),
            delta,
        };
        if c.delta_sign() != Sign::Undecided || prec >= MAX_PRECISION {
            return Ok(c);
        }
        prec *= 2;
    }
}

/// The constants an admissibility search runs against.
#[derive(Clone, Copy, Debug)]
pub enum Criterion<'a> {
    Arch(&'a MeasureConstants),
    Padic(&'a PAdicConstants),
}

impl Criterion<'_> {
    fn nu_delta(&self) -> (&Interval, &Interval) {
        match self {
            Criterion::Arch(c) => (&c.nu, &c.delta),
            Criterion::Padic(c) => (&c.nu, &c.delta),
        }
    }

    fn m(&self) -> usize {
        match self {
            Criterion::Arch(c) => c.m,
            Criterion::Padic(c) => c.m,
        }
    }

    fn condition_names(&self) -> &'static [&'static str] {
        match self {
            Criterion::Arch(_) => &["sublinear-lcm-error", "size-vs-decay"],
            Criterion::Padic(_) => &["padic-threshold", "sublinear-lcm-error", "size-vs-decay"],
        }
    }
}

/// One side-by-side evaluation of an admissibility inequality `lhs < rhs`
/// (or `≤`).
#[derive(Clone, Debug, Serialize)]
pub struct ConditionEval {
    pub name: &'static str,
    pub strict: bool,
    #[serde(serialize_with = "ser_upper")]
    pub lhs: Interval,
    #[serde(serialize_with = "ser_lower")]
    pub rhs: Interval,
    pub holds: bool,
    pub precision: u32,
}

fn ser_upper<S: serde::Serializer>(iv: &Interval, s: S) -> std::result::Result<S::Ok, S::Error> {
    iv.upper().serialize(s)
}

fn ser_lower<S: serde::Serializer>(iv: &Interval, s: S) -> std::result::Result<S::Ok, S::Error> {
    iv.lower().serialize(s)
}

/// `εδ²/(2ν + εδ)`
fn tilde_epsilon(nu: &Interval, delta: &Interval, eps: &Interval) -> Interval {
    let ed = eps.mul(delta);
    ed.mul(delta).div(&nu.mul_i64(2).add(&ed))
}

fn log_rational(q: &Rational, prec: u32) -> Interval {
    Interval::from_rational(q, prec).ln()
}

fn condition_at(
    criterion: Criterion<'_>,
    index: usize,
    n: &Integer,
    epsilon: &Rational,
    prec: u32,
) -> (Interval, Interval, bool) {
    let m = criterion.m();
    let (nu, delta) = criterion.nu_delta();
    let nu = &reprec(nu, prec);
    let delta = &reprec(delta, prec);
    let eps = Interval::from_rational(epsilon, prec);
    let te = tilde_epsilon(nu, delta, &eps);
    let n_i = Interval::from_integer(n, prec);
    let ln_n = ln_integer(n, prec);
    let mi = m as i64;
    match (criterion, index) {
        (Criterion::Arch(_), 0) => {
            let lhs = sublinear_factor(n, prec).mul_i64(mi);
            let rhs = te.div_i64(2 * (mi - 1));
            (lhs, rhs, true)
        }
        (Criterion::Arch(c), 1) => {
            let alpha = &c.alpha;
            let ca = Integer::from(alpha.c.abs());
            let mfact = factorial(m as u64);
            let m1fact = factorial(m as u64 - 1);
            let konst = Rational::from(Integer::from(1) << ((2 * m + 1) * (m - 1)) as u32)
                * Rational::from(mfact.pow(m as u32 + 1))
                * Rational::from(m1fact.pow(m as u32))
                * Rational::from((Integer::from(alpha.d) + &ca, ca)).pow(2 * (mi - 1) as i32);
            let (_, frac) = log_shape(&reprec(&c.log_term, prec));
            let n_coeff = Interval::from_rational(&Rational::from((mi + 4 * mi * (mi - 1), 2)), prec);
            let lhs = log_rational(&konst, prec).add(&frac).add(&n_coeff.mul(&ln_n));
            let rhs = te.mul(&n_i).div_i64(4);
            (lhs, rhs, true)
        }
        (Criterion::Padic(c), 0) => {
            let lhs = padic_threshold(m, c.p, c.valuation, prec);
            (lhs, n_i, false)
        }
        (Criterion::Padic(_), 1) => {
            let lhs = sublinear_factor(n, prec).mul(&n_i).mul_i64(mi);
            let rhs = te.mul(&n_i).div_i64(2 * (mi - 1));
            (lhs, rhs, false)
        }
        (Criterion::Padic(c), 2) => {
            let inner =
                Interval::from_integer(&factorial(m as u64), prec).mul(&reprec(&c.t_coeff, prec).pow_u(m as u32 - 1));
            let t_p = Interval::from_integer(&c.t_remainder, prec);
            let n_pow = ((m - 1) + 2 * m * (m - 1)) as i64;
            let lhs = t_p.mul(&inner).ln().add(&ln_n.mul_i64(n_pow));
            let rhs = te.mul(&n_i).div_i64(4);
            (lhs, rhs, false)
        }
        _ => unreachable!("condition index out of range"),
    }
}

fn reprec(iv: &Interval, prec: u32) -> Interval {
    if iv.prec() >= prec {
        return iv.clone();
    }
    // widening precision keeps both ends exact
    Interval::from_endpoints(Float::with_val(prec, iv.lo()), Float::with_val(prec, iv.hi()))
}

fn decided_with_slack(lhs: &Interval, rhs: &Interval, strict: bool) -> Option<bool> {
    let holds = if strict {
        lhs.certainly_lt(rhs)
    } else {
        lhs.certainly_le(rhs)
    };
    let fails = if strict {
        rhs.hi() <= lhs.lo()
    } else {
        rhs.hi() < lhs.lo()
    };
    if !holds && !fails {
        return None;
    }
    let prec = lhs.prec();
    let (a, b) = if holds {
        (rhs.lo(), lhs.hi())
    } else {
        (lhs.lo(), rhs.hi())
    };
    let gap = Float::with_val(prec, a - b).abs();
    let scale = Float::with_val(prec, a.abs_ref()).max(&Float::with_val(prec, b.abs_ref()));
    if scale.is_zero() || gap >= scale * Float::with_val(prec, Float::i_exp(1, DECISION_SLACK_LOG2)) {
        Some(holds)
    } else {
        None
    }
}

/// Evaluates one admissibility inequality, doubling precision while it sits
/// within the decision slack. An undecidable inequality counts as failed.
pub fn evaluate_condition(
    criterion: Criterion<'_>,
    index: usize,
    n: &Integer,
    epsilon: &Rational,
    precision_bits: u32,
) -> ConditionEval {
    let mut prec = precision_bits;
    loop {
        let (lhs, rhs, strict) = condition_at(criterion, index, n, epsilon, prec);
        let decided = decided_with_slack(&lhs, &rhs, strict);
        if decided.is_some() || prec >= MAX_PRECISION {
            let holds =
                decided.unwrap_or(false) || (strict && lhs.certainly_lt(&rhs)) || (!strict && lhs.certainly_le(&rhs));
            return ConditionEval {
                name: criterion.condition_names()[index],
                strict,
                lhs,
                rhs,
                holds,
                precision: prec,
            };
        }
        prec *= 2;
    }
}

pub fn evaluate_conditions(
    criterion: Criterion<'_>,
    n: &Integer,
    epsilon: &Rational,
    precision_bits: u32,
) -> Vec<ConditionEval> {
    (0..criterion.condition_names().len())
        .map(|k| evaluate_condition(criterion, k, n, epsilon, precision_bits))
        .collect()
}

#[derive(Clone, Debug)]
pub struct SearchOptions {
    pub cap: Integer,
    pub precision_bits: u32,
}

impl Default for SearchOptions {
    fn default() -> Self {
        Self {
            cap: Integer::from(DEFAULT_SEARCH_CAP),
            precision_bits: DEFAULT_PRECISION,
        }
    }
}

/// Result of the admissible-`n` search.
#[derive(Clone, Debug, Serialize)]
pub struct Admissible {
    #[serde(serialize_with = "ser_integer")]
    pub n_star: Integer,
    /// `½·exp(δ·n*)`, rounded up; `+inf` when it leaves the float range
    pub h0: DirectedFloat,
    /// `δ·n* − log 2`, rounded up
    pub log_h0: DirectedFloat,
    /// `ν/δ + ε/2`, rounded up
    pub exponent: DirectedFloat,
    /// `εδ²/(2ν + εδ)`, rounded down
    pub tilde_epsilon: DirectedFloat,
    pub at_n_star: Vec<ConditionEval>,
    pub at_predecessor: Vec<ConditionEval>,
}

fn ser_integer<S: serde::Serializer>(k: &Integer, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&k.to_string())
}

/// First `n ≥ start` where condition `index` holds, assuming its failure set
/// is an interval containing `start`. Exponential bracketing, then bisection.
fn first_pass_from(
    criterion: Criterion<'_>,
    index: usize,
    start: &Integer,
    epsilon: &Rational,
    opts: &SearchOptions,
) -> Option<Integer> {
    let holds = |n: &Integer| evaluate_condition(criterion, index, n, epsilon, opts.precision_bits).holds;
    if holds(start) {
        return Some(start.clone());
    }
    let mut lo = start.clone();
    let mut step = Integer::from(1);
    let hi = loop {
        let cand = Integer::from(start + &step);
        if cand > opts.cap {
            if holds(&opts.cap) {
                break opts.cap.clone();
            }
            return None;
        }
        if holds(&cand) {
            break cand;
        }
        lo = cand;
        step <<= 1;
    };
    let mut hi = hi;
    while Integer::from(&hi - &lo) > 1 {
        let mid = Integer::from(&lo + &hi) >> 1;
        if holds(&mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Some(hi)
}

/// Smallest `n ≥ 1` satisfying every admissibility inequality of the criterion,
/// together with `H₀ = ½·exp(δ·n*)` and the final exponent.
pub fn admissible_n(criterion: Criterion<'_>, epsilon: &Rational, opts: &SearchOptions) -> Result<Admissible> {
    let (nu, delta) = criterion.nu_delta();
    if !delta.is_positive() {
        return Err(Error::CriterionInapplicable {
            delta: delta.lower().to_decimal(12),
        });
    }
    if *epsilon <= 0 {
        return Err(Error::InvalidParams("epsilon must be positive".into()));
    }
    let count = criterion.condition_names().len();
    let mut n = Integer::from(1);
    loop {
        let failing: Vec<usize> = (0..count)
            .filter(|&k| !evaluate_condition(criterion, k, &n, epsilon, opts.precision_bits).holds)
            .collect();
        if failing.is_empty() {
            break;
        }
        let mut next = n.clone();
        for k in failing {
            let found = first_pass_from(criterion, k, &n, epsilon, opts).ok_or_else(|| Error::NoAdmissibleN {
                cap: opts.cap.to_string(),
            })?;
            if found > next {
                next = found;
            }
        }
        n = next;
    }

    let prec = opts.precision_bits;
    let nu = reprec(nu, prec);
    let delta = reprec(delta, prec);
    let eps = Interval::from_rational(epsilon, prec);
    let delta_n = delta.mul(&Interval::from_integer(&n, prec));
    let log_h0 = delta_n.sub(&Interval::ln2(prec));
    let h0 = delta_n.exp().div_i64(2);
    let exponent = nu.div(&delta).add(&eps.div_i64(2)).upper();
    let pred = Integer::from(&n - 1u32);
    let at_predecessor = if pred >= 1 {
        evaluate_conditions(criterion, &pred, epsilon, prec)
    } else {
        Vec::new()
    };
    Ok(Admissible {
        at_n_star: evaluate_conditions(criterion, &n, epsilon, prec),
        at_predecessor,
        h0: h0.upper(),
        log_h0: log_h0.upper(),
        exponent,
        tilde_epsilon: tilde_epsilon(&nu, &delta, &eps).lower(),
        n_star: n,
    })
}

/// Lower estimate `105500·e^{H(α)}·(m−1)²` of the comparison constant in the
/// earlier general measure, rounded down.
pub fn nw_comparison_exponent(m: usize, alpha: &AlphaInput, prec: u32) -> DirectedFloat {
    let h = Interval::from_i64(alpha.height(), prec).exp();
    h.mul_i64(105_500).mul_i64(((m - 1) * (m - 1)) as i64).lower()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lcm_small_values() {
        assert_eq!(lcm_upto(1), 1);
        assert_eq!(lcm_upto(5), 60);
        let folded = (1..=10u64).fold(1u64, |acc, k| {
            let g = gcd(acc, k);
            acc / g * k
        });
        assert_eq!(lcm_upto(10), folded);
        assert_eq!(folded, 2520);
        for (n, d) in lcm_sequence().take(30) {
            assert_eq!(d, lcm_upto(n));
        }
    }

    fn gcd(a: u64, b: u64) -> u64 {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }

    #[test]
    fn envelope_brackets_lcm() {
        for n in [2u64, 3, 10, 100] {
            let env = rosser_schoenfeld_envelope(n, 128).unwrap();
            let d = lcm_upto(n);
            assert!(*env.lower.value() <= d && *env.upper.value() >= d, "n = {n}");
        }
        assert!(rosser_schoenfeld_envelope(1, 128).is_err());
    }

    #[test]
    fn scalers() {
        assert_eq!(integrality_scaler(2, 0), 1);
        assert_eq!(integrality_scaler(2, 1), 16);
        assert_eq!(table_scaler(3, 2), Integer::from(6 * 6).pow(3));
    }

    #[test]
    fn coeff_bound_at_one() {
        let exact = coeff_bound_exact(2, 0, &Rational::from(1));
        assert_eq!(exact, 64);
        let up = coeff_bound(2, 0, &Interval::from_i64(1, 128)).unwrap();
        assert!(*up.value() >= 64);
    }

    #[test]
    fn padic_bound_value() {
        assert_eq!(remainder_bound_padic_value(2, 1, 5, 1), Rational::from((4, 125)));
        assert!(matches!(
            remainder_bound_padic(2, 1, 5, 1),
            Err(Error::NTooSmall { .. })
        ));
        assert!(remainder_bound_padic(2, 2, 5, 1).is_ok());
        assert!(remainder_bound_padic(2, 2, 5, 0).is_err());
    }

    #[test]
    fn remainder_bound_hypothesis_gate() {
        // log(1 + 2) > 1 = m/2 for m = 2
        let l = AlphaInput::new(2, 1).unwrap().log_term(128).unwrap();
        assert!(matches!(
            remainder_bound_arch(2, 3, &l),
            Err(Error::HypothesisViolated(_))
        ));
        let l = AlphaInput::new(1, 10).unwrap().log_term(128).unwrap();
        assert!(remainder_bound_arch(2, 3, &l).is_ok());
    }

    #[test]
    fn alpha_parsing() {
        let a: AlphaInput = "2/20".parse().unwrap();
        assert_eq!((a.c(), a.d()), (1, 10));
        let a: AlphaInput = "3/-7".parse().unwrap();
        assert_eq!((a.c(), a.d()), (-3, 7));
        assert!("0/3".parse::<AlphaInput>().is_err());
        assert!("-4/4".parse::<AlphaInput>().is_err());
        assert!("x".parse::<AlphaInput>().is_err());
        assert_eq!(AlphaInput::new(5, 1).unwrap().valuation(5), 1);
        assert_eq!(AlphaInput::new(1, 10).unwrap().valuation(5), -1);
    }

    #[test]
    fn padic_constants_gate() {
        let a = AlphaInput::new(1, 10).unwrap();
        assert!(matches!(
            constants_padic(2, &a, 5, 128),
            Err(Error::PadicSmallness { .. })
        ));
        assert!(constants_padic(2, &a, 4, 128).is_err());
    }
}
