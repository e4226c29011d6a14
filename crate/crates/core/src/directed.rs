//! Outward-rounded interval arithmetic on MPFR floats.
//!
//! Every closed-form constant is evaluated as an [`Interval`] whose lower end
//! is computed with rounding toward −∞ and upper end toward +∞. Upper-bound
//! pipelines then read off [`Interval::upper`], lower-bound pipelines
//! [`Interval::lower`], each as a [`DirectedFloat`] that remembers its
//! rounding direction.

use std::cmp::Ordering;
use std::fmt;

use rug::float::{Constant, Round};
use rug::{Float, Integer, Rational};
use serde::{Serialize, Serializer};

pub const DEFAULT_PRECISION: u32 = 192;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Rounding {
    Up,
    Down,
}

impl Rounding {
    fn mode(self) -> Round {
        match self {
            Rounding::Up => Round::Up,
            Rounding::Down => Round::Down,
        }
    }
}

/// A binary float together with the direction it was rounded in.
#[derive(Clone, Debug, PartialEq)]
pub struct DirectedFloat {
    value: Float,
    rounding: Rounding,
}

impl DirectedFloat {
    pub fn new(value: Float, rounding: Rounding) -> Self {
        Self { value, rounding }
    }

    pub fn value(&self) -> &Float {
        &self.value
    }

    pub fn rounding(&self) -> Rounding {
        self.rounding
    }

    pub fn precision_bits(&self) -> u32 {
        self.value.prec()
    }

    pub fn to_f64(&self) -> f64 {
        self.value.to_f64_round(self.rounding.mode())
    }

    pub fn is_positive(&self) -> bool {
        self.value.is_sign_positive() && !self.value.is_zero() && !self.value.is_nan()
    }

    /// Decimal rendering rounded in the same direction as the value.
    pub fn to_decimal(&self, digits: usize) -> String {
        if !self.value.is_finite() {
            return self.value.to_string();
        }
        self.value.to_string_radix_round(10, Some(digits), self.rounding.mode())
    }

    pub fn to_repr(&self) -> FloatRepr {
        FloatRepr::of(&self.value, self.rounding)
    }
}

impl fmt::Display for DirectedFloat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_decimal(20))
    }
}

impl Serialize for DirectedFloat {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_repr().serialize(s)
    }
}

/// Bit-exact serialized form: value = mantissa · 2^exponent.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FloatRepr {
    pub mantissa_hex: String,
    pub exponent: i64,
    pub precision_bits: u32,
    pub rounding: Rounding,
    pub decimal: String,
}

impl FloatRepr {
    pub fn of(value: &Float, rounding: Rounding) -> Self {
        let (mantissa_hex, exponent) = match value.to_integer_exp() {
            Some((m, e)) => {
                // strip trailing zero bits so the pair is canonical
                let tz = if m == 0 { 0 } else { m.find_one(0).unwrap_or(0) };
                let m = m >> tz;
                let e = if m == 0 { 0 } else { i64::from(e) + i64::from(tz) };
                (m.to_string_radix(16), e)
            }
            None => (value.to_string(), 0),
        };
        let decimal = if value.is_finite() {
            value.to_string_radix_round(10, Some(24), rounding.mode())
        } else {
            value.to_string()
        };
        Self {
            mantissa_hex,
            exponent,
            precision_bits: value.prec(),
            rounding,
            decimal,
        }
    }
}

/// Closed interval `[lo, hi]` with outward rounding.
#[derive(Clone, Debug, PartialEq)]
pub struct Interval {
    lo: Float,
    hi: Float,
}

fn down<T>(prec: u32, v: T) -> Float
where
    Float: rug::ops::AssignRound<T, Round = Round, Ordering = Ordering>,
{
    Float::with_val_round(prec, v, Round::Down).0
}

fn up<T>(prec: u32, v: T) -> Float
where
    Float: rug::ops::AssignRound<T, Round = Round, Ordering = Ordering>,
{
    Float::with_val_round(prec, v, Round::Up).0
}

fn min_f(a: Float, b: Float) -> Float {
    if b < a {
        b
    } else {
        a
    }
}

fn max_f(a: Float, b: Float) -> Float {
    if b > a {
        b
    } else {
        a
    }
}

impl Interval {
    pub fn from_endpoints(lo: Float, hi: Float) -> Self {
        debug_assert!(lo <= hi, "inverted interval");
        Self { lo, hi }
    }

    pub fn from_rational(q: &Rational, prec: u32) -> Self {
        Self {
            lo: down(prec, q),
            hi: up(prec, q),
        }
    }

    pub fn from_integer(k: &Integer, prec: u32) -> Self {
        Self {
            lo: down(prec, k),
            hi: up(prec, k),
        }
    }

    pub fn from_i64(k: i64, prec: u32) -> Self {
        Self {
            lo: down(prec, k),
            hi: up(prec, k),
        }
    }

    pub fn ln2(prec: u32) -> Self {
        Self {
            lo: down(prec, Constant::Log2),
            hi: up(prec, Constant::Log2),
        }
    }

    pub fn prec(&self) -> u32 {
        self.lo.prec().max(self.hi.prec())
    }

    pub fn lo(&self) -> &Float {
        &self.lo
    }

    pub fn hi(&self) -> &Float {
        &self.hi
    }

    pub fn lower(&self) -> DirectedFloat {
        DirectedFloat::new(self.lo.clone(), Rounding::Down)
    }

    pub fn upper(&self) -> DirectedFloat {
        DirectedFloat::new(self.hi.clone(), Rounding::Up)
    }

    pub fn contains_zero(&self) -> bool {
        self.lo <= 0 && self.hi >= 0
    }

    pub fn is_positive(&self) -> bool {
        self.lo > 0
    }

    pub fn is_negative(&self) -> bool {
        self.hi < 0
    }

    pub fn contains_rational(&self, q: &Rational) -> bool {
        self.lo <= *q && self.hi >= *q
    }

    /// Width divided by the smallest magnitude in the interval; infinite if
    /// the interval touches zero.
    pub fn relative_width(&self) -> f64 {
        if self.contains_zero() {
            return f64::INFINITY;
        }
        let prec = self.prec();
        let width = up(prec, &self.hi - &self.lo);
        let mag = min_f(down(prec, self.lo.abs_ref()), down(prec, self.hi.abs_ref()));
        up(prec, &width / &mag).to_f64_round(Round::Up)
    }

    /// `true` if the interval excludes zero and its width is at most
    /// `2^log2_tol` times its smallest magnitude.
    pub fn relative_width_within(&self, log2_tol: i32) -> bool {
        if self.contains_zero() {
            return false;
        }
        let prec = self.prec();
        let width = up(prec, &self.hi - &self.lo);
        let mag = min_f(down(prec, self.lo.abs_ref()), down(prec, self.hi.abs_ref()));
        let allowed = down(prec, &mag * &Float::with_val(prec, Float::i_exp(1, log2_tol)));
        width <= allowed
    }

    pub fn neg(&self) -> Self {
        Self {
            lo: Float::with_val(self.hi.prec(), -&self.hi),
            hi: Float::with_val(self.lo.prec(), -&self.lo),
        }
    }

    pub fn abs(&self) -> Self {
        if self.lo >= 0 {
            self.clone()
        } else if self.hi <= 0 {
            self.neg()
        } else {
            let prec = self.prec();
            let hi = max_f(
                Float::with_val(prec, self.lo.abs_ref()),
                Float::with_val(prec, self.hi.abs_ref()),
            );
            Self {
                lo: Float::with_val(prec, 0),
                hi,
            }
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let prec = self.prec().max(rhs.prec());
        Self {
            lo: down(prec, &self.lo + &rhs.lo),
            hi: up(prec, &self.hi + &rhs.hi),
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let prec = self.prec().max(rhs.prec());
        Self {
            lo: down(prec, &self.lo - &rhs.hi),
            hi: up(prec, &self.hi - &rhs.lo),
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let prec = self.prec().max(rhs.prec());
        let pairs = [
            (&self.lo, &rhs.lo),
            (&self.lo, &rhs.hi),
            (&self.hi, &rhs.lo),
            (&self.hi, &rhs.hi),
        ];
        let lo = pairs.iter().map(|(a, b)| down(prec, *a * *b)).reduce(min_f).unwrap();
        let hi = pairs.iter().map(|(a, b)| up(prec, *a * *b)).reduce(max_f).unwrap();
        Self { lo, hi }
    }

    /// Panics if `rhs` contains zero.
    pub fn div(&self, rhs: &Self) -> Self {
        assert!(!rhs.contains_zero(), "interval division by an interval containing zero");
        let prec = self.prec().max(rhs.prec());
        let pairs = [
            (&self.lo, &rhs.lo),
            (&self.lo, &rhs.hi),
            (&self.hi, &rhs.lo),
            (&self.hi, &rhs.hi),
        ];
        let lo = pairs.iter().map(|(a, b)| down(prec, *a / *b)).reduce(min_f).unwrap();
        let hi = pairs.iter().map(|(a, b)| up(prec, *a / *b)).reduce(max_f).unwrap();
        Self { lo, hi }
    }

    pub fn mul_i64(&self, k: i64) -> Self {
        self.mul(&Self::from_i64(k, self.prec()))
    }

    pub fn div_i64(&self, k: i64) -> Self {
        self.div(&Self::from_i64(k, self.prec()))
    }

    pub fn pow_u(&self, e: u32) -> Self {
        let prec = self.prec();
        let mut acc = Self::from_i64(1, prec);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Natural log; panics unless the interval is strictly positive.
    pub fn ln(&self) -> Self {
        assert!(self.is_positive(), "log of a non-positive interval");
        let prec = self.prec();
        Self {
            lo: down(prec, self.lo.ln_ref()),
            hi: up(prec, self.hi.ln_ref()),
        }
    }

    pub fn exp(&self) -> Self {
        let prec = self.prec();
        Self {
            lo: down(prec, self.lo.exp_ref()),
            hi: up(prec, self.hi.exp_ref()),
        }
    }

    /// Square root of the nonnegative part.
    pub fn sqrt(&self) -> Self {
        assert!(self.hi >= 0, "sqrt of a negative interval");
        let prec = self.prec();
        let lo = if self.lo > 0 {
            down(prec, self.lo.sqrt_ref())
        } else {
            Float::with_val(prec, 0)
        };
        Self {
            lo,
            hi: up(prec, self.hi.sqrt_ref()),
        }
    }

    /// `true` if the whole interval lies strictly below `rhs`.
    pub fn certainly_lt(&self, rhs: &Self) -> bool {
        self.hi < rhs.lo
    }

    pub fn certainly_le(&self, rhs: &Self) -> bool {
        self.hi <= rhs.lo
    }

    pub fn midpoint_f64(&self) -> f64 {
        let prec = self.prec();
        let s = Float::with_val(prec + 1, &self.lo + &self.hi);
        (s / 2u32).to_f64()
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}, {}]",
            self.lo.to_string_radix_round(10, Some(20), Round::Down),
            self.hi.to_string_radix_round(10, Some(20), Round::Up)
        )
    }
}

/// Serialized interval: both ends in bit-exact form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IntervalRepr {
    pub lo: FloatRepr,
    pub hi: FloatRepr,
}

impl From<&Interval> for IntervalRepr {
    fn from(iv: &Interval) -> Self {
        Self {
            lo: FloatRepr::of(&iv.lo, Rounding::Down),
            hi: FloatRepr::of(&iv.hi, Rounding::Up),
        }
    }
}
