//! Exact arithmetic substrate: dense polynomials and truncated power series
//! over the rationals, plus fraction-free elimination for kernels, ranks and
//! linear solves.
//!
//! Rationals are `rug::Rational`, which is always kept in lowest terms with a
//! positive denominator.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use rug::ops::Pow;
use rug::{Integer, Rational};

use crate::error::{Error, Result};

pub type ExactRational = Rational;

/// Dense polynomial, `coeffs[k]` is the coefficient of `z^k`.
///
/// The highest stored coefficient is never zero; the zero polynomial has no
/// coefficients at all.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Polynomial {
    coeffs: Vec<Rational>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn constant(c: impl Into<Rational>) -> Self {
        Self::from_coeffs(vec![c.into()])
    }

    /// `c * z^k`
    pub fn monomial(c: impl Into<Rational>, k: usize) -> Self {
        let mut coeffs = vec![Rational::new(); k + 1];
        coeffs[k] = c.into();
        Self::from_coeffs(coeffs)
    }

    pub fn from_coeffs(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.cmp0().is_eq()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| Rational::from(c)).collect())
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Rational> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    /// Index of the lowest nonzero coefficient.
    pub fn order(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| c.cmp0().is_ne())
    }

    pub fn scale(&self, s: &Rational) -> Self {
        if s.cmp0().is_eq() {
            return Self::zero();
        }
        Self {
            coeffs: self.coeffs.iter().map(|c| Rational::from(c * s)).collect(),
        }
    }

    /// Horner evaluation.
    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::new();
        for c in self.coeffs.iter().rev() {
            acc *= x;
            acc += c;
        }
        acc
    }

    /// `(x + shift)^k` expanded in powers of `x`.
    pub fn shifted_power(shift: &Rational, k: u32) -> Self {
        let coeffs = (0..=k)
            .map(|t| {
                let binom = Integer::from(Integer::binomial_u(k, t));
                let pw = Rational::from(shift.pow(k - t));
                Rational::from(binom) * pw
            })
            .collect();
        Self::from_coeffs(coeffs)
    }

    /// Quotient and remainder of Euclidean division. Panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        let dd = divisor.degree().expect("polynomial division by zero");
        let lead = divisor.leading().unwrap().clone();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut quot = vec![Rational::new(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = Rational::from(&rem[k + dd] / &lead);
            if c.cmp0().is_ne() {
                for (t, dc) in divisor.coeffs.iter().enumerate() {
                    rem[k + t] -= Rational::from(&c * dc);
                }
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (Self::from_coeffs(quot), Self::from_coeffs(rem))
    }

    /// Division known to be exact; errors if a remainder is left.
    pub fn div_exact(&self, divisor: &Self) -> Result<Self> {
        let (q, r) = self.div_rem(divisor);
        if r.is_zero() {
            Ok(q)
        } else {
            Err(Error::Internal("inexact polynomial division".into()))
        }
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.cmp0().is_eq() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})*z")?,
                _ => write!(f, "({c})*z^{k}")?,
            }
        }
        Ok(())
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..len)
            .map(|k| match (self.coeffs.get(k), rhs.coeffs.get(k)) {
                (Some(a), Some(b)) => Rational::from(a + b),
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            })
            .collect();
        Polynomial::from_coeffs(coeffs)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            coeffs: self.coeffs.iter().map(|c| Rational::from(-c)).collect(),
        }
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self + &(-rhs)
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![Rational::new(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.cmp0().is_eq() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += Rational::from(a * b);
            }
        }
        Polynomial::from_coeffs(out)
    }
}

/// Power series truncated after `z^T`: exactly `T + 1` stored coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Series {
    coeffs: Vec<Rational>,
}

impl Series {
    pub fn zero(truncation: usize) -> Self {
        Self {
            coeffs: vec![Rational::new(); truncation + 1],
        }
    }

    pub fn one(truncation: usize) -> Self {
        let mut s = Self::zero(truncation);
        s.coeffs[0] = Rational::from(1);
        s
    }

    /// Pads with zeros or truncates so that the result has order `truncation`.
    pub fn from_coeffs(mut coeffs: Vec<Rational>, truncation: usize) -> Self {
        coeffs.resize(truncation + 1, Rational::new());
        Self { coeffs }
    }

    pub fn from_polynomial(p: &Polynomial, truncation: usize) -> Self {
        let coeffs = p.coeffs().iter().take(truncation + 1).cloned().collect();
        Self::from_coeffs(coeffs, truncation)
    }

    pub fn truncation(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> &Rational {
        &self.coeffs[k]
    }

    /// Index of the first nonzero coefficient, `None` if every stored
    /// coefficient vanishes.
    pub fn order(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| c.cmp0().is_ne())
    }

    pub fn truncate(&self, truncation: usize) -> Self {
        Self::from_coeffs(self.coeffs.iter().take(truncation + 1).cloned().collect(), truncation)
    }

    pub fn scale(&self, s: &Rational) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|c| Rational::from(c * s)).collect(),
        }
    }

    /// Cauchy product at the smaller of the two truncation orders.
    pub fn mul(&self, rhs: &Series) -> Series {
        let t = self.truncation().min(rhs.truncation());
        let mut out = vec![Rational::new(); t + 1];
        for (i, a) in self.coeffs.iter().take(t + 1).enumerate() {
            if a.cmp0().is_eq() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().take(t + 1 - i).enumerate() {
                out[i + j] += Rational::from(a * b);
            }
        }
        Series { coeffs: out }
    }

    pub fn mul_polynomial(&self, p: &Polynomial) -> Series {
        self.mul(&Series::from_polynomial(p, self.truncation()))
    }

    pub fn add(&self, rhs: &Series) -> Series {
        let t = self.truncation().min(rhs.truncation());
        Series {
            coeffs: (0..=t)
                .map(|k| Rational::from(&self.coeffs[k] + &rhs.coeffs[k]))
                .collect(),
        }
    }
}

/// `log(1+z) = Σ (-1)^{k+1} z^k / k`, truncated after `z^T`.
fn log1p_series(truncation: usize) -> Series {
    let mut coeffs = vec![Rational::new(); truncation + 1];
    for (k, c) in coeffs.iter_mut().enumerate().skip(1) {
        let sign = if k % 2 == 1 { 1 } else { -1 };
        *c = Rational::from((sign, k as i64));
    }
    Series { coeffs }
}

/// `log^j(1+z)` modulo `z^{T+1}`; `j = 0` gives the constant series 1.
pub fn log_power_series(j: usize, truncation: usize) -> Series {
    log_power_table(j, truncation).pop().unwrap()
}

/// `[log^0(1+z), …, log^max_j(1+z)]`, each truncated after `z^T`.
pub fn log_power_table(max_j: usize, truncation: usize) -> Vec<Series> {
    let base = log1p_series(truncation);
    let mut table = Vec::with_capacity(max_j + 1);
    table.push(Series::one(truncation));
    for j in 1..=max_j {
        let next = if j == 1 { base.clone() } else { table[j - 1].mul(&base) };
        table.push(next);
    }
    table
}

/// Row-major dense matrix over the rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: vec![Rational::new(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::from(1));
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix rows");
        Self {
            rows: r,
            cols: c,
            entries: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_ints(rows: &[&[i64]]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| Rational::from(v)).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Rational {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Rational) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Rational] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|r| {
                let mut acc = Rational::new();
                for (a, x) in self.row(r).iter().zip(v) {
                    acc += Rational::from(a * x);
                }
                acc
            })
            .collect()
    }
}

/// Integer row-echelon form produced by Bareiss elimination.
///
/// Each input row is first scaled by the lcm of its denominators, which leaves
/// kernel and rank unchanged.
#[derive(Clone, Debug)]
pub struct Echelon {
    rows: Vec<Vec<Integer>>,
    pivots: Vec<usize>,
    cols: usize,
    swaps: usize,
}

impl Echelon {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Pivot column of each nonzero echelon row, increasing.
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn free_columns(&self) -> Vec<usize> {
        let mut it = self.pivots.iter().peekable();
        (0..self.cols)
            .filter(|c| {
                if it.peek() == Some(&c) {
                    it.next();
                    false
                } else {
                    true
                }
            })
            .collect()
    }

    /// Solves the echelon system with the given free-variable assignment.
    fn back_substitute(&self, mut x: Vec<Rational>, rhs_col: Option<usize>) -> Vec<Rational> {
        for (k, &pc) in self.pivots.iter().enumerate().rev() {
            let row = &self.rows[k];
            let mut acc = match rhs_col {
                Some(c) => Rational::from(&row[c]),
                None => Rational::new(),
            };
            for j in pc + 1..self.cols {
                if row[j].cmp0().is_ne() && x[j].cmp0().is_ne() {
                    acc -= Rational::from(&x[j] * &row[j]);
                }
            }
            x[pc] = acc / &row[pc];
        }
        x
    }
}

fn integer_rows(m: &RationalMatrix) -> Vec<Vec<Integer>> {
    (0..m.rows())
        .map(|r| {
            let row = m.row(r);
            let mut scale = Integer::from(1);
            for v in row {
                scale.lcm_mut(v.denom());
            }
            row.iter()
                .map(|v| v.numer() * Integer::from(&scale / v.denom()))
                .collect()
        })
        .collect()
}

/// Fraction-free (Bareiss) forward elimination on the first `cols` columns.
/// The pivot is the first nonzero entry at or below the current row.
fn bareiss(mut a: Vec<Vec<Integer>>, cols: usize) -> (Vec<Vec<Integer>>, Vec<usize>, usize) {
    let nrows = a.len();
    let width = a.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut prev = Integer::from(1);
    let mut k = 0;
    let mut swaps = 0;
    for c in 0..cols {
        if k == nrows {
            break;
        }
        let Some(p) = (k..nrows).find(|&r| a[r][c].cmp0().is_ne()) else {
            continue;
        };
        if p != k {
            a.swap(p, k);
            swaps += 1;
        }
        let (top, rest) = a.split_at_mut(k + 1);
        let pivot_row = &top[k];
        for row in rest.iter_mut() {
            for j in c + 1..width {
                let t = Integer::from(&pivot_row[c] * &row[j]) - Integer::from(&row[c] * &pivot_row[j]);
                debug_assert!(t.is_divisible(&prev));
                row[j] = t.div_exact(&prev);
            }
            row[c] = Integer::new();
        }
        prev = a[k][c].clone();
        pivots.push(c);
        k += 1;
    }
    (a, pivots, swaps)
}

pub fn echelon(m: &RationalMatrix) -> Echelon {
    let (rows, pivots, swaps) = bareiss(integer_rows(m), m.cols());
    Echelon {
        rows,
        pivots,
        cols: m.cols(),
        swaps,
    }
}

pub fn rank(m: &RationalMatrix) -> usize {
    echelon(m).rank()
}

/// Scales `v` so that its first nonzero coordinate is 1.
pub fn normalize_leading(v: &mut [Rational]) {
    if let Some(lead) = v.iter().find(|x| x.cmp0().is_ne()).cloned() {
        for x in v.iter_mut() {
            *x /= &lead;
        }
    }
}

/// Basis of the right kernel of `m`, one vector per free column in increasing
/// column order, each normalized so its first nonzero coordinate is 1.
pub fn nullspace(m: &RationalMatrix) -> Vec<Vec<Rational>> {
    let e = echelon(m);
    e.free_columns()
        .into_iter()
        .map(|f| {
            let mut x = vec![Rational::new(); m.cols()];
            x[f] = Rational::from(1);
            let mut v = e.back_substitute(x, None);
            normalize_leading(&mut v);
            v
        })
        .collect()
}

/// One solution of `m x = b` (free variables set to zero), or `None` if the
/// system is inconsistent.
pub fn solve(m: &RationalMatrix, b: &[Rational]) -> Option<Vec<Rational>> {
    assert_eq!(b.len(), m.rows());
    let rows = (0..m.rows())
        .map(|r| {
            let mut row = m.row(r).to_vec();
            row.push(b[r].clone());
            row
        })
        .collect();
    let aug = RationalMatrix::from_rows(rows);
    let (rows, pivots, swaps) = bareiss(integer_rows(&aug), m.cols());
    let e = Echelon {
        rows,
        pivots,
        cols: m.cols(),
        swaps,
    };
    // a nonzero right-hand side below the last pivot row means no solution
    if e.rows[e.rank()..].iter().any(|row| row[m.cols()].cmp0().is_ne()) {
        return None;
    }
    Some(e.back_substitute(vec![Rational::new(); m.cols()], Some(m.cols())))
}

/// Exact determinant of a square rational matrix.
pub fn determinant(m: &RationalMatrix) -> Rational {
    assert_eq!(m.rows(), m.cols(), "determinant of a non-square matrix");
    let n = m.rows();
    if n == 0 {
        return Rational::from(1);
    }
    let mut scale = Rational::from(1);
    for r in 0..n {
        let mut l = Integer::from(1);
        for v in m.row(r) {
            l.lcm_mut(v.denom());
        }
        scale *= Rational::from(l);
    }
    let e = echelon(m);
    if e.rank() < n {
        return Rational::new();
    }
    let mut det = Rational::from(&e.rows[n - 1][n - 1]) / scale;
    if e.swaps % 2 == 1 {
        det = -det;
    }
    det
}

/// The `(r+1) × N` coefficient matrix whose kernel parametrizes weight-`n`
/// approximants of `f` vanishing to order `r+1`. Column blocks follow the
/// series order; within block `j` column `k` holds the coefficient of `z^k`
/// in the `j`-th polynomial.
pub fn pade_matrix(f: &[Series], n: &[usize], r: usize) -> RationalMatrix {
    assert_eq!(f.len(), n.len());
    let cols: usize = n.iter().map(|nj| nj + 1).sum();
    let mut m = RationalMatrix::zeros(r + 1, cols);
    let mut offset = 0;
    for (fj, &nj) in f.iter().zip(n) {
        assert!(fj.truncation() >= r, "series truncated below row {r}");
        for row in 0..=r {
            for k in 0..=nj.min(row) {
                m.set(row, offset + k, fj.coeff(row - k).clone());
            }
        }
        offset += nj + 1;
    }
    m
}

/// `Σ_j A_j f_j` truncated at the common truncation order of `f`.
pub fn combine(polys: &[Polynomial], f: &[Series]) -> Series {
    let t = f.iter().map(Series::truncation).min().unwrap_or(0);
    polys
        .iter()
        .zip(f)
        .fold(Series::zero(t), |acc, (p, s)| acc.add(&s.mul_polynomial(p)))
}

/// A weight-`n` approximant family for `f`, taken from the first kernel
/// basis vector of the order-`N-1` coefficient matrix.
pub fn pade_from_kernel(f: &[Series], n: &[usize]) -> Result<Vec<Polynomial>> {
    let big_n: usize = n.iter().map(|nj| nj + 1).sum();
    if big_n < 2 {
        // no conditions to impose: (1, 0, …) already qualifies
        let mut out = vec![Polynomial::zero(); n.len()];
        if let Some(first) = out.first_mut() {
            *first = Polynomial::constant(1);
        }
        return Ok(out);
    }
    let m = pade_matrix(f, n, big_n - 2);
    let basis = nullspace(&m);
    let v = basis.into_iter().next().ok_or(Error::EmptyKernel)?;
    let mut out = Vec::with_capacity(n.len());
    let mut offset = 0;
    for &nj in n {
        out.push(Polynomial::from_coeffs(v[offset..offset + nj + 1].to_vec()));
        offset += nj + 1;
    }
    Ok(out)
}

/// Returns the scalar `c` with `b = c·a` coordinate-wise, if one exists and
/// is nonzero.
pub fn proportionality(a: &[Polynomial], b: &[Polynomial]) -> Option<Rational> {
    if a.len() != b.len() {
        return None;
    }
    let (pa, pb) = a.iter().zip(b).find(|(pa, _)| !pa.is_zero())?;
    let k = pa.order().unwrap();
    let c = Rational::from(&pb.coeff(k) / &pa.coeffs()[k]);
    if c.cmp0().is_eq() {
        return None;
    }
    a.iter().zip(b).all(|(pa, pb)| pa.scale(&c) == *pb).then_some(c)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::from((n, d))
    }

    #[test]
    fn log_powers_small_cases() {
        assert_eq!(log_power_series(0, 3).coeffs(), &[q(1, 1), q(0, 1), q(0, 1), q(0, 1)]);
        assert_eq!(log_power_series(1, 3).coeffs(), &[q(0, 1), q(1, 1), q(-1, 2), q(1, 3)]);
        // schoolbook square of [0, 1, -1/2, 1/3, -1/4]
        let base = [q(0, 1), q(1, 1), q(-1, 2), q(1, 3), q(-1, 4)];
        let mut sq = vec![Rational::new(); 5];
        for i in 0..5 {
            for j in 0..5 - i {
                sq[i + j] += Rational::from(&base[i] * &base[j]);
            }
        }
        assert_eq!(sq, vec![q(0, 1), q(0, 1), q(1, 1), q(-1, 1), q(11, 12)]);
        assert_eq!(log_power_series(2, 4).coeffs(), sq.as_slice());
    }

    #[test]
    fn nullspace_trivial_cases() {
        let z = RationalMatrix::zeros(1, 2);
        assert_eq!(nullspace(&z).len(), 2);
        assert!(nullspace(&RationalMatrix::identity(3)).is_empty());
    }

    #[test]
    fn nullspace_vectors_are_in_kernel() {
        let m = RationalMatrix::from_ints(&[&[1, 2, 3, 4], &[2, 4, 6, 8], &[0, 1, -1, 2]]);
        let basis = nullspace(&m);
        assert_eq!(basis.len() + rank(&m), 4);
        for v in &basis {
            assert!(m.mul_vec(v).iter().all(|x| x.cmp0().is_eq()));
        }
    }

    #[test]
    fn kernel_of_log_system_is_one_dimensional() {
        let f = log_power_table(1, 8);
        let m = pade_matrix(&f, &[1, 1], 2);
        assert_eq!(m.rows(), 3);
        assert_eq!(nullspace(&m).len(), 1);
    }

    #[test]
    fn single_series_approximant_is_z_squared() {
        let f = vec![Series::one(6)];
        let a = pade_from_kernel(&f, &[2]).unwrap();
        assert_eq!(a, vec![Polynomial::monomial(1, 2)]);
    }

    #[test]
    fn log_approximants_match_hand_solutions() {
        let f = log_power_table(1, 10);
        let a = pade_from_kernel(&f, &[1, 0]).unwrap();
        let expected = [Polynomial::from_ints(&[0, 1]), Polynomial::from_ints(&[-1])];
        assert!(proportionality(&expected, &a).is_some());

        let a = pade_from_kernel(&f, &[1, 1]).unwrap();
        let expected = [Polynomial::from_ints(&[0, -2]), Polynomial::from_ints(&[2, 1])];
        assert!(proportionality(&expected, &a).is_some());
    }

    #[test]
    fn determinant_and_solve() {
        let m = RationalMatrix::from_rows(vec![
            vec![q(0, 1), q(1, 2), q(1, 1)],
            vec![q(2, 3), q(1, 1), q(0, 1)],
            vec![q(1, 1), q(0, 1), q(3, 1)],
        ]);
        // cofactor expansion along the first row
        let expected = q(-1, 2) * (q(2, 1) - q(0, 1)) + q(1, 1) * (q(0, 1) - q(1, 1));
        assert_eq!(determinant(&m), expected);
        let b = vec![q(1, 1), q(2, 1), q(3, 1)];
        let x = solve(&m, &b).unwrap();
        assert_eq!(m.mul_vec(&x), b);
        let singular = RationalMatrix::from_ints(&[&[1, 1], &[1, 1]]);
        assert_eq!(determinant(&singular), Rational::new());
        assert!(solve(&singular, &[q(1, 1), q(2, 1)]).is_none());
    }

    #[test]
    fn polynomial_division() {
        let a = Polynomial::from_ints(&[-1, 0, 1]);
        let b = Polynomial::from_ints(&[-1, 1]);
        assert_eq!(a.div_exact(&b).unwrap(), Polynomial::from_ints(&[1, 1]));
        let (qt, r) = Polynomial::from_ints(&[1, 0, 1]).div_rem(&b);
        assert_eq!(&(&qt * &b) + &r, Polynomial::from_ints(&[1, 0, 1]));
        assert_eq!(r, Polynomial::from_ints(&[2]));
    }

    #[test]
    fn shifted_power_expands_binomially() {
        let p = Polynomial::shifted_power(&q(1, 1), 3);
        assert_eq!(p, Polynomial::from_ints(&[1, 3, 3, 1]));
    }
}
