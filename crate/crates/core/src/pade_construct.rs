//! Explicit Hermite–Padé approximants of `1, log(1+z), …, log^{m-1}(1+z)`.
//!
//! For fixed `(m, n)` and each family `i ∈ 1..=m` the construction starts from
//! the partial-fraction expansion of
//!
//! ```text
//! 1 / Q_i(x),   Q_i(x) = (x (x-1) … (x-n))^m · (x-n-1)^i
//! ```
//!
//! and turns its coefficients `a_{h,j}` into polynomials
//! `A_{i,j}(z) = Σ_h a_{h,j+1} (1+z)^h / j!`. The remainder
//! `R_i = Σ_j A_{i,j}(z) log^j(1+z)` vanishes to order exactly `m(n+1)+i-1`
//! with leading coefficient `1/(m(n+1)+i-1)!`.

use rayon::prelude::*;
use rug::ops::Pow;
use rug::{Integer, Rational};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::report::rational_string;
use crate::series_kernel::{self, log_power_table, pade_matrix, Polynomial, RationalMatrix, Series};

/// Extra series terms kept beyond the highest order that is asserted.
pub const TRUNCATION_GUARD: usize = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ConstructionParams {
    m: usize,
    n: usize,
}

impl ConstructionParams {
    pub fn new(m: usize, n: usize) -> Result<Self> {
        if m < 2 {
            return Err(Error::InvalidParams(format!("m must be at least 2, got {m}")));
        }
        Ok(Self { m, n })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    fn check_family(&self, i: usize) -> Result<()> {
        if (1..=self.m).contains(&i) {
            Ok(())
        } else {
            Err(Error::InvalidParams(format!("family index {i} outside 1..={}", self.m)))
        }
    }

    /// Weight vector of family `i`: `n+1` in the first `i` slots, `n` after.
    pub fn weight(&self, i: usize) -> Vec<usize> {
        (0..self.m).map(|j| if j < i { self.n + 1 } else { self.n }).collect()
    }

    /// Multiplicity of the pole `h` in `Q_i`.
    pub fn multiplicity(&self, i: usize, h: usize) -> usize {
        if h <= self.n {
            self.m
        } else if h == self.n + 1 {
            i
        } else {
            0
        }
    }

    /// `m(n+1) + i - 1`, the exact vanishing order of `R_i`.
    pub fn remainder_order(&self, i: usize) -> usize {
        self.m * (self.n + 1) + i - 1
    }

    /// `m(n+1) + m + 4`: enough terms to certify every family's order and
    /// leading coefficient.
    pub fn truncation(&self) -> usize {
        self.m * (self.n + 1) + self.m + TRUNCATION_GUARD
    }
}

fn linear_factor(h: usize) -> Polynomial {
    Polynomial::from_coeffs(vec![Rational::from(-(h as i64)), Rational::from(1)])
}

fn poly_pow(p: &Polynomial, e: usize) -> Polynomial {
    (0..e).fold(Polynomial::constant(1), |acc, _| &acc * p)
}

/// `Q_i(x)`.
pub fn q_polynomial(params: &ConstructionParams, i: usize) -> Polynomial {
    (0..=params.n + 1).fold(Polynomial::constant(1), |acc, h| {
        &acc * &poly_pow(&linear_factor(h), params.multiplicity(i, h))
    })
}

/// Coefficients `a_{h,j}` of `1/Q_i(x) = Σ_{h,j} a_{h,j} / (x-h)^j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartialFractionTable {
    params: ConstructionParams,
    family: usize,
    // values[h][j-1]
    values: Vec<Vec<Rational>>,
}

impl PartialFractionTable {
    pub fn family(&self) -> usize {
        self.family
    }

    pub fn params(&self) -> &ConstructionParams {
        &self.params
    }

    /// `a_{h,j}` for `0 ≤ h ≤ n+1`, `1 ≤ j ≤ m`; zero above the pole's multiplicity.
    pub fn get(&self, h: usize, j: usize) -> &Rational {
        &self.values[h][j - 1]
    }

    pub fn rows(&self) -> &[Vec<Rational>] {
        &self.values
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, &Rational)> {
        self.values
            .iter()
            .enumerate()
            .flat_map(|(h, row)| row.iter().enumerate().map(move |(j, v)| (h, j + 1, v)))
    }

    /// Adds `delta` to one coefficient. Only used to exercise the checks.
    pub fn perturb(&mut self, h: usize, j: usize, delta: &Rational) {
        self.values[h][j - 1] += delta;
    }

    /// `Σ_{h,j} a_{h,j} Q_i(x)/(x-h)^j`, which must equal 1.
    pub fn cleared_sum(&self) -> Polynomial {
        let cols = cofactor_columns(&self.params, self.family);
        cols.iter()
            .fold(Polynomial::zero(), |acc, (h, j, p)| &acc + &p.scale(self.get(*h, *j)))
    }

    pub fn reconstructs(&self) -> bool {
        self.cleared_sum() == Polynomial::constant(1)
    }
}

/// `(h, j, Q_i(x)/(x-h)^j)` for every unknown of the partial-fraction system.
fn cofactor_columns(params: &ConstructionParams, i: usize) -> Vec<(usize, usize, Polynomial)> {
    let poles = params.n + 2;
    let mut out = Vec::new();
    for h in 0..poles {
        let mult = params.multiplicity(i, h);
        let others = (0..poles).filter(|&g| g != h).fold(Polynomial::constant(1), |acc, g| {
            &acc * &poly_pow(&linear_factor(g), params.multiplicity(i, g))
        });
        let factor = linear_factor(h);
        // others·(x-h)^{mult-j}, built from j = mult downwards
        let mut p = others;
        let mut by_j = vec![Polynomial::zero(); mult + 1];
        for j in (1..=mult).rev() {
            by_j[j] = p.clone();
            p = &p * &factor;
        }
        for (j, poly) in by_j.into_iter().enumerate().skip(1) {
            out.push((h, j, poly));
        }
    }
    out
}

/// Solves the cleared-denominator identity `Σ a_{h,j} Q_i/(x-h)^j = 1` as a
/// square linear system over ℚ.
pub fn partial_fractions(params: &ConstructionParams, i: usize) -> Result<PartialFractionTable> {
    params.check_family(i)?;
    let cols = cofactor_columns(params, i);
    let dim = cols.len();
    let mut mat = RationalMatrix::zeros(dim, dim);
    for (c, (_, _, p)) in cols.iter().enumerate() {
        for (r, v) in p.coeffs().iter().enumerate() {
            mat.set(r, c, v.clone());
        }
    }
    let mut rhs = vec![Rational::new(); dim];
    rhs[0] = Rational::from(1);
    let sol = series_kernel::solve(&mat, &rhs)
        .ok_or_else(|| Error::Internal("partial-fraction system is singular".into()))?;
    let mut values = vec![vec![Rational::new(); params.m]; params.n + 2];
    for ((h, j, _), v) in cols.iter().zip(sol) {
        values[*h][*j - 1] = v;
    }
    Ok(PartialFractionTable {
        params: *params,
        family: i,
        values,
    })
}

/// Truncated series of `(1 + s·u)^{-mult}` up to `u^order`.
fn inverse_power_series(s: &Rational, mult: usize, order: usize) -> Series {
    let coeffs = (0..=order)
        .map(|k| {
            let binom = Integer::from(Integer::binomial_u((mult + k - 1) as u32, k as u32));
            let pw = (-s.clone()).pow(k as i32);
            Rational::from(binom) * pw
        })
        .collect();
    Series::from_coeffs(coeffs, order)
}

/// Expansion coefficients `c_0 … c_{m-1}` of
///
/// ```text
/// Π_{δ=1}^{λ} (1 + d t/δ)^{-m} · Π_{ν=1}^{n-λ} (1 - d t/ν)^{-m} · (1 - d t/(n+1-λ))^{-i}
/// ```
///
/// with `d = lcm(1, …, n+1)`, for a pole `0 ≤ λ ≤ n`. All of them are integers.
pub fn scaled_local_coefficients(params: &ConstructionParams, i: usize, lambda: usize) -> Vec<Rational> {
    let (m, n) = (params.m, params.n);
    let order = m - 1;
    let d = Rational::from(crate::measure_bounds::lcm_upto(n as u64 + 1));
    let mut acc = Series::one(order);
    for delta in 1..=lambda {
        let s = &d / Rational::from(delta as i64);
        acc = acc.mul(&inverse_power_series(&s, m, order));
    }
    for nu in 1..=n - lambda {
        let s = -(&d / Rational::from(nu as i64));
        acc = acc.mul(&inverse_power_series(&s, m, order));
    }
    let s = -(&d / Rational::from((n + 1 - lambda) as i64));
    acc = acc.mul(&inverse_power_series(&s, i, order));
    acc.coeffs().to_vec()
}

fn factorial(k: usize) -> Integer {
    Integer::from(Integer::factorial(k as u32))
}

/// Partial-fraction coefficients from local Laurent expansions at each pole,
/// independent of the linear-system route.
///
/// For `λ ≤ n` the coefficient is assembled as
/// `(-1)^{(n-λ)m+i} / (λ!^m (n-λ)!^m (n+1-λ)^i) · d^{j-m} · c_{m-j}`
/// with the integer coefficients of [`scaled_local_coefficients`]. The last
/// pole `n+1` is expanded directly.
pub fn partial_fractions_local(params: &ConstructionParams, i: usize) -> Result<PartialFractionTable> {
    params.check_family(i)?;
    let (m, n) = (params.m, params.n);
    let d = Rational::from(crate::measure_bounds::lcm_upto(n as u64 + 1));
    let mut values = vec![vec![Rational::new(); m]; n + 2];
    for (lambda, row) in values.iter_mut().enumerate().take(n + 1) {
        let c = scaled_local_coefficients(params, i, lambda);
        let sign = if ((n - lambda) * m + i).is_multiple_of(2) {
            1
        } else {
            -1
        };
        let denom = factorial(lambda).pow(m as u32)
            * factorial(n - lambda).pow(m as u32)
            * Integer::from(n + 1 - lambda).pow(i as u32);
        let prefactor = Rational::from((Integer::from(sign), denom));
        for j in 1..=m {
            let dpow = Rational::from((&d).pow(j as i32 - m as i32));
            row[j - 1] = Rational::from(&prefactor * &dpow) * &c[m - j];
        }
    }
    // u = x - (n+1): 1/Q = u^{-i} Π_h (n+1-h)^{-m} (1 + u/(n+1-h))^{-m}
    let order = i - 1;
    let mut acc = Series::one(order);
    let mut scale = Rational::from(1);
    for h in 0..=n {
        let gap = Rational::from((n + 1 - h) as i64);
        scale /= Rational::from((&gap).pow(m as i32));
        acc = acc.mul(&inverse_power_series(&Rational::from(gap.recip_ref()), m, order));
    }
    for j in 1..=i {
        values[n + 1][j - 1] = Rational::from(acc.coeff(i - j) * &scale);
    }
    Ok(PartialFractionTable {
        params: *params,
        family: i,
        values,
    })
}

/// The full family of approximants for fixed `(m, n)`.
#[derive(Clone, Debug)]
pub struct PadeSystem {
    params: ConstructionParams,
    tables: Vec<PartialFractionTable>,
    // polys[i-1][j], 0 ≤ j ≤ m-1
    polys: Vec<Vec<Polynomial>>,
    remainders: Vec<Series>,
}

impl PadeSystem {
    pub fn params(&self) -> &ConstructionParams {
        &self.params
    }

    pub fn table(&self, i: usize) -> &PartialFractionTable {
        &self.tables[i - 1]
    }

    pub fn tables(&self) -> &[PartialFractionTable] {
        &self.tables
    }

    /// `A_{i,j}(z)` for family `1 ≤ i ≤ m`, `0 ≤ j ≤ m-1`.
    pub fn poly(&self, i: usize, j: usize) -> &Polynomial {
        &self.polys[i - 1][j]
    }

    pub fn family(&self, i: usize) -> &[Polynomial] {
        &self.polys[i - 1]
    }

    pub fn remainder(&self, i: usize) -> &Series {
        &self.remainders[i - 1]
    }

    /// Coefficient polynomials of one family from its partial-fraction table,
    /// rebased from powers of `1+z` to powers of `z`.
    pub fn family_polynomials(table: &PartialFractionTable) -> Vec<Polynomial> {
        let (m, n) = (table.params.m, table.params.n);
        let one = Rational::from(1);
        let shifted: Vec<Polynomial> = (0..=n + 1).map(|h| Polynomial::shifted_power(&one, h as u32)).collect();
        (0..m)
            .map(|j| {
                let inv_fact = Rational::from((Integer::from(1), factorial(j)));
                shifted
                    .iter()
                    .enumerate()
                    .fold(Polynomial::zero(), |acc, (h, p)| &acc + &p.scale(table.get(h, j + 1)))
                    .scale(&inv_fact)
            })
            .collect()
    }

    /// Assembles polynomials and remainders from given tables without
    /// checking any of the expected identities.
    pub fn assemble(params: ConstructionParams, tables: Vec<PartialFractionTable>) -> Self {
        let logs = log_power_table(params.m - 1, params.truncation());
        let (polys, remainders) = tables
            .par_iter()
            .map(|t| {
                let family = Self::family_polynomials(t);
                let rem = series_kernel::combine(&family, &logs);
                (family, rem)
            })
            .unzip();
        Self {
            params,
            tables,
            polys,
            remainders,
        }
    }

    /// Order and leading-coefficient findings for every family.
    pub fn order_checks(&self) -> Vec<OrderCheck> {
        (1..=self.params.m)
            .map(|i| {
                let expected_order = self.params.remainder_order(i);
                let r = self.remainder(i);
                let found_order = r.order();
                let expected_leading = Rational::from((Integer::from(1), factorial(expected_order)));
                let found_leading = found_order.map(|k| r.coeff(k).clone());
                OrderCheck {
                    family: i,
                    expected_order,
                    found_order,
                    expected_leading,
                    found_leading,
                }
            })
            .collect()
    }

    fn verify_orders(&self) -> Result<()> {
        for c in self.order_checks() {
            if c.found_order != Some(c.expected_order) {
                return Err(Error::OrderDefect {
                    family: c.family,
                    expected: c.expected_order,
                    found: c.found_order,
                });
            }
            if c.found_leading.as_ref() != Some(&c.expected_leading) {
                return Err(Error::LeadingDefect {
                    family: c.family,
                    expected: c.expected_leading.to_string(),
                    found: c.found_leading.map_or("none".into(), |v| v.to_string()),
                });
            }
        }
        Ok(())
    }

    pub fn to_document(&self) -> SystemDocument {
        let families = (1..=self.params.m)
            .map(|i| {
                let r = self.remainder(i);
                FamilyDocument {
                    i,
                    weight: self.params.weight(i),
                    partial_fractions: self
                        .table(i)
                        .rows()
                        .iter()
                        .map(|row| row.iter().map(rational_string).collect())
                        .collect(),
                    polynomials: self
                        .family(i)
                        .iter()
                        .map(|p| p.coeffs().iter().map(rational_string).collect())
                        .collect(),
                    remainder: RemainderDocument {
                        truncation: r.truncation(),
                        order: r.order(),
                        coefficients: r.coeffs().iter().map(rational_string).collect(),
                    },
                }
            })
            .collect();
        let det = determinant(self).ok().map(|(gamma, exponent)| DeterminantDocument {
            gamma: rational_string(&gamma),
            exponent,
        });
        SystemDocument {
            schema: "logpade.pade-system/v1",
            m: self.params.m,
            n: self.params.n,
            families,
            determinant: det,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderCheck {
    pub family: usize,
    pub expected_order: usize,
    pub found_order: Option<usize>,
    pub expected_leading: Rational,
    pub found_leading: Option<Rational>,
}

impl OrderCheck {
    pub fn order_ok(&self) -> bool {
        self.found_order == Some(self.expected_order)
    }

    pub fn leading_ok(&self) -> bool {
        self.found_leading.as_ref() == Some(&self.expected_leading)
    }
}

/// Builds all `m` families and checks every remainder's order and leading
/// coefficient.
pub fn build_system(params: ConstructionParams) -> Result<PadeSystem> {
    let tables = (1..=params.m)
        .into_par_iter()
        .map(|i| partial_fractions(&params, i))
        .collect::<Result<Vec<_>>>()?;
    let sys = PadeSystem::assemble(params, tables);
    sys.verify_orders()?;
    Ok(sys)
}

/// Determinant of a square matrix of polynomials. Cofactor expansion up to
/// size 4, fraction-free elimination over ℚ[z] above.
pub fn polynomial_determinant(rows: &[Vec<Polynomial>]) -> Polynomial {
    let n = rows.len();
    assert!(rows.iter().all(|r| r.len() == n), "non-square polynomial matrix");
    if n <= 4 {
        cofactor_det(rows)
    } else {
        bareiss_poly_det(rows.to_vec())
    }
}

fn cofactor_det(rows: &[Vec<Polynomial>]) -> Polynomial {
    match rows.len() {
        0 => Polynomial::constant(1),
        1 => rows[0][0].clone(),
        n => {
            let mut acc = Polynomial::zero();
            for c in 0..n {
                if rows[0][c].is_zero() {
                    continue;
                }
                let minor: Vec<Vec<Polynomial>> = rows[1..]
                    .iter()
                    .map(|r| {
                        r.iter()
                            .enumerate()
                            .filter(|(k, _)| *k != c)
                            .map(|(_, p)| p.clone())
                            .collect()
                    })
                    .collect();
                let term = &rows[0][c] * &cofactor_det(&minor);
                acc = if c % 2 == 0 { &acc + &term } else { &acc - &term };
            }
            acc
        }
    }
}

fn bareiss_poly_det(mut a: Vec<Vec<Polynomial>>) -> Polynomial {
    let n = a.len();
    let mut prev = Polynomial::constant(1);
    let mut negate = false;
    for k in 0..n {
        let Some(p) = (k..n).find(|&r| !a[r][k].is_zero()) else {
            return Polynomial::zero();
        };
        if p != k {
            a.swap(p, k);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = &(&a[k][k] * &a[i][j]) - &(&a[i][k] * &a[k][j]);
                a[i][j] = t.div_exact(&prev).expect("Bareiss division is exact");
            }
            a[i][k] = Polynomial::zero();
        }
        prev = a[k][k].clone();
    }
    if negate {
        -&a[n - 1][n - 1]
    } else {
        a[n - 1][n - 1].clone()
    }
}

/// `det(A_{i,j}(z))` as a polynomial.
pub fn determinant_polynomial(system: &PadeSystem) -> Polynomial {
    polynomial_determinant(&system.polys)
}

/// Returns `(γ, (n+1)m)` when `det(A_{i,j}(z)) = γ z^{(n+1)m}` with `γ ≠ 0`.
pub fn determinant(system: &PadeSystem) -> Result<(Rational, usize)> {
    let det = determinant_polynomial(system);
    let exponent = (system.params.n + 1) * system.params.m;
    if det.is_zero() {
        return Err(Error::GammaZero);
    }
    let lowest = det.order().unwrap();
    if lowest != det.degree().unwrap() || lowest != exponent {
        return Err(Error::NotMonomial(det.to_string()));
    }
    Ok((det.leading().unwrap().clone(), exponent))
}

/// True iff the square coefficient matrix of weight `n` for `f` is invertible.
pub fn normality_check(f: &[Series], n: &[usize]) -> bool {
    let big_n: usize = n.iter().map(|nj| nj + 1).sum();
    if big_n == 0 {
        return true;
    }
    let m = pade_matrix(f, n, big_n - 1);
    series_kernel::rank(&m) == big_n
}

/// Degree caps of the weight vectors hold and `deg A_{i,i-1} = n+1` exactly.
pub fn degree_check(system: &PadeSystem) -> bool {
    (1..=system.params.m).all(|i| family_degree_check(system, i))
}

pub fn family_degree_check(system: &PadeSystem, i: usize) -> bool {
    let weight = system.params.weight(i);
    let caps_hold = system
        .family(i)
        .iter()
        .zip(&weight)
        .all(|(p, &cap)| p.degree().is_none_or(|d| d <= cap));
    caps_hold && system.poly(i, i - 1).degree() == Some(system.params.n + 1)
}

#[derive(Serialize)]
pub struct SystemDocument {
    pub schema: &'static str,
    pub m: usize,
    pub n: usize,
    pub families: Vec<FamilyDocument>,
    pub determinant: Option<DeterminantDocument>,
}

#[derive(Serialize)]
pub struct FamilyDocument {
    pub i: usize,
    pub weight: Vec<usize>,
    /// rows `h = 0..=n+1`, columns `j = 1..=m`
    pub partial_fractions: Vec<Vec<String>>,
    /// `A_{i,j}` coefficients in powers of `z`, `j = 0..m`
    pub polynomials: Vec<Vec<String>>,
    pub remainder: RemainderDocument,
}

#[derive(Serialize)]
pub struct RemainderDocument {
    pub truncation: usize,
    pub order: Option<usize>,
    pub coefficients: Vec<String>,
}

#[derive(Serialize)]
pub struct DeterminantDocument {
    pub gamma: String,
    pub exponent: usize,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::from((n, d))
    }

    #[test]
    fn small_partial_fraction_tables() {
        let p = ConstructionParams::new(2, 0).unwrap();
        let t1 = partial_fractions(&p, 1).unwrap();
        assert_eq!(*t1.get(0, 1), q(-1, 1));
        assert_eq!(*t1.get(0, 2), q(-1, 1));
        assert_eq!(*t1.get(1, 1), q(1, 1));
        assert_eq!(*t1.get(1, 2), q(0, 1));
        let t2 = partial_fractions(&p, 2).unwrap();
        assert_eq!(*t2.get(0, 1), q(2, 1));
        assert_eq!(*t2.get(0, 2), q(1, 1));
        assert_eq!(*t2.get(1, 1), q(-2, 1));
        assert_eq!(*t2.get(1, 2), q(1, 1));
        assert!(t1.reconstructs() && t2.reconstructs());
    }

    #[test]
    fn simple_pole_residues_sum_to_zero() {
        for (m, n) in [(2, 3), (3, 2), (4, 1)] {
            let p = ConstructionParams::new(m, n).unwrap();
            for i in 1..=m {
                let t = partial_fractions(&p, i).unwrap();
                let sum = (0..=n + 1).fold(Rational::new(), |acc, h| acc + t.get(h, 1));
                assert_eq!(sum, Rational::new());
            }
        }
    }

    #[test]
    fn local_expansion_agrees_with_linear_system() {
        for (m, n) in [(2, 0), (2, 4), (3, 3), (4, 2)] {
            let p = ConstructionParams::new(m, n).unwrap();
            for i in 1..=m {
                assert_eq!(
                    partial_fractions(&p, i).unwrap(),
                    partial_fractions_local(&p, i).unwrap()
                );
                for lambda in 0..=n {
                    for c in scaled_local_coefficients(&p, i, lambda) {
                        assert_eq!(*c.denom(), 1);
                    }
                }
            }
        }
    }

    #[test]
    fn smallest_system_matches_hand_expansion() {
        let sys = build_system(ConstructionParams::new(2, 0).unwrap()).unwrap();
        assert_eq!(
            sys.family(1),
            &[Polynomial::from_ints(&[0, 1]), Polynomial::from_ints(&[-1])]
        );
        assert_eq!(
            sys.family(2),
            &[Polynomial::from_ints(&[0, -2]), Polynomial::from_ints(&[2, 1])]
        );
        let r1 = sys.remainder(1);
        assert_eq!(r1.order(), Some(2));
        assert_eq!(*r1.coeff(2), q(1, 2));
        assert_eq!(*r1.coeff(3), q(-1, 3));
        let r2 = sys.remainder(2);
        assert_eq!(r2.order(), Some(3));
        assert_eq!(*r2.coeff(3), q(1, 6));
    }

    #[test]
    fn determinant_of_smallest_system() {
        let sys = build_system(ConstructionParams::new(2, 0).unwrap()).unwrap();
        assert_eq!(determinant_polynomial(&sys), Polynomial::monomial(1, 2));
        assert_eq!(determinant(&sys).unwrap(), (q(1, 1), 2));
    }

    #[test]
    fn bareiss_and_cofactor_determinants_agree() {
        let sys = build_system(ConstructionParams::new(4, 2).unwrap()).unwrap();
        assert_eq!(cofactor_det(&sys.polys), bareiss_poly_det(sys.polys.clone()));
    }

    #[test]
    fn larger_m_uses_elimination() {
        let sys = build_system(ConstructionParams::new(5, 1).unwrap()).unwrap();
        let (gamma, e) = determinant(&sys).unwrap();
        assert_eq!(e, 10);
        assert_ne!(gamma, Rational::new());
    }

    #[test]
    fn degrees_of_smallest_system() {
        let sys = build_system(ConstructionParams::new(2, 0).unwrap()).unwrap();
        assert_eq!(sys.poly(1, 0).degree(), Some(1));
        assert_eq!(sys.poly(2, 1).degree(), Some(1));
        assert!(degree_check(&sys));
    }

    #[test]
    fn normality_examples() {
        let f = log_power_table(2, 12);
        assert!(normality_check(&f[..2], &[1, 1]));
        assert!(normality_check(&f, &[2, 2, 2]));
        let poly_dep = vec![
            Series::one(12),
            Series::from_polynomial(&Polynomial::from_ints(&[1, 1]), 12),
        ];
        assert!(!normality_check(&poly_dep, &[1, 1]));
        assert!(!normality_check(&poly_dep, &[2, 0]));
    }

    #[test]
    fn perturbed_table_breaks_reconstruction_and_order() {
        let p = ConstructionParams::new(3, 2).unwrap();
        let mut tables: Vec<_> = (1..=3).map(|i| partial_fractions(&p, i).unwrap()).collect();
        tables[1].perturb(0, 1, &q(1, 1));
        assert!(!tables[1].reconstructs());
        let sys = PadeSystem::assemble(p, tables);
        let checks = sys.order_checks();
        assert!(checks[0].order_ok());
        assert!(!checks[1].order_ok() || !checks[1].leading_ok());
    }

    #[test]
    fn invalid_params_rejected() {
        assert!(ConstructionParams::new(1, 3).is_err());
        let p = ConstructionParams::new(2, 1).unwrap();
        assert!(partial_fractions(&p, 0).is_err());
        assert!(partial_fractions(&p, 3).is_err());
    }
}
