//! Verification suites, high-precision evaluation of the linear forms, and
//! exhaustive small-height audits, all producing [`AuditReport`]s.

use rayon::prelude::*;
use rug::ops::Pow;
use rug::{Float, Integer, Rational};
use serde::{Serialize, Serializer};

use crate::directed::{DirectedFloat, FloatRepr, Interval, IntervalRepr, DEFAULT_PRECISION};
use crate::error::{Error, Result};
use crate::measure_bounds::{
    self, admissible_n, coeff_bound, constants_arch, constants_padic, integrality_scaler, lcm_sequence,
    remainder_bound_arch, remainder_bound_padic_value, rosser_schoenfeld_envelope, table_scaler, Admissible,
    AlphaInput, Criterion, DecayVariant, MeasureConstants, PAdicConstants, SearchOptions, Sign,
};
use crate::pade_construct::{
    determinant, family_degree_check, normality_check, partial_fractions, partial_fractions_local, ConstructionParams,
    PadeSystem,
};
use crate::padic_eval::{self, measure_linear_form, PAdicRepr};
use crate::report::{anchors, rational_string, status_of, CheckRecord, Quantity, Status, AUDIT_SCHEMA};
use crate::series_kernel::{log_power_table, pade_from_kernel, proportionality, Polynomial};

/// Relative width demanded of remainder evaluations: `2^-67 < 10^-20`.
pub const REMAINDER_REL_TOL_LOG2: i32 = -67;
/// Precision ceiling for remainder evaluations, which cancel heavily.
pub const REMAINDER_MAX_PRECISION: u32 = 1 << 14;
/// Largest box `(2·height_max+1)^m` an exhaustive audit will enumerate.
pub const AUDIT_BOX_CAP: u64 = 100_000_000;

fn ser_rational<S: Serializer>(q: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&rational_string(q))
}

fn ser_integer<S: Serializer>(k: &Integer, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&k.to_string())
}

fn instance(m: usize, n: usize, i: Option<usize>) -> String {
    match i {
        Some(i) => format!("m={m} n={n} i={i}"),
        None => format!("m={m} n={n}"),
    }
}

// ---------------------------------------------------------------------------
// Reports

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub imprecise: usize,
    pub skipped: usize,
}

impl Summary {
    fn of(records: &[CheckRecord]) -> Self {
        let mut s = Summary {
            total: records.len(),
            ..Default::default()
        };
        for r in records {
            match r.status {
                Status::Pass => s.passed += 1,
                Status::Fail => s.failed += 1,
                Status::Imprecise => s.imprecise += 1,
                Status::Skipped => s.skipped += 1,
            }
        }
        s
    }
}

/// A versioned, deterministic report.
#[derive(Clone, Debug, Serialize)]
pub struct AuditReport {
    pub schema: &'static str,
    pub mode: &'static str,
    pub config: serde_json::Value,
    pub status: Status,
    pub summary: Summary,
    pub records: Vec<CheckRecord>,
    pub payload: serde_json::Value,
}

impl AuditReport {
    fn new(
        mode: &'static str,
        config: &impl Serialize,
        records: Vec<CheckRecord>,
        payload: &impl Serialize,
    ) -> Result<Self> {
        let summary = Summary::of(&records);
        let status = if summary.failed > 0 {
            Status::Fail
        } else if summary.imprecise > 0 {
            Status::Imprecise
        } else {
            Status::Pass
        };
        Ok(Self {
            schema: AUDIT_SCHEMA,
            mode,
            config: to_value(config)?,
            status,
            summary,
            records,
            payload: to_value(payload)?,
        })
    }

    /// All checks passed (skipped checks do not count against the run).
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn to_json(&self) -> Result<String> {
        serde_json::to_string_pretty(self).map_err(|e| Error::Internal(e.to_string()))
    }

    pub fn records_named<'a>(&'a self, name: &'a str) -> impl Iterator<Item = &'a CheckRecord> + 'a {
        self.records.iter().filter(move |r| r.name == name)
    }
}

fn to_value(v: &impl Serialize) -> Result<serde_json::Value> {
    serde_json::to_value(v).map_err(|e| Error::Internal(e.to_string()))
}

// ---------------------------------------------------------------------------
// Archimedean evaluation

/// `log(1+α)` as a signed enclosure.
pub fn log1p_interval(alpha: &AlphaInput, prec: u32) -> Result<Interval> {
    let one_plus = alpha.as_rational() + 1u32;
    if one_plus <= 0 {
        return Err(Error::InvalidAlpha(format!("alpha = {alpha} must exceed -1")));
    }
    Ok(Interval::from_rational(&one_plus, prec).ln())
}

/// An enclosure together with the precision it was obtained at.
#[derive(Clone, Debug)]
pub struct Evaluation {
    pub value: Interval,
    pub precision: u32,
    /// the requested relative width was reached
    pub precise: bool,
}

fn escalate<F>(start: u32, cap: u32, log2_tol: i32, mut eval: F) -> Result<Evaluation>
where
    F: FnMut(u32) -> Result<Interval>,
{
    let mut prec = start.max(16);
    loop {
        let value = eval(prec)?;
        let precise = value.relative_width_within(log2_tol);
        if precise || prec >= cap {
            return Ok(Evaluation {
                value,
                precision: prec,
                precise,
            });
        }
        prec = (prec * 2).min(cap);
    }
}

/// `|Σ b_i log^i(1+α)|`, with precision escalated until the enclosure's
/// relative width is at most `2^{−precision_bits/2}`.
pub fn eval_linear_form_arch(b: &[i64], alpha: &AlphaInput, precision_bits: u32) -> Result<Evaluation> {
    if b.iter().all(|&x| x == 0) {
        return Err(Error::InvalidParams("linear form needs a nonzero vector".into()));
    }
    let tol = -((precision_bits / 2) as i32);
    escalate(precision_bits, measure_bounds::MAX_PRECISION, tol, |prec| {
        let log = log1p_interval(alpha, prec)?;
        let acc = b.iter().rev().fold(Interval::from_i64(0, prec), |acc, &bi| {
            acc.mul(&log).add(&Interval::from_i64(bi, prec))
        });
        Ok(acc.abs())
    })
}

/// `R(α) = Σ_j A_j(α) log^j(1+α)` (signed), with exact `A_j(α)` and
/// precision escalated until the relative width is at most `2^-67`.
pub fn eval_remainder_arch(family: &[Polynomial], alpha: &AlphaInput, precision_bits: u32) -> Result<Evaluation> {
    let a = alpha.as_rational();
    let values: Vec<Rational> = family.iter().map(|p| p.eval(&a)).collect();
    escalate(
        precision_bits,
        REMAINDER_MAX_PRECISION,
        REMAINDER_REL_TOL_LOG2,
        |prec| {
            let log = log1p_interval(alpha, prec)?;
            Ok(values.iter().rev().fold(Interval::from_i64(0, prec), |acc, v| {
                acc.mul(&log).add(&Interval::from_rational(v, prec))
            }))
        },
    )
}

// ---------------------------------------------------------------------------
// Verification suite

#[derive(Clone, Debug, Serialize)]
pub struct VerifyConfig {
    pub m_values: Vec<usize>,
    pub n_max: usize,
    /// α values for the value-integrality check
    pub integrality_alphas: Vec<AlphaInput>,
    /// α for the coefficient and remainder bounds
    pub bound_alpha: Option<AlphaInput>,
    /// the kernel-solver oracle runs for `m ≤ .0`, `n ≤ .1`
    pub kernel_limits: (usize, usize),
    /// the normality check runs for `m ≤ .0`, `n ≤ .1`
    pub normality_limits: (usize, usize),
    pub precision_bits: u32,
    /// perturbs `a_{0,1}` of the first family by `+1` before assembly
    pub inject_fault: bool,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            m_values: vec![2, 3],
            n_max: 8,
            integrality_alphas: vec![
                AlphaInput::new(1, 10).unwrap(),
                AlphaInput::new(-1, 10).unwrap(),
                AlphaInput::new(3, 7).unwrap(),
            ],
            bound_alpha: Some(AlphaInput::new(1, 10).unwrap()),
            kernel_limits: (3, 5),
            normality_limits: (3, 5),
            precision_bits: DEFAULT_PRECISION,
            inject_fault: false,
        }
    }
}

/// Records of every check for one `(m, n)`.
fn verify_instance(cfg: &VerifyConfig, m: usize, n: usize) -> Result<Vec<CheckRecord>> {
    let params = ConstructionParams::new(m, n)?;
    let mut tables = (1..=m)
        .into_par_iter()
        .map(|i| partial_fractions(&params, i))
        .collect::<Result<Vec<_>>>()?;
    if cfg.inject_fault {
        tables[0].perturb(0, 1, &Rational::from(1));
    }
    let system = PadeSystem::assemble(params, tables);
    let logs = log_power_table(m - 1, params.truncation());
    let scaler = Rational::from(table_scaler(m, n));
    let mut out = Vec::new();

    for i in 1..=m {
        let inst = instance(m, n, Some(i));
        let table = system.table(i);

        out.push(CheckRecord::new(
            "partial-fraction-identity",
            anchors::COEFFICIENTS,
            &inst,
            status_of(table.reconstructs()),
            Quantity::text("sum of a_{h,j} Q/(x-h)^j"),
            Quantity::exact(&Rational::from(1)),
        ));

        let local = partial_fractions_local(&params, i)?;
        out.push(CheckRecord::new(
            "local-expansion-agreement",
            anchors::KEY_KILL_DENOMI,
            &inst,
            status_of(local.rows() == table.rows()),
            Quantity::text("linear-system table"),
            Quantity::text("local-expansion table"),
        ));

        let non_integral = table
            .iter()
            .filter(|(_, _, a)| Rational::from(&scaler * *a).denom() != &1)
            .count();
        out.push(CheckRecord::new(
            "table-integrality",
            anchors::TISAI_DENOMINATOR,
            &inst,
            status_of(non_integral == 0),
            Quantity::integer(&Integer::from(non_integral)),
            Quantity::integer(&Integer::new()),
        ));

        out.push(CheckRecord::new(
            "degree-bounds",
            anchors::REMARK_BIJ,
            &inst,
            status_of(family_degree_check(&system, i)),
            Quantity::text(format!(
                "{:?}",
                system.family(i).iter().map(|p| p.degree()).collect::<Vec<_>>()
            )),
            Quantity::text(format!("{:?}", params.weight(i))),
        ));

        let r = system.remainder(i);
        let expected = params.remainder_order(i);
        let found = r.order();
        out.push(CheckRecord::new(
            "remainder-order",
            anchors::LOG_PADE_R,
            &inst,
            status_of(found == Some(expected)),
            Quantity::text(found.map_or("none".into(), |k| k.to_string())),
            Quantity::text(expected.to_string()),
        ));
        let expected_lead = Rational::from((Integer::from(1), Integer::from(Integer::factorial(expected as u32))));
        let found_lead = r.coeff(expected).clone();
        out.push(CheckRecord::new(
            "remainder-leading-coefficient",
            anchors::FIRST_TERM_R,
            &inst,
            status_of(found == Some(expected) && found_lead == expected_lead),
            Quantity::exact(&found_lead),
            Quantity::exact(&expected_lead),
        ));

        if m <= cfg.kernel_limits.0 && n <= cfg.kernel_limits.1 {
            let kernel = pade_from_kernel(&logs, &params.weight(i))?;
            let c = proportionality(&kernel, system.family(i));
            out.push(CheckRecord::new(
                "kernel-proportionality",
                anchors::COR_FUND_PADE,
                &inst,
                status_of(c.is_some()),
                Quantity::text(c.map_or("not proportional".into(), |c| rational_string(&c))),
                Quantity::text("nonzero scalar"),
            ));
        }
        if m <= cfg.normality_limits.0 && n <= cfg.normality_limits.1 {
            out.push(CheckRecord::new(
                "normality",
                anchors::DIAGONAL_NORMALITY,
                &inst,
                status_of(normality_check(&logs, &params.weight(i))),
                Quantity::text("rank"),
                Quantity::text("full"),
            ));
        }

        let ks = integrality_scaler(m, n);
        for alpha in &cfg.integrality_alphas {
            let a = alpha.as_rational();
            let scale = Rational::from(&ks * Integer::from(alpha.d()).pow((n + 1) as u32));
            let bad = system
                .family(i)
                .iter()
                .filter(|p| Rational::from(&scale * &p.eval(&a)).denom() != &1)
                .count();
            out.push(CheckRecord::new(
                "value-integrality",
                anchors::DENOMI2,
                format!("{inst} alpha={alpha}"),
                status_of(bad == 0),
                Quantity::integer(&Integer::from(bad)),
                Quantity::integer(&Integer::new()),
            ));
        }

        if let Some(alpha) = &cfg.bound_alpha {
            out.extend(bound_checks(&system, i, alpha, cfg.precision_bits)?);
        }
    }

    let inst = instance(m, n, None);
    let expected = (n + 1) * m;
    let rec = match determinant(&system) {
        Ok((gamma, k)) => CheckRecord::new(
            "determinant-monomial",
            anchors::KEY_COROLLARY,
            &inst,
            status_of(k == expected),
            Quantity::text(format!("{} z^{}", rational_string(&gamma), k)),
            Quantity::text(format!("gamma z^{expected}, gamma != 0")),
        ),
        Err(e) => CheckRecord::new(
            "determinant-monomial",
            anchors::KEY_COROLLARY,
            &inst,
            Status::Fail,
            Quantity::text(e.to_string()),
            Quantity::text(format!("gamma z^{expected}, gamma != 0")),
        ),
    };
    out.push(rec);
    Ok(out)
}

fn bound_checks(system: &PadeSystem, i: usize, alpha: &AlphaInput, prec: u32) -> Result<Vec<CheckRecord>> {
    let params = system.params();
    let (m, n) = (params.m(), params.n());
    let inst = format!("{} alpha={alpha}", instance(m, n, Some(i)));
    let mut out = Vec::new();

    let a = alpha.as_rational();
    let max_abs = system
        .family(i)
        .iter()
        .map(|p| Rational::from(p.eval(&a).abs_ref()))
        .max()
        .unwrap_or_default();
    let bound = coeff_bound(m, n, &Interval::from_rational(&alpha.abs(), prec))?;
    let ok = *bound.value() >= max_abs;
    let margin = DirectedFloat::new(
        Float::with_val_round(prec, bound.value() - &max_abs, rug::float::Round::Down).0,
        crate::directed::Rounding::Down,
    );
    out.push(
        CheckRecord::new(
            "coefficient-bound",
            anchors::KEISU_OOKISA,
            &inst,
            status_of(ok),
            Quantity::exact(&max_abs),
            Quantity::float(&bound),
        )
        .with_margin(Quantity::float(&margin)),
    );

    let log_term = alpha.log_term(prec)?;
    match remainder_bound_arch(m, n, &log_term) {
        Ok(bound) => {
            let r = eval_remainder_arch(system.family(i), alpha, prec)?;
            let abs = r.value.abs();
            let status = if !r.precise {
                Status::Imprecise
            } else {
                status_of(abs.hi() <= bound.value())
            };
            out.push(CheckRecord::new(
                "remainder-bound",
                anchors::UEKARA_JYOUYOKOU,
                &inst,
                status,
                Quantity::interval(&abs),
                Quantity::float(&bound),
            ));
        }
        Err(Error::HypothesisViolated(msg)) => out.push(CheckRecord::new(
            "remainder-bound",
            anchors::UEKARA_JYOUYOKOU,
            &inst,
            Status::Skipped,
            Quantity::text(msg),
            Quantity::text("m/|log(1+alpha)| >= 2"),
        )),
        Err(e) => return Err(e),
    }
    Ok(out)
}

/// Runs every construction-level check over `m ∈ m_values`, `0 ≤ n ≤ n_max`.
pub fn verify_suite(cfg: &VerifyConfig) -> Result<AuditReport> {
    if cfg.m_values.iter().any(|&m| m < 2) {
        return Err(Error::InvalidParams("m must be at least 2".into()));
    }
    let pairs: Vec<(usize, usize)> = cfg
        .m_values
        .iter()
        .flat_map(|&m| (0..=cfg.n_max).map(move |n| (m, n)))
        .collect();
    let records = pairs
        .par_iter()
        .map(|&(m, n)| verify_instance(cfg, m, n))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    AuditReport::new("verify", cfg, records, &serde_json::Value::Null)
}

// ---------------------------------------------------------------------------
// LCM envelope

#[derive(Clone, Debug, Serialize)]
pub struct DnConfig {
    pub n_max: u64,
    pub precision_bits: u32,
}

#[derive(Clone, Debug, Serialize)]
struct DnPayload {
    checked: u64,
    violations: Vec<u64>,
    /// smallest `log d_n − (n − g(n))` seen, rounded down
    min_lower_gap: Option<FloatRepr>,
    /// smallest `(n + g(n)) − log d_n` seen, rounded down
    min_upper_gap: Option<FloatRepr>,
}

/// Checks `exp(n − g(n)) ≤ d_n ≤ exp(n + g(n))` for `2 ≤ n ≤ n_max`.
pub fn dn_check(cfg: &DnConfig) -> Result<AuditReport> {
    if cfg.n_max < 2 {
        return Err(Error::InvalidParams("n_max must be at least 2".into()));
    }
    let lcms: Vec<(u64, Integer)> = lcm_sequence().skip(1).take_while(|(n, _)| *n <= cfg.n_max).collect();
    let prec = cfg.precision_bits;
    let results = lcms
        .par_iter()
        .map(|(n, d)| {
            let env = rosser_schoenfeld_envelope(*n, prec)?;
            let ok = *env.lower.value() <= *d && *env.upper.value() >= *d;
            let ln_d = Interval::from_integer(d, prec).ln();
            let ni = Interval::from_i64(*n as i64, prec);
            let g = measure_bounds::g_envelope(&Integer::from(*n), prec);
            let lower_gap = ln_d.sub(&ni.sub(&g)).lower();
            let upper_gap = ni.add(&g).sub(&ln_d).lower();
            Ok((*n, ok, lower_gap, upper_gap, env))
        })
        .collect::<Result<Vec<_>>>()?;

    let mut records = Vec::new();
    let violations: Vec<u64> = results.iter().filter(|r| !r.1).map(|r| r.0).collect();
    for (n, ok, _, _, env) in results.iter().filter(|r| !r.1) {
        records.push(CheckRecord::new(
            "lcm-envelope",
            anchors::GROWTH_DN,
            format!("n={n}"),
            status_of(*ok),
            Quantity::float(&env.lower),
            Quantity::float(&env.upper),
        ));
    }
    let min_by = |f: fn(&(u64, bool, DirectedFloat, DirectedFloat, measure_bounds::Envelope)) -> &DirectedFloat| {
        results
            .iter()
            .map(f)
            .min_by(|a, b| a.value().partial_cmp(b.value()).unwrap())
            .cloned()
    };
    let min_lower = min_by(|r| &r.2);
    let min_upper = min_by(|r| &r.3);
    records.push(CheckRecord::new(
        "lcm-envelope-range",
        anchors::GROWTH_DN,
        format!("2<=n<={}", cfg.n_max),
        status_of(violations.is_empty()),
        Quantity::integer(&Integer::from(violations.len())),
        Quantity::integer(&Integer::new()),
    ));
    let payload = DnPayload {
        checked: results.len() as u64,
        violations,
        min_lower_gap: min_lower.map(|f| f.to_repr()),
        min_upper_gap: min_upper.map(|f| f.to_repr()),
    };
    AuditReport::new("dn", cfg, records, &payload)
}

// ---------------------------------------------------------------------------
// Constants

#[derive(Clone, Debug, Serialize)]
pub struct ConstantsConfig {
    pub m: usize,
    pub alpha: AlphaInput,
    pub p: Option<u64>,
    #[serde(serialize_with = "ser_rational")]
    pub epsilon: Rational,
    pub precision_bits: u32,
    pub variant: DecayVariant,
    #[serde(serialize_with = "ser_integer")]
    pub n_cap: Integer,
    /// run the admissible-n search
    pub search: bool,
}

impl ConstantsConfig {
    pub fn new(m: usize, alpha: AlphaInput) -> Self {
        Self {
            m,
            alpha,
            p: None,
            epsilon: Rational::from(1),
            precision_bits: DEFAULT_PRECISION,
            variant: DecayVariant::Statement,
            n_cap: Integer::from(measure_bounds::DEFAULT_SEARCH_CAP),
            search: true,
        }
    }

    fn search_options(&self) -> SearchOptions {
        SearchOptions {
            cap: self.n_cap.clone(),
            precision_bits: self.precision_bits,
        }
    }
}

/// Serializable view of the archimedean constants.
#[derive(Clone, Debug, Serialize)]
pub struct ArchConstantsView {
    pub log_term: IntervalRepr,
    pub growth: IntervalRepr,
    pub decay: IntervalRepr,
    pub t_remainder: IntervalRepr,
    pub t_coeff: IntervalRepr,
    pub c_exp: String,
    pub nu_upper: FloatRepr,
    pub delta_lower: FloatRepr,
    pub delta_sign: Sign,
    pub variant: DecayVariant,
    pub precision_bits: u32,
}

impl From<&MeasureConstants> for ArchConstantsView {
    fn from(c: &MeasureConstants) -> Self {
        Self {
            log_term: (&c.log_term).into(),
            growth: (&c.growth).into(),
            decay: (&c.decay).into(),
            t_remainder: (&c.t_remainder).into(),
            t_coeff: (&c.t_coeff).into(),
            c_exp: rational_string(&c.c_exp),
            nu_upper: c.nu.upper().to_repr(),
            delta_lower: c.delta.lower().to_repr(),
            delta_sign: c.delta_sign(),
            variant: c.variant,
            precision_bits: c.precision,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct PadicConstantsView {
    pub p: u64,
    pub valuation: i64,
    pub decay: IntervalRepr,
    pub t_remainder: String,
    pub c_exp: usize,
    pub growth: IntervalRepr,
    pub nu_upper: FloatRepr,
    pub delta_lower: FloatRepr,
    pub delta_sign: Sign,
    pub precision_bits: u32,
}

impl From<&PAdicConstants> for PadicConstantsView {
    fn from(c: &PAdicConstants) -> Self {
        Self {
            p: c.p,
            valuation: c.valuation,
            decay: (&c.decay).into(),
            t_remainder: c.t_remainder.to_string(),
            c_exp: c.c_exp,
            growth: (&c.growth).into(),
            nu_upper: c.nu.upper().to_repr(),
            delta_lower: c.delta.lower().to_repr(),
            delta_sign: c.delta_sign(),
            precision_bits: c.precision,
        }
    }
}

/// Outcome of the admissible-`n` search as it appears in reports.
#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "snake_case", tag = "outcome")]
pub enum SearchOutcome {
    Found(Admissible),
    NotRun,
    Inapplicable { delta_lower: FloatRepr },
    NotFound { cap: String },
}

#[derive(Clone, Debug, Serialize)]
pub struct MeasureSummary {
    pub exponent: Option<FloatRepr>,
    pub ratio_nu_delta: Option<FloatRepr>,
    pub criterion_inapplicable: bool,
    pub search: SearchOutcome,
    /// `105500·e^{H(α)}·(m−1)²`, rounded down
    pub nw_comparison: FloatRepr,
}

fn run_search(criterion: Criterion<'_>, delta: &Interval, cfg: &ConstantsConfig) -> Result<SearchOutcome> {
    if !delta.is_positive() {
        return Ok(SearchOutcome::Inapplicable {
            delta_lower: delta.lower().to_repr(),
        });
    }
    if !cfg.search {
        return Ok(SearchOutcome::NotRun);
    }
    match admissible_n(criterion, &cfg.epsilon, &cfg.search_options()) {
        Ok(a) => Ok(SearchOutcome::Found(a)),
        Err(Error::NoAdmissibleN { cap }) => Ok(SearchOutcome::NotFound { cap }),
        Err(e) => Err(e),
    }
}

fn search_records(outcome: &SearchOutcome, anchor: &'static str, inst: &str) -> Vec<CheckRecord> {
    match outcome {
        SearchOutcome::Found(a) => {
            let at_star = a.at_n_star.iter().all(|c| c.holds);
            let pred_fails = a.at_predecessor.is_empty() || a.at_predecessor.iter().any(|c| !c.holds);
            vec![CheckRecord::new(
                "admissible-n-minimality",
                anchor,
                inst,
                status_of(at_star && pred_fails),
                Quantity::integer(&a.n_star),
                Quantity::text(format!(
                    "all conditions hold at n*: {at_star}; some condition fails at n*-1: {pred_fails}"
                )),
            )]
        }
        SearchOutcome::Inapplicable { delta_lower } => vec![CheckRecord::new(
            "criterion-applicable",
            anchor,
            inst,
            Status::Skipped,
            Quantity::Float(delta_lower.clone()),
            Quantity::text("delta > 0"),
        )],
        SearchOutcome::NotFound { cap } => vec![CheckRecord::new(
            "admissible-n-search",
            anchor,
            inst,
            Status::Skipped,
            Quantity::text(format!("no admissible n below {cap}")),
            Quantity::text("n* within cap"),
        )],
        SearchOutcome::NotRun => Vec::new(),
    }
}

#[derive(Clone, Debug, Serialize)]
struct ConstantsPayload {
    arch: Option<ArchConstantsView>,
    padic: Option<PadicConstantsView>,
    measure: MeasureSummary,
}

/// Constants, exponent and (optionally) the admissible-`n` search.
pub fn constants_report(cfg: &ConstantsConfig) -> Result<AuditReport> {
    let nw = measure_bounds::nw_comparison_exponent(cfg.m, &cfg.alpha, cfg.precision_bits).to_repr();
    let inst = format!("m={} alpha={}", cfg.m, cfg.alpha);
    let (payload, records) = match cfg.p {
        None => {
            let c = constants_arch(cfg.m, &cfg.alpha, cfg.precision_bits, cfg.variant)?;
            let outcome = run_search(Criterion::Arch(&c), &c.delta, cfg)?;
            let records = search_records(&outcome, anchors::CRITERE, &inst);
            let measure = MeasureSummary {
                exponent: c.exponent(&cfg.epsilon).map(|f| f.to_repr()),
                ratio_nu_delta: c.ratio().map(|f| f.to_repr()),
                criterion_inapplicable: c.delta_sign() != Sign::Positive,
                search: outcome,
                nw_comparison: nw,
            };
            (
                ConstantsPayload {
                    arch: Some((&c).into()),
                    padic: None,
                    measure,
                },
                records,
            )
        }
        Some(p) => {
            let c = constants_padic(cfg.m, &cfg.alpha, p, cfg.precision_bits)?;
            let outcome = run_search(Criterion::Padic(&c), &c.delta, cfg)?;
            let records = search_records(&outcome, anchors::CRITERE_P, &format!("{inst} p={p}"));
            let measure = MeasureSummary {
                exponent: c.exponent(&cfg.epsilon).map(|f| f.to_repr()),
                ratio_nu_delta: c.exponent(&Rational::new()).map(|f| f.to_repr()),
                criterion_inapplicable: c.delta_sign() != Sign::Positive,
                search: outcome,
                nw_comparison: nw,
            };
            (
                ConstantsPayload {
                    arch: None,
                    padic: Some((&c).into()),
                    measure,
                },
                records,
            )
        }
    };
    AuditReport::new("constants", cfg, records, &payload)
}

// ---------------------------------------------------------------------------
// Exhaustive small-height audits

#[derive(Clone, Debug, Serialize)]
pub struct AuditConfig {
    pub constants: ConstantsConfig,
    pub height_max: i64,
    /// include every enumerated vector in the report
    pub full_table: bool,
}

/// One enumerated vector with its measured `|Λ|`.
#[derive(Clone, Debug, Serialize)]
pub struct TableRow {
    pub b: Vec<i64>,
    pub height: i64,
    /// archimedean: enclosure of `|Λ|`; p-adic: absent
    pub abs_lambda: Option<IntervalRepr>,
    /// p-adic: the certified valuation of `Λ`
    pub valuation: Option<i64>,
    /// enclosure of `log|Λ|` (`−v·log p` in the p-adic case)
    pub log_abs_lambda: IntervalRepr,
    pub precision: u32,
    pub precise: bool,
    /// `−μ(ε)·log H(b)`, rounded up
    pub formula_log_bound_own: Option<FloatRepr>,
    /// `−μ(ε)·log H` for the box bound `H = height_max`, rounded up
    pub formula_log_bound_box: Option<FloatRepr>,
    /// `log|Λ| > −μ·log H(b)` is certain
    pub above_formula_own: Option<bool>,
    pub above_formula_box: Option<bool>,
    /// `−C·log H(b)` with the comparison constant `C = 105500·e^{H(α)}(m−1)²`
    pub nw_log_bound_own: FloatRepr,
    /// `H(b) > H₀`: the lower bound is guaranteed for this vector
    pub within_guarantee: bool,
}

#[derive(Clone, Debug)]
struct Measured {
    b: Vec<i64>,
    height: i64,
    /// sort key: lower end of `log|Λ|`
    log_abs: Interval,
    abs: Option<Interval>,
    valuation: Option<i64>,
    precision: u32,
    precise: bool,
}

fn better(a: &Measured, b: &Measured) -> bool {
    // smaller |Λ| first; ties by the lexicographic vector
    match a.log_abs.lo().partial_cmp(b.log_abs.lo()) {
        Some(std::cmp::Ordering::Less) => true,
        Some(std::cmp::Ordering::Greater) => false,
        _ => a.b < b.b,
    }
}

fn decode(mut idx: u64, m: usize, h: i64) -> Vec<i64> {
    let base = (2 * h + 1) as u64;
    let mut b = vec![0i64; m];
    for slot in b.iter_mut() {
        *slot = (idx % base) as i64 - h;
        idx /= base;
    }
    b
}

fn canonical(b: &[i64]) -> bool {
    b.iter().find(|&&x| x != 0).is_some_and(|&x| x > 0)
}

fn box_size(m: usize, h: i64) -> Result<u64> {
    if h < 1 {
        return Err(Error::InvalidParams("height_max must be at least 1".into()));
    }
    let side = Integer::from(2 * h + 1);
    let count = side.pow(m as u32);
    if count > AUDIT_BOX_CAP {
        return Err(Error::CombinatorialCap {
            count: count.to_string(),
            cap: AUDIT_BOX_CAP,
        });
    }
    Ok(count.to_u64().unwrap())
}

const BLOCK: u64 = 4096;

/// Enumerates the box in parallel blocks. Keeps either every vector or just
/// the per-height minimizers; the merge is schedule-independent.
fn enumerate<F>(m: usize, h: i64, keep_all: bool, measure: F) -> Result<(u64, Vec<Measured>, Vec<Measured>)>
where
    F: Fn(&[i64]) -> Result<Measured> + Sync,
{
    let total = box_size(m, h)?;
    let blocks: Vec<u64> = (0..total.div_ceil(BLOCK)).collect();
    let partial = blocks
        .par_iter()
        .map(|&blk| {
            let mut best: Vec<Option<Measured>> = vec![None; h as usize + 1];
            let mut all = Vec::new();
            let mut count = 0u64;
            for idx in blk * BLOCK..((blk + 1) * BLOCK).min(total) {
                let b = decode(idx, m, h);
                if !canonical(&b) {
                    continue;
                }
                count += 1;
                let row = measure(&b)?;
                let slot = &mut best[row.height as usize];
                if slot.as_ref().is_none_or(|cur| better(&row, cur)) {
                    *slot = Some(row.clone());
                }
                if keep_all {
                    all.push(row);
                }
            }
            Ok((count, best, all))
        })
        .collect::<Result<Vec<_>>>()?;

    let mut count = 0;
    let mut best: Vec<Option<Measured>> = vec![None; h as usize + 1];
    let mut all = Vec::new();
    for (c, blk_best, blk_all) in partial {
        count += c;
        for (slot, cand) in best.iter_mut().zip(blk_best) {
            if let Some(cand) = cand {
                if slot.as_ref().is_none_or(|cur| better(&cand, cur)) {
                    *slot = Some(cand);
                }
            }
        }
        all.extend(blk_all);
    }
    all.sort_by(|a, b| (a.height, &a.b).cmp(&(b.height, &b.b)));
    Ok((count, best.into_iter().flatten().collect(), all))
}

/// Measure data shared by both audit kinds.
struct Formula {
    /// `μ(ε)` rounded up, if δ > 0
    exponent: Option<Interval>,
    nw: Interval,
    /// `log H₀` rounded up, when the search found `n*`
    log_h0: Option<Float>,
    prec: u32,
}

impl Formula {
    fn row(&self, r: &Measured, height_max: i64) -> TableRow {
        let prec = self.prec;
        let ln_own = Interval::from_i64(r.height, prec).ln();
        let ln_box = Interval::from_i64(height_max, prec).ln();
        let bound = |ln: &Interval| self.exponent.as_ref().map(|mu| mu.mul(ln).neg());
        let own = bound(&ln_own);
        let boxed = bound(&ln_box);
        let above = |b: &Option<Interval>| b.as_ref().map(|b| b.certainly_lt(&r.log_abs));
        let within = match &self.log_h0 {
            Some(lh0) => ln_own.lo() > lh0,
            None => false,
        };
        TableRow {
            b: r.b.clone(),
            height: r.height,
            abs_lambda: r.abs.as_ref().map(Into::into),
            valuation: r.valuation,
            log_abs_lambda: (&r.log_abs).into(),
            precision: r.precision,
            precise: r.precise,
            formula_log_bound_own: own.as_ref().map(|b| b.upper().to_repr()),
            formula_log_bound_box: boxed.as_ref().map(|b| b.upper().to_repr()),
            above_formula_own: above(&own),
            above_formula_box: above(&boxed),
            nw_log_bound_own: self.nw.mul(&ln_own).neg().upper().to_repr(),
            within_guarantee: within,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SearchPayload {
    pub measure: MeasureSummary,
    pub vectors_evaluated: u64,
    pub height_max: i64,
    /// per height `h`: the vector minimizing `|Λ|` among those with `H(b) = h`
    pub per_height: Vec<TableRow>,
    /// per height `h`: the minimizer over `H(b) ≤ h`
    pub running_min: Vec<TableRow>,
    pub overall_min: Option<TableRow>,
    pub full_table: Option<Vec<TableRow>>,
}

fn search_payload(
    measure: MeasureSummary,
    formula: &Formula,
    height_max: i64,
    count: u64,
    minimizers: Vec<Measured>,
    all: Vec<Measured>,
    keep_all: bool,
) -> (SearchPayload, Vec<Measured>) {
    let mut running: Vec<Measured> = Vec::new();
    for r in &minimizers {
        let next = match running.last() {
            Some(prev) if !better(r, prev) => prev.clone(),
            _ => r.clone(),
        };
        running.push(next);
    }
    let payload = SearchPayload {
        measure,
        vectors_evaluated: count,
        height_max,
        per_height: minimizers.iter().map(|r| formula.row(r, height_max)).collect(),
        running_min: running.iter().map(|r| formula.row(r, height_max)).collect(),
        overall_min: running.last().map(|r| formula.row(r, height_max)),
        full_table: keep_all.then(|| all.iter().map(|r| formula.row(r, height_max)).collect()),
    };
    (payload, running)
}

fn audit_records(minimizers: &[Measured], running: &[Measured], anchor: &'static str, inst: &str) -> Vec<CheckRecord> {
    let mut records = Vec::new();
    for r in minimizers {
        let nonzero = match &r.abs {
            Some(abs) => !abs.contains_zero(),
            None => r.valuation.is_some(),
        };
        let status = if nonzero {
            Status::Pass
        } else if !r.precise {
            Status::Imprecise
        } else {
            Status::Fail
        };
        records.push(CheckRecord::new(
            "lambda-nonzero",
            anchor,
            format!("{inst} b={:?}", r.b),
            status,
            Quantity::interval(&r.log_abs),
            Quantity::text("log|Lambda| finite"),
        ));
    }
    let monotone = running.windows(2).all(|w| !better(&w[0], &w[1]));
    records.push(CheckRecord::new(
        "running-min-monotone",
        anchor,
        inst,
        status_of(monotone),
        Quantity::integer(&Integer::from(running.len())),
        Quantity::text("non-increasing"),
    ));
    let symmetric_free = minimizers.iter().all(|r| canonical(&r.b));
    records.push(CheckRecord::new(
        "sign-representatives",
        anchor,
        inst,
        status_of(symmetric_free),
        Quantity::text("first nonzero coordinate positive"),
        Quantity::text("one of b, -b"),
    ));
    records
}

fn log_h0_of(outcome: &SearchOutcome) -> Option<Float> {
    match outcome {
        SearchOutcome::Found(a) => Some(a.log_h0.value().clone()),
        _ => None,
    }
}

/// Enumerates every `b ∈ ℤ^m` with `0 < H(b) ≤ height_max` (one of `b, −b`),
/// measures `|Σ b_i log^i(1+α)|`, and compares against `H(b)^{−μ(ε)}`.
pub fn exhaustive_audit(cfg: &AuditConfig) -> Result<AuditReport> {
    let cc = &cfg.constants;
    if cc.p.is_some() {
        return padic_audit(cfg, &PadicAuditOptions::default());
    }
    let m = cc.m;
    let prec = cc.precision_bits;
    let c = constants_arch(m, &cc.alpha, prec, cc.variant)?;
    let outcome = run_search(Criterion::Arch(&c), &c.delta, cc)?;
    let inst = format!("m={m} alpha={} H<={}", cc.alpha, cfg.height_max);
    let mut records = search_records(&outcome, anchors::HOW_TO_CALCULATE, &inst);

    let formula = Formula {
        exponent: c.delta.is_positive().then(|| {
            Interval::from_endpoints(
                c.exponent(&cc.epsilon).unwrap().value().clone(),
                c.exponent(&cc.epsilon).unwrap().value().clone(),
            )
        }),
        nw: nw_interval(m, &cc.alpha, prec),
        log_h0: log_h0_of(&outcome),
        prec,
    };
    let measure = MeasureSummary {
        exponent: c.exponent(&cc.epsilon).map(|f| f.to_repr()),
        ratio_nu_delta: c.ratio().map(|f| f.to_repr()),
        criterion_inapplicable: c.delta_sign() != Sign::Positive,
        search: outcome,
        nw_comparison: formula.nw.lower().to_repr(),
    };

    let alpha = cc.alpha.clone();
    let (count, minimizers, all) = enumerate(m, cfg.height_max, cfg.full_table, |b| {
        let e = eval_linear_form_arch(b, &alpha, prec)?;
        let height = b.iter().map(|x| x.abs()).max().unwrap();
        let log_abs = if e.value.contains_zero() {
            // unbounded below; keep a finite key that sorts first
            let p = e.value.prec();
            Interval::from_endpoints(
                Float::with_val(p, rug::float::Special::NegInfinity),
                Float::with_val(p, e.value.hi().clone().ln()),
            )
        } else {
            e.value.ln()
        };
        Ok(Measured {
            b: b.to_vec(),
            height,
            log_abs,
            abs: Some(e.value),
            valuation: None,
            precision: e.precision,
            precise: e.precise,
        })
    })?;
    let (payload, running) = search_payload(
        measure,
        &formula,
        cfg.height_max,
        count,
        minimizers.clone(),
        all,
        cfg.full_table,
    );
    records.extend(audit_records(&minimizers, &running, anchors::POWER_OF_LOG_INDEP, &inst));
    AuditReport::new("audit", cfg, records, &payload)
}

fn nw_interval(m: usize, alpha: &AlphaInput, prec: u32) -> Interval {
    Interval::from_i64(alpha.height(), prec)
        .exp()
        .mul_i64(105_500)
        .mul_i64(((m - 1) * (m - 1)) as i64)
}

/// Ranges for the p-adic remainder-bound checks run alongside the search.
#[derive(Clone, Debug, Serialize)]
pub struct PadicAuditOptions {
    pub n_min: usize,
    pub n_max: usize,
}

impl Default for PadicAuditOptions {
    fn default() -> Self {
        Self { n_min: 1, n_max: 6 }
    }
}

/// Records comparing `|D·R_{i,n+1}(α)|_p` against the p-adic remainder
/// bound for `n_min ≤ n ≤ n_max` and every family.
pub fn padic_remainder_checks(
    m: usize,
    alpha: &AlphaInput,
    p: u64,
    opts: &PadicAuditOptions,
) -> Result<Vec<CheckRecord>> {
    let v = alpha.valuation(p);
    if v < 1 {
        return Err(Error::PadicSmallness { p, valuation: v });
    }
    let threshold = measure_bounds::padic_threshold(m, p, v, DEFAULT_PRECISION);
    let a = alpha.as_rational();
    let per_n = (opts.n_min..=opts.n_max)
        .into_par_iter()
        .map(|n| -> Result<Vec<CheckRecord>> {
            let params = ConstructionParams::new(m, n)?;
            let system = crate::pade_construct::build_system(params)?;
            let scaler = Rational::from(integrality_scaler(m, n));
            let bound = remainder_bound_padic_value(m, n, p, v);
            let below = *threshold.hi() > n as u64;
            let mut out = Vec::new();
            for i in 1..=m {
                let coeffs: Vec<Rational> = system
                    .family(i)
                    .iter()
                    .map(|poly| Rational::from(&scaler * &poly.eval(&a)))
                    .collect();
                let measured = measure_linear_form(&coeffs, &a, p)?;
                let norm = measured.value.norm();
                let ok = norm.as_ref().is_some_and(|q| *q <= bound);
                let mut inst = format!("m={m} n={n} i={i} alpha={alpha} p={p}");
                if below {
                    inst.push_str(" below-threshold");
                }
                out.push(CheckRecord::new(
                    "padic-remainder-bound",
                    anchors::P_UPPER_BOUND,
                    inst,
                    if norm.is_some() {
                        status_of(ok)
                    } else {
                        Status::Imprecise
                    },
                    Quantity::exact(&norm.unwrap_or_default()),
                    Quantity::exact(&bound),
                ));
            }
            Ok(out)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(per_n.into_iter().flatten().collect())
}

/// The p-adic counterpart of [`exhaustive_audit`], plus the p-adic
/// remainder-bound checks.
pub fn padic_audit(cfg: &AuditConfig, opts: &PadicAuditOptions) -> Result<AuditReport> {
    let cc = &cfg.constants;
    let p =
        cc.p.ok_or_else(|| Error::InvalidParams("p-adic audit needs a prime p".into()))?;
    let m = cc.m;
    let prec = cc.precision_bits;
    let c = constants_padic(m, &cc.alpha, p, prec)?;
    let outcome = run_search(Criterion::Padic(&c), &c.delta, cc)?;
    let inst = format!("m={m} alpha={} p={p} H<={}", cc.alpha, cfg.height_max);
    let mut records = search_records(&outcome, anchors::CRITERE_P, &inst);
    records.extend(padic_remainder_checks(m, &cc.alpha, p, opts)?);

    let formula = Formula {
        exponent: c
            .exponent(&cc.epsilon)
            .map(|f| Interval::from_endpoints(f.value().clone(), f.value().clone())),
        nw: nw_interval(m, &cc.alpha, prec),
        log_h0: log_h0_of(&outcome),
        prec,
    };
    let measure = MeasureSummary {
        exponent: c.exponent(&cc.epsilon).map(|f| f.to_repr()),
        ratio_nu_delta: c.exponent(&Rational::new()).map(|f| f.to_repr()),
        criterion_inapplicable: c.delta_sign() != Sign::Positive,
        search: outcome,
        nw_comparison: formula.nw.lower().to_repr(),
    };

    let a = cc.alpha.as_rational();
    let ln_p = Interval::from_i64(p as i64, prec).ln();
    let (count, minimizers, all) = enumerate(m, cfg.height_max, cfg.full_table, |b| {
        let coeffs: Vec<Rational> = b.iter().map(|&x| Rational::from(x)).collect();
        let measured = measure_linear_form(&coeffs, &a, p)?;
        let height = b.iter().map(|x| x.abs()).max().unwrap();
        let valuation = measured.value.certified_valuation();
        let log_abs = match valuation {
            Some(v) => ln_p.mul_i64(-v),
            None => Interval::from_endpoints(
                Float::with_val(prec, rug::float::Special::NegInfinity),
                Float::with_val(prec, rug::float::Special::NegInfinity),
            ),
        };
        Ok(Measured {
            b: b.to_vec(),
            height,
            log_abs,
            abs: None,
            valuation,
            precision: measured.precision as u32,
            precise: valuation.is_some(),
        })
    })?;
    let (payload, running) = search_payload(
        measure,
        &formula,
        cfg.height_max,
        count,
        minimizers.clone(),
        all,
        cfg.full_table,
    );
    records.extend(audit_records(
        &minimizers,
        &running,
        anchors::P_POWER_OF_LOG_INDEP,
        &inst,
    ));
    AuditReport::new("padic-audit", cfg, records, &payload)
}

/// The p-adic logarithm as it appears in reports.
pub fn padic_log_view(alpha: &AlphaInput, p: u64, digits: i64) -> Result<PAdicRepr> {
    let r = padic_eval::padic_log1p_rational(&alpha.as_rational(), p, digits)?;
    Ok(PAdicRepr::from(&r.value))
}
