//! Shared pieces of the machine-readable reports.

use rug::{Integer, Rational};
use serde::Serialize;

use crate::directed::{DirectedFloat, FloatRepr, Interval, IntervalRepr};

pub const AUDIT_SCHEMA: &str = "logpade.audit-report/v1";

/// Anchor labels attached to every check record. They name the identity or
/// bound that a check exercises.
pub mod anchors {
    pub const COEFFICIENTS: &str = "coefficients";
    pub const LOG_PADE_R: &str = "log pade R";
    pub const FIRST_TERM_R: &str = "first term R";
    pub const REMARK_BIJ: &str = "remark bij";
    pub const COR_FUND_PADE: &str = "cor fund Pade";
    pub const DIAGONAL_NORMALITY: &str = "diagonal normality log";
    pub const KEY_COROLLARY: &str = "key corollary";
    pub const TISAI_DENOMINATOR: &str = "tisai denominator";
    pub const DENOMI2: &str = "denomi2";
    pub const KEY_KILL_DENOMI: &str = "key kill denomi";
    pub const KEISU_OOKISA: &str = "keisu ookisa";
    pub const UEKARA_JYOUYOKOU: &str = "uekara jyouyokou";
    pub const P_UPPER_BOUND: &str = "p upper bound jyouyo";
    pub const GROWTH_DN: &str = "growth dn";
    pub const POWER_OF_LOG_INDEP: &str = "power of log indep";
    pub const COROLLARY_MAIN: &str = "corollary main theorem";
    pub const P_POWER_OF_LOG_INDEP: &str = "p power of log indep";
    pub const HOW_TO_CALCULATE: &str = "how to calculate";
    pub const CRITERE: &str = "critere";
    pub const CRITERE_P: &str = "critere p";
    pub const N_W: &str = "N-W";

    pub const ALL: &[&str] = &[
        COEFFICIENTS,
        LOG_PADE_R,
        FIRST_TERM_R,
        REMARK_BIJ,
        COR_FUND_PADE,
        DIAGONAL_NORMALITY,
        KEY_COROLLARY,
        TISAI_DENOMINATOR,
        DENOMI2,
        KEY_KILL_DENOMI,
        KEISU_OOKISA,
        UEKARA_JYOUYOKOU,
        P_UPPER_BOUND,
        GROWTH_DN,
        POWER_OF_LOG_INDEP,
        COROLLARY_MAIN,
        P_POWER_OF_LOG_INDEP,
        HOW_TO_CALCULATE,
        CRITERE,
        CRITERE_P,
        N_W,
    ];
}

/// Canonical `num/den` rendering (the denominator is always written).
pub fn rational_string(q: &Rational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Imprecise,
    Skipped,
}

/// A value attached to a check record.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Quantity {
    Exact(String),
    Integer(String),
    Float(FloatRepr),
    Interval(IntervalRepr),
    Text(String),
}

impl Quantity {
    pub fn exact(q: &Rational) -> Self {
        Quantity::Exact(rational_string(q))
    }

    pub fn integer(k: &Integer) -> Self {
        Quantity::Integer(k.to_string())
    }

    pub fn float(f: &DirectedFloat) -> Self {
        Quantity::Float(f.to_repr())
    }

    pub fn interval(iv: &Interval) -> Self {
        Quantity::Interval(iv.into())
    }

    pub fn text(s: impl Into<String>) -> Self {
        Quantity::Text(s.into())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckRecord {
    pub name: String,
    pub paper_anchor: &'static str,
    pub instance: String,
    pub status: Status,
    pub lhs: Quantity,
    pub rhs: Quantity,
    pub margin: Option<Quantity>,
}

impl CheckRecord {
    pub fn new(
        name: impl Into<String>,
        anchor: &'static str,
        instance: impl Into<String>,
        status: Status,
        lhs: Quantity,
        rhs: Quantity,
    ) -> Self {
        Self {
            name: name.into(),
            paper_anchor: anchor,
            instance: instance.into(),
            status,
            lhs,
            rhs,
            margin: None,
        }
    }

    pub fn with_margin(mut self, margin: Quantity) -> Self {
        self.margin = Some(margin);
        self
    }

    pub fn passed(&self) -> bool {
        matches!(self.status, Status::Pass | Status::Skipped)
    }
}

pub fn status_of(ok: bool) -> Status {
    if ok {
        Status::Pass
    } else {
        Status::Fail
    }
}
