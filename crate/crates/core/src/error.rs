use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("invalid alpha: {0}")]
    InvalidAlpha(String),

    #[error("kernel of the approximation system is empty")]
    EmptyKernel,

    #[error("order defect in family {family}: expected order {expected}, found {found:?}")]
    OrderDefect {
        family: usize,
        expected: usize,
        found: Option<usize>,
    },

    #[error("leading coefficient defect in family {family}: expected {expected}, found {found}")]
    LeadingDefect {
        family: usize,
        expected: String,
        found: String,
    },

    #[error("determinant is not a monomial: {0}")]
    NotMonomial(String),

    #[error("determinant vanishes identically")]
    GammaZero,

    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),

    #[error("n too small: need n >= {threshold}, got {n}")]
    NTooSmall { n: u64, threshold: String },

    #[error("p-adic smallness violated: v_{p}(alpha) = {valuation}")]
    PadicSmallness { p: u64, valuation: i64 },

    #[error("outside convergence disk: valuation {valuation} too small for p = {p}")]
    OutsideConvergenceDisk { p: u64, valuation: i64 },

    #[error("p-adic precision exhausted at {precision} digits")]
    PrecisionExhausted { precision: i64 },

    #[error("no admissible n below cap {cap}")]
    NoAdmissibleN { cap: String },

    #[error("criterion inapplicable: delta = {delta} is not positive")]
    CriterionInapplicable { delta: String },

    #[error("combinatorial cap exceeded: {count} vectors > {cap}")]
    CombinatorialCap { count: String, cap: u64 },

    #[error("internal error: {0}")]
    Internal(String),
}
