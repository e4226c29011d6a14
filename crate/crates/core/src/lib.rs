//! Exact construction and verification of Hermite–Padé approximants of powers
//! of `log(1+z)`, with effective linear-independence measures.

pub mod audit;
pub mod directed;
pub mod error;
pub mod measure_bounds;
pub mod pade_construct;
pub mod padic_eval;
pub mod report;
pub mod series_kernel;

pub use error::{Error, Result};
