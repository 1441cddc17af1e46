//! Exponent-comparison constants and the inequalities built from them.
//!
//! Every constant is astronomically large (already `3^256` for cubic graphs
//! with `h = 3`), so all of them are carried as natural logarithms and every
//! comparison happens in log-space.

mod suite;
mod verify;

pub use suite::{desk_suite, SuiteRow, SuiteSummary, EXTRAPOLATION_CSV_HEADER};
pub use verify::{
    certified_cheeger, check_extrapolation, check_nonconcentrated, check_one_sided, log_compare, ExtrapolationVerdict,
    GammaSource, InequalityCheck, NonConcVerdict, OneSidedVerdict,
};

use thiserror::Error;

use crate::graph::GraphError;
use crate::metric::MetricError;
use crate::poincare::PoincareError;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ExtrapolationError {
    #[error("degree {0} must be at least 3")]
    DegreeTooSmall(usize),

    #[error("Cheeger constant {0} must be positive")]
    NonPositiveCheeger(f64),

    #[error("exponents must satisfy 1 ≤ p ≤ q (got p = {p}, q = {q})")]
    ExponentOrder { p: f64, q: f64 },

    #[error("τ = {0} must lie in (0, 1)")]
    TauOutOfRange(f64),

    #[error("C_R = {c_r} must be at least 5^q = {min}")]
    CrTooSmall { c_r: f64, min: f64 },

    #[error("constant C = {0} must be positive")]
    NonPositiveC(f64),

    #[error("graph is not regular")]
    NotRegular,

    #[error(transparent)]
    Graph(#[from] GraphError),

    #[error(transparent)]
    Metric(#[from] MetricError),

    #[error(transparent)]
    Poincare(#[from] PoincareError),
}

fn check_common(d: usize, h: f64) -> Result<(), ExtrapolationError> {
    if d < 3 {
        return Err(ExtrapolationError::DegreeTooSmall(d));
    }
    if !(h > 0.0 && h.is_finite()) {
        return Err(ExtrapolationError::NonPositiveCheeger(h));
    }
    Ok(())
}

/// `C₁, …, C₄` as natural logarithms.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExtrapolationConstants {
    pub d: usize,
    pub h: f64,
    pub p: f64,
    pub q: f64,
    pub ln_c1: f64,
    pub ln_c2: f64,
    pub ln_c3: f64,
    pub ln_c4: f64,
    /// True when `p < 1` was handled through the snowflake `ρ^p` with exponents `(1, q/p)`.
    pub via_snowflake: bool,
}

/// The constants for `1 ≤ p ≤ q`:
///
/// ```text
/// C₁ = exp(64·4^p·(d/h)·ln d)      C₂ = 24·d·5^p·(88·p·(d/h)²)^{2q−p}
/// C₃ = exp(64·4^q·(d/h)·ln d)      C₄ = 5^q·2^{q/p}
/// ```
///
/// For `0 < p < 1` the constants are those of the pair `(1, q/p)`, which
/// applies to the snowflake `ρ^p`; the result is flagged `via_snowflake`.
pub fn constants(d: usize, h: f64, p: f64, q: f64) -> Result<ExtrapolationConstants, ExtrapolationError> {
    check_common(d, h)?;
    if !(p > 0.0 && p <= q && q.is_finite()) {
        return Err(ExtrapolationError::ExponentOrder { p, q });
    }
    if p < 1.0 {
        let reduced = constants(d, h, 1.0, q / p)?;
        return Ok(ExtrapolationConstants { p, q, via_snowflake: true, ..reduced });
    }
    let ratio = d as f64 / h;
    let ln_d = (d as f64).ln();
    Ok(ExtrapolationConstants {
        d,
        h,
        p,
        q,
        ln_c1: 64.0 * 4f64.powf(p) * ratio * ln_d,
        ln_c2: 24f64.ln() + ln_d + p * 5f64.ln() + (2.0 * q - p) * (88.0 * p * ratio * ratio).ln(),
        ln_c3: 64.0 * 4f64.powf(q) * ratio * ln_d,
        ln_c4: q * 5f64.ln() + (q / p) * 2f64.ln(),
        via_snowflake: false,
    })
}

/// `ln Γ` with `Γ = max{exp(64·4^q·(d/h)·ln d), 5^q·2^{q/p}·C^{q/p}}`.
pub fn one_sided_gamma(d: usize, h: f64, p: f64, q: f64, c: f64) -> Result<f64, ExtrapolationError> {
    check_common(d, h)?;
    if !(p >= 1.0 && p <= q && q.is_finite()) {
        return Err(ExtrapolationError::ExponentOrder { p, q });
    }
    if !(c > 0.0) {
        return Err(ExtrapolationError::NonPositiveC(c));
    }
    let first = 64.0 * 4f64.powf(q) * (d as f64 / h) * (d as f64).ln();
    let second = q * 5f64.ln() + (q / p) * 2f64.ln() + (q / p) * c.ln();
    Ok(first.max(second))
}

/// Parameters of the Poincaré bound for maps that are not concentrated.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NonConcParams {
    pub d: usize,
    pub h: f64,
    pub q: f64,
    pub tau: f64,
    pub c_r: f64,
    /// First ceiling term (zero when `τ ≥ 1/2`).
    pub ell_tau: u64,
    /// Second ceiling term.
    pub ell_q: u64,
    pub ell: u64,
    /// `ln(30·16^q·d^{ℓ+1}·ℓ^{q+1})`.
    pub ln_bound: f64,
}

/// ```text
/// ℓ = ⌈max{log₂(1/(2τ)), 0} / log₂(1 + h/d)⌉ + ⌈1 / log₂(1 + h/(2^{2q+4}·d))⌉
/// bound = 30·16^q·d^{ℓ+1}·ℓ^{q+1}
/// ```
pub fn nonconc_params(d: usize, h: f64, q: f64, tau: f64, c_r: f64) -> Result<NonConcParams, ExtrapolationError> {
    check_common(d, h)?;
    if !(q >= 1.0 && q.is_finite()) {
        return Err(ExtrapolationError::ExponentOrder { p: 1.0, q });
    }
    if !(tau > 0.0 && tau < 1.0) {
        return Err(ExtrapolationError::TauOutOfRange(tau));
    }
    let min = 5f64.powf(q);
    if !(c_r >= min) {
        return Err(ExtrapolationError::CrTooSmall { c_r, min });
    }
    let df = d as f64;
    let numerator = (1.0 / (2.0 * tau)).log2().max(0.0);
    let ell_tau = (numerator / (1.0 + h / df).log2()).ceil() as u64;
    let ell_q = (1.0 / (1.0 + h / (2f64.powf(2.0 * q + 4.0) * df)).log2()).ceil() as u64;
    let ell = ell_tau + ell_q;
    let ln_bound = 30f64.ln() + q * 16f64.ln() + (ell as f64 + 1.0) * df.ln() + (q + 1.0) * (ell as f64).ln();
    Ok(NonConcParams { d, h, q, tau, c_r, ell_tau, ell_q, ell, ln_bound })
}
