//! Exact piecewise power-log functions on `(0, ∞)`.
//!
//! Every weight, profile and rearrangement handled by this crate is a finite
//! concatenation of terms `c · t^α · (1 + log⁺ t)^β`. Integrability, limits and
//! suprema of such functions are decided from the exponents, so membership
//! questions never depend on a truncation scale.

mod piece;
mod piecewise;
pub mod quad;

pub use piece::{exp_eq, exp_gt, exp_lt, is_tail_integrable, log_plus1, power_integral, PowerLogPiece, EXPONENT_EPS};
pub use piecewise::{PieceRecord, PiecewisePowerLog};
pub use quad::{QuadResult, QuadratureConfig};

/// Free-function form of [`PiecewisePowerLog::evaluate`].
pub fn evaluate(f: &PiecewisePowerLog, t: f64) -> crate::Result<f64> {
    f.evaluate(t)
}

pub fn integrate(f: &PiecewisePowerLog, a: f64, b: f64, cfg: &QuadratureConfig) -> crate::Result<f64> {
    f.integrate(a, b, cfg)
}

pub fn multiply(f: &PiecewisePowerLog, g: &PiecewisePowerLog) -> PiecewisePowerLog {
    f.multiply(g)
}
