//! Decides whether the centered Hardy–Littlewood maximal operator has a
//! non-constant fixed point in a rearrangement-invariant space `X(ℝⁿ)`, and
//! numerically certifies the estimates the decision rests on.
//!
//! * [`funcalg`]: exact piecewise power-log functions and quadrature.
//! * [`rearrange`]: distribution functions, `f*` and `f**`.
//! * [`spaces`]: r.i. space descriptors, norms, fundamental functions and indices.
//! * [`operators`]: ball averages, the maximal operator, the Riesz potential `I₂`,
//!   the Hardy operator `P_{1−2/n}` and the tail functional.
//! * [`decide`]: the fixed-point decision engine.
//! * [`verify`]: grid-based verification reports.
//! * [`cli`]: the command-line front end.

pub mod cli;
pub mod decide;
pub mod error;
pub mod funcalg;
pub mod grid;
pub mod operators;
pub mod profile;
pub mod rearrange;
pub mod serde_ext;
pub mod spaces;
pub mod verify;

pub use error::{Error, Result};
