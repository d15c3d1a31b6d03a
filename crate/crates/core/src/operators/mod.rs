//! Operators on radial and decreasing data: ball averages and the centered
//! maximal operator, the Riesz potential `I₂`, the Hardy-type operator
//! `P_{1−2/n}` and the tail functional `∫_t^∞ f**(s) s^{2/n−1} ds`.

mod ball;
mod hardy;
mod riesz;

pub use ball::{ball_average, default_radius_grid, maximal_radial, BallAverageRequest, MaximalReport, RadialFunction};
pub use hardy::{hardy_p, hardy_p_indicator, oneil_bracket, tail_t, TailProfile};
pub use riesz::{
    newton_kernel_sphere_integral, newton_shell_closed_form, riesz_of_lift_rearranged, riesz_radial, RieszLift,
};
