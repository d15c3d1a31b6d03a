//! Ball averages of radial functions and the centered maximal operator.

use crate::funcalg::{quad, QuadratureConfig};
use crate::grid::LogGrid;
use crate::rearrange::{unit_ball_volume, unit_sphere_area, RadialProfile};
use crate::{Error, Result};
use serde::Serialize;

/// A function on ℝⁿ that depends only on `ρ = |x|`.
pub trait RadialFunction {
    fn dimension(&self) -> usize;

    /// Value at radius `ρ ≥ 0`; at `ρ = 0` the limit from the right.
    fn value(&self, rho: f64) -> f64;

    /// Radii where the function or its derivative may jump.
    fn kinks(&self) -> Vec<f64>;

    /// Leading power of the profile at `ρ → 0⁺`; the function is locally
    /// integrable iff this exceeds `−n`.
    fn head_power(&self) -> f64;

    fn is_continuous_at(&self, rho: f64) -> bool;

    /// `∫_a^b g₀(s) s^{n−1} ds` when a closed form is available.
    fn shell_mass(&self, _a: f64, _b: f64) -> Option<f64> {
        None
    }
}

impl RadialFunction for RadialProfile {
    fn dimension(&self) -> usize {
        RadialProfile::dimension(self)
    }
    fn value(&self, rho: f64) -> f64 {
        RadialProfile::value(self, rho)
    }
    fn kinks(&self) -> Vec<f64> {
        self.profile().interior_breakpoints().to_vec()
    }
    fn head_power(&self) -> f64 {
        self.profile().head().power
    }
    fn is_continuous_at(&self, rho: f64) -> bool {
        if rho == 0.0 {
            return self.head_power() >= 0.0;
        }
        self.profile().is_continuous_at(rho)
    }
    fn shell_mass(&self, a: f64, b: f64) -> Option<f64> {
        let n = RadialProfile::dimension(self);
        self.profile()
            .times_power(n as f64 - 1.0)
            .integrate(a, b, &QuadratureConfig::default())
            .ok()
    }
}

/// Inputs of a single ball average: the ball `B(x, r)` with `|x| = ρ`.
pub struct BallAverageRequest<'a> {
    pub profile: &'a dyn RadialFunction,
    pub rho: f64,
    pub r: f64,
}

/// `∫_0^θ sin^m`.
fn sine_power_integral(m: usize, theta: f64) -> f64 {
    match m {
        0 => theta,
        1 => 2.0 * (0.5 * theta).sin().powi(2),
        _ => {
            let cfg = QuadratureConfig {
                rel_tol: 1e-14,
                ..QuadratureConfig::default()
            };
            quad::adaptive(|u: f64| u.sin().powi(m as i32), 0.0, theta, &cfg).value
        }
    }
}

/// Surface measure of `{ω ∈ S^{n−1} : |sω − x| < r}` with `|x| = ρ`.
fn cap_measure(n: usize, s: f64, rho: f64, r: f64) -> f64 {
    if s + rho <= r {
        return unit_sphere_area(n);
    }
    if s <= rho - r || s >= rho + r {
        return 0.0;
    }
    if n == 1 {
        // only the point on the side of x
        return 1.0;
    }
    // 1 − cos θ₀ from the law of cosines, written without cancellation
    let one_minus_cos = ((r - s + rho) * (r + s - rho) / (2.0 * s * rho)).clamp(0.0, 2.0);
    let theta = 2.0 * (0.5 * one_minus_cos).sqrt().min(1.0).asin();
    unit_sphere_area(n - 1) * sine_power_integral(n - 2, theta)
}

/// `(1/|B_r|) ∫_{B(x,r)} g₀(|y|) dy` with `|x| = ρ`.
///
/// The integral runs over shells `|y| = s`, each weighted by the part of the
/// shell inside the ball; the `s`-range is split at kinks and at `|ρ − r|`,
/// `ρ + r`.
pub fn ball_average(req: &BallAverageRequest, cfg: &QuadratureConfig) -> Result<f64> {
    let (f, rho, r) = (req.profile, req.rho, req.r);
    let n = f.dimension();
    if !(r > 0.0 && r.is_finite()) {
        return Err(Error::Domain(format!("ball radius must be positive, got {r}")));
    }
    if !(rho >= 0.0 && rho.is_finite()) {
        return Err(Error::Domain(format!("center radius must be non-negative, got {rho}")));
    }
    let reaches_origin = rho < r;
    if reaches_origin && f.head_power() <= -(n as f64) {
        return Err(Error::NotIntegrable(format!(
            "profile ~ ρ^{} is not integrable near the origin in dimension {n}",
            f.head_power()
        )));
    }
    let full_end = (r - rho).max(0.0);
    let lo = (rho - r).abs();
    let hi = rho + r;
    let kinks = f.kinks();

    let mut total = 0.0;
    if full_end > 0.0 {
        total += match f.shell_mass(0.0, full_end) {
            Some(m) => unit_sphere_area(n) * m,
            None => {
                let g = |s: f64| f.value(s) * s.powi(n as i32 - 1);
                unit_sphere_area(n) * integrate_split(&g, 0.0, full_end, &kinks, cfg)
            }
        };
    }
    if rho > 0.0 {
        let g = |s: f64| {
            let c = cap_measure(n, s, rho, r);
            if c == 0.0 {
                0.0
            } else {
                f.value(s) * s.powi(n as i32 - 1) * c
            }
        };
        total += integrate_split_smoothed(&g, lo.max(full_end), hi, &kinks, cfg);
    }
    Ok(total / (unit_ball_volume(n) * r.powi(n as i32)))
}

fn integrate_split<F: Fn(f64) -> f64>(g: &F, a: f64, b: f64, kinks: &[f64], cfg: &QuadratureConfig) -> f64 {
    let mut pts = vec![a];
    pts.extend(kinks.iter().copied().filter(|&k| k > a && k < b));
    pts.push(b);
    pts.windows(2).map(|w| quad::adaptive(g, w[0], w[1], cfg).value).sum()
}

/// Like [`integrate_split`], with `s = a + (b − a)(1 − cos φ)/2` on every
/// panel to absorb the square-root behaviour of the cap angle at its ends.
fn integrate_split_smoothed<F: Fn(f64) -> f64>(g: &F, a: f64, b: f64, kinks: &[f64], cfg: &QuadratureConfig) -> f64 {
    let mut pts = vec![a];
    pts.extend(kinks.iter().copied().filter(|&k| k > a && k < b));
    pts.push(b);
    pts.windows(2)
        .map(|w| {
            let (lo, half) = (w[0], 0.5 * (w[1] - w[0]));
            let mapped = |phi: f64| g(lo + half * (1.0 - phi.cos())) * half * phi.sin();
            quad::adaptive(mapped, 0.0, std::f64::consts::PI, cfg).value
        })
        .sum()
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct MaximalReport {
    pub rho: f64,
    /// Grid supremum of the ball averages, together with `f(ρ)` when `f` is
    /// continuous at `ρ`. A lower bound for `Mf(ρ)`.
    pub value: f64,
    /// Maximizing radius; `None` when the supremum is the `r → 0` limit.
    pub argmax_r: Option<f64>,
    pub center_value: f64,
    pub grid_points: usize,
}

/// Default radius grid: 64 points per decade over `[1e−3, 1e3]`.
pub fn default_radius_grid() -> LogGrid {
    LogGrid::per_decade(1e-3, 1e3, 64.0).expect("static grid is valid")
}

pub fn maximal_radial(
    f: &dyn RadialFunction,
    rho: f64,
    r_grid: &LogGrid,
    cfg: &QuadratureConfig,
) -> Result<MaximalReport> {
    let center = f.value(rho);
    let (mut best, mut argmax) = if f.is_continuous_at(rho) {
        (center, None)
    } else {
        (0.0, None)
    };
    let radii = r_grid.points();
    for &r in &radii {
        let avg = ball_average(&BallAverageRequest { profile: f, rho, r }, cfg)?;
        if avg > best {
            best = avg;
            argmax = Some(r);
        }
    }
    Ok(MaximalReport {
        rho,
        value: best,
        argmax_r: argmax,
        center_value: center,
        grid_points: radii.len(),
    })
}
