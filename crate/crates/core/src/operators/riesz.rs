//! The Riesz potential `I₂f(x) = ∫ |x − y|^{2−n} f(y) dy` on radial data.

use super::RadialFunction;
use crate::funcalg::QuadratureConfig;
use crate::rearrange::{unit_ball_volume, unit_sphere_area, DecreasingProfile, RadialProfile};
use crate::{Error, Result};

/// `I₂f(ρ) = σ_{n−1} [ρ^{2−n} ∫_0^ρ g₀(s) s^{n−1} ds + ∫_ρ^∞ g₀(s) s ds]`.
///
/// Each shell `|y| = s` contributes `σ_{n−1} s^{n−1} max(ρ, s)^{2−n} g₀(s)`;
/// the two integrals are exact for piecewise power-log profiles and a
/// divergent tail yields `+∞`.
pub fn riesz_radial(f: &RadialProfile, rho: f64, cfg: &QuadratureConfig) -> Result<f64> {
    let n = f.dimension();
    if n <= 2 {
        return Err(Error::dimension(n, "the Riesz potential I₂ needs n ≥ 3"));
    }
    if !(rho >= 0.0) {
        return Err(Error::Domain(format!("radius must be non-negative, got {rho}")));
    }
    let g = f.profile();
    if g.is_zero() {
        return Ok(0.0);
    }
    let nf = n as f64;
    let outer = g.times_power(1.0).integrate(rho, f64::INFINITY, cfg)?;
    let inner = if rho == 0.0 {
        0.0
    } else {
        let m = g.times_power(nf - 1.0).integrate(0.0, rho, cfg)?;
        m * rho.powf(2.0 - nf)
    };
    Ok(unit_sphere_area(n) * (inner + outer))
}

/// `x ↦ I₂f(x)` as a radial function in its own right.
#[derive(Clone, Debug)]
pub struct RieszLift {
    source: RadialProfile,
    cfg: QuadratureConfig,
}

impl RieszLift {
    pub fn new(source: RadialProfile, cfg: QuadratureConfig) -> Result<Self> {
        let n = source.dimension();
        if n <= 2 {
            return Err(Error::dimension(n, "the Riesz potential I₂ needs n ≥ 3"));
        }
        Ok(RieszLift { source, cfg })
    }

    /// `I₂` of the indicator of the centered ball of unit volume.
    pub fn unit_ball(n: usize) -> Result<Self> {
        Self::new(RadialProfile::ball_indicator(n, 1.0)?, QuadratureConfig::default())
    }

    pub fn source(&self) -> &RadialProfile {
        &self.source
    }
}

impl RadialFunction for RieszLift {
    fn dimension(&self) -> usize {
        self.source.dimension()
    }
    fn value(&self, rho: f64) -> f64 {
        riesz_radial(&self.source, rho, &self.cfg).unwrap_or(f64::INFINITY)
    }
    fn kinks(&self) -> Vec<f64> {
        self.source.profile().interior_breakpoints().to_vec()
    }
    fn head_power(&self) -> f64 {
        // g₀ ~ ρ^α near 0 gives I₂f ~ ρ^{α+2} when α < −2, bounded otherwise
        (self.source.profile().head().power + 2.0).min(0.0)
    }
    fn is_continuous_at(&self, rho: f64) -> bool {
        rho > 0.0 || self.head_power() >= 0.0
    }
}

/// `(I₂f⁰)*(t)` where `f⁰(x) = d(c_n |x|ⁿ)`.
///
/// `I₂f⁰` is radial and non-increasing, so its rearrangement is
/// `t ↦ I₂f⁰((t/c_n)^{1/n})`.
pub fn riesz_of_lift_rearranged(d: &DecreasingProfile, t: f64, n: usize, cfg: &QuadratureConfig) -> Result<f64> {
    let lifted = RadialProfile::lift(d, n)?;
    let rho = (t / unit_ball_volume(n)).powf(1.0 / n as f64);
    riesz_radial(&lifted, rho, cfg)
}

/// Angular average of the Newton kernel: `∫_{S^{n−1}} |x − sω|^{2−n} dω` with
/// `|x| = ρ`, by direct quadrature over the polar angle.
///
/// Only used to validate the shell identity behind [`riesz_radial`].
pub fn newton_kernel_sphere_integral(n: usize, rho: f64, s: f64, cfg: &QuadratureConfig) -> Result<f64> {
    if n <= 2 {
        return Err(Error::dimension(n, "the Newton kernel |x|^{2−n} needs n ≥ 3"));
    }
    let nf = n as f64;
    let kernel = |theta: f64| {
        let half = (0.5 * theta).sin();
        // |x − sω|² = (ρ − s)² + 4ρs sin²(θ/2)
        let d2 = (rho - s) * (rho - s) + 4.0 * rho * s * half * half;
        d2.powf(0.5 * (2.0 - nf)) * theta.sin().powi(n as i32 - 2)
    };
    // the kernel peaks at θ = 0 when ρ ≈ s; split there to help the bisection
    let split = ((rho - s).abs() / rho.max(s)).clamp(1e-6, 1.0);
    let a = crate::funcalg::quad::adaptive(kernel, 0.0, split, cfg).value;
    let b = crate::funcalg::quad::adaptive(kernel, split, std::f64::consts::PI, cfg).value;
    Ok(unit_sphere_area(n - 1) * (a + b))
}

/// `σ_{n−1} max(ρ, s)^{2−n}`.
pub fn newton_shell_closed_form(n: usize, rho: f64, s: f64) -> f64 {
    unit_sphere_area(n) * rho.max(s).powf(2.0 - n as f64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::funcalg::PiecewisePowerLog;
    use std::f64::consts::PI;

    #[test]
    fn unit_volume_ball_potential() {
        let cfg = QuadratureConfig::default();
        let f = RadialProfile::ball_indicator(3, 1.0).unwrap();
        let big_r = (3.0 / (4.0 * PI)).cbrt();
        // outside: |B_R| ρ^{-1} = 1/ρ
        let v = riesz_radial(&f, 2.0 * big_r, &cfg).unwrap();
        let want = 1.0 / (2.0 * big_r);
        assert!((v - want).abs() < 1e-13 * want);
        let rho = 100.0 * big_r;
        let far = riesz_radial(&f, rho, &cfg).unwrap();
        assert!((far * rho - 1.0).abs() < 1e-6);
        // inside: 4π [ρ²/3 + (R² − ρ²)/2]
        let rho = 0.5 * big_r;
        let inside = riesz_radial(&f, rho, &cfg).unwrap();
        let want = 4.0 * PI * (rho * rho / 3.0 + 0.5 * (big_r * big_r - rho * rho));
        assert!((inside - want).abs() < 1e-13 * want);
    }

    #[test]
    fn zero_and_dimension_errors() {
        let cfg = QuadratureConfig::default();
        let z = RadialProfile::new(3, PiecewisePowerLog::constant(0.0)).unwrap();
        assert_eq!(riesz_radial(&z, 1.0, &cfg).unwrap(), 0.0);
        let two = RadialProfile::ball_indicator(2, 1.0).unwrap();
        assert!(matches!(riesz_radial(&two, 1.0, &cfg), Err(Error::Dimension { n: 2, .. })));
        // constant profile: ∫_ρ^∞ s ds diverges
        let one = RadialProfile::new(3, PiecewisePowerLog::constant(1.0)).unwrap();
        assert_eq!(riesz_radial(&one, 1.0, &cfg).unwrap(), f64::INFINITY);
    }

    #[test]
    fn shell_identity_against_angular_quadrature() {
        let cfg = QuadratureConfig {
            rel_tol: 1e-12,
            ..QuadratureConfig::default()
        };
        for n in [3usize, 4, 5] {
            for (rho, s) in [(0.3, 2.0), (2.0, 0.3), (1.0, 1.1), (5.0, 4.0)] {
                let q = newton_kernel_sphere_integral(n, rho, s, &cfg).unwrap();
                let c = newton_shell_closed_form(n, rho, s);
                assert!((q / c - 1.0).abs() < 1e-8, "n={n} ρ={rho} s={s}: {q} vs {c}");
            }
        }
    }

    #[test]
    fn lifted_potentials_are_nonincreasing() {
        let cfg = QuadratureConfig::default();
        for d in [
            DecreasingProfile::indicator(1.0).unwrap(),
            DecreasingProfile::steps(&[1.0, 4.0], &[1.0, 0.5]).unwrap(),
        ] {
            let lifted = RadialProfile::lift(&d, 3).unwrap();
            let mut prev = f64::INFINITY;
            for k in 0..60 {
                let rho = 1e-2 * 10f64.powf(4.0 * k as f64 / 59.0);
                let v = riesz_radial(&lifted, rho, &cfg).unwrap();
                assert!(v <= prev * (1.0 + 1e-12), "ρ={rho}");
                prev = v;
            }
        }
    }
}
