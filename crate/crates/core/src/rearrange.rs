//! Distribution functions, decreasing rearrangements `f*` and the maximal
//! function `f**` for radial profiles on ℝⁿ.

use crate::funcalg::{exp_eq, PiecewisePowerLog, PowerLogPiece, QuadratureConfig};
use crate::profile::Profile;
use crate::{Error, Result};
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

/// `Γ(k/2)` for a positive integer `k`.
fn gamma_half(k: usize) -> f64 {
    assert!(k > 0);
    let (mut g, mut x) = if k % 2 == 0 { (1.0, 1.0) } else { (PI.sqrt(), 0.5) };
    let target = k as f64 / 2.0;
    while x < target {
        g *= x;
        x += 1.0;
    }
    g
}

/// `c_n = π^{n/2} / Γ(n/2 + 1)`, the volume of the unit ball of ℝⁿ.
pub fn unit_ball_volume(n: usize) -> f64 {
    PI.powf(n as f64 / 2.0) / gamma_half(n + 2)
}

/// `σ_{n−1} = 2π^{n/2} / Γ(n/2)`, the surface area of the unit sphere in ℝⁿ.
/// For `n = 1` this is the counting measure of `{−1, 1}`.
pub fn unit_sphere_area(n: usize) -> f64 {
    2.0 * PI.powf(n as f64 / 2.0) / gamma_half(n)
}

/// A function on ℝⁿ of the form `x ↦ g₀(|x|)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RadialProfile {
    n: usize,
    profile: PiecewisePowerLog,
}

impl RadialProfile {
    pub fn new(n: usize, profile: PiecewisePowerLog) -> Result<Self> {
        if n == 0 {
            return Err(Error::dimension(n, "dimension must be at least 1"));
        }
        if !profile.is_nonnegative() {
            return Err(Error::descriptor("c", "radial profiles must be non-negative"));
        }
        Ok(RadialProfile { n, profile })
    }

    /// `min(1, |x|^{2−n})`, i.e. `χ_{|x|≤1} + |x|^{2−n} χ_{|x|>1}`.
    pub fn newtonian_cap(n: usize) -> Result<Self> {
        let g = PiecewisePowerLog::two_piece(
            1.0,
            PowerLogPiece::constant(1.0),
            PowerLogPiece::power(1.0, 2.0 - n as f64),
        )?;
        Self::new(n, g)
    }

    /// Indicator of the centered ball of the given volume.
    pub fn ball_indicator(n: usize, volume: f64) -> Result<Self> {
        if !(volume > 0.0) {
            return Err(Error::Domain("ball volume must be positive".into()));
        }
        let radius = (volume / unit_ball_volume(n)).powf(1.0 / n as f64);
        Self::new(n, PiecewisePowerLog::indicator(radius)?)
    }

    /// `f⁰(x) = d(c_n |x|ⁿ)`.
    pub fn lift(d: &DecreasingProfile, n: usize) -> Result<Self> {
        let body = d.body().compose_power(unit_ball_volume(n), n as f64)?;
        Self::new(n, body)
    }

    /// `x ↦ f(a x)`.
    pub fn dilate(&self, a: f64) -> Result<Self> {
        Self::new(self.n, self.profile.compose_power(a, 1.0)?)
    }

    pub fn dimension(&self) -> usize {
        self.n
    }

    pub fn profile(&self) -> &PiecewisePowerLog {
        &self.profile
    }

    pub fn value(&self, rho: f64) -> f64 {
        if rho == 0.0 {
            self.profile.head().limit_at_zero()
        } else {
            self.profile.value(rho)
        }
    }

    pub fn is_nonincreasing(&self) -> bool {
        is_nonincreasing(&self.profile)
    }

    fn ball_volume(&self, rho: f64) -> f64 {
        if rho.is_infinite() {
            f64::INFINITY
        } else {
            unit_ball_volume(self.n) * rho.powi(self.n as i32)
        }
    }
}

fn is_nonincreasing(f: &PiecewisePowerLog) -> bool {
    let pieces_ok = f.segments().all(|(lo, hi, p)| p.is_nonincreasing_on(lo, hi));
    let jumps_ok = f.interior_breakpoints().iter().all(|&t| {
        let left = f.left_limit(t);
        let right = f.value(t);
        right <= left * (1.0 + 1e-12) + 1e-300
    });
    pieces_ok && jumps_ok
}

/// A non-increasing, right-continuous function on `(0, ∞)`.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(transparent)]
pub struct DecreasingProfile {
    body: PiecewisePowerLog,
}

impl<'de> Deserialize<'de> for DecreasingProfile {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let body = PiecewisePowerLog::deserialize(d)?;
        DecreasingProfile::new(body).map_err(serde::de::Error::custom)
    }
}

impl DecreasingProfile {
    pub fn new(body: PiecewisePowerLog) -> Result<Self> {
        if !body.is_nonnegative() {
            return Err(Error::descriptor("c", "decreasing profiles must be non-negative"));
        }
        if !is_nonincreasing(&body) {
            return Err(Error::descriptor("pieces", "profile is not non-increasing"));
        }
        Ok(DecreasingProfile { body })
    }

    pub fn body(&self) -> &PiecewisePowerLog {
        &self.body
    }

    pub fn value(&self, t: f64) -> f64 {
        self.body.value(t)
    }

    pub fn zero() -> Self {
        DecreasingProfile {
            body: PiecewisePowerLog::constant(0.0),
        }
    }

    /// `χ_[0,s)`.
    pub fn indicator(s: f64) -> Result<Self> {
        Self::new(PiecewisePowerLog::indicator(s)?)
    }

    /// `h_n(t) = χ_[0,1](t) + t^{2/n−1} χ_[1,∞)(t)`, which is also `W⁻¹`.
    pub fn h(n: usize) -> Result<Self> {
        Self::new(PiecewisePowerLog::two_piece(
            1.0,
            PowerLogPiece::constant(1.0),
            PowerLogPiece::power(1.0, 2.0 / n as f64 - 1.0),
        )?)
    }

    /// `1/W` where `W(t) = max(1, t^{1−2/n})`.
    pub fn w_inverse(n: usize) -> Result<Self> {
        Self::h(n)
    }

    /// The exact rearrangement of `min(1, |x|^{2−n})`: `1` on `(0, c_n)` and
    /// `(t/c_n)^{(2−n)/n}` beyond.
    pub fn newtonian_cap_star(n: usize) -> Result<Self> {
        let cn = unit_ball_volume(n);
        let e = (2.0 - n as f64) / n as f64;
        Self::new(PiecewisePowerLog::two_piece(
            cn,
            PowerLogPiece::constant(1.0),
            PowerLogPiece::power(cn.powf(-e), e),
        )?)
    }

    /// Step profile equal to `values[i]` on `[breaks[i−1], breaks[i])`, with
    /// `breaks[−1] = 0`, and zero after the last break.
    pub fn steps(breaks: &[f64], values: &[f64]) -> Result<Self> {
        if breaks.len() != values.len() {
            return Err(Error::descriptor("steps", "one break per value"));
        }
        let mut b = vec![0.0];
        b.extend_from_slice(breaks);
        b.push(f64::INFINITY);
        let mut pieces: Vec<PowerLogPiece> = values.iter().map(|&v| PowerLogPiece::constant(v)).collect();
        pieces.push(PowerLogPiece::ZERO);
        Self::new(PiecewisePowerLog::new(b, pieces)?)
    }
}

impl Profile for DecreasingProfile {
    fn value(&self, t: f64) -> f64 {
        self.body.value(t)
    }
    fn kinks(&self) -> Vec<f64> {
        self.body.kinks()
    }
    fn head(&self) -> Result<PowerLogPiece> {
        Profile::head(&self.body)
    }
    fn tail(&self) -> Result<PowerLogPiece> {
        Profile::tail(&self.body)
    }
    fn exact(&self) -> Option<&PiecewisePowerLog> {
        Some(&self.body)
    }
    fn average(&self, t: f64, cfg: &QuadratureConfig) -> f64 {
        self.body.average(t, cfg)
    }
    fn mass(&self, cfg: &QuadratureConfig) -> f64 {
        self.body.mass(cfg)
    }
}

/// Sub-interval on which a single piece is monotone.
struct MonotoneRun {
    lo: f64,
    hi: f64,
    piece: PowerLogPiece,
}

fn monotone_runs(f: &PiecewisePowerLog) -> Vec<MonotoneRun> {
    let mut runs = Vec::new();
    for (lo, hi, p) in f.segments() {
        let mut cuts = vec![lo];
        if p.has_log() {
            if lo < 1.0 && hi > 1.0 {
                cuts.push(1.0);
            }
            if !exp_eq(p.power, 0.0) {
                let u = -p.logpower / p.power;
                if u > 1.0 {
                    let t = (u - 1.0).exp();
                    if t > lo && t < hi && t > 1.0 {
                        cuts.push(t);
                    }
                }
            }
            cuts.sort_by(f64::total_cmp);
        }
        cuts.push(hi);
        for w in cuts.windows(2) {
            runs.push(MonotoneRun {
                lo: w[0],
                hi: w[1],
                piece: *p,
            });
        }
    }
    runs
}

fn run_end_values(run: &MonotoneRun) -> (f64, f64) {
    let a = if run.lo == 0.0 {
        run.piece.limit_at_zero()
    } else {
        run.piece.eval(run.lo)
    };
    let b = if run.hi.is_infinite() {
        run.piece.limit_at_infinity()
    } else {
        run.piece.eval(run.hi)
    };
    (a, b)
}

/// Solves `piece(ρ) = λ` on a monotone run whose end values bracket `λ`.
fn solve_level(run: &MonotoneRun, lambda: f64) -> f64 {
    let p = &run.piece;
    if run.hi <= 1.0 || !p.has_log() {
        return (lambda / p.coefficient).powf(1.0 / p.power);
    }
    if run.lo < 1.0 && !exp_eq(p.power, 0.0) {
        let x = (lambda / p.coefficient).powf(1.0 / p.power);
        if x >= run.lo && x <= 1.0 {
            return x;
        }
    }
    let increasing = run_end_values(run).1 > run_end_values(run).0;
    let mut a = run.lo.max(1.0).ln();
    let mut b = if run.hi.is_infinite() {
        let mut x = a + 1.0;
        while (p.eval(x.exp()) > lambda) != increasing && x < 700.0 {
            x = 2.0 * x + 1.0;
        }
        x.min(700.0)
    } else {
        run.hi.ln()
    };
    for _ in 0..200 {
        let m = 0.5 * (a + b);
        let above = p.eval(m.exp()) > lambda;
        if above == increasing {
            b = m;
        } else {
            a = m;
        }
    }
    (0.5 * (a + b)).exp()
}

/// `μ_f(λ) = |{x ∈ ℝⁿ : f(x) > λ}|`, possibly `+∞`.
pub fn distribution(f: &RadialProfile, lambda: f64) -> Result<f64> {
    if !(lambda > 0.0) {
        return Err(Error::Domain(format!("distribution level must be > 0, got {lambda}")));
    }
    let mut total = 0.0;
    for run in monotone_runs(&f.profile) {
        if run.piece.is_zero() {
            continue;
        }
        let (va, vb) = run_end_values(&run);
        let (lo, hi) = if va > lambda && vb > lambda {
            (run.lo, run.hi)
        } else if va <= lambda && vb <= lambda {
            // the only way to exceed λ on a monotone run is at an end
            continue;
        } else {
            let x = solve_level(&run, lambda);
            if va > lambda {
                (run.lo, x.clamp(run.lo, run.hi))
            } else {
                (x.clamp(run.lo, run.hi), run.hi)
            }
        };
        if hi.is_infinite() {
            return Ok(f64::INFINITY);
        }
        total += f.ball_volume(hi) - f.ball_volume(lo);
    }
    Ok(total)
}

/// Exact decreasing rearrangement `f*(t) = inf{λ : μ_f(λ) ≤ t}`.
///
/// Supported inputs: non-increasing radial profiles without log factors
/// (then `f*(t) = g₀((t/c_n)^{1/n})`), and arbitrary piecewise-constant
/// radial profiles.
pub fn rearrangement(f: &RadialProfile) -> Result<DecreasingProfile> {
    let g = &f.profile;
    if g.tail().limit_at_infinity().is_infinite() {
        return Err(Error::Domain("profile is not rearrangeable: distribution is identically infinite".into()));
    }
    let n = f.n;
    if f.is_nonincreasing() {
        let cn = unit_ball_volume(n);
        let body = g.compose_power(cn.powf(-1.0 / n as f64), 1.0 / n as f64)?;
        return DecreasingProfile::new(body.simplify());
    }
    let piecewise_constant = g
        .pieces()
        .iter()
        .all(|p| p.is_zero() || (exp_eq(p.power, 0.0) && exp_eq(p.logpower, 0.0)));
    if !piecewise_constant {
        return Err(Error::Unsupported(
            "exact rearrangement needs a non-increasing or piecewise-constant profile".into(),
        ));
    }
    // Sort levels by value; each contributes the volume of its shells.
    let mut levels: Vec<(f64, f64)> = g
        .segments()
        .filter(|(_, _, p)| !p.is_zero() && p.coefficient > 0.0)
        .map(|(lo, hi, p)| (p.coefficient, f.ball_volume(hi) - f.ball_volume(lo)))
        .collect();
    levels.sort_by(|a, b| b.0.total_cmp(&a.0));
    let mut breaks = vec![0.0];
    let mut pieces = Vec::new();
    let mut t = 0.0;
    for (value, volume) in levels {
        if let Some(last) = pieces.last_mut() {
            let last: &mut PowerLogPiece = last;
            if last.coefficient == value {
                t += volume;
                *breaks.last_mut().unwrap() = t;
                if t.is_infinite() {
                    break;
                }
                continue;
            }
        }
        t += volume;
        pieces.push(PowerLogPiece::constant(value));
        breaks.push(t);
        if t.is_infinite() {
            break;
        }
    }
    if !t.is_infinite() {
        pieces.push(PowerLogPiece::ZERO);
        breaks.push(f64::INFINITY);
    }
    DecreasingProfile::new(PiecewisePowerLog::new(breaks, pieces)?)
}

/// `f**(t) = t⁻¹ ∫_0^t f*(s) ds`.
pub fn doublestar(d: &DecreasingProfile, t: f64) -> Result<f64> {
    if !(t > 0.0) {
        return Err(Error::Domain(format!("doublestar needs t > 0, got {t}")));
    }
    if !d.body.head().is_head_integrable() {
        return Err(Error::NotIntegrable("f* is not integrable near 0".into()));
    }
    Ok(d.body.integrate(0.0, t, &QuadratureConfig::default())? / t)
}

/// `|{t : d(t) > λ}|` for a decreasing profile, used to state
/// equimeasurability.
pub fn level_measure(d: &DecreasingProfile, lambda: f64) -> f64 {
    // d is non-increasing, so the set is an interval (0, τ).
    let mut tau = 0.0;
    for (lo, hi, p) in d.body.segments() {
        let start = if lo == 0.0 { p.limit_at_zero() } else { p.eval(lo) };
        if start <= lambda {
            break;
        }
        let end = if hi.is_infinite() { p.limit_at_infinity() } else { d.body.left_limit(hi) };
        if end > lambda {
            tau = hi;
            continue;
        }
        tau = solve_level(&MonotoneRun { lo, hi, piece: *p }, lambda);
        break;
    }
    tau
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Riemann-sum layer-cake oracle: shell volumes of `{ρ : g₀(ρ) > λ}` on a
    /// fine radial grid, independent of the closed-form level solver.
    fn oracle_distribution(f: &RadialProfile, lambda: f64, rho_max: f64, cells: usize) -> f64 {
        let n = f.dimension() as i32;
        let cn = unit_ball_volume(f.dimension());
        let h = rho_max / cells as f64;
        (0..cells)
            .map(|i| {
                let (a, b) = (i as f64 * h, (i + 1) as f64 * h);
                if f.value(0.5 * (a + b)) > lambda {
                    cn * (b.powi(n) - a.powi(n))
                } else {
                    0.0
                }
            })
            .sum()
    }

    fn oracle_rearrangement(f: &RadialProfile, t: f64) -> f64 {
        let (mut lo, mut hi) = (0.0, 2.0);
        for _ in 0..60 {
            let m = 0.5 * (lo + hi);
            if oracle_distribution(f, m, 40.0, 400_000) <= t {
                hi = m;
            } else {
                lo = m;
            }
        }
        0.5 * (lo + hi)
    }

    #[test]
    fn constants() {
        assert!((unit_ball_volume(1) - 2.0).abs() < 1e-15);
        assert!((unit_ball_volume(2) - PI).abs() < 1e-15);
        assert!((unit_ball_volume(3) - 4.0 * PI / 3.0).abs() < 1e-14);
        assert!((unit_sphere_area(3) - 4.0 * PI).abs() < 1e-14);
        assert!((unit_sphere_area(2) - 2.0 * PI).abs() < 1e-15);
        assert!((unit_sphere_area(1) - 2.0).abs() < 1e-15);
        for n in 1..10 {
            assert!((unit_sphere_area(n) - n as f64 * unit_ball_volume(n)).abs() < 1e-12);
        }
    }

    #[test]
    fn distribution_examples() {
        let f = RadialProfile::newtonian_cap(3).unwrap();
        let mu = distribution(&f, 0.5).unwrap();
        assert!((mu - 8.0 * 4.0 * PI / 3.0).abs() < 1e-12);
        assert!((mu - 33.5103).abs() < 1e-4);
        assert_eq!(distribution(&f, 2.0).unwrap(), 0.0);
        let one = RadialProfile::new(3, PiecewisePowerLog::constant(1.0)).unwrap();
        assert_eq!(distribution(&one, 0.5).unwrap(), f64::INFINITY);
        assert!(distribution(&one, 0.0).is_err());
    }

    #[test]
    fn rearrangement_of_newtonian_cap() {
        let f = RadialProfile::newtonian_cap(3).unwrap();
        let star = rearrangement(&f).unwrap();
        let c3 = unit_ball_volume(3);
        assert_eq!(star.value(0.5 * c3), 1.0);
        assert!((star.value(8.0 * c3) - 0.5).abs() < 1e-14);
        let closed = DecreasingProfile::newtonian_cap_star(3).unwrap();
        for k in 0..64 {
            let t = 1e-2 * 10f64.powf(6.0 * k as f64 / 63.0);
            assert!((star.value(t) - closed.value(t)).abs() < 1e-12);
        }
        // brute-force oracle at a few points
        for t in [0.3 * c3, 2.0 * c3, 8.0 * c3] {
            let o = oracle_rearrangement(&f, t);
            assert!((o - star.value(t)).abs() < 1e-3, "t={t}: oracle {o}");
        }
    }

    #[test]
    fn rearrangement_of_ball_indicator() {
        let f = RadialProfile::ball_indicator(4, 2.5).unwrap();
        let star = rearrangement(&f).unwrap();
        assert_eq!(star.value(2.4), 1.0);
        assert_eq!(star.value(2.6), 0.0);
        assert!((star.body().interior_breakpoints()[0] - 2.5).abs() < 1e-13);
    }

    #[test]
    fn rearrangement_of_annulus_steps() {
        // 0.5 on |x|<1, 2 on 1≤|x|<2, 0 beyond (n = 2)
        let g = PiecewisePowerLog::new(
            vec![0.0, 1.0, 2.0, f64::INFINITY],
            vec![PowerLogPiece::constant(0.5), PowerLogPiece::constant(2.0), PowerLogPiece::ZERO],
        )
        .unwrap();
        let f = RadialProfile::new(2, g).unwrap();
        let star = rearrangement(&f).unwrap();
        assert_eq!(star.value(1.0), 2.0);
        assert!((star.body().interior_breakpoints()[0] - 3.0 * PI).abs() < 1e-12);
        assert_eq!(star.value(3.5 * PI), 0.5);
        assert_eq!(star.value(4.5 * PI), 0.0);
        for lambda in [0.1, 0.7, 1.9] {
            let lhs = distribution(&f, lambda).unwrap();
            let rhs = level_measure(&star, lambda);
            assert!((lhs - rhs).abs() < 1e-12 * lhs.max(1.0));
        }
    }

    #[test]
    fn unsupported_and_invalid_profiles() {
        let increasing = RadialProfile::new(3, PiecewisePowerLog::power(1.0, 1.0)).unwrap();
        assert!(rearrangement(&increasing).is_err());
        let bump = PiecewisePowerLog::two_piece(1.0, PowerLogPiece::power(1.0, 1.0), PowerLogPiece::ZERO).unwrap();
        assert!(rearrangement(&RadialProfile::new(3, bump).unwrap()).is_err());
        assert!(DecreasingProfile::new(PiecewisePowerLog::power(1.0, 0.5)).is_err());
        assert!(RadialProfile::new(0, PiecewisePowerLog::constant(1.0)).is_err());
    }

    #[test]
    fn lift_round_trip() {
        for n in [1usize, 2, 3, 5] {
            let corpus = [
                DecreasingProfile::h(n.max(3)).unwrap(),
                DecreasingProfile::indicator(0.7).unwrap(),
                DecreasingProfile::steps(&[1.0, 4.0], &[1.0, 0.5]).unwrap(),
                DecreasingProfile::newtonian_cap_star(3).unwrap(),
            ];
            for d in &corpus {
                let lifted = RadialProfile::lift(d, n).unwrap();
                let back = rearrangement(&lifted).unwrap();
                for k in 0..50 {
                    let t = 1e-3 * 10f64.powf(7.0 * k as f64 / 49.0);
                    let (a, b) = (back.value(t), d.value(t));
                    assert!((a - b).abs() <= 1e-12 * b.max(1e-300), "n={n} t={t}: {a} vs {b}");
                }
            }
        }
    }

    #[test]
    fn dilation_law() {
        let f = RadialProfile::newtonian_cap(3).unwrap();
        let star = rearrangement(&f).unwrap();
        for a in [0.5, 2.0] {
            let fa = rearrangement(&f.dilate(a).unwrap()).unwrap();
            for k in 0..40 {
                let t = 1e-2 * 10f64.powf(5.0 * k as f64 / 39.0);
                let lhs = fa.value(t);
                let rhs = star.value(a.powi(3) * t);
                assert!((lhs - rhs).abs() <= 1e-12 * rhs, "a={a} t={t}");
            }
        }
    }

    #[test]
    fn equimeasurability_on_log_grid() {
        for n in [3usize, 4] {
            let f = RadialProfile::newtonian_cap(n).unwrap();
            let star = rearrangement(&f).unwrap();
            for k in 0..50 {
                let lambda = 1e-3 * 10f64.powf(3.0 * k as f64 / 49.0) * 0.999;
                let lhs = distribution(&f, lambda).unwrap();
                let rhs = level_measure(&star, lambda);
                assert!((lhs - rhs).abs() <= 1e-9 * lhs, "n={n} λ={lambda}: {lhs} vs {rhs}");
            }
        }
    }

    #[test]
    fn distribution_with_log_factor() {
        // g₀ = ρ^{-1/2}(1+log⁺ρ)^{-1}: decreasing, level set is a ball
        let g = PiecewisePowerLog::single(PowerLogPiece::new(1.0, -0.5, -1.0));
        let f = RadialProfile::new(3, g.clone()).unwrap();
        for lambda in [0.05, 0.3, 2.0] {
            let mu = distribution(&f, lambda).unwrap();
            let rho = (mu / unit_ball_volume(3)).cbrt();
            assert!((g.value(rho) - lambda).abs() < 1e-10 * lambda);
            let o = oracle_distribution(&f, lambda, 2000.0, 2_000_000);
            assert!((o - mu).abs() < 1e-2 * mu);
        }
    }

    #[test]
    fn doublestar_examples() {
        let chi = DecreasingProfile::indicator(1.0).unwrap();
        assert!((doublestar(&chi, 4.0).unwrap() - 0.25).abs() < 1e-15);
        let h = DecreasingProfile::h(3).unwrap();
        let expected = 0.5 * (1.0 + 1.5 * (2f64.powf(2.0 / 3.0) - 1.0));
        assert!((doublestar(&h, 2.0).unwrap() - expected).abs() < 1e-14);
        assert!((doublestar(&h, 2.0).unwrap() - 0.94055).abs() < 1e-5);
        for d in [&chi, &h] {
            let v = doublestar(d, 1e-6).unwrap();
            assert!((v / d.value(1e-12) - 1.0).abs() < 1e-3);
        }
        let singular = DecreasingProfile::new(PiecewisePowerLog::power(1.0, -1.0)).unwrap();
        assert!(doublestar(&singular, 1.0).is_err());
        assert!(doublestar(&h, 0.0).is_err());
    }

    #[test]
    fn doublestar_dominates_and_decreases() {
        let corpus = [
            DecreasingProfile::h(3).unwrap(),
            DecreasingProfile::steps(&[1.0, 4.0], &[1.0, 0.5]).unwrap(),
            DecreasingProfile::newtonian_cap_star(5).unwrap(),
        ];
        for d in &corpus {
            let mut prev = f64::INFINITY;
            for k in 0..80 {
                let t = 1e-3 * 10f64.powf(8.0 * k as f64 / 79.0);
                let ds = doublestar(d, t).unwrap();
                assert!(ds >= d.value(t) * (1.0 - 1e-12));
                assert!(ds <= prev * (1.0 + 1e-12));
                prev = ds;
            }
        }
    }
}
