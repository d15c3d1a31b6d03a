//! Non-negative functions on `(0, ∞)` known through point values plus their
//! leading power-log behaviour at `0⁺` and `∞`.
//!
//! Exact [`PiecewisePowerLog`] bodies take closed-form paths. Everything else
//! (running averages, tail functionals) is handled by splitting `(0, ∞)` into
//! a core window, where quadrature or a dense grid runs, and the two ends,
//! where the asymptotic terms decide finiteness symbolically and contribute
//! their closed-form remainder.

use crate::funcalg::{
    exp_eq, exp_gt, exp_lt, is_tail_integrable, quad, PiecewisePowerLog, PowerLogPiece, QuadratureConfig,
};
use crate::{Error, Result};

pub trait Profile {
    fn value(&self, t: f64) -> f64;

    /// Points where the function or its derivative may jump.
    fn kinks(&self) -> Vec<f64>;

    /// Leading term as `t → 0⁺`.
    fn head(&self) -> Result<PowerLogPiece>;

    /// Leading term as `t → ∞`.
    fn tail(&self) -> Result<PowerLogPiece>;

    fn exact(&self) -> Option<&PiecewisePowerLog> {
        None
    }

    /// `t⁻¹ ∫_0^t f`.
    fn average(&self, t: f64, cfg: &QuadratureConfig) -> f64 {
        integrate_range(self, 0.0, t, cfg) / t
    }

    /// `∫_0^∞ f`.
    fn mass(&self, cfg: &QuadratureConfig) -> f64 {
        integral_of_power(self, 1.0, &PiecewisePowerLog::constant(1.0), cfg).unwrap_or(f64::INFINITY)
    }
}

impl<P: Profile + ?Sized> Profile for &P {
    fn value(&self, t: f64) -> f64 {
        (**self).value(t)
    }
    fn kinks(&self) -> Vec<f64> {
        (**self).kinks()
    }
    fn head(&self) -> Result<PowerLogPiece> {
        (**self).head()
    }
    fn tail(&self) -> Result<PowerLogPiece> {
        (**self).tail()
    }
    fn exact(&self) -> Option<&PiecewisePowerLog> {
        (**self).exact()
    }
    fn average(&self, t: f64, cfg: &QuadratureConfig) -> f64 {
        (**self).average(t, cfg)
    }
    fn mass(&self, cfg: &QuadratureConfig) -> f64 {
        (**self).mass(cfg)
    }
}

impl Profile for PiecewisePowerLog {
    fn value(&self, t: f64) -> f64 {
        PiecewisePowerLog::value(self, t)
    }
    fn kinks(&self) -> Vec<f64> {
        self.interior_breakpoints().to_vec()
    }
    fn head(&self) -> Result<PowerLogPiece> {
        let h = *PiecewisePowerLog::head(self);
        Ok(PowerLogPiece::power(h.coefficient, h.power))
    }
    fn tail(&self) -> Result<PowerLogPiece> {
        Ok(*PiecewisePowerLog::tail(self))
    }
    fn exact(&self) -> Option<&PiecewisePowerLog> {
        Some(self)
    }
    fn average(&self, t: f64, cfg: &QuadratureConfig) -> f64 {
        match self.integrate(0.0, t, cfg) {
            Ok(v) => v / t,
            Err(_) => f64::INFINITY,
        }
    }
    fn mass(&self, cfg: &QuadratureConfig) -> f64 {
        self.integrate(0.0, f64::INFINITY, cfg).unwrap_or(f64::INFINITY)
    }
}

/// The running average `t ↦ f**(t)` of another profile.
pub struct Averaged<'a, P: Profile + ?Sized> {
    inner: &'a P,
    cfg: QuadratureConfig,
}

impl<'a, P: Profile + ?Sized> Averaged<'a, P> {
    pub fn new(inner: &'a P, cfg: QuadratureConfig) -> Self {
        Averaged { inner, cfg }
    }
}

impl<P: Profile + ?Sized> Profile for Averaged<'_, P> {
    fn value(&self, t: f64) -> f64 {
        self.inner.average(t, &self.cfg)
    }
    fn kinks(&self) -> Vec<f64> {
        self.inner.kinks()
    }
    fn head(&self) -> Result<PowerLogPiece> {
        let h = self.inner.head()?;
        if h.is_zero() {
            return Ok(PowerLogPiece::ZERO);
        }
        if !h.is_head_integrable() {
            return Err(Error::NotIntegrable("profile is not integrable near 0".into()));
        }
        Ok(PowerLogPiece::power(h.coefficient / (h.power + 1.0), h.power))
    }
    fn tail(&self) -> Result<PowerLogPiece> {
        average_tail(self.inner, &self.cfg)
    }
}

/// Leading term of `t⁻¹∫_0^t f` as `t → ∞`.
pub fn average_tail<P: Profile + ?Sized>(p: &P, cfg: &QuadratureConfig) -> Result<PowerLogPiece> {
    let tail = p.tail()?;
    if tail.is_zero() || is_tail_integrable(&tail) {
        let m = p.mass(cfg);
        if m.is_infinite() {
            return Err(Error::NotIntegrable("profile is not integrable near 0".into()));
        }
        return Ok(if m == 0.0 {
            PowerLogPiece::ZERO
        } else {
            PowerLogPiece::power(m, -1.0)
        });
    }
    let (c, a, b) = (tail.coefficient, tail.power, tail.logpower);
    if exp_gt(a, -1.0) {
        return Ok(PowerLogPiece::new(c / (a + 1.0), a, b));
    }
    if exp_eq(a, -1.0) && exp_gt(b, -1.0) {
        return Ok(PowerLogPiece::new(c / (b + 1.0), -1.0, b + 1.0));
    }
    Err(Error::Unsupported(
        "running average of a t^-1 (1+log t)^-1 tail grows like log log t".into(),
    ))
}

/// The window `[lo, hi]` outside of which asymptotic terms are used.
fn core_window<P: Profile + ?Sized>(p: &P, extra: &[f64], cfg: &QuadratureConfig) -> (f64, f64, Vec<f64>) {
    let mut knots: Vec<f64> = p.kinks();
    knots.extend_from_slice(extra);
    knots.push(1.0);
    knots.retain(|k| k.is_finite() && *k > 0.0);
    knots.sort_by(f64::total_cmp);
    knots.dedup();
    let lo = knots[0] / cfg.t_max;
    let hi = knots[knots.len() - 1] * cfg.t_max;
    let mut all = vec![lo];
    all.extend(knots);
    all.push(hi);
    (lo, hi, all)
}

/// `∫_a^b f` on the interior, in `u = log t`, split at kinks.
fn integrate_between<F: Fn(f64) -> f64>(f: &F, knots: &[f64], a: f64, b: f64, cfg: &QuadratureConfig) -> f64 {
    let mut pts: Vec<f64> = vec![a];
    pts.extend(knots.iter().copied().filter(|k| *k > a && *k < b));
    pts.push(b);
    let mut total = 0.0;
    for w in pts.windows(2) {
        let r = quad::adaptive(|u: f64| {
            let t = u.exp();
            t * f(t)
        }, w[0].ln(), w[1].ln(), cfg);
        total += r.value;
    }
    total
}

/// `∫_a^b f` for `0 ≤ a < b < ∞`.
pub fn integrate_range<P: Profile + ?Sized>(p: &P, a: f64, b: f64, cfg: &QuadratureConfig) -> f64 {
    if let Some(e) = p.exact() {
        return e.integrate(a, b, cfg).unwrap_or(f64::INFINITY);
    }
    if a >= b {
        return 0.0;
    }
    let (lo, _, knots) = core_window(p, &[], cfg);
    let mut total = 0.0;
    let mut start = a;
    if a < lo {
        let Ok(head) = p.head() else { return f64::INFINITY };
        let end = lo.min(b);
        total += head.integral(a, end, cfg);
        start = end;
    }
    if start < b {
        total += integrate_between(&|t| p.value(t), &knots, start, b, cfg);
    }
    total
}

/// `∫_0^∞ f(t)^q w(t) dt`, `+∞` when divergent.
pub fn integral_of_power<P: Profile + ?Sized>(
    p: &P,
    q: f64,
    w: &PiecewisePowerLog,
    cfg: &QuadratureConfig,
) -> Result<f64> {
    if let Some(e) = p.exact() {
        return e.powf(q).multiply(w).integrate(0.0, f64::INFINITY, cfg);
    }
    let head = p.head()?.powf(q).mul(w.head());
    let tail = p.tail()?.powf(q).mul(w.tail());
    if !head.is_head_integrable() || !is_tail_integrable(&tail) {
        return Ok(f64::INFINITY);
    }
    let (lo, hi, knots) = core_window(p, w.interior_breakpoints(), cfg);
    let f = |t: f64| {
        let v = p.value(t);
        if v == 0.0 {
            0.0
        } else {
            v.powf(q) * w.value(t)
        }
    };
    let core = integrate_between(&f, &knots, lo, hi, cfg);
    Ok(head.integral(0.0, lo, cfg) + core + tail.integral(hi, f64::INFINITY, cfg))
}

/// `∫_a^∞ f(t) w(t) dt` for `a > 0`, `+∞` when divergent.
pub fn tail_integral<P: Profile + ?Sized>(
    p: &P,
    w: &PiecewisePowerLog,
    a: f64,
    cfg: &QuadratureConfig,
) -> Result<f64> {
    if let Some(e) = p.exact() {
        return e.multiply(w).integrate(a, f64::INFINITY, cfg);
    }
    let tail = p.tail()?.mul(w.tail());
    if !is_tail_integrable(&tail) {
        return Ok(f64::INFINITY);
    }
    let (_, hi, knots) = core_window(p, w.interior_breakpoints(), cfg);
    if a >= hi {
        return Ok(tail.integral(a, f64::INFINITY, cfg));
    }
    let f = |t: f64| p.value(t) * w.value(t);
    Ok(integrate_between(&f, &knots, a, hi, cfg) + tail.integral(hi, f64::INFINITY, cfg))
}

const GRID_PER_DECADE: f64 = 24.0;

/// `sup_{t>0} f(t) w(t)`, `+∞` when unbounded.
pub fn sup_of_product<P: Profile + ?Sized>(p: &P, w: &PiecewisePowerLog, cfg: &QuadratureConfig) -> Result<f64> {
    if let Some(e) = p.exact() {
        return Ok(e.multiply(w).sup());
    }
    let head = p.head()?.mul(w.head());
    let tail = p.tail()?.mul(w.tail());
    let lim0 = head.limit_at_zero();
    let lim_inf = tail.limit_at_infinity();
    if lim0.is_infinite() || lim_inf.is_infinite() {
        return Ok(f64::INFINITY);
    }
    let (lo, hi, knots) = core_window(p, w.interior_breakpoints(), cfg);
    let f = |t: f64| p.value(t) * w.value(t);
    let decades = (hi / lo).log10();
    let count = (decades * GRID_PER_DECADE).ceil() as usize;
    let step = (hi / lo).ln() / count as f64;
    let mut grid: Vec<f64> = (0..=count).map(|k| lo * (step * k as f64).exp()).collect();
    for &k in &knots {
        grid.push(k);
        grid.push(k * (1.0 - 1e-12));
    }
    grid.sort_by(f64::total_cmp);
    let values: Vec<f64> = grid.iter().map(|&t| f(t)).collect();
    let mut best = lim0.max(lim_inf);
    if values.iter().any(|v| v.is_infinite()) {
        return Ok(f64::INFINITY);
    }
    let (imax, vmax) = values
        .iter()
        .copied()
        .enumerate()
        .fold((0, f64::NEG_INFINITY), |acc, (i, v)| if v > acc.1 { (i, v) } else { acc });
    best = best.max(vmax);
    if imax > 0 && imax + 1 < grid.len() {
        best = best.max(golden_max(&f, grid[imax - 1], grid[imax + 1]));
    }
    Ok(best)
}

/// Golden-section search in `log t` for the maximum of a unimodal bracket.
fn golden_max<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> f64 {
    let phi = 0.5 * (5f64.sqrt() - 1.0);
    let (mut lo, mut hi) = (a.ln(), b.ln());
    let mut x1 = hi - phi * (hi - lo);
    let mut x2 = lo + phi * (hi - lo);
    let mut f1 = f(x1.exp());
    let mut f2 = f(x2.exp());
    for _ in 0..60 {
        if f1 < f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + phi * (hi - lo);
            f2 = f(x2.exp());
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - phi * (hi - lo);
            f1 = f(x1.exp());
        }
    }
    f1.max(f2)
}

/// Sum of two leading terms at `∞`: the one with the larger growth wins, and
/// equal orders add their coefficients.
pub fn dominant(a: PowerLogPiece, b: PowerLogPiece) -> PowerLogPiece {
    if a.is_zero() {
        return b;
    }
    if b.is_zero() {
        return a;
    }
    if exp_gt(a.power, b.power) || (exp_eq(a.power, b.power) && exp_gt(a.logpower, b.logpower)) {
        a
    } else if exp_lt(a.power, b.power) || exp_lt(a.logpower, b.logpower) {
        b
    } else {
        PowerLogPiece::new(a.coefficient + b.coefficient, a.power, a.logpower)
    }
}
