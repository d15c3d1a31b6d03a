//! The Hardy-type operator `P_{1−2/n}` and the tail functional
//! `T f(t) = ∫_t^∞ f**(s) s^{2/n−1} ds`.

use crate::funcalg::{exp_eq, exp_gt, exp_lt, PiecewisePowerLog, PowerLogPiece, QuadratureConfig};
use crate::profile::{integral_of_power, tail_integral, Averaged, Profile};
use crate::rearrange::DecreasingProfile;
use crate::{Error, Result};

fn check_dimension(n: usize) -> Result<f64> {
    if n <= 2 {
        return Err(Error::dimension(n, "needs n ≥ 3"));
    }
    Ok(2.0 / n as f64)
}

fn check_point(t: f64) -> Result<()> {
    if t > 0.0 && t.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!("evaluation point must be a positive real, got {t}")))
    }
}

/// `P_{1−2/n} f(t) = t^{2/n−1} ∫_0^t f(s) s^{−2/n} ds`.
pub fn hardy_p(f: &PiecewisePowerLog, t: f64, n: usize) -> Result<f64> {
    let e = check_dimension(n)?;
    check_point(t)?;
    if f.is_zero() {
        return Ok(0.0);
    }
    let inner = f.times_power(-e).integrate(0.0, t, &QuadratureConfig::default())?;
    if inner.is_infinite() {
        return Err(Error::NotIntegrable(format!(
            "f(s) s^(-2/n) is not integrable at 0 (head exponent {})",
            f.head().power - e
        )));
    }
    Ok(t.powf(e - 1.0) * inner)
}

/// `P_{1−2/n} χ_[0,s) = n/(n−2) · min(1, (s/t)^{1−2/n})`.
pub fn hardy_p_indicator(s: f64, n: usize) -> Result<DecreasingProfile> {
    let e = check_dimension(n)?;
    check_point(s)?;
    let k = 1.0 / (1.0 - e);
    DecreasingProfile::new(PiecewisePowerLog::two_piece(
        s,
        PowerLogPiece::constant(k),
        PowerLogPiece::power(k * s.powf(1.0 - e), e - 1.0),
    )?)
}

/// `t^{2/n−1} ∫_0^t f* + ∫_t^∞ f*(s) s^{2/n−1} ds`, the middle term of the
/// O'Neil-type estimate for `(I₂f)*`.
pub fn oneil_bracket(d: &DecreasingProfile, t: f64, n: usize, cfg: &QuadratureConfig) -> Result<f64> {
    let e = check_dimension(n)?;
    check_point(t)?;
    let near = d.body().integrate(0.0, t, cfg)?;
    let far = d.body().times_power(e - 1.0).integrate(t, f64::INFINITY, cfg)?;
    Ok(t.powf(e - 1.0) * near + far)
}

/// `∫_t^∞ d**(s) s^{2/n−1} ds`, computed by quadrature of `d**`.
///
/// Finiteness is decided from the leading term of `d**` at infinity.
pub fn tail_t(d: &DecreasingProfile, t: f64, n: usize, cfg: &QuadratureConfig) -> Result<f64> {
    let e = check_dimension(n)?;
    check_point(t)?;
    if d.body().is_zero() {
        return Ok(0.0);
    }
    let avg = Averaged::new(d, *cfg);
    match tail_integral(&avg, &PiecewisePowerLog::power(1.0, e - 1.0), t, cfg) {
        Err(Error::NotIntegrable(_)) => Ok(f64::INFINITY),
        other => other,
    }
}

/// `t ↦ T d(t)` as a [`Profile`], so that its `X`-norm can be evaluated.
#[derive(Clone, Debug)]
pub struct TailProfile {
    d: DecreasingProfile,
    n: usize,
    cfg: QuadratureConfig,
}

impl TailProfile {
    pub fn new(d: DecreasingProfile, n: usize, cfg: QuadratureConfig) -> Result<Self> {
        check_dimension(n)?;
        Ok(TailProfile { d, n, cfg })
    }

    fn exponent(&self) -> f64 {
        2.0 / self.n as f64
    }

    /// Whether `T d` is finite (then it is finite for every `t > 0`).
    pub fn is_finite(&self) -> bool {
        self.d.body().is_zero() || (self.tail().is_ok() && self.head().is_ok())
    }
}

impl Profile for TailProfile {
    fn value(&self, t: f64) -> f64 {
        tail_t(&self.d, t, self.n, &self.cfg).unwrap_or(f64::INFINITY)
    }

    fn kinks(&self) -> Vec<f64> {
        self.d.kinks()
    }

    fn head(&self) -> Result<PowerLogPiece> {
        if self.d.body().is_zero() {
            return Ok(PowerLogPiece::ZERO);
        }
        let avg = Averaged::new(&self.d, self.cfg);
        let h = avg.head()?;
        let e = h.power + self.exponent();
        if exp_gt(e, 0.0) {
            let w = PiecewisePowerLog::power(1.0, self.exponent() - 1.0);
            let total = integral_of_power(&avg, 1.0, &w, &self.cfg)?;
            if total.is_infinite() {
                return Err(Error::NotIntegrable("the tail functional is infinite".into()));
            }
            Ok(PowerLogPiece::constant(total))
        } else if exp_lt(e, 0.0) {
            Ok(PowerLogPiece::power(h.coefficient / -e, e))
        } else {
            Err(Error::Unsupported("tail functional grows like log(1/t) at 0".into()))
        }
    }

    fn tail(&self) -> Result<PowerLogPiece> {
        if self.d.body().is_zero() {
            return Ok(PowerLogPiece::ZERO);
        }
        let avg = Averaged::new(&self.d, self.cfg);
        let PowerLogPiece {
            coefficient: c,
            power: a,
            logpower: b,
        } = avg.tail()?;
        let g = a + self.exponent() - 1.0;
        if exp_lt(g, -1.0) {
            Ok(PowerLogPiece::new(c / -(g + 1.0), g + 1.0, b))
        } else if exp_eq(g, -1.0) && exp_lt(b, -1.0) {
            Ok(PowerLogPiece::new(c / -(b + 1.0), 0.0, b + 1.0))
        } else {
            Err(Error::NotIntegrable("the tail functional is infinite".into()))
        }
    }
}
