use super::quad::{adaptive, adaptive_to_infinity, QuadratureConfig};
use serde::{Deserialize, Serialize};

/// Exponents closer than this (relative to their size) are treated as equal.
/// Exponent arithmetic such as `2/3 - 1 + 1/3` does not cancel exactly in
/// binary floating point; every threshold comparison goes through this.
pub const EXPONENT_EPS: f64 = 1e-12;

pub fn exp_eq(a: f64, b: f64) -> bool {
    (a - b).abs() <= EXPONENT_EPS * (1.0 + a.abs().max(b.abs()))
}

pub fn exp_lt(a: f64, b: f64) -> bool {
    a < b && !exp_eq(a, b)
}

pub fn exp_gt(a: f64, b: f64) -> bool {
    a > b && !exp_eq(a, b)
}

/// `1 + log⁺ t`.
#[inline]
pub fn log_plus1(t: f64) -> f64 {
    if t > 1.0 {
        1.0 + t.ln()
    } else {
        1.0
    }
}

/// `c · t^α · (1 + log⁺ t)^β`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PowerLogPiece {
    pub coefficient: f64,
    pub power: f64,
    pub logpower: f64,
}

impl PowerLogPiece {
    pub const ZERO: PowerLogPiece = PowerLogPiece {
        coefficient: 0.0,
        power: 0.0,
        logpower: 0.0,
    };

    pub fn new(coefficient: f64, power: f64, logpower: f64) -> Self {
        PowerLogPiece {
            coefficient,
            power,
            logpower,
        }
    }

    pub fn constant(c: f64) -> Self {
        Self::new(c, 0.0, 0.0)
    }

    pub fn power(c: f64, alpha: f64) -> Self {
        Self::new(c, alpha, 0.0)
    }

    pub fn is_zero(&self) -> bool {
        self.coefficient == 0.0
    }

    pub fn has_log(&self) -> bool {
        !self.is_zero() && !exp_eq(self.logpower, 0.0)
    }

    pub fn eval(&self, t: f64) -> f64 {
        if self.coefficient == 0.0 {
            return 0.0;
        }
        let mut v = self.coefficient;
        if self.power != 0.0 {
            v *= t.powf(self.power);
        }
        if self.logpower != 0.0 && t > 1.0 {
            v *= log_plus1(t).powf(self.logpower);
        }
        v
    }

    pub fn mul(&self, other: &PowerLogPiece) -> PowerLogPiece {
        if self.is_zero() || other.is_zero() {
            return PowerLogPiece::ZERO;
        }
        PowerLogPiece::new(
            self.coefficient * other.coefficient,
            self.power + other.power,
            self.logpower + other.logpower,
        )
    }

    pub fn powf(&self, q: f64) -> PowerLogPiece {
        if self.is_zero() {
            return PowerLogPiece::ZERO;
        }
        PowerLogPiece::new(self.coefficient.powf(q), self.power * q, self.logpower * q)
    }

    pub fn scale(&self, k: f64) -> PowerLogPiece {
        if k == 0.0 {
            return PowerLogPiece::ZERO;
        }
        PowerLogPiece::new(self.coefficient * k, self.power, self.logpower)
    }

    /// Integrable near `t = 0`.
    pub fn is_head_integrable(&self) -> bool {
        self.is_zero() || exp_gt(self.power, -1.0)
    }

    /// Limit as `t → 0⁺` (the log factor is identically 1 there).
    pub fn limit_at_zero(&self) -> f64 {
        if self.is_zero() {
            0.0
        } else if exp_gt(self.power, 0.0) {
            0.0
        } else if exp_lt(self.power, 0.0) {
            f64::INFINITY
        } else {
            self.coefficient
        }
    }

    /// Limit as `t → ∞`.
    pub fn limit_at_infinity(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        if exp_gt(self.power, 0.0) {
            f64::INFINITY
        } else if exp_lt(self.power, 0.0) {
            0.0
        } else if exp_gt(self.logpower, 0.0) {
            f64::INFINITY
        } else if exp_lt(self.logpower, 0.0) {
            0.0
        } else {
            self.coefficient
        }
    }

    /// `∫_lo^hi` of the piece; `hi` may be `∞`. Returns `+∞` when divergent.
    pub fn integral(&self, lo: f64, hi: f64, cfg: &QuadratureConfig) -> f64 {
        if self.is_zero() || lo >= hi {
            return 0.0;
        }
        let c = self.coefficient;
        let mut total = 0.0;
        if lo < 1.0 {
            total += c * power_integral(self.power, lo, hi.min(1.0));
        }
        if hi > 1.0 {
            total += c * self.log_region_integral(lo.max(1.0), hi, cfg);
        }
        total
    }

    /// `∫_l^h t^α (1 + log t)^β dt` with `1 ≤ l < h ≤ ∞`.
    fn log_region_integral(&self, l: f64, h: f64, cfg: &QuadratureConfig) -> f64 {
        let (alpha, beta) = (self.power, self.logpower);
        if exp_eq(beta, 0.0) {
            return power_integral(alpha, l, h);
        }
        let ul = l.ln();
        if exp_eq(alpha, -1.0) {
            // u = log t, v = 1 + u: ∫ v^β dv
            let vl = 1.0 + ul;
            return if h.is_infinite() {
                if exp_lt(beta, -1.0) {
                    vl.powf(beta + 1.0) / (-(beta + 1.0))
                } else {
                    f64::INFINITY
                }
            } else {
                let vh = 1.0 + h.ln();
                if exp_eq(beta, -1.0) {
                    (vh / vl).ln()
                } else {
                    (vh.powf(beta + 1.0) - vl.powf(beta + 1.0)) / (beta + 1.0)
                }
            };
        }
        let e = alpha + 1.0;
        let integrand = move |u: f64| (e * u).exp() * (1.0 + u).powf(beta);
        if h.is_infinite() {
            if e > 0.0 {
                return f64::INFINITY;
            }
            return adaptive_to_infinity(integrand, ul, cfg).value;
        }
        adaptive(integrand, ul, h.ln(), cfg).value
    }

    /// Supremum over `[lo, hi]` of the continuous extension of the piece.
    /// `lo` may be `0` and `hi` may be `∞` (limits are used there).
    pub fn sup_on(&self, lo: f64, hi: f64) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let mut best: f64 = 0.0;
        if lo < 1.0 {
            let h = hi.min(1.0);
            let v = if exp_gt(self.power, 0.0) {
                self.eval(h)
            } else if exp_lt(self.power, 0.0) {
                if lo == 0.0 {
                    f64::INFINITY
                } else {
                    self.eval(lo)
                }
            } else {
                self.coefficient
            };
            best = best.max(v);
        }
        if hi > 1.0 {
            let l = lo.max(1.0);
            best = best.max(self.eval(l));
            best = best.max(if hi.is_infinite() {
                self.limit_at_infinity()
            } else {
                self.eval(hi)
            });
            if let Some(t) = self.log_critical_point() {
                if t > l && t < hi {
                    best = best.max(self.eval(t));
                }
            }
        }
        best
    }

    /// Interior stationary point on `t > 1` of `t^α (1+log t)^β`, if any.
    fn log_critical_point(&self) -> Option<f64> {
        if exp_eq(self.power, 0.0) || exp_eq(self.logpower, 0.0) {
            return None;
        }
        let u = -self.logpower / self.power;
        if u > 1.0 {
            Some((u - 1.0).exp())
        } else {
            None
        }
    }

    /// Whether the piece is non-increasing over `[lo, hi]`.
    pub fn is_nonincreasing_on(&self, lo: f64, hi: f64) -> bool {
        if self.is_zero() || lo >= hi {
            return true;
        }
        let tol = EXPONENT_EPS;
        if lo < 1.0 && self.power > tol {
            return false;
        }
        if hi > 1.0 {
            let l = lo.max(1.0);
            let inv_l = 1.0 / log_plus1(l);
            let inv_h = if hi.is_infinite() {
                0.0
            } else {
                1.0 / log_plus1(hi)
            };
            for inv in [inv_l, inv_h] {
                if self.power + self.logpower * inv > tol {
                    return false;
                }
            }
        }
        true
    }
}

/// True iff `∫_1^∞ c t^α (1+log⁺t)^β dt < ∞`: `α < −1`, or `α = −1` and
/// `β < −1`. A zero coefficient is trivially integrable.
pub fn is_tail_integrable(piece: &PowerLogPiece) -> bool {
    if piece.is_zero() {
        return true;
    }
    exp_lt(piece.power, -1.0) || (exp_eq(piece.power, -1.0) && exp_lt(piece.logpower, -1.0))
}

/// `∫_lo^hi t^α dt`, `0 ≤ lo < hi ≤ ∞`.
pub fn power_integral(alpha: f64, lo: f64, hi: f64) -> f64 {
    if lo >= hi {
        return 0.0;
    }
    if exp_eq(alpha, -1.0) {
        if lo == 0.0 || hi.is_infinite() {
            return f64::INFINITY;
        }
        return (hi / lo).ln();
    }
    let e = alpha + 1.0;
    if lo == 0.0 && e < 0.0 {
        return f64::INFINITY;
    }
    if hi.is_infinite() && e > 0.0 {
        return f64::INFINITY;
    }
    let upper = if hi.is_infinite() { 0.0 } else { hi.powf(e) };
    let lower = if lo == 0.0 { 0.0 } else { lo.powf(e) };
    (upper - lower) / e
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tail_integrability_table() {
        assert!(is_tail_integrable(&PowerLogPiece::power(1.0, -4.0 / 3.0)));
        assert!(!is_tail_integrable(&PowerLogPiece::power(1.0, -1.0)));
        assert!(is_tail_integrable(&PowerLogPiece::new(1.0, -1.0, -2.0)));
        assert!(!is_tail_integrable(&PowerLogPiece::new(1.0, -1.0, -1.0)));
        assert!(!is_tail_integrable(&PowerLogPiece::new(1.0, -0.5, -50.0)));
        assert!(is_tail_integrable(&PowerLogPiece::ZERO));
    }

    #[test]
    fn power_integral_closed_forms() {
        assert!((power_integral(-1.0 / 3.0, 1.0, 8.0) - 4.5).abs() < 1e-13);
        assert!((power_integral(-2.0, 1.0, f64::INFINITY) - 1.0).abs() < 1e-15);
        assert_eq!(power_integral(-1.0, 1.0, f64::INFINITY), f64::INFINITY);
        assert_eq!(power_integral(-1.5, 0.0, 1.0), f64::INFINITY);
        assert!((power_integral(-0.5, 0.0, 4.0) - 4.0).abs() < 1e-14);
    }

    #[test]
    fn log_piece_closed_form_at_critical_exponent() {
        let cfg = QuadratureConfig::default();
        let p = PowerLogPiece::new(1.0, -1.0, -2.0);
        assert!((p.integral(1.0, f64::INFINITY, &cfg) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn log_piece_quadrature_against_substitution() {
        // ∫_1^e t^{-2} (1+log t) dt = [-(2+log t)/t]_1^e = 2 - 3/e
        let cfg = QuadratureConfig::default();
        let p = PowerLogPiece::new(1.0, -2.0, 1.0);
        let e = std::f64::consts::E;
        assert!((p.integral(1.0, e, &cfg) - (2.0 - 3.0 / e)).abs() < 1e-12);
        // full tail: ∫_1^∞ t^{-2}(1+log t) dt = 2
        assert!((p.integral(1.0, f64::INFINITY, &cfg) - 2.0).abs() < 1e-9);
    }

    #[test]
    fn sup_handles_interior_maximum() {
        // t^{-1/2}(1+log t)^2 on [1,∞): maximum at 1+log t = 4
        let p = PowerLogPiece::new(1.0, -0.5, 2.0);
        let t = (3.0f64).exp();
        let expected = t.powf(-0.5) * 16.0;
        assert!((p.sup_on(1.0, f64::INFINITY) - expected).abs() < 1e-12);
        assert_eq!(p.sup_on(0.0, 1.0), f64::INFINITY);
        assert!((p.sup_on(0.01, 1.0) - 10.0).abs() < 1e-12);
    }

    #[test]
    fn limits() {
        assert_eq!(PowerLogPiece::new(2.0, 0.0, 0.0).limit_at_infinity(), 2.0);
        assert_eq!(PowerLogPiece::new(2.0, 0.0, 1e-3).limit_at_infinity(), f64::INFINITY);
        assert_eq!(PowerLogPiece::new(2.0, -1e-3, 5.0).limit_at_infinity(), 0.0);
        assert_eq!(PowerLogPiece::power(2.0, -0.1).limit_at_zero(), f64::INFINITY);
    }

    #[test]
    fn monotonicity_with_log_factor() {
        // t^{-1/3}(1+log t) increases just above t = 1
        assert!(!PowerLogPiece::new(1.0, -1.0 / 3.0, 1.0).is_nonincreasing_on(1.0, 2.0));
        // but not once 1 + log t > 3
        let t0 = (2.0f64).exp();
        assert!(PowerLogPiece::new(1.0, -1.0 / 3.0, 1.0).is_nonincreasing_on(t0, f64::INFINITY));
        assert!(PowerLogPiece::new(1.0, -1.0 / 3.0, -1.0).is_nonincreasing_on(0.0, f64::INFINITY));
    }
}
