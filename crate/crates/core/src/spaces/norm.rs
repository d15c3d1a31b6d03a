use super::SpaceDescriptor;
use crate::funcalg::{exp_gt, PiecewisePowerLog, QuadratureConfig};
use crate::profile::{integral_of_power, sup_of_product, Averaged, Profile};
use crate::rearrange::DecreasingProfile;
use crate::{Error, Result};

/// `‖d‖_X` with the default quadrature settings.
pub fn norm(x: &SpaceDescriptor, d: &DecreasingProfile) -> Result<f64> {
    norm_of(x, d, &QuadratureConfig::default())
}

/// `‖f‖_X` for any non-increasing profile, exact or not.
///
/// Finiteness is decided from the asymptotic terms of `f` and the weight, so a
/// `+∞` return never depends on the truncation scale of the quadrature.
pub fn norm_of(x: &SpaceDescriptor, f: &dyn Profile, cfg: &QuadratureConfig) -> Result<f64> {
    if f.exact().is_some_and(PiecewisePowerLog::is_zero) {
        return Ok(0.0);
    }
    match x {
        SpaceDescriptor::Lorentz { p, q } => {
            if q.is_infinite() {
                sup_of_product(f, &PiecewisePowerLog::power(1.0, 1.0 / p), cfg)
            } else {
                let w = PiecewisePowerLog::power(1.0, q / p - 1.0);
                Ok(integral_of_power(f, *q, &w, cfg)?.powf(1.0 / q))
            }
        }
        SpaceDescriptor::Lambda { p, w, .. } => Ok(integral_of_power(f, *p, w, cfg)?.powf(1.0 / p)),
        SpaceDescriptor::MarcinkiewiczWeak { phi } => sup_of_product(f, phi, cfg),
        SpaceDescriptor::MarcinkiewiczStar { phi } => match sup_of_product(&Averaged::new(f, *cfg), phi, cfg) {
            Err(Error::NotIntegrable(_)) => Ok(f64::INFINITY),
            other => other,
        },
        SpaceDescriptor::Intersection { members } => members
            .iter()
            .map(|m| norm_of(m, f, cfg))
            .try_fold(0.0f64, |acc, v| v.map(|v| acc.max(v))),
    }
}

/// `φ_X(s) = ‖χ_[0,s)‖_X`, in closed form per family.
pub fn fundamental_function(x: &SpaceDescriptor, s: f64) -> Result<f64> {
    if !(s > 0.0) {
        return Err(Error::Domain(format!("fundamental function needs s > 0, got {s}")));
    }
    Ok(match x {
        SpaceDescriptor::Lorentz { p, q } => {
            let base = s.powf(1.0 / p);
            if q.is_infinite() {
                base
            } else {
                (p / q).powf(1.0 / q) * base
            }
        }
        SpaceDescriptor::Lambda { p, w, .. } => w.integrate(0.0, s, &QuadratureConfig::default())?.powf(1.0 / p),
        SpaceDescriptor::MarcinkiewiczWeak { phi } => phi.sup_on(0.0, s),
        SpaceDescriptor::MarcinkiewiczStar { phi } => {
            // χ** = min(1, s/t)
            let near = phi.sup_on(0.0, s);
            let far = s * phi.times_power(-1.0).sup_on(s, f64::INFINITY);
            near.max(far)
        }
        SpaceDescriptor::Intersection { members } => {
            let mut best: f64 = 0.0;
            for m in members {
                best = best.max(fundamental_function(m, s)?);
            }
            best
        }
    })
}

/// Power exponents of `φ_X(s)` as `s → 0⁺` and `s → ∞`.
///
/// Any slowly varying factor is dropped: the ratio `φ_X(ts)/φ_X(t)` has limit
/// `s^head` as `t → 0⁺` and `s^tail` as `t → ∞`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FundamentalExponents {
    pub head: f64,
    pub tail: f64,
}

impl SpaceDescriptor {
    pub fn fundamental_exponents(&self) -> FundamentalExponents {
        match self {
            SpaceDescriptor::Lorentz { p, .. } => {
                let e = if p.is_infinite() { 0.0 } else { 1.0 / p };
                FundamentalExponents { head: e, tail: e }
            }
            SpaceDescriptor::Lambda { p, w, .. } => {
                let head = (w.head().power + 1.0) / p;
                let total = w.integrate(0.0, f64::INFINITY, &QuadratureConfig::default());
                let tail_power = w.tail().power;
                let tail = if total.is_ok_and(f64::is_finite) || !exp_gt(tail_power, -1.0) {
                    0.0
                } else {
                    (tail_power + 1.0) / p
                };
                FundamentalExponents { head, tail }
            }
            SpaceDescriptor::MarcinkiewiczWeak { phi } => FundamentalExponents {
                head: phi.head().power.max(0.0),
                tail: phi.tail().power.max(0.0),
            },
            SpaceDescriptor::MarcinkiewiczStar { phi } => FundamentalExponents {
                head: phi.head().power.clamp(0.0, 1.0),
                tail: phi.tail().power.clamp(0.0, 1.0),
            },
            SpaceDescriptor::Intersection { members } => {
                let all: Vec<FundamentalExponents> = members.iter().map(|m| m.fundamental_exponents()).collect();
                FundamentalExponents {
                    head: all.iter().map(|e| e.head).fold(f64::INFINITY, f64::min),
                    tail: all.iter().map(|e| e.tail).fold(f64::NEG_INFINITY, f64::max),
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::funcalg::PowerLogPiece;

    const INF: f64 = f64::INFINITY;

    #[test]
    fn norm_examples() {
        let chi = |s: f64| DecreasingProfile::indicator(s).unwrap();
        let l31 = SpaceDescriptor::lorentz(3.0, 1.0).unwrap();
        for s in [0.5, 1.0, 8.0] {
            // ∫_0^s t^{-2/3} dt = 3 s^{1/3}
            assert!((norm(&l31, &chi(s)).unwrap() - 3.0 * s.cbrt()).abs() < 1e-12);
        }
        let h = DecreasingProfile::h(3).unwrap();
        let minimal = SpaceDescriptor::minimal(3).unwrap();
        assert!((norm(&minimal, &h).unwrap() - 1.0).abs() < 1e-15);
        let weak3 = SpaceDescriptor::lorentz(3.0, INF).unwrap();
        assert!((norm(&weak3, &h).unwrap() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn lebesgue_norms_of_h() {
        let h = DecreasingProfile::h(3).unwrap();
        // ‖h‖_p^p = 1 + ∫_1^∞ t^{-p/3} = 1 + 3/(p-3)
        for p in [4.0f64, 6.0, 10.0] {
            let expected = (1.0 + 3.0 / (p - 3.0)).powf(1.0 / p);
            let got = norm(&SpaceDescriptor::lebesgue(p).unwrap(), &h).unwrap();
            assert!((got - expected).abs() < 1e-13, "p={p}");
        }
        for p in [1.0, 2.0, 3.0] {
            assert_eq!(norm(&SpaceDescriptor::lebesgue(p).unwrap(), &h).unwrap(), INF);
        }
        assert_eq!(norm(&SpaceDescriptor::lorentz(INF, INF).unwrap(), &h).unwrap(), 1.0);
        assert_eq!(norm(&SpaceDescriptor::lorentz(3.0, 5.0).unwrap(), &h).unwrap(), INF);
    }

    #[test]
    fn star_norms() {
        let h = DecreasingProfile::h(3).unwrap();
        // h**(t) = (3/2)t^{-1/3} - 1/(2t) on t ≥ 1: h**·t^{1/3} increases to 3/2
        let boundary = SpaceDescriptor::proposition(1.0 / 3.0, 1.0 / 3.0).unwrap();
        let v = norm(&boundary, &h).unwrap();
        assert!((v - 1.5).abs() < 1e-9, "{v}");
        assert_eq!(norm(&SpaceDescriptor::proposition(0.2, 0.5).unwrap(), &h).unwrap(), INF);
        assert!(norm(&SpaceDescriptor::proposition(0.5, 0.2).unwrap(), &h).unwrap().is_finite());
        assert_eq!(norm(&SpaceDescriptor::x0(3).unwrap(), &h).unwrap(), INF);
        assert!(norm(&SpaceDescriptor::x1(3).unwrap(), &h).unwrap().is_finite());
        // non-integrable head: f** ≡ ∞
        let singular = DecreasingProfile::new(PiecewisePowerLog::power(1.0, -1.0)).unwrap();
        assert_eq!(norm(&boundary, &singular).unwrap(), INF);
    }

    #[test]
    fn zero_profile_has_zero_norm() {
        let z = DecreasingProfile::zero();
        for x in [
            SpaceDescriptor::lebesgue(1.0).unwrap(),
            SpaceDescriptor::minimal(3).unwrap(),
            SpaceDescriptor::x0(3).unwrap(),
        ] {
            assert_eq!(norm(&x, &z).unwrap(), 0.0);
        }
    }

    #[test]
    fn intersection_of_one_is_the_member() {
        let corpus = [
            DecreasingProfile::h(3).unwrap(),
            DecreasingProfile::indicator(2.0).unwrap(),
            DecreasingProfile::steps(&[1.0, 4.0], &[1.0, 0.5]).unwrap(),
        ];
        for x in [
            SpaceDescriptor::lebesgue(4.0).unwrap(),
            SpaceDescriptor::proposition(0.2, 0.6).unwrap(),
            SpaceDescriptor::minimal(4).unwrap(),
        ] {
            let single = SpaceDescriptor::intersection(vec![x.clone()]).unwrap();
            for d in &corpus {
                assert_eq!(norm(&single, d).unwrap(), norm(&x, d).unwrap());
            }
        }
    }

    #[test]
    fn fundamental_function_examples() {
        for p in [1.0, 2.0, 4.5] {
            let x = SpaceDescriptor::lebesgue(p).unwrap();
            for s in [0.1, 1.0, 7.0] {
                assert!((fundamental_function(&x, s).unwrap() - s.powf(1.0 / p)).abs() < 1e-13);
            }
        }
        let l1 = SpaceDescriptor::lambda(1.0, PiecewisePowerLog::constant(1.0)).unwrap();
        assert!((fundamental_function(&l1, 3.5).unwrap() - 3.5).abs() < 1e-14);
        let prop = SpaceDescriptor::proposition(0.2, 0.6).unwrap();
        assert!((fundamental_function(&prop, 1.0).unwrap() - 1.0).abs() < 1e-15);
        assert!((fundamental_function(&prop, 4.0).unwrap() - 4f64.powf(0.6)).abs() < 1e-14);
        assert!(fundamental_function(&prop, 0.0).is_err());
    }

    #[test]
    fn fundamental_function_matches_norm_of_indicator() {
        let descriptors = [
            SpaceDescriptor::lorentz(3.0, 1.0).unwrap(),
            SpaceDescriptor::lorentz(2.0, 5.0).unwrap(),
            SpaceDescriptor::lorentz(3.0, INF).unwrap(),
            SpaceDescriptor::lambda(2.0, PiecewisePowerLog::two_piece(1.0, PowerLogPiece::power(1.0, 0.2), PowerLogPiece::power(1.0, 0.1)).unwrap()).unwrap(),
            SpaceDescriptor::minimal(3).unwrap(),
            SpaceDescriptor::proposition(0.2, 0.6).unwrap(),
            SpaceDescriptor::x0(3).unwrap(),
            SpaceDescriptor::x1(3).unwrap(),
        ];
        for x in &descriptors {
            for s in [0.01, 0.5, 1.0, 3.0, 100.0] {
                let direct = norm(x, &DecreasingProfile::indicator(s).unwrap()).unwrap();
                let closed = fundamental_function(x, s).unwrap();
                assert!((direct - closed).abs() <= 1e-7 * closed, "{} s={s}: {direct} vs {closed}", x.kind());
            }
        }
    }

    #[test]
    fn exponents_per_family() {
        let e = SpaceDescriptor::lebesgue(4.0).unwrap().fundamental_exponents();
        assert_eq!((e.head, e.tail), (0.25, 0.25));
        let e = SpaceDescriptor::minimal(3).unwrap().fundamental_exponents();
        assert_eq!(e.head, 0.0);
        assert!((e.tail - 1.0 / 3.0).abs() < 1e-15);
        let e = SpaceDescriptor::proposition(0.2, 0.6).unwrap().fundamental_exponents();
        assert_eq!((e.head, e.tail), (0.2, 0.6));
        let w = PiecewisePowerLog::two_piece(1.0, PowerLogPiece::power(1.0, 0.5), PowerLogPiece::power(1.0, -2.0)).unwrap();
        let e = SpaceDescriptor::lambda(2.0, w).unwrap().fundamental_exponents();
        assert_eq!((e.head, e.tail), (0.75, 0.0));
        let both = SpaceDescriptor::intersection(vec![
            SpaceDescriptor::lebesgue(4.0).unwrap(),
            SpaceDescriptor::lebesgue(2.0).unwrap(),
        ])
        .unwrap()
        .fundamental_exponents();
        assert_eq!((both.head, both.tail), (0.25, 0.5));
    }
}
