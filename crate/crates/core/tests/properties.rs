use proptest::prelude::*;
use rifix::decide::{decide_fixed_point_with, lambda_rule, lorentz_rule, DecideOptions};
use rifix::funcalg::{integrate, multiply, PiecewisePowerLog, PowerLogPiece, QuadratureConfig};
use rifix::rearrange::{distribution, doublestar, level_measure, rearrangement, RadialProfile};
use rifix::spaces::SpaceDescriptor;

fn two_piece() -> impl Strategy<Value = PiecewisePowerLog> {
    (0.1f64..5.0, 0.1f64..3.0, -0.9f64..1.0, 0.1f64..3.0, -2.0f64..1.0, 0.0f64..2.0).prop_map(
        |(split, c0, a0, c1, a1, b1)| {
            PiecewisePowerLog::two_piece(split, PowerLogPiece::power(c0, a0), PowerLogPiece::new(c1, a1, b1)).unwrap()
        },
    )
}

/// A radial step profile with arbitrary (not necessarily monotone) levels.
fn radial_steps() -> impl Strategy<Value = (usize, PiecewisePowerLog)> {
    (3usize..7, prop::collection::vec((0.05f64..1.0, 0.0f64..4.0), 1..6)).prop_map(|(n, cells)| {
        let mut breaks = vec![0.0];
        let mut pieces = Vec::new();
        for (width, level) in cells {
            breaks.push(breaks.last().unwrap() + width);
            pieces.push(PowerLogPiece::constant(level));
        }
        breaks.push(f64::INFINITY);
        pieces.push(PowerLogPiece::constant(0.0));
        (n, PiecewisePowerLog::new(breaks, pieces).unwrap())
    })
}

fn no_indices() -> DecideOptions {
    DecideOptions { with_indices: false, epsilon: None }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn multiply_is_pointwise(f in two_piece(), g in two_piece(), t in 1e-3f64..1e3) {
        let fg = multiply(&f, &g);
        let want = f.value(t) * g.value(t);
        prop_assert!((fg.value(t) - want).abs() <= 1e-12 * want.abs().max(1.0));
    }

    #[test]
    fn integral_is_additive(f in two_piece(), a in 0.01f64..1.0, m in 1.0f64..3.0, b in 3.0f64..20.0) {
        let cfg = QuadratureConfig::default();
        let whole = integrate(&f, a, b, &cfg).unwrap();
        let parts = integrate(&f, a, m, &cfg).unwrap() + integrate(&f, m, b, &cfg).unwrap();
        prop_assert!((whole - parts).abs() <= 1e-7 * whole.abs().max(1.0));
    }

    #[test]
    fn rearrangement_is_equimeasurable((n, body) in radial_steps(), lambda in 0.01f64..4.0) {
        let f = RadialProfile::new(n, body).unwrap();
        let star = rearrangement(&f).unwrap();
        let mu = distribution(&f, lambda).unwrap();
        prop_assert!((level_measure(&star, lambda) - mu).abs() <= 1e-10 * mu.max(1.0));
    }

    #[test]
    fn maximal_function_dominates((n, body) in radial_steps(), t in 1e-3f64..10.0) {
        let star = rearrangement(&RadialProfile::new(n, body).unwrap()).unwrap();
        prop_assert!(doublestar(&star, t).unwrap() >= star.value(t) * (1.0 - 1e-9));
    }

    #[test]
    fn lorentz_verdicts_match_the_rule(n in 3usize..9, p in 1.0f64..12.0, q in prop_oneof![Just(f64::INFINITY), 1.0f64..12.0]) {
        let x = SpaceDescriptor::lorentz(p, q).unwrap();
        let d = decide_fixed_point_with(n, &x, &no_indices()).unwrap();
        prop_assert_eq!(d.verdict.exists(), lorentz_rule(n, p, q));
    }

    /// `L^{p,q} ⊂ L^{p,∞}` and `L^p ∩ L^∞ ⊂ L^r ∩ L^∞` for `r ≥ p`.
    #[test]
    fn verdicts_are_monotone_under_inclusion(n in 3usize..9, p in 1.0f64..12.0, q in 1.0f64..12.0, dp in 0.0f64..5.0) {
        let opts = no_indices();
        let small = decide_fixed_point_with(n, &SpaceDescriptor::lorentz(p, q).unwrap(), &opts).unwrap();
        let weak = decide_fixed_point_with(n, &SpaceDescriptor::lorentz(p, f64::INFINITY).unwrap(), &opts).unwrap();
        prop_assert!(!small.verdict.exists() || weak.verdict.exists());
        let larger = decide_fixed_point_with(n, &SpaceDescriptor::lebesgue(p + dp).unwrap(), &opts).unwrap();
        let base = decide_fixed_point_with(n, &SpaceDescriptor::lebesgue(p).unwrap(), &opts).unwrap();
        prop_assert!(!base.verdict.exists() || larger.verdict.exists());
    }

    #[test]
    fn minimal_space_verdict_propagates(n in 3usize..9, p in 1.0f64..12.0) {
        let opts = no_indices();
        let minimal = decide_fixed_point_with(n, &SpaceDescriptor::minimal(n).unwrap(), &opts).unwrap();
        prop_assert!(minimal.verdict.exists());
        let x = SpaceDescriptor::intersection(vec![
            SpaceDescriptor::lebesgue(p).unwrap(),
            SpaceDescriptor::lebesgue(f64::INFINITY).unwrap(),
        ]).unwrap();
        let d = decide_fixed_point_with(n, &x, &opts).unwrap();
        prop_assert_eq!(d.verdict.exists(), lorentz_rule(n, p, p));
    }

    #[test]
    fn lambda_verdicts_match_tail_rule(n in 3usize..9, p in 1.0f64..4.0, w0 in -0.5f64..0.5, w1 in -1.0f64..3.0) {
        let w = PiecewisePowerLog::two_piece(1.0, PowerLogPiece::power(1.0, w0), PowerLogPiece::power(1.0, w1)).unwrap();
        let x = SpaceDescriptor::lambda(p, w.clone()).unwrap();
        let d = decide_fixed_point_with(n, &x, &no_indices()).unwrap();
        prop_assert_eq!(d.verdict.exists(), lambda_rule(n, p, &w).unwrap());
        prop_assert_eq!(d.verdict.exists(), w1 - p * (1.0 - 2.0 / n as f64) < -1.0 - 1e-12);
    }
}
