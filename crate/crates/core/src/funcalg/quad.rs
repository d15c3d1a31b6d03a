//! Adaptive Gauss–Kronrod (7/15) quadrature with global subdivision.
//!
//! Intervals are kept in a max-heap keyed by their error estimate; the worst
//! interval is bisected until the summed error meets the requested tolerance,
//! the interval budget is exhausted, or every remaining interval has reached
//! the maximum depth.

use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::collections::BinaryHeap;

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];

const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_18,
    0.140_653_259_715_525_92,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_83,
];

const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

/// Tolerances and limits shared by every numerical integral in the crate.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct QuadratureConfig {
    /// Relative tolerance of adaptive quadrature.
    pub rel_tol: f64,
    /// Maximum bisection depth of a single interval.
    pub max_depth: u32,
    /// Finite truncation scale, used only where no symbolic tail is known.
    pub t_max: f64,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        QuadratureConfig {
            rel_tol: 1e-8,
            max_depth: 48,
            t_max: 1e8,
        }
    }
}

impl QuadratureConfig {
    pub fn validate(&self) -> crate::Result<()> {
        if !(self.rel_tol > 0.0) {
            return Err(crate::Error::descriptor("rel_tol", "must be > 0"));
        }
        if !(self.t_max > 1.0) {
            return Err(crate::Error::descriptor("t_max", "must be > 1"));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug)]
pub struct QuadResult {
    pub value: f64,
    pub error: f64,
    pub evaluations: usize,
}

#[derive(Clone, Copy)]
struct Segment {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
    depth: u32,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl Eq for Segment {}
impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Segment {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn gk15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut kronrod = fc * WGK[7];
    let mut gauss = fc * WG[3];
    for j in 0..7 {
        let dx = half * XGK[j];
        let sum = f(center - dx) + f(center + dx);
        kronrod += WGK[j] * sum;
        if j % 2 == 1 {
            gauss += WG[j / 2] * sum;
        }
    }
    let value = kronrod * half;
    let error = ((kronrod - gauss) * half).abs();
    (value, error)
}

const MAX_SEGMENTS: usize = 4000;

/// Integrates `f` over the finite interval `[a, b]`.
pub fn adaptive<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, cfg: &QuadratureConfig) -> QuadResult {
    if a == b {
        return QuadResult {
            value: 0.0,
            error: 0.0,
            evaluations: 0,
        };
    }
    let (lo, hi, sign) = if a < b { (a, b, 1.0) } else { (b, a, -1.0) };
    let (v, e) = gk15(&f, lo, hi);
    let mut evaluations = 15;
    let mut heap = BinaryHeap::new();
    heap.push(Segment {
        a: lo,
        b: hi,
        value: v,
        error: e,
        depth: 0,
    });
    let mut settled_value = 0.0;
    let mut settled_error = 0.0;
    let mut total_value = v;
    let mut total_error = e;

    while let Some(top) = heap.peek().copied() {
        let target = cfg.rel_tol * total_value.abs();
        if total_error <= target || total_error <= 1e-300 {
            break;
        }
        if non_finite(total_value) {
            break;
        }
        heap.pop();
        let mid = 0.5 * (top.a + top.b);
        if top.depth >= cfg.max_depth || mid <= top.a || mid >= top.b || heap.len() > MAX_SEGMENTS {
            settled_value += top.value;
            settled_error += top.error;
            continue;
        }
        let (v1, e1) = gk15(&f, top.a, mid);
        let (v2, e2) = gk15(&f, mid, top.b);
        evaluations += 30;
        total_value += v1 + v2 - top.value;
        total_error += e1 + e2 - top.error;
        heap.push(Segment {
            a: top.a,
            b: mid,
            value: v1,
            error: e1,
            depth: top.depth + 1,
        });
        heap.push(Segment {
            a: mid,
            b: top.b,
            value: v2,
            error: e2,
            depth: top.depth + 1,
        });
    }
    // Re-sum to shed accumulated cancellation in the running totals.
    let mut value = settled_value;
    let mut error = settled_error;
    for s in heap.iter() {
        value += s.value;
        error += s.error;
    }
    QuadResult {
        value: sign * value,
        error,
        evaluations,
    }
}

fn non_finite(x: f64) -> bool {
    !x.is_finite()
}

/// Integrates `f` over `[a, ∞)` through the map `x ↦ a + x/(1-x)`.
///
/// The caller is responsible for having established that the integral
/// converges; this routine only evaluates it.
pub fn adaptive_to_infinity<F: Fn(f64) -> f64>(f: F, a: f64, cfg: &QuadratureConfig) -> QuadResult {
    let g = |x: f64| {
        let one_minus = 1.0 - x;
        let t = a + x / one_minus;
        let jac = 1.0 / (one_minus * one_minus);
        let v = f(t);
        if v == 0.0 {
            0.0
        } else {
            v * jac
        }
    };
    adaptive(g, 0.0, 1.0, cfg)
}
