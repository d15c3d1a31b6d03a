//! Dilation function `M_X(s) = sup_t φ_X(ts)/φ_X(t)` and the fundamental
//! indices `β̄ = inf_{s>1} log M_X(s)/log s`, `β̲ = sup_{s<1} log M_X(s)/log s`.

use super::{fundamental_function, SpaceDescriptor};
use crate::Result;
use serde::Serialize;

/// Sampling used for `M_X` and the indices.
///
/// The `t` grid is `{2^{k/4} : |k| ≤ t_quarter_steps}`, extended by its image
/// under `t ↦ t/s` so that `ts` also sweeps the base grid. The indices are
/// evaluated at `s = 2^{±e}` for every `e` in `s_exponents`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IndexGrid {
    pub t_quarter_steps: i32,
    pub s_exponents: Vec<u32>,
}

impl IndexGrid {
    /// Every dyadic `s = 2^{±1}, …, 2^{±max}`.
    pub fn dyadic(max: u32) -> Self {
        IndexGrid {
            t_quarter_steps: 160,
            s_exponents: (1..=max).collect(),
        }
    }

    fn t_grid(&self, s: f64) -> Vec<f64> {
        let base: Vec<f64> = (-self.t_quarter_steps..=self.t_quarter_steps)
            .map(|k| (k as f64 / 4.0).exp2())
            .collect();
        let mut all = base.clone();
        if s != 1.0 {
            all.extend(base.iter().map(|t| t / s));
        }
        all
    }
}

impl Default for IndexGrid {
    /// Dyadic up to `2^40`, then sparser out to `2^800`.
    ///
    /// Slowly varying corrections such as `(1 + log s)` move
    /// `log M_X(s)/log s` by `log(1 + log s)/log s`, which is still about
    /// `0.12` at `s = 2^40`; the long range brings this below `0.012`.
    fn default() -> Self {
        let mut s_exponents: Vec<u32> = (1..=40).collect();
        s_exponents.extend([50, 64, 80, 100, 128, 160, 200, 256, 320, 400, 512, 640, 800]);
        IndexGrid {
            t_quarter_steps: 160,
            s_exponents,
        }
    }
}

/// Where the supremum defining `M_X(s)` was attained.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(tag = "at", rename_all = "snake_case")]
pub enum Attained {
    Grid { t: f64 },
    LimitZero,
    LimitInfinity,
}

/// A grid value of `M_X(s)`; by construction a lower bound.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Dilation {
    pub s: f64,
    pub value: f64,
    pub attained: Attained,
    pub grid_points: usize,
}

pub fn dilation_function(x: &SpaceDescriptor, s: f64) -> Result<Dilation> {
    dilation_function_with(x, s, &IndexGrid::default())
}

pub fn dilation_function_with(x: &SpaceDescriptor, s: f64, grid: &IndexGrid) -> Result<Dilation> {
    if !(s > 0.0) {
        return Err(crate::Error::Domain(format!("dilation function needs s > 0, got {s}")));
    }
    if s == 1.0 {
        return Ok(Dilation {
            s,
            value: 1.0,
            attained: Attained::LimitZero,
            grid_points: 0,
        });
    }
    let exps = x.fundamental_exponents();
    let mut best = s.powf(exps.head);
    let mut attained = Attained::LimitZero;
    let at_inf = s.powf(exps.tail);
    if at_inf > best {
        best = at_inf;
        attained = Attained::LimitInfinity;
    }
    let ts = grid.t_grid(s);
    for &t in &ts {
        let den = fundamental_function(x, t)?;
        let num = fundamental_function(x, t * s)?;
        let r = num / den;
        if r.is_finite() && r > best {
            best = r;
            attained = Attained::Grid { t };
        }
    }
    Ok(Dilation {
        s,
        value: best,
        attained,
        grid_points: ts.len(),
    })
}

/// Fundamental indices with the `s` at which each extremum was attained.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IndexReport {
    pub beta_lower: f64,
    pub beta_upper: f64,
    /// `s < 1` realising `β̲`.
    pub lower_s: f64,
    /// `s > 1` realising `β̄`.
    pub upper_s: f64,
    pub s_min: f64,
    pub s_max: f64,
    pub s_points: usize,
    pub t_points_per_s: usize,
}

pub fn fundamental_indices(x: &SpaceDescriptor) -> Result<IndexReport> {
    fundamental_indices_with(x, &IndexGrid::default())
}

pub fn fundamental_indices_with(x: &SpaceDescriptor, grid: &IndexGrid) -> Result<IndexReport> {
    let mut upper = (f64::INFINITY, f64::NAN);
    let mut lower = (f64::NEG_INFINITY, f64::NAN);
    let mut t_points = 0;
    for &e in &grid.s_exponents {
        let e = e as f64;
        let big = e.exp2();
        let d = dilation_function_with(x, big, grid)?;
        t_points = d.grid_points;
        let ratio = d.value.ln() / big.ln();
        if ratio < upper.0 {
            upper = (ratio, big);
        }
        let small = (-e).exp2();
        let d = dilation_function_with(x, small, grid)?;
        let ratio = d.value.ln() / small.ln();
        if ratio > lower.0 {
            lower = (ratio, small);
        }
    }
    let max_e = grid.s_exponents.iter().copied().max().unwrap_or(0) as f64;
    Ok(IndexReport {
        beta_lower: lower.0,
        beta_upper: upper.0,
        lower_s: lower.1,
        upper_s: upper.1,
        s_min: (-max_e).exp2(),
        s_max: max_e.exp2(),
        s_points: 2 * grid.s_exponents.len(),
        t_points_per_s: t_points,
    })
}
