//! Grid-based verification of the estimates behind the decision engine.
//!
//! Every check returns a [`VerificationReport`] and never panics on a
//! failed estimate. `pass` is true exactly when every listed criterion holds.

use crate::decide::{decide_fixed_point_with, h_n, DecideOptions};
use crate::funcalg::{PiecewisePowerLog, PowerLogPiece, QuadratureConfig};
use crate::grid::LogGrid;
use crate::operators::{
    ball_average, hardy_p_indicator, oneil_bracket, riesz_of_lift_rearranged, riesz_radial, BallAverageRequest,
    RadialFunction, RieszLift, TailProfile,
};
use crate::rearrange::{unit_ball_volume, DecreasingProfile, RadialProfile};
use crate::spaces::{norm, norm_of, SpaceDescriptor};
use crate::{Error, Result};
use serde::{Serialize, Serializer};

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Bound {
    AtMost {
        #[serde(with = "crate::serde_ext")]
        limit: f64,
    },
    /// Strictly greater than `limit`.
    Above {
        #[serde(with = "crate::serde_ext")]
        limit: f64,
    },
    Within {
        lo: f64,
        hi: f64,
    },
}

impl Bound {
    pub fn holds(&self, v: f64) -> bool {
        match *self {
            Bound::AtMost { limit } => v <= limit,
            Bound::Above { limit } => v > limit,
            Bound::Within { lo, hi } => (lo..=hi).contains(&v),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Criterion {
    pub name: String,
    #[serde(with = "crate::serde_ext")]
    pub value: f64,
    pub bound: Bound,
    pub holds: bool,
}

impl Criterion {
    pub fn new(name: impl Into<String>, value: f64, bound: Bound) -> Self {
        Criterion {
            name: name.into(),
            value,
            holds: bound.holds(value),
            bound,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerificationReport {
    pub name: String,
    pub grid: String,
    /// Value of the first criterion, the headline number of the check.
    #[serde(with = "crate::serde_ext")]
    pub worst: f64,
    #[serde(with = "crate::serde_ext")]
    pub tolerance: f64,
    pub pass: bool,
    pub criteria: Vec<Criterion>,
    pub notes: Vec<String>,
    pub columns: Vec<String>,
    #[serde(serialize_with = "ext_rows")]
    pub rows: Vec<Vec<f64>>,
}

fn ext_rows<S: Serializer>(rows: &[Vec<f64>], s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    struct Row<'a>(&'a [f64]);
    impl Serialize for Row<'_> {
        fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
            let mut seq = s.serialize_seq(Some(self.0.len()))?;
            for v in self.0 {
                seq.serialize_element(&Ext(*v))?;
            }
            seq.end()
        }
    }
    struct Ext(f64);
    impl Serialize for Ext {
        fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
            crate::serde_ext::serialize(&self.0, s)
        }
    }
    let mut seq = s.serialize_seq(Some(rows.len()))?;
    for r in rows {
        seq.serialize_element(&Row(r))?;
    }
    seq.end()
}

impl VerificationReport {
    fn new(name: &str, grid: String, criteria: Vec<Criterion>, columns: &[&str], rows: Vec<Vec<f64>>) -> Self {
        let (worst, tolerance) = criteria.first().map_or((0.0, 0.0), |c| {
            let tol = match c.bound {
                Bound::AtMost { limit } | Bound::Above { limit } => limit,
                Bound::Within { hi, .. } => hi,
            };
            (c.value, tol)
        });
        VerificationReport {
            name: name.to_string(),
            grid,
            worst,
            tolerance,
            pass: criteria.iter().all(|c| c.holds),
            criteria,
            notes: Vec::new(),
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }
}

/// Worst ratio over pairs `(a, b)` where `0/0` and `∞/∞` count as 1.
fn ratio(a: f64, b: f64) -> f64 {
    if a == b {
        1.0
    } else {
        a / b
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SuperharmonicConfig {
    /// Allowed relative excess of a ball average over the center value.
    pub tol: f64,
    /// Radius of the small-ball (Lebesgue point) test.
    pub small_r: f64,
    pub small_r_tol: f64,
    pub quad: QuadratureConfig,
}

impl Default for SuperharmonicConfig {
    fn default() -> Self {
        SuperharmonicConfig {
            tol: 1e-6,
            small_r: 1e-3,
            small_r_tol: 1e-4,
            quad: QuadratureConfig::default(),
        }
    }
}

/// `ρ ∈ [0.1, 10]` (20 points) by `r ∈ [0.01, 20]` (25 points).
pub fn default_superharmonic_grids() -> (LogGrid, LogGrid) {
    (
        LogGrid::new(0.1, 10.0, 20).expect("static grid"),
        LogGrid::new(0.01, 20.0, 25).expect("static grid"),
    )
}

/// Mean-value test: every ball average is at most `f(ρ)(1 + tol)` and small
/// balls reproduce `f(ρ)`.
///
/// Also reports `inf_{ρ∈[1,100]} f(ρ) ρ^{n−2}`, which is positive for every
/// positive super-harmonic function on ℝⁿ, `n ≥ 3`.
pub fn check_superharmonic(
    f: &dyn RadialFunction,
    rho_grid: &LogGrid,
    r_grid: &LogGrid,
    cfg: &SuperharmonicConfig,
) -> Result<VerificationReport> {
    let n = f.dimension();
    let kinks = f.kinks();
    let mut rows = Vec::new();
    let mut worst = f64::NEG_INFINITY;
    let mut worst_small = 0.0f64;
    for &rho in &rho_grid.points() {
        let center = f.value(rho);
        for &r in &r_grid.points() {
            let avg = ball_average(&BallAverageRequest { profile: f, rho, r }, &cfg.quad)?;
            let q = avg / center;
            worst = worst.max(q - 1.0);
            rows.push(vec![rho, r, avg, center, q]);
        }
        let near_kink = kinks.iter().any(|&k| (rho - k).abs() <= 10.0 * cfg.small_r);
        if !near_kink {
            let small = ball_average(
                &BallAverageRequest {
                    profile: f,
                    rho,
                    r: cfg.small_r,
                },
                &cfg.quad,
            )?;
            worst_small = worst_small.max((small / center - 1.0).abs());
        }
    }
    let decay = (0..=40)
        .map(|k| {
            let rho = 10f64.powf(k as f64 / 20.0);
            f.value(rho) * rho.powf(n as f64 - 2.0)
        })
        .fold(f64::INFINITY, f64::min);
    let criteria = vec![
        Criterion::new("max_ratio_minus_one", worst, Bound::AtMost { limit: cfg.tol }),
        Criterion::new(
            format!("small_ball_error_r={}", cfg.small_r),
            worst_small,
            Bound::AtMost {
                limit: cfg.small_r_tol,
            },
        ),
        Criterion::new("decay_constant_inf_f_rho^(n-2)", decay, Bound::Above { limit: 0.0 }),
    ];
    Ok(VerificationReport::new(
        "superharmonic",
        format!("rho {rho_grid}; r {r_grid}"),
        criteria,
        &["rho", "r", "ball_average", "center_value", "ratio"],
        rows,
    ))
}

/// For a step profile `d`, the radial function `d(c_n|x|ⁿ − m)` on
/// `c_n|x|ⁿ ≥ m`, zero inside. It is equimeasurable with `d` but not
/// non-increasing, so `I₂` of it differs from `I₂` of the lift of `d`.
fn annular_realisation(d: &DecreasingProfile, n: usize, m: f64) -> Option<RadialProfile> {
    let body = d.body();
    if !body.pieces().iter().all(|p| p.is_zero() || p.power == 0.0 && p.logpower == 0.0) {
        return None;
    }
    let cn = unit_ball_volume(n);
    let radius = |t: f64| ((t + m) / cn).powf(1.0 / n as f64);
    let mut breaks = vec![0.0];
    let mut pieces = vec![PowerLogPiece::ZERO];
    for (lo, _, piece) in body.segments() {
        breaks.push(radius(lo));
        pieces.push(*piece);
    }
    breaks.push(f64::INFINITY);
    let g = PiecewisePowerLog::new(breaks, pieces).ok()?;
    RadialProfile::new(n, g).ok()
}

/// The O'Neil-type sandwich: `(I₂f)*(t)`, the bracket
/// `t^{2/n−1}∫_0^t f* + ∫_t^∞ f* s^{2/n−1}` and `(I₂f⁰)*(t)`.
///
/// For step profiles `f` is the annular realisation whose hole has unit
/// measure; otherwise `f = f⁰`. Both consecutive ratios must lie in `[1/C, C]`.
pub fn check_oneil(
    d: &DecreasingProfile,
    n: usize,
    t_grid: &LogGrid,
    c: f64,
    cfg: &QuadratureConfig,
) -> Result<VerificationReport> {
    if n <= 2 {
        return Err(Error::dimension(n, "the O'Neil check needs n ≥ 3"));
    }
    let annular = annular_realisation(d, n, 1.0);
    let mut rows = Vec::new();
    let (mut lo, mut hi) = (f64::INFINITY, 0.0f64);
    for &t in &t_grid.points() {
        let lifted = riesz_of_lift_rearranged(d, t, n, cfg)?;
        // I₂f is radial and super-harmonic, hence non-increasing in |x|
        let left = match &annular {
            Some(f) => riesz_radial(f, (t / unit_ball_volume(n)).powf(1.0 / n as f64), cfg)?,
            None => lifted,
        };
        let middle = oneil_bracket(d, t, n, cfg)?;
        let (r1, r2) = (ratio(left, middle), ratio(middle, lifted));
        for r in [r1, r2] {
            lo = lo.min(r);
            hi = hi.max(r);
        }
        rows.push(vec![t, left, middle, lifted, r1, r2]);
    }
    let spread = if rows.is_empty() { 1.0 } else { hi.max(1.0 / lo) };
    let mut report = VerificationReport::new(
        "oneil",
        format!("t {t_grid}"),
        vec![Criterion::new("achieved_C", spread, Bound::AtMost { limit: c })],
        &["t", "riesz_rearranged", "bracket", "riesz_of_lift", "ratio_left", "ratio_right"],
        rows,
    );
    report.notes.push(if annular.is_some() {
        "f = d(c_n|x|^n - 1) outside the ball of unit measure".into()
    } else {
        "f = f0, the radial non-increasing lift".into()
    });
    Ok(report)
}

/// `s = 2^{−6}, …, 2^6`.
pub fn default_lemma_s_grid() -> Vec<f64> {
    (-6..=6).map(|k| (k as f64).exp2()).collect()
}

/// Compares `φ_Y(s) = ‖Tχ_[0,s)‖_X` with `s^{2/n}‖P_{1−2/n}χ_[0,s)‖_X`.
///
/// The ratio must stay in `[1/C, C]`. The same comparison with `s^{n/2}`
/// in place of `s^{2/n}` is reported alongside; it drifts like
/// `s^{2/n − n/2}`.
pub fn check_lemma_phi(
    x: &SpaceDescriptor,
    n: usize,
    s_grid: &[f64],
    c: f64,
    cfg: &QuadratureConfig,
) -> Result<VerificationReport> {
    if n <= 2 {
        return Err(Error::dimension(n, "the fundamental-function lemma needs n ≥ 3"));
    }
    x.validate()?;
    let nf = n as f64;
    let mut rows = Vec::new();
    let (mut lo, mut hi) = (f64::INFINITY, 0.0f64);
    for &s in s_grid {
        let tail = TailProfile::new(DecreasingProfile::indicator(s)?, n, *cfg)?;
        let phi_y = norm_of(x, &tail, cfg)?;
        let p_norm = norm_of(x, &hardy_p_indicator(s, n)?, cfg)?;
        let r = ratio(phi_y, s.powf(2.0 / nf) * p_norm);
        let literal = ratio(phi_y, s.powf(nf / 2.0) * p_norm);
        lo = lo.min(r);
        hi = hi.max(r);
        rows.push(vec![s, phi_y, p_norm, r, literal]);
    }
    let spread = if rows.is_empty() { 1.0 } else { hi.max(1.0 / lo) };
    let literal: Vec<f64> = rows.iter().map(|r| r[4]).collect();
    let drift = literal.iter().copied().fold(0.0f64, f64::max) / literal.iter().copied().fold(f64::INFINITY, f64::min);
    let monotone = literal.windows(2).all(|w| w[1] <= w[0]) || literal.windows(2).all(|w| w[1] >= w[0]);
    let mut report = VerificationReport::new(
        "lemma-phi",
        format!("s {:?}", s_grid),
        vec![Criterion::new("achieved_C", spread, Bound::AtMost { limit: c })],
        &["s", "phi_Y", "norm_P_chi", "ratio_s^(2/n)", "ratio_s^(n/2)"],
        rows,
    );
    report.notes.push(format!(
        "with s^(n/2) the ratio spreads by a factor {drift:.6e} over the grid ({}monotone); expected s^(2/n - n/2)",
        if monotone { "" } else { "not " }
    ));
    Ok(report)
}

/// Profiles used by the embedding and O'Neil checks.
pub fn embedding_corpus(n: usize) -> Result<Vec<(String, DecreasingProfile)>> {
    Ok(vec![
        ("indicator_1".into(), DecreasingProfile::indicator(1.0)?),
        ("indicator_1/8".into(), DecreasingProfile::indicator(0.125)?),
        ("two_step".into(), DecreasingProfile::steps(&[1.0, 4.0], &[1.0, 0.5])?),
        ("h_n".into(), h_n(n)?),
        ("w_inverse".into(), DecreasingProfile::w_inverse(n)?),
        ("newtonian_cap_star".into(), DecreasingProfile::newtonian_cap_star(n)?),
    ])
}

/// `‖d‖_X ≤ ‖W⁻¹‖_X ‖d‖_{L^{n/(n−2),∞} ∩ L^∞} (1 + tol)` over a corpus.
///
/// Fails with an error when `X` has no fixed point, since then the constant
/// `‖W⁻¹‖_X` is infinite.
pub fn check_embedding(
    n: usize,
    x: &SpaceDescriptor,
    corpus: &[(String, DecreasingProfile)],
    tol: f64,
) -> Result<VerificationReport> {
    let decision = decide_fixed_point_with(n, x, &DecideOptions::default())?;
    if !decision.verdict.exists() {
        return Err(Error::Domain(format!(
            "X = {} has no fixed point in dimension {n}: the embedding constant is infinite",
            x.kind()
        )));
    }
    let minimal = SpaceDescriptor::minimal(n)?;
    let c = norm(x, &DecreasingProfile::w_inverse(n)?)?;
    let mut rows = Vec::new();
    let mut worst = 0.0f64;
    for (_, d) in corpus {
        let lhs = norm(x, d)?;
        let rhs = c * norm(&minimal, d)?;
        let r = if lhs == 0.0 { 0.0 } else { ratio(lhs, rhs) };
        worst = worst.max(r);
        rows.push(vec![lhs, rhs, r]);
    }
    let mut report = VerificationReport::new(
        "embedding",
        format!("{} corpus profiles", corpus.len()),
        vec![
            Criterion::new("max_norm_ratio", worst, Bound::AtMost { limit: 1.0 + tol }),
            Criterion::new("embedding_constant", c, Bound::AtMost { limit: f64::MAX }),
        ],
        &["norm_X", "c_times_norm_minimal", "ratio"],
        rows,
    );
    report.notes = corpus.iter().enumerate().map(|(i, (name, _))| format!("row {i}: {name}")).collect();
    Ok(report)
}

/// All checks in dimension `n` with their default grids and corpora.
pub fn check_all(n: usize, cfg: &QuadratureConfig) -> Result<Vec<VerificationReport>> {
    if n <= 2 {
        return Err(Error::dimension(n, "the verification suite needs n ≥ 3"));
    }
    let (rho, r) = default_superharmonic_grids();
    let sh = SuperharmonicConfig {
        quad: *cfg,
        ..SuperharmonicConfig::default()
    };
    let mut out = vec![
        named(check_superharmonic(&RadialProfile::newtonian_cap(n)?, &rho, &r, &sh)?, "newtonian_cap"),
        named(check_superharmonic(&RieszLift::unit_ball(n)?, &rho, &r, &sh)?, "riesz_unit_ball"),
    ];
    let t_grid = LogGrid::per_decade(1e-2, 1e4, 8.0)?;
    for (name, d) in [
        ("indicator_1", DecreasingProfile::indicator(1.0)?),
        ("two_step", DecreasingProfile::steps(&[1.0, 4.0], &[1.0, 0.5])?),
    ] {
        out.push(named(check_oneil(&d, n, &t_grid, 10.0, cfg)?, name));
    }
    let s_grid = default_lemma_s_grid();
    let spaces = [
        ("minimal", SpaceDescriptor::minimal(n)?),
        ("L4", SpaceDescriptor::lebesgue(4.0)?),
        ("lorentz_crit_inf", SpaceDescriptor::lorentz(n as f64 / (n as f64 - 2.0), f64::INFINITY)?),
    ];
    for (name, x) in &spaces {
        out.push(named(check_lemma_phi(x, n, &s_grid, 10.0, cfg)?, name));
    }
    let corpus = embedding_corpus(n)?;
    for (name, x) in &spaces {
        if decide_fixed_point_with(n, x, &DecideOptions::default())?.verdict.exists() {
            out.push(named(check_embedding(n, x, &corpus, 1e-9)?, name));
        }
    }
    Ok(out)
}

fn named(mut r: VerificationReport, what: &str) -> VerificationReport {
    r.name = format!("{}:{what}", r.name);
    r
}
