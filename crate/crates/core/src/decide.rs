//! Decides whether the maximal operator has a non-constant fixed point in
//! `X(ℝⁿ)`.
//!
//! The verdict always comes from the finiteness of `‖h_n‖_X`.
//! Closed-form rules for Lorentz and Lambda spaces and the index tests run alongside
//! it as cross-checks.

use crate::funcalg::{exp_eq, exp_gt, exp_lt, is_tail_integrable, PiecewisePowerLog, EXPONENT_EPS};
use crate::rearrange::DecreasingProfile;
use crate::spaces::{fundamental_function, fundamental_indices, norm, IndexReport, SpaceDescriptor};
use crate::{Error, Result};
use serde::Serialize;

/// `h_n(t) = χ_[0,1](t) + t^{2/n−1} χ_[1,∞)(t)`.
pub fn h_n(n: usize) -> Result<DecreasingProfile> {
    DecreasingProfile::h(n)
}

pub use crate::spaces::weight_w as w_n;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    FixedPointExists,
    NoFixedPoint,
}

impl Verdict {
    pub fn from_bool(exists: bool) -> Self {
        if exists {
            Verdict::FixedPointExists
        } else {
            Verdict::NoFixedPoint
        }
    }

    pub fn exists(self) -> bool {
        self == Verdict::FixedPointExists
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    DimensionRule,
    Condition3Exact,
    LorentzRule,
    LambdaRule,
    IndexSufficient,
    IndexNecessary,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct Witnesses {
    /// `‖h_n‖_X`; present whenever the decision went through the norm test.
    #[serde(with = "crate::serde_ext::option", skip_serializing_if = "Option::is_none")]
    pub norm_h: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tested_function: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub beta_lower: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub beta_upper: Option<f64>,
    /// `1 − 2/n`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub threshold: Option<f64>,
    /// `max φ_X(t)/t^{1−2/n}` over `t = 2^{k/4}`, `0 ≤ k ≤ 160`.
    #[serde(with = "crate::serde_ext::option", skip_serializing_if = "Option::is_none")]
    pub phi_growth_sup: Option<f64>,
    /// Closed-form rules that were evaluated and agreed with the verdict.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub cross_checks: Vec<Method>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Decision {
    pub n: usize,
    pub space: String,
    pub verdict: Verdict,
    pub method: Method,
    pub witnesses: Witnesses,
    pub notes: Vec<String>,
}

/// Optional inputs to [`decide_fixed_point_with`].
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct DecideOptions {
    /// Evaluate the fundamental indices and report them as witnesses.
    pub with_indices: bool,
    /// Self-improvement margin `ε` of a Lambda weight (`w ∈ B_{p−ε}`).
    pub epsilon: Option<f64>,
}

pub fn decide_fixed_point(n: usize, x: &SpaceDescriptor) -> Result<Decision> {
    decide_fixed_point_with(
        n,
        x,
        &DecideOptions {
            with_indices: true,
            epsilon: None,
        },
    )
}

pub fn decide_fixed_point_with(n: usize, x: &SpaceDescriptor, opts: &DecideOptions) -> Result<Decision> {
    x.validate()?;
    if n == 0 {
        return Err(Error::dimension(n, "dimension must be at least 1"));
    }
    let space = x.kind().to_string();
    if n <= 2 {
        return Ok(Decision {
            n,
            space,
            verdict: Verdict::NoFixedPoint,
            method: Method::DimensionRule,
            witnesses: Witnesses::default(),
            notes: vec![format!(
                "in dimension {n} every positive super-harmonic function is constant"
            )],
        });
    }
    let threshold = 1.0 - 2.0 / n as f64;
    let norm_h = norm(x, &h_n(n)?)?;
    let verdict = Verdict::from_bool(norm_h.is_finite());
    let mut notes = Vec::new();
    let mut cross_checks = Vec::new();
    if let Some((method, rule)) = closed_form_rule(n, x)? {
        if rule != verdict.exists() {
            return Err(Error::Inconsistent(format!(
                "{method:?} says {rule} but ‖h_{n}‖_X = {norm_h}"
            )));
        }
        cross_checks.push(method);
    }
    let mut witnesses = Witnesses {
        norm_h: Some(norm_h),
        tested_function: Some(format!("h_{n}(t) = χ_[0,1](t) + t^(2/{n}-1) χ_[1,∞)(t)")),
        threshold: Some(threshold),
        phi_growth_sup: Some(phi_growth_sup(x, n)?),
        cross_checks,
        ..Witnesses::default()
    };
    if opts.with_indices {
        let report = fundamental_indices(x)?;
        witnesses.beta_lower = Some(report.beta_lower);
        witnesses.beta_upper = Some(report.beta_upper);
        let status = classify(&report, threshold, DEFAULT_INDEX_TOLERANCE);
        let contradicts = matches!(
            (status, verdict),
            (IndexStatus::GuaranteedNontrivial, Verdict::NoFixedPoint)
                | (IndexStatus::GuaranteedTrivial, Verdict::FixedPointExists)
        );
        if contradicts {
            return Err(Error::Inconsistent(format!(
                "index test {status:?} contradicts ‖h_{n}‖_X = {norm_h}"
            )));
        }
    }
    if let (Some(eps), SpaceDescriptor::Lambda { p, .. }) = (opts.epsilon, x) {
        notes.push(epsilon_note(*p, eps)?);
    }
    notes.push(if verdict.exists() {
        format!("‖h_{n}‖_X is finite, so h_{n} lies in X")
    } else {
        format!("‖h_{n}‖_X = ∞")
    });
    Ok(Decision {
        n,
        space,
        verdict,
        method: Method::Condition3Exact,
        witnesses,
        notes,
    })
}

fn epsilon_note(p: f64, eps: f64) -> Result<String> {
    if !(eps > 0.0 && eps < p) {
        return Err(Error::Domain(format!("ε must lie in (0, p) = (0, {p}), got {eps}")));
    }
    Ok(format!(
        "if w ∈ B_(p-ε) with ε = {eps}: the integrability condition holds for n ≥ {} (2p/ε); 2/ε = {} suffices only for p = 1",
        2.0 * p / eps,
        2.0 / eps
    ))
}

/// Dimension from which a weight in `B_{p−ε}` satisfies [`lambda_rule`]:
/// `p(1 − 2/n) ≥ p − ε` exactly when `n ≥ 2p/ε`.
pub fn epsilon_dimension_threshold(p: f64, eps: f64) -> Result<f64> {
    epsilon_note(p, eps)?;
    Ok(2.0 * p / eps)
}

fn phi_growth_sup(x: &SpaceDescriptor, n: usize) -> Result<f64> {
    let e = 1.0 - 2.0 / n as f64;
    (0..=160).try_fold(0.0f64, |acc, k| {
        let t = (k as f64 / 4.0).exp2();
        Ok(acc.max(fundamental_function(x, t)? / t.powf(e)))
    })
}

/// The corollary rules for Lorentz and Lambda spaces (and intersections made
/// only of those), or `None` when no closed form applies.
fn closed_form_rule(n: usize, x: &SpaceDescriptor) -> Result<Option<(Method, bool)>> {
    Ok(match x {
        SpaceDescriptor::Lorentz { p, q } => Some((Method::LorentzRule, lorentz_rule(n, *p, *q))),
        SpaceDescriptor::Lambda { p, w, .. } => Some((Method::LambdaRule, lambda_rule(n, *p, w)?)),
        SpaceDescriptor::Intersection { members } => {
            let mut all = true;
            let mut method = None;
            for m in members {
                match closed_form_rule(n, m)? {
                    Some((mm, v)) => {
                        all &= v;
                        method.get_or_insert(mm);
                    }
                    None => return Ok(None),
                }
            }
            method.map(|m| (m, all))
        }
        _ => None,
    })
}

/// `L^{p,q}` has the fixed-point property iff `p > n/(n−2)`, or
/// `p = n/(n−2)` and `q = ∞`; `p = ∞` included.
pub fn lorentz_rule(n: usize, p: f64, q: f64) -> bool {
    if n <= 2 {
        return false;
    }
    if p.is_infinite() {
        return true;
    }
    // p > n/(n−2) ⇔ 1/p < 1 − 2/n, compared with exponent snapping
    let (inv, thr) = (1.0 / p, 1.0 - 2.0 / n as f64);
    exp_lt(inv, thr) || (exp_eq(inv, thr) && q.is_infinite())
}

/// Whether `∫_1^∞ w(t) t^{−p(1−2/n)} dt < ∞`, read off the tail piece of `w`.
pub fn lambda_rule(n: usize, p: f64, w: &PiecewisePowerLog) -> Result<bool> {
    if n <= 2 {
        return Err(Error::dimension(n, "the Lambda rule needs n ≥ 3"));
    }
    if !(p >= 1.0) {
        return Err(Error::descriptor("p", format!("must be at least 1, got {p}")));
    }
    let integrand = w.tail().mul(&crate::funcalg::PowerLogPiece::power(1.0, -p * (1.0 - 2.0 / n as f64)));
    Ok(is_tail_integrable(&integrand))
}

pub const DEFAULT_INDEX_TOLERANCE: f64 = 1e-2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum IndexStatus {
    GuaranteedNontrivial,
    GuaranteedTrivial,
    Indeterminate,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IndexVerdict {
    pub status: IndexStatus,
    pub indices: IndexReport,
    pub threshold: f64,
    pub tolerance: f64,
}

fn classify(r: &IndexReport, threshold: f64, tol: f64) -> IndexStatus {
    if r.beta_upper < threshold - tol {
        IndexStatus::GuaranteedNontrivial
    } else if r.beta_lower > threshold + tol {
        IndexStatus::GuaranteedTrivial
    } else {
        IndexStatus::Indeterminate
    }
}

pub fn index_test(n: usize, x: &SpaceDescriptor) -> Result<IndexVerdict> {
    index_test_with(n, x, DEFAULT_INDEX_TOLERANCE)
}

/// `β̄ < 1−2/n − tol` guarantees a fixed point, `β̲ > 1−2/n + tol` rules it
/// out, anything else is `Indeterminate`.
pub fn index_test_with(n: usize, x: &SpaceDescriptor, tolerance: f64) -> Result<IndexVerdict> {
    if n <= 2 {
        return Err(Error::dimension(n, "the index test needs n ≥ 3"));
    }
    x.validate()?;
    let threshold = 1.0 - 2.0 / n as f64;
    let indices = fundamental_indices(x)?;
    Ok(IndexVerdict {
        status: classify(&indices, threshold, tolerance),
        indices,
        threshold,
        tolerance,
    })
}

/// A decision from the indices alone, when they are conclusive.
pub fn decide_by_indices(n: usize, x: &SpaceDescriptor) -> Result<Option<Decision>> {
    let v = index_test(n, x)?;
    let (verdict, method) = match v.status {
        IndexStatus::GuaranteedNontrivial => (Verdict::FixedPointExists, Method::IndexSufficient),
        IndexStatus::GuaranteedTrivial => (Verdict::NoFixedPoint, Method::IndexNecessary),
        IndexStatus::Indeterminate => return Ok(None),
    };
    Ok(Some(Decision {
        n,
        space: x.kind().to_string(),
        verdict,
        method,
        witnesses: Witnesses {
            beta_lower: Some(v.indices.beta_lower),
            beta_upper: Some(v.indices.beta_upper),
            threshold: Some(v.threshold),
            ..Witnesses::default()
        },
        notes: vec![format!("index tolerance {}", v.tolerance)],
    }))
}

/// Decides the star-Marcinkiewicz space with `φ = t^aχ_[0,1) + t^bχ_[1,∞)`
/// and checks the verdict against `b ≤ 1 − 2/n`.
pub fn proposition_family(n: usize, a: f64, b: f64) -> Result<Decision> {
    if n <= 2 {
        return Err(Error::dimension(n, "the proposition family needs n ≥ 3"));
    }
    let x = SpaceDescriptor::proposition(a, b)?;
    let d = decide_fixed_point(n, &x)?;
    let expected = !exp_gt(b, 1.0 - 2.0 / n as f64);
    if d.verdict.exists() != expected {
        return Err(Error::Inconsistent(format!(
            "n = {n}, (a, b) = ({a}, {b}): norm test says {:?}, b ≤ 1 − 2/n says {expected} (tolerance {EXPONENT_EPS})",
            d.verdict
        )));
    }
    Ok(d)
}

impl Decision {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("decisions serialize")
    }
}
