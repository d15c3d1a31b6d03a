//! Rearrangement-invariant space descriptors.
//!
//! A descriptor names a family of function norms on `(0, ∞)` that act on
//! decreasing rearrangements. Norms may be `+∞`: that is how membership is
//! reported.

mod indices;
mod norm;
mod shorthand;

pub use indices::{
    dilation_function, dilation_function_with, fundamental_indices, fundamental_indices_with, Attained, Dilation,
    IndexGrid, IndexReport,
};
pub use norm::{fundamental_function, norm, norm_of, FundamentalExponents};

use crate::funcalg::{exp_lt, PiecewisePowerLog, PowerLogPiece};
use crate::{serde_ext, Error, Result};
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", try_from = "RawDescriptor")]
pub enum SpaceDescriptor {
    /// `L^{p,q}`: `(∫ (t^{1/p} f*)^q dt/t)^{1/q}`, or `sup t^{1/p} f*` for `q = ∞`.
    Lorentz {
        #[serde(with = "serde_ext")]
        p: f64,
        #[serde(with = "serde_ext")]
        q: f64,
    },
    /// `Λ^p(w)`: `(∫ f*^p w)^{1/p}`.
    ///
    /// `assume_banach` records that the caller vouches for `w ∈ B_p`; it is
    /// never checked.
    Lambda {
        #[serde(with = "serde_ext")]
        p: f64,
        w: PiecewisePowerLog,
        assume_banach: bool,
    },
    /// `sup_t f**(t) φ(t)`.
    MarcinkiewiczStar { phi: PiecewisePowerLog },
    /// `sup_t f*(t) φ(t)`. Only a membership functional: it need not satisfy
    /// the triangle inequality.
    MarcinkiewiczWeak { phi: PiecewisePowerLog },
    /// Maximum of the member norms.
    Intersection { members: Vec<SpaceDescriptor> },
}

/// Mirror used for deserialization so that every parsed descriptor is validated.
#[derive(Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
enum RawDescriptor {
    Lorentz {
        #[serde(with = "serde_ext")]
        p: f64,
        #[serde(default, with = "serde_ext::option")]
        q: Option<f64>,
    },
    Lambda {
        #[serde(with = "serde_ext")]
        p: f64,
        w: PiecewisePowerLog,
        #[serde(default = "yes")]
        assume_banach: bool,
    },
    MarcinkiewiczStar {
        phi: PiecewisePowerLog,
    },
    MarcinkiewiczWeak {
        phi: PiecewisePowerLog,
    },
    Intersection {
        members: Vec<SpaceDescriptor>,
    },
}

fn yes() -> bool {
    true
}

impl TryFrom<RawDescriptor> for SpaceDescriptor {
    type Error = Error;

    fn try_from(raw: RawDescriptor) -> Result<Self> {
        let d = match raw {
            RawDescriptor::Lorentz { p, q } => SpaceDescriptor::Lorentz { p, q: q.unwrap_or(p) },
            RawDescriptor::Lambda { p, w, assume_banach } => SpaceDescriptor::Lambda { p, w, assume_banach },
            RawDescriptor::MarcinkiewiczStar { phi } => SpaceDescriptor::MarcinkiewiczStar { phi },
            RawDescriptor::MarcinkiewiczWeak { phi } => SpaceDescriptor::MarcinkiewiczWeak { phi },
            RawDescriptor::Intersection { members } => SpaceDescriptor::Intersection { members },
        };
        d.validate()?;
        Ok(d)
    }
}

/// `W(t) = max(1, t^{1−2/n})`.
pub fn weight_w(n: usize) -> PiecewisePowerLog {
    PiecewisePowerLog::two_piece(
        1.0,
        PowerLogPiece::constant(1.0),
        PowerLogPiece::power(1.0, 1.0 - 2.0 / n as f64),
    )
    .expect("split point 1 is valid")
}

/// `t^a χ_[0,1) + c·t^b (1+log⁺t)^k χ_[1,∞)`.
fn two_sided(a: f64, b: f64, k: f64) -> Result<PiecewisePowerLog> {
    PiecewisePowerLog::two_piece(1.0, PowerLogPiece::power(1.0, a), PowerLogPiece::new(1.0, b, k))
}

impl SpaceDescriptor {
    pub fn lorentz(p: f64, q: f64) -> Result<Self> {
        let d = SpaceDescriptor::Lorentz { p, q };
        d.validate()?;
        Ok(d)
    }

    /// `L^p = L^{p,p}`.
    pub fn lebesgue(p: f64) -> Result<Self> {
        Self::lorentz(p, p)
    }

    pub fn lambda(p: f64, w: PiecewisePowerLog) -> Result<Self> {
        let d = SpaceDescriptor::Lambda {
            p,
            w,
            assume_banach: true,
        };
        d.validate()?;
        Ok(d)
    }

    pub fn star(phi: PiecewisePowerLog) -> Result<Self> {
        let d = SpaceDescriptor::MarcinkiewiczStar { phi };
        d.validate()?;
        Ok(d)
    }

    pub fn weak(phi: PiecewisePowerLog) -> Result<Self> {
        let d = SpaceDescriptor::MarcinkiewiczWeak { phi };
        d.validate()?;
        Ok(d)
    }

    pub fn intersection(members: Vec<SpaceDescriptor>) -> Result<Self> {
        let d = SpaceDescriptor::Intersection { members };
        d.validate()?;
        Ok(d)
    }

    /// `L^{n/(n−2),∞} ∩ L^∞`, written as the weak-type space with weight `W`.
    pub fn minimal(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::dimension(n, "the minimal space needs n ≥ 3"));
        }
        Self::weak(weight_w(n))
    }

    /// Star-Marcinkiewicz space with `φ(t) = t^a χ_[0,1) + t^b χ_[1,∞)`.
    pub fn proposition(a: f64, b: f64) -> Result<Self> {
        for (name, v) in [("a", a), ("b", b)] {
            if !(0.0..=1.0).contains(&v) {
                return Err(Error::descriptor(name, format!("must lie in [0, 1], got {v}")));
            }
        }
        Self::star(two_sided(a, b, 0.0)?)
    }

    /// Star-Marcinkiewicz space with `φ(t) = t^{1−2/n}(1+log⁺t)^k`.
    ///
    /// `k = 1` and `k = −1` are the two spaces straddling the boundary of the
    /// fixed-point property at index `1 − 2/n`.
    pub fn log_boundary(n: usize, k: f64) -> Result<Self> {
        if n < 3 {
            return Err(Error::dimension(n, "needs n ≥ 3"));
        }
        let e = 1.0 - 2.0 / n as f64;
        Self::star(two_sided(e, e, k)?)
    }

    pub fn x0(n: usize) -> Result<Self> {
        Self::log_boundary(n, 1.0)
    }

    pub fn x1(n: usize) -> Result<Self> {
        Self::log_boundary(n, -1.0)
    }

    pub fn kind(&self) -> &'static str {
        match self {
            SpaceDescriptor::Lorentz { .. } => "lorentz",
            SpaceDescriptor::Lambda { .. } => "lambda",
            SpaceDescriptor::MarcinkiewiczStar { .. } => "marcinkiewicz_star",
            SpaceDescriptor::MarcinkiewiczWeak { .. } => "marcinkiewicz_weak",
            SpaceDescriptor::Intersection { .. } => "intersection",
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            SpaceDescriptor::Lorentz { p, q } => {
                if p.is_nan() || *p < 1.0 {
                    return Err(Error::descriptor("p", format!("Lorentz p must lie in [1, ∞], got {p}")));
                }
                if q.is_nan() || *q < 1.0 {
                    return Err(Error::descriptor("q", format!("Lorentz q must lie in [1, ∞], got {q}")));
                }
                if *p == 1.0 && *q != 1.0 {
                    return Err(Error::descriptor("q", format!("p = 1 requires q = 1, got q = {q}")));
                }
                if p.is_infinite() && q.is_finite() {
                    return Err(Error::descriptor("q", "p = ∞ requires q = ∞ (L^{∞,q} is trivial for q < ∞)"));
                }
                Ok(())
            }
            SpaceDescriptor::Lambda { p, w, .. } => {
                if !(p.is_finite() && *p >= 1.0) {
                    return Err(Error::descriptor("p", format!("Lambda p must lie in [1, ∞), got {p}")));
                }
                if !w.is_nonnegative() {
                    return Err(Error::descriptor("w", "weight must be non-negative"));
                }
                let head = w.head();
                if head.coefficient <= 0.0 {
                    return Err(Error::descriptor("w", "weight must be positive near 0"));
                }
                if !head.is_head_integrable() {
                    return Err(Error::descriptor("w", "weight must be integrable near 0"));
                }
                Ok(())
            }
            SpaceDescriptor::MarcinkiewiczStar { phi } => {
                validate_phi(phi)?;
                let tail = phi.tail();
                let bounded_over_t =
                    exp_lt(tail.power, 1.0) || (!exp_lt(1.0, tail.power) && !exp_lt(0.0, tail.logpower));
                if !bounded_over_t {
                    return Err(Error::descriptor("phi", "φ(t)/t must stay bounded as t → ∞"));
                }
                Ok(())
            }
            SpaceDescriptor::MarcinkiewiczWeak { phi } => validate_phi(phi),
            SpaceDescriptor::Intersection { members } => {
                if members.is_empty() {
                    return Err(Error::descriptor("members", "an intersection needs at least one member"));
                }
                members.iter().try_for_each(SpaceDescriptor::validate)
            }
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("descriptors serialize")
    }
}

fn validate_phi(phi: &PiecewisePowerLog) -> Result<()> {
    if !phi.is_nonnegative() {
        return Err(Error::descriptor("phi", "φ must be non-negative"));
    }
    let head = phi.head();
    if head.coefficient <= 0.0 {
        return Err(Error::descriptor("phi", "φ must be positive near 0"));
    }
    if exp_lt(head.power, 0.0) {
        return Err(Error::descriptor("phi", "φ must stay bounded near 0"));
    }
    Ok(())
}
