use super::piece::{exp_eq, is_tail_integrable, PowerLogPiece};
use super::quad::QuadratureConfig;
use crate::serde_ext;
use crate::{Error, Result};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// A function on `(0, ∞)` that is a single [`PowerLogPiece`] on each interval
/// `[t_i, t_{i+1})` of a strictly increasing breakpoint sequence
/// `0 = t_0 < t_1 < … < t_m = ∞`.
///
/// Values at breakpoints come from the right-hand piece.
#[derive(Clone, Debug, PartialEq)]
pub struct PiecewisePowerLog {
    breaks: Vec<f64>,
    pieces: Vec<PowerLogPiece>,
}

impl PiecewisePowerLog {
    pub fn new(breaks: Vec<f64>, pieces: Vec<PowerLogPiece>) -> Result<Self> {
        if breaks.len() != pieces.len() + 1 || pieces.is_empty() {
            return Err(Error::descriptor(
                "pieces",
                format!("{} breakpoints for {} pieces", breaks.len(), pieces.len()),
            ));
        }
        if breaks[0] != 0.0 {
            return Err(Error::descriptor("t_lo", "first interval must start at 0"));
        }
        if *breaks.last().unwrap() != f64::INFINITY {
            return Err(Error::descriptor("t_hi", "last interval must end at inf"));
        }
        for w in breaks.windows(2) {
            if !(w[0] < w[1]) {
                return Err(Error::descriptor(
                    "t_hi",
                    format!("breakpoints not strictly increasing at {}", w[0]),
                ));
            }
        }
        for p in &pieces {
            if !p.coefficient.is_finite() || !p.power.is_finite() || !p.logpower.is_finite() {
                return Err(Error::descriptor("c", "piece parameters must be finite"));
            }
        }
        Ok(PiecewisePowerLog { breaks, pieces })
    }

    pub fn single(piece: PowerLogPiece) -> Self {
        PiecewisePowerLog {
            breaks: vec![0.0, f64::INFINITY],
            pieces: vec![piece],
        }
    }

    pub fn constant(c: f64) -> Self {
        Self::single(PowerLogPiece::constant(c))
    }

    pub fn power(c: f64, alpha: f64) -> Self {
        Self::single(PowerLogPiece::power(c, alpha))
    }

    /// `left` on `(0, split)`, `right` on `[split, ∞)`.
    pub fn two_piece(split: f64, left: PowerLogPiece, right: PowerLogPiece) -> Result<Self> {
        Self::new(vec![0.0, split, f64::INFINITY], vec![left, right])
    }

    /// `χ_[0,s)`.
    pub fn indicator(s: f64) -> Result<Self> {
        if !(s > 0.0) || !s.is_finite() {
            return Err(Error::Domain(format!("indicator length must be positive, got {s}")));
        }
        Self::two_piece(s, PowerLogPiece::constant(1.0), PowerLogPiece::ZERO)
    }

    pub fn breakpoints(&self) -> &[f64] {
        &self.breaks
    }

    /// Breakpoints strictly inside `(0, ∞)`.
    pub fn interior_breakpoints(&self) -> &[f64] {
        &self.breaks[1..self.breaks.len() - 1]
    }

    pub fn pieces(&self) -> &[PowerLogPiece] {
        &self.pieces
    }

    /// `(t_lo, t_hi, piece)` for every interval.
    pub fn segments(&self) -> impl Iterator<Item = (f64, f64, &PowerLogPiece)> + '_ {
        self.pieces
            .iter()
            .enumerate()
            .map(move |(i, p)| (self.breaks[i], self.breaks[i + 1], p))
    }

    pub fn head(&self) -> &PowerLogPiece {
        &self.pieces[0]
    }

    pub fn tail(&self) -> &PowerLogPiece {
        self.pieces.last().unwrap()
    }

    fn index_of(&self, t: f64) -> usize {
        // last i with breaks[i] <= t
        let idx = self.breaks.partition_point(|&b| b <= t);
        idx.saturating_sub(1).min(self.pieces.len() - 1)
    }

    pub fn evaluate(&self, t: f64) -> Result<f64> {
        if !(t > 0.0) {
            return Err(Error::Domain(format!("evaluation point must be > 0, got {t}")));
        }
        Ok(self.value(t))
    }

    /// Unchecked evaluation; `t` must be positive.
    pub fn value(&self, t: f64) -> f64 {
        self.pieces[self.index_of(t)].eval(t)
    }

    /// `lim_{u → t⁻} f(u)`.
    pub fn left_limit(&self, t: f64) -> f64 {
        let i = self.breaks.partition_point(|&b| b < t).saturating_sub(1);
        self.pieces[i.min(self.pieces.len() - 1)].eval(t)
    }

    pub fn is_continuous_at(&self, t: f64) -> bool {
        let l = self.left_limit(t);
        let r = self.value(t);
        (l - r).abs() <= 1e-12 * l.abs().max(r.abs()).max(1e-300)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.pieces.iter().all(|p| p.coefficient >= 0.0)
    }

    pub fn is_zero(&self) -> bool {
        self.pieces.iter().all(PowerLogPiece::is_zero)
    }

    /// Pointwise product over the merged breakpoint set.
    pub fn multiply(&self, other: &PiecewisePowerLog) -> PiecewisePowerLog {
        let mut breaks: Vec<f64> = self
            .breaks
            .iter()
            .chain(other.breaks.iter())
            .copied()
            .collect();
        breaks.sort_by(f64::total_cmp);
        breaks.dedup();
        let pieces = breaks
            .windows(2)
            .map(|w| {
                let probe = probe_point(w[0], w[1]);
                self.pieces[self.index_of(probe)].mul(&other.pieces[other.index_of(probe)])
            })
            .collect();
        PiecewisePowerLog { breaks, pieces }
    }

    pub fn powf(&self, q: f64) -> PiecewisePowerLog {
        PiecewisePowerLog {
            breaks: self.breaks.clone(),
            pieces: self.pieces.iter().map(|p| p.powf(q)).collect(),
        }
    }

    pub fn scale(&self, k: f64) -> PiecewisePowerLog {
        PiecewisePowerLog {
            breaks: self.breaks.clone(),
            pieces: self.pieces.iter().map(|p| p.scale(k)).collect(),
        }
    }

    /// Multiplies by `t^alpha`.
    pub fn times_power(&self, alpha: f64) -> PiecewisePowerLog {
        self.multiply(&PiecewisePowerLog::power(1.0, alpha))
    }

    /// Merges adjacent intervals carrying identical pieces.
    pub fn simplify(&self) -> PiecewisePowerLog {
        let mut breaks = vec![0.0];
        let mut pieces: Vec<PowerLogPiece> = Vec::new();
        for (i, p) in self.pieces.iter().enumerate() {
            let p = if p.is_zero() { PowerLogPiece::ZERO } else { *p };
            if let Some(last) = pieces.last() {
                if same_piece(last, &p) {
                    *breaks.last_mut().unwrap() = self.breaks[i + 1];
                    continue;
                }
            }
            pieces.push(p);
            breaks.push(self.breaks[i + 1]);
        }
        PiecewisePowerLog { breaks, pieces }
    }

    /// `∫_a^b f`, `0 ≤ a < b ≤ ∞`. Divergent integrals return `+∞`.
    ///
    /// Pieces without a log factor integrate in closed form; the rest use
    /// adaptive quadrature in `u = log t`, and an infinite upper limit is
    /// classified with [`is_tail_integrable`] before anything numeric runs.
    pub fn integrate(&self, a: f64, b: f64, cfg: &QuadratureConfig) -> Result<f64> {
        if !(a >= 0.0) || !(b > a) {
            return Err(Error::Domain(format!("integration limits need 0 <= a < b, got ({a}, {b})")));
        }
        if b.is_infinite() && !is_tail_integrable(self.tail()) {
            return Ok(f64::INFINITY);
        }
        let mut total = 0.0;
        for (lo, hi, p) in self.segments() {
            let l = lo.max(a);
            let h = hi.min(b);
            if l >= h {
                continue;
            }
            total += p.integral(l, h, cfg);
            if total.is_infinite() {
                return Ok(f64::INFINITY);
            }
        }
        Ok(total)
    }

    /// `sup_{t ∈ [a,b]}` of the right-continuous function together with its
    /// left limits (i.e. the supremum over the open interval `(a, b)`).
    pub fn sup_on(&self, a: f64, b: f64) -> f64 {
        let mut best: f64 = 0.0;
        for (lo, hi, p) in self.segments() {
            let l = lo.max(a);
            let h = hi.min(b);
            if l >= h {
                continue;
            }
            best = best.max(p.sup_on(l, h));
        }
        best
    }

    pub fn sup(&self) -> f64 {
        self.sup_on(0.0, f64::INFINITY)
    }

    /// `t ↦ f(κ t^γ)` for `κ, γ > 0`. Pieces with a log factor are rejected
    /// unless the map is the identity.
    pub fn compose_power(&self, kappa: f64, gamma: f64) -> Result<PiecewisePowerLog> {
        if !(kappa > 0.0) || !(gamma > 0.0) {
            return Err(Error::Domain("compose_power needs kappa, gamma > 0".into()));
        }
        let identity = kappa == 1.0 && gamma == 1.0;
        if identity {
            return Ok(self.clone());
        }
        if self.pieces.iter().any(PowerLogPiece::has_log) {
            return Err(Error::Unsupported(
                "rescaling a piece with a (1+log⁺t) factor leaves the power-log class".into(),
            ));
        }
        let breaks = self
            .breaks
            .iter()
            .map(|&b| {
                if b == 0.0 || b.is_infinite() {
                    b
                } else {
                    (b / kappa).powf(1.0 / gamma)
                }
            })
            .collect();
        let pieces = self
            .pieces
            .iter()
            .map(|p| {
                if p.is_zero() {
                    PowerLogPiece::ZERO
                } else {
                    PowerLogPiece::power(p.coefficient * kappa.powf(p.power), p.power * gamma)
                }
            })
            .collect();
        PiecewisePowerLog::new(breaks, pieces)
    }
}

fn same_piece(a: &PowerLogPiece, b: &PowerLogPiece) -> bool {
    if a.is_zero() && b.is_zero() {
        return true;
    }
    let rel = (a.coefficient - b.coefficient).abs() <= 1e-15 * a.coefficient.abs().max(b.coefficient.abs());
    rel && exp_eq(a.power, b.power) && exp_eq(a.logpower, b.logpower)
}

pub(crate) fn probe_point(lo: f64, hi: f64) -> f64 {
    if lo == 0.0 {
        if hi.is_infinite() {
            1.0
        } else {
            0.5 * hi
        }
    } else if hi.is_infinite() {
        2.0 * lo
    } else {
        0.5 * (lo + hi)
    }
}

/// One interval of the JSON encoding.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PieceRecord {
    pub t_lo: f64,
    #[serde(with = "serde_ext")]
    pub t_hi: f64,
    pub c: f64,
    #[serde(default)]
    pub alpha: f64,
    #[serde(default)]
    pub beta: f64,
}

impl PiecewisePowerLog {
    pub fn to_records(&self) -> Vec<PieceRecord> {
        self.segments()
            .map(|(lo, hi, p)| PieceRecord {
                t_lo: lo,
                t_hi: hi,
                c: p.coefficient,
                alpha: p.power,
                beta: p.logpower,
            })
            .collect()
    }

    pub fn from_records(records: &[PieceRecord]) -> Result<Self> {
        if records.is_empty() {
            return Err(Error::descriptor("pieces", "at least one piece is required"));
        }
        let mut breaks = vec![records[0].t_lo];
        let mut pieces = Vec::with_capacity(records.len());
        for (i, r) in records.iter().enumerate() {
            if i > 0 && r.t_lo != records[i - 1].t_hi {
                return Err(Error::descriptor(
                    "t_lo",
                    format!("piece {i} starts at {} but the previous one ends at {}", r.t_lo, records[i - 1].t_hi),
                ));
            }
            breaks.push(r.t_hi);
            pieces.push(PowerLogPiece::new(r.c, r.alpha, r.beta));
        }
        Self::new(breaks, pieces)
    }
}

impl Serialize for PiecewisePowerLog {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_records().serialize(s)
    }
}

impl<'de> Deserialize<'de> for PiecewisePowerLog {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let records = Vec::<PieceRecord>::deserialize(d)?;
        PiecewisePowerLog::from_records(&records).map_err(serde::de::Error::custom)
    }
}
