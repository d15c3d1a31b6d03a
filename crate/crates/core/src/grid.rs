use crate::{Error, Result};
use serde::Serialize;
use std::fmt;
use std::str::FromStr;

/// Geometric grid from `lo` to `hi` (both included).
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct LogGrid {
    pub lo: f64,
    pub hi: f64,
    pub count: usize,
}

impl LogGrid {
    pub fn new(lo: f64, hi: f64, count: usize) -> Result<Self> {
        if !(lo > 0.0 && hi.is_finite() && hi >= lo) {
            return Err(Error::descriptor("grid", format!("need 0 < lo ≤ hi < ∞, got [{lo}, {hi}]")));
        }
        if count == 0 {
            return Err(Error::descriptor("grid", "grid must have at least one point"));
        }
        if count > 1 && hi == lo {
            return Err(Error::descriptor("grid", "several points need lo < hi"));
        }
        Ok(LogGrid { lo, hi, count })
    }

    pub fn per_decade(lo: f64, hi: f64, per_decade: f64) -> Result<Self> {
        if !(per_decade > 0.0) {
            return Err(Error::descriptor("grid", "points per decade must be positive"));
        }
        Self::new(lo, hi, 1)?;
        let decades = (hi / lo).log10();
        let count = if decades > 0.0 {
            (decades * per_decade - 1e-9).ceil() as usize + 1
        } else {
            1
        };
        Self::new(lo, hi, count)
    }

    pub fn single(x: f64) -> Result<Self> {
        Self::new(x, x, 1)
    }

    pub fn points(&self) -> Vec<f64> {
        if self.count == 1 {
            return vec![self.lo];
        }
        let step = (self.hi / self.lo).ln() / (self.count - 1) as f64;
        (0..self.count)
            .map(|k| {
                if k + 1 == self.count {
                    self.hi
                } else {
                    self.lo * (step * k as f64).exp()
                }
            })
            .collect()
    }
}

impl FromStr for LogGrid {
    type Err = Error;

    /// `log:lo:hi:points-per-decade`.
    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.trim().split(':').collect();
        let bad = |what: &str| Error::Parse(format!("grid {s:?}: {what} (expected log:lo:hi:points-per-decade)"));
        if parts.len() != 4 {
            return Err(bad("wrong number of fields"));
        }
        if parts[0] != "log" {
            return Err(bad("only the `log` scale is supported"));
        }
        let num = |i: usize, name: &str| parts[i].parse::<f64>().map_err(|_| bad(&format!("{name} is not a number")));
        Self::per_decade(num(1, "lo")?, num(2, "hi")?, num(3, "points-per-decade")?)
    }
}

impl fmt::Display for LogGrid {
    fn fmt(&self, f: &mut fmt::Formatter) -> fmt::Result {
        write!(f, "log[{}, {}] × {}", self.lo, self.hi, self.count)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn per_decade_includes_both_ends() {
        let g: LogGrid = "log:1e-2:1e4:64".parse().unwrap();
        let p = g.points();
        assert_eq!(p.len(), 6 * 64 + 1);
        assert_eq!(p[0], 1e-2);
        assert_eq!(*p.last().unwrap(), 1e4);
        assert!((p[64] / 1e-1 - 1.0).abs() < 1e-12);
        assert!(p.windows(2).all(|w| w[1] > w[0]));
    }

    #[test]
    fn rejects_malformed() {
        for s in ["lin:1:2:3", "log:0:1:4", "log:2:1:4", "log:1:2", "log:1:a:2", "log:1:10:0"] {
            assert!(s.parse::<LogGrid>().is_err(), "{s}");
        }
        assert_eq!(LogGrid::single(1.0).unwrap().points(), vec![1.0]);
    }
}
