//! One-line descriptor syntax: `kind:key=value,key=value`.
//!
//! | shorthand                          | space                                            |
//! |------------------------------------|--------------------------------------------------|
//! | `lorentz:p=3,q=inf`                | `L^{3,∞}` (`q` defaults to `p`)                  |
//! | `lp:p=4`                           | `L⁴`                                             |
//! | `lambda:p=2,w0=0.2,w1=0.1`         | `Λ²(t^{0.2}χ_[0,1) + t^{0.1}χ_[1,∞))`            |
//! | `prop:a=0.2,b=0.6`                 | star space with `φ = t^aχ_[0,1) + t^bχ_[1,∞)`    |
//! | `marcinkiewicz_star:a=,b=[,k=]`    | same, tail multiplied by `(1+log⁺t)^k`           |
//! | `marcinkiewicz_weak:a=,b=[,k=]`    | the weak-type analogue                           |
//! | `minimal:n=3`, `marcinkiewicz_weak:W,n=3` | `L^{n/(n−2),∞} ∩ L^∞`                 |
//! | `x0:n=3`, `x1:n=3`                 | star spaces with `φ = t^{1−2/n}(1+log⁺t)^{±1}`   |
//! | `intersection:A;B;…`               | intersection of the `;`-separated members       |
//!
//! A string starting with `{` is parsed as the JSON schema instead.

use super::{two_sided, SpaceDescriptor};
use crate::funcalg::PiecewisePowerLog;
use crate::serde_ext::parse_ext;
use crate::{Error, Result};
use std::collections::BTreeMap;
use std::str::FromStr;

impl FromStr for SpaceDescriptor {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        SpaceDescriptor::parse(s, None)
    }
}

struct Args {
    values: BTreeMap<String, String>,
    flags: Vec<String>,
}

impl Args {
    fn parse(body: &str) -> Result<Self> {
        let mut values = BTreeMap::new();
        let mut flags = Vec::new();
        for token in body.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            match token.split_once('=') {
                Some((k, v)) => {
                    if values.insert(k.trim().to_string(), v.trim().to_string()).is_some() {
                        return Err(Error::descriptor(k.trim(), "given twice"));
                    }
                }
                None => flags.push(token.to_string()),
            }
        }
        Ok(Args { values, flags })
    }

    fn real(&self, key: &str) -> Result<Option<f64>> {
        self.values
            .get(key)
            .map(|v| parse_ext(v).ok_or_else(|| Error::descriptor(key, format!("not a number: {v:?}"))))
            .transpose()
    }

    fn required(&self, key: &str) -> Result<f64> {
        self.real(key)?.ok_or_else(|| Error::descriptor(key, "missing"))
    }

    fn dimension(&self, fallback: Option<usize>) -> Result<usize> {
        match self.values.get("n") {
            Some(v) => v.parse().map_err(|_| Error::descriptor("n", format!("not a dimension: {v:?}"))),
            None => fallback.ok_or_else(|| Error::descriptor("n", "missing")),
        }
    }

    fn only(&self, allowed: &[&str], flags: &[&str]) -> Result<()> {
        if let Some(k) = self.values.keys().find(|k| !allowed.contains(&k.as_str())) {
            return Err(Error::descriptor(k.as_str(), "unknown parameter"));
        }
        if let Some(f) = self.flags.iter().find(|f| !flags.contains(&f.as_str())) {
            return Err(Error::descriptor(f.as_str(), "unknown flag"));
        }
        Ok(())
    }
}

impl SpaceDescriptor {
    /// Parses JSON or shorthand; `n` fills in a missing `n=` parameter.
    pub fn parse(s: &str, n: Option<usize>) -> Result<Self> {
        let s = s.trim();
        if s.starts_with('{') {
            return serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()));
        }
        let (kind, body) = s.split_once(':').unwrap_or((s, ""));
        let kind = kind.trim().to_ascii_lowercase();
        if kind == "intersection" {
            let members = body
                .split(';')
                .filter(|m| !m.trim().is_empty())
                .map(|m| SpaceDescriptor::parse(m, n))
                .collect::<Result<Vec<_>>>()?;
            return SpaceDescriptor::intersection(members);
        }
        let args = Args::parse(body)?;
        match kind.as_str() {
            "lorentz" => {
                args.only(&["p", "q"], &[])?;
                let p = args.required("p")?;
                SpaceDescriptor::lorentz(p, args.real("q")?.unwrap_or(p))
            }
            "lp" | "lebesgue" => {
                args.only(&["p"], &[])?;
                SpaceDescriptor::lebesgue(args.required("p")?)
            }
            "lambda" => {
                args.only(&["p", "w0", "w1"], &[])?;
                let w0 = args.real("w0")?.unwrap_or(0.0);
                let w1 = args.real("w1")?.unwrap_or(w0);
                SpaceDescriptor::lambda(args.required("p")?, two_sided(w0, w1, 0.0)?)
            }
            "prop" | "proposition" => {
                args.only(&["a", "b"], &[])?;
                SpaceDescriptor::proposition(args.required("a")?, args.required("b")?)
            }
            "marcinkiewicz_star" | "star" => {
                args.only(&["a", "b", "k"], &[])?;
                SpaceDescriptor::star(phi_from(&args)?)
            }
            "marcinkiewicz_weak" | "weak" => {
                if args.flags.iter().any(|f| f.eq_ignore_ascii_case("w")) {
                    args.only(&["n"], &["W", "w"])?;
                    return SpaceDescriptor::minimal(args.dimension(n)?);
                }
                args.only(&["a", "b", "k"], &[])?;
                SpaceDescriptor::weak(phi_from(&args)?)
            }
            "minimal" => {
                args.only(&["n"], &[])?;
                SpaceDescriptor::minimal(args.dimension(n)?)
            }
            "x0" | "x1" => {
                args.only(&["n"], &[])?;
                let n = args.dimension(n)?;
                if kind == "x0" {
                    SpaceDescriptor::x0(n)
                } else {
                    SpaceDescriptor::x1(n)
                }
            }
            other => Err(Error::descriptor("kind", format!("unknown space kind {other:?}"))),
        }
    }
}

fn phi_from(args: &Args) -> Result<PiecewisePowerLog> {
    let a = args.required("a")?;
    let b = args.real("b")?.unwrap_or(a);
    two_sided(a, b, args.real("k")?.unwrap_or(0.0))
}
