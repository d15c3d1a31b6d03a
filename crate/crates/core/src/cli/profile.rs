//! Profile arguments: `h:n=3`, `winv:n=3`, `indicator:s=1`,
//! `steps:1=1,4=0.5`, `F:n=3` (also `fixed:n=3`), `ball:s=1`, `riesz_ball:n=3`,
//! inline JSON or a path to a JSON file.
//!
//! JSON is either a list of piece records, read in the command's natural
//! variable (`|x|` for radial commands, `t` otherwise), or an object
//! `{"kind": "radial" | "decreasing", "pieces": [...]}`.

use crate::funcalg::PiecewisePowerLog;
use crate::operators::{RadialFunction, RieszLift};
use crate::rearrange::{rearrangement, DecreasingProfile, RadialProfile};
use crate::serde_ext::parse_ext;
use crate::{Error, Result};
use serde::Deserialize;
use std::path::Path;

#[derive(Clone, Debug)]
pub enum ProfileArg {
    /// A function of `t ∈ (0, ∞)`, already non-increasing.
    Decreasing(DecreasingProfile),
    Radial(RadialProfile),
    /// `I₂` of the unit-volume ball indicator.
    RieszBall(usize),
    /// A bare record list whose variable is fixed by the command.
    Bare(PiecewisePowerLog),
}

#[derive(Deserialize)]
#[serde(rename_all = "snake_case")]
enum Kind {
    Radial,
    Decreasing,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct Tagged {
    kind: Kind,
    #[serde(default)]
    n: Option<usize>,
    pieces: PiecewisePowerLog,
}

fn kv(body: &str) -> Result<Vec<(String, String)>> {
    body.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.split_once('=')
                .map(|(k, v)| (k.trim().to_string(), v.trim().to_string()))
                .ok_or_else(|| Error::descriptor(t, "expected key=value"))
        })
        .collect()
}

fn lookup(args: &[(String, String)], key: &str) -> Option<String> {
    args.iter().find(|(k, _)| k == key).map(|(_, v)| v.clone())
}

fn real(args: &[(String, String)], key: &str, default: Option<f64>) -> Result<f64> {
    match lookup(args, key) {
        Some(v) => parse_ext(&v).ok_or_else(|| Error::descriptor(key, format!("not a number: {v:?}"))),
        None => default.ok_or_else(|| Error::descriptor(key, "missing")),
    }
}

fn dimension(args: &[(String, String)], fallback: Option<usize>) -> Result<usize> {
    match lookup(args, "n") {
        Some(v) => v.parse().map_err(|_| Error::descriptor("n", format!("not a dimension: {v:?}"))),
        None => fallback.ok_or_else(|| Error::descriptor("n", "missing (pass n= or --n)")),
    }
}

fn only(args: &[(String, String)], allowed: &[&str]) -> Result<()> {
    match args.iter().find(|(k, _)| !allowed.contains(&k.as_str())) {
        Some((k, _)) => Err(Error::descriptor(k.as_str(), "unknown parameter")),
        None => Ok(()),
    }
}

impl ProfileArg {
    pub fn parse(s: &str, n: Option<usize>) -> Result<Self> {
        let s = s.trim();
        if s.starts_with('[') || s.starts_with('{') {
            return Self::parse_json(s, n);
        }
        if s.ends_with(".json") || Path::new(s).is_file() {
            let text = std::fs::read_to_string(s)?;
            return Self::parse_json(&text, n);
        }
        let (kind, body) = s.split_once(':').unwrap_or((s, ""));
        if kind == "steps" {
            return Self::parse_steps(body);
        }
        let args = kv(body)?;
        match kind {
            "h" | "winv" => {
                only(&args, &["n"])?;
                Ok(ProfileArg::Decreasing(DecreasingProfile::h(dimension(&args, n)?)?))
            }
            "indicator" => {
                only(&args, &["s"])?;
                Ok(ProfileArg::Decreasing(DecreasingProfile::indicator(real(&args, "s", Some(1.0))?)?))
            }
            "F" | "fixed" => {
                only(&args, &["n"])?;
                Ok(ProfileArg::Radial(RadialProfile::newtonian_cap(dimension(&args, n)?)?))
            }
            "ball" => {
                only(&args, &["s", "n"])?;
                let n = dimension(&args, n)?;
                Ok(ProfileArg::Radial(RadialProfile::ball_indicator(n, real(&args, "s", Some(1.0))?)?))
            }
            "riesz_ball" => {
                only(&args, &["n"])?;
                Ok(ProfileArg::RieszBall(dimension(&args, n)?))
            }
            other => Err(Error::descriptor("profile", format!("unknown profile kind {other:?}"))),
        }
    }

    /// `steps:1=1,4=0.5` is `1` on `[0, 1)`, `0.5` on `[1, 4)`, zero after.
    fn parse_steps(body: &str) -> Result<Self> {
        let mut breaks = Vec::new();
        let mut values = Vec::new();
        for (k, v) in kv(body)? {
            breaks.push(parse_ext(&k).ok_or_else(|| Error::descriptor(k.as_str(), "break is not a number"))?);
            values.push(parse_ext(&v).ok_or_else(|| Error::descriptor(k.as_str(), "value is not a number"))?);
        }
        Ok(ProfileArg::Decreasing(DecreasingProfile::steps(&breaks, &values)?))
    }

    fn parse_json(text: &str, n: Option<usize>) -> Result<Self> {
        let text = text.trim();
        if text.starts_with('[') {
            let body: PiecewisePowerLog = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
            return Ok(ProfileArg::Bare(body));
        }
        let tagged: Tagged = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        match tagged.kind {
            Kind::Decreasing => Ok(ProfileArg::Decreasing(DecreasingProfile::new(tagged.pieces)?)),
            Kind::Radial => {
                let n = tagged.n.or(n).ok_or_else(|| Error::descriptor("n", "missing"))?;
                Ok(ProfileArg::Radial(RadialProfile::new(n, tagged.pieces)?))
            }
        }
    }

    /// The radial function on ℝⁿ; decreasing profiles are lifted.
    pub fn radial(&self, n: usize) -> Result<Box<dyn RadialFunction>> {
        Ok(match self {
            ProfileArg::Radial(r) => {
                check_dim(r.dimension(), n)?;
                Box::new(r.clone())
            }
            ProfileArg::Decreasing(d) => Box::new(RadialProfile::lift(d, n)?),
            ProfileArg::Bare(p) => Box::new(RadialProfile::new(n, p.clone())?),
            ProfileArg::RieszBall(m) => {
                check_dim(*m, n)?;
                Box::new(RieszLift::unit_ball(n)?)
            }
        })
    }

    /// A piecewise radial profile (needed by the Riesz potential).
    pub fn radial_profile(&self, n: usize) -> Result<RadialProfile> {
        match self {
            ProfileArg::Radial(r) => {
                check_dim(r.dimension(), n)?;
                Ok(r.clone())
            }
            ProfileArg::Decreasing(d) => RadialProfile::lift(d, n),
            ProfileArg::Bare(p) => RadialProfile::new(n, p.clone()),
            ProfileArg::RieszBall(_) => Err(Error::Unsupported("the Riesz lift is not a piecewise profile".into())),
        }
    }

    /// The decreasing rearrangement; radial inputs need `n`.
    ///
    /// With `radial_bare`, a bare record list is read as a radial profile.
    pub fn decreasing(&self, n: Option<usize>, radial_bare: bool) -> Result<DecreasingProfile> {
        let need_n = || n.ok_or_else(|| Error::descriptor("n", "a radial profile needs --n"));
        match self {
            ProfileArg::Decreasing(d) => Ok(d.clone()),
            ProfileArg::Radial(r) => rearrangement(r),
            ProfileArg::Bare(p) if radial_bare => rearrangement(&RadialProfile::new(need_n()?, p.clone())?),
            ProfileArg::Bare(p) => DecreasingProfile::new(p.clone()),
            ProfileArg::RieszBall(_) => Err(Error::Unsupported("the Riesz lift is not a piecewise profile".into())),
        }
    }
}

fn check_dim(got: usize, want: usize) -> Result<()> {
    if got != want {
        return Err(Error::dimension(got, format!("profile dimension differs from --n {want}")));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shorthands() {
        let h = ProfileArg::parse("h:n=3", None).unwrap().decreasing(None, false).unwrap();
        assert_eq!(h, DecreasingProfile::h(3).unwrap());
        let s = ProfileArg::parse("steps:1=1,4=0.5", None).unwrap().decreasing(None, false).unwrap();
        assert_eq!(s, DecreasingProfile::steps(&[1.0, 4.0], &[1.0, 0.5]).unwrap());
        let f = ProfileArg::parse("F:n=3", None).unwrap().decreasing(None, false).unwrap();
        assert!((f.value(8.0 * crate::rearrange::unit_ball_volume(3)) - 0.5).abs() < 1e-12);
        assert!(ProfileArg::parse("h", None).is_err());
        assert!(ProfileArg::parse("indicator:s=1,t=2", None).is_err());
        assert!(ProfileArg::parse("nope:n=3", None).is_err());
    }

    #[test]
    fn json_forms() {
        let bare = r#"[{"t_lo":0,"t_hi":1,"c":1},{"t_lo":1,"t_hi":"inf","c":1,"alpha":-1}]"#;
        let p = ProfileArg::parse(bare, Some(3)).unwrap();
        let (got, want) = (p.decreasing(Some(3), true).unwrap(), DecreasingProfile::newtonian_cap_star(3).unwrap());
        for t in [0.5, 4.0, 4.5, 33.5, 1e3] {
            assert!((got.value(t) - want.value(t)).abs() <= 1e-14, "t = {t}");
        }
        let tagged = format!(r#"{{"kind":"decreasing","pieces":{bare}}}"#);
        let d = ProfileArg::parse(&tagged, None).unwrap().decreasing(None, true).unwrap();
        assert_eq!(d.value(2.0), 0.5);
        assert!(ProfileArg::parse(r#"{"kind":"radial","pieces":[]}"#, Some(3)).is_err());
    }
}
