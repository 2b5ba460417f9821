//! Interchange formats. Every rational is an exact `"p/q"` string.

use serde::{Deserialize, Serialize};

use crate::aabb::Aabb;
use crate::autocorr::PiecewiseLinear1D;
use crate::error::{Error, Result};
use crate::lattice::{Lattice, TranslationSystem};
use crate::polybox::{make_polybox, DegeneratePolicy, PolyBox};
use crate::rational::{format_rational, format_vector, parse_rational, parse_vector};
use crate::spectral::SpectrumCandidate;

pub type Interval = (String, String);

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyBoxJson {
    pub dim: usize,
    pub boxes: Vec<Vec<Interval>>,
}

impl From<&PolyBox> for PolyBoxJson {
    fn from(p: &PolyBox) -> Self {
        PolyBoxJson {
            dim: p.dim(),
            boxes: p.boxes().iter().map(aabb_intervals).collect(),
        }
    }
}

impl PolyBoxJson {
    /// Canonicalizes; degenerate boxes are rejected.
    pub fn to_polybox(&self) -> Result<PolyBox> {
        let raw = self
            .boxes
            .iter()
            .map(|b| {
                b.iter()
                    .map(|(lo, hi)| Ok((parse_rational(lo)?, parse_rational(hi)?)))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        make_polybox(self.dim, raw, DegeneratePolicy::Reject)
    }
}

fn aabb_intervals(b: &Aabb) -> Vec<Interval> {
    (0..b.dim())
        .map(|k| {
            let (lo, hi) = b.interval(k);
            (format_rational(lo), format_rational(hi))
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeJson {
    pub generators: Vec<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TranslationSystemJson {
    pub dim: usize,
    pub reps: Vec<Vec<String>>,
    pub lattice: Option<LatticeJson>,
}

impl From<&TranslationSystem> for TranslationSystemJson {
    fn from(s: &TranslationSystem) -> Self {
        TranslationSystemJson {
            dim: s.dim(),
            reps: s.reps().iter().map(|r| format_vector(r)).collect(),
            lattice: s.lattice().map(|l| LatticeJson {
                generators: l.generators().iter().map(|g| format_vector(g)).collect(),
            }),
        }
    }
}

impl TranslationSystemJson {
    pub fn to_system(&self) -> Result<TranslationSystem> {
        let reps = self.reps.iter().map(|r| parse_vector(r)).collect::<Result<Vec<_>>>()?;
        let lattice = match &self.lattice {
            Some(l) => Some(Lattice::new(
                l.generators.iter().map(|g| parse_vector(g)).collect::<Result<Vec<_>>>()?,
            )?),
            None => None,
        };
        TranslationSystem::new(self.dim, reps, lattice)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PiecewiseLinearJson {
    pub breakpoints: Vec<String>,
    pub values: Vec<String>,
}

impl From<&PiecewiseLinear1D> for PiecewiseLinearJson {
    fn from(g: &PiecewiseLinear1D) -> Self {
        PiecewiseLinearJson {
            breakpoints: format_vector(g.breakpoints()),
            values: format_vector(g.values()),
        }
    }
}

impl PiecewiseLinearJson {
    pub fn to_function(&self) -> Result<PiecewiseLinear1D> {
        PiecewiseLinear1D::new(parse_vector(&self.breakpoints)?, parse_vector(&self.values)?)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpectrumJson {
    pub reps: Vec<String>,
    pub period: String,
}

impl From<&SpectrumCandidate> for SpectrumJson {
    fn from(s: &SpectrumCandidate) -> Self {
        SpectrumJson {
            reps: format_vector(s.reps()),
            period: format_rational(s.period()),
        }
    }
}

impl SpectrumJson {
    pub fn to_spectrum(&self) -> Result<SpectrumCandidate> {
        SpectrumCandidate::new(parse_vector(&self.reps)?, parse_rational(&self.period)?)
    }
}

/// Parses `"[a,b]"`, `"[a,b]x[c,d]"`, ... into a box. `×` is accepted for `x`.
pub fn parse_window(s: &str) -> Result<Aabb> {
    let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let s = s.replace('×', "x");
    let mut intervals = Vec::new();
    for part in s.split(']') {
        let part = part.trim_start_matches('x');
        if part.is_empty() {
            continue;
        }
        let inner = part
            .strip_prefix('[')
            .ok_or_else(|| Error::Malformed(format!("window factor `{part}` must look like [a,b]")))?;
        let (lo, hi) = inner
            .split_once(',')
            .ok_or_else(|| Error::Malformed(format!("window factor `[{inner}]` needs two endpoints")))?;
        intervals.push((parse_rational(lo)?, parse_rational(hi)?));
    }
    if intervals.is_empty() {
        return Err(Error::Malformed("empty window".into()));
    }
    Aabb::from_intervals(intervals)
}

pub fn format_window(b: &Aabb) -> String {
    aabb_intervals(b)
        .iter()
        .map(|(lo, hi)| format!("[{lo},{hi}]"))
        .collect::<Vec<_>>()
        .join("x")
}
