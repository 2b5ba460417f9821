//! Exact autocorrelation `g(x) = |E ∩ (E + x)|` of a 1D polybox and its zero set.

use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::aabb::Aabb;
use crate::error::{Error, Result};
use crate::polybox::PolyBox;
use crate::rational::{int, midpoint, rat, Rational};

/// Continuous, compactly supported, affine between consecutive breakpoints,
/// and zero outside `[breakpoints[0], breakpoints[last]]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PiecewiseLinear1D {
    breakpoints: Vec<Rational>,
    values: Vec<Rational>,
}

impl PiecewiseLinear1D {
    pub fn new(breakpoints: Vec<Rational>, values: Vec<Rational>) -> Result<Self> {
        if breakpoints.len() != values.len() {
            return Err(Error::Malformed("breakpoint and value counts differ".into()));
        }
        if breakpoints.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Malformed("breakpoints must be strictly increasing".into()));
        }
        if let (Some(first), Some(last)) = (values.first(), values.last()) {
            if !first.is_zero() || !last.is_zero() {
                return Err(Error::Malformed("function must vanish at its outer breakpoints".into()));
            }
        }
        Ok(PiecewiseLinear1D { breakpoints, values })
    }

    pub fn breakpoints(&self) -> &[Rational] {
        &self.breakpoints
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let b = &self.breakpoints;
        if b.is_empty() || x <= &b[0] || x >= &b[b.len() - 1] {
            return Rational::zero();
        }
        let i = b.partition_point(|p| p <= x);
        // b[i-1] <= x < b[i]
        let (x0, x1) = (&b[i - 1], &b[i]);
        let (y0, y1) = (&self.values[i - 1], &self.values[i]);
        y0 + (y1 - y0) * (x - x0) / (x1 - x0)
    }

    /// Exact integral by the trapezoid rule, which is exact for affine pieces.
    pub fn integral(&self) -> Rational {
        self.breakpoints
            .windows(2)
            .zip(self.values.windows(2))
            .map(|(x, y)| (&x[1] - &x[0]) * (&y[0] + &y[1]) / int(2))
            .sum()
    }

    /// Exact zero locus inside `range`, as maximal components.
    pub fn zero_set(&self, range: &Range1) -> Vec<ZeroComponent> {
        let mut raw: Vec<(Option<Rational>, Option<Rational>)> = Vec::new();
        let b = &self.breakpoints;
        let v = &self.values;
        if b.is_empty() {
            raw.push((None, None));
        } else {
            raw.push((None, Some(b[0].clone())));
            for i in 0..b.len() - 1 {
                let (y0, y1) = (&v[i], &v[i + 1]);
                if y0.is_zero() && y1.is_zero() {
                    raw.push((Some(b[i].clone()), Some(b[i + 1].clone())));
                } else if y0.is_zero() {
                    raw.push((Some(b[i].clone()), Some(b[i].clone())));
                } else if y1.is_zero() {
                    raw.push((Some(b[i + 1].clone()), Some(b[i + 1].clone())));
                } else if y0.is_positive() != y1.is_positive() {
                    let root = &b[i] + (&b[i + 1] - &b[i]) * y0 / (y0 - y1);
                    raw.push((Some(root.clone()), Some(root)));
                }
            }
            raw.push((Some(b[b.len() - 1].clone()), None));
        }

        let mut merged: Vec<(Option<Rational>, Option<Rational>)> = Vec::new();
        for (lo, hi) in raw {
            if let Some(last) = merged.last_mut() {
                let touches = match (&last.1, &lo) {
                    (None, _) => true,
                    (Some(h), Some(l)) => l <= h,
                    (Some(_), None) => true,
                };
                if touches {
                    last.1 = match (&last.1, &hi) {
                        (Some(a), Some(b)) => Some(a.max(b).clone()),
                        _ => None,
                    };
                    continue;
                }
            }
            merged.push((lo, hi));
        }

        merged
            .into_iter()
            .filter_map(|(lo, hi)| range.clip(lo.as_ref(), hi.as_ref()))
            .collect()
    }
}

/// An interval of the line with independently open or closed ends.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Range1 {
    pub lo: Rational,
    pub hi: Rational,
    pub lo_closed: bool,
    pub hi_closed: bool,
}

impl Range1 {
    pub fn closed(lo: Rational, hi: Rational) -> Self {
        Range1 { lo, hi, lo_closed: true, hi_closed: true }
    }

    /// `[lo, hi)`.
    pub fn half_open(lo: Rational, hi: Rational) -> Self {
        Range1 { lo, hi, lo_closed: true, hi_closed: false }
    }

    pub fn open(lo: Rational, hi: Rational) -> Self {
        Range1 { lo, hi, lo_closed: false, hi_closed: false }
    }

    /// Intersects a closed (possibly unbounded) interval with this range.
    fn clip(&self, lo: Option<&Rational>, hi: Option<&Rational>) -> Option<ZeroComponent> {
        let (lo, lo_closed) = match lo {
            Some(l) if *l > self.lo => (l.clone(), true),
            Some(l) if *l == self.lo => (l.clone(), self.lo_closed),
            _ => (self.lo.clone(), self.lo_closed),
        };
        let (hi, hi_closed) = match hi {
            Some(h) if *h < self.hi => (h.clone(), true),
            Some(h) if *h == self.hi => (h.clone(), self.hi_closed),
            _ => (self.hi.clone(), self.hi_closed),
        };
        if lo > hi || (lo == hi && !(lo_closed && hi_closed)) {
            return None;
        }
        Some(ZeroComponent { lo, hi, lo_closed, hi_closed })
    }
}

impl From<&Aabb> for Range1 {
    fn from(b: &Aabb) -> Self {
        let (lo, hi) = b.interval(0);
        Range1::closed(lo.clone(), hi.clone())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZeroComponent {
    pub lo: Rational,
    pub hi: Rational,
    pub lo_closed: bool,
    pub hi_closed: bool,
}

impl ZeroComponent {
    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }
}

/// `|A ∩ (A + x)|` for sorted disjoint intervals, by a merge sweep.
fn overlap_measure(intervals: &[(Rational, Rational)], x: &Rational) -> Rational {
    let mut total = Rational::zero();
    let (mut i, mut j) = (0, 0);
    while i < intervals.len() && j < intervals.len() {
        let (a0, a1) = &intervals[i];
        let b0 = &intervals[j].0 + x;
        let b1 = &intervals[j].1 + x;
        let lo = a0.max(&b0);
        let hi = a1.min(&b1);
        if lo < hi {
            total += hi - lo;
        }
        if *a1 < b1 {
            i += 1;
        } else {
            j += 1;
        }
    }
    total
}

/// `g(x) = |E ∩ (E + x)|` as an exact piecewise-linear function.
///
/// Kinks can only occur where an endpoint of `E + x` crosses an endpoint of
/// `E`, so `g` is sampled at every pairwise endpoint difference. The affine
/// interpolation is then checked at each gap midpoint against an independent
/// polybox intersection; a mismatch is returned as an error.
pub fn autocorrelation(set: &PolyBox) -> Result<PiecewiseLinear1D> {
    let intervals = set.intervals()?;
    if intervals.is_empty() {
        return Err(Error::EmptySet);
    }
    let endpoints: Vec<&Rational> = intervals.iter().flat_map(|(a, b)| [a, b]).collect();
    let mut candidates: Vec<Rational> = endpoints
        .iter()
        .flat_map(|p| endpoints.iter().map(move |q| *p - *q))
        .collect();
    candidates.sort();
    candidates.dedup();

    let values: Vec<Rational> = candidates.iter().map(|x| overlap_measure(&intervals, x)).collect();

    // Drop breakpoints where the function does not actually bend.
    let mut bps: Vec<Rational> = Vec::with_capacity(candidates.len());
    let mut vals: Vec<Rational> = Vec::with_capacity(values.len());
    for (x, y) in candidates.into_iter().zip(values) {
        while bps.len() >= 2 {
            let n = bps.len();
            let s1 = (&vals[n - 1] - &vals[n - 2]) / (&bps[n - 1] - &bps[n - 2]);
            let s2 = (&y - &vals[n - 1]) / (&x - &bps[n - 1]);
            if s1 == s2 {
                bps.pop();
                vals.pop();
            } else {
                break;
            }
        }
        bps.push(x);
        vals.push(y);
    }
    let g = PiecewiseLinear1D::new(bps, vals)?;
    validate_midpoints(set, &g)?;
    Ok(g)
}

/// Compares the interpolant with `|E ∩ (E + m)|` at every gap midpoint `m`.
pub fn validate_midpoints(set: &PolyBox, g: &PiecewiseLinear1D) -> Result<()> {
    for w in g.breakpoints().windows(2) {
        let m = midpoint(&w[0], &w[1]);
        let direct = set.intersection_measure(&set.translate(std::slice::from_ref(&m))?)?;
        let interp = g.eval(&m);
        if direct != interp {
            return Err(Error::Malformed(format!(
                "autocorrelation self-check failed at {m}: interpolant {interp}, direct {direct}"
            )));
        }
    }
    Ok(())
}

pub fn zero_set(g: &PiecewiseLinear1D, range: &Range1) -> Vec<ZeroComponent> {
    g.zero_set(range)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum LemmaStatus {
    /// Hypotheses hold and the autocorrelation has no zero in `[0, 1)`.
    Holds,
    /// Hypotheses hold but a zero was found.
    Fails,
    /// Measure is not 1 or the set is not inside an interval shorter than 3/2.
    HypothesisViolation,
}

#[derive(Debug, Clone, PartialEq)]
pub struct OverlapLemmaReport {
    pub measure: Rational,
    pub hull: (Rational, Rational),
    /// `3/2 - (hull length)`; the hypothesis needs this positive.
    pub epsilon: Rational,
    pub measure_ok: bool,
    pub length_ok: bool,
    /// Zero set of the autocorrelation within `[0, 1)`.
    pub zeros: Vec<ZeroComponent>,
    pub status: LemmaStatus,
}

impl OverlapLemmaReport {
    pub fn hypotheses_hold(&self) -> bool {
        self.measure_ok && self.length_ok
    }

    pub fn overlaps_everywhere(&self) -> bool {
        self.zeros.is_empty()
    }
}

/// Checks `|E ∩ (E + x)| > 0` for all `0 ≤ x < 1`, reporting the measure-1 and
/// hull-length-below-3/2 hypotheses separately from the outcome.
pub fn check_overlap_lemma(set: &PolyBox) -> Result<OverlapLemmaReport> {
    let g = autocorrelation(set)?;
    let bb = set.bounding_box()?;
    let (lo, hi) = bb.interval(0);
    let measure = set.measure();
    let epsilon = rat(3, 2) - (hi - lo);
    let measure_ok = measure == int(1);
    let length_ok = epsilon.is_positive();
    let zeros = g.zero_set(&Range1::half_open(int(0), int(1)));
    let status = if !(measure_ok && length_ok) {
        LemmaStatus::HypothesisViolation
    } else if zeros.is_empty() {
        LemmaStatus::Holds
    } else {
        LemmaStatus::Fails
    };
    Ok(OverlapLemmaReport {
        measure,
        hull: (lo.clone(), hi.clone()),
        epsilon,
        measure_ok,
        length_ok,
        zeros,
        status,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set_1d(ivs: &[(Rational, Rational)]) -> PolyBox {
        PolyBox::from_intervals(ivs).unwrap()
    }

    fn sharp() -> PolyBox {
        set_1d(&[(int(0), rat(1, 2)), (int(1), rat(3, 2))])
    }

    #[test]
    fn tent_of_unit_interval() {
        let g = autocorrelation(&set_1d(&[(int(0), int(1))])).unwrap();
        assert_eq!(g.eval(&int(0)), int(1));
        assert_eq!(g.eval(&int(1)), int(0));
        assert_eq!(g.eval(&int(-1)), int(0));
        assert_eq!(g.eval(&rat(1, 2)), rat(1, 2));
        assert_eq!(g.breakpoints(), &[int(-1), int(0), int(1)]);
    }

    #[test]
    fn sharp_example_values() {
        let g = autocorrelation(&sharp()).unwrap();
        assert_eq!(g.eval(&rat(1, 2)), int(0));
        assert_eq!(g.eval(&rat(3, 4)), rat(1, 4));
        assert_eq!(g.eval(&int(0)), int(1));
    }

    #[test]
    fn zero_sets() {
        let tent = autocorrelation(&set_1d(&[(int(0), int(1))])).unwrap();
        let z = tent.zero_set(&Range1::closed(int(-2), int(2)));
        assert_eq!(z.len(), 2);
        assert_eq!((z[0].lo.clone(), z[0].hi.clone()), (int(-2), int(-1)));
        assert_eq!((z[1].lo.clone(), z[1].hi.clone()), (int(1), int(2)));
        assert!(tent.zero_set(&Range1::open(int(-1), int(1))).is_empty());

        let g = autocorrelation(&sharp()).unwrap();
        let z = g.zero_set(&Range1::half_open(int(0), int(1)));
        assert_eq!(z.len(), 1);
        assert!(z[0].is_point());
        assert_eq!(z[0].lo, rat(1, 2));
    }

    #[test]
    fn empty_set_rejected() {
        assert_eq!(autocorrelation(&PolyBox::empty(1)), Err(Error::EmptySet));
    }

    #[test]
    fn lemma_on_unit_interval_holds() {
        let r = check_overlap_lemma(&set_1d(&[(int(0), int(1))])).unwrap();
        assert_eq!(r.status, LemmaStatus::Holds);
    }

    #[test]
    fn lemma_on_three_pieces() {
        // measure 1, hull [0, 7/5]
        let e = set_1d(&[(int(0), rat(1, 4)), (rat(1, 2), rat(3, 4)), (rat(9, 10), rat(7, 5))]);
        let r = check_overlap_lemma(&e).unwrap();
        assert!(r.hypotheses_hold());
        assert_eq!(r.epsilon, rat(1, 10));
        assert_eq!(r.status, LemmaStatus::Holds);
    }

    #[test]
    fn lemma_sharpness() {
        let r = check_overlap_lemma(&sharp()).unwrap();
        assert_eq!(r.status, LemmaStatus::HypothesisViolation);
        assert!(r.measure_ok);
        assert!(!r.length_ok);
        assert_eq!(r.zeros.len(), 1);
        assert_eq!(r.zeros[0].lo, rat(1, 2));
    }
}
