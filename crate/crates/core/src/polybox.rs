//! Finite unions of axis-aligned rational boxes.
//!
//! A [`PolyBox`] is kept in canonical form: its boxes are pairwise disjoint up
//! to measure zero, boxes sharing a full face are merged, and the list is
//! sorted lexicographically by corners. All predicates treat sets up to
//! measure zero, so whether boundaries are open or closed never matters.

use num_traits::Zero;

use crate::aabb::Aabb;
use crate::error::{Error, Result};
use crate::rational::{Rational, Vector};

/// What to do with raw boxes that have `lo >= hi` on some axis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DegeneratePolicy {
    #[default]
    Reject,
    Drop,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PolyBox {
    dim: usize,
    boxes: Vec<Aabb>,
}

/// Raw per-axis intervals, not yet validated.
pub type RawBox = Vec<(Rational, Rational)>;

/// Builds a canonical polybox from possibly overlapping raw boxes.
pub fn make_polybox(dim: usize, raw: Vec<RawBox>, policy: DegeneratePolicy) -> Result<PolyBox> {
    if dim == 0 {
        return Err(Error::ZeroDimension);
    }
    let mut boxes = Vec::with_capacity(raw.len());
    for r in raw {
        if r.len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: r.len(),
            });
        }
        match Aabb::from_intervals(r) {
            Ok(b) => boxes.push(b),
            Err(Error::DegenerateInterval { .. }) if policy == DegeneratePolicy::Drop => {}
            Err(e) => return Err(e),
        }
    }
    Ok(PolyBox::from_disjoint_unchecked(dim, canonicalize(dim, boxes)))
}

fn canonicalize(dim: usize, boxes: Vec<Aabb>) -> Vec<Aabb> {
    let mut out: Vec<Aabb> = Vec::with_capacity(boxes.len());
    for b in boxes {
        let mut pieces = vec![b];
        for existing in &out {
            if pieces.is_empty() {
                break;
            }
            pieces = pieces.iter().flat_map(|p| p.subtract(existing)).collect();
        }
        out.extend(pieces);
    }
    if dim == 1 {
        merge_intervals(out)
    } else {
        merge_faces(out)
    }
}

fn merge_intervals(mut boxes: Vec<Aabb>) -> Vec<Aabb> {
    boxes.sort();
    let mut out: Vec<Aabb> = Vec::with_capacity(boxes.len());
    for b in boxes {
        if let Some(last) = out.last_mut() {
            if let Some(m) = last.merge_with(&b) {
                *last = m;
                continue;
            }
        }
        out.push(b);
    }
    out
}

fn merge_faces(mut boxes: Vec<Aabb>) -> Vec<Aabb> {
    loop {
        boxes.sort();
        let mut merged_any = false;
        let mut i = 0;
        while i < boxes.len() {
            let mut j = i + 1;
            while j < boxes.len() {
                if let Some(m) = boxes[i].merge_with(&boxes[j]) {
                    boxes[i] = m;
                    boxes.swap_remove(j);
                    merged_any = true;
                } else {
                    j += 1;
                }
            }
            i += 1;
        }
        if !merged_any {
            boxes.sort();
            return boxes;
        }
    }
}

impl PolyBox {
    pub fn empty(dim: usize) -> Self {
        PolyBox { dim, boxes: Vec::new() }
    }

    /// Canonicalizes arbitrary (possibly overlapping) boxes of one dimension.
    pub fn from_boxes(dim: usize, boxes: Vec<Aabb>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::ZeroDimension);
        }
        if let Some(b) = boxes.iter().find(|b| b.dim() != dim) {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: b.dim(),
            });
        }
        Ok(Self::from_disjoint_unchecked(dim, canonicalize(dim, boxes)))
    }

    pub fn from_box(b: Aabb) -> Self {
        PolyBox {
            dim: b.dim(),
            boxes: vec![b],
        }
    }

    /// 1D convenience constructor from `(lo, hi)` pairs.
    pub fn from_intervals(intervals: &[(Rational, Rational)]) -> Result<Self> {
        make_polybox(
            1,
            intervals.iter().map(|iv| vec![iv.clone()]).collect(),
            DegeneratePolicy::Reject,
        )
    }

    fn from_disjoint_unchecked(dim: usize, boxes: Vec<Aabb>) -> Self {
        PolyBox { dim, boxes }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn boxes(&self) -> &[Aabb] {
        &self.boxes
    }

    pub fn is_empty(&self) -> bool {
        self.boxes.is_empty()
    }

    /// Re-runs canonicalization. Idempotent on canonical input.
    pub fn canonical(&self) -> PolyBox {
        Self::from_disjoint_unchecked(self.dim, canonicalize(self.dim, self.boxes.clone()))
    }

    pub fn measure(&self) -> Rational {
        self.boxes.iter().map(Aabb::measure).sum()
    }

    pub fn translate(&self, v: &[Rational]) -> Result<PolyBox> {
        self.check_dim(v.len())?;
        let mut boxes: Vec<Aabb> = self.boxes.iter().map(|b| b.translate(v)).collect();
        boxes.sort();
        Ok(Self::from_disjoint_unchecked(self.dim, boxes))
    }

    pub fn intersect(&self, other: &PolyBox) -> Result<PolyBox> {
        self.check_dim(other.dim)?;
        let boxes = self
            .boxes
            .iter()
            .flat_map(|a| other.boxes.iter().filter_map(move |b| a.intersection(b)))
            .collect();
        Ok(Self::from_disjoint_unchecked(self.dim, canonicalize(self.dim, boxes)))
    }

    pub fn difference(&self, other: &PolyBox) -> Result<PolyBox> {
        self.check_dim(other.dim)?;
        Ok(Self::from_disjoint_unchecked(
            self.dim,
            canonicalize(self.dim, raw_difference(&self.boxes, &other.boxes)),
        ))
    }

    pub fn union(&self, other: &PolyBox) -> Result<PolyBox> {
        self.check_dim(other.dim)?;
        let mut boxes = self.boxes.clone();
        boxes.extend(raw_difference(&other.boxes, &self.boxes));
        Ok(Self::from_disjoint_unchecked(self.dim, canonicalize(self.dim, boxes)))
    }

    pub fn symm_diff(&self, other: &PolyBox) -> Result<PolyBox> {
        self.check_dim(other.dim)?;
        let mut boxes = raw_difference(&self.boxes, &other.boxes);
        boxes.extend(raw_difference(&other.boxes, &self.boxes));
        Ok(Self::from_disjoint_unchecked(self.dim, canonicalize(self.dim, boxes)))
    }

    /// Measure of `self ∩ other` without building the intersection.
    pub fn intersection_measure(&self, other: &PolyBox) -> Result<Rational> {
        self.check_dim(other.dim)?;
        Ok(self
            .boxes
            .iter()
            .flat_map(|a| other.boxes.iter().filter_map(move |b| a.intersection(b)))
            .map(|b| b.measure())
            .sum())
    }

    pub fn equal_ae(&self, other: &PolyBox) -> Result<bool> {
        Ok(self.symm_diff(other)?.measure().is_zero())
    }

    /// True iff `other ⊆ self` up to measure zero.
    pub fn contains_ae(&self, other: &PolyBox) -> Result<bool> {
        Ok(other.difference(self)?.measure().is_zero())
    }

    pub fn bounding_box(&self) -> Result<Aabb> {
        let mut it = self.boxes.iter();
        let first = it.next().ok_or(Error::EmptySet)?.clone();
        Ok(it.fold(first, |acc, b| acc.hull(b)))
    }

    /// Whether some box contains `x` (closed boxes).
    pub fn contains_point(&self, x: &[Rational]) -> bool {
        self.boxes.iter().any(|b| b.contains_point(x))
    }

    /// `self × other`.
    pub fn product(&self, other: &PolyBox) -> PolyBox {
        let mut boxes: Vec<Aabb> = self
            .boxes
            .iter()
            .flat_map(|a| other.boxes.iter().map(move |b| a.product(b)))
            .collect();
        boxes.sort();
        Self::from_disjoint_unchecked(self.dim + other.dim, boxes)
    }

    /// Cross-section `{x : x_axis = level}` as a set of dimension `dim - 1`,
    /// using half-open intervals `[lo, hi)` on the slicing axis.
    pub fn slice(&self, axis: usize, level: &Rational) -> Result<PolyBox> {
        if self.dim < 2 {
            return Err(Error::Malformed("cannot slice a 1D set".into()));
        }
        if axis >= self.dim {
            return Err(Error::OutOfRange(format!("axis {axis} for dimension {}", self.dim)));
        }
        let boxes = self
            .boxes
            .iter()
            .filter(|b| {
                let (lo, hi) = b.interval(axis);
                lo <= level && level < hi
            })
            .map(|b| b.project_out(axis))
            .collect();
        Ok(Self::from_disjoint_unchecked(self.dim - 1, canonicalize(self.dim - 1, boxes)))
    }

    /// Maximal intervals of a 1D set, sorted.
    pub fn intervals(&self) -> Result<Vec<(Rational, Rational)>> {
        self.check_dim(1)?;
        Ok(self
            .boxes
            .iter()
            .map(|b| {
                let (l, h) = b.interval(0);
                (l.clone(), h.clone())
            })
            .collect())
    }

    /// All box coordinates along one axis, sorted and deduplicated.
    pub fn coordinates(&self, axis: usize) -> Vec<Rational> {
        let mut cs: Vec<Rational> = self
            .boxes
            .iter()
            .flat_map(|b| {
                let (l, h) = b.interval(axis);
                [l.clone(), h.clone()]
            })
            .collect();
        cs.sort();
        cs.dedup();
        cs
    }

    pub fn lift(&self, extra_axes: usize) -> PolyBox {
        if extra_axes == 0 {
            return self.clone();
        }
        self.product(&PolyBox::from_box(Aabb::unit(extra_axes)))
    }

    fn check_dim(&self, found: usize) -> Result<()> {
        if found != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found,
            });
        }
        Ok(())
    }
}

fn raw_difference(a: &[Aabb], b: &[Aabb]) -> Vec<Aabb> {
    a.iter()
        .flat_map(|p| {
            let mut pieces = vec![p.clone()];
            for q in b {
                if pieces.is_empty() {
                    break;
                }
                pieces = pieces.iter().flat_map(|x| x.subtract(q)).collect();
            }
            pieces
        })
        .collect()
}

/// Unit cube as a polybox.
pub fn unit_cube(dim: usize) -> PolyBox {
    PolyBox::from_box(Aabb::unit(dim))
}

/// A vector of zeros.
pub fn origin(dim: usize) -> Vector {
    vec![Rational::zero(); dim]
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    fn iv(a: (i64, i64), b: (i64, i64)) -> (Rational, Rational) {
        (rat(a.0, a.1), rat(b.0, b.1))
    }

    fn set_1d(ivs: &[((i64, i64), (i64, i64))]) -> PolyBox {
        PolyBox::from_intervals(&ivs.iter().map(|&(a, b)| iv(a, b)).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn single_interval() {
        let p = set_1d(&[((0, 1), (1, 1))]);
        assert_eq!(p.boxes().len(), 1);
        assert_eq!(p.measure(), int(1));
    }

    #[test]
    fn overlapping_intervals_merge() {
        let p = set_1d(&[((0, 1), (1, 1)), ((1, 2), (3, 2))]);
        assert_eq!(p.measure(), rat(3, 2));
        assert_eq!(p.intervals().unwrap(), vec![iv((0, 1), (3, 2))]);
    }

    #[test]
    fn overlapping_squares_inclusion_exclusion() {
        // 1 + 1 - |[1/2,1]x[0,1]| = 3/2
        let p = make_polybox(
            2,
            vec![
                vec![iv((0, 1), (1, 1)), iv((0, 1), (1, 1))],
                vec![iv((1, 2), (3, 2)), iv((0, 1), (1, 1))],
            ],
            DegeneratePolicy::Reject,
        )
        .unwrap();
        assert_eq!(p.measure(), rat(3, 2));
    }

    #[test]
    fn degenerate_policy() {
        let raw = vec![vec![iv((0, 1), (1, 1))], vec![iv((2, 1), (2, 1))]];
        assert!(matches!(
            make_polybox(1, raw.clone(), DegeneratePolicy::Reject),
            Err(Error::DegenerateInterval { .. })
        ));
        let p = make_polybox(1, raw, DegeneratePolicy::Drop).unwrap();
        assert_eq!(p.measure(), int(1));
    }

    #[test]
    fn dimension_mismatch_is_error() {
        let raw = vec![vec![iv((0, 1), (1, 1)), iv((0, 1), (1, 1))]];
        assert!(matches!(
            make_polybox(1, raw, DegeneratePolicy::Reject),
            Err(Error::DimensionMismatch { expected: 1, found: 2 })
        ));
        let a = unit_cube(2);
        let b = unit_cube(3);
        assert!(a.intersect(&b).is_err());
        assert!(a.translate(&[int(1)]).is_err());
    }

    #[test]
    fn translation_examples() {
        let p = set_1d(&[((0, 1), (1, 1))]);
        assert_eq!(p.translate(&[int(0)]).unwrap(), p);
        assert_eq!(
            p.translate(&[rat(3, 4)]).unwrap(),
            set_1d(&[((3, 4), (7, 4))])
        );
    }

    #[test]
    fn boolean_examples() {
        let a = set_1d(&[((0, 1), (1, 1))]);
        let b = set_1d(&[((1, 2), (3, 2))]);
        let i = a.intersect(&b).unwrap();
        assert_eq!(i, set_1d(&[((1, 2), (1, 1))]));
        assert_eq!(i.measure(), rat(1, 2));

        let e = set_1d(&[((0, 1), (1, 2)), ((1, 1), (3, 2))]);
        let shifted = e.translate(&[rat(1, 2)]).unwrap();
        assert_eq!(e.intersect(&shifted).unwrap().measure(), int(0));

        assert!(e.symm_diff(&e).unwrap().is_empty());
    }

    #[test]
    fn predicates() {
        let a = set_1d(&[((0, 1), (1, 1))]);
        let split = set_1d(&[((0, 1), (1, 2)), ((1, 2), (1, 1))]);
        assert!(a.equal_ae(&split).unwrap());

        let big = make_polybox(
            2,
            vec![vec![iv((-1, 10), (11, 10)), iv((-1, 10), (11, 10))]],
            DegeneratePolicy::Reject,
        )
        .unwrap();
        assert!(big.contains_ae(&unit_cube(2)).unwrap());
        assert!(!unit_cube(2).contains_ae(&big).unwrap());

        let e = set_1d(&[((0, 1), (1, 2)), ((1, 1), (3, 2))]);
        let bb = e.bounding_box().unwrap();
        assert_eq!(bb.interval(0), (&int(0), &rat(3, 2)));
        assert_eq!(PolyBox::empty(1).bounding_box(), Err(Error::EmptySet));
    }

    #[test]
    fn slicing_and_lift() {
        let cube = unit_cube(3);
        let s = cube.slice(2, &rat(1, 2)).unwrap();
        assert_eq!(s, unit_cube(2));
        assert!(cube.slice(2, &int(1)).unwrap().is_empty());
        let l = cube.lift(1);
        assert_eq!(l.dim(), 4);
        assert_eq!(l.measure(), int(1));
    }
}
