//! Closed axis-aligned boxes with rational corners.

use std::cmp::Ordering;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::{midpoint, Rational, Vector};

/// Product of closed intervals `[lo_k, hi_k]` with `lo_k < hi_k` on every axis.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Aabb {
    lo: Vector,
    hi: Vector,
}

impl Aabb {
    pub fn new(lo: Vector, hi: Vector) -> Result<Self> {
        if lo.is_empty() {
            return Err(Error::ZeroDimension);
        }
        if lo.len() != hi.len() {
            return Err(Error::DimensionMismatch {
                expected: lo.len(),
                found: hi.len(),
            });
        }
        for (axis, (l, h)) in lo.iter().zip(&hi).enumerate() {
            if l >= h {
                return Err(Error::DegenerateInterval {
                    axis,
                    lo: l.to_string(),
                    hi: h.to_string(),
                });
            }
        }
        Ok(Aabb { lo, hi })
    }

    pub fn from_intervals(intervals: impl IntoIterator<Item = (Rational, Rational)>) -> Result<Self> {
        let (lo, hi) = intervals.into_iter().unzip();
        Self::new(lo, hi)
    }

    /// Unit cube `[0,1]^dim`.
    pub fn unit(dim: usize) -> Self {
        Aabb {
            lo: vec![Rational::zero(); dim],
            hi: vec![Rational::one(); dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.lo.len()
    }

    pub fn lo(&self) -> &[Rational] {
        &self.lo
    }

    pub fn hi(&self) -> &[Rational] {
        &self.hi
    }

    pub fn interval(&self, axis: usize) -> (&Rational, &Rational) {
        (&self.lo[axis], &self.hi[axis])
    }

    pub fn side(&self, axis: usize) -> Rational {
        &self.hi[axis] - &self.lo[axis]
    }

    pub fn measure(&self) -> Rational {
        (0..self.dim()).fold(Rational::one(), |acc, k| acc * self.side(k))
    }

    pub fn center(&self) -> Vector {
        self.lo.iter().zip(&self.hi).map(|(l, h)| midpoint(l, h)).collect()
    }

    pub fn translate(&self, v: &[Rational]) -> Aabb {
        debug_assert_eq!(v.len(), self.dim());
        Aabb {
            lo: self.lo.iter().zip(v).map(|(a, b)| a + b).collect(),
            hi: self.hi.iter().zip(v).map(|(a, b)| a + b).collect(),
        }
    }

    /// Intersection with positive measure, if any.
    pub fn intersection(&self, other: &Aabb) -> Option<Aabb> {
        debug_assert_eq!(self.dim(), other.dim());
        let mut lo = Vec::with_capacity(self.dim());
        let mut hi = Vec::with_capacity(self.dim());
        for k in 0..self.dim() {
            let l = (&self.lo[k]).max(&other.lo[k]);
            let h = (&self.hi[k]).min(&other.hi[k]);
            if l >= h {
                return None;
            }
            lo.push(l.clone());
            hi.push(h.clone());
        }
        Some(Aabb { lo, hi })
    }

    pub fn overlaps(&self, other: &Aabb) -> bool {
        (0..self.dim()).all(|k| self.lo[k] < other.hi[k] && other.lo[k] < self.hi[k])
    }

    pub fn contains_box(&self, other: &Aabb) -> bool {
        (0..self.dim()).all(|k| self.lo[k] <= other.lo[k] && other.hi[k] <= self.hi[k])
    }

    /// Closed membership.
    pub fn contains_point(&self, x: &[Rational]) -> bool {
        (0..self.dim()).all(|k| self.lo[k] <= x[k] && x[k] <= self.hi[k])
    }

    /// Membership in the open interior.
    pub fn interior_contains(&self, x: &[Rational]) -> bool {
        (0..self.dim()).all(|k| self.lo[k] < x[k] && x[k] < self.hi[k])
    }

    /// `self \ other` as at most `2 * dim` disjoint boxes, by guillotine cuts
    /// along the faces of `other`.
    pub fn subtract(&self, other: &Aabb) -> Vec<Aabb> {
        let Some(cut) = self.intersection(other) else {
            return vec![self.clone()];
        };
        let mut pieces = Vec::new();
        let mut rest = self.clone();
        for k in 0..self.dim() {
            if rest.lo[k] < cut.lo[k] {
                let mut below = rest.clone();
                below.hi[k] = cut.lo[k].clone();
                pieces.push(below);
                rest.lo[k] = cut.lo[k].clone();
            }
            if cut.hi[k] < rest.hi[k] {
                let mut above = rest.clone();
                above.lo[k] = cut.hi[k].clone();
                pieces.push(above);
                rest.hi[k] = cut.hi[k].clone();
            }
        }
        pieces
    }

    /// If the two boxes share a full face, their union as one box.
    pub fn merge_with(&self, other: &Aabb) -> Option<Aabb> {
        let mut axis = None;
        for k in 0..self.dim() {
            if self.lo[k] == other.lo[k] && self.hi[k] == other.hi[k] {
                continue;
            }
            if axis.is_some() {
                return None;
            }
            axis = Some(k);
        }
        let k = axis?;
        let mut merged = self.clone();
        if self.hi[k] == other.lo[k] {
            merged.hi[k] = other.hi[k].clone();
        } else if other.hi[k] == self.lo[k] {
            merged.lo[k] = other.lo[k].clone();
        } else {
            return None;
        }
        Some(merged)
    }

    /// Cartesian product `self × other`.
    pub fn product(&self, other: &Aabb) -> Aabb {
        Aabb {
            lo: self.lo.iter().chain(&other.lo).cloned().collect(),
            hi: self.hi.iter().chain(&other.hi).cloned().collect(),
        }
    }

    /// Drops one axis.
    pub fn project_out(&self, axis: usize) -> Aabb {
        let keep = |v: &Vector| {
            v.iter()
                .enumerate()
                .filter(|&(k, _)| k != axis)
                .map(|(_, x)| x.clone())
                .collect()
        };
        Aabb {
            lo: keep(&self.lo),
            hi: keep(&self.hi),
        }
    }

    /// Smallest box containing both.
    pub fn hull(&self, other: &Aabb) -> Aabb {
        Aabb {
            lo: self.lo.iter().zip(&other.lo).map(|(a, b)| a.min(b).clone()).collect(),
            hi: self.hi.iter().zip(&other.hi).map(|(a, b)| a.max(b).clone()).collect(),
        }
    }
}

impl PartialOrd for Aabb {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Aabb {
    fn cmp(&self, other: &Self) -> Ordering {
        self.lo.cmp(&other.lo).then_with(|| self.hi.cmp(&other.hi))
    }
}
