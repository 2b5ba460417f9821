//! Rational lattices and translation systems (finite sets or periodic sets
//! `reps + L`).

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::aabb::Aabb;
use crate::error::{Error, Result};
use crate::polybox::PolyBox;
use crate::rational::{int, Rational, Vector};

/// Rank-`dim` lattice `{ Σ k_i g_i : k ∈ ℤ^dim }`; generators are the rows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lattice {
    generators: Vec<Vector>,
    inverse: Vec<Vector>,
    det: Rational,
}

impl Lattice {
    pub fn new(generators: Vec<Vector>) -> Result<Self> {
        let dim = generators.len();
        if dim == 0 {
            return Err(Error::ZeroDimension);
        }
        if let Some(g) = generators.iter().find(|g| g.len() != dim) {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: g.len(),
            });
        }
        let (det, inverse) = invert(&generators).ok_or(Error::SingularLattice)?;
        Ok(Lattice {
            generators,
            inverse,
            det,
        })
    }

    /// `ℤ^dim`.
    pub fn integer(dim: usize) -> Self {
        Self::diagonal(&vec![int(1); dim]).expect("identity is nonsingular")
    }

    pub fn diagonal(diag: &[Rational]) -> Result<Self> {
        let n = diag.len();
        Self::new(
            (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| if i == j { diag[i].clone() } else { Rational::zero() })
                        .collect()
                })
                .collect(),
        )
    }

    pub fn dim(&self) -> usize {
        self.generators.len()
    }

    pub fn generators(&self) -> &[Vector] {
        &self.generators
    }

    pub fn determinant(&self) -> &Rational {
        &self.det
    }

    /// `|det G|`, the volume of a fundamental domain.
    pub fn covolume(&self) -> Rational {
        self.det.abs()
    }

    /// Coordinates `k` with `x = Σ k_i g_i`.
    pub fn coefficients(&self, x: &[Rational]) -> Vector {
        let n = self.dim();
        (0..n)
            .map(|j| (0..n).map(|i| &x[i] * &self.inverse[i][j]).sum())
            .collect()
    }

    pub fn contains(&self, x: &[Rational]) -> bool {
        self.coefficients(x).iter().all(|c| c.is_integer())
    }

    pub fn point(&self, coeffs: &[i64]) -> Vector {
        let n = self.dim();
        let mut p = vec![Rational::zero(); n];
        for (k, g) in coeffs.iter().zip(&self.generators) {
            if *k == 0 {
                continue;
            }
            let k = int(*k);
            for (pj, gj) in p.iter_mut().zip(g) {
                *pj += &k * gj;
            }
        }
        p
    }

    /// Bounding box of the fundamental parallelepiped `{ Σ s_i g_i : s ∈ [0,1]^dim }`.
    pub fn fundamental_window(&self) -> Aabb {
        let n = self.dim();
        let mut lo = vec![Rational::zero(); n];
        let mut hi = vec![Rational::zero(); n];
        for g in &self.generators {
            for j in 0..n {
                if g[j].is_negative() {
                    lo[j] += &g[j];
                } else {
                    hi[j] += &g[j];
                }
            }
        }
        Aabb::new(lo, hi).expect("nonsingular lattice spans every axis")
    }

    /// Integer coefficient ranges covering every lattice point of `offset + L`
    /// that lies in `region` (closed).
    pub fn coefficient_hull(&self, region: &Aabb, offset: &[Rational]) -> Vec<(i64, i64)> {
        let n = self.dim();
        let mut lo: Vec<Option<Rational>> = vec![None; n];
        let mut hi: Vec<Option<Rational>> = vec![None; n];
        for mask in 0..(1usize << n) {
            let corner: Vector = (0..n)
                .map(|k| {
                    let c = if mask >> k & 1 == 1 {
                        &region.hi()[k]
                    } else {
                        &region.lo()[k]
                    };
                    c - &offset[k]
                })
                .collect();
            for (j, c) in self.coefficients(&corner).into_iter().enumerate() {
                if lo[j].as_ref().is_none_or(|l| &c < l) {
                    lo[j] = Some(c.clone());
                }
                if hi[j].as_ref().is_none_or(|h| &c > h) {
                    hi[j] = Some(c);
                }
            }
        }
        lo.into_iter()
            .zip(hi)
            .map(|(l, h)| (to_i64(&l.unwrap().floor()), to_i64(&h.unwrap().ceil())))
            .collect()
    }

    /// Appends unit generators on `extra` new axes and pads old generators with zeros.
    pub fn lift(&self, extra: usize) -> Lattice {
        let n = self.dim() + extra;
        let mut gens: Vec<Vector> = self
            .generators
            .iter()
            .map(|g| {
                let mut g = g.clone();
                g.resize(n, Rational::zero());
                g
            })
            .collect();
        for k in self.dim()..n {
            let mut e = vec![Rational::zero(); n];
            e[k] = Rational::one();
            gens.push(e);
        }
        Lattice::new(gens).expect("block-triangular extension stays nonsingular")
    }
}

fn to_i64(r: &Rational) -> i64 {
    r.to_integer()
        .to_i64()
        .expect("lattice coefficient range exceeds i64")
}

/// Determinant and inverse by Gauss-Jordan elimination over ℚ.
fn invert(m: &[Vector]) -> Option<(Rational, Vec<Vector>)> {
    let n = m.len();
    let mut a: Vec<Vector> = m.to_vec();
    let mut inv: Vec<Vector> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { Rational::one() } else { Rational::zero() })
                .collect()
        })
        .collect();
    let mut det = Rational::one();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
        if pivot != col {
            a.swap(pivot, col);
            inv.swap(pivot, col);
            det = -det;
        }
        let p = a[col][col].clone();
        det *= &p;
        for j in 0..n {
            a[col][j] /= &p;
            inv[col][j] /= &p;
        }
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].clone();
            for j in 0..n {
                let x = &f * &a[col][j];
                a[r][j] -= x;
                let y = &f * &inv[col][j];
                inv[r][j] -= y;
            }
        }
    }
    Some((det, inv))
}

pub fn covolume(lattice: &Lattice) -> Rational {
    lattice.covolume()
}

/// A translation set: finitely many representatives, optionally made periodic
/// by a full-rank lattice.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TranslationSystem {
    dim: usize,
    reps: Vec<Vector>,
    lattice: Option<Lattice>,
}

impl TranslationSystem {
    /// Representatives are deduplicated, and with a lattice, reduced so that
    /// no two differ by a lattice vector (the first one wins).
    pub fn new(dim: usize, reps: Vec<Vector>, lattice: Option<Lattice>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::ZeroDimension);
        }
        if let Some(r) = reps.iter().find(|r| r.len() != dim) {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: r.len(),
            });
        }
        if let Some(l) = &lattice {
            if l.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: l.dim(),
                });
            }
        }
        let mut kept: Vec<Vector> = Vec::with_capacity(reps.len());
        for r in reps {
            let dup = kept.iter().any(|k| match &lattice {
                Some(l) => l.contains(&crate::rational::sub_vectors(&r, k)),
                None => *k == r,
            });
            if !dup {
                kept.push(r);
            }
        }
        Ok(TranslationSystem {
            dim,
            reps: kept,
            lattice,
        })
    }

    pub fn finite(dim: usize, points: Vec<Vector>) -> Result<Self> {
        Self::new(dim, points, None)
    }

    pub fn lattice_only(lattice: Lattice) -> Self {
        let dim = lattice.dim();
        TranslationSystem {
            dim,
            reps: vec![vec![Rational::zero(); dim]],
            lattice: Some(lattice),
        }
    }

    /// `reps + period·ℤ` in one dimension.
    pub fn periodic_1d(reps: &[Rational], period: Rational) -> Result<Self> {
        let l = Lattice::diagonal(&[period])?;
        Self::new(1, reps.iter().map(|r| vec![r.clone()]).collect(), Some(l))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn reps(&self) -> &[Vector] {
        &self.reps
    }

    pub fn lattice(&self) -> Option<&Lattice> {
        self.lattice.as_ref()
    }

    /// Extends by `extra` axes: reps padded with zeros, lattice extended by ℤ
    /// on each new axis. A finite system stays finite.
    pub fn lift(&self, extra: usize) -> TranslationSystem {
        let n = self.dim + extra;
        TranslationSystem {
            dim: n,
            reps: self
                .reps
                .iter()
                .map(|r| {
                    let mut r = r.clone();
                    r.resize(n, Rational::zero());
                    r
                })
                .collect(),
            lattice: self.lattice.as_ref().map(|l| l.lift(extra)),
        }
    }

    /// Every represented point in the closed box `region`, with the integer
    /// coefficient ranges that were scanned (one entry per representative).
    pub fn points_in(&self, region: &Aabb) -> Result<(Vec<Vector>, Vec<CoefficientBounds>)> {
        if region.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: region.dim(),
            });
        }
        let Some(lattice) = &self.lattice else {
            let pts = self
                .reps
                .iter()
                .filter(|r| region.contains_point(r))
                .cloned()
                .collect();
            return Ok((pts, Vec::new()));
        };
        let mut out = Vec::new();
        let mut hulls = Vec::with_capacity(self.reps.len());
        for r in &self.reps {
            let hull = lattice.coefficient_hull(region, r);
            for k in IntegerBox::new(&hull) {
                let p = crate::rational::add_vectors(r, &lattice.point(&k));
                if region.contains_point(&p) {
                    out.push(p);
                }
            }
            hulls.push(hull);
        }
        Ok((out, hulls))
    }
}

/// Inclusive integer range per lattice coordinate.
pub type CoefficientBounds = Vec<(i64, i64)>;

/// Translations relevant to a window, plus the scanned coefficient ranges.
#[derive(Debug, Clone, PartialEq)]
pub struct Enumeration {
    pub translations: Vec<Vector>,
    /// Per representative, the integer hull scanned before exact filtering.
    pub coefficient_bounds: Vec<CoefficientBounds>,
}

/// All `t` in the system with `|(E + t) ∩ W| > 0`.
pub fn enumerate_relevant(system: &TranslationSystem, set: &PolyBox, window: &Aabb) -> Result<Enumeration> {
    if set.dim() != system.dim() {
        return Err(Error::DimensionMismatch {
            expected: system.dim(),
            found: set.dim(),
        });
    }
    if window.dim() != system.dim() {
        return Err(Error::DimensionMismatch {
            expected: system.dim(),
            found: window.dim(),
        });
    }
    let bbox = set.bounding_box()?;
    // t must satisfy W.lo - E.hi < t < W.hi - E.lo on each axis.
    let minkowski = Aabb::new(
        window.lo().iter().zip(bbox.hi()).map(|(w, e)| w - e).collect(),
        window.hi().iter().zip(bbox.lo()).map(|(w, e)| w - e).collect(),
    )?;
    let (candidates, coefficient_bounds) = system.points_in(&minkowski)?;
    let translations = candidates
        .into_iter()
        .filter(|t| set.boxes().iter().any(|b| b.translate(t).overlaps(window)))
        .collect();
    Ok(Enumeration {
        translations,
        coefficient_bounds,
    })
}

/// Result of [`density`].
#[derive(Debug, Clone, PartialEq)]
pub struct Density {
    pub count: usize,
    /// `count / (2R)^dim`.
    pub windowed: Rational,
    /// `|reps| / covolume` for periodic systems, 0 for finite ones.
    pub asymptotic: Rational,
}

pub fn density(system: &TranslationSystem, radius: &Rational) -> Result<Density> {
    if !radius.is_positive() {
        return Err(Error::OutOfRange("radius must be positive".into()));
    }
    let n = system.dim();
    let region = Aabb::new(vec![-radius.clone(); n], vec![radius.clone(); n])?;
    let (pts, _) = system.points_in(&region)?;
    let volume = num_traits::pow(int(2) * radius, n);
    let asymptotic = match system.lattice() {
        Some(l) => Rational::from_integer(BigInt::from(system.reps().len())) / l.covolume(),
        None => Rational::zero(),
    };
    Ok(Density {
        count: pts.len(),
        windowed: Rational::from_integer(BigInt::from(pts.len())) / volume,
        asymptotic,
    })
}

/// Iterates all integer vectors in a product of closed ranges.
pub(crate) struct IntegerBox {
    ranges: Vec<(i64, i64)>,
    next: Option<Vec<i64>>,
}

impl IntegerBox {
    pub(crate) fn new(ranges: &[(i64, i64)]) -> Self {
        let next = if ranges.iter().all(|(l, h)| l <= h) {
            Some(ranges.iter().map(|(l, _)| *l).collect())
        } else {
            None
        };
        IntegerBox {
            ranges: ranges.to_vec(),
            next,
        }
    }
}

impl Iterator for IntegerBox {
    type Item = Vec<i64>;

    fn next(&mut self) -> Option<Vec<i64>> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        for k in (0..succ.len()).rev() {
            if succ[k] < self.ranges[k].1 {
                succ[k] += 1;
                self.next = Some(succ);
                break;
            }
            succ[k] = self.ranges[k].0;
        }
        Some(current)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, vector};

    #[test]
    fn covolume_examples() {
        assert_eq!(Lattice::integer(2).covolume(), int(1));
        assert_eq!(Lattice::diagonal(&[int(2), int(2)]).unwrap().covolume(), int(4));
        let g = Lattice::new(vec![
            vector(&[(1, 1), (0, 1), (1, 4)]),
            vector(&[(0, 1), (1, 1), (1, 4)]),
            vector(&[(0, 1), (0, 1), (1, 1)]),
        ])
        .unwrap();
        assert_eq!(g.covolume(), int(1));
    }

    #[test]
    fn singular_lattice_rejected() {
        let err = Lattice::new(vec![vector(&[(1, 1), (2, 1)]), vector(&[(2, 1), (4, 1)])]);
        assert_eq!(err, Err(Error::SingularLattice));
    }

    #[test]
    fn coefficients_invert_points() {
        let l = Lattice::new(vec![vector(&[(1, 1), (1, 3)]), vector(&[(1, 2), (1, 1)])]).unwrap();
        let p = l.point(&[3, -2]);
        assert_eq!(l.coefficients(&p), vec![int(3), int(-2)]);
        assert!(l.contains(&p));
        assert!(!l.contains(&vector(&[(1, 2), (0, 1)])));
    }

    #[test]
    fn reps_reduced_mod_lattice() {
        let s = TranslationSystem::periodic_1d(&[int(0), rat(1, 2), int(2), rat(5, 2)], int(2)).unwrap();
        assert_eq!(s.reps().len(), 2);
    }

    #[test]
    fn integer_box_iterates_product() {
        let all: Vec<_> = IntegerBox::new(&[(0, 1), (-1, 1)]).collect();
        assert_eq!(all.len(), 6);
        assert_eq!(IntegerBox::new(&[(1, 0)]).count(), 0);
    }

    #[test]
    fn density_examples() {
        let z = TranslationSystem::lattice_only(Lattice::integer(1));
        assert_eq!(density(&z, &int(10)).unwrap().asymptotic, int(1));
        let two_z = TranslationSystem::lattice_only(Lattice::diagonal(&[int(2)]).unwrap());
        let d = density(&two_z, &int(10)).unwrap();
        assert_eq!(d.asymptotic, rat(1, 2));
        // -10, -8, ..., 10
        assert_eq!(d.count, 11);
        let s = TranslationSystem::periodic_1d(&[int(0), rat(1, 2)], int(2)).unwrap();
        assert_eq!(density(&s, &int(100)).unwrap().asymptotic, int(1));
    }
}
