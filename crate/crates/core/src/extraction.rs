//! Lattice extraction from a patch of a planar tiling by a near-square, and
//! the strip-complement machinery behind it.

use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::aabb::Aabb;
use crate::error::{Error, Result};
use crate::lattice::{Lattice, TranslationSystem};
use crate::polybox::{unit_cube, PolyBox};
use crate::rational::{add_vectors, int, rat, sub_vectors, Rational, Vector};
use crate::tiling::{is_tiling, Decision};

/// Smallest `ε ≥ 0` with `E ⊂ [-ε, 1+ε]²`, after checking `[0,1]² ⊂ E`.
pub fn near_square_epsilon(set: &PolyBox) -> Result<Rational> {
    if set.dim() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            found: set.dim(),
        });
    }
    if !set.contains_ae(&unit_cube(2))? {
        return Err(Error::Hypothesis("[0,1]² is not contained in E".into()));
    }
    let bb = set.bounding_box()?;
    let mut eps = int(0);
    for axis in 0..2 {
        eps = eps.max(-bb.lo()[axis].clone()).max(&bb.hi()[axis] - int(1));
    }
    Ok(eps)
}

/// `(x₁, x₂) ↦ (±x₁, ±x₂)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Reflection {
    pub flip_x1: bool,
    pub flip_x2: bool,
}

impl Reflection {
    pub const ALL: [Reflection; 4] = [
        Reflection { flip_x1: false, flip_x2: false },
        Reflection { flip_x1: true, flip_x2: false },
        Reflection { flip_x1: false, flip_x2: true },
        Reflection { flip_x1: true, flip_x2: true },
    ];

    pub fn apply(self, x: &[Rational]) -> Vector {
        let f = |c: &Rational, flip: bool| if flip { -c.clone() } else { c.clone() };
        vec![f(&x[0], self.flip_x1), f(&x[1], self.flip_x2)]
    }
}

fn in_range(x: &Rational, lo: &Rational, hi: &Rational) -> bool {
    lo <= x && x <= hi
}

fn corner_u(u: &[Rational], eps: &Rational) -> bool {
    let two = eps * int(2);
    in_range(&u[0], &int(1), &(int(1) + &two)) && u[1].abs() <= two
}

fn corner_v(v: &[Rational], eps: &Rational) -> bool {
    in_range(&v[0], &int(0), &(rat(1, 2) + eps)) && in_range(&v[1], &int(1), &(int(1) + eps * int(2)))
}

fn corner_w(w: &[Rational], u: &[Rational], v: &[Rational], eps: &Rational) -> bool {
    let two = eps * int(2);
    let w1_lo = &v[0] + int(1);
    let w2_lo = &u[1] + int(1);
    in_range(&w[0], &w1_lo, &(&w1_lo + &two)) && in_range(&w[1], &w2_lo, &(&w2_lo + &two))
}

#[derive(Debug, Clone)]
pub struct Extraction {
    pub epsilon: Rational,
    /// Patch point playing the role of the origin.
    pub base: Vector,
    pub reflection: Reflection,
    pub u: Vector,
    pub v: Vector,
    pub w: Vector,
    pub lattice: Lattice,
    pub window: Aabb,
    pub decision: Decision,
}

/// Finds a corner `E, E+u, E+v, E+w` in the patch (after re-centring at a
/// patch point and reflecting), insists on `w = u + v`, and checks that the
/// lattice spanned by `u, v` tiles on a window containing a fundamental domain.
pub fn extract_lattice_2d(set: &PolyBox, patch: &[Vector]) -> Result<Extraction> {
    let eps = near_square_epsilon(set)?;
    if let Some(p) = patch.iter().find(|p| p.len() != 2) {
        return Err(Error::DimensionMismatch {
            expected: 2,
            found: p.len(),
        });
    }
    let zero = vec![int(0), int(0)];
    let mut bases: Vec<&Vector> = patch.iter().filter(|p| **p == zero).collect();
    bases.extend(patch.iter().filter(|p| **p != zero));

    for base in bases {
        for refl in Reflection::ALL {
            let rel: Vec<Vector> = patch
                .iter()
                .map(|p| refl.apply(&sub_vectors(p, base)))
                .collect();
            for u in rel.iter().filter(|u| corner_u(u, &eps)) {
                for v in rel.iter().filter(|v| corner_v(v, &eps)) {
                    let Some(w) = rel.iter().find(|w| corner_w(w, u, v, &eps)) else {
                        continue;
                    };
                    let sum = add_vectors(u, v);
                    // Back to the original frame; reflections are involutions.
                    let (u, v, w) = (refl.apply(u), refl.apply(v), refl.apply(w));
                    if *w != refl.apply(&sum) {
                        return Err(Error::ExtractionCounterexample {
                            w: w.clone(),
                            sum: add_vectors(&u, &v),
                        });
                    }
                    let lattice = Lattice::new(vec![u.clone(), v.clone()])?;
                    let window = lattice.fundamental_window();
                    let decision = is_tiling(set, &TranslationSystem::lattice_only(lattice.clone()), &window)?;
                    return Ok(Extraction {
                        epsilon: eps,
                        base: base.clone(),
                        reflection: refl,
                        u,
                        v,
                        w,
                        lattice,
                        window,
                        decision,
                    });
                }
            }
        }
    }
    Err(Error::NoCorner)
}

/// Half-height of the strips used to test complements; they are unbounded
/// in one direction and truncated here well beyond any near-square.
const STRIP_REACH: i64 = 4;

fn vertical_slab(a: &Rational, b: &Rational, y0: Rational, y1: Rational) -> Result<PolyBox> {
    Ok(PolyBox::from_box(Aabb::new(vec![a.clone(), y0], vec![b.clone(), y1])?))
}

/// `E₁(a,b)`: the part of `E` over `[a,b]` below `x₂ = 0`, capped by the
/// upward half-strip (truncated).
pub fn lower_strip(set: &PolyBox, a: &Rational, b: &Rational) -> Result<PolyBox> {
    let below = vertical_slab(a, b, int(-STRIP_REACH), int(0))?;
    let above = vertical_slab(a, b, int(0), int(STRIP_REACH))?;
    set.intersect(&below)?.union(&above)
}

/// `E₂(a,b)`: the part of `E` over `[a,b]` above `x₂ = 0`, resting on the
/// downward half-strip (truncated).
pub fn upper_strip(set: &PolyBox, a: &Rational, b: &Rational) -> Result<PolyBox> {
    let above = vertical_slab(a, b, int(0), int(STRIP_REACH))?;
    let below = vertical_slab(a, b, int(-STRIP_REACH), int(0))?;
    set.intersect(&above)?.union(&below)
}

/// The shift `v` with `E₁(a₁,b₁) + v` complementing `E₂(a₂,b₂)`, if any.
/// Widths must agree; `v₁ = a₂ - a₁`, and `v₂` is searched among
/// differences of horizontal edge heights.
pub fn complement_shift(set: &PolyBox, lower: (&Rational, &Rational), upper: (&Rational, &Rational)) -> Result<Option<Vector>> {
    let (a1, b1) = lower;
    let (a2, b2) = upper;
    if b1 - a1 != b2 - a2 || b1 <= a1 {
        return Err(Error::Malformed("strip widths must agree and be positive".into()));
    }
    let e1 = lower_strip(set, a1, b1)?;
    let e2 = upper_strip(set, a2, b2)?;
    let v1 = a2 - a1;
    let window = Aabb::new(vec![a2.clone(), int(-1)], vec![b2.clone(), int(3)])?;
    let target = PolyBox::from_box(window.clone());
    let e2w = e2.intersect(&target)?;

    let heights = set.coordinates(1);
    let mut candidates: Vec<Rational> = heights
        .iter()
        .flat_map(|top| heights.iter().map(move |bottom| top - bottom))
        .filter(|d| d.abs() <= int(2))
        .collect();
    candidates.sort();
    candidates.dedup();
    for v2 in candidates {
        let v = vec![v1.clone(), v2];
        let moved = e1.translate(&v)?.intersect(&target)?;
        if !moved.intersection_measure(&e2w)?.is_zero() {
            continue;
        }
        if moved.measure() + e2w.measure() == target.measure() {
            return Ok(Some(v));
        }
    }
    Ok(None)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TripleCheck {
    pub s: [String; 3],
    pub collinear: bool,
    /// `(2s'' - s)/(s - s'') · |v''₂ - v₂|`.
    pub slope_quantity: String,
    pub slope_ok: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CollinearityReport {
    pub epsilon: Rational,
    /// `(s, v)` for every width whose complement exists.
    pub shifts: Vec<(Rational, Vector)>,
    pub triples: Vec<TripleCheck>,
}

impl CollinearityReport {
    pub fn holds(&self) -> bool {
        self.triples.iter().all(|t| t.collinear && t.slope_ok)
    }
}

/// For each width `s`, finds `v(s)` with `E₁(a,a+s) + v(s)` complementing
/// `E₂(b-s,b)`; then checks every triple `s'' < s' < s < 2s''` for
/// collinearity of the three shifts and the slope bound.
pub fn collinearity_check(set: &PolyBox, a: &Rational, b: &Rational, widths: &[Rational]) -> Result<CollinearityReport> {
    use crate::rational::format_rational as f;
    let eps = near_square_epsilon(set)?;
    let mut shifts = Vec::new();
    for s in widths {
        if let Some(v) = complement_shift(set, (a, &(a + s)), (&(b - s), b))? {
            shifts.push((s.clone(), v));
        }
    }
    shifts.sort_by(|x, y| x.0.cmp(&y.0));
    let mut triples = Vec::new();
    for (i, (s2, v2)) in shifts.iter().enumerate() {
        for (j, (s1, v1)) in shifts.iter().enumerate().skip(i + 1) {
            for (s0, v0) in shifts.iter().skip(j + 1) {
                if *s0 >= s2 * int(2) {
                    continue;
                }
                let d1 = sub_vectors(v1, v0);
                let d2 = sub_vectors(v2, v0);
                let collinear = (&d1[0] * &d2[1] - &d1[1] * &d2[0]).is_zero();
                let q = (s2 * int(2) - s0) / (s0 - s2) * (&v2[1] - &v0[1]).abs();
                triples.push(TripleCheck {
                    s: [f(s0), f(s1), f(s2)],
                    collinear,
                    slope_ok: q <= eps,
                    slope_quantity: f(&q),
                });
            }
        }
    }
    Ok(CollinearityReport {
        epsilon: eps,
        shifts,
        triples,
    })
}
