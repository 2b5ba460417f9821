//! Explicit sets and tilings: the sharp 1D example, the three-dimensional
//! near-cube that tiles only non-lattice-wise, column tilings, the four
//! candidate lattice configurations, and generated near-square instances.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::aabb::Aabb;
use crate::error::{Error, Result};
use crate::lattice::{Lattice, TranslationSystem};
use crate::polybox::{unit_cube, PolyBox};
use crate::rational::{int, rat, Rational, Vector};
use crate::tiling::is_tiling;

/// `[0, 1/2] ∪ [1, 3/2]`: tiles and is spectral with `{0, 1/2} + 2ℤ`, but
/// with neither a lattice translation set nor a lattice spectrum.
pub fn build_e_1d_example() -> PolyBox {
    PolyBox::from_intervals(&[(int(0), rat(1, 2)), (int(1), rat(3, 2))]).expect("valid intervals")
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NearCube3DParams {
    epsilon: Rational,
}

impl NearCube3DParams {
    pub fn new(epsilon: Rational) -> Result<Self> {
        if !epsilon.is_positive() || epsilon >= int(1) {
            return Err(Error::OutOfRange(format!("ε = {epsilon} must lie in (0, 1)")));
        }
        Ok(NearCube3DParams { epsilon })
    }

    pub fn epsilon(&self) -> &Rational {
        &self.epsilon
    }
}

/// The nine vertical prisms of `[0, 1+ε]² × [0, 1]` cut by `x₁, x₂ ∈ {ε, 1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Segment {
    Middle,
    A,
    B,
    C,
    D,
    P,
    Q,
    R,
    S,
}

impl fmt::Display for Segment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Segment::Middle => "middle",
            Segment::A => "A",
            Segment::B => "B",
            Segment::C => "C",
            Segment::D => "D",
            Segment::P => "P",
            Segment::Q => "Q",
            Segment::R => "R",
            Segment::S => "S",
        };
        f.write_str(s)
    }
}

impl Segment {
    pub const ALL: [Segment; 9] = [
        Segment::Middle,
        Segment::A,
        Segment::B,
        Segment::C,
        Segment::D,
        Segment::P,
        Segment::Q,
        Segment::R,
        Segment::S,
    ];

    pub const CORNERS: [Segment; 4] = [Segment::A, Segment::B, Segment::C, Segment::D];

    /// `(x₁ range, x₂ range)` of the prism.
    ///
    /// Edge prisms Q (bottom) / P (top) meet across horizontal grid lines and
    /// S (left) / R (right) across vertical ones. Around a grid vertex the
    /// corner prisms C, D, B, A come from the lower-left, lower-right,
    /// upper-left and upper-right columns respectively.
    pub fn footprint(self, eps: &Rational) -> ((Rational, Rational), (Rational, Rational)) {
        let low = (int(0), eps.clone());
        let mid = (eps.clone(), int(1));
        let high = (int(1), int(1) + eps);
        match self {
            Segment::Middle => (mid.clone(), mid),
            Segment::A => (low.clone(), low),
            Segment::B => (high, low),
            Segment::C => (high.clone(), high),
            Segment::D => (low, high),
            Segment::P => (mid, high),
            Segment::Q => (mid, low),
            Segment::R => (high, mid),
            Segment::S => (low, mid),
        }
    }

    /// Vertical pattern: the `x₃` intervals in `[0, 1]` that belong to `E`.
    pub fn pattern(self) -> Vec<(Rational, Rational)> {
        let iv = |a: (i64, i64), b: (i64, i64)| (rat(a.0, a.1), rat(b.0, b.1));
        match self {
            Segment::Middle => vec![iv((0, 1), (1, 1))],
            Segment::P | Segment::R => vec![iv((0, 1), (1, 8)), iv((1, 2), (5, 8))],
            Segment::Q | Segment::S => vec![iv((0, 1), (1, 4)), iv((3, 8), (3, 4)), iv((7, 8), (1, 1))],
            Segment::A => vec![iv((0, 1), (1, 16))],
            Segment::C => vec![iv((1, 2), (9, 16))],
            Segment::B => vec![iv((5, 16), (3, 4))],
            Segment::D => vec![iv((0, 1), (1, 4)), iv((13, 16), (1, 1))],
        }
    }

    pub fn pattern_set(self) -> PolyBox {
        PolyBox::from_intervals(&self.pattern()).expect("patterns are valid")
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SegmentRecord {
    pub label: Segment,
    pub x1: (String, String),
    pub x2: (String, String),
    pub pattern: Vec<(String, String)>,
    pub pattern_measure: String,
    pub measure: String,
}

/// Which prism carries which label and pattern, and the measure ledger.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Manifest {
    pub epsilon: String,
    pub segments: Vec<SegmentRecord>,
    pub total_measure: String,
    pub notes: Vec<String>,
}

/// Builds the near-cube `E(ε)` with `[ε,1]²×[0,1] ⊂ E ⊂ [0,1+ε]²×[0,1]`.
pub fn build_e_3d(params: &NearCube3DParams) -> (PolyBox, Manifest) {
    use crate::rational::format_rational as f;
    let eps = params.epsilon();
    let mut boxes = Vec::new();
    let mut records = Vec::new();
    for seg in Segment::ALL {
        let ((x0, x1), (y0, y1)) = seg.footprint(eps);
        let pattern = seg.pattern();
        for (z0, z1) in &pattern {
            boxes.push(
                Aabb::new(
                    vec![x0.clone(), y0.clone(), z0.clone()],
                    vec![x1.clone(), y1.clone(), z1.clone()],
                )
                .expect("segment boxes are nondegenerate"),
            );
        }
        let pm: Rational = pattern.iter().map(|(a, b)| b - a).sum();
        let area = (&x1 - &x0) * (&y1 - &y0);
        records.push(SegmentRecord {
            label: seg,
            x1: (f(&x0), f(&x1)),
            x2: (f(&y0), f(&y1)),
            pattern: pattern.iter().map(|(a, b)| (f(a), f(b))).collect(),
            pattern_measure: f(&pm),
            measure: f(&(area * pm)),
        });
    }
    let set = PolyBox::from_boxes(3, boxes).expect("3D boxes");
    let manifest = Manifest {
        epsilon: f(eps),
        segments: records,
        total_measure: f(&set.measure()),
        notes: vec![
            "labels: Q bottom edge, P top edge, S left edge, R right edge; corners A=[0,ε]², B=[1,1+ε]×[0,ε], C=[1,1+ε]², D=[0,ε]×[1,1+ε]".into(),
            "corner C carries x₃ ∈ [1/2, 9/16] (its defining line names A, read as C)".into(),
            "assignment certified by the checkerboard tiling check".into(),
        ],
    };
    (set, manifest)
}

/// Vertical column offsets `t_ij` of a column tiling on `|i|, |j| ≤ radius`.
#[derive(Debug, Clone, PartialEq)]
pub struct ColumnTiling {
    pub radius: i64,
    pub offsets: BTreeMap<(i64, i64), Rational>,
    pub periods: Lattice,
}

impl ColumnTiling {
    /// `|t_{i+1,j} - t_ij| = 1/4` and `|t_{i,j+1} - t_ij| = 1/4` wherever both are defined.
    pub fn adjacent_offsets_are_quarters(&self) -> bool {
        let quarter = rat(1, 4);
        self.offsets.iter().all(|(&(i, j), t)| {
            [(i + 1, j), (i, j + 1)]
                .iter()
                .filter_map(|k| self.offsets.get(k))
                .all(|u| (u - t).abs() == quarter)
        })
    }
}

/// `t_ij = 0` for `i + j` even and `1/4` for `i + j` odd.
pub fn checkerboard_offset(i: i64, j: i64) -> Rational {
    if (i + j).rem_euclid(2) == 0 {
        int(0)
    } else {
        rat(1, 4)
    }
}

/// The checkerboard column tiling as a periodic translation system with reps
/// over one 2×2 block and period lattice `(2,0,0), (0,2,0), (0,0,1)`.
pub fn build_checkerboard_tiling(radius: i64) -> Result<(TranslationSystem, ColumnTiling)> {
    if radius < 1 {
        return Err(Error::OutOfRange("radius must be at least 1".into()));
    }
    let periods = Lattice::diagonal(&[int(2), int(2), int(1)])?;
    let reps: Vec<Vector> = [(0, 0), (1, 0), (0, 1), (1, 1)]
        .iter()
        .map(|&(i, j)| vec![int(i), int(j), checkerboard_offset(i, j)])
        .collect();
    let system = TranslationSystem::new(3, reps, Some(periods.clone()))?;
    let offsets = (-radius..=radius)
        .flat_map(|i| (-radius..=radius).map(move |j| ((i, j), checkerboard_offset(i, j))))
        .collect();
    Ok((
        system,
        ColumnTiling {
            radius,
            offsets,
            periods,
        },
    ))
}

/// One of the four offset patterns a lattice of columns can produce: the
/// 2×2 block `[[t00, t01], [t10, t11]]` with `t_ij` the offset of column `(i, j)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeConfig {
    pub index: usize,
    pub matrix: [[Rational; 2]; 2],
}

impl LatticeConfig {
    /// Offset increments `(a, b)` along `x₁` and `x₂`.
    pub fn steps(&self) -> (Rational, Rational) {
        let m = &self.matrix;
        (&m[1][0] - &m[0][0], &m[0][1] - &m[0][0])
    }

    pub fn lattice(&self) -> Lattice {
        let (a, b) = self.steps();
        Lattice::new(vec![
            vec![int(1), int(0), a],
            vec![int(0), int(1), b],
            vec![int(0), int(0), int(1)],
        ])
        .expect("unit triangular generators")
    }

    /// Lattice translation set through `(0, 0, t00)`.
    pub fn system(&self) -> TranslationSystem {
        TranslationSystem::new(3, vec![vec![int(0), int(0), self.matrix[0][0].clone()]], Some(self.lattice()))
            .expect("one representative")
    }
}

/// `[[0,t],[t,2t]]`, `[[2t,t],[t,0]]`, `[[0,t],[-t,0]]`, `[[0,-t],[t,0]]`.
pub fn enumerate_lattice_configs(t: &Rational) -> Vec<LatticeConfig> {
    let z = Rational::zero();
    let t2 = t * int(2);
    let mats = [
        [[z.clone(), t.clone()], [t.clone(), t2.clone()]],
        [[t2, t.clone()], [t.clone(), z.clone()]],
        [[z.clone(), t.clone()], [-t.clone(), z.clone()]],
        [[z.clone(), -t.clone()], [t.clone(), z]],
    ];
    mats.into_iter()
        .enumerate()
        .map(|(i, matrix)| LatticeConfig { index: i + 1, matrix })
        .collect()
}

/// A generated planar instance and a patch of a tiling by it.
#[derive(Debug, Clone, PartialEq)]
pub struct NearSquare {
    pub set: PolyBox,
    pub patch: Vec<Vector>,
    /// The lattice the construction is built around (for lattice patches).
    pub lattice: Option<Lattice>,
}

/// Which planar instance to generate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Profile {
    /// `[0,1]²` with a lattice patch `ℤ²`.
    Trivial,
    /// `[0,1]²` with rows slid by random offsets: a non-lattice tiling.
    ShiftedRows(u64),
    /// A brick-lattice fundamental domain `[0,1+a]×[0,1+b]` with margin
    /// pieces moved across by lattice vectors.
    Bumps(u64),
    /// Staircase top edge matched by a staircase bottom edge, `steps` steps.
    Staircase(u32),
}

fn window_around_square() -> Aabb {
    Aabb::new(vec![rat(-1, 2), rat(-1, 2)], vec![rat(3, 2), rat(3, 2)]).expect("window")
}

/// Builds a planar set with `[0,1]² ⊂ E ⊂ [-ε,1+ε]²` and a translation
/// patch tiling a window around the unit square.
pub fn build_near_square_2d(eps: &Rational, profile: Profile) -> Result<NearSquare> {
    if !eps.is_positive() || *eps > rat(1, 33) {
        return Err(Error::OutOfRange(format!("ε = {eps} must lie in (0, 1/33]")));
    }
    let lattice_patch = |l: &Lattice| -> Vec<Vector> {
        (-2..=2)
            .flat_map(|k| (-2..=2).map(move |m| (k, m)))
            .map(|(k, m)| l.point(&[k, m]))
            .collect()
    };
    let built = match profile {
        Profile::Trivial => {
            let l = Lattice::integer(2);
            NearSquare {
                set: unit_cube(2),
                patch: lattice_patch(&l),
                lattice: Some(l),
            }
        }
        Profile::ShiftedRows(seed) => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut patch = Vec::new();
            for m in -2i64..=2 {
                let shift = if m == 0 { int(0) } else { rat(rng.gen_range(0..8), 8) };
                for k in -2i64..=2 {
                    patch.push(vec![int(k) + &shift, int(m)]);
                }
            }
            NearSquare {
                set: unit_cube(2),
                patch,
                lattice: None,
            }
        }
        Profile::Bumps(seed) => bumps(eps, seed, lattice_patch)?,
        Profile::Staircase(steps) => {
            let set = build_staircase_2d(eps, steps)?;
            let l = Lattice::new(vec![vec![int(1), int(0)], vec![int(0), int(1) + eps]])?;
            NearSquare {
                set,
                patch: lattice_patch(&l),
                lattice: Some(l),
            }
        }
    };
    let patch_system = TranslationSystem::finite(2, built.patch.clone())?;
    if !is_tiling(&built.set, &patch_system, &window_around_square())?.holds {
        return Err(Error::Malformed("generated profile is not complementary".into()));
    }
    Ok(built)
}

fn bumps(eps: &Rational, seed: u64, lattice_patch: impl Fn(&Lattice) -> Vec<Vector>) -> Result<NearSquare> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let a = eps * rat(rng.gen_range(1..=2), 2);
    let b = eps * rat(rng.gen_range(1..=2), 2);
    let beta = rat(rng.gen_range(0..=4), 8);
    let u = vec![int(1) + &a, int(0)];
    let v = vec![beta.clone(), int(1) + &b];

    let fundamental = Aabb::new(vec![int(0), int(0)], vec![int(1) + &a, int(1) + &b])?;
    let mut moved: Vec<(Aabb, Vector)> = Vec::new();

    // Right margin pieces, moved by -u.
    let mut y = int(0);
    while y < int(1) {
        let len = rat(rng.gen_range(1..=4), 16);
        let y1 = (&y + &len).min(int(1));
        if rng.gen_bool(0.5) {
            let inset = &a * rat(rng.gen_range(0..=1), 2);
            let piece = Aabb::new(vec![int(1) + inset, y.clone()], vec![int(1) + &a, y1.clone()])?;
            moved.push((piece, u.clone()));
        }
        y = y1;
    }
    // Top margin pieces, moved by -v; they must land inside x ≥ -ε.
    let mut x = (&beta - eps).max(int(0));
    while x < int(1) {
        let len = rat(rng.gen_range(1..=4), 16);
        let x1 = (&x + &len).min(int(1));
        if rng.gen_bool(0.5) {
            let inset = &b * rat(rng.gen_range(0..=1), 2);
            let piece = Aabb::new(vec![x.clone(), int(1) + inset], vec![x1.clone(), int(1) + &b])?;
            moved.push((piece, v.clone()));
        }
        x = x1;
    }

    let removed = PolyBox::from_boxes(2, moved.iter().map(|(p, _)| p.clone()).collect())?;
    let mut set = PolyBox::from_box(fundamental).difference(&removed)?;
    for (piece, shift) in &moved {
        let back: Vector = shift.iter().map(|c| -c).collect();
        set = set.union(&PolyBox::from_box(piece.translate(&back)))?;
    }
    let l = Lattice::new(vec![u, v])?;
    Ok(NearSquare {
        set,
        patch: lattice_patch(&l),
        lattice: Some(l),
    })
}

/// Unit square with a staircase cap: over `[k/m, (k+1)/m]` the top edge sits
/// at `1 + k·c` and the bottom edge at `-(ε - k·c)`, `c = ε/(m-1)`.
///
/// `E_1(0, 1 - j/m)` shifted by `(j/m, 1 + ε + j·c)` complements
/// `E_2(j/m, 1)` for every `j`, so the shift vectors lie on a line of slope `c·m`.
pub fn build_staircase_2d(eps: &Rational, steps: u32) -> Result<PolyBox> {
    if steps < 2 {
        return Err(Error::OutOfRange("staircase needs at least 2 steps".into()));
    }
    if !eps.is_positive() {
        return Err(Error::OutOfRange("ε must be positive".into()));
    }
    let m = steps as i64;
    let c = eps / int(m - 1);
    let mut boxes = vec![Aabb::unit(2)];
    for k in 0..m {
        let x0 = rat(k, m);
        let x1 = rat(k + 1, m);
        let top = &c * int(k);
        if top.is_positive() {
            boxes.push(Aabb::new(vec![x0.clone(), int(1)], vec![x1.clone(), int(1) + top])?);
        }
        let depth = eps - &c * int(k);
        if depth.is_positive() {
            boxes.push(Aabb::new(vec![x0, -depth], vec![x1, int(0)])?);
        }
    }
    PolyBox::from_boxes(2, boxes)
}

/// `E × [0,1]^{n-3}` for a three-dimensional `E`.
pub fn lift_to_dim(set: &PolyBox, n: usize) -> Result<PolyBox> {
    if set.dim() != 3 {
        return Err(Error::DimensionMismatch {
            expected: 3,
            found: set.dim(),
        });
    }
    if n < 3 {
        return Err(Error::OutOfRange(format!("target dimension {n} is below 3")));
    }
    Ok(set.lift(n - 3))
}

#[derive(Debug, Clone, PartialEq)]
pub struct SqueezeCheck {
    /// `Q_ε ∩ (Q + v) ≠ ∅`.
    pub premise: bool,
    /// `|Q ∩ (Q + v)|`.
    pub overlap: Rational,
    pub holds: bool,
}

/// If the inner square `Q_ε = [ε, 1-ε]²` meets `Q + v` (`Q = [0,1]²`), then
/// `|Q ∩ (Q + v)| ≥ ε²`.
pub fn corner_squeeze_check(eps: &Rational, v: &[Rational]) -> Result<SqueezeCheck> {
    if !eps.is_positive() || *eps >= rat(1, 2) {
        return Err(Error::OutOfRange(format!("ε = {eps} must lie in (0, 1/2)")));
    }
    if v.len() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            found: v.len(),
        });
    }
    let premise = v.iter().all(|c| {
        let lo = c.max(eps);
        let hi = (int(1) + c).min(int(1) - eps);
        lo <= &hi
    });
    let overlap = v
        .iter()
        .map(|c| (int(1) - c.abs()).max(int(0)))
        .fold(int(1), |acc, x| acc * x);
    let holds = !premise || overlap >= eps * eps;
    Ok(SqueezeCheck {
        premise,
        overlap,
        holds,
    })
}

/// Splits `total` into `parts` nonnegative integers (positive if `positive`).
fn random_composition<R: Rng>(rng: &mut R, total: i64, parts: usize, positive: bool) -> Vec<i64> {
    let (total, bump) = if positive { (total - parts as i64, 1) } else { (total, 0) };
    let mut cuts: Vec<i64> = (0..parts - 1).map(|_| rng.gen_range(0..=total)).collect();
    cuts.push(0);
    cuts.push(total);
    cuts.sort_unstable();
    cuts.windows(2).map(|w| w[1] - w[0] + bump).collect()
}

/// A random measure-1 union of at most four intervals with hull `[0, L]`,
/// `1 ≤ L ≤ 3/2 - ε`, all endpoints on the grid `ε·ℤ/24 ∪ ℤ/240`.
pub fn random_short_set_1d<R: Rng>(rng: &mut R, eps: &Rational) -> Result<PolyBox> {
    let max_gap = rat(1, 2) - eps;
    if !max_gap.is_positive() {
        return Err(Error::OutOfRange(format!("ε = {eps} leaves no room below 3/2")));
    }
    let denom: i64 = 240;
    let pieces = rng.gen_range(1..=4usize);
    let lengths = random_composition(rng, denom, pieces, true);
    let gap_units = (&max_gap * int(denom)).floor().to_integer();
    let gap_units = i64::try_from(gap_units).map_err(|_| Error::OutOfRange("gap too large".into()))?;
    let gaps = if pieces == 1 {
        vec![]
    } else {
        let gap_total = rng.gen_range(0..=gap_units);
        random_composition(rng, gap_total, pieces - 1, false)
    };
    let mut x = 0i64;
    let mut intervals = Vec::new();
    for (k, len) in lengths.iter().enumerate() {
        intervals.push((rat(x, denom), rat(x + len, denom)));
        x += len + gaps.get(k).copied().unwrap_or(0);
    }
    PolyBox::from_intervals(&intervals)
}

/// `[0,a] ∪ [b,1] ∪ [1+a,1+b]` with `0 < a < b ≤ 1/2 - ε`: a measure-1 set
/// inside `[0, 3/2 - ε]` that tiles by `ℤ`.
pub fn random_integer_tiler_1d<R: Rng>(rng: &mut R, eps: &Rational) -> Result<PolyBox> {
    let denom: i64 = 240;
    let top = ((rat(1, 2) - eps) * int(denom)).floor().to_integer();
    let top = i64::try_from(top).map_err(|_| Error::OutOfRange("ε out of range".into()))?;
    if top < 2 {
        return Err(Error::OutOfRange(format!("ε = {eps} leaves no room below 3/2")));
    }
    let a = rng.gen_range(1..top);
    let b = rng.gen_range(a + 1..=top);
    PolyBox::from_intervals(&[
        (int(0), rat(a, denom)),
        (rat(b, denom), int(1)),
        (int(1) + rat(a, denom), int(1) + rat(b, denom)),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::format_rational;

    #[test]
    fn sharp_example_shape() {
        let e = build_e_1d_example();
        assert_eq!(e.measure(), int(1));
        let bb = e.bounding_box().unwrap();
        assert_eq!(bb.interval(0), (&int(0), &rat(3, 2)));
    }

    #[test]
    fn near_cube_measure_and_bounds() {
        for eps in [rat(1, 10), rat(1, 100), rat(1, 3)] {
            let (e, manifest) = build_e_3d(&NearCube3DParams::new(eps.clone()).unwrap());
            // (1-ε)² + ε(1-ε)(1/4 + 3/4 + 1/4 + 3/4) + ε²(1/16 + 7/16 + 1/16 + 7/16)
            let oracle = (int(1) - &eps) * (int(1) - &eps)
                + &eps * (int(1) - &eps) * int(2)
                + &eps * &eps;
            assert_eq!(oracle, int(1));
            assert_eq!(e.measure(), oracle);
            assert_eq!(manifest.total_measure, "1");
            let inner = PolyBox::from_box(
                Aabb::new(vec![eps.clone(), eps.clone(), int(0)], vec![int(1), int(1), int(1)]).unwrap(),
            );
            assert!(e.contains_ae(&inner).unwrap());
            let outer = PolyBox::from_box(
                Aabb::new(vec![int(0); 3], vec![int(1) + &eps, int(1) + &eps, int(1)]).unwrap(),
            );
            assert!(outer.contains_ae(&e).unwrap());
        }
        assert!(NearCube3DParams::new(int(1)).is_err());
        assert!(NearCube3DParams::new(int(0)).is_err());
    }

    #[test]
    fn manifest_lists_every_segment() {
        let (_, m) = build_e_3d(&NearCube3DParams::new(rat(1, 10)).unwrap());
        assert_eq!(m.segments.len(), 9);
        let c = m.segments.iter().find(|s| s.label == Segment::C).unwrap();
        assert_eq!(c.pattern, vec![("1/2".to_string(), "9/16".to_string())]);
        assert_eq!(m.epsilon, format_rational(&rat(1, 10)));
    }

    #[test]
    fn checkerboard_offsets_differ_by_quarters() {
        let (system, columns) = build_checkerboard_tiling(3).unwrap();
        assert!(columns.adjacent_offsets_are_quarters());
        assert_eq!(system.lattice().unwrap().covolume(), int(4));
        assert_eq!(system.reps().len(), 4);
        assert!(build_checkerboard_tiling(0).is_err());
    }

    #[test]
    fn lattice_configs_match_displayed_matrices() {
        let t = rat(1, 4);
        let configs = enumerate_lattice_configs(&t);
        assert_eq!(configs.len(), 4);
        assert_eq!(configs[0].matrix, [[int(0), t.clone()], [t.clone(), rat(1, 2)]]);
        for c in &configs {
            assert_eq!(c.lattice().covolume(), int(1));
            // The generated lattice reproduces the 2×2 block.
            let sys = c.system();
            let l = sys.lattice().unwrap();
            for i in 0..2 {
                for j in 0..2 {
                    let p = crate::rational::add_vectors(&sys.reps()[0], &l.point(&[i, j, 0]));
                    assert_eq!(p[2], c.matrix[i as usize][j as usize]);
                }
            }
        }
    }

    #[test]
    fn staircase_bounds() {
        let eps = rat(1, 40);
        let e = build_staircase_2d(&eps, 5).unwrap();
        assert!(e.contains_ae(&unit_cube(2)).unwrap());
        let bb = e.bounding_box().unwrap();
        assert_eq!(bb.lo()[1], -eps.clone());
        assert_eq!(bb.hi()[1], int(1) + &eps);
    }

    #[test]
    fn near_square_generators() {
        let eps = rat(1, 40);
        let s = build_near_square_2d(&eps, Profile::Trivial).unwrap();
        assert_eq!(s.set, unit_cube(2));
        for seed in 1..6 {
            let s = build_near_square_2d(&eps, Profile::Bumps(seed)).unwrap();
            assert!(s.set.contains_ae(&unit_cube(2)).unwrap());
            let outer = PolyBox::from_box(
                Aabb::new(vec![-eps.clone(), -eps.clone()], vec![int(1) + &eps, int(1) + &eps]).unwrap(),
            );
            assert!(outer.contains_ae(&s.set).unwrap());
            let l = s.lattice.unwrap();
            assert_eq!(s.set.measure(), l.covolume());
        }
        assert!(build_near_square_2d(&rat(1, 20), Profile::Trivial).is_err());
    }

    #[test]
    fn random_sets_respect_bounds() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for eps in [rat(1, 10), rat(1, 100)] {
            for _ in 0..50 {
                for e in [
                    random_short_set_1d(&mut rng, &eps).unwrap(),
                    random_integer_tiler_1d(&mut rng, &eps).unwrap(),
                ] {
                    assert_eq!(e.measure(), int(1));
                    let bb = e.bounding_box().unwrap();
                    assert_eq!(bb.lo()[0], int(0));
                    assert!(bb.hi()[0] <= rat(3, 2) - &eps);
                }
            }
        }
    }

    #[test]
    fn lift_examples() {
        let (e, _) = build_e_3d(&NearCube3DParams::new(rat(1, 10)).unwrap());
        assert_eq!(lift_to_dim(&e, 3).unwrap(), e);
        let l = lift_to_dim(&e, 4).unwrap();
        assert_eq!(l.measure(), int(1));
        let bb = l.bounding_box().unwrap();
        assert_eq!(bb.hi(), &[rat(11, 10), rat(11, 10), int(1), int(1)]);
        assert!(lift_to_dim(&e, 2).is_err());
    }

    #[test]
    fn squeeze_examples() {
        let eps = rat(1, 10);
        let one_minus = int(1) - &eps;
        let r = corner_squeeze_check(&eps, &[one_minus.clone(), int(0)]).unwrap();
        assert!(r.premise && r.holds);
        assert_eq!(r.overlap, eps.clone());
        let r = corner_squeeze_check(&eps, &[one_minus.clone(), one_minus]).unwrap();
        assert!(r.premise && r.holds);
        assert_eq!(r.overlap, &eps * &eps);
        let r = corner_squeeze_check(&eps, &[int(2), int(0)]).unwrap();
        assert!(!r.premise && r.holds);
    }
}
