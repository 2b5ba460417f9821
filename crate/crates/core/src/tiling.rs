//! Packing and tiling verification on a window via exact multiplicity maps,
//! plus the forced left-to-right completion of 1D tilings.

use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::aabb::Aabb;
use crate::error::{Error, Result};
use crate::lattice::{enumerate_relevant, IntegerBox, TranslationSystem};
use crate::polybox::PolyBox;
use crate::rational::{int, Rational, Vector};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Tiling,
    PackingNotTiling,
    NotPacking,
}

impl Verdict {
    pub fn is_packing(self) -> bool {
        !matches!(self, Verdict::NotPacking)
    }

    pub fn is_tiling(self) -> bool {
        matches!(self, Verdict::Tiling)
    }
}

/// A grid cell whose multiplicity violates the verdict boundary.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub cell: Aabb,
    pub count: u32,
}

/// Multiplicity of `E + T` on the cells of the grid induced inside a window.
#[derive(Debug, Clone, PartialEq)]
pub struct MultiplicityReport {
    pub window: Aabb,
    /// Sorted cut coordinates per axis, including the window bounds.
    pub grid: Vec<Vec<Rational>>,
    /// Row-major counts, last axis fastest.
    pub counts: Vec<u32>,
    pub verdict: Verdict,
    pub witness: Option<Witness>,
    pub translations: Vec<Vector>,
    pub coefficient_bounds: Vec<Vec<(i64, i64)>>,
    /// `Σ count · |cell|`.
    pub cell_mass: Rational,
    /// `Σ_t |(E + t) ∩ W|`.
    pub translate_mass: Rational,
}

impl MultiplicityReport {
    pub fn cell_count(&self) -> usize {
        self.counts.len()
    }

    pub fn shape(&self) -> Vec<usize> {
        self.grid.iter().map(|g| g.len() - 1).collect()
    }

    pub fn cell(&self, flat: usize) -> Aabb {
        let idx = unflatten(flat, &self.shape());
        Aabb::new(
            idx.iter().enumerate().map(|(k, &i)| self.grid[k][i].clone()).collect(),
            idx.iter().enumerate().map(|(k, &i)| self.grid[k][i + 1].clone()).collect(),
        )
        .expect("grid cuts are strictly increasing")
    }

    pub fn cells(&self) -> impl Iterator<Item = (Aabb, u32)> + '_ {
        (0..self.counts.len()).map(|i| (self.cell(i), self.counts[i]))
    }

    pub fn mass_conserved(&self) -> bool {
        self.cell_mass == self.translate_mass
    }

    /// Whether the windowed verdict holds on all of ℝⁿ: the system must be
    /// invariant under its lattice and the window must contain a
    /// fundamental parallelepiped of that lattice.
    pub fn extends_globally(&self, system: &TranslationSystem) -> bool {
        system
            .lattice()
            .is_some_and(|l| self.window.contains_box(&l.fundamental_window()))
    }
}

fn unflatten(mut flat: usize, shape: &[usize]) -> Vec<usize> {
    let mut idx = vec![0; shape.len()];
    for k in (0..shape.len()).rev() {
        idx[k] = flat % shape[k];
        flat /= shape[k];
    }
    idx
}

/// Index range `[a, b)` of grid cells covered by `[lo, hi]` on one axis.
fn cell_range(cuts: &[Rational], lo: &Rational, hi: &Rational) -> (usize, usize) {
    let a = cuts.partition_point(|c| c < lo);
    let b = cuts.partition_point(|c| c < hi);
    (a, b)
}

pub fn multiplicity_map(set: &PolyBox, system: &TranslationSystem, window: &Aabb) -> Result<MultiplicityReport> {
    let enumeration = enumerate_relevant(system, set, window)?;
    let dim = window.dim();

    let mut pieces: Vec<Aabb> = Vec::new();
    for t in &enumeration.translations {
        for b in set.boxes() {
            if let Some(c) = b.translate(t).intersection(window) {
                pieces.push(c);
            }
        }
    }

    let grid: Vec<Vec<Rational>> = (0..dim)
        .map(|k| {
            let (wlo, whi) = window.interval(k);
            let mut cuts: Vec<Rational> = vec![wlo.clone(), whi.clone()];
            for p in &pieces {
                let (lo, hi) = p.interval(k);
                cuts.push(lo.clone());
                cuts.push(hi.clone());
            }
            cuts.sort();
            cuts.dedup();
            cuts
        })
        .collect();
    let shape: Vec<usize> = grid.iter().map(|g| g.len() - 1).collect();
    let total: usize = shape.iter().product();
    let mut counts = vec![0u32; total];

    // Every piece is a union of whole cells, so incrementing its index range
    // is the same as evaluating coverage at each cell midpoint.
    for p in &pieces {
        let ranges: Vec<(i64, i64)> = (0..dim)
            .map(|k| {
                let (lo, hi) = p.interval(k);
                let (a, b) = cell_range(&grid[k], lo, hi);
                (a as i64, b as i64 - 1)
            })
            .collect();
        for idx in IntegerBox::new(&ranges) {
            let flat = idx
                .iter()
                .zip(&shape)
                .fold(0usize, |acc, (&i, &s)| acc * s + i as usize);
            counts[flat] += 1;
        }
    }

    let translate_mass: Rational = pieces.iter().map(Aabb::measure).sum();

    let mut report = MultiplicityReport {
        window: window.clone(),
        grid,
        counts,
        verdict: Verdict::Tiling,
        witness: None,
        translations: enumeration.translations,
        coefficient_bounds: enumeration.coefficient_bounds,
        cell_mass: Rational::zero(),
        translate_mass,
    };

    let mut cell_mass = Rational::zero();
    let mut first_gap = None;
    let mut first_overlap = None;
    for (i, &c) in report.counts.iter().enumerate() {
        if c > 0 {
            cell_mass += report.cell(i).measure() * int(c as i64);
        }
        if c == 0 && first_gap.is_none() {
            first_gap = Some(i);
        }
        if c > 1 && first_overlap.is_none() {
            first_overlap = Some(i);
        }
    }
    report.cell_mass = cell_mass;
    let (verdict, witness) = match (first_overlap, first_gap) {
        (Some(i), _) => (Verdict::NotPacking, Some(i)),
        (None, Some(i)) => (Verdict::PackingNotTiling, Some(i)),
        (None, None) => (Verdict::Tiling, None),
    };
    report.verdict = verdict;
    report.witness = witness.map(|i| Witness {
        cell: report.cell(i),
        count: report.counts[i],
    });
    Ok(report)
}

/// Outcome of a packing or tiling check on a window.
#[derive(Debug, Clone, PartialEq)]
pub struct Decision {
    pub holds: bool,
    pub witness: Option<Witness>,
    pub report: MultiplicityReport,
}

/// `E + T` is a packing on `W`. If `T` is lattice-periodic and `W` contains a
/// fundamental domain of the lattice, the answer holds on all of ℝⁿ.
pub fn is_packing(set: &PolyBox, system: &TranslationSystem, window: &Aabb) -> Result<Decision> {
    let report = multiplicity_map(set, system, window)?;
    let holds = report.verdict.is_packing();
    let witness = if holds { None } else { report.witness.clone() };
    Ok(Decision {
        holds,
        witness,
        report,
    })
}

/// `E + T` is a tiling on `W`, with the same global extension contract as
/// [`is_packing`].
pub fn is_tiling(set: &PolyBox, system: &TranslationSystem, window: &Aabb) -> Result<Decision> {
    let report = multiplicity_map(set, system, window)?;
    let holds = report.verdict.is_tiling();
    let witness = report.witness.clone();
    Ok(Decision {
        holds,
        witness,
        report,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub enum CompletionFailure {
    /// No translate with a component starting at the gap avoids overlap.
    NoFit,
    /// More than one translate fits; the completion is not forced.
    Ambiguous(Vec<Rational>),
    StepLimit,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Completion {
    Complete(TranslationSystem),
    Failed {
        point: Rational,
        reason: CompletionFailure,
        placed: Vec<Rational>,
    },
}

impl Completion {
    pub fn translations(&self) -> Option<Vec<Rational>> {
        match self {
            Completion::Complete(s) => Some(s.reps().iter().map(|r| r[0].clone()).collect()),
            Completion::Failed { .. } => None,
        }
    }
}

/// Forced greedy completion of a 1D tiling containing the translate `E + 0`.
///
/// Repeatedly takes the leftmost point `x ≥ min E` of `W` not yet covered and
/// places a translate `E + t` with a component starting at `x`. The translate
/// with `min(E + t) = x` is used when it does not overlap what is already
/// placed; otherwise `t = x - a` is tried for the remaining left endpoints `a`
/// of `E`, and exactly one of them must fit.
/// Returns the placed translations meeting `W` in positive measure.
pub fn complete_tiling_1d(set: &PolyBox, window: &Aabb, max_steps: usize) -> Result<Completion> {
    if set.dim() != 1 {
        return Err(Error::DimensionMismatch {
            expected: 1,
            found: set.dim(),
        });
    }
    if window.dim() != 1 {
        return Err(Error::DimensionMismatch {
            expected: 1,
            found: window.dim(),
        });
    }
    let intervals = set.intervals()?;
    let Some(min_e) = intervals.first().map(|iv| iv.0.clone()) else {
        return Err(Error::EmptySet);
    };
    let left_edges: Vec<Rational> = intervals.iter().map(|iv| iv.0.clone()).collect();

    let (wlo, whi) = window.interval(0);
    let start = (&min_e).max(wlo).clone();
    let mut placed = vec![Rational::zero()];
    let mut covered = set.clone();

    if start < *whi {
        let target = PolyBox::from_intervals(&[(start, whi.clone())])?;
        let mut steps = 0;
        loop {
            let gaps = target.difference(&covered)?;
            let Some(first) = gaps.boxes().first() else {
                break;
            };
            let x = first.interval(0).0.clone();
            if steps == max_steps {
                return Ok(Completion::Failed {
                    point: x,
                    reason: CompletionFailure::StepLimit,
                    placed,
                });
            }
            steps += 1;
            // The translate whose leftmost point lands on x takes precedence;
            // other components are tried only when it does not fit.
            let primary = &x - &min_e;
            let fits = if fits_without_overlap(set, &covered, &primary)? {
                vec![primary]
            } else {
                let mut fits = Vec::new();
                for a in &left_edges[1..] {
                    let t = &x - a;
                    if fits_without_overlap(set, &covered, &t)? {
                        fits.push(t);
                    }
                }
                fits
            };
            match fits.len() {
                0 => {
                    return Ok(Completion::Failed {
                        point: x,
                        reason: CompletionFailure::NoFit,
                        placed,
                    })
                }
                1 => {
                    let t = fits[0].clone();
                    covered = covered.union(&set.translate(std::slice::from_ref(&t))?)?;
                    placed.push(t);
                }
                _ => {
                    return Ok(Completion::Failed {
                        point: x,
                        reason: CompletionFailure::Ambiguous(fits),
                        placed,
                    });
                }
            }
        }
    }

    let window_set = PolyBox::from_box(window.clone());
    let mut relevant = Vec::new();
    for t in placed {
        let shifted = set.translate(std::slice::from_ref(&t))?;
        if shifted.intersection_measure(&window_set)?.is_positive() {
            relevant.push(vec![t]);
        }
    }
    relevant.sort();
    Ok(Completion::Complete(TranslationSystem::finite(1, relevant)?))
}

fn fits_without_overlap(set: &PolyBox, covered: &PolyBox, t: &Rational) -> Result<bool> {
    let candidate = set.translate(std::slice::from_ref(t))?;
    Ok(candidate.intersection_measure(covered)?.is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::Lattice;
    use crate::rational::rat;

    fn set_1d(ivs: &[(Rational, Rational)]) -> PolyBox {
        PolyBox::from_intervals(ivs).unwrap()
    }

    fn window_1d(a: Rational, b: Rational) -> Aabb {
        Aabb::new(vec![a], vec![b]).unwrap()
    }

    fn sharp_example() -> PolyBox {
        set_1d(&[(int(0), rat(1, 2)), (int(1), rat(3, 2))])
    }

    #[test]
    fn unit_interval_tiles_by_integers() {
        let e = set_1d(&[(int(0), int(1))]);
        let z = TranslationSystem::lattice_only(Lattice::integer(1));
        let r = multiplicity_map(&e, &z, &window_1d(int(0), int(3))).unwrap();
        assert_eq!(r.verdict, Verdict::Tiling);
        assert!(r.counts.iter().all(|&c| c == 1));
        assert!(r.mass_conserved());
        assert!(r.extends_globally(&z));
    }

    #[test]
    fn sharp_example_tiles_with_two_point_period() {
        let t = TranslationSystem::periodic_1d(&[int(0), rat(1, 2)], int(2)).unwrap();
        let d = is_tiling(&sharp_example(), &t, &window_1d(int(0), int(4))).unwrap();
        assert!(d.holds);
        assert!(d.report.extends_globally(&t));
    }

    #[test]
    fn sharp_example_does_not_pack_with_integers() {
        let z = TranslationSystem::lattice_only(Lattice::integer(1));
        let d = is_packing(&sharp_example(), &z, &window_1d(int(0), int(3))).unwrap();
        assert!(!d.holds);
        let w = d.witness.unwrap();
        assert_eq!(w.count, 2);
        // E ∩ (E + 1) = [1, 3/2], so overlaps sit in [0, 1/2] + ℤ.
        let (lo, hi) = w.cell.interval(0);
        assert!(hi - lo.floor() <= rat(1, 2));
    }

    #[test]
    fn gap_is_reported_as_packing_not_tiling() {
        let e = set_1d(&[(int(0), rat(1, 2))]);
        let z = TranslationSystem::lattice_only(Lattice::integer(1));
        let r = multiplicity_map(&e, &z, &window_1d(int(0), int(2))).unwrap();
        assert_eq!(r.verdict, Verdict::PackingNotTiling);
        assert_eq!(r.witness.unwrap().count, 0);
    }

    #[test]
    fn enumerate_relevant_excludes_boundary_touching() {
        let e = set_1d(&[(int(0), int(1))]);
        let z = TranslationSystem::lattice_only(Lattice::integer(1));
        let en = enumerate_relevant(&z, &e, &window_1d(int(0), int(2))).unwrap();
        assert_eq!(en.translations, vec![vec![int(0)], vec![int(1)]]);
        let zero = TranslationSystem::finite(1, vec![vec![int(0)]]).unwrap();
        let en = enumerate_relevant(&zero, &e, &window_1d(int(5), int(6))).unwrap();
        assert!(en.translations.is_empty());
    }

    #[test]
    fn completion_of_unit_interval() {
        let e = set_1d(&[(int(0), int(1))]);
        let c = complete_tiling_1d(&e, &window_1d(int(0), int(5)), 100).unwrap();
        assert_eq!(c.translations().unwrap(), (0..5).map(int).collect::<Vec<_>>());
    }

    #[test]
    fn completion_of_sharp_example_is_not_integer() {
        let c = complete_tiling_1d(&sharp_example(), &window_1d(int(0), int(4)), 100).unwrap();
        let ts = c.translations().unwrap();
        assert_eq!(ts, vec![int(0), rat(1, 2), int(2), rat(5, 2)]);
    }

    #[test]
    fn completion_failure_and_step_limit() {
        // [0,1/2] ∪ [3/4,5/4] overlaps itself mod 1, so nothing fits at 1/2.
        let e = set_1d(&[(int(0), rat(1, 2)), (rat(3, 4), rat(5, 4))]);
        let c = complete_tiling_1d(&e, &window_1d(int(0), int(10)), 100).unwrap();
        assert!(matches!(
            c,
            Completion::Failed { reason: CompletionFailure::NoFit, .. }
        ));
        let unit = set_1d(&[(int(0), int(1))]);
        let c = complete_tiling_1d(&unit, &window_1d(int(0), int(10)), 3).unwrap();
        assert!(matches!(
            c,
            Completion::Failed { reason: CompletionFailure::StepLimit, .. }
        ));
    }

    #[test]
    fn completion_places_translates_left_of_origin() {
        // Z-tiler whose first gap is filled by E - 1.
        let e = set_1d(&[(int(0), rat(1, 8)), (rat(1, 4), int(1)), (rat(9, 8), rat(5, 4))]);
        let c = complete_tiling_1d(&e, &window_1d(int(0), int(10)), 100).unwrap();
        assert_eq!(c.translations().unwrap(), (-1..10).map(int).collect::<Vec<_>>());
    }
}
