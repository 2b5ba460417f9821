//! Fourier transform of 1D indicator functions `χ̂_E(ξ) = ∫_E e^{-2πiξx} dx`,
//! exact zero tests, and orthogonality / completeness of periodic spectra.

use std::f64::consts::PI;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use super::expsum::ExpSum;
use super::tail::progression_tail;
use crate::error::{Error, Result};
use crate::polybox::PolyBox;
use crate::rational::{frac, int, lcm_of_denominators, to_f64, Rational};

/// Endpoints of a 1D set as `f64` pairs.
fn float_intervals(set: &PolyBox) -> Result<Vec<(f64, f64)>> {
    Ok(set
        .intervals()?
        .iter()
        .map(|(a, b)| (to_f64(a), to_f64(b)))
        .collect())
}

fn ft_from_intervals(intervals: &[(f64, f64)], xi: f64) -> Complex64 {
    if xi == 0.0 {
        return Complex64::new(intervals.iter().map(|(a, b)| b - a).sum(), 0.0);
    }
    // ∫_a^b e^{-2πiξx} dx = e^{-πiξ(a+b)} sin(πξ(b-a)) / (πξ)
    intervals
        .iter()
        .map(|&(a, b)| {
            let amp = (PI * xi * (b - a)).sin() / (PI * xi);
            Complex64::from_polar(amp, -PI * xi * (a + b))
        })
        .sum()
}

/// Numeric `χ̂_E(ξ)` in double precision; `χ̂_E(0) = |E|`.
pub fn ft_indicator(set: &PolyBox, xi: f64) -> Result<Complex64> {
    Ok(ft_from_intervals(&float_intervals(set)?, xi))
}

/// Numeric `χ̂_E(ξ)` at a rational frequency, with phases reduced exactly
/// modulo 2 before rounding.
pub fn ft_indicator_rational(set: &PolyBox, xi: &Rational) -> Result<Complex64> {
    if xi.is_zero() {
        return Ok(Complex64::new(to_f64(&set.measure()), 0.0));
    }
    let two = int(2);
    let reduce = |r: Rational| to_f64(&(&two * frac(&(r / &two))));
    let denom = PI * to_f64(xi);
    Ok(set
        .intervals()?
        .into_iter()
        .map(|(a, b)| {
            let amp = (PI * reduce(xi * (&b - &a))).sin() / denom;
            Complex64::from_polar(amp, -PI * reduce(xi * (&a + &b)))
        })
        .sum())
}

/// `Σ_j (e^{-2πiξa_j} - e^{-2πiξb_j})`, which equals `2πiξ · χ̂_E(ξ)`.
pub fn boundary_sum(set: &PolyBox, xi: &Rational) -> Result<ExpSum> {
    let mut s = ExpSum::new();
    for (a, b) in set.intervals()? {
        s.add(1, &-(xi * &a));
        s.add(-1, &-(xi * &b));
    }
    Ok(s)
}

/// Exact test of `χ̂_E(ξ) = 0` for rational `ξ ≠ 0` via cyclotomic divisibility.
pub fn ft_zero_exact(set: &PolyBox, xi: &Rational) -> Result<bool> {
    if xi.is_zero() {
        return Err(Error::ZeroFrequency);
    }
    Ok(boundary_sum(set, xi)?.is_zero())
}

/// `Λ = reps + period·ℤ` in one dimension.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpectrumCandidate {
    reps: Vec<Rational>,
    period: Rational,
}

impl SpectrumCandidate {
    pub fn new(reps: Vec<Rational>, period: Rational) -> Result<Self> {
        if !period.is_positive() {
            return Err(Error::OutOfRange("period must be positive".into()));
        }
        if reps.is_empty() {
            return Err(Error::EmptySet);
        }
        let residues: Vec<Rational> = reps.iter().map(|r| frac(&(r / &period))).collect();
        for (i, a) in residues.iter().enumerate() {
            if residues[i + 1..].contains(a) {
                return Err(Error::Malformed("spectrum representatives must be distinct mod the period".into()));
            }
        }
        if !residues.iter().any(Zero::is_zero) {
            return Err(Error::Malformed("spectrum must contain 0".into()));
        }
        Ok(SpectrumCandidate { reps, period })
    }

    pub fn reps(&self) -> &[Rational] {
        &self.reps
    }

    pub fn period(&self) -> &Rational {
        &self.period
    }

    pub fn density(&self) -> Rational {
        Rational::from_integer(BigInt::from(self.reps.len())) / &self.period
    }

    /// All points with `|λ| ≤ m`, as floats.
    pub fn points_within(&self, m: f64) -> Vec<f64> {
        let beta = to_f64(&self.period);
        let mut out = Vec::new();
        for r in &self.reps {
            let r = to_f64(r);
            let k0 = ((-m - r) / beta).ceil() as i64;
            let k1 = ((m - r) / beta).floor() as i64;
            out.extend((k0..=k1).map(|k| r + beta * k as f64));
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ResidueCheck {
    /// `r_i - r_j`.
    pub rep_difference: Rational,
    /// Residue class of `k` modulo the pattern period.
    pub residue: u64,
    /// The tested nonzero frequency `r_i - r_j + k·β`.
    pub frequency: Rational,
    /// Order of the roots of unity in the boundary sum.
    pub order: BigInt,
    pub vanishes: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct OrthogonalityReport {
    pub orthogonal: bool,
    /// Period in `k` after which the root-of-unity pattern repeats.
    pub pattern_period: u64,
    pub checks: Vec<ResidueCheck>,
    pub witness: Option<Rational>,
}

/// Verifies `χ̂_E(d) = 0` for every `d ∈ (Λ - Λ) \ {0}`.
///
/// With all endpoints in `(1/p)ℤ` and `β = n/q`, shifting `d` by `K·β` where
/// `K = q·p` changes every exponent `d·a` by an integer, so each difference
/// class `r_i - r_j + βℤ` is covered by the `K` frequencies `k = 0..K`
/// (replacing `d = 0` by `d = Kβ`). Pairs `(i, j)` and `(j, i)` give
/// conjugate values, so only `i ≤ j` is tested.
pub fn orthogonality_check(set: &PolyBox, spectrum: &SpectrumCandidate) -> Result<OrthogonalityReport> {
    let intervals = set.intervals()?;
    if intervals.is_empty() {
        return Err(Error::EmptySet);
    }
    let p = lcm_of_denominators(intervals.iter().flat_map(|(a, b)| [a, b]));
    let beta = spectrum.period();
    let k_period = (beta.denom() * p)
        .to_u64()
        .ok_or_else(|| Error::OutOfRange("pattern period exceeds u64".into()))?;
    let mut checks = Vec::new();
    let reps = spectrum.reps();
    for i in 0..reps.len() {
        for j in i..reps.len() {
            let r = &reps[i] - &reps[j];
            for k in 0..k_period {
                let mut d = &r + beta * int(k as i64);
                if d.is_zero() {
                    d = &r + beta * int(k_period as i64);
                }
                let sum = boundary_sum(set, &d)?;
                checks.push(ResidueCheck {
                    rep_difference: r.clone(),
                    residue: k,
                    order: sum.order(),
                    vanishes: sum.is_zero(),
                    frequency: d,
                });
            }
        }
    }
    let witness = checks.iter().find(|c| !c.vanishes).map(|c| c.frequency.clone());
    Ok(OrthogonalityReport {
        orthogonal: witness.is_none(),
        pattern_period: k_period,
        checks,
        witness,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct SampleResult {
    pub xi: f64,
    /// `Σ_{|λ| ≤ M} |χ̂_E(ξ - λ)|²`.
    pub partial: f64,
    /// Evaluated far tail `Σ_{|λ| > M}`.
    pub tail: f64,
    /// `|partial + tail - |E|²|`.
    pub deviation: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CompletenessReport {
    pub target: f64,
    pub truncation: f64,
    pub tol: f64,
    pub samples: Vec<SampleResult>,
    pub worst_deviation: f64,
    /// Largest bound on the far tail from `|χ̂_E(η)| ≤ m/(π|η|)`.
    pub tail_bound: f64,
    /// Largest uncertainty of the evaluated tail (series remainder + rounding).
    pub tail_uncertainty: f64,
    /// Every partial sum lies in `[|E|² - tol - tail_bound, |E|² + tol]`.
    pub bound_check: bool,
    /// Every evaluated full sum is within `tol` of `|E|²`.
    pub corrected_check: bool,
    pub pass: bool,
}

/// Checks the Parseval identity `Σ_{λ∈Λ} |χ̂_E(ξ - λ)|² = |E|²`, i.e. that
/// `|χ̂_E|² + Λ` tiles at level `|E|²`, at each sample frequency.
///
/// The sum over `|λ| ≤ M` is computed directly. For the rest, the numerator
/// `|2πiη χ̂_E(η)|²` is periodic along each residue class of `Λ`, so the tail
/// reduces to trigamma values and is evaluated with a rigorous remainder.
/// Fails with [`Error::TruncationTooSmall`] when that remainder exceeds `tol`.
pub fn completeness_check(
    set: &PolyBox,
    spectrum: &SpectrumCandidate,
    samples: &[f64],
    truncation: f64,
    tol: f64,
) -> Result<CompletenessReport> {
    let intervals = float_intervals(set)?;
    if intervals.is_empty() {
        return Err(Error::EmptySet);
    }
    if let Some(x) = samples.iter().find(|x| x.abs() >= truncation) {
        return Err(Error::OutOfRange(format!("sample {x} not inside the truncation radius")));
    }
    let exact = set.intervals()?;
    let p = lcm_of_denominators(exact.iter().flat_map(|(a, b)| [a, b]));
    let classes = (spectrum.period().denom() * p).to_u64().unwrap_or(u64::MAX);
    const MAX_CLASSES: u64 = 1 << 16;

    let m = intervals.len() as f64;
    let target = {
        let e = to_f64(&set.measure());
        e * e
    };
    let beta = to_f64(spectrum.period());
    let points = spectrum.points_within(truncation);
    let reps: Vec<f64> = spectrum.reps().iter().map(to_f64).collect();

    let per_sample: Vec<(SampleResult, f64, f64)> = samples
        .par_iter()
        .map(|&xi| {
            let partial: f64 = points.iter().map(|&l| ft_from_intervals(&intervals, xi - l).norm_sqr()).sum();
            let mut crude = 0.0;
            let mut tail = 0.0;
            let mut uncertainty = partial * points.len() as f64 * f64::EPSILON;
            for &r in &reps {
                let (s, e) = progression_tail(xi, r, beta, truncation);
                crude += m * m / (PI * PI) * (s + e);
                if classes <= MAX_CLASSES {
                    for c in 0..classes {
                        let offset = r + beta * c as f64;
                        let eta = xi - offset;
                        // |2πiη χ̂(η)|² / (4π²) is constant along the class.
                        let weight = ft_from_intervals(&intervals, eta).norm_sqr() * eta * eta;
                        let (s, e) = progression_tail(xi, offset, beta * classes as f64, truncation);
                        tail += weight * s;
                        uncertainty += weight * e + 8.0 * f64::EPSILON * weight * s;
                    }
                }
            }
            if classes > MAX_CLASSES {
                uncertainty += crude;
            }
            let deviation = (partial + tail - target).abs();
            (
                SampleResult {
                    xi,
                    partial,
                    tail,
                    deviation,
                },
                crude,
                uncertainty,
            )
        })
        .collect();

    let tail_bound = per_sample.iter().map(|s| s.1).fold(0.0, f64::max);
    let tail_uncertainty = per_sample.iter().map(|s| s.2).fold(0.0, f64::max);
    if tail_uncertainty > tol {
        return Err(Error::TruncationTooSmall {
            tail: tail_uncertainty,
            tol,
        });
    }
    let samples: Vec<SampleResult> = per_sample.into_iter().map(|s| s.0).collect();
    let worst_deviation = samples.iter().map(|s| s.deviation).fold(0.0, f64::max);
    let bound_check = samples
        .iter()
        .all(|s| s.partial <= target + tol && s.partial >= target - tol - tail_bound);
    let corrected_check = worst_deviation <= tol;
    Ok(CompletenessReport {
        target,
        truncation,
        tol,
        samples,
        worst_deviation,
        tail_bound,
        tail_uncertainty,
        bound_check,
        corrected_check,
        pass: bound_check && corrected_check,
    })
}
