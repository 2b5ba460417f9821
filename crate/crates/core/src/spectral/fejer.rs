//! The Fejér kernel `K_δ(x) = max{0, 1 - (1+δ)|x|}` and its transform.

use std::f64::consts::PI;

use num_traits::{Signed, ToPrimitive};
use rayon::prelude::*;

use super::tail::progression_tail;
use crate::error::{Error, Result};
use crate::rational::{int, to_f64, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FejerParams {
    delta: Rational,
}

impl FejerParams {
    pub fn new(delta: Rational) -> Result<Self> {
        if !delta.is_positive() {
            return Err(Error::OutOfRange("δ must be positive".into()));
        }
        Ok(FejerParams { delta })
    }

    pub fn delta(&self) -> &Rational {
        &self.delta
    }

    /// Length `1/(1+δ)` of the interval whose autocorrelation gives `K_δ`.
    pub fn width(&self) -> Rational {
        int(1) / (int(1) + &self.delta)
    }
}

pub fn fejer_eval(p: &FejerParams, x: f64) -> f64 {
    (1.0 - (1.0 + to_f64(&p.delta)) * x.abs()).max(0.0)
}

fn ft_with(scale: f64, width: f64, xi: f64) -> f64 {
    if xi == 0.0 {
        return scale * width * width;
    }
    let s = (PI * xi * width).sin() / (PI * xi);
    scale * s * s
}

/// `K̂_δ(ξ) = (1+δ) |χ̂_{[0, 1/(1+δ)]}(ξ)|²`, equal to `1/(1+δ)` at 0 and
/// vanishing on `(1+δ)(ℤ \ {0})`.
pub fn fejer_ft(p: &FejerParams, xi: f64) -> f64 {
    ft_with(1.0 + to_f64(&p.delta), to_f64(&p.width()), xi)
}

#[derive(Debug, Clone, PartialEq)]
pub struct PartitionSample {
    pub x: f64,
    /// `Σ_{|k| ≤ M} K̂_δ(x - k)`.
    pub partial: f64,
    pub tail: f64,
    /// The `k = 0` term `K̂_δ(x)`.
    pub zero_term: f64,
    pub deviation: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PartitionReport {
    pub truncation: u64,
    pub tol: f64,
    pub samples: Vec<PartitionSample>,
    pub worst_deviation: f64,
    /// Bound on the far tail from `K̂_δ(η) ≤ (1+δ)/(πη)²`.
    pub tail_bound: f64,
    pub tail_uncertainty: f64,
    pub bound_check: bool,
    pub corrected_check: bool,
    pub pass: bool,
}

/// Checks `Σ_{k∈ℤ} K̂_δ(x - k) = 1` at each sample.
///
/// With `1/(1+δ) = n/q` in lowest terms, `sin²(π(x-k)/(1+δ))` has period `q`
/// in `k`, so the far tail `|k| > M` is evaluated per residue class.
pub fn fejer_partition_check(p: &FejerParams, truncation: u64, samples: &[f64], tol: f64) -> Result<PartitionReport> {
    let m = truncation as f64;
    if let Some(x) = samples.iter().find(|x| x.abs() >= m) {
        return Err(Error::OutOfRange(format!("sample {x} not inside the truncation radius")));
    }
    let scale = 1.0 + to_f64(&p.delta);
    let width_exact = p.width();
    let width = to_f64(&width_exact);
    let classes = width_exact.denom().to_u64().unwrap_or(u64::MAX);
    const MAX_CLASSES: u64 = 1 << 16;

    let per_sample: Vec<(PartitionSample, f64, f64)> = samples
        .par_iter()
        .map(|&x| {
            let mut partial = 0.0;
            for k in -(truncation as i64)..=truncation as i64 {
                partial += ft_with(scale, width, x - k as f64);
            }
            let (s, e) = progression_tail(x, 0.0, 1.0, m);
            let crude = scale / (PI * PI) * (s + e);
            let mut tail = 0.0;
            let mut uncertainty = partial * (2 * truncation + 1) as f64 * f64::EPSILON;
            if classes <= MAX_CLASSES {
                for c in 0..classes {
                    let eta = x - c as f64;
                    let sn = (PI * eta * width).sin();
                    let weight = scale * sn * sn / (PI * PI);
                    let (s, e) = progression_tail(x, c as f64, classes as f64, m);
                    tail += weight * s;
                    uncertainty += weight * e + 8.0 * f64::EPSILON * weight * s;
                }
            } else {
                uncertainty += crude;
            }
            let sample = PartitionSample {
                x,
                partial,
                tail,
                zero_term: ft_with(scale, width, x),
                deviation: (partial + tail - 1.0).abs(),
            };
            (sample, crude, uncertainty)
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
    let samples: Vec<PartitionSample> = per_sample.into_iter().map(|s| s.0).collect();
    let worst_deviation = samples.iter().map(|s| s.deviation).fold(0.0, f64::max);
    let bound_check = samples
        .iter()
        .all(|s| s.partial <= 1.0 + tol && s.partial >= 1.0 - tol - tail_bound);
    let corrected_check = worst_deviation <= tol;
    Ok(PartitionReport {
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

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn params(n: i64, d: i64) -> FejerParams {
        FejerParams::new(rat(n, d)).unwrap()
    }

    #[test]
    fn kernel_values() {
        let p = params(1, 10);
        assert_eq!(fejer_eval(&p, 0.0), 1.0);
        assert_eq!(fejer_eval(&p, 1.0), 0.0);
        assert!((fejer_eval(&p, 0.5) - 0.45).abs() < 1e-15);
        assert!(FejerParams::new(int(0)).is_err());
    }

    #[test]
    fn transform_at_zero_and_zeros() {
        let p = params(1, 10);
        assert!((fejer_ft(&p, 0.0) - 10.0 / 11.0).abs() < 1e-12);
        for k in 1..=10 {
            for s in [-1.0, 1.0] {
                assert!(fejer_ft(&p, s * 1.1 * k as f64).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn partition_examples() {
        let p = params(1, 100);
        let r = fejer_partition_check(&p, 10_000, &[0.3], 1e-6).unwrap();
        assert!(r.pass, "{r:?}");

        let r = fejer_partition_check(&p, 10_000, &[0.0], 1e-6).unwrap();
        assert!((r.samples[0].zero_term - 100.0 / 101.0).abs() < 1e-12);
        // the remaining terms carry δ/(1+δ)
        let rest = r.samples[0].partial + r.samples[0].tail - r.samples[0].zero_term;
        assert!((rest - 1.0 / 101.0).abs() < 1e-6);

        let r = fejer_partition_check(&params(1, 1), 1000, &[0.25, 0.7], 1e-4).unwrap();
        assert!(r.pass, "{r:?}");
    }
}
