//! Integer combinations of roots of unity `Σ c_k e^{2πi q_k}` with rational
//! exponents, tested for vanishing exactly.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{ToPrimitive, Zero};

use super::cyclotomic::vanishes_at_primitive_root;
use crate::rational::{frac, lcm_of_denominators, to_f64, Rational};

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ExpSum {
    /// Exponent in `[0, 1)` → nonzero coefficient.
    terms: BTreeMap<Rational, i64>,
}

impl ExpSum {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds `coeff · e^{2πi exponent}`; the exponent is reduced mod 1.
    pub fn add(&mut self, coeff: i64, exponent: &Rational) {
        if coeff == 0 {
            return;
        }
        let e = frac(exponent);
        let slot = self.terms.entry(e.clone()).or_insert(0);
        *slot += coeff;
        if *slot == 0 {
            self.terms.remove(&e);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Rational, i64)> {
        self.terms.iter().map(|(e, c)| (e, *c))
    }

    pub fn is_formally_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Common denominator `N` of the exponents: every term is a power of `e^{2πi/N}`.
    pub fn order(&self) -> BigInt {
        lcm_of_denominators(self.terms.keys())
    }

    /// Exact test: with `N` the common denominator, the sum is `P(ζ_N)` for an
    /// integer polynomial `P`, which vanishes iff `Φ_N` divides `P`.
    pub fn is_zero(&self) -> bool {
        if self.terms.is_empty() {
            return true;
        }
        let n = self
            .order()
            .to_u64()
            .expect("root of unity order exceeds u64");
        let mut coeffs = vec![BigInt::zero(); n as usize];
        let big_n = Rational::from_integer(BigInt::from(n));
        for (e, c) in &self.terms {
            let k = (e * &big_n).to_integer().to_usize().expect("exponent index");
            coeffs[k] += *c;
        }
        vanishes_at_primitive_root(&coeffs, n)
    }

    pub fn eval(&self) -> Complex64 {
        self.terms
            .iter()
            .map(|(e, c)| {
                let phase = 2.0 * std::f64::consts::PI * to_f64(e);
                Complex64::from_polar(*c as f64, phase)
            })
            .sum()
    }
}
