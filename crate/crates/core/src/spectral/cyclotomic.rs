//! Cyclotomic polynomials over ℤ and exact divisibility by them.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Dense integer polynomial, coefficient `i` multiplies `x^i`.
pub type IntPoly = Vec<BigInt>;

fn cache() -> &'static RwLock<HashMap<u64, Arc<IntPoly>>> {
    static CACHE: OnceLock<RwLock<HashMap<u64, Arc<IntPoly>>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut i = 1;
    while i * i <= n {
        if n.is_multiple_of(i) {
            small.push(i);
            if i != n / i {
                large.push(n / i);
            }
        }
        i += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// The `n`-th cyclotomic polynomial, by dividing `x^n - 1` by `Φ_d` for every
/// proper divisor `d`. Results are cached by index.
pub fn cyclotomic(n: u64) -> Arc<IntPoly> {
    assert!(n > 0, "cyclotomic index must be positive");
    if let Some(p) = cache().read().expect("cyclotomic cache poisoned").get(&n) {
        return Arc::clone(p);
    }
    let mut p: IntPoly = vec![BigInt::zero(); n as usize + 1];
    p[0] = -BigInt::one();
    p[n as usize] = BigInt::one();
    for d in divisors(n) {
        if d == n {
            continue;
        }
        let (q, r) = div_rem_monic(&p, &cyclotomic(d));
        debug_assert!(is_zero_poly(&r));
        p = q;
    }
    let p = Arc::new(p);
    cache()
        .write()
        .expect("cyclotomic cache poisoned")
        .entry(n)
        .or_insert_with(|| Arc::clone(&p));
    p
}

fn trim(p: &mut IntPoly) {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
}

pub fn is_zero_poly(p: &[BigInt]) -> bool {
    p.iter().all(Zero::is_zero)
}

/// Quotient and remainder of `p` by a monic divisor.
pub fn div_rem_monic(p: &[BigInt], divisor: &[BigInt]) -> (IntPoly, IntPoly) {
    let mut rem: IntPoly = p.to_vec();
    trim(&mut rem);
    let mut d: IntPoly = divisor.to_vec();
    trim(&mut d);
    let dd = d.len() - 1;
    debug_assert!(d[dd].is_one());
    if rem.len() <= dd {
        return (vec![BigInt::zero()], rem);
    }
    let mut quot = vec![BigInt::zero(); rem.len() - dd];
    for i in (dd..rem.len()).rev() {
        let c = std::mem::take(&mut rem[i]);
        if c.is_zero() {
            continue;
        }
        for (j, dj) in d.iter().enumerate().take(dd) {
            if !dj.is_zero() {
                rem[i - dd + j] -= &c * dj;
            }
        }
        quot[i - dd] = c;
    }
    rem.truncate(dd);
    trim(&mut rem);
    (quot, rem)
}

/// Whether `Σ c_k ζ^k = 0` for `ζ` a primitive `n`-th root of unity, given the
/// coefficients `c_k` of the polynomial (degree below `n`).
pub fn vanishes_at_primitive_root(coeffs: &[BigInt], n: u64) -> bool {
    if is_zero_poly(coeffs) {
        return true;
    }
    let (_, r) = div_rem_monic(coeffs, &cyclotomic(n));
    is_zero_poly(&r)
}
