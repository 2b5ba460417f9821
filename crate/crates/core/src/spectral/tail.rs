//! Sums of `1/(ξ - λ)²` over the far part `|λ| > M` of arithmetic progressions.

/// Trigamma `ψ₁(z) = Σ_{j≥0} 1/(z+j)²` for `z > 0`, with an error bound.
pub fn trigamma(mut z: f64) -> (f64, f64) {
    assert!(z > 0.0, "trigamma needs a positive argument");
    let mut head = 0.0;
    while z < 20.0 {
        head += 1.0 / (z * z);
        z += 1.0;
    }
    let inv = 1.0 / z;
    let inv2 = inv * inv;
    // Asymptotic series with Bernoulli numbers B2..B10.
    let series = inv
        + inv2 / 2.0
        + inv * inv2 * (1.0 / 6.0 - inv2 * (1.0 / 30.0 - inv2 * (1.0 / 42.0 - inv2 * (1.0 / 30.0 - inv2 * 5.0 / 66.0))));
    let next_term = 691.0 / 2730.0 * inv.powi(13);
    let value = head + series;
    (value, next_term + 4.0 * f64::EPSILON * value)
}

/// `Σ 1/(ξ - λ)²` over `λ = offset + step·k` with `|λ| > m`, for `|ξ| < m`.
pub fn progression_tail(xi: f64, offset: f64, step: f64, m: f64) -> (f64, f64) {
    debug_assert!(step > 0.0 && xi.abs() < m);
    // First λ strictly above m.
    let k_right = ((m - offset) / step).floor() + 1.0;
    let z_right = (offset + step * k_right - xi) / step;
    // Last λ strictly below -m.
    let k_left = ((-m - offset) / step).ceil() - 1.0;
    let z_left = (xi - offset - step * k_left) / step;
    let (r, er) = trigamma(z_right);
    let (l, el) = trigamma(z_left);
    let s2 = step * step;
    ((r + l) / s2, (er + el) / s2)
}
