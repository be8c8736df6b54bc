use super::gamma::ln_gamma;
use crate::scalar::Real;

/// Generalized Laguerre polynomials L_0^α(x), ..., L_n^α(x).
pub fn laguerre_sequence<T: Real>(n: usize, alpha: T, x: T) -> Vec<T> {
    let mut out = Vec::with_capacity(n + 1);
    out.push(T::one());
    if n == 0 {
        return out;
    }
    let mut prev = T::one();
    let mut cur = T::one() + alpha - x;
    out.push(cur);
    for k in 1..n {
        let kf = T::of(k);
        let next = ((T::lit(2.0) * kf + T::one() + alpha - x) * cur - (kf + alpha) * prev)
            / (kf + T::one());
        prev = cur;
        cur = next;
        out.push(cur);
    }
    out
}

/// L_n^α(x) by the ascending three-term recurrence.
pub fn laguerre_eval<T: Real>(n: usize, alpha: T, x: T) -> T {
    *laguerre_sequence(n, alpha, x).last().expect("non-empty")
}

/// Values s·L̃_k^α(x) for k < `count`, where L̃_k = √(k!/Γ(k+α+1)) L_k^α
/// is orthonormal under x^α e^{-x} and ln s = `ln_scale`.
///
/// The scale is folded into the seed, so passing ln √w for a quadrature
/// weight w keeps the products bounded even where w alone would underflow
/// next to large polynomial values.
pub fn scaled_orthonormal_laguerre<T: Real>(count: usize, alpha: T, x: T, ln_scale: T) -> Vec<T> {
    let mut out = Vec::with_capacity(count);
    if count == 0 {
        return out;
    }
    let one = T::one();
    let two = T::lit(2.0);
    let mut prev = T::zero();
    let mut cur = (ln_scale - T::lit(0.5) * ln_gamma(alpha + one)).exp();
    out.push(cur);
    for k in 0..count.saturating_sub(1) {
        let kf = T::of(k);
        let back = (kf * (kf + alpha)).sqrt();
        let fwd = ((kf + one) * (kf + alpha + one)).sqrt();
        let next = ((two * kf + alpha + one - x) * cur - back * prev) / fwd;
        prev = cur;
        cur = next;
        out.push(cur);
    }
    out
}
