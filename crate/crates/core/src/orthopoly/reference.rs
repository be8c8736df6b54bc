//! Closed-form evaluations used to cross-check the recursive evaluators.
//!
//! Nothing in the production paths calls into this module; it backs the
//! identity tests and the `check` suite.

use super::gamma::pochhammer;

/// Y_n^μ(x) from the terminating ₂F₀(-n, n+2μ+1; ; -x) series.
pub fn bessel_series(mu: f64, n: usize, x: f64) -> f64 {
    let b = n as f64 + 2.0 * mu + 1.0;
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 0..n {
        let kf = k as f64;
        term *= (-(n as f64) + kf) * (b + kf) * (-x) / (kf + 1.0);
        sum += term;
    }
    sum
}

/// Y_n^μ(x) = n! (-x)^n L_n^{-(2n+2μ+1)}(1/x) for x > 0.
pub fn bessel_via_laguerre(mu: f64, n: usize, x: f64) -> f64 {
    let alpha = -(2.0 * n as f64 + 2.0 * mu + 1.0);
    let fact: f64 = (1..=n).map(|k| k as f64).product();
    fact * (-x).powi(n as i32) * laguerre_series(n, alpha, 1.0 / x)
}

/// L_n^α(x) = Σ_k (-1)^k (α+k+1)_{n-k} / ((n-k)! k!) x^k.
pub fn laguerre_series(n: usize, alpha: f64, x: f64) -> f64 {
    let fact = |m: usize| -> f64 { (1..=m).map(|k| k as f64).product() };
    (0..=n)
        .map(|k| {
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            sign * pochhammer(alpha + k as f64 + 1.0, n - k) / (fact(n - k) * fact(k))
                * x.powi(k as i32)
        })
        .sum()
}

/// Closed form of Σ_n Y_n^μ(x) tⁿ/n! for |4xt| < 1.
pub fn bessel_generating_function(mu: f64, x: f64, t: f64) -> f64 {
    let s = (1.0 - 4.0 * x * t).sqrt();
    2f64.powf(2.0 * mu) / s * (1.0 + s).powf(-2.0 * mu) * (2.0 * t / (1.0 + s)).exp()
}

/// Fifth-order accurate first and second derivatives by 5-point central
/// differences.
pub fn central_derivatives(f: impl Fn(f64) -> f64, x: f64, h: f64) -> (f64, f64) {
    let (m2, m1, c, p1, p2) = (f(x - 2.0 * h), f(x - h), f(x), f(x + h), f(x + 2.0 * h));
    let d1 = (m2 - 8.0 * m1 + 8.0 * p1 - p2) / (12.0 * h);
    let d2 = (-m2 + 16.0 * m1 - 30.0 * c + 16.0 * p1 - p2) / (12.0 * h * h);
    (d1, d2)
}
