//! Gamma function and shifted factorials.

use crate::scalar::Real;

// Lanczos approximation, g = 7, nine terms. Relative error is below 1e-15
// for positive arguments in double precision.
const LANCZOS_G: f64 = 7.0;
#[allow(clippy::excessive_precision)]
const LANCZOS_COEF: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

fn lanczos_sum<T: Real>(x: T) -> T {
    // x is the already shifted argument (z - 1).
    let mut acc = T::lit(LANCZOS_COEF[0]);
    for (i, &c) in LANCZOS_COEF.iter().enumerate().skip(1) {
        acc = acc + T::lit(c) / (x + T::of(i));
    }
    acc
}

/// Natural logarithm of |Γ(x)|.
pub fn ln_gamma<T: Real>(x: T) -> T {
    let half = T::lit(0.5);
    if x < half {
        // Reflection: Γ(x)Γ(1-x) = π / sin(πx)
        let s = (T::PI() * x).sin().abs();
        return T::PI().ln() - s.ln() - ln_gamma(T::one() - x);
    }
    let z = x - T::one();
    let t = z + T::lit(LANCZOS_G) + half;
    half * (T::TAU()).ln() + (z + half) * t.ln() - t + lanczos_sum(z).ln()
}

/// Γ(x) for real x away from the non-positive integers.
pub fn gamma<T: Real>(x: T) -> T {
    let half = T::lit(0.5);
    if x < half {
        return T::PI() / ((T::PI() * x).sin() * gamma(T::one() - x));
    }
    // Exact for small positive integers.
    if x == x.round() && x <= T::lit(21.0) {
        let mut acc = T::one();
        let mut k = T::lit(2.0);
        while k < x {
            acc = acc * k;
            k = k + T::one();
        }
        return acc;
    }
    ln_gamma(x).exp()
}

/// Shifted factorial (a)_n = a(a+1)...(a+n-1), evaluated as a running product.
pub fn pochhammer<T: Real>(a: T, n: usize) -> T {
    (0..n).fold(T::one(), |acc, j| acc * (a + T::of(j)))
}

/// ln n! as a float.
pub fn ln_factorial<T: Real>(n: usize) -> T {
    ln_gamma(T::of(n + 1))
}
