//! Bessel polynomials Y_n^μ(x) on the positive real line.
//!
//! For μ < -N - 1/2 the family {Y_0, ..., Y_N} is orthogonal on (0, ∞) with
//! weight x^{2μ} e^{-1/x}. Beyond degree N the three-term recursion loses
//! definiteness, so the parameter set carries its own maximum degree.

use super::gamma::{ln_factorial, ln_gamma};
use crate::error::{Error, Result};
use crate::scalar::Real;

/// Parameter μ together with the largest admissible degree N.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BesselParams<T> {
    mu: T,
    max_degree: usize,
}

impl<T: Real> BesselParams<T> {
    pub fn new(mu: T, max_degree: usize) -> Result<Self> {
        let bound = -(T::of(max_degree) + T::lit(0.5));
        if !(mu < bound) {
            return Err(Error::InvalidBesselParams { mu: mu.f64(), max_degree });
        }
        Ok(Self { mu, max_degree })
    }

    /// Parameters with the largest degree the constraint allows for `mu`.
    pub fn with_largest_degree(mu: T) -> Result<Self> {
        let x = -mu - T::lit(0.5);
        if !(x > T::zero()) {
            return Err(Error::InvalidBesselParams { mu: mu.f64(), max_degree: 0 });
        }
        let n = (x.ceil() - T::one()).to_usize().unwrap_or(0);
        Self::new(mu, n)
    }

    pub fn mu(&self) -> T {
        self.mu
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    fn check_degree(&self, n: usize) -> Result<()> {
        if n > self.max_degree {
            Err(Error::DegreeOutOfRange { n, max: self.max_degree })
        } else {
            Ok(())
        }
    }
}

/// Coefficients of 2x Y_n = c0 Y_n + cm Y_{n-1} + cp Y_{n+1}.
pub(crate) fn bessel_recursion_coefficients<T: Real>(mu: T, n: usize) -> (T, T, T) {
    let nf = T::of(n);
    let one = T::one();
    let two = T::lit(2.0);
    let c0 = -mu / ((nf + mu) * (nf + mu + one));
    let cm = -nf / ((nf + mu) * (two * nf + two * mu + one));
    let cp = (nf + two * mu + one) / ((nf + mu + one) * (two * nf + two * mu + one));
    (c0, cm, cp)
}

/// Y_0^μ(x), ..., Y_N^μ(x) by the ascending three-term recursion.
pub fn bessel_sequence<T: Real>(params: &BesselParams<T>, x: T) -> Vec<T> {
    let mu = params.mu;
    let mut out = Vec::with_capacity(params.max_degree + 1);
    out.push(T::one());
    let two = T::lit(2.0);
    let mut prev = T::zero();
    let mut cur = T::one();
    for n in 0..params.max_degree {
        let (c0, cm, cp) = bessel_recursion_coefficients(mu, n);
        let next = ((two * x - c0) * cur - cm * prev) / cp;
        prev = cur;
        cur = next;
        out.push(cur);
    }
    out
}

/// Y_n^μ(x) for n ≤ N.
pub fn bessel_eval<T: Real>(params: &BesselParams<T>, n: usize, x: T) -> Result<T> {
    params.check_degree(n)?;
    let truncated = BesselParams { mu: params.mu, max_degree: n };
    Ok(*bessel_sequence(&truncated, x).last().expect("non-empty"))
}

/// Natural log of the orthogonality constant -n! Γ(-n-2μ) / (2n+2μ+1).
pub fn bessel_ln_norm<T: Real>(params: &BesselParams<T>, n: usize) -> Result<T> {
    params.check_degree(n)?;
    let nf = T::of(n);
    let two = T::lit(2.0);
    let denom = -(two * nf + two * params.mu + T::one());
    Ok(ln_factorial::<T>(n) + ln_gamma(-nf - two * params.mu) - denom.ln())
}

/// ∫_0^∞ x^{2μ} e^{-1/x} [Y_n^μ(x)]² dx = -n! Γ(-n-2μ) / (2n+2μ+1).
///
/// Evaluated through logarithms, so it overflows to +∞ only when the true
/// value is not representable.
pub fn bessel_norm<T: Real>(params: &BesselParams<T>, n: usize) -> Result<T> {
    bessel_ln_norm(params, n).map(T::exp)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::orthopoly::reference;
    use proptest::prelude::*;

    #[test]
    fn constraint_on_mu() {
        assert!(BesselParams::new(-3.6_f64, 3).is_ok());
        assert!(BesselParams::new(-3.5_f64, 3).is_err());
        assert_eq!(BesselParams::with_largest_degree(-3.5_f64).unwrap().max_degree(), 2);
        assert_eq!(BesselParams::with_largest_degree(-3.6_f64).unwrap().max_degree(), 3);
        assert!(BesselParams::with_largest_degree(-0.5_f64).is_err());
    }

    #[test]
    fn degree_zero_and_one() {
        let p = BesselParams::new(-4.7_f64, 4).unwrap();
        for &x in &[0.0, 0.3, 2.0, 11.0] {
            assert_eq!(bessel_eval(&p, 0, x).unwrap(), 1.0);
            let y1 = bessel_eval(&p, 1, x).unwrap();
            let want = 1.0 + (2.0 * -4.7 + 2.0) * x;
            assert!((y1 - want).abs() <= 1e-14 * want.abs().max(1.0));
        }
    }

    #[test]
    fn degree_out_of_range() {
        let p = BesselParams::new(-8.5_f64, 7).unwrap();
        assert_eq!(
            bessel_eval(&p, 8, 1.0),
            Err(Error::DegreeOutOfRange { n: 8, max: 7 })
        );
        assert!(bessel_norm(&p, 8).is_err());
    }

    #[test]
    fn three_paths_agree_at_reference_point() {
        let p = BesselParams::new(-8.5_f64, 7).unwrap();
        let rec = bessel_eval(&p, 3, 0.7).unwrap();
        let series = reference::bessel_series(-8.5, 3, 0.7);
        let lag = reference::bessel_via_laguerre(-8.5, 3, 0.7);
        assert!(((rec - series) / series).abs() < 1e-12);
        assert!(((rec - lag) / lag).abs() < 1e-12);
    }

    #[test]
    fn norm_at_degree_zero() {
        // Γ(17)/16
        let p = BesselParams::new(-8.5_f64, 7).unwrap();
        let got = bessel_norm(&p, 0).unwrap();
        let want = 1_307_674_368_000.0;
        assert!(((got - want) / want).abs() < 1e-13);
    }

    proptest! {
        #[test]
        fn norms_are_positive(mu in -30.0_f64..-0.6, frac in 0.0_f64..1.0) {
            let p = BesselParams::with_largest_degree(mu).unwrap();
            let n = ((p.max_degree() as f64) * frac).floor() as usize;
            prop_assert!(bessel_norm(&p, n).unwrap() > 0.0);
        }

        #[test]
        fn recursion_matches_series(mu in -14.0_f64..-4.6, x in 0.05_f64..5.0, n in 0usize..4) {
            let p = BesselParams::new(mu, 4).unwrap();
            let rec = bessel_eval(&p, n, x).unwrap();
            let series = reference::bessel_series(mu, n, x);
            prop_assert!((rec - series).abs() <= 1e-10 * series.abs().max(1.0));
        }
    }
}
