//! Schlessinger point method: the continued fraction
//!
//!   R(t) = f_0 / (1 + c_1 (t - x_0) / (1 + c_2 (t - x_1) / (1 + ...)))
//!
//! interpolating every support point.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::Real;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RationalFit<T> {
    pub support_x: Vec<T>,
    pub support_f: Vec<T>,
    /// c_1, c_2, ...; `cf_coeffs[j]` multiplies (t - x_j).
    pub cf_coeffs: Vec<T>,
}

fn agrees<T: Real>(a: T, b: T) -> bool {
    (a - b).abs() <= T::epsilon() * T::lit(64.0) * a.abs().max(b.abs())
}

pub fn schlessinger_fit<T: Real>(x: &[T], f: &[T]) -> Result<RationalFit<T>> {
    if x.is_empty() || x.len() != f.len() {
        return Err(Error::InvalidFitData);
    }
    for (i, &xi) in x.iter().enumerate() {
        if !xi.is_finite() || !f[i].is_finite() || x[..i].contains(&xi) {
            return Err(Error::InvalidFitData);
        }
    }
    if f[0] == T::zero() && f.iter().any(|&v| v != T::zero()) {
        return Err(Error::DegeneratePoint { index: 0 });
    }
    let mut fit = RationalFit { support_x: x.to_vec(), support_f: f.to_vec(), cf_coeffs: Vec::new() };
    let mut closed = false;
    for k in 1..x.len() {
        if closed || agrees(fit.eval(x[k]), f[k]) {
            // the fraction already passes through this point
            if !agrees(fit.eval(x[k]), f[k]) {
                return Err(Error::DegeneratePoint { index: k });
            }
            closed = true;
            continue;
        }
        if f[k] == T::zero() {
            return Err(Error::DegeneratePoint { index: k });
        }
        let mut u = f[0] / f[k] - T::one();
        for j in 0..k - 1 {
            if u == T::zero() {
                return Err(Error::DegeneratePoint { index: k });
            }
            u = fit.cf_coeffs[j] * (x[k] - x[j]) / u - T::one();
        }
        let c = u / (x[k] - x[k - 1]);
        if !c.is_finite() {
            return Err(Error::DegeneratePoint { index: k });
        }
        fit.cf_coeffs.push(c);
    }
    Ok(fit)
}

impl<T: Real> RationalFit<T> {
    pub fn eval(&self, t: T) -> T {
        let mut v = T::one();
        for (j, &c) in self.cf_coeffs.iter().enumerate().rev() {
            v = T::one() + c * (t - self.support_x[j]) / v;
        }
        self.support_f[0] / v
    }

    /// Largest relative misfit at the support points.
    pub fn support_error(&self) -> T {
        self.support_x
            .iter()
            .zip(&self.support_f)
            .map(|(&x, &f)| (self.eval(x) - f).abs() / f.abs().max(T::min_positive_value()))
            .fold(T::zero(), T::max)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn single_point_is_constant() {
        let fit = schlessinger_fit(&[2.0_f64], &[3.5]).unwrap();
        assert_eq!(fit.eval(-10.0), 3.5);
        assert_eq!(fit.eval(7.0), 3.5);
    }

    #[test]
    fn constant_data() {
        let x = [0.0_f64, 1.0, 2.5, 4.0];
        let fit = schlessinger_fit(&x, &[7.0; 4]).unwrap();
        assert!(fit.cf_coeffs.is_empty());
        for t in [-3.0, 0.3, 9.0] {
            assert_eq!(fit.eval(t), 7.0);
        }
    }

    #[test]
    fn rational_round_trip() {
        let r = |t: f64| (2.0 + t) / (1.0 + 3.0 * t);
        let x = [0.0, 0.4, 1.1, 1.7, 2.6, 3.3];
        let f: Vec<f64> = x.iter().map(|&t| r(t)).collect();
        let fit = schlessinger_fit(&x, &f).unwrap();
        for i in 0..50 {
            let t = 0.05 + 0.071 * i as f64;
            assert!(((fit.eval(t) - r(t)) / r(t)).abs() < 1e-10, "t={t}");
        }
    }

    #[test]
    fn inconsistent_after_closure() {
        // first three points lie on a line through the origin-free fraction;
        // the fourth breaks it after the fraction has closed
        let x = [0.0_f64, 1.0, 2.0, 3.0];
        let f = [1.0, 1.0, 1.0, 2.0];
        assert_eq!(schlessinger_fit(&x, &f), Err(Error::DegeneratePoint { index: 3 }));
    }

    #[test]
    fn rejects_duplicates() {
        assert_eq!(schlessinger_fit(&[1.0_f64, 1.0], &[2.0, 3.0]), Err(Error::InvalidFitData));
        assert_eq!(schlessinger_fit::<f64>(&[], &[]), Err(Error::InvalidFitData));
    }

    proptest! {
        #[test]
        fn reproduces_support(seed in proptest::collection::vec(0.05_f64..1.0, 2..9)) {
            let mut x = Vec::new();
            let mut acc = 0.0;
            for s in &seed {
                acc += s;
                x.push(acc);
            }
            let f: Vec<f64> = x.iter().map(|&t| 3.0 + (0.7 * t).sin() + 0.1 * t * t).collect();
            if let Ok(fit) = schlessinger_fit(&x, &f) {
                prop_assert!(fit.support_error() < 1e-10);
            }
        }
    }
}
