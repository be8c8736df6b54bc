//! Hamiltonian matrix in the Laguerre oscillator basis
//!
//!   χ_n(r) ∝ C_n (λ²r²)^{(ℓ+1)/2} e^{-λ²r²/2} L_n^ν(λ²r²),  ν = ℓ + ½,
//!   C_n = √(n!/Γ(n+ℓ+3/2)),
//!
//! and its lowest eigenvalues.

use serde::Serialize;

use crate::eigen::symmetric_lowest;
use crate::error::{Error, Result};
use crate::orthopoly::{gauss_laguerre_rule, laguerre_eval, ln_gamma, ln_factorial, scaled_orthonormal_laguerre};
use crate::scalar::Real;
use crate::spectrum::EnergySpectrum;
use crate::tra::PhysicalParams;

/// Default basis dimension.
pub const DEFAULT_SIZE: usize = 100;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LaguerreBasis<T> {
    pub lambda2: T,
    pub nu: T,
    pub size: usize,
    pub cn: Vec<T>,
}

impl<T: Real> LaguerreBasis<T> {
    pub fn new(ell: u32, lambda2: T, size: usize) -> Result<Self> {
        if size == 0 {
            return Err(Error::EmptyMatrix);
        }
        if !(lambda2 > T::zero()) || !lambda2.is_finite() {
            return Err(Error::InvalidParams(format!("lambda^2 must be positive, got {lambda2}")));
        }
        let nu = T::from_u32(ell).unwrap() + T::lit(0.5);
        let cn = (0..size)
            .map(|n| (T::lit(0.5) * (ln_factorial::<T>(n) - ln_gamma(T::of(n) + nu + T::one()))).exp())
            .collect();
        Ok(Self { lambda2, nu, size, cn })
    }

    /// λ² = ω.
    pub fn for_params(p: &PhysicalParams<T>, size: usize) -> Result<Self> {
        Self::new(p.ell, p.omega, size)
    }
}

/// How the singular overlap ∫ x^{ℓ-3/2} e^{-x} L_n^ν L_m^ν dx is evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum OverlapQuadrature {
    /// Gauss rule of the basis weight x^ν e^{-x} with 1/x² sampled at its
    /// nodes. `nodes = None` uses as many nodes as basis functions.
    BasisWeight { nodes: Option<usize> },
    /// Gauss rule of the weight x^{ℓ-3/2} e^{-x}, exact for the polynomial
    /// products of the basis (needs ℓ ≥ 1).
    ExactSingular,
}

impl Default for OverlapQuadrature {
    fn default() -> Self {
        Self::BasisWeight { nodes: None }
    }
}

/// ∫₀^∞ x^{ℓ-3/2} e^{-x} L_n^{ℓ+½}(x) L_m^{ℓ+½}(x) dx with a `k`-point Gauss
/// rule of that weight.
pub fn singular_overlap<T: Real>(n: usize, m: usize, ell: u32, k: usize) -> Result<T> {
    if ell == 0 {
        return Err(Error::NonIntegrable { ell });
    }
    if k < n + m + 1 {
        return Err(Error::RuleTooSmall { nodes: k, degree: n + m });
    }
    let l = T::from_u32(ell).unwrap();
    let nu = l + T::lit(0.5);
    let rule = gauss_laguerre_rule(l - T::lit(1.5), k)?;
    Ok(rule.integrate(|x| laguerre_eval(n, nu, x) * laguerre_eval(m, nu, x)))
}

/// C_n C_m ∫ x^{ℓ-3/2} e^{-x} L_n^ν L_m^ν dx for all n, m < size.
fn normalized_overlaps<T: Real>(ell: u32, size: usize, quad: OverlapQuadrature) -> Result<Vec<Vec<T>>> {
    let l = T::from_u32(ell).unwrap();
    let nu = l + T::lit(0.5);
    let (rule, inv_sq) = match quad {
        OverlapQuadrature::BasisWeight { nodes } => (gauss_laguerre_rule(nu, nodes.unwrap_or(size))?, true),
        OverlapQuadrature::ExactSingular => {
            if ell == 0 {
                return Err(Error::NonIntegrable { ell });
            }
            (gauss_laguerre_rule(l - T::lit(1.5), 2 * size)?, false)
        }
    };
    // columns √w_k L̃_n(x_k) / x_k (or without 1/x_k for the exact rule)
    let cols: Vec<Vec<T>> = rule
        .nodes
        .iter()
        .zip(&rule.ln_weights)
        .map(|(&x, &lw)| {
            let ln_scale = T::lit(0.5) * lw - if inv_sq { x.ln() } else { T::zero() };
            scaled_orthonormal_laguerre(size, nu, x, ln_scale)
        })
        .collect();
    let mut s = vec![vec![T::zero(); size]; size];
    for n in 0..size {
        for m in 0..=n {
            let v = cols.iter().fold(T::zero(), |acc, c| acc + c[n] * c[m]);
            s[n][m] = v;
            s[m][n] = v;
        }
    }
    Ok(s)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HamiltonianMatrix<T> {
    pub entries: Vec<Vec<T>>,
    pub params: PhysicalParams<T>,
    pub basis: LaguerreBasis<T>,
}

/// H_nm = (λ⁴a²/2) C_n C_m I_nm
///      + (λ²/2)(1 + ω²/λ⁴)(2n+ℓ+3/2) δ_nm
///      + (λ²/2)(1 - ω²/λ⁴)[√(n(n+ℓ+½)) δ_{n,m+1} + √((n+1)(n+ℓ+3/2)) δ_{n,m-1}]
pub fn hamiltonian<T: Real>(
    p: &PhysicalParams<T>,
    basis: &LaguerreBasis<T>,
    quad: OverlapQuadrature,
) -> Result<HamiltonianMatrix<T>> {
    if p.ell == 0 && p.a > T::zero() {
        log::warn!("ell = 0: the overlap integrand x^(-3/2) is not integrable at the origin; quadrature values are not converged");
    }
    let size = basis.size;
    let half = T::lit(0.5);
    let lam2 = basis.lambda2;
    let ratio = p.omega * p.omega / (lam2 * lam2);
    let l = T::from_u32(p.ell).unwrap();
    let diag_c = half * lam2 * (T::one() + ratio);
    let off_c = half * lam2 * (T::one() - ratio);
    let mut h = if p.a == T::zero() {
        vec![vec![T::zero(); size]; size]
    } else {
        let pot = half * lam2 * lam2 * p.a2();
        let mut s = normalized_overlaps(p.ell, size, quad)?;
        s.iter_mut().flatten().for_each(|v| *v = *v * pot);
        s
    };
    for n in 0..size {
        let nf = T::of(n);
        h[n][n] = h[n][n] + diag_c * (T::lit(2.0) * nf + l + T::lit(1.5));
        if n + 1 < size {
            let b = off_c * ((nf + T::one()) * (nf + l + T::lit(1.5))).sqrt();
            h[n][n + 1] = h[n][n + 1] + b;
            h[n + 1][n] = h[n + 1][n] + b;
        }
    }
    Ok(HamiltonianMatrix { entries: h, params: *p, basis: basis.clone() })
}

/// The lowest `count` eigenvalues of H with their ladder deviations.
pub fn matrix_spectrum<T: Real>(h: &HamiltonianMatrix<T>, count: usize) -> Result<EnergySpectrum<T>> {
    if count > h.basis.size {
        return Err(Error::InsufficientLevels { needed: count, available: h.basis.size });
    }
    Ok(EnergySpectrum::new(h.params, symmetric_lowest(&h.entries, count)?))
}

/// Convenience: λ² = ω, `size` basis functions, default quadrature.
pub fn matrix_levels<T: Real>(p: &PhysicalParams<T>, size: usize, count: usize) -> Result<EnergySpectrum<T>> {
    let basis = LaguerreBasis::for_params(p, size)?;
    matrix_spectrum(&hamiltonian(p, &basis, OverlapQuadrature::default())?, count)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::orthopoly::gamma;
    use proptest::prelude::*;

    #[test]
    fn overlap_examples() {
        let g15 = gamma(1.5_f64);
        let v: f64 = singular_overlap(0, 0, 2, 1).unwrap();
        assert!((v - g15).abs() < 1e-14);
        let v: f64 = singular_overlap(1, 0, 2, 2).unwrap();
        assert!((v - 2.0 * g15).abs() < 1e-13);
        for (n, m) in [(3, 5), (0, 7), (4, 4)] {
            let a: f64 = singular_overlap(n, m, 3, 20).unwrap();
            let b: f64 = singular_overlap(m, n, 3, 20).unwrap();
            assert_eq!(a, b);
        }
    }

    #[test]
    fn overlap_errors() {
        assert_eq!(singular_overlap::<f64>(0, 0, 0, 4), Err(Error::NonIntegrable { ell: 0 }));
        assert_eq!(singular_overlap::<f64>(3, 2, 2, 5), Err(Error::RuleTooSmall { nodes: 5, degree: 5 }));
    }

    #[test]
    fn overlap_stable_once_exact() {
        let base: f64 = singular_overlap(4, 6, 3, 11).unwrap();
        for k in [15, 30, 60] {
            let v: f64 = singular_overlap(4, 6, 3, k).unwrap();
            assert!((v - base).abs() <= 1e-12 * base.abs());
        }
    }

    #[test]
    fn basis_is_orthonormal_under_its_weight() {
        let b = LaguerreBasis::new(3, 1.0_f64, 8).unwrap();
        let rule = gauss_laguerre_rule(b.nu, 12).unwrap();
        for n in 0..8 {
            for m in 0..8 {
                let v = rule.integrate(|x| b.cn[n] * b.cn[m] * laguerre_eval(n, b.nu, x) * laguerre_eval(m, b.nu, x));
                let want = if n == m { 1.0 } else { 0.0 };
                assert!((v - want).abs() < 1e-12, "{n} {m} {v}");
            }
        }
    }

    #[test]
    fn exact_rule_matches_direct_overlap() {
        let ell = 4;
        let b = LaguerreBasis::new(ell, 1.0_f64, 6).unwrap();
        let s = normalized_overlaps::<f64>(ell, 6, OverlapQuadrature::ExactSingular).unwrap();
        for n in 0..6 {
            for m in 0..6 {
                let direct: f64 = singular_overlap(n, m, ell, 13).unwrap();
                let want = b.cn[n] * b.cn[m] * direct;
                assert!((s[n][m] - want).abs() < 1e-12 * want.abs().max(1e-3));
            }
        }
    }

    #[test]
    fn pure_oscillator_is_diagonal() {
        let p = PhysicalParams::new(1.3_f64, 0.0, 2).unwrap();
        let h = hamiltonian(&p, &LaguerreBasis::for_params(&p, 10).unwrap(), OverlapQuadrature::default()).unwrap();
        for n in 0..10 {
            for m in 0..10 {
                let want = if n == m { 1.3 * (2.0 * n as f64 + 3.5) } else { 0.0 };
                assert!((h.entries[n][m] - want).abs() < 1e-13);
            }
        }
    }

    #[test]
    fn diagonal_bounded_below_and_symmetric() {
        let p = PhysicalParams::new(1.0_f64, 0.5, 5).unwrap();
        let h = hamiltonian(&p, &LaguerreBasis::for_params(&p, 30).unwrap(), OverlapQuadrature::default()).unwrap();
        for n in 0..30 {
            assert!(h.entries[n][n] >= 6.5);
            for m in 0..30 {
                assert_eq!(h.entries[n][m], h.entries[m][n]);
            }
        }
    }

    #[test]
    fn table_three_ground_state() {
        let p = PhysicalParams::new(1.0_f64, 0.5, 5).unwrap();
        let s = matrix_levels(&p, 100, 1).unwrap();
        assert!((s.deltas[0] - 0.005038137).abs() < 1e-9);
    }

    #[test]
    fn too_many_levels() {
        let p = PhysicalParams::new(1.0_f64, 0.5, 5).unwrap();
        let h = hamiltonian(&p, &LaguerreBasis::for_params(&p, 4).unwrap(), OverlapQuadrature::default()).unwrap();
        assert!(matrix_spectrum(&h, 5).is_err());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(12))]
        #[test]
        fn variational_monotonicity(m in 6_usize..30, ell in 2_u32..8) {
            let p = PhysicalParams::new(1.0_f64, 0.5, ell).unwrap();
            let b = LaguerreBasis::for_params(&p, m).unwrap();
            let b2 = LaguerreBasis::for_params(&p, m + 5).unwrap();
            let q = OverlapQuadrature::ExactSingular;
            let e1 = matrix_spectrum(&hamiltonian(&p, &b, q).unwrap(), 3).unwrap();
            let e2 = matrix_spectrum(&hamiltonian(&p, &b2, q).unwrap(), 3).unwrap();
            for (a, b) in e1.levels.iter().zip(&e2.levels) {
                prop_assert!(*b <= *a + 1e-10);
            }
        }

        #[test]
        fn oscillator_spectrum_any_scale(ratio in 0.8_f64..1.25, omega in 0.5_f64..2.0, ell in 0_u32..6) {
            let p = PhysicalParams::new(omega, 0.0, ell).unwrap();
            let b = LaguerreBasis::new(ell, ratio * omega, 40).unwrap();
            let s = matrix_spectrum(&hamiltonian(&p, &b, OverlapQuadrature::default()).unwrap(), 10).unwrap();
            for d in &s.deltas {
                prop_assert!(d.abs() < 1e-10, "deviation {d}");
            }
        }
    }
}
