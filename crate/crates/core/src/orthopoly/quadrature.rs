//! Generalized Gauss–Laguerre rules for the weight x^α e^{-x} on (0, ∞).

use serde::Serialize;

use super::gamma::ln_gamma;
use crate::eigen::{tridiag_eigenvalues, TridiagonalSymmetric};
use crate::error::{Error, Result};
use crate::scalar::Real;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QuadratureRule<T> {
    pub alpha: T,
    pub nodes: Vec<T>,
    pub weights: Vec<T>,
    /// ln of each weight; finite even where the weight itself underflows.
    pub ln_weights: Vec<T>,
}

impl<T: Real> QuadratureRule<T> {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Σ w_k f(x_k) ≈ ∫ x^α e^{-x} f(x) dx.
    pub fn integrate(&self, f: impl Fn(T) -> T) -> T {
        self.nodes
            .iter()
            .zip(&self.weights)
            .fold(T::zero(), |acc, (&x, &w)| acc + w * f(x))
    }
}

/// Jacobi matrix of the orthonormal Laguerre family L̃_n^α.
pub fn laguerre_jacobi<T: Real>(alpha: T, size: usize) -> Result<TridiagonalSymmetric<T>> {
    let two = T::lit(2.0);
    let diag = (0..size).map(|n| two * T::of(n) + alpha + T::one()).collect();
    let off = (1..size).map(|n| (T::of(n) * (T::of(n) + alpha)).sqrt()).collect();
    TridiagonalSymmetric::new(diag, off)
}

/// K-point Gauss rule exact for polynomials of degree ≤ 2K-1.
///
/// Nodes are the eigenvalues of the K×K Jacobi matrix. Each weight is
/// Γ(1+α) times the squared first component of the unit eigenvector, which
/// for a Jacobi matrix equals Γ(1+α) / Σ_n p_n(x_k)² with p_n the
/// orthonormal polynomials; the sum is accumulated with rescaling so large
/// nodes do not overflow.
pub fn gauss_laguerre_rule<T: Real>(alpha: T, k: usize) -> Result<QuadratureRule<T>> {
    if !(alpha > -T::one()) {
        return Err(Error::InvalidAlpha(alpha.f64()));
    }
    if k == 0 {
        return Err(Error::EmptyRule);
    }
    let jac = laguerre_jacobi(alpha, k)?;
    let nodes = tridiag_eigenvalues(&jac).values;
    let ln_mu0 = ln_gamma(alpha + T::one());
    let ln_weights: Vec<T> = nodes
        .iter()
        .map(|&x| ln_mu0 - ln_christoffel_sum(&jac, x))
        .collect();
    let weights = ln_weights.iter().map(|&l| l.exp()).collect();
    Ok(QuadratureRule { alpha, nodes, weights, ln_weights })
}

// ln Σ_{n<K} p_n(x)², p_n orthonormal with p_0 = 1 (monic-normalized measure).
fn ln_christoffel_sum<T: Real>(jac: &TridiagonalSymmetric<T>, x: T) -> T {
    let big = T::lit(1e60);
    let a = jac.diag();
    let b = jac.offdiag();
    let mut ln_scale = T::zero();
    let mut prev = T::zero();
    let mut cur = T::one();
    let mut sum = T::one();
    for n in 0..b.len() {
        let back = if n == 0 { T::zero() } else { b[n - 1] };
        let next = ((x - a[n]) * cur - back * prev) / b[n];
        prev = cur;
        cur = next;
        sum = sum + cur * cur;
        if cur.abs() > big {
            prev = prev / big;
            cur = cur / big;
            sum = sum / (big * big);
            ln_scale = ln_scale + T::lit(2.0) * big.ln();
        }
    }
    sum.ln() + ln_scale
}
