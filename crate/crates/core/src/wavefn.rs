//! Finite-series bound states
//!
//!   ψ_k(r) = f_0 (ωr²)^{-μ-¼} e^{-ωr²/2} Σ_{n≤N} G_n B_n Y_n^μ(1/(ωr²))
//!
//! sampled on a radial grid, with finite-difference checks against the
//! radial Schrödinger equation.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::orthopoly::bessel_recursion_coefficients;
use crate::scalar::Real;
use crate::spectrum::EnergySpectrum;
use crate::tra::{basis_from_energy, expansion_coeffs, ExpansionCoefficients, PhysicalParams};

/// Minimum number of grid points for the residual check.
pub const MIN_RESIDUAL_POINTS: usize = 2000;

/// Uniform grid r_i = (r_min + i h)/√ω, ends included. Bounds are in units
/// of 1/√ω.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RadialGrid<T> {
    pub r_min: T,
    pub r_max: T,
    pub points: usize,
}

impl<T: Real> Default for RadialGrid<T> {
    fn default() -> Self {
        Self { r_min: T::lit(0.05), r_max: T::lit(10.0), points: 5000 }
    }
}

impl<T: Real> RadialGrid<T> {
    pub fn new(r_min: T, r_max: T, points: usize) -> Result<Self> {
        if !(r_min > T::zero()) || !(r_max > r_min) {
            return Err(Error::InvalidParams(format!("radial grid needs 0 < r_min < r_max, got [{r_min}, {r_max}]")));
        }
        if points < 5 {
            return Err(Error::GridTooCoarse { points, required: 5 });
        }
        Ok(Self { r_min, r_max, points })
    }

    pub fn radii(&self, omega: T) -> Vec<T> {
        let s = omega.sqrt();
        let h = (self.r_max - self.r_min) / T::of(self.points - 1);
        (0..self.points).map(|i| (self.r_min + h * T::of(i)) / s).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Normalization {
    /// ∫ψ² dr = 1 on the grid (trapezoidal rule).
    Unit,
    /// f_0 = 1.
    Unnormalized,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RadialWavefunction<T> {
    pub k: usize,
    pub energy: T,
    /// Series data; `None` for samples of a closed-form function.
    pub coeffs: Option<ExpansionCoefficients<T>>,
    pub r: Vec<T>,
    pub psi: Vec<T>,
    /// Largest polynomial degree N in the series.
    pub n_max: usize,
}

/// Σ F_n Y_n^μ(x) as (sign, ln|·|), using Y_n/xⁿ for x > 1 so that the
/// large powers of x = 1/(ωr²) near the origin stay in the exponent.
fn ln_series<T: Real>(mu: T, f: &[T], x: T) -> (T, T) {
    let n_max = f.len() - 1;
    let big = x > T::one();
    let two = T::lit(2.0);
    let (mut prev, mut cur) = (T::zero(), T::one());
    let mut acc = f[0] * if big { x.powi(-(n_max as i32)) } else { T::one() };
    for n in 0..n_max {
        let (c0, cm, cp) = bessel_recursion_coefficients(mu, n);
        let next = if big {
            ((two - c0 / x) * cur - cm * prev / (x * x)) / cp
        } else {
            ((two * x - c0) * cur - cm * prev) / cp
        };
        prev = cur;
        cur = next;
        let weight = if big { x.powi(n as i32 + 1 - n_max as i32) } else { T::one() };
        acc = acc + f[n + 1] * weight * cur;
    }
    let shift = if big { T::of(n_max) * x.ln() } else { T::zero() };
    (acc.signum(), acc.abs().ln() + shift)
}

fn trapezoid<T: Real>(r: &[T], v: impl Fn(usize) -> T) -> T {
    (1..r.len()).fold(T::zero(), |acc, i| acc + (r[i] - r[i - 1]) * (v(i) + v(i - 1)) * T::lit(0.5))
}

impl<T: Real> RadialWavefunction<T> {
    /// Samples of the series with the given coefficients at energy E.
    pub fn from_coeffs(
        p: &PhysicalParams<T>,
        energy: T,
        k: usize,
        coeffs: ExpansionCoefficients<T>,
        grid: &RadialGrid<T>,
        norm: Normalization,
    ) -> Result<Self> {
        let bp = basis_from_energy(energy, p.omega)?;
        let expo = -bp.mu - T::lit(0.25);
        let r = grid.radii(p.omega);
        let psi: Vec<T> = r
            .iter()
            .map(|&ri| {
                let t = p.omega * ri * ri;
                let (sign, ln_sum) = ln_series(bp.mu, &coeffs.f, T::one() / t);
                sign * (expo * t.ln() - t * T::lit(0.5) + ln_sum).exp()
            })
            .collect();
        let mut w = Self { k, energy, coeffs: Some(coeffs), n_max: bp.n_max, r, psi };
        if norm == Normalization::Unit {
            w.normalize();
        }
        Ok(w)
    }

    /// Wraps samples of an arbitrary function on a grid.
    pub fn from_samples(k: usize, energy: T, r: Vec<T>, psi: Vec<T>) -> Self {
        Self { k, energy, coeffs: None, r, psi, n_max: 0 }
    }

    /// Rescales to unit norm and records the factor in f_0.
    pub fn normalize(&mut self) {
        let n2 = trapezoid(&self.r, |i| self.psi[i] * self.psi[i]);
        let f0 = T::one() / n2.sqrt();
        self.psi.iter_mut().for_each(|v| *v = *v * f0);
        if let Some(c) = self.coeffs.as_mut() {
            c.f0 = c.f0 * f0;
        }
    }

    pub fn max_abs(&self) -> T {
        self.psi.iter().fold(T::zero(), |m, v| m.max(v.abs()))
    }
}

/// ψ_k at energy E from the tridiagonal-representation coefficients.
pub fn build_wavefunction<T: Real>(
    p: &PhysicalParams<T>,
    energy: T,
    k: usize,
    grid: &RadialGrid<T>,
    norm: Normalization,
) -> Result<RadialWavefunction<T>> {
    let bp = basis_from_energy(energy, p.omega)?;
    let coeffs = expansion_coeffs(p, &bp)?;
    RadialWavefunction::from_coeffs(p, energy, k, coeffs, grid, norm)
}

/// max |(-½ d²/dr² + V - E)ψ| / (|E| max|ψ|) over the interior of the span
/// where |ψ| > 1e-8 max|ψ|, with ψ'' by 5-point central differences.
pub fn schrodinger_residual<T: Real>(w: &RadialWavefunction<T>, p: &PhysicalParams<T>) -> Result<T> {
    let n = w.r.len();
    if n < MIN_RESIDUAL_POINTS {
        return Err(Error::GridTooCoarse { points: n, required: MIN_RESIDUAL_POINTS });
    }
    let h = w.r[1] - w.r[0];
    let peak = w.max_abs();
    let floor = peak * T::lit(1e-8);
    let first = w.psi.iter().position(|v| v.abs() > floor).unwrap_or(0).max(2);
    let last = w.psi.iter().rposition(|v| v.abs() > floor).unwrap_or(n - 1).min(n - 3);
    let twelve_h2 = T::lit(12.0) * h * h;
    let mut worst = T::zero();
    for i in first..=last {
        let s = &w.psi;
        let d2 = (-s[i - 2] + T::lit(16.0) * s[i - 1] - T::lit(30.0) * s[i] + T::lit(16.0) * s[i + 1] - s[i + 2])
            / twelve_h2;
        let res = -T::lit(0.5) * d2 + (p.potential(w.r[i]) - w.energy) * s[i];
        worst = worst.max(res.abs());
    }
    Ok(worst / (w.energy.abs() * peak))
}

/// Number of sign changes of the samples.
pub fn node_count<T: Real>(w: &RadialWavefunction<T>) -> usize {
    let signs: Vec<bool> = w.psi.iter().filter(|v| **v != T::zero()).map(|v| *v > T::zero()).collect();
    signs.windows(2).filter(|s| s[0] != s[1]).count()
}

/// Positions of the sign changes (linear interpolation between samples).
pub fn node_positions<T: Real>(w: &RadialWavefunction<T>) -> Vec<T> {
    let mut out = Vec::new();
    for i in 1..w.psi.len() {
        let (a, b) = (w.psi[i - 1], w.psi[i]);
        if (a < T::zero() && b > T::zero()) || (a > T::zero() && b < T::zero()) {
            out.push(w.r[i - 1] + (w.r[i] - w.r[i - 1]) * a / (a - b));
        }
    }
    out
}

/// ∫ψ_a ψ_b dr on the shared grid (trapezoidal rule).
pub fn overlap<T: Real>(a: &RadialWavefunction<T>, b: &RadialWavefunction<T>) -> T {
    assert_eq!(a.r.len(), b.r.len(), "wavefunctions on different grids");
    trapezoid(&a.r, |i| a.psi[i] * b.psi[i])
}

/// The lowest six states with f_0 = 1 on a common grid.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Fig1Data<T> {
    pub r: Vec<T>,
    /// `psi[k][i]` = ψ_k(r_i).
    pub psi: Vec<Vec<T>>,
    pub energies: Vec<T>,
}

pub const FIG1_STATES: usize = 6;

pub fn fig1_data<T: Real>(
    p: &PhysicalParams<T>,
    spectrum: &EnergySpectrum<T>,
    grid: &RadialGrid<T>,
) -> Result<Fig1Data<T>> {
    if spectrum.len() < FIG1_STATES {
        return Err(Error::InsufficientLevels { needed: FIG1_STATES, available: spectrum.len() });
    }
    let mut psi = Vec::with_capacity(FIG1_STATES);
    let energies = spectrum.levels[..FIG1_STATES].to_vec();
    for (k, &e) in energies.iter().enumerate() {
        psi.push(build_wavefunction(p, e, k, grid, Normalization::Unnormalized)?.psi);
    }
    Ok(Fig1Data { r: grid.radii(p.omega), psi, energies })
}
