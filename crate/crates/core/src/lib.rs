//! Bound states of the spiked oscillator V(r) = ℓ(ℓ+1)/2r² + ω²r²/2 + a²/2r⁴.

// Negated comparisons are deliberate: they reject NaN along with out-of-range values.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod benchmarks;
pub mod eigen;
pub mod error;
pub mod hmatrix;
pub mod orthopoly;
pub mod pps;
pub mod reproduce;
pub mod scalar;
pub mod selfcheck;
pub mod spectrum;
pub mod tra;
pub mod wavefn;

pub use error::{Error, Result};
pub use scalar::Real;

pub type PhysicalParamsF64 = tra::PhysicalParams<f64>;
pub type PhysicalParamsF32 = tra::PhysicalParams<f32>;
pub type EnergySpectrumF64 = spectrum::EnergySpectrum<f64>;
pub type PpsSpectrumF64 = pps::PpsSpectrum<f64>;
pub type HamiltonianMatrixF64 = hmatrix::HamiltonianMatrix<f64>;
pub type RadialWavefunctionF64 = wavefn::RadialWavefunction<f64>;
