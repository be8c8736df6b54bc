//! Classical special-function layer: Gamma and shifted factorials, Bessel
//! polynomials on the positive real line, generalized Laguerre polynomials
//! and Gauss–Laguerre quadrature.

mod bessel;
mod gamma;
mod laguerre;
mod quadrature;
pub mod reference;

pub use bessel::{bessel_eval, bessel_ln_norm, bessel_norm, bessel_sequence, BesselParams};
pub(crate) use bessel::bessel_recursion_coefficients;
pub use gamma::{gamma, ln_factorial, ln_gamma, pochhammer};
pub use laguerre::{laguerre_eval, laguerre_sequence, scaled_orthonormal_laguerre};
pub use quadrature::{gauss_laguerre_rule, laguerre_jacobi, QuadratureRule};
