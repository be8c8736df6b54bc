//! Energy-dependent tridiagonal representation of the spiked oscillator
//!
//!   V(r) = ℓ(ℓ+1)/(2r²) + ω²r²/2 + a²/(2r⁴)
//!
//! in the basis x^α e^{-1/(2x)} Y_n^μ(x), x = 1/(ωr²). The basis parameter is
//! tied to the energy by 2μ = -E/ω and the expansion coefficients obey a
//! three-term recursion whose symmetric form is the matrix T(E).

use serde::Serialize;

use crate::eigen::TridiagonalSymmetric;
use crate::error::{Error, Result};
use crate::scalar::Real;

/// Oscillator frequency ω, singularity length a and angular momentum ℓ
/// (atomic units).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PhysicalParams<T> {
    pub omega: T,
    pub a: T,
    pub ell: u32,
}

impl<T: Real> PhysicalParams<T> {
    pub fn new(omega: T, a: T, ell: u32) -> Result<Self> {
        if !(omega > T::zero()) || !omega.is_finite() {
            return Err(Error::InvalidParams(format!("omega must be positive, got {omega}")));
        }
        if !(a >= T::zero()) || !a.is_finite() {
            return Err(Error::InvalidParams(format!("a must be non-negative, got {a}")));
        }
        Ok(Self { omega, a, ell })
    }

    /// Parameters given a² instead of a.
    pub fn from_a2(omega: T, a2: T, ell: u32) -> Result<Self> {
        if !(a2 >= T::zero()) {
            return Err(Error::InvalidParams(format!("a^2 must be non-negative, got {a2}")));
        }
        Self::new(omega, a2.sqrt(), ell)
    }

    pub fn a2(&self) -> T {
        self.a * self.a
    }

    /// The eigenvalue (ℓ+½)² every physical energy must produce.
    pub fn target_eigenvalue(&self) -> T {
        let l = T::from_u32(self.ell).unwrap() + T::lit(0.5);
        l * l
    }

    /// Pure-oscillator level ω(2k + ℓ + 3/2).
    pub fn oscillator_level(&self, k: usize) -> T {
        self.omega * (T::lit(2.0) * T::of(k) + T::from_u32(self.ell).unwrap() + T::lit(1.5))
    }

    /// V(r).
    pub fn potential(&self, r: T) -> T {
        let l = T::from_u32(self.ell).unwrap();
        let half = T::lit(0.5);
        let r2 = r * r;
        half * l * (l + T::one()) / r2 + half * self.omega * self.omega * r2 + half * self.a2() / (r2 * r2)
    }
}

/// Basis data fixed by an energy: μ = -E/(2ω), α = μ + 1/4, ε = E/ω and the
/// largest polynomial degree N (largest integer strictly below -μ - 1/2).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BasisParams<T> {
    pub mu: T,
    pub alpha: T,
    pub eps: T,
    pub n_max: usize,
}

/// Largest integer strictly less than `x` (x > 0).
fn largest_integer_below<T: Real>(x: T) -> usize {
    (x.ceil() - T::one()).to_usize().unwrap_or(0)
}

pub fn basis_from_energy<T: Real>(energy: T, omega: T) -> Result<BasisParams<T>> {
    if !(energy > omega) {
        return Err(Error::EnergyTooSmall { energy: energy.f64(), omega: omega.f64() });
    }
    let eps = energy / omega;
    let mu = -eps / T::lit(2.0);
    Ok(BasisParams {
        mu,
        alpha: mu + T::lit(0.25),
        eps,
        n_max: largest_integer_below(-mu - T::lit(0.5)),
    })
}

/// Largest degree N supported by an energy window [.., e_max].
pub fn max_degree_for<T: Real>(e_max: T, omega: T) -> Result<usize> {
    basis_from_energy(e_max, omega).map(|b| b.n_max)
}

/// Argument pair (z, γ) of the polynomials B_n^μ(z; γ).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TraPolyParams<T> {
    pub z: T,
    pub gamma: T,
}

/// γ = -16/(ωa²), z = -(4/(ωa²))(ℓ+½)².
pub fn tra_params<T: Real>(p: &PhysicalParams<T>) -> Result<TraPolyParams<T>> {
    if p.a == T::zero() {
        return Err(Error::SingularityOff);
    }
    let wa2 = p.omega * p.a2();
    Ok(TraPolyParams {
        z: -(T::lit(4.0) / wa2) * p.target_eigenvalue(),
        gamma: -T::lit(16.0) / wa2,
    })
}

/// Diagonal a_n and squared off-diagonal b_n² of T for a given μ and
/// truncation N, before any realness requirement.
///
/// The squares stay meaningful when μ violates μ < -N - 1/2 (some b_n² turn
/// negative); the determinant of T - yI only ever needs the squares.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RecursionCoefficients<T> {
    pub diag: Vec<T>,
    pub offdiag_sq: Vec<T>,
}

pub fn recursion_coefficients<T: Real>(
    p: &PhysicalParams<T>,
    mu: T,
    n_max: usize,
) -> Result<RecursionCoefficients<T>> {
    let one = T::one();
    let two = T::lit(2.0);
    let c = p.omega * p.a2() / two;
    let pole = |n: usize| Error::RecursionPole { n, mu: mu.f64() };
    let mut diag = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        let nf = T::of(n);
        let den = (nf + mu) * (nf + mu + one);
        if den == T::zero() {
            return Err(pole(n));
        }
        let s = two * nf + two * mu + one;
        let v = s * s + mu * c / den;
        if !v.is_finite() {
            return Err(pole(n));
        }
        diag.push(v);
    }
    let mut offdiag_sq = Vec::with_capacity(n_max);
    for n in 0..n_max {
        let nf = T::of(n);
        let shift = nf + mu + one;
        let den = (two * nf + two * mu + one) * (two * nf + two * mu + three::<T>());
        if shift == T::zero() || den == T::zero() {
            return Err(pole(n));
        }
        let arg = -(nf + one) * (nf + two * mu + one) / den;
        let v = (c / shift) * (c / shift) * arg;
        if !v.is_finite() {
            return Err(pole(n));
        }
        offdiag_sq.push(v);
    }
    Ok(RecursionCoefficients { diag, offdiag_sq })
}

fn three<T: Real>() -> T {
    T::lit(3.0)
}

/// Symmetric tridiagonal T with
///
///   a_n = (2n+2μ+1)² + (μωa²/2) / ((n+μ)(n+μ+1))
///   b_n = (ωa²/2)/(n+μ+1) · √(-(n+1)(n+2μ+1) / ((2n+2μ+1)(2n+2μ+3)))
pub fn tridiag_matrix<T: Real>(
    p: &PhysicalParams<T>,
    bp: &BasisParams<T>,
) -> Result<TridiagonalSymmetric<T>> {
    tridiag_matrix_sized(p, bp.mu, bp.n_max)
}

/// As [`tridiag_matrix`] with an explicit truncation.
pub fn tridiag_matrix_sized<T: Real>(
    p: &PhysicalParams<T>,
    mu: T,
    n_max: usize,
) -> Result<TridiagonalSymmetric<T>> {
    let rc = recursion_coefficients(p, mu, n_max)?;
    let one = T::one();
    let two = T::lit(2.0);
    let c = p.omega * p.a2() / two;
    let mut off = Vec::with_capacity(n_max);
    for n in 0..n_max {
        let nf = T::of(n);
        let arg = -(nf + one) * (nf + two * mu + one)
            / ((two * nf + two * mu + one) * (two * nf + two * mu + three::<T>()));
        if arg < T::zero() {
            return Err(Error::NonrealOffdiag { n, arg: arg.f64() });
        }
        off.push(c / (nf + mu + one) * arg.sqrt());
    }
    TridiagonalSymmetric::new(rc.diag, off)
}

/// Coefficients of the non-symmetric recursion for P_n written as
/// y P_n = d_n P_n + l_n P_{n-1} + u_n P_{n+1}.
#[derive(Debug, Clone, PartialEq)]
pub struct PRecursion<T> {
    pub lower: Vec<T>,
    pub diag: Vec<T>,
    pub upper: Vec<T>,
}

pub fn p_recursion<T: Real>(p: &PhysicalParams<T>, mu: T, n_max: usize) -> Result<PRecursion<T>> {
    let rc = recursion_coefficients(p, mu, n_max)?;
    let one = T::one();
    let two = T::lit(2.0);
    let c = p.omega * p.a2() / two;
    let mut lower = Vec::with_capacity(n_max + 1);
    let mut upper = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        let nf = T::of(n);
        let s = two * nf + two * mu + one;
        lower.push(c * nf / ((nf + mu) * s));
        upper.push(-c * (nf + two * mu + one) / ((nf + mu + one) * s));
    }
    Ok(PRecursion { lower, diag: rc.diag, upper })
}

/// B_0^μ(z;γ), ..., B_N^μ(z;γ) from the ascending recursion
///
///   z B_n = [-2μ/((n+μ)(n+μ+1)) + γ(n+μ+½)²] B_n
///           - n/((n+μ)(n+μ+½)) B_{n-1} + (n+2μ+1)/((n+μ+1)(n+μ+½)) B_{n+1}
///
/// with B_0 = 1, B_{-1} = 0.
pub fn b_poly_sequence<T: Real>(tp: &TraPolyParams<T>, mu: T, n_max: usize) -> Result<Vec<T>> {
    let one = T::one();
    let half = T::lit(0.5);
    let two = T::lit(2.0);
    let mut out = Vec::with_capacity(n_max + 1);
    out.push(one);
    let mut prev = T::zero();
    let mut cur = one;
    for n in 0..n_max {
        let nf = T::of(n);
        let (d0, d1, dh) = (nf + mu, nf + mu + one, nf + mu + half);
        let cp_num = nf + two * mu + one;
        if d0 == T::zero() || d1 == T::zero() || dh == T::zero() || cp_num == T::zero() {
            return Err(Error::RecursionPole { n, mu: mu.f64() });
        }
        let c0 = -two * mu / (d0 * d1) + tp.gamma * dh * dh;
        let cm = -nf / (d0 * dh);
        let cp = cp_num / (d1 * dh);
        let next = ((tp.z - c0) * cur - cm * prev) / cp;
        prev = cur;
        cur = next;
        out.push(cur);
    }
    Ok(out)
}

/// G_n = (2n+2μ+1)(2μ+1)_n / ((-1)ⁿ n! (2μ+1)) as a running product.
pub fn g_factors<T: Real>(mu: T, n_max: usize) -> Vec<T> {
    let one = T::one();
    let two = T::lit(2.0);
    let base = two * mu + one;
    let mut ratio = one; // (2μ+1)_n / ((-1)^n n!)
    (0..=n_max)
        .map(|n| {
            if n > 0 {
                ratio = ratio * (base + T::of(n - 1)) / -T::of(n);
            }
            (two * T::of(n) + base) * ratio / base
        })
        .collect()
}

/// Expansion coefficients of ψ in the basis: F_n = G_n B_n with F_0 = 1.
///
/// `f0` is the overall normalization f_0(E); it starts at 1 and is set by
/// the wavefunction builder.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExpansionCoefficients<T> {
    pub f: Vec<T>,
    pub g: Vec<T>,
    pub b: Vec<T>,
    pub f0: T,
}

pub fn expansion_coeffs<T: Real>(
    p: &PhysicalParams<T>,
    bp: &BasisParams<T>,
) -> Result<ExpansionCoefficients<T>> {
    let tp = tra_params(p)?;
    let b = b_poly_sequence(&tp, bp.mu, bp.n_max)?;
    let g = g_factors(bp.mu, bp.n_max);
    let f = g.iter().zip(&b).map(|(&g, &b)| g * b).collect();
    Ok(ExpansionCoefficients { f, g, b, f0: T::one() })
}

/// Residuals of
///
///   (ℓ+½)² F_n = [a_n] F_n + (ωa²/2)[(n+1)/((n+μ+1)(2n+2μ+3)) F_{n+1}
///                                  - (n+2μ)/((n+μ)(2n+2μ-1)) F_{n-1}]
///
/// for n = 0..len-2, relative to the largest term of each row.
pub fn f_recursion_residuals<T: Real>(p: &PhysicalParams<T>, mu: T, f: &[T]) -> Result<Vec<T>> {
    let n_max = f.len().saturating_sub(1);
    let rc = recursion_coefficients(p, mu, n_max)?;
    let one = T::one();
    let two = T::lit(2.0);
    let c = p.omega * p.a2() / two;
    let y = p.target_eigenvalue();
    Ok((0..n_max)
        .map(|n| {
            let nf = T::of(n);
            let up = c * (nf + one) / ((nf + mu + one) * (two * nf + two * mu + T::lit(3.0))) * f[n + 1];
            let down = if n == 0 {
                T::zero()
            } else {
                -c * (nf + two * mu) / ((nf + mu) * (two * nf + two * mu - one)) * f[n - 1]
            };
            let lhs = y * f[n];
            let diag = rc.diag[n] * f[n];
            let scale = lhs.abs().max(diag.abs()).max(up.abs()).max(down.abs());
            (lhs - diag - up - down).abs() / scale
        })
        .collect())
}

/// Residuals of the P_n recursion rows n = 0..len-2, relative to the
/// largest term of each row.
pub fn p_recursion_residuals<T: Real>(p: &PhysicalParams<T>, mu: T, pn: &[T]) -> Result<Vec<T>> {
    let n_max = pn.len().saturating_sub(1);
    let rec = p_recursion(p, mu, n_max)?;
    let y = p.target_eigenvalue();
    Ok((0..n_max)
        .map(|n| {
            let down = if n == 0 { T::zero() } else { rec.lower[n] * pn[n - 1] };
            let up = rec.upper[n] * pn[n + 1];
            let lhs = y * pn[n];
            let diag = rec.diag[n] * pn[n];
            let scale = lhs.abs().max(diag.abs()).max(up.abs()).max(down.abs());
            (lhs - diag - up - down).abs() / scale
        })
        .collect())
}

/// P_n = (-1)ⁿ n! (2μ+1) F_n / ((2n+2μ+1)(2μ+1)_n), i.e. F_n / G_n.
pub fn f_to_p<T: Real>(mu: T, f: &[T]) -> Vec<T> {
    let g = g_factors(mu, f.len().saturating_sub(1));
    f.iter().zip(g).map(|(&f, g)| f / g).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eigen::{det_recurrence, tridiag_eigenvalues};
    use crate::orthopoly::pochhammer;
    use proptest::prelude::*;

    fn params(omega: f64, a: f64, ell: u32) -> PhysicalParams<f64> {
        PhysicalParams::new(omega, a, ell).unwrap()
    }

    #[test]
    fn basis_examples() {
        let b = basis_from_energy(2.0, 1.0).unwrap();
        assert_eq!((b.mu, b.n_max), (-1.0, 0));
        let b = basis_from_energy(21.0, 1.0).unwrap();
        assert_eq!((b.mu, b.n_max), (-10.5, 9));
        let b = basis_from_energy(6.505038139_f64, 1.0).unwrap();
        assert!((b.mu + 3.2525190695).abs() < 1e-12);
        assert_eq!(b.n_max, 2);
        assert_eq!(b.alpha, b.mu + 0.25);
        assert_eq!(2.0 * b.mu, -b.eps);
        assert!(matches!(basis_from_energy(1.0, 1.0), Err(Error::EnergyTooSmall { .. })));
        assert_eq!(max_degree_for(26.0, 1.0).unwrap(), 12);
    }

    #[test]
    fn tra_param_examples() {
        let t = tra_params(&params(1.0, 0.5, 5)).unwrap();
        assert_eq!((t.gamma, t.z), (-64.0, -484.0));
        let t = tra_params(&params(1.0, 1.0, 0)).unwrap();
        assert_eq!((t.gamma, t.z), (-16.0, -1.0));
        let t = tra_params(&params(2.0, 0.5, 3)).unwrap();
        assert_eq!((t.gamma, t.z), (-32.0, -98.0));
        assert_eq!(tra_params(&params(1.0, 0.0, 3)), Err(Error::SingularityOff));
    }

    #[test]
    fn diagonal_example_and_pole() {
        let p = params(1.0, 0.5, 5);
        let t = tridiag_matrix_sized(&p, -3.25, 0).unwrap();
        let want = 30.25 - 0.40625 / 7.3125;
        assert!((t.diag()[0] - want).abs() < 1e-14);
        assert!(matches!(
            tridiag_matrix_sized(&p, -1.0, 0),
            Err(Error::RecursionPole { n: 0, .. })
        ));
    }

    #[test]
    fn fixed_size_beyond_constraint_is_not_real() {
        let p = params(1.0, 0.5, 5);
        // μ = -3.25 supports N = 2 only
        assert!(tridiag_matrix_sized(&p, -3.25, 2).is_ok());
        assert!(matches!(
            tridiag_matrix_sized(&p, -3.25, 4),
            Err(Error::NonrealOffdiag { .. })
        ));
        // the squared form is still available
        let rc = recursion_coefficients(&p, -3.25, 4).unwrap();
        assert!(rc.offdiag_sq.iter().any(|&s| s < 0.0));
    }

    #[test]
    fn b_sequence_first_terms() {
        let tp = TraPolyParams { z: -484.0, gamma: -64.0 };
        let mu: f64 = -3.2525190695;
        let b = b_poly_sequence(&tp, mu, 2).unwrap();
        assert_eq!(b[0], 1.0);
        let want = (mu + 1.0) * (mu + 0.5) / (2.0 * mu + 1.0)
            * (tp.z + 2.0 / (mu + 1.0) - tp.gamma * (mu + 0.5) * (mu + 0.5));
        assert!((b[1] - want).abs() < 1e-12 * want.abs());
    }

    #[test]
    fn g_factor_closed_form() {
        let mu = -5.3;
        let g = g_factors(mu, 6);
        assert_eq!(g[0], 1.0);
        for (n, &gn) in g.iter().enumerate() {
            let fact: f64 = (1..=n).map(|k| k as f64).product();
            let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
            let want = (2.0 * n as f64 + 2.0 * mu + 1.0) * pochhammer(2.0 * mu + 1.0, n)
                / (sign * fact * (2.0 * mu + 1.0));
            assert!((gn - want).abs() < 1e-12 * want.abs());
        }
    }

    #[test]
    fn coefficients_satisfy_both_recursions() {
        // Table-1 ground state, ℓ = 5; the B_n come out of the z,γ recursion.
        let p = params(1.0, 0.5, 5);
        let bp = basis_from_energy(6.505038139, 1.0).unwrap();
        let c = expansion_coeffs(&p, &bp).unwrap();
        assert_eq!(c.f[0], 1.0);
        for r in f_recursion_residuals(&p, bp.mu, &c.f).unwrap() {
            assert!(r < 1e-10, "F recursion residual {r}");
        }
        for r in p_recursion_residuals(&p, bp.mu, &c.b).unwrap() {
            assert!(r < 1e-12, "P recursion residual {r}");
        }
    }

    #[test]
    fn p_recursion_times_scale_is_b_recursion() {
        // Multiplying the P recursion through by -4/(ωa²) gives the (z,γ) form.
        let p = params(1.3, 0.7, 4);
        let tp = tra_params(&p).unwrap();
        let mu = -7.4;
        let rec = p_recursion(&p, mu, 6).unwrap();
        let s = -4.0 / (p.omega * p.a2());
        for n in 0..=6 {
            let nf = n as f64;
            let c0 = -2.0 * mu / ((nf + mu) * (nf + mu + 1.0)) + tp.gamma * (nf + mu + 0.5).powi(2);
            let cm = -nf / ((nf + mu) * (nf + mu + 0.5));
            let cp = (nf + 2.0 * mu + 1.0) / ((nf + mu + 1.0) * (nf + mu + 0.5));
            assert!((s * rec.diag[n] - c0).abs() < 1e-12 * c0.abs());
            assert!((s * rec.lower[n] - cm).abs() < 1e-12 * cm.abs().max(1.0));
            assert!((s * rec.upper[n] - cp).abs() < 1e-12 * cp.abs());
            // z itself is the scaled target
            assert!((s * p.target_eigenvalue() - tp.z).abs() < 1e-12 * tp.z.abs());
        }
    }

    #[test]
    fn symmetric_matrix_is_similar_to_recursion_matrix() {
        let p = params(1.0, 0.5, 5);
        for &e in &[8.3, 11.7, 13.2] {
            let bp = basis_from_energy(e, 1.0).unwrap();
            let n = bp.n_max.min(5);
            let t = tridiag_matrix_sized(&p, bp.mu, n).unwrap();
            let rec = p_recursion(&p, bp.mu, n).unwrap();
            let products: Vec<f64> = (0..n).map(|k| rec.upper[k] * rec.lower[k + 1]).collect();
            for (x, y) in products.iter().zip(t.offdiag_sq()) {
                assert!((x - y).abs() < 1e-12 * y.abs().max(1e-300));
            }
            for &l in &tridiag_eigenvalues(&t).values {
                let d = det_recurrence(&rec.diag, &products, l);
                let scale = det_recurrence(&rec.diag, &products, l + 1.0).ln_abs.exp().max(1.0);
                assert!(d.value().abs() / scale < 1e-10);
            }
        }
    }

    proptest! {
        #[test]
        fn offdiag_real_under_constraint(omega in 0.05_f64..5.0, a in 0.01_f64..3.0, ratio in 1.0001_f64..40.0) {
            let p = params(omega, a, 2);
            let bp = basis_from_energy(omega * ratio, omega).unwrap();
            match tridiag_matrix(&p, &bp) {
                Ok(t) => prop_assert!(t.offdiag().iter().all(|b| b.is_finite())),
                Err(Error::RecursionPole { .. }) => {}
                Err(e) => prop_assert!(false, "unexpected {e}"),
            }
        }

        #[test]
        fn f_and_p_recursions_equivalent(mu in -12.0_f64..-6.6, scale in 0.3_f64..3.0) {
            // Any sequence built from the P recursion satisfies the F recursion
            // after the F = G P map, row by row.
            let p = params(1.0, 0.5, 3);
            let tp = tra_params(&p).unwrap();
            let b = b_poly_sequence(&tp, mu, 5).unwrap();
            let f: Vec<f64> = g_factors(mu, 5).iter().zip(&b).map(|(g, b)| scale * g * b).collect();
            for r in f_recursion_residuals(&p, mu, &f).unwrap() {
                prop_assert!(r < 1e-10);
            }
            let back = f_to_p(mu, &f);
            for (x, y) in back.iter().zip(&b) {
                prop_assert!((x - scale * y).abs() <= 1e-12 * (scale * y).abs().max(1e-300));
            }
        }
    }
}
