//! Symmetric tridiagonal eigenvalues by Sturm-sequence bisection, the
//! tridiagonal characteristic determinant, and Householder reduction of
//! dense symmetric matrices.

mod roots;

pub use roots::{det_energy_roots, det_energy_roots_with, det_spectrum, det_target, DEFAULT_SCAN_POINTS};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Real symmetric tridiagonal matrix: diagonal a_0..a_N, off-diagonal
/// b_0..b_{N-1} with T[n][n+1] = T[n+1][n] = b_n.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TridiagonalSymmetric<T> {
    diag: Vec<T>,
    offdiag: Vec<T>,
}

impl<T: Real> TridiagonalSymmetric<T> {
    pub fn new(diag: Vec<T>, offdiag: Vec<T>) -> Result<Self> {
        if diag.is_empty() {
            return Err(Error::EmptyMatrix);
        }
        assert_eq!(offdiag.len() + 1, diag.len(), "off-diagonal length must be N");
        Ok(Self { diag, offdiag })
    }

    pub fn diag(&self) -> &[T] {
        &self.diag
    }

    pub fn offdiag(&self) -> &[T] {
        &self.offdiag
    }

    pub fn dim(&self) -> usize {
        self.diag.len()
    }

    pub fn offdiag_sq(&self) -> Vec<T> {
        self.offdiag.iter().map(|&b| b * b).collect()
    }

    /// Gershgorin interval containing the whole spectrum.
    pub fn gershgorin(&self) -> (T, T) {
        let n = self.dim();
        let mut lo = T::infinity();
        let mut hi = T::neg_infinity();
        for i in 0..n {
            let mut r = T::zero();
            if i > 0 {
                r = r + self.offdiag[i - 1].abs();
            }
            if i + 1 < n {
                r = r + self.offdiag[i].abs();
            }
            lo = lo.min(self.diag[i] - r);
            hi = hi.max(self.diag[i] + r);
        }
        (lo, hi)
    }

    /// Largest absolute row sum.
    pub fn norm(&self) -> T {
        let (lo, hi) = self.gershgorin();
        lo.abs().max(hi.abs())
    }

    pub fn to_dense(&self) -> Vec<Vec<T>> {
        let n = self.dim();
        let mut m = vec![vec![T::zero(); n]; n];
        for i in 0..n {
            m[i][i] = self.diag[i];
            if i + 1 < n {
                m[i][i + 1] = self.offdiag[i];
                m[i + 1][i] = self.offdiag[i];
            }
        }
        m
    }
}

/// Sorted eigenvalues with optional unit eigenvectors (one per value).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EigenResult<T> {
    pub values: Vec<T>,
    pub vectors: Option<Vec<Vec<T>>>,
}

/// Number of eigenvalues strictly below `y`.
pub fn sturm_count<T: Real>(t: &TridiagonalSymmetric<T>, y: T) -> usize {
    let pivmin = T::min_positive_value() * (T::one() + t.norm()) * T::lit(4.0);
    let mut count = 0;
    let mut q = T::one();
    for i in 0..t.dim() {
        let b2 = if i == 0 { T::zero() } else { t.offdiag[i - 1] * t.offdiag[i - 1] };
        q = if i == 0 { t.diag[0] - y } else { t.diag[i] - y - b2 / q };
        if q.abs() < pivmin {
            q = -pivmin;
        }
        if q < T::zero() {
            count += 1;
        }
    }
    count
}

/// The `index`-th smallest eigenvalue (0-based) by bisection on Sturm counts.
pub fn tridiag_eigenvalue<T: Real>(t: &TridiagonalSymmetric<T>, index: usize) -> T {
    assert!(index < t.dim(), "eigenvalue index out of range");
    let (mut lo, mut hi) = t.gershgorin();
    let scale = t.norm().max(T::min_positive_value());
    let tol = T::epsilon() * scale * T::lit(2.0);
    for _ in 0..256 {
        let mid = lo + (hi - lo) * T::lit(0.5);
        if hi - lo <= tol || mid <= lo || mid >= hi {
            break;
        }
        if sturm_count(t, mid) > index {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    lo + (hi - lo) * T::lit(0.5)
}

/// All eigenvalues in ascending order.
pub fn tridiag_eigenvalues<T: Real>(t: &TridiagonalSymmetric<T>) -> EigenResult<T> {
    EigenResult {
        values: (0..t.dim()).map(|i| tridiag_eigenvalue(t, i)).collect(),
        vectors: None,
    }
}

/// The `count` smallest eigenvalues in ascending order.
pub fn tridiag_lowest<T: Real>(t: &TridiagonalSymmetric<T>, count: usize) -> Vec<T> {
    (0..count.min(t.dim())).map(|i| tridiag_eigenvalue(t, i)).collect()
}

/// Eigenvalues together with unit eigenvectors from inverse iteration.
pub fn tridiag_eigen<T: Real>(t: &TridiagonalSymmetric<T>) -> EigenResult<T> {
    let values = tridiag_eigenvalues(t).values;
    let n = t.dim();
    let scale = t.norm().max(T::one());
    let cluster = scale * T::lit(1e-3);
    let mut vectors: Vec<Vec<T>> = Vec::with_capacity(n);
    for (i, &lambda) in values.iter().enumerate() {
        // Deterministic, non-degenerate start vector.
        let mut v: Vec<T> = (0..n).map(|j| T::one() + T::lit(0.1) * T::of((j * 7 + i) % 11)).collect();
        let shift = lambda + scale * T::epsilon() * T::lit(8.0);
        for _ in 0..4 {
            v = solve_shifted(t, shift, &v);
            for (j, u) in vectors.iter().enumerate() {
                if (values[j] - lambda).abs() < cluster {
                    let d = dot(u, &v);
                    for (vk, &uk) in v.iter_mut().zip(u) {
                        *vk = *vk - d * uk;
                    }
                }
            }
            let nv = dot(&v, &v).sqrt();
            for vk in v.iter_mut() {
                *vk = *vk / nv;
            }
        }
        vectors.push(v);
    }
    EigenResult { values, vectors: Some(vectors) }
}

fn dot<T: Real>(a: &[T], b: &[T]) -> T {
    a.iter().zip(b).fold(T::zero(), |acc, (&x, &y)| acc + x * y)
}

// Solve (T - shift I) x = rhs by Gaussian elimination with partial pivoting.
fn solve_shifted<T: Real>(t: &TridiagonalSymmetric<T>, shift: T, rhs: &[T]) -> Vec<T> {
    let n = t.dim();
    let tiny = T::epsilon() * t.norm().max(T::one());
    if n == 1 {
        let d = t.diag[0] - shift;
        let d = if d.abs() < tiny { tiny } else { d };
        return vec![rhs[0] / d];
    }
    // Rows stored as (sub, diag, sup, sup2) after pivoting.
    let mut a: Vec<[T; 3]> = (0..n)
        .map(|i| {
            let sub = if i > 0 { t.offdiag[i - 1] } else { T::zero() };
            let sup = if i + 1 < n { t.offdiag[i] } else { T::zero() };
            [sub, t.diag[i] - shift, sup]
        })
        .collect();
    let mut sup2 = vec![T::zero(); n];
    let mut b = rhs.to_vec();
    for i in 0..n - 1 {
        if a[i + 1][0].abs() > a[i][1].abs() {
            // swap rows i and i+1
            let ri = a[i];
            let rn = a[i + 1];
            let (bi, bn) = (b[i], b[i + 1]);
            // row i becomes old row i+1: columns i, i+1, i+2
            a[i] = [ri[0], rn[0], rn[1]];
            sup2[i] = rn[2];
            a[i + 1] = [T::zero(), ri[1], ri[2]];
            b[i] = bn;
            b[i + 1] = bi;
            // eliminate column i from new row i+1
            let piv = if a[i][1].abs() < tiny { tiny } else { a[i][1] };
            a[i][1] = piv;
            let m = a[i + 1][1] / piv;
            a[i + 1][1] = a[i + 1][2] - m * a[i][2];
            a[i + 1][2] = T::zero() - m * sup2[i];
            b[i + 1] = b[i + 1] - m * b[i];
        } else {
            let piv = if a[i][1].abs() < tiny { tiny } else { a[i][1] };
            a[i][1] = piv;
            let m = a[i + 1][0] / piv;
            a[i + 1][1] = a[i + 1][1] - m * a[i][2];
            b[i + 1] = b[i + 1] - m * b[i];
        }
        a[i + 1][0] = T::zero();
    }
    if a[n - 1][1].abs() < tiny {
        a[n - 1][1] = tiny;
    }
    let mut x = vec![T::zero(); n];
    for i in (0..n).rev() {
        let mut s = b[i];
        if i + 1 < n {
            s = s - a[i][2] * x[i + 1];
        }
        if i + 2 < n {
            s = s - sup2[i] * x[i + 2];
        }
        x[i] = s / a[i][1];
    }
    x
}

/// det(T - yI) in scaled form: the value is `sign · exp(ln_abs)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScaledDet<T> {
    pub sign: i8,
    pub ln_abs: T,
}

impl<T: Real> ScaledDet<T> {
    pub fn value(&self) -> T {
        T::from_i8(self.sign).unwrap() * self.ln_abs.exp()
    }
}

/// Scaled determinant recurrence d_k = (a_k - y) d_{k-1} - s_{k-1} d_{k-2},
/// where `offdiag_sq` holds the products s_k of the two off-diagonal
/// neighbours. The products may be negative, which covers the
/// non-symmetric recursion matrices as well.
pub fn det_recurrence<T: Real>(diag: &[T], offdiag_sq: &[T], y: T) -> ScaledDet<T> {
    let mut ln_abs = T::zero();
    let mut prev = T::zero(); // d_{k-2} / running scale
    let mut cur = T::one(); // d_{k-1} / running scale
    for (k, &a) in diag.iter().enumerate() {
        let s = if k == 0 { T::zero() } else { offdiag_sq[k - 1] };
        let next = (a - y) * cur - s * prev;
        let mag = next.abs();
        if mag == T::zero() || !mag.is_finite() {
            let sign = if mag == T::zero() { 0 } else { 1 };
            let ln = if mag == T::zero() { T::neg_infinity() } else { T::infinity() };
            return ScaledDet { sign, ln_abs: ln };
        }
        ln_abs = ln_abs + mag.ln();
        prev = cur / mag;
        cur = next / mag;
    }
    ScaledDet { sign: if cur < T::zero() { -1 } else { 1 }, ln_abs }
}

/// det(T - yI).
pub fn char_poly<T: Real>(t: &TridiagonalSymmetric<T>, y: T) -> T {
    let sq = t.offdiag_sq();
    let mut prev = T::zero();
    let mut cur = T::one();
    for (k, &a) in t.diag.iter().enumerate() {
        let s = if k == 0 { T::zero() } else { sq[k - 1] };
        let next = (a - y) * cur - s * prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// det(T - yI) in sign/log-magnitude form, safe for large dimensions.
pub fn char_poly_scaled<T: Real>(t: &TridiagonalSymmetric<T>, y: T) -> ScaledDet<T> {
    det_recurrence(&t.diag, &t.offdiag_sq(), y)
}

/// Householder reduction of a dense symmetric matrix to tridiagonal form
/// by orthogonal similarity. Only the lower triangle of `m` is read.
pub fn householder_tridiagonalize<T: Real>(m: &[Vec<T>]) -> Result<TridiagonalSymmetric<T>> {
    let n = m.len();
    if n == 0 {
        return Err(Error::EmptyMatrix);
    }
    let mut a: Vec<Vec<T>> = (0..n)
        .map(|i| (0..n).map(|j| if j <= i { m[i][j] } else { m[j][i] }).collect())
        .collect();
    let mut offdiag = vec![T::zero(); n.saturating_sub(1)];
    for k in 0..n.saturating_sub(2) {
        // Reflect a[k+1..n][k] onto a multiple of e_{k+1}.
        let alpha_sq = (k + 1..n).fold(T::zero(), |acc, i| acc + a[i][k] * a[i][k]);
        let alpha_norm = alpha_sq.sqrt();
        if alpha_norm == T::zero() {
            offdiag[k] = T::zero();
            continue;
        }
        let x0 = a[k + 1][k];
        let alpha = if x0 > T::zero() { -alpha_norm } else { alpha_norm };
        let mut v = vec![T::zero(); n];
        v[k + 1] = x0 - alpha;
        for i in k + 2..n {
            v[i] = a[i][k];
        }
        let vnorm_sq = (k + 1..n).fold(T::zero(), |acc, i| acc + v[i] * v[i]);
        if vnorm_sq == T::zero() {
            offdiag[k] = x0;
            continue;
        }
        let beta = T::lit(2.0) / vnorm_sq;
        // p = beta A v, K = beta/2 v·p, w = p - K v, A -= v wᵀ + w vᵀ
        let mut p = vec![T::zero(); n];
        for i in k + 1..n {
            let mut s = T::zero();
            for j in k + 1..n {
                s = s + a[i][j] * v[j];
            }
            p[i] = beta * s;
        }
        let kk = (k + 1..n).fold(T::zero(), |acc, i| acc + v[i] * p[i]) * beta * T::lit(0.5);
        for i in k + 1..n {
            p[i] = p[i] - kk * v[i];
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = a[i][j] - v[i] * p[j] - p[i] * v[j];
            }
        }
        offdiag[k] = alpha;
        for i in k + 1..n {
            a[i][k] = T::zero();
            a[k][i] = T::zero();
        }
        a[k + 1][k] = alpha;
        a[k][k + 1] = alpha;
    }
    if n >= 2 {
        offdiag[n - 2] = a[n - 1][n - 2];
    }
    let diag = (0..n).map(|i| a[i][i]).collect();
    TridiagonalSymmetric::new(diag, offdiag)
}

/// The `count` smallest eigenvalues of a dense symmetric matrix.
pub fn symmetric_lowest<T: Real>(m: &[Vec<T>], count: usize) -> Result<Vec<T>> {
    let t = householder_tridiagonalize(m)?;
    Ok(tridiag_lowest(&t, count))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn tri(d: &[f64], e: &[f64]) -> TridiagonalSymmetric<f64> {
        TridiagonalSymmetric::new(d.to_vec(), e.to_vec()).unwrap()
    }

    #[test]
    fn small_spectra() {
        assert_eq!(tridiag_eigenvalues(&tri(&[5.0], &[])).values, vec![5.0]);
        let v = tridiag_eigenvalues(&tri(&[2.0, 2.0], &[1.0])).values;
        assert!((v[0] - 1.0).abs() < 1e-15 && (v[1] - 3.0).abs() < 1e-15);
        let v = tridiag_eigenvalues(&tri(&[1.0, 2.0, 3.0], &[0.0, 0.0])).values;
        for (got, want) in v.iter().zip([1.0, 2.0, 3.0]) {
            assert!((got - want).abs() < 1e-15);
        }
    }

    #[test]
    fn empty_matrix_rejected() {
        assert_eq!(TridiagonalSymmetric::<f64>::new(vec![], vec![]), Err(Error::EmptyMatrix));
    }

    #[test]
    fn determinant_examples() {
        assert_eq!(char_poly(&tri(&[5.0], &[]), 2.0), 3.0);
        assert_eq!(char_poly(&tri(&[2.0, 2.0], &[1.0]), 1.0), 0.0);
        let s = char_poly_scaled(&tri(&[2.0, 2.0], &[1.0]), 0.0);
        assert_eq!(s.sign, 1);
        assert!((s.value() - 3.0).abs() < 1e-14);
    }

    #[test]
    fn scaled_determinant_survives_large_dimension() {
        let n = 400;
        let t = tri(&vec![1e3; n], &vec![1.0; n - 1]);
        let s = char_poly_scaled(&t, 0.0);
        assert!(s.ln_abs.is_finite());
        assert!(s.ln_abs > 2000.0);
        assert!(!char_poly(&t, 0.0).is_finite());
    }

    #[test]
    fn dense_reduction_preserves_spectrum() {
        // Fixed symmetric 5x5 with known spectrum: Q diag Qᵀ built from a
        // Householder reflector.
        let lam = [-2.0, 0.5, 1.0, 3.0, 7.0];
        let u = [0.3_f64, -0.1, 0.7, 0.2, -0.5];
        let un: f64 = u.iter().map(|x| x * x).sum();
        let q: Vec<Vec<f64>> = (0..5)
            .map(|i| (0..5).map(|j| if i == j { 1.0 } else { 0.0 } - 2.0 * u[i] * u[j] / un).collect())
            .collect();
        let m: Vec<Vec<f64>> = (0..5)
            .map(|i| (0..5).map(|j| (0..5).map(|k| q[i][k] * lam[k] * q[j][k]).sum()).collect())
            .collect();
        let got = symmetric_lowest(&m, 5).unwrap();
        for (g, w) in got.iter().zip(lam) {
            assert!((g - w).abs() < 1e-13, "{g} vs {w}");
        }
    }

    fn arb_tridiag(n: usize) -> impl Strategy<Value = TridiagonalSymmetric<f64>> {
        (
            proptest::collection::vec(-10.0_f64..10.0, n),
            proptest::collection::vec(-3.0_f64..3.0, n - 1),
        )
            .prop_map(|(d, e)| TridiagonalSymmetric::new(d, e).unwrap())
    }

    proptest! {
        #[test]
        fn eigenvalues_are_determinant_zeros(t in arb_tridiag(6)) {
            let vals = tridiag_eigenvalues(&t).values;
            let scale = t.norm().max(1.0).powi(6);
            for w in vals.windows(2) {
                prop_assert!(w[0] <= w[1]);
            }
            for &l in &vals {
                prop_assert!(char_poly(&t, l).abs() / scale <= 1e-9);
            }
        }

        #[test]
        fn sturm_count_counts_eigenvalues_below(t in arb_tridiag(7), y in -14.0_f64..14.0) {
            let vals = tridiag_eigenvalues(&t).values;
            let below = vals.iter().filter(|&&l| l < y).count();
            let gap = vals.iter().map(|l| (l - y).abs()).fold(f64::INFINITY, f64::min);
            prop_assume!(gap > 1e-9);
            prop_assert_eq!(sturm_count(&t, y), below);
        }

        #[test]
        fn eigenvectors_orthonormal(t in arb_tridiag(6)) {
            let res = tridiag_eigen(&t);
            let vs = res.vectors.unwrap();
            // skip near-degenerate spectra, where any basis of the cluster is valid
            let minsep = res.values.windows(2).map(|w| w[1] - w[0]).fold(f64::INFINITY, f64::min);
            prop_assume!(minsep > 1e-4);
            for i in 0..6 {
                for j in 0..6 {
                    let d: f64 = vs[i].iter().zip(&vs[j]).map(|(a, b)| a * b).sum();
                    let want = if i == j { 1.0 } else { 0.0 };
                    prop_assert!((d - want).abs() < 1e-10);
                }
                // residual of T v = λ v
                let dense = t.to_dense();
                for r in 0..6 {
                    let tv: f64 = (0..6).map(|c| dense[r][c] * vs[i][c]).sum();
                    prop_assert!((tv - res.values[i] * vs[i][r]).abs() < 1e-9 * t.norm().max(1.0));
                }
            }
        }
    }
}
