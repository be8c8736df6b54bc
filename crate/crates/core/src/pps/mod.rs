//! Potential-parameter-spectrum method: the eigenvalues y_n(E) of T(E) are
//! tabulated over an energy grid, E is fitted as a function of y along
//! each curve, and the bound states are where a curve reaches (ℓ+½)².

mod schlessinger;

pub use schlessinger::{schlessinger_fit, RationalFit};

use serde::Serialize;

use crate::eigen::{tridiag_eigenvalue, tridiag_eigenvalues};
use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::spectrum::{ladder_index, EnergySpectrum};
use crate::tra::{basis_from_energy, tridiag_matrix, BasisParams, PhysicalParams};

/// Default number of energy grid points.
pub const DEFAULT_FIT_POINTS: usize = 100;

/// Energy window and grid size.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PpsConfig<T> {
    /// Lower grid end; `None` means ω(1 + 1e-6).
    pub e_min: Option<T>,
    pub e_max: T,
    pub points: usize,
}

impl<T: Real> PpsConfig<T> {
    pub fn new(e_max: T, points: usize) -> Self {
        Self { e_min: None, e_max, points }
    }

    pub fn with_e_min(mut self, e_min: T) -> Self {
        self.e_min = Some(e_min);
        self
    }

    /// Window [ω(ℓ+1), ω(ℓ+1+width)].
    pub fn above_threshold(p: &PhysicalParams<T>, width: T, points: usize) -> Self {
        let base = p.omega * (T::from_u32(p.ell).unwrap() + T::one());
        Self { e_min: Some(base), e_max: base + p.omega * width, points }
    }

    fn lower(&self, omega: T) -> T {
        self.e_min.unwrap_or(omega * (T::one() + T::lit(1e-6)))
    }
}

/// One grid energy with the sorted eigenvalues of its T.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CurvePoint<T> {
    pub energy: T,
    pub n_max: usize,
    pub values: Vec<T>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SkippedPoint<T> {
    pub energy: T,
    pub reason: String,
}

/// Eigenvalue curves y_n(E_i) on the grid.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EigenCurves<T> {
    /// Usable grid points, ascending in energy.
    pub points: Vec<CurvePoint<T>>,
    /// Grid points that cannot carry a basis, with the reason.
    pub skipped: Vec<SkippedPoint<T>>,
    pub target_y: T,
    /// Grid index of each usable point.
    grid_index: Vec<usize>,
}

impl<T: Real> EigenCurves<T> {
    pub fn energies(&self) -> Vec<T> {
        self.points.iter().map(|c| c.energy).collect()
    }
}

fn basis_matrix<T: Real>(p: &PhysicalParams<T>, e: T) -> Result<(BasisParams<T>, crate::eigen::TridiagonalSymmetric<T>)> {
    let bp = basis_from_energy(e, p.omega)?;
    if bp.n_max < 1 {
        return Err(Error::InvalidBasis { n_max: bp.n_max });
    }
    let t = tridiag_matrix(p, &bp)?;
    if t.diag().iter().chain(t.offdiag()).any(|v| !v.is_finite()) {
        return Err(Error::RecursionPole { n: 0, mu: bp.mu.f64() });
    }
    Ok((bp, t))
}

/// Tabulates the sorted eigenvalues of T(E_i) for a uniform grid of
/// `points` energies ending at `e_max`. Each point uses its own largest
/// degree N(E_i), so every T stays real symmetric.
pub fn eigen_curves<T: Real>(p: &PhysicalParams<T>, cfg: &PpsConfig<T>) -> Result<EigenCurves<T>> {
    let lo = cfg.lower(p.omega);
    if !(cfg.e_max > p.omega) || !(cfg.e_max >= lo) || cfg.points < 1 {
        return Err(Error::InvalidBracket { lo: lo.f64(), hi: cfg.e_max.f64() });
    }
    let m = cfg.points;
    let mut curves = EigenCurves {
        points: Vec::new(),
        skipped: Vec::new(),
        target_y: p.target_eigenvalue(),
        grid_index: Vec::new(),
    };
    for i in 0..m {
        let e = if i + 1 == m { cfg.e_max } else { lo + (cfg.e_max - lo) * T::of(i) / T::of(m - 1) };
        match basis_matrix(p, e) {
            Ok((bp, t)) => {
                curves.points.push(CurvePoint { energy: e, n_max: bp.n_max, values: tridiag_eigenvalues(&t).values });
                curves.grid_index.push(i);
            }
            Err(err) => curves.skipped.push(SkippedPoint { energy: e, reason: err.to_string() }),
        }
    }
    if curves.points.is_empty() {
        return Err(Error::WindowTooSmall);
    }
    Ok(curves)
}

/// Maximal runs of adjacent usable grid points sharing floor(E/ω) and N.
/// T(E) is analytic inside a run: its poles sit at integer E/ω and N(E)
/// changes only at odd integers.
pub fn segments<T: Real>(curves: &EigenCurves<T>, omega: T) -> Vec<std::ops::Range<usize>> {
    let mut out = Vec::new();
    let mut start = 0;
    for i in 1..=curves.points.len() {
        let split = i == curves.points.len()
            || curves.grid_index[i] != curves.grid_index[i - 1] + 1
            || curves.points[i].n_max != curves.points[i - 1].n_max
            || (curves.points[i].energy / omega).floor() != (curves.points[i - 1].energy / omega).floor();
        if split {
            out.push(start..i);
            start = i;
        }
    }
    out
}

/// Grid cells inside a segment where curve `curve` is not bracketed by its
/// end values at the cell midpoint (beyond 10% of the step), i.e. where the
/// sorted-index identity of the curve jumps.
pub fn continuity_breaks<T: Real>(p: &PhysicalParams<T>, curves: &EigenCurves<T>, curve: usize) -> Vec<(T, T)> {
    let mut out = Vec::new();
    for seg in segments(curves, p.omega) {
        for w in curves.points[seg].windows(2) {
            if curve >= w[0].values.len() {
                continue;
            }
            let (ya, yb) = (w[0].values[curve], w[1].values[curve]);
            let mid = crossing_fn(p, curve, (w[0].energy + w[1].energy) * T::lit(0.5)) + curves.target_y;
            let slack = (yb - ya).abs() * T::lit(0.1) + T::epsilon() * T::lit(1e3) * ya.abs().max(yb.abs());
            if !(mid >= ya.min(yb) - slack && mid <= ya.max(yb) + slack) {
                out.push((w[0].energy, w[1].energy));
            }
        }
    }
    out
}

/// One bound state found by the method.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PpsLevel<T> {
    /// Oscillator-ladder index.
    pub k: usize,
    /// Root of y_n(E) = (ℓ+½)² refined inside the bracketing grid cell.
    pub energy: T,
    /// Continued-fraction estimate E_n(y = (ℓ+½)²); `None` if the fit failed.
    pub fit_energy: Option<T>,
    /// Sorted-eigenvalue index n of the curve.
    pub curve: usize,
    /// Grid cell bracketing the crossing.
    pub cell: (T, T),
    pub fit_points: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PpsSpectrum<T> {
    pub spectrum: EnergySpectrum<T>,
    pub levels: Vec<PpsLevel<T>>,
    pub skipped: Vec<SkippedPoint<T>>,
}

/// y_n(E) - (ℓ+½)² for a fixed curve index, NaN where T(E) is unusable.
fn crossing_fn<T: Real>(p: &PhysicalParams<T>, curve: usize, e: T) -> T {
    match basis_matrix(p, e) {
        Ok((_, t)) if curve < t.dim() => tridiag_eigenvalue(&t, curve) - p.target_eigenvalue(),
        _ => T::nan(),
    }
}

fn bisect<T: Real>(p: &PhysicalParams<T>, curve: usize, mut a: T, mut b: T, fa: T) -> T {
    let tol = T::epsilon() * b.abs() * T::lit(4.0);
    for _ in 0..200 {
        let m = a + (b - a) * T::lit(0.5);
        if b - a <= tol || m <= a || m >= b {
            break;
        }
        let fm = crossing_fn(p, curve, m);
        if fm == T::zero() {
            return m;
        }
        if (fm < T::zero()) == (fa < T::zero()) {
            a = m;
        } else {
            b = m;
        }
    }
    a + (b - a) * T::lit(0.5)
}

/// Bound states from the eigenvalue curves.
///
/// Every sign change of y_n(E_i) - (ℓ+½)² inside a run of grid points is
/// fitted with a continued fraction E(y) through the run, evaluated at
/// (ℓ+½)², then refined by bisection in the bracketing cell. Crossings that
/// do not sit on the oscillator ladder are truncation artifacts and are
/// dropped.
pub fn pps_spectrum<T: Real>(p: &PhysicalParams<T>, cfg: &PpsConfig<T>) -> Result<PpsSpectrum<T>> {
    let curves = eigen_curves(p, cfg)?;
    let y_star = curves.target_y;
    let mut found: Vec<PpsLevel<T>> = Vec::new();
    for seg in segments(&curves, p.omega) {
        let pts = &curves.points[seg];
        if pts.len() < 2 {
            continue;
        }
        let dim = pts[0].values.len();
        for curve in 0..dim {
            let ys: Vec<T> = pts.iter().map(|c| c.values[curve]).collect();
            let es: Vec<T> = pts.iter().map(|c| c.energy).collect();
            for i in 0..pts.len() - 1 {
                let (ha, hb) = (ys[i] - y_star, ys[i + 1] - y_star);
                if (ha < T::zero()) == (hb < T::zero()) && hb != T::zero() {
                    continue;
                }
                let energy = if hb == T::zero() { es[i + 1] } else { bisect(p, curve, es[i], es[i + 1], ha) };
                let Some(k) = ladder_index(energy, p) else {
                    log::debug!("crossing of curve {curve} at E = {energy} is off the ladder");
                    continue;
                };
                let fit_energy = match schlessinger_fit(&ys, &es) {
                    Ok(fit) => Some(fit.eval(y_star)),
                    Err(err) => {
                        log::warn!("continued fraction for level {k} failed: {err}");
                        None
                    }
                };
                let level = PpsLevel { k, energy, fit_energy, curve, cell: (es[i], es[i + 1]), fit_points: pts.len() };
                // of two crossings on one ladder step the lower lies closer to it
                match found.iter_mut().find(|l| l.k == k) {
                    Some(old) => {
                        log::warn!("two crossings for level {k}: {} and {energy}", old.energy);
                        if energy < old.energy {
                            *old = level;
                        }
                    }
                    None => found.push(level),
                }
            }
        }
    }
    found.sort_by(|a, b| a.energy.partial_cmp(&b.energy).expect("finite energies"));
    for (pos, l) in found.iter().enumerate() {
        if l.k != pos {
            log::warn!("level k = {} found at list position {pos}; lower levels lie outside the window", l.k);
        }
    }
    let spectrum = EnergySpectrum::new(*p, found.iter().map(|l| l.energy).collect());
    Ok(PpsSpectrum { spectrum, levels: found, skipped: curves.skipped })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(ell: u32) -> PhysicalParams<f64> {
        PhysicalParams::new(1.0, 0.5, ell).unwrap()
    }

    #[test]
    fn curve_sizes_follow_energy() {
        let c = eigen_curves(&p(5), &PpsConfig::new(26.0, 100)).unwrap();
        // E = 26 sits on a pole of T(E)
        assert!(c.skipped.iter().any(|s| s.energy == 26.0));
        let last = c.points.last().unwrap();
        assert!(last.energy > 25.7);
        assert_eq!(last.n_max, 12);
        assert_eq!(last.values.len(), 13);
        for pt in &c.points {
            assert!(pt.values.windows(2).all(|w| w[0] <= w[1]));
        }
        // E <= 3 gives N = 0 and is skipped
        assert!(c.skipped.iter().any(|s| s.energy < 3.0));
        assert_eq!(c.target_y, 30.25);
    }

    #[test]
    fn degenerate_window() {
        let q = p(5);
        let cfg = PpsConfig::new(2.0, 1);
        assert_eq!(eigen_curves(&q, &cfg), Err(Error::WindowTooSmall));
    }

    #[test]
    fn lowest_curve_is_continuous() {
        let q = p(5);
        let c = eigen_curves(&q, &PpsConfig::above_threshold(&q, 21.0, 100)).unwrap();
        let b = continuity_breaks(&q, &c, 0);
        assert!(b.is_empty(), "{b:?}");
    }

    #[test]
    fn ground_state_l5() {
        let q = p(5);
        let r = pps_spectrum(&q, &PpsConfig::new(26.0, 100)).unwrap();
        assert!(r.spectrum.len() >= 10);
        assert!((r.spectrum.deltas[0] - 0.005038139).abs() < 1e-9);
        assert!(r.spectrum.levels.windows(2).all(|w| w[1] > w[0]));
        let l0 = &r.levels[0];
        assert!((l0.fit_energy.unwrap() - l0.energy).abs() < 1e-4);
    }
}
