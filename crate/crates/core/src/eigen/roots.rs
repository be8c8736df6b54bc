//! Energies at which a fixed-size T(E) has (ℓ+½)² as an eigenvalue.
//!
//! The matrix entries have poles wherever E/ω is an integer, so the scan
//! treats each unit interval between poles separately and never brackets a
//! pole.

use crate::eigen::{det_recurrence, ScaledDet};
use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::spectrum::{ladder_index, EnergySpectrum};
use crate::tra::{recursion_coefficients, PhysicalParams};

/// Default number of sign-scan points across the window.
pub const DEFAULT_SCAN_POINTS: usize = 2000;

/// g(E) = det(T(E) - (ℓ+½)² I) with T of fixed size N+1, scaled. `None` on
/// a pole of the matrix entries.
///
/// Only b_n² enters, so the value is real even where μ < -N - ½ fails and
/// b_n itself would be imaginary.
pub fn det_target<T: Real>(p: &PhysicalParams<T>, n: usize, energy: T) -> Option<ScaledDet<T>> {
    let mu = -energy / (T::lit(2.0) * p.omega);
    let rc = recursion_coefficients(p, mu, n).ok()?;
    let d = det_recurrence(&rc.diag, &rc.offdiag_sq, p.target_eigenvalue());
    (d.ln_abs.is_finite() || d.sign == 0).then_some(d)
}

/// Subintervals of (lo, hi) free of integer E/ω, with ends pulled inside.
fn pole_free_pieces<T: Real>(lo: T, hi: T, omega: T) -> Vec<(T, T)> {
    let inset = T::lit(1e-9);
    let mut out = Vec::new();
    let mut a = lo / omega;
    let end = hi / omega;
    while a < end {
        let next = (a.floor() + T::one()).min(end);
        let left = if a == a.floor() { a + inset } else { a };
        let right = if next == next.floor() { next - inset } else { next };
        if right > left {
            out.push((left * omega, right * omega));
        }
        a = next;
    }
    out
}

fn sign_of<T: Real>(d: &ScaledDet<T>) -> i8 {
    d.sign
}

/// All roots of g(E) in (e_lo, e_hi) at fixed N, by sign scan on
/// `points` grid points and bisection to 1e-12 in E.
pub fn det_energy_roots_with<T: Real>(
    p: &PhysicalParams<T>,
    n: usize,
    e_lo: T,
    e_hi: T,
    points: usize,
) -> Result<Vec<T>> {
    if !(e_lo > p.omega) || !(e_hi > e_lo) || points < 2 {
        return Err(Error::InvalidBracket { lo: e_lo.f64(), hi: e_hi.f64() });
    }
    let total = e_hi - e_lo;
    let tol = T::lit(1e-12).max(T::epsilon() * e_hi * T::lit(4.0));
    let mut roots = Vec::new();
    for (u, v) in pole_free_pieces(e_lo, e_hi, p.omega) {
        let cells = ((T::of(points) * (v - u) / total).ceil().to_usize().unwrap_or(1)).max(4);
        let grid: Vec<T> = (0..=cells).map(|i| u + (v - u) * T::of(i) / T::of(cells)).collect();
        let vals: Vec<Option<ScaledDet<T>>> = grid.iter().map(|&e| det_target(p, n, e)).collect();
        for i in 0..cells {
            let (Some(da), Some(db)) = (vals[i], vals[i + 1]) else { continue };
            if da.sign == 0 {
                roots.push(grid[i]);
                continue;
            }
            if db.sign == 0 || da.sign == db.sign {
                continue;
            }
            let (mut a, mut b) = (grid[i], grid[i + 1]);
            let sa = sign_of(&da);
            while b - a > tol {
                let m = a + (b - a) * T::lit(0.5);
                if m <= a || m >= b {
                    break;
                }
                match det_target(p, n, m) {
                    Some(d) if d.sign == 0 => {
                        a = m;
                        b = m;
                    }
                    Some(d) if d.sign == sa => a = m,
                    Some(_) => b = m,
                    None => break,
                }
            }
            let root = a + (b - a) * T::lit(0.5);
            // a sign change through a blow-up has |g| growing towards the middle
            let keep = match det_target(p, n, root) {
                Some(d) => d.sign == 0 || d.ln_abs < da.ln_abs.min(db.ln_abs),
                None => false,
            };
            if keep {
                roots.push(root);
            } else {
                log::debug!("discarding sign change at E = {root} (pole-like)");
            }
        }
        if let Some(Some(d)) = vals.last() {
            if d.sign == 0 {
                roots.push(grid[cells]);
            }
        }
    }
    roots.dedup();
    Ok(roots)
}

/// [`det_energy_roots_with`] with the default scan density.
pub fn det_energy_roots<T: Real>(p: &PhysicalParams<T>, n: usize, e_lo: T, e_hi: T) -> Result<Vec<T>> {
    det_energy_roots_with(p, n, e_lo, e_hi, DEFAULT_SCAN_POINTS)
}

/// Roots of g(E) that sit on the oscillator ladder, one per level, assembled
/// into a spectrum. Roots of g that belong to no level (truncation artifacts
/// just below ω(2m + ℓ + ½) and next to the poles) are dropped.
pub fn det_spectrum<T: Real>(p: &PhysicalParams<T>, n: usize, e_lo: T, e_hi: T) -> Result<EnergySpectrum<T>> {
    let roots = det_energy_roots(p, n, e_lo, e_hi)?;
    let guard = T::lit(1e-6);
    let mut levels: Vec<(usize, T)> = Vec::new();
    for r in roots {
        let off_pole = ((r / p.omega) - (r / p.omega).round()).abs() > guard;
        match ladder_index(r, p) {
            Some(k) if off_pole => {
                // roots arrive ascending, so the first one per step is the lowest
                if levels.iter().any(|&(j, _)| j == k) {
                    log::warn!("second root {r} on ladder level {k} ignored");
                } else {
                    levels.push((k, r));
                }
            }
            _ => log::debug!("root {r} is off the oscillator ladder"),
        }
    }
    check_contiguous(&levels);
    Ok(EnergySpectrum::new(*p, levels.into_iter().map(|(_, e)| e).collect()))
}

/// Warns when ladder levels are missing, since ΔE indices follow list
/// position.
pub(crate) fn check_contiguous<T: Real>(levels: &[(usize, T)]) {
    for (pos, &(k, e)) in levels.iter().enumerate() {
        if k != pos {
            log::warn!("level {e} has ladder index {k} but list position {pos}");
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p5() -> PhysicalParams<f64> {
        PhysicalParams::new(1.0, 0.5, 5).unwrap()
    }

    #[test]
    fn pieces_avoid_integers() {
        let pieces = pole_free_pieces(6.0_f64, 8.5, 1.0);
        assert_eq!(pieces.len(), 3);
        assert!(pieces[0].0 > 6.0 && pieces[0].1 < 7.0);
        assert!(pieces[1].0 > 7.0 && pieces[1].1 < 8.0);
        assert_eq!(pieces[2].1, 8.5);
    }

    #[test]
    fn single_term_root() {
        let roots = det_energy_roots(&p5(), 0, 6.0, 7.0).unwrap();
        assert_eq!(roots.len(), 1);
        assert!((roots[0] - 6.505042540).abs() < 1e-9);
    }

    #[test]
    fn rejects_bad_bracket() {
        assert!(det_energy_roots(&p5(), 2, 0.5, 3.0).is_err());
        assert!(det_energy_roots(&p5(), 2, 7.0, 6.0).is_err());
    }

    #[test]
    fn roots_are_zeros_of_g() {
        let p = p5();
        for r in det_energy_roots(&p, 5, 6.0, 17.0).unwrap() {
            let d = det_target(&p, 5, r).unwrap();
            let near = det_target(&p, 5, r + 1e-4).unwrap();
            assert!(d.ln_abs < near.ln_abs - 5.0, "root {r}");
        }
    }

    #[test]
    fn ladder_levels_of_three_term_truncation() {
        let s = det_spectrum(&p5(), 2, 6.0, 26.0).unwrap();
        assert_eq!(s.len(), 3);
        assert!((s.deltas[2] - 0.008136005).abs() < 1e-9);
    }
}
