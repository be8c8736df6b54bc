use serde::Serialize;

use crate::scalar::Real;
use crate::tra::PhysicalParams;

/// ΔE_k = E - ω(2k + ℓ + 3/2), the shift from the pure-oscillator ladder.
pub fn delta_e<T: Real>(energy: T, k: usize, p: &PhysicalParams<T>) -> T {
    energy - p.oscillator_level(k)
}

/// Oscillator-ladder index of an energy: the k with E closest to and not
/// below ω(2k + ℓ + 3/2), provided E sits in the lowest eighth of the gap.
///
/// The repulsive spike only pushes levels up, and by well under ω/4 in the
/// regimes handled here. Truncation artifacts sit next to the poles of T(E)
/// at integer E/ω, i.e. near the middle or the top of a gap.
pub fn ladder_index<T: Real>(energy: T, p: &PhysicalParams<T>) -> Option<usize> {
    let s = energy / p.omega - (T::from_u32(p.ell).unwrap() + T::lit(1.5));
    if s < T::zero() {
        return None;
    }
    let two = T::lit(2.0);
    let k = (s / two).floor();
    let frac = s - two * k;
    if frac < T::lit(0.25) {
        k.to_usize()
    } else {
        None
    }
}

/// Bound-state energies in ascending order with their ladder deviations.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EnergySpectrum<T> {
    pub params: PhysicalParams<T>,
    pub levels: Vec<T>,
    pub deltas: Vec<T>,
}

impl<T: Real> EnergySpectrum<T> {
    /// Sorts `levels` and attaches ΔE_k with k the position in the list.
    pub fn new(params: PhysicalParams<T>, mut levels: Vec<T>) -> Self {
        levels.sort_by(|a, b| a.partial_cmp(b).expect("finite energies"));
        let deltas = levels.iter().enumerate().map(|(k, &e)| delta_e(e, k, &params)).collect();
        Self { params, levels, deltas }
    }

    pub fn len(&self) -> usize {
        self.levels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.levels.is_empty()
    }

    pub fn truncated(&self, count: usize) -> Self {
        let n = count.min(self.len());
        Self {
            params: self.params,
            levels: self.levels[..n].to_vec(),
            deltas: self.deltas[..n].to_vec(),
        }
    }
}
