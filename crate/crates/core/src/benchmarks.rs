//! Reference values for ω = 1: level shifts ΔE_n for a = 0.5 and energies
//! for two values of a².

/// Angular momenta of the ΔE tables, one column each.
pub const DELTA_ELLS: [u32; 5] = [3, 4, 5, 6, 7];

/// ΔE_n (n = 0..9) from the tridiagonal representation, a = 0.5.
/// `TABLE1[n][j]` belongs to ℓ = `DELTA_ELLS[j]`.
pub const TABLE1: [[f64; 5]; 10] = [
    [0.014093664, 0.007895881, 0.005038139, 0.003491750, 0.002561967],
    [0.020199526, 0.010734904, 0.006579901, 0.004420052, 0.003163657],
    [0.026201793, 0.013558855, 0.008118140, 0.005347298, 0.003764967],
    [0.032153953, 0.016363232, 0.009652883, 0.006273491, 0.004365899],
    [0.038047366, 0.019160964, 0.011184153, 0.007198635, 0.004966453],
    [0.043892069, 0.021940815, 0.012711974, 0.008122733, 0.005566631],
    [0.049552918, 0.024707753, 0.014236371, 0.009045789, 0.006166432],
    [0.055291222, 0.027459101, 0.015757368, 0.009967806, 0.006765857],
    [0.060543550, 0.030197819, 0.017274988, 0.010888788, 0.007364908],
    [0.065805452, 0.032920750, 0.018789252, 0.011808738, 0.007963584],
];

/// Matrix sizes N of the fixed-size determinant table (ℓ = 5, a = 0.5).
pub const TABLE2_SIZES: [usize; 5] = [0, 1, 2, 5, 10];

/// ΔE_n for n = 0..=N at each N of `TABLE2_SIZES`.
pub const TABLE2: [&[f64]; 5] = [
    &[0.005042540],
    &[0.005038139, 0.006590264],
    &[0.005038139, 0.006579901, 0.008136005],
    &[0.005038139, 0.006579901, 0.008118140, 0.009652883, 0.011184159, 0.012761400],
    &[
        0.005038139, 0.006579901, 0.008118140, 0.009652883, 0.011184152, 0.012711974, 0.014236371, 0.015757367,
        0.017274987, 0.018789252,
    ],
];

/// ΔE_n from the Laguerre-basis Hamiltonian, M = 100, λ² = ω, a = 0.5.
pub const TABLE3: [[f64; 5]; 10] = [
    [0.014088829, 0.007895857, 0.005038137, 0.003491750, 0.002561967],
    [0.020168585, 0.010734771, 0.006579892, 0.004420052, 0.003163657],
    [0.026152741, 0.013558349, 0.008118108, 0.005347296, 0.003764967],
    [0.032044738, 0.016366668, 0.009652793, 0.006273485, 0.004365898],
    [0.037847372, 0.019159733, 0.011183941, 0.007198618, 0.004966452],
    [0.043562902, 0.021937470, 0.012711533, 0.008122694, 0.005566627],
    [0.049193129, 0.024699726, 0.014235533, 0.009045709, 0.006166424],
    [0.054739450, 0.027446263, 0.015755884, 0.009967653, 0.006765841],
    [0.060202910, 0.030176757, 0.017272505, 0.010888512, 0.007364876],
    [0.065584229, 0.032890796, 0.018785288, 0.011808267, 0.007963526],
];

/// One row group of the energy table.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnergyRow {
    pub ell: u32,
    pub a2: f64,
    /// Lowest three energies.
    pub energies: [f64; 3],
    /// The same levels by imaginary-time evolution (A. K. Roy).
    pub imaginary_time: [f64; 3],
}

pub const TABLE4: [EnergyRow; 10] = [
    EnergyRow { ell: 3, a2: 0.001, energies: [4.50005714, 6.50008253, 8.50010792], imaginary_time: [4.50005713, 6.50008253, 8.50010792] },
    EnergyRow { ell: 4, a2: 0.001, energies: [5.50003175, 7.50004329, 9.50005483], imaginary_time: [5.50003174, 7.50004328, 9.50005483] },
    EnergyRow { ell: 5, a2: 0.001, energies: [6.50002020, 8.50002642, 10.50003263], imaginary_time: [6.50002020, 8.50002641, 10.5000326] },
    EnergyRow { ell: 10, a2: 0.001, energies: [11.50000501, 13.50000588, 15.50000676], imaginary_time: [11.5000050, 13.5000058, 15.5000067] },
    EnergyRow { ell: 40, a2: 0.001, energies: [41.50000031, 43.50000033, 45.50000034], imaginary_time: [41.5000003, 43.5000003, 45.5000003] },
    EnergyRow { ell: 3, a2: 1.0, energies: [4.55432941, 6.57618636, 8.59705146], imaginary_time: [4.55432930, 6.57618592, 8.59705033] },
    EnergyRow { ell: 4, a2: 1.0, energies: [5.53112085, 7.54196630, 9.55260775], imaginary_time: [5.53112085, 7.54196634, 9.55260789] },
    EnergyRow { ell: 5, a2: 1.0, energies: [6.52000759, 8.52603424, 10.53200890], imaginary_time: [6.52000759, 8.52603424, 10.5320089] },
    EnergyRow { ell: 10, a2: 1.0, energies: [11.50500707, 13.50587573, 15.50674384], imaginary_time: [11.5050070, 13.5058757, 15.5067438] },
    EnergyRow { ell: 40, a2: 1.0, energies: [41.50031254, 43.50032761, 45.50034267], imaginary_time: [41.5003125, 43.5003276, 45.5003426] },
];

/// ω, a of the ΔE tables.
pub const OMEGA: f64 = 1.0;
pub const A: f64 = 0.5;
