use thiserror::Error;

/// Failures reported by the spectral routines.
///
/// Numeric payloads are carried as `f64` regardless of the scalar type the
/// computation ran in.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("polynomial degree {n} exceeds the admissible maximum {max}")]
    DegreeOutOfRange { n: usize, max: usize },

    #[error("Bessel parameter mu = {mu} must be below -N - 1/2 for N = {max_degree}")]
    InvalidBesselParams { mu: f64, max_degree: usize },

    #[error("quadrature exponent alpha = {0} must exceed -1")]
    InvalidAlpha(f64),

    #[error("quadrature rule needs at least one node")]
    EmptyRule,

    #[error("energy {energy} must exceed omega = {omega}")]
    EnergyTooSmall { energy: f64, omega: f64 },

    #[error("invalid physical parameters: {0}")]
    InvalidParams(String),

    #[error("singularity strength a = 0 has no tridiagonal representation map")]
    SingularityOff,

    #[error("basis with N = {n_max} cannot carry the spectrum problem (need N >= 1)")]
    InvalidBasis { n_max: usize },

    #[error("recursion denominator vanishes at n = {n} (mu = {mu})")]
    RecursionPole { n: usize, mu: f64 },

    #[error("off-diagonal element b_{n} is not real (sqrt argument {arg})")]
    NonrealOffdiag { n: usize, arg: f64 },

    #[error("matrix has no rows")]
    EmptyMatrix,

    #[error("invalid bracket [{lo}, {hi}]")]
    InvalidBracket { lo: f64, hi: f64 },

    #[error("no usable energy grid point in the window")]
    WindowTooSmall,

    #[error("continued-fraction fit degenerates at support point {index}")]
    DegeneratePoint { index: usize },

    #[error("fit support needs distinct abscissae and matching lengths")]
    InvalidFitData,

    #[error("overlap integral diverges for ell = {ell}")]
    NonIntegrable { ell: u32 },

    #[error("quadrature with {nodes} nodes cannot integrate degree {degree} exactly")]
    RuleTooSmall { nodes: usize, degree: usize },

    #[error("radial grid has {points} points, need at least {required}")]
    GridTooCoarse { points: usize, required: usize },

    #[error("{needed} levels requested but only {available} available")]
    InsufficientLevels { needed: usize, available: usize },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
