use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is not Hermitian (max deviation {deviation:e})")]
    NotHermitian { deviation: f64 },

    #[error("matrix is not anti-Hermitian (max deviation {deviation:e})")]
    NotAntiHermitian { deviation: f64 },

    #[error("Jacobi eigensolver did not converge after {sweeps} sweeps")]
    NoConvergence { sweeps: usize },

    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimMismatch { expected: usize, found: usize },

    #[error("states live in different spin spaces (2j = {left} vs 2j = {right})")]
    SpaceMismatch { left: u32, right: u32 },

    #[error("quadratic coefficients are not symmetric: c[{row}][{col}] != c[{col}][{row}]")]
    NonSymmetricCoefficients { row: usize, col: usize },

    #[error("exp(2|eps| j) overflows for eps = {eps}, 2j = {two_j}")]
    Overflow { eps: f64, two_j: u32 },

    #[error("operator couples states with |dm| not in {{0, 2}} (entry {value:e} at ({row}, {col}))")]
    NotBlockStructured { row: usize, col: usize, value: f64 },

    #[error("rotation axis is not a unit vector (norm {norm})")]
    BadAxis { norm: f64 },

    #[error("mean spin vanishes (|<J>| = {magnitude:e})")]
    MeanSpinVanishes { magnitude: f64 },

    #[error("closed form has a pole at vanishing mean spin (cos 4 eta = {cos4eta:e})")]
    PoleAtVanishingMeanSpin { cos4eta: f64 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}
