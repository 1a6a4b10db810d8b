use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is not Hermitian (max |a_ij - conj(a_ji)| = {max_deviation:e})")]
    NonHermitian { max_deviation: f64 },

    #[error("not a density matrix: {0}")]
    NotAState(String),

    #[error("invalid spectrum: {0}")]
    InvalidSpectrum(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("dimension must be at least 2, got {0}")]
    InvalidDimension(usize),

    #[error("chart point ({xi3}, {xi8}) lies outside the qutrit chamber")]
    OutOfChamber { xi3: f64, xi8: f64 },

    #[error("moduli parameter zeta = {0} is outside [0, pi/3]")]
    ModuliOutOfRange(f64),

    #[error(
        "master equations violated: |sum(pi) - 1| = {trace_residual:e}, |sum(pi^2) - n| = {square_residual:e}"
    )]
    MasterEquationViolated {
        trace_residual: f64,
        square_residual: f64,
    },

    #[error("matrix is not unitary (max |UU^dag - I| = {max_deviation:e})")]
    NotUnitary { max_deviation: f64 },

    #[error("projection did not converge after {cycles} cycles (residual {residual:e})")]
    NoConvergence { cycles: usize, residual: f64 },

    #[error("no feasible active set found")]
    InfeasibleModel,

    #[error("invalid input: {0}")]
    Input(String),
}

pub type Result<T> = std::result::Result<T, Error>;
