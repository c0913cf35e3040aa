use thiserror::Error;

/// Errors raised by the solvers in this crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum GameError {
    #[error("invalid network configuration: {0}")]
    InvalidConfig(String),

    #[error("reduction left no strategies with positive payoff (boundaries meet)")]
    EmptyReduction,

    #[error("point ({xi}, {eta}) lies outside the reduced rectangle")]
    OutOfRectangle { xi: f64, eta: f64 },

    #[error("closed form only covers a <= 1/2, got a = {a}")]
    WrongRegime { a: f64 },

    #[error("geometry is case {found}, expected case {expected}")]
    WrongCase { expected: String, found: String },

    #[error("resolution {got} is below the minimum of {min}")]
    InvalidResolution { got: usize, min: usize },

    #[error("linear program failed: {0}")]
    LpFailure(String),

    #[error("degenerate geometry: {0}")]
    DegenerateGeometry(String),
}

pub type Result<T> = std::result::Result<T, GameError>;
