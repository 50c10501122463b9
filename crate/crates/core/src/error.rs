use thiserror::Error;

use crate::expr::ExprError;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("sampled function has {got} values but the grid has {expected} points")]
    LengthMismatch { expected: usize, got: usize },

    #[error("non-finite sample at index {index} (x = {x})")]
    NonFinite { index: usize, x: f64 },

    #[error("functions live on different grids")]
    GridMismatch,

    #[error("requested {requested} levels, but the grid supports 1..={max}")]
    LevelCount { requested: usize, max: usize },

    #[error("eigensolver did not converge: {0}")]
    NoConvergence(String),

    #[error("superpotential is not asymptotically flat at the {side} end (spread {spread:e})")]
    NotFlat { side: &'static str, spread: f64 },

    #[error("invalid superpotential: {0}")]
    InvalidSuperpotential(String),

    #[error("zero mode too small at index {index} (x = {x}): {value:e}")]
    VanishingZeroMode { index: usize, x: f64, value: f64 },

    #[error("no normalizable zero mode of H- for this superpotential")]
    NoZeroMode,

    #[error("lambda = {0} lies in the forbidden band [-1, 0]")]
    ForbiddenLambda(f64),

    #[error("lambda + I(x) comes within {min_abs:e} of zero near x = {x} (pole)")]
    Pole { min_abs: f64, x: f64 },

    #[error("consistency check '{what}' failed: {value:e} > {tolerance:e}")]
    CrossCheck {
        what: &'static str,
        value: f64,
        tolerance: f64,
    },

    #[error("invalid Poschl-Teller parameters: {0}")]
    PtDomain(String),

    #[error("hypergeometric series does not terminate (alpha = {alpha}, beta = {beta})")]
    NonTerminating { alpha: f64, beta: f64 },

    #[error(transparent)]
    Expr(#[from] ExprError),

    #[error("expression evaluation failed at grid index {index} (x = {x}): {source}")]
    Sample {
        index: usize,
        x: f64,
        #[source]
        source: ExprError,
    },
}
