//! Error type shared across the crate.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("derivative order {order} exceeds smoothness class {smoothness}")]
    OrderExceedsSmoothness { order: usize, smoothness: usize },

    #[error("profile support [{lo}, {hi}] exceeds [-{radius}, {radius}]")]
    SupportViolation { lo: f64, hi: f64, radius: f64 },

    #[error("insufficient smoothness: {0}")]
    InsufficientSmoothness(String),

    #[error("negative time t = {0}")]
    NegativeTime(f64),

    #[error("field too narrow: backward characteristic leaves the sampled extent inside the light cone (level {level}, node offset {node})")]
    FieldTooNarrow { level: usize, node: isize },

    #[error("iteration diverged: non-finite value at iterate {iterate}")]
    Diverged { iterate: usize },

    #[error("degenerate data: {0}")]
    DegenerateData(String),

    #[error("requested horizon t = {requested} exceeds field horizon t = {available}")]
    HorizonExceeded { requested: f64, available: f64 },

    #[error("power-law fit needs at least 3 pairs with positive entries, got {0}")]
    RegressionInput(String),

    #[error("comparison problem did not blow up before the hard cap t = {cap:e}")]
    NoBlowupBeforeCap { cap: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
