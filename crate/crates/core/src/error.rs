use crate::integrator::Trajectory;
use crate::lab::SweepResult;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("fields live on different grids ({0} vs {1} points)")]
    GridMismatch(usize, usize),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("(s, {index}) = ({s}, {value}) is outside the theorem's scope: {predicate}")]
    OutOfScope {
        s: f64,
        index: &'static str,
        value: f64,
        predicate: String,
    },

    #[error("requested |t_final| = {t_final} exceeds the guaranteed lifespan {lifespan}")]
    BeyondLifespan { t_final: f64, lifespan: f64 },

    /// The partial trajectory up to the last healthy step is kept.
    #[error("blow-up detected at t = {time}: {reason}")]
    BlowUp {
        time: f64,
        reason: String,
        partial: Option<Box<Trajectory>>,
    },

    /// A sweep leg failed; the legs that did complete are kept.
    #[error("sweep aborted at delta = {delta}: {reason}")]
    SweepAborted {
        delta: f64,
        reason: String,
        partial: Box<SweepResult>,
    },

    #[error("not enough data: {0}")]
    InsufficientData(String),
}
