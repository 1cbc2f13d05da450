use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is not unitary (max deviation {deviation:.3e})")]
    NotUnitary { deviation: f64 },
    #[error("matrix is not a proper rotation (max deviation {deviation:.3e})")]
    NotRotation { deviation: f64 },
    #[error("quaternion has zero norm")]
    ZeroQuaternion,
    #[error("invalid pulse: {0}")]
    InvalidPulse(String),
    #[error("composite sequence `{0}` has no pulses")]
    EmptySequence(String),
    #[error("invalid error point: {0}")]
    InvalidErrorPoint(String),
    #[error("invalid grid: {0}")]
    InvalidGrid(String),
    #[error("Monte Carlo estimate needs at least one sample")]
    ZeroSamples,
    #[error("invalid design problem: {0}")]
    InvalidProblem(String),
    #[error("design problem has no free parameters")]
    NoFreeParameters,
    #[error("internal consistency failure: {0}")]
    Consistency(String),
}

pub type Result<T> = std::result::Result<T, Error>;
