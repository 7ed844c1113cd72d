use alloc::string::String;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// A configuration value is out of its admissible range.
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    /// Not enough spatial degrees of freedom for the requested streams.
    #[error("not enough degrees of freedom: N_A - N_N = {available} < N_U = {streams}")]
    InsufficientDof { available: usize, streams: usize },

    /// The projected UT channel matrix lost rank; the drop must reschedule.
    #[error("projected channel matrix is rank deficient (pivot {pivot:e})")]
    RankDeficient { pivot: f64 },

    #[error("matrix is not Hermitian (relative asymmetry {0:e})")]
    NotHermitian(f64),

    #[error("Hermitian eigensolver did not converge")]
    NoConvergence,

    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },

    #[error("percentile of an empty sample set")]
    EmptySamples,

    #[error("unknown path loss model `{0}`")]
    UnknownModel(String),

    #[error("unknown sweep axis `{0}`")]
    UnknownAxis(String),

    #[error("sweep needs at least one value")]
    EmptySweep,
}
