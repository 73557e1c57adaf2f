//! Error type shared by every module in the crate.

use thiserror::Error;

/// Errors reported by validation predicates and bound evaluations.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("empty vector or zero-sized matrix")]
    Empty,

    #[error("entries must be finite")]
    NonFinite,

    #[error("tolerance must be nonnegative and finite")]
    BadTolerance,

    #[error("operator is not unitary (max deviation {deviation:e} from identity)")]
    NotUnitary { deviation: f64 },

    #[error("state vector is not normalized (squared norm {norm_sq})")]
    NotNormalized { norm_sq: f64 },

    #[error("cannot normalize a zero vector")]
    ZeroVector,

    #[error("density matrix is not Hermitian (max deviation {deviation:e})")]
    NotHermitian { deviation: f64 },

    #[error("density matrix trace is {trace}, expected 1")]
    TraceNotOne { trace: f64 },

    #[error("density matrix is not positive semidefinite (minimum eigenvalue {min_eigenvalue:e})")]
    NotPositive { min_eigenvalue: f64 },

    #[error("operation requires a {expected} state, got a {found} state")]
    WrongStateKind {
        expected: &'static str,
        found: &'static str,
    },

    #[error("amplitude entries must be nonnegative (found {value})")]
    NegativeAmplitude { value: f64 },

    #[error("squared norm of an amplitude vector must not exceed 1 (found {norm_sq})")]
    AmplitudeNormTooLarge { norm_sq: f64 },

    #[error("index {name}={value} out of range for length {len}")]
    IndexOutOfRange {
        name: &'static str,
        value: usize,
        len: usize,
    },

    #[error("invalid chain coordinate ({t},{p},{q}) for length {len}")]
    InvalidCoordinate {
        t: usize,
        p: usize,
        q: usize,
        len: usize,
    },

    #[error("bound chain is not weakly decreasing at `{label}` (step +{increase:e})")]
    ChainNotDecreasing { label: String, increase: f64 },

    #[error("bound chain entry `{label}` is below the zero floor ({value:e})")]
    ChainBelowFloor { label: String, value: f64 },

    #[error(
        "exhaustive search over {size} labelings exceeds the cap of {cap}; \
         use the sampled strategy instead"
    )]
    SearchSpaceTooLarge { size: u128, cap: u128 },

    #[error("sampled search needs at least one sample")]
    NoSamples,

    #[error("unknown scenario id `{0}`")]
    UnknownScenario(String),

    #[error("scenario dimension must be at least 2, got {0}")]
    ScenarioDimension(usize),
}

pub type Result<T> = std::result::Result<T, Error>;
