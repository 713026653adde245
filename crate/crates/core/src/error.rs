use thiserror::Error;

/// Errors raised by the linear algebra layer, the measures, the bound
/// evaluators and the campaign harness.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("invalid subsystem layout: {0}")]
    Layout(String),

    #[error("invalid subsystem index {index} for {count} subsystems")]
    InvalidSubsystem { index: usize, count: usize },

    #[error("matrix is not Hermitian (max deviation {deviation:e})")]
    NotHermitian { deviation: f64 },

    #[error("matrix is not positive semidefinite (eigenvalue {eigenvalue:e})")]
    NotPsd { eigenvalue: f64 },

    #[error("state is not normalized (norm squared {norm_sqr})")]
    NotNormalized { norm_sqr: f64 },

    #[error("invalid bipartition: {0}")]
    Bipartition(String),

    #[error("precondition violated: {0}")]
    Domain(String),

    #[error("bound hypotheses cannot be evaluated: {0}")]
    Infeasible(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("invalid campaign configuration: {0}")]
    Config(String),

    #[error("sampler exhausted after {attempts} attempts: {reason}")]
    SamplerExhausted { attempts: usize, reason: String },
}

pub type Result<T> = std::result::Result<T, Error>;
