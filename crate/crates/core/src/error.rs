use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("numbers belong to different generator contexts")]
    ContextMismatch,
    #[error("sign undecided at the maximum precision budget ({bits} bits)")]
    PrecisionExhausted { bits: u32 },
    #[error("product of two irrational numbers involving opaque generators is not representable")]
    NonLinearProduct,
    #[error("division by zero")]
    DivisionByZero,
    #[error("invalid generator context: {0}")]
    InvalidContext(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("lattice basis is singular")]
    SingularBasis,
    #[error("lattice basis is too ill-conditioned to bound the enumeration box")]
    IllConditioned,
    #[error("rational dependence detected: {0}")]
    DependenceDetected(String),
    #[error("invalid window: {0}")]
    InvalidWindow(String),
    #[error("operation requires a Hecke scheme")]
    NotHeckeScheme,
    #[error("at least two points are required")]
    NotEnoughPoints,
    #[error("empty sample")]
    EmptySample,
    #[error("group membership could not be decided for {0}")]
    MembershipUnknown(String),
    #[error("translation {0} is not in the group")]
    NotInGroup(String),
    #[error("windows have different measures ({0} vs {1})")]
    MeasureMismatch(String, String),
    #[error("shift set leaves a residual of positive measure: {0}")]
    ResidualNonzero(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("configuration error: {0}")]
    Config(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}
