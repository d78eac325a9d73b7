use thiserror::Error;

/// Unified error type for the whole crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error(
        "derivative order {requested} exceeds the free-ring bound {bound} \
         (raise it with REFSUSY_MAX_DERIV)"
    )]
    DerivativeBoundExceeded { requested: u32, bound: u32 },

    #[error("parity violation in `{field}`: {detail}")]
    ParityViolation { field: String, detail: String },

    #[error("constraint violation: {0}")]
    ConstraintViolation(String),

    #[error("degenerate case: {0}")]
    DegenerateCase(String),

    #[error("no rational-function square root exists for {0}")]
    NotAPerfectSquare(String),

    #[error("coefficient pole at grid point q = {q}")]
    PoleOnGrid { q: f64 },

    #[error("requested {requested} eigenvalues but matrix dimension is {dim}")]
    DimensionExceeded { requested: usize, dim: usize },

    #[error("operation not supported in this coefficient ring: {0}")]
    UnsupportedRing(&'static str),

    #[error("numeric verification error: {0}")]
    Numeric(String),

    #[error("config error: {0}")]
    Config(String),

    #[error("i/o error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub fn io(path: impl AsRef<std::path::Path>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.as_ref().display().to_string(),
            source,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
