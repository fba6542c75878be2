//! Crate-wide error type.

use thiserror::Error;

/// Errors surfaced by the planning library.
///
/// `InvalidScenario`, `InvalidExperiment` and `FreeSpaceExhausted` are
/// configuration problems (bad user input); `Io`/`Json` wrap the underlying
/// failures encountered while reading or writing files.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid polyline: {0}")]
    InvalidPolyline(String),

    #[error("polyline junction mismatch: first path does not end where the second starts")]
    PolylineJunctionMismatch,

    #[error("invalid scenario: {0}")]
    InvalidScenario(String),

    #[error("invalid cost model: {0}")]
    InvalidCostModel(String),

    #[error("invalid planner parameters: {0}")]
    InvalidParams(String),

    #[error("invalid experiment spec: {0}")]
    InvalidExperiment(String),

    #[error(
        "free space appears to have (near) zero measure: \
         {rejections} consecutive samples hit obstacles"
    )]
    FreeSpaceExhausted { rejections: u64 },

    #[error("unknown bundled scenario {name:?} and no such file exists")]
    UnknownScenario { name: String },

    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// `true` for errors caused by bad user input (CLI maps these to exit
    /// code 2), `false` for I/O-level failures (exit code 3).
    pub fn is_usage(&self) -> bool {
        !matches!(self, Error::Io { .. } | Error::Json(_))
    }
}
