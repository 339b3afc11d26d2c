use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("cannot write {path}: {source}")]
    Write {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{path}: malformed CSV: {source}")]
    Csv {
        path: PathBuf,
        #[source]
        source: csv::Error,
    },

    #[error("{path}: expected header `{expected}`, found `{found}`")]
    Header {
        path: PathBuf,
        expected: String,
        found: String,
    },

    #[error("duplicate label `{label}` (lines {first_line} and {second_line})")]
    DuplicateLabel {
        label: String,
        first_line: usize,
        second_line: usize,
    },

    #[error("unknown node label `{label}` at line {line}")]
    UnknownLabel { label: String, line: usize },

    #[error("graph has no nodes")]
    EmptyGraph,

    #[error("degenerate graph: {0}")]
    DegenerateGraph(String),

    #[error("modularity is undefined for a graph with zero total edge weight")]
    UndefinedModularity,

    #[error("PageRank did not converge after {iterations} iterations (last L1 residual {residual:e})")]
    NotConverged { iterations: usize, residual: f64 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("size mismatch: {left} vs {right}")]
    SizeMismatch { left: usize, right: usize },

    #[error("invalid graph JSON: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// True when the error was caused by the caller's input rather than by
    /// the analysis itself. The CLI maps these to exit code 1.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::Io { .. }
                | Error::Csv { .. }
                | Error::Header { .. }
                | Error::DuplicateLabel { .. }
                | Error::UnknownLabel { .. }
                | Error::EmptyGraph
                | Error::DegenerateGraph(_)
                | Error::UndefinedModularity
                | Error::InvalidParameter(_)
                | Error::Json(_)
        )
    }
}
