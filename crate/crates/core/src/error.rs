//! Error type shared across the crate.

use std::path::PathBuf;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("io error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("malformed descriptor {path}: {msg}")]
    Descriptor { path: PathBuf, msg: String },

    #[error("malformed header in {path}: {msg}")]
    Header { path: PathBuf, msg: String },

    #[error("unsupported layer kind, layer {layer}: `{kind}`")]
    UnsupportedLayerKind { layer: usize, kind: String },

    #[error("shape mismatch, layer {layer}: {msg}")]
    ShapeMismatch { layer: usize, msg: String },

    #[error("weight out of range, layer {layer}")]
    WeightOutOfRange { layer: usize },

    #[error("invalid layer {layer}: {msg}")]
    InvalidLayer { layer: usize, msg: String },

    #[error("invalid config: {msg}")]
    InvalidConfig { msg: String },

    #[error("missing cost-table entry for component `{component}`")]
    MissingCostEntry { component: String },

    #[error("layer {layer} needs {deficit} more crossbar columns than the array provides")]
    ColumnCapacity { layer: usize, deficit: usize },

    #[error("dataset error: {msg}")]
    Dataset { msg: String },

    #[error("{msg}")]
    Invalid { msg: String },
}

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::Invalid { msg: msg.into() }
    }

    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
