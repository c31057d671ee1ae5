use std::path::PathBuf;

use thiserror::Error;

/// Error type shared by the whole crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{path}: {detail}")]
    Parse { path: PathBuf, detail: String },

    #[error("{path}: invalid value: {detail}")]
    Value { path: PathBuf, detail: String },

    #[error("histogram is not square: {rows} rows x {cols} columns")]
    NonSquare { rows: usize, cols: usize },

    #[error("histogram has zero total mass")]
    ZeroTotal,

    #[error("histogram sides differ: {0} vs {1}")]
    SideMismatch(u32, u32),

    #[error("integer overflow while {0}")]
    Overflow(&'static str),

    #[error("grid side must be at least 2, got {0}")]
    SideTooSmall(u32),

    #[error("L={l} is out of range for side {side}: valid values are 1..={max}")]
    InvalidL { l: u32, side: u32, max: u32 },

    #[error(
        "network would have {arcs} arcs, above the cap of {cap} (override with WASS1_ARC_CAP)"
    )]
    ArcCapExceeded { arcs: u64, cap: u64 },

    #[error("invalid network: {0}")]
    InvalidNetwork(String),

    #[error("invalid supplies: {0}")]
    BadSupplies(String),

    #[error("flow problem is infeasible")]
    Infeasible,

    #[error("numeric limit reached: {0}")]
    NumericLimit(String),

    #[error("optimality certificate failed: {0}")]
    CertificateFailed(String),

    #[error("{0}")]
    Domain(String),
}

pub type Result<T> = std::result::Result<T, Error>;
