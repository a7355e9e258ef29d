use std::io;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("access sequence is empty")]
    EmptySequence,

    #[error("key {key} is outside the keyspace 1..={n}{}", line_suffix(*.line))]
    KeyOutOfRange {
        key: i64,
        n: usize,
        line: Option<usize>,
    },

    #[error("keyspace size must be at least 1")]
    BadN,

    #[error("weight {index} is not a finite positive number ({value})")]
    NonPositiveWeight { index: usize, value: f64 },

    #[error("weight {index} is too small to change the running prefix sum")]
    PrecisionLoss { index: usize },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("base must be greater than 1 (got {0})")]
    BadBase(f64),

    #[error("instance too large: {0}")]
    TooLarge(String),

    #[error("invalid workload: {0}")]
    BadSpec(String),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error(transparent)]
    Io(#[from] io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

fn line_suffix(line: Option<usize>) -> String {
    match line {
        Some(l) => format!(" (line {l})"),
        None => String::new(),
    }
}
