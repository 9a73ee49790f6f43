//! Ballot files, vote tables and machine-readable results.

mod blt;
mod json;
mod tables;

pub use blt::{parse_blt, write_blt, ElectionFile};
pub use json::{
    allocation_to_json, election_from_json, election_to_json, rational_from_json, rational_to_json,
    result_from_json, result_to_json, to_pretty, witness_to_json,
};
pub use tables::{parse_cumulative, parse_mixed, parse_party_votes, parse_scores, write_party_votes};

use ballotworks_core::Error as CoreError;

#[derive(Debug, thiserror::Error)]
pub enum IoError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: candidate index {index} is outside 1..={candidates}")]
    CandidateIndexOutOfRange { line: usize, index: i64, candidates: usize },
    #[error("ballot section has no terminating 0 line")]
    MissingTerminator,
    #[error(transparent)]
    Core(#[from] CoreError),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{0}")]
    Schema(String),
}

impl IoError {
    pub(crate) fn syntax(line: usize, message: impl Into<String>) -> Self {
        IoError::Syntax { line, message: message.into() }
    }

    pub(crate) fn schema(message: impl Into<String>) -> Self {
        IoError::Schema(message.into())
    }
}

pub type IoResult<T> = Result<T, IoError>;
