//! Error type shared across the library.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("duplicate id `{0}`")]
    DuplicateId(String),
    #[error("invalid identifier `{0}` (expected [A-Za-z_][A-Za-z0-9_]*)")]
    BadIdentifier(String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("unknown arrow `{0}`")]
    UnknownArrow(String),
    #[error("a path needs at least one arrow")]
    EmptyPath,
    #[error("arrow `{arrow}` does not start at `{at}`")]
    NonComposable { at: String, arrow: String },
    #[error("trivial paths are not accepted here")]
    TrivialPath,
    #[error("vertex `{vertex}` lies outside the chosen vertex set")]
    EndpointOutsideSubset { vertex: String },
    #[error("path ends at `{vertex}` inside the vertex set; expected a tail")]
    TargetInsideSubset { vertex: String },
    #[error("vectors live in different ambient path lists")]
    AmbientMismatch,
    #[error("element mixes endpoint pairs; expected support between one vertex pair")]
    MixedEndpoints,
    #[error("element has support outside its ambient path list")]
    OutsideAmbient,
    #[error("generator of length {len} exceeds the truncation bound {max_len}")]
    GeneratorTooLong { len: usize, max_len: usize },
    #[error("relation generator has a support path of length {len}; lengths must be at least 2")]
    RelationTooShort { len: usize },
    #[error("complement is not a relation ideal within truncation: {reason}")]
    NotARelationIdeal { reason: String },
    #[error("coalgebra is not admissible: {reason}")]
    NotAdmissible { reason: String },
    #[error("element is not a member of the expected component")]
    NotAMember,
    #[error("dimension {dim} exceeds the configured cap {cap}")]
    DimensionCap { dim: usize, cap: usize },
    #[error("comodule coaction row {index} is invalid: {reason}")]
    BadCoaction { index: usize, reason: String },
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{0}")]
    Unsupported(String),
}

impl Error {
    pub fn parse(line: usize, column: usize, message: impl Into<String>) -> Error {
        Error::Parse {
            line,
            column,
            message: message.into(),
        }
    }

    /// Process exit code for the command line front end: parse errors map to
    /// 2, every other domain error to 1.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse { .. } => 2,
            _ => 1,
        }
    }
}
