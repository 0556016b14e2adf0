use thiserror::Error;

use crate::report::Report;

#[derive(Debug, Error)]
pub enum LabError {
    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("dimension mismatch: {0}")]
    DimMismatch(String),

    #[error("invalid field: {0}")]
    InvalidField(String),

    #[error("field mismatch: {0}")]
    FieldMismatch(String),

    #[error("{0} needs 1/2, which does not exist in characteristic 2")]
    CharacteristicTwo(&'static str),

    #[error("scalar error: {0}")]
    Scalar(String),

    #[error("structure constants are not associative")]
    NotAssociative(Box<Report>),

    #[error("invalid {what}")]
    Invalid { what: &'static str, report: Box<Report> },

    #[error("gate failed: {gate}")]
    Gate { gate: String, report: Box<Report> },

    #[error("not a subalgebra: {0}")]
    NotSubalgebra(String),

    #[error("not a direct-sum decomposition: {0}")]
    NotDirectSum(String),

    #[error("singular matrix: {0}")]
    Singular(String),

    #[error("weight must be nonzero: {0}")]
    ZeroWeight(&'static str),

    #[error("candidate space has {count} elements, budget is {budget}")]
    Budget { count: u128, budget: u128 },

    #[error("unknown {kind}: {name}")]
    Unknown { kind: &'static str, name: String },

    #[error("bundle error at {path}: {msg}")]
    Bundle { path: String, msg: String },

    #[error("internal consistency failure: {0}")]
    Internal(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl LabError {
    pub fn bundle(path: impl Into<String>, msg: impl Into<String>) -> Self {
        LabError::Bundle {
            path: path.into(),
            msg: msg.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, LabError>;
