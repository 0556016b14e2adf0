pub mod algebra;
pub mod bimodule;
pub mod bundle;
pub mod cli;
pub mod double;
pub mod error;
pub mod field;
pub mod fixtures;
pub mod frobenius;
pub mod matched_pair;
pub mod matrix;
pub mod operator;
pub mod report;
pub mod search;
pub mod tensor;
pub mod verify;
pub mod ybe;
