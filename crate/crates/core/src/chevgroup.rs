//! Chevalley groups over finite fields of characteristic 2 or 3, realized in
//! the adjoint representation.

pub mod adjoint;
pub mod collect;
pub mod field;
pub mod generators;
pub mod poly;
pub mod structure;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ChevError {
    #[error("field error: {0}")]
    Field(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("structure constants: {0}")]
    Structure(String),
    #[error("word: {0}")]
    Word(String),
    #[error("root data: {0}")]
    Root(String),
}

impl From<crate::rootdata::RootError> for ChevError {
    fn from(e: crate::rootdata::RootError) -> Self {
        ChevError::Root(e.to_string())
    }
}
