use thiserror::Error;

/// Errors shared across the crate. Axiom failures carry the name of the
/// violated law and a witnessing tuple of element indices so that every
/// rejection is replayable.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed input: {0}")]
    Malformed(String),

    #[error("axiom violation: {law} at witness {witness:?}")]
    Axiom { law: String, witness: Vec<usize> },

    #[error("contract violation: {0}")]
    Contract(String),

    #[error("capacity exceeded: {0}")]
    Capacity(String),

    #[error("unsupported operation: {0}")]
    Unsupported(String),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("unknown identifier: {0}")]
    Unknown(String),
}

impl Error {
    pub fn axiom(law: &str, witness: &[usize]) -> Self {
        Error::Axiom {
            law: law.to_string(),
            witness: witness.to_vec(),
        }
    }
}
