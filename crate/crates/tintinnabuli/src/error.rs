//! Error types shared across the crate.

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// Malformed input values: bad pitch syntax, invalid scales, empty melodies.
    #[error("validation error: {0}")]
    Validation(String),

    /// A pitch was expected to belong to a pitch space but does not.
    #[error("membership error: {0}")]
    Membership(String),

    /// An operation walked off the end of the gamut or the member list.
    #[error("range error: {0}")]
    Range(String),

    /// A process or generator was configured inconsistently.
    #[error("configuration error: {0}")]
    Config(String),

    /// A stage of score assembly failed.
    #[error("assembly error in stage `{stage}`: {message}")]
    Assembly { stage: &'static str, message: String },

    /// A document could not be read back into a score.
    #[error("import error: {0}")]
    Import(String),

    /// Two scores could not be aligned slot for slot.
    #[error("alignment error: {0}")]
    Alignment(String),

    /// A correction referenced a slot that does not exist.
    #[error("invalid slot: {0}")]
    InvalidSlot(String),
}

impl Error {
    pub fn in_stage(self, stage: &'static str) -> Error {
        Error::Assembly {
            stage,
            message: self.to_string(),
        }
    }
}
