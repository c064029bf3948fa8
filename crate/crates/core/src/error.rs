use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid group: {0}")]
    InvalidGroup(String),

    #[error("partition {partition} has more than {max} parts")]
    PartitionTooLong { partition: String, max: usize },

    #[error("group mismatch: {0} vs {1}")]
    GroupMismatch(String, String),

    #[error("character has negative multiplicities")]
    NonGenuineCharacter,

    #[error("not a representation: multiplicity {mult} at highest weight {weight}")]
    NotARepresentation { weight: String, mult: i128 },

    #[error("dimension check failed: character has dimension {expected}, decomposition sums to {found}")]
    DimensionMismatch { expected: String, found: String },

    #[error("shape mismatch: expected {expected}, found {found}")]
    ShapeMismatch { expected: String, found: String },

    #[error("not a symplectic set: {0}")]
    NotSymplecticSet(String),

    #[error("invalid generator spec: {0}")]
    InvalidSpec(String),

    #[error("genus {g} is too small, need at least {min}")]
    GenusTooSmall { g: usize, min: usize },

    #[error("zero vector")]
    ZeroVector,

    #[error("syntax error at offset {offset}: expected {}", expected.join(" or "))]
    Syntax { offset: usize, expected: Vec<String> },

    #[error("table mismatch in row d={d}: {detail}")]
    TableMismatch { d: usize, detail: String },

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("malformed input: {0}")]
    Malformed(String),
}

pub type Result<T> = std::result::Result<T, Error>;
