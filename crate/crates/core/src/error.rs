use thiserror::Error;

use crate::cube::Vertex;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid dimension {0}")]
    InvalidDimension(u32),

    #[error("vertex {value} is outside the {bits}-bit label space")]
    VertexOutOfRange { value: u64, bits: u32 },

    #[error("level {level} is not a valid {kind} level in dimension {n}")]
    LevelOutOfRange {
        kind: &'static str,
        level: u32,
        n: u32,
    },

    #[error("view requires dimension at least {required}, got {n}")]
    ViewUndefined { required: u32, n: u32 },

    #[error("terminal set must contain three distinct vertices")]
    DuplicateTerminal,

    #[error("vertex {0:?} is not in the graph")]
    NotInGraph(Vertex),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("resource guard exceeded: {0}")]
    ResourceGuard(String),

    #[error("search budget of {0} nodes exhausted")]
    BudgetExhausted(u64),

    #[error("construction failed: {0}")]
    Construction(String),

    #[error("{0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
