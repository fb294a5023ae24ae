use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("syntax error: {0}")]
    Syntax(String),

    #[error("schema error{}: {message}", at_gate(*.gate))]
    Schema { gate: Option<usize>, message: String },

    #[error("semantic error{}: {message}", at_gate(*.gate))]
    Semantic { gate: Option<usize>, message: String },

    #[error("total dimension {dim} exceeds the simulation cap {cap}")]
    DimensionCap { dim: usize, cap: usize },

    #[error("infeasible: {0}")]
    Infeasible(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("degenerate graph: no non-local gates, compression bounds are undefined")]
    Degenerate,
}

fn at_gate(gate: Option<usize>) -> String {
    match gate {
        Some(i) => format!(" at gate {i}"),
        None => String::new(),
    }
}

impl Error {
    pub(crate) fn schema(gate: Option<usize>, message: impl Into<String>) -> Self {
        Error::Schema { gate, message: message.into() }
    }

    pub(crate) fn semantic(gate: Option<usize>, message: impl Into<String>) -> Self {
        Error::Semantic { gate, message: message.into() }
    }
}
