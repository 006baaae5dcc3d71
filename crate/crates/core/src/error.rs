use thiserror::Error;

/// Errors produced anywhere in the crate.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },

    #[error("line {line}: self-loop on vertex {vertex} (graph states carry no self-loops)")]
    SelfLoop { line: usize, vertex: usize },

    #[error("missing `qubits` header")]
    MissingHeader,

    #[error("vertex {vertex} out of range for {num_qubits} qubit(s)")]
    VertexOutOfRange { vertex: usize, num_qubits: usize },

    #[error("arc {from}->{to}: {reason}")]
    InvalidArc {
        from: usize,
        to: usize,
        reason: String,
    },

    #[error("invalid angle `{0}`")]
    InvalidAngle(String),

    #[error("expected {expected} qubit preparations, got {found}")]
    PrepCount { expected: usize, found: usize },

    #[error("number of qubits must be at least 1")]
    NoQubits,

    #[error("{requested} qubits exceeds the simulator limit of {limit}")]
    TooManyQubits { requested: usize, limit: usize },

    #[error("invalid state: {0}")]
    InvalidState(String),

    #[error("shot count must be at least 1")]
    ZeroShots,

    #[error("invalid sweep: {0}")]
    InvalidSweep(String),

    #[error("cross-check failed: {0}")]
    CrossCheck(String),
}

pub type Result<T> = std::result::Result<T, Error>;
