use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpinError {
    #[error("function has arity {function} but the hypergraph is {hypergraph}-uniform")]
    ArityMismatch { function: usize, hypergraph: usize },
    #[error("enumeration needs {needed} free variables, cap is {cap}")]
    CapExceeded { needed: usize, cap: usize },
    #[error("conditioned mass is zero")]
    NotAdmissible,
    #[error("function is not one of the seven easy functions")]
    NotEasy,
    #[error("vertex {vertex} out of range for {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("invalid function: {0}")]
    InvalidFunction(String),
    #[error("invalid hypergraph: {0}")]
    InvalidHypergraph(String),
    #[error("invalid conditioning: {0}")]
    InvalidConditioning(String),
    #[error("parse error: {0}")]
    Parse(String),
}
