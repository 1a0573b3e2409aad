use spin_core::SpinError;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GadgetError {
    #[error(transparent)]
    Spin(#[from] SpinError),
    #[error("no strict majority for spin {spin} at vertex {vertex}")]
    NoMajority { vertex: usize, spin: u8 },
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("input gadget accuracy {have} is worse than the required {need}")]
    AccuracyInsufficient { have: String, need: String },
    #[error("epsilon must lie strictly between 0 and 1, got {0}")]
    InvalidEpsilon(String),
    #[error("conditioning is not admissible")]
    NotAdmissible,
    #[error("certification failed: {0}")]
    CertificationFailed(String),
    #[error("function does not support {0} through the built-in bases")]
    Unsupported(&'static str),
}
