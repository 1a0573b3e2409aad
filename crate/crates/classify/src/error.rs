use spin_core::SpinError;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassifyError {
    #[error(transparent)]
    Spin(#[from] SpinError),
    #[error("arity {k} exceeds the polymorphism cap {cap}")]
    CapExceeded { k: usize, cap: usize },
    #[error("function is not Boolean")]
    NotBoolean,
    #[error("support undetermined: {0}")]
    Undetermined(String),
}
