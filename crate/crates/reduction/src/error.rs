use classify::ClassifyError;
use gadgets::GadgetError;
use spin_core::SpinError;
use thiserror::Error;
use uniqueness::UniquenessError;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ReductionError {
    #[error(transparent)]
    Spin(#[from] SpinError),
    #[error(transparent)]
    Classify(#[from] ClassifyError),
    #[error(transparent)]
    Gadget(#[from] GadgetError),
    #[error(transparent)]
    Uniqueness(#[from] UniquenessError),
    #[error("{0} is tractable; use the closed-form partition function instead")]
    Easy(String),
    #[error("no witness within the search budget: {0}")]
    NoWitnessInBudget(String),
    #[error("off-diagonal weight mu01 * mu10 is zero")]
    ZeroOffDiagonal,
    #[error("pair table is not symmetric: mu01 = {mu01}, mu10 = {mu10}")]
    AsymmetricTable { mu01: String, mu10: String },
    #[error("equality gadget fails its certification: {0}")]
    BadGadget(String),
    #[error("witness takes the decision route; there is no pair table to certify")]
    WrongRoute,
    #[error("invalid instance: {0}")]
    InvalidInstance(String),
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
}
