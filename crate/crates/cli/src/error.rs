use classify::ClassifyError;
use gadgets::GadgetError;
use reduction::ReductionError;
use spin_core::SpinError;
use thiserror::Error;
use uniqueness::UniquenessError;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {message}")]
    Parse { path: String, message: String },
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{0}")]
    Refused(String),
    #[error("{0}")]
    Internal(String),
    #[error(transparent)]
    Spin(#[from] SpinError),
    #[error(transparent)]
    Classify(#[from] ClassifyError),
    #[error(transparent)]
    Gadget(#[from] GadgetError),
    #[error(transparent)]
    Uniqueness(#[from] UniquenessError),
    #[error(transparent)]
    Reduction(#[from] ReductionError),
}

pub const EXIT_PARSE: i32 = 2;
pub const EXIT_CAP: i32 = 3;
pub const EXIT_REFUSED: i32 = 4;
pub const EXIT_INTERNAL: i32 = 5;

fn spin_code(e: &SpinError) -> i32 {
    match e {
        SpinError::CapExceeded { .. } => EXIT_CAP,
        SpinError::Parse(_) => EXIT_PARSE,
        _ => EXIT_REFUSED,
    }
}

fn classify_code(e: &ClassifyError) -> i32 {
    match e {
        ClassifyError::Spin(s) => spin_code(s),
        ClassifyError::CapExceeded { .. } => EXIT_CAP,
        _ => EXIT_REFUSED,
    }
}

fn gadget_code(e: &GadgetError) -> i32 {
    match e {
        GadgetError::Spin(s) => spin_code(s),
        GadgetError::CertificationFailed(_) => EXIT_INTERNAL,
        _ => EXIT_REFUSED,
    }
}

fn uniqueness_code(e: &UniquenessError) -> i32 {
    match e {
        UniquenessError::CapExceeded { .. } => EXIT_CAP,
        UniquenessError::InconsistentCriteria(_) => EXIT_INTERNAL,
        _ => EXIT_REFUSED,
    }
}

fn reduction_code(e: &ReductionError) -> i32 {
    match e {
        ReductionError::Spin(s) => spin_code(s),
        ReductionError::Classify(c) => classify_code(c),
        ReductionError::Gadget(g) => gadget_code(g),
        ReductionError::Uniqueness(u) => uniqueness_code(u),
        ReductionError::Inconsistent(_) | ReductionError::BadGadget(_) => EXIT_INTERNAL,
        _ => EXIT_REFUSED,
    }
}

impl CliError {
    pub fn parse(path: &str, e: impl ToString) -> Self {
        CliError::Parse { path: path.to_string(), message: e.to_string() }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse { .. } | CliError::Io { .. } => EXIT_PARSE,
            CliError::Refused(_) => EXIT_REFUSED,
            CliError::Internal(_) => EXIT_INTERNAL,
            CliError::Spin(e) => spin_code(e),
            CliError::Classify(e) => classify_code(e),
            CliError::Gadget(e) => gadget_code(e),
            CliError::Uniqueness(e) => uniqueness_code(e),
            CliError::Reduction(e) => reduction_code(e),
        }
    }
}
