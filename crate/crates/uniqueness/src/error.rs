use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum UniquenessError {
    #[error("not antiferromagnetic: beta*gamma = {product} >= 1")]
    NotAntiferro { product: f64 },
    #[error("gamma must be positive")]
    ZeroGamma,
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("no critical interval: sqrt(beta*gamma) >= (d-1)/(d+1)")]
    NoInterval,
    #[error("fixed-point test and interval test disagree: {0}")]
    InconsistentCriteria(String),
    #[error("graph has {needed} vertices, enumeration cap is {cap}")]
    CapExceeded { needed: usize, cap: usize },
    #[error("no certified degree below 2^52 for beta0 = {beta0}; the bounds need roughly 10^{log10_estimate:.1}")]
    DeltaOutOfRange { beta0: f64, log10_estimate: f64 },
}
