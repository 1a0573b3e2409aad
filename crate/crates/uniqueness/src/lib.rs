//! Antiferromagnetic 2-spin systems on the infinite Δ-regular tree:
//! fixed points, uniqueness verdicts, critical field intervals,
//! normalisation, and degree certificates for thin parameter strips.
//!
//! Numerics are binary64; verdicts within `TOLERANCE` of a boundary are
//! reported as indeterminate. The graph partition function is also
//! available exactly over rationals.

mod error;
mod normalise;
mod partition;
mod strip;
mod tree;

pub use error::UniquenessError;
pub use normalise::{normalisation_factor, normalise};
pub use partition::{binary_partition, binary_partition_exact, hard_core_threshold_exact};
pub use strip::{log10_degree_estimate, strip_certificate, strip_checks, InequalityCheck, StripCertificate};
pub use tree::{
    analyse, critical_interval, fixed_point, hard_core_threshold, uniqueness_verdict, CriticalInterval,
    SpinSystemParams, TreeAnalysis, Verdict, TOLERANCE,
};
