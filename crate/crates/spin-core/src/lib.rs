//! Exact computation for 2-spin systems on uniform hypergraphs whose edge
//! interaction is a symmetric function of the spins on the edge.
//!
//! Everything here is exact: weights, partition functions and conditional
//! marginals are arbitrary-precision rationals.

mod conditioning;
mod easy;
mod engine;
mod error;
mod function;
mod hypergraph;
mod marginal;
pub mod rational;

pub use conditioning::{parse_list, AdmissibleCollection};
pub use easy::easy_partition;
pub use engine::{
    conditioned_weights, is_admissible, is_admissible_with, partition_function, partition_function_split,
    partition_function_with, weight, Configuration, EnumOptions, CAP_ENV_VAR, DEFAULT_CAP,
};
pub use error::SpinError;
pub use function::{EasyKind, SymmetricFunction};
pub use hypergraph::{Graph, Hypergraph, HypergraphBuilder};
pub use marginal::{marginal, marginal_with, MarginalTable};
pub use rational::Rational;
