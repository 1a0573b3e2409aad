//! Hardness reductions for symmetric hypergraph 2-spin systems: single-edge
//! witnesses, symmetrisation, edge replacement with its exact identity,
//! CSP splitting for the self-dual decision route, and degree certificates.

mod certificate;
mod csp;
mod error;
mod pipeline;
mod table;
mod witness;

pub use certificate::{binomial_inequality, check_binomial_inequality, min_delta_certificate, DegreeReport};
pub use csp::{csp_split, CspInstance, SplitReport};
pub use error::ReductionError;
pub use pipeline::{
    edge_replace, pair_table, partition_with_cut, symmetrise_witness, verify_conn1, IdentityReport, Replacement,
    Symmetrised,
};
pub use table::PairTable;
pub use witness::{witness_search, HardnessWitness, Route};
