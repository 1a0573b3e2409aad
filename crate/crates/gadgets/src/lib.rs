//! Hypergraph gadgets for symmetric 2-spin interactions: pinning,
//! equality and conditional-distribution realisers, each certified by exact
//! enumeration where the assembled hypergraph fits the enumeration cap.

mod conditional;
mod error;
mod exact;
mod gadget;
mod power;

pub use conditional::{realise_conditional, GadgetLibrary, PowerLibrary};
pub use error::GadgetError;
pub use exact::{exact_equality_search, minimise_unsatisfiable, ExactEquality};
pub use gadget::{
    measure_conditioned, measure_table, realisation_error, verify_realisation, Certification, Gadget, GadgetProperty,
    Replication,
};
pub use power::{lift_equality, power_pinning, powering_exponent, required_delta, symmetrise_equality};
