//! Structural properties of symmetric functions: easy membership,
//! self-duality, pin and equality support, Schaefer polymorphisms, and the
//! case split used to build hardness witnesses.

mod cases;
pub mod edge;
mod error;
mod pair;
mod polymorphism;
mod support;

pub use cases::{case_trichotomy, Case, ClassificationReport};
pub use error::ClassifyError;
pub use pair::{
    balance_matrix, balance_nullity, pair_gadget, rank, zbal_table, BalanceRow, PairGadgetTable, ZbalTable,
};
pub use polymorphism::{csp_decision_verdict, polymorphism_check, CspVerdict, Polymorphism, BINARY_CAP, TERNARY_CAP};
pub use support::{
    support_verdict, three_edge_gadget, NoReason, Property, SearchBudget, Support, SupportVerdict, SupportWitness,
    WitnessKind,
};

use spin_core::{EasyKind, SymmetricFunction};

pub fn detect_easy(f: &SymmetricFunction) -> Option<EasyKind> {
    EasyKind::detect(f)
}

pub fn is_self_dual(f: &SymmetricFunction) -> bool {
    f.is_self_dual()
}
