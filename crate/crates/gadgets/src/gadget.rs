use std::fmt;

use num_traits::{One, Zero};
use spin_core::rational::fmt_rational;
use spin_core::SymmetricFunction;
use spin_core::{
    conditioned_weights, AdmissibleCollection, EnumOptions, Hypergraph, MarginalTable, Rational, SpinError,
};

use crate::error::GadgetError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GadgetProperty {
    PinTo(bool),
    Equality(usize),
    /// Terminals should follow `target`, the conditional table of the
    /// source instance.
    Conditional {
        conditioning: AdmissibleCollection,
        target: MarginalTable,
    },
}

impl fmt::Display for GadgetProperty {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GadgetProperty::PinTo(s) => write!(f, "pin-to-{}", *s as u8),
            GadgetProperty::Equality(t) => write!(f, "{t}-equality"),
            GadgetProperty::Conditional { conditioning, .. } => write!(f, "conditional [{conditioning}]"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Certification {
    /// Measured by exact enumeration.
    Exact,
    /// Too large to enumerate; the measured value is the analytic bound.
    AnalyticOnly,
}

/// Bookkeeping for a powered construction: `r` copies, with per-copy
/// weights `p` for the wanted outcome and `q` for the unwanted one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Replication {
    pub r: usize,
    pub p: Rational,
    pub q: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Gadget {
    pub hypergraph: Hypergraph,
    pub terminals: Vec<usize>,
    pub property: GadgetProperty,
    pub epsilon_target: Rational,
    pub epsilon_measured: Rational,
    pub certification: Certification,
    /// Vertices whose removal splits the gadget into pieces small enough
    /// to enumerate; terminals are always included.
    pub cut: Vec<usize>,
    pub replication: Option<Replication>,
}

impl Gadget {
    pub fn is_certified(&self) -> bool {
        self.epsilon_measured <= self.epsilon_target
    }
}

impl fmt::Display for Gadget {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self.terminals.iter().map(ToString::to_string).collect();
        write!(
            f,
            "{} gadget: {} vertices, {} edges, terminals {}, epsilon target {}, measured {}",
            self.property,
            self.hypergraph.vertex_count(),
            self.hypergraph.edge_count(),
            terms.join(","),
            fmt_rational(&self.epsilon_target),
            fmt_rational(&self.epsilon_measured)
        )?;
        if self.certification == Certification::AnalyticOnly {
            f.write_str(" (analytic-only)")?;
        }
        Ok(())
    }
}

/// Exact distribution of `subject` on `h`, enumerating with the cut vertices
/// fixed so that the rest falls apart into small components.
pub fn measure_table(
    f: &SymmetricFunction,
    h: &Hypergraph,
    subject: &[usize],
    cut: &[usize],
) -> Result<MarginalTable, SpinError> {
    measure_conditioned(f, h, &AdmissibleCollection::empty(), subject, cut)
}

/// As [`measure_table`], under the conditioning `cond`.
pub fn measure_conditioned(
    f: &SymmetricFunction,
    h: &Hypergraph,
    cond: &AdmissibleCollection,
    subject: &[usize],
    cut: &[usize],
) -> Result<MarginalTable, SpinError> {
    let mut all = subject.to_vec();
    all.extend(cut.iter().filter(|v| !subject.contains(v)));
    let weights = conditioned_weights(f, h, cond, &all, &EnumOptions::from_env())?;
    let mut table = MarginalTable::from_weights(all, weights)?;
    while table.subject().len() > subject.len() {
        table = table.sum_out(table.subject().len() - 1);
    }
    Ok(table)
}

/// Slack of a pinning or equality table against its definition.
pub fn realisation_error(property: &GadgetProperty, table: &MarginalTable) -> Rational {
    match property {
        GadgetProperty::PinTo(s) => table.all_equal(!*s).clone(),
        GadgetProperty::Equality(_) => {
            let two = Rational::from_integer(2.into());
            let worst =
                [false, true].iter().map(|&s| Rational::one() - &two * table.all_equal(s)).max().expect("two entries");
            if worst < Rational::zero() {
                Rational::zero()
            } else {
                worst
            }
        }
        GadgetProperty::Conditional { target, .. } => {
            MarginalTable::from_weights(target.subject().to_vec(), table.probabilities().to_vec())
                .map(|t| t.max_abs_diff(target))
                .unwrap_or_else(|_| Rational::one())
        }
    }
}

/// Recomputes the defining marginals of `g` and returns whether it meets its
/// target together with the measured slack.
pub fn verify_realisation(f: &SymmetricFunction, g: &Gadget) -> Result<(bool, Rational), GadgetError> {
    let table = measure_table(f, &g.hypergraph, &g.terminals, &g.cut)?;
    let err = realisation_error(&g.property, &table);
    Ok((err <= g.epsilon_target, err))
}

pub(crate) fn check_epsilon(eps: &Rational) -> Result<(), GadgetError> {
    if *eps <= Rational::zero() || *eps >= Rational::one() {
        return Err(GadgetError::InvalidEpsilon(fmt_rational(eps)));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use spin_core::rational::rat;

    #[test]
    fn single_nae_edge_is_not_a_pin() {
        let f = SymmetricFunction::not_all_equal(3);
        let g = Gadget {
            hypergraph: Hypergraph::single_edge(3),
            terminals: vec![0],
            property: GadgetProperty::PinTo(false),
            epsilon_target: rat(1, 10),
            epsilon_measured: rat(1, 10),
            certification: Certification::Exact,
            cut: vec![0],
            replication: None,
        };
        assert_eq!(verify_realisation(&f, &g).unwrap(), (false, rat(1, 2)));
    }

    #[test]
    fn equality_error_of_twin_edges() {
        let f = SymmetricFunction::not_all_equal(3);
        let t = measure_table(&f, &Hypergraph::twin_edges(3), &[0, 1], &[]).unwrap();
        // 00 and 11 each carry 3/10, so each falls short of 1/2 by 2/5 after doubling.
        assert_eq!(realisation_error(&GadgetProperty::Equality(2), &t), rat(2, 5));
    }
}
