//! CSP instances over one symmetric constraint, and splitting every
//! variable into one vertex per use joined by exact-equality gadgets.

use num_traits::Zero;
use spin_core::{
    conditioned_weights, AdmissibleCollection, EnumOptions, Hypergraph, HypergraphBuilder, Rational, SymmetricFunction,
};

use gadgets::ExactEquality;

use crate::error::ReductionError;
use crate::pipeline::partition_with_cut;

/// Largest variable count solved by direct enumeration.
const CSP_CAP: usize = 26;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CspInstance {
    vars: usize,
    constraints: Vec<Vec<usize>>,
}

impl CspInstance {
    /// Every constraint applies the same `k`-ary function to a tuple of
    /// variables; variables may repeat within a tuple.
    pub fn new(vars: usize, constraints: Vec<Vec<usize>>) -> Result<Self, ReductionError> {
        if let Some(first) = constraints.first() {
            if constraints.iter().any(|c| c.len() != first.len()) {
                return Err(ReductionError::InvalidInstance("constraints have different arities".into()));
            }
        }
        if let Some(&v) = constraints.iter().flatten().find(|&&v| v >= vars) {
            return Err(ReductionError::InvalidInstance(format!("variable {v} out of range 0..{vars}")));
        }
        Ok(CspInstance { vars, constraints })
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn constraints(&self) -> &[Vec<usize>] {
        &self.constraints
    }

    /// Number of constraint slots that mention each variable.
    pub fn uses(&self) -> Vec<usize> {
        let mut n = vec![0; self.vars];
        for &v in self.constraints.iter().flatten() {
            n[v] += 1;
        }
        n
    }

    /// Weighted count of satisfying assignments, by enumeration.
    pub fn partition_function(&self, f: &SymmetricFunction) -> Result<Rational, ReductionError> {
        if self.vars > CSP_CAP {
            return Err(spin_core::SpinError::CapExceeded { needed: self.vars, cap: CSP_CAP }.into());
        }
        let mut z = Rational::zero();
        'assign: for bits in 0u64..1 << self.vars {
            let mut w = Rational::from_integer(1.into());
            for c in &self.constraints {
                let ones = c.iter().filter(|&&v| (bits >> v) & 1 == 1).count();
                let fw = f.w(ones);
                if fw.is_zero() {
                    continue 'assign;
                }
                w *= fw;
            }
            z += w;
        }
        Ok(z)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitReport {
    pub hypergraph: Hypergraph,
    /// Sum over used variables of `uses - 1`.
    pub exponent: usize,
    pub zeta: Rational,
    pub csp_partition: Rational,
    pub hypergraph_partition: Rational,
    /// `Z(hypergraph) == zeta^exponent * Z(instance)`.
    pub holds: bool,
    pub max_degree: usize,
    pub gadget_max_degree: usize,
}

fn check_gadget(f: &SymmetricFunction, g: &ExactEquality) -> Result<(), ReductionError> {
    let w =
        conditioned_weights(f, &g.hypergraph, &AdmissibleCollection::empty(), &[g.x, g.y], &EnumOptions::from_env())?;
    if !w[1].is_zero() || !w[2].is_zero() || w[0] != w[3] || w[0].is_zero() || w[0] != g.zeta {
        return Err(ReductionError::BadGadget(format!(
            "weights on the terminals are {}, {}, {}, {}",
            w[0], w[1], w[2], w[3]
        )));
    }
    Ok(())
}

/// Gives every use of a variable its own vertex and chains consecutive uses
/// with copies of the equality gadget. Unused variables become isolated
/// vertices so both sides count them alike.
pub fn csp_split(
    f: &SymmetricFunction,
    instance: &CspInstance,
    gadget: &ExactEquality,
) -> Result<SplitReport, ReductionError> {
    let k = f.arity();
    if instance.constraints.iter().any(|c| c.len() != k) {
        return Err(ReductionError::InvalidInstance(format!("constraint arity differs from {k}")));
    }
    check_gadget(f, gadget)?;
    let uses = instance.uses();
    let mut b = HypergraphBuilder::new(k);
    let copies: Vec<Vec<usize>> = uses.iter().map(|&n| (0..n.max(1)).map(|_| b.fresh_vertex()).collect()).collect();
    let mut next = vec![0usize; instance.vars];
    for c in &instance.constraints {
        let edge = c
            .iter()
            .map(|&v| {
                next[v] += 1;
                copies[v][next[v] - 1]
            })
            .collect();
        b.add_edge(edge);
    }
    let cut: Vec<usize> = copies.iter().flatten().copied().collect();
    for chain in &copies {
        for pair in chain.windows(2) {
            b.add_copy(&gadget.hypergraph, &[(gadget.x, pair[0]), (gadget.y, pair[1])]);
        }
    }
    let hypergraph = b.build()?;
    let exponent: usize = uses.iter().map(|&n| n.saturating_sub(1)).sum();
    let csp_partition = instance.partition_function(f)?;
    let hypergraph_partition = partition_with_cut(f, &hypergraph, &cut)?;
    let holds = hypergraph_partition == num_traits::pow(gadget.zeta.clone(), exponent) * &csp_partition;
    Ok(SplitReport {
        max_degree: hypergraph.max_degree(),
        gadget_max_degree: gadget.hypergraph.max_degree(),
        hypergraph,
        exponent,
        zeta: gadget.zeta.clone(),
        csp_partition,
        hypergraph_partition,
        holds,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use gadgets::exact_equality_search;
    use spin_core::rational::int;

    fn nae() -> (SymmetricFunction, ExactEquality) {
        let f = SymmetricFunction::not_all_equal(3);
        let g = exact_equality_search(&f).unwrap();
        (f, g)
    }

    #[test]
    fn repeated_variable() {
        let (f, g) = nae();
        let inst = CspInstance::new(2, vec![vec![0, 0, 1]]).unwrap();
        let r = csp_split(&f, &inst, &g).unwrap();
        assert_eq!(r.csp_partition, int(2));
        assert_eq!(r.exponent, 1);
        assert_eq!(r.hypergraph_partition, &g.zeta * int(2));
        assert!(r.holds);
        assert!(r.max_degree <= 2 * r.gadget_max_degree + 1);
    }

    #[test]
    fn distinct_variables_need_no_gadgets() {
        let (f, g) = nae();
        let inst = CspInstance::new(3, vec![vec![0, 1, 2]]).unwrap();
        let r = csp_split(&f, &inst, &g).unwrap();
        assert_eq!(r.exponent, 0);
        assert_eq!(r.hypergraph, Hypergraph::single_edge(3));
        assert!(r.holds);
    }

    #[test]
    fn unsatisfiable_instance() {
        let (f, g) = nae();
        let inst = CspInstance::new(1, vec![vec![0, 0, 0]]).unwrap();
        let r = csp_split(&f, &inst, &g).unwrap();
        assert!(r.csp_partition.is_zero());
        assert!(r.hypergraph_partition.is_zero());
        assert!(r.holds);
    }

    #[test]
    fn bad_gadget_is_rejected() {
        let (f, mut g) = nae();
        g.zeta += int(1);
        let inst = CspInstance::new(1, vec![vec![0, 0, 0]]).unwrap();
        assert!(matches!(csp_split(&f, &inst, &g), Err(ReductionError::BadGadget(_))));
    }
}
