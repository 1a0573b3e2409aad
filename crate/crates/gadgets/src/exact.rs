//! Exact equality for self-dual functions that vanish on the all-equal
//! inputs: a hypergraph in which every positive-weight configuration gives
//! two chosen vertices the same spin.

use num_traits::Zero;
use spin_core::{
    conditioned_weights, partition_function, AdmissibleCollection, EasyKind, EnumOptions, Hypergraph, Rational,
    SymmetricFunction,
};

use crate::error::GadgetError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactEquality {
    pub hypergraph: Hypergraph,
    pub x: usize,
    pub y: usize,
    /// Weight of configurations with `x = y = 0`; the same as for `x = y = 1`.
    pub zeta: Rational,
    /// Index of the first edge rewiring that made the partition function
    /// positive.
    pub j: usize,
}

/// Drops edges in lexicographic order as long as the partition function
/// stays zero. One pass reaches an edge-minimal hypergraph: dropping edges
/// only adds satisfying configurations, so an edge that was needed once
/// stays needed.
pub fn minimise_unsatisfiable(f: &SymmetricFunction, h: &Hypergraph) -> Result<Hypergraph, GadgetError> {
    if !partition_function(f, h)?.is_zero() {
        return Err(GadgetError::PreconditionViolated("starting hypergraph has positive partition function".into()));
    }
    let mut edges = h.edges().to_vec();
    edges.sort();
    let mut current = h.clone();
    for e in edges {
        let candidate = current.without_edge(&e);
        if partition_function(f, &candidate)?.is_zero() {
            current = candidate;
        }
    }
    Ok(current)
}

fn check_hypotheses(f: &SymmetricFunction) -> Result<(), GadgetError> {
    let k = f.arity();
    let fail = |why: &str| Err(GadgetError::PreconditionViolated(why.into()));
    if k <= 2 {
        return fail("arity must exceed 2");
    }
    if !f.is_boolean() {
        return fail("function is not Boolean");
    }
    if !f.is_self_dual() {
        return fail("function is not self-dual");
    }
    if !f.w(0).is_zero() {
        return fail("w0 is not zero");
    }
    if *f == EasyKind::Zero.function(k) || *f == EasyKind::Odd.function(k) {
        return fail("function is identically zero or the odd-parity function");
    }
    Ok(())
}

/// Edge over `rewired` fresh labels `u[..t]`, the remaining shared vertices,
/// and the private part of `e`.
fn rewired_edge(u: &[usize], shared: &[usize], private: &[usize]) -> Vec<usize> {
    let t = u.len();
    let mut e: Vec<usize> = u.iter().chain(&shared[t..]).chain(private).copied().collect();
    e.sort_unstable();
    e
}

pub fn exact_equality_search(f: &SymmetricFunction) -> Result<ExactEquality, GadgetError> {
    check_hypotheses(f)?;
    let k = f.arity();
    let minimal = minimise_unsatisfiable(f, &Hypergraph::complete(2 * k - 1, k))?;
    let e = minimal
        .edges()
        .iter()
        .min()
        .cloned()
        .ok_or(GadgetError::PreconditionViolated("minimal hypergraph has no edges".into()))?;
    let rest = minimal.without_edge(&e);
    let degrees = rest.degrees();
    let (shared, private): (Vec<usize>, Vec<usize>) = e.iter().partition(|&&v| degrees[v] > 0);
    let n = minimal.vertex_count();

    let mut found = None;
    for j in 1..=shared.len() {
        let u: Vec<usize> = (n..n + j).collect();
        let hj = rest.with_extra_vertices(j).with_edge(rewired_edge(&u, &shared, &private))?;
        if !partition_function(f, &hj)?.is_zero() {
            found = Some((j, hj));
            break;
        }
    }
    let (j, hj) = found
        .ok_or_else(|| GadgetError::CertificationFailed("no rewiring gives a positive partition function".into()))?;
    let x = n + j - 1;
    let y = n + j;
    let mut u: Vec<usize> = (n..n + j - 1).collect();
    u.push(y);
    let full = hj.with_extra_vertices(1).with_edge(rewired_edge(&u, &shared, &private))?;

    let (hypergraph, map) = full.compact();
    let (x, y) = (map[x].expect("x lies on an edge"), map[y].expect("y lies on an edge"));
    let w = conditioned_weights(f, &hypergraph, &AdmissibleCollection::empty(), &[x, y], &EnumOptions::from_env())?;
    if !w[1].is_zero() || !w[2].is_zero() || w[0] != w[3] || w[0].is_zero() {
        return Err(GadgetError::CertificationFailed(format!(
            "weights on (x, y) are {}, {}, {}, {}",
            w[0], w[1], w[2], w[3]
        )));
    }
    Ok(ExactEquality { hypergraph, x, y, zeta: w[0].clone(), j })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nae_exact_equality() {
        let f = SymmetricFunction::not_all_equal(3);
        let start = Hypergraph::complete(5, 3);
        assert_eq!(start.edge_count(), 10);
        assert!(partition_function(&f, &start).unwrap().is_zero());
        let g = exact_equality_search(&f).unwrap();
        assert!(g.zeta > Rational::zero());
        assert!(g.hypergraph.isolated_vertices().is_empty());
        assert_ne!(g.x, g.y);
    }

    #[test]
    fn minimal_hypergraph_needs_every_edge() {
        let f = SymmetricFunction::not_all_equal(3);
        let m = minimise_unsatisfiable(&f, &Hypergraph::complete(5, 3)).unwrap();
        assert!(partition_function(&f, &m).unwrap().is_zero());
        for e in m.edges() {
            // Removing one edge too many makes the partition function positive.
            assert!(!partition_function(&f, &m.without_edge(e)).unwrap().is_zero());
        }
    }

    #[test]
    fn rejected_functions() {
        for f in [
            EasyKind::Odd.function(3),
            EasyKind::Zero.function(3),
            SymmetricFunction::not_all_equal(2),
            SymmetricFunction::weak_independent_set(3),
        ] {
            assert!(matches!(exact_equality_search(&f), Err(GadgetError::PreconditionViolated(_))), "{f}");
        }
    }

    #[test]
    fn minimise_rejects_satisfiable_start() {
        let f = SymmetricFunction::not_all_equal(3);
        assert!(minimise_unsatisfiable(&f, &Hypergraph::single_edge(3)).is_err());
    }
}
