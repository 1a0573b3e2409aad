//! Symmetrising a two-terminal gadget, substituting it for every edge of a
//! graph, and checking the resulting partition-function identity.

use num_traits::Zero;
use spin_core::{
    conditioned_weights, partition_function, AdmissibleCollection, EnumOptions, Graph, Hypergraph, HypergraphBuilder,
    Rational, SymmetricFunction,
};
use uniqueness::binary_partition_exact;

use crate::error::ReductionError;
use crate::table::PairTable;

/// Largest subject the engine conditions on at once.
const SUBJECT_LIMIT: usize = 20;

/// Partition function, fixing `cut` explicitly when that splits the rest
/// into small pieces.
pub fn partition_with_cut(f: &SymmetricFunction, h: &Hypergraph, cut: &[usize]) -> Result<Rational, ReductionError> {
    if cut.is_empty() || cut.len() > SUBJECT_LIMIT {
        return Ok(partition_function(f, h)?);
    }
    let w = conditioned_weights(f, h, &AdmissibleCollection::empty(), cut, &EnumOptions::from_env())?;
    Ok(w.into_iter().sum())
}

pub fn pair_table(f: &SymmetricFunction, h: &Hypergraph, x: usize, y: usize) -> Result<PairTable, ReductionError> {
    let w = conditioned_weights(f, h, &AdmissibleCollection::empty(), &[x, y], &EnumOptions::from_env())?;
    Ok(PairTable::from_weights(&w)?)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Symmetrised {
    pub hypergraph: Hypergraph,
    pub x: usize,
    pub y: usize,
    pub mu: PairTable,
}

/// Two copies of `h` with the terminals crossed: `x` of the first copy is
/// `y` of the second and vice versa.
pub fn symmetrise_witness(
    f: &SymmetricFunction,
    h: &Hypergraph,
    x: usize,
    y: usize,
) -> Result<Symmetrised, ReductionError> {
    let mu1 = pair_table(f, h, x, y)?;
    if (&mu1.m01 * &mu1.m10).is_zero() {
        return Err(ReductionError::ZeroOffDiagonal);
    }
    let mut b = HypergraphBuilder::new(h.uniformity());
    let first = b.add_copy(h, &[]);
    b.add_copy(h, &[(x, first[y]), (y, first[x])]);
    let hypergraph = b.build()?;
    let (sx, sy) = (first[x], first[y]);
    let mu = pair_table(f, &hypergraph, sx, sy)?;
    let products = [&mu1.m00 * &mu1.m00, &mu1.m10 * &mu1.m01, &mu1.m01 * &mu1.m10, &mu1.m11 * &mu1.m11];
    if mu != PairTable::from_weights(&products)? {
        return Err(ReductionError::Inconsistent(format!("symmetrised table {mu} is not the product form")));
    }
    Ok(Symmetrised { hypergraph, x: sx, y: sy, mu })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Replacement {
    pub hypergraph: Hypergraph,
    /// `None` when the graph is not regular; the identity still holds but
    /// the degree bound is no longer uniform.
    pub regular_degree: Option<usize>,
}

/// One copy of `h` per edge `(u, v)` of `g`, with `x` on `u` and `y` on `v`.
/// Vertices `0..n` of the output are the vertices of `g`.
pub fn edge_replace(g: &Graph, h: &Hypergraph, x: usize, y: usize) -> Result<Replacement, ReductionError> {
    if x == y {
        return Err(ReductionError::InvalidInstance("terminals must differ".into()));
    }
    let mut b = HypergraphBuilder::new(h.uniformity());
    for _ in 0..g.vertex_count() {
        b.fresh_vertex();
    }
    for &(u, v) in g.edges() {
        b.add_copy(h, &[(x, u), (y, v)]);
    }
    Ok(Replacement { hypergraph: b.build()?, regular_degree: g.regular_degree() })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityReport {
    pub holds: bool,
    /// Partition function of the replaced hypergraph.
    pub lhs: Rational,
    /// `(mu01 * Z)^|E| * Z_binary`.
    pub rhs: Rational,
    pub beta: Rational,
    pub gamma: Rational,
    pub binary_partition: Rational,
    pub scale: Rational,
}

/// Checks `Z(replaced) = (mu01 Z(h))^|E| * Z_{beta,gamma,1}(g)` exactly,
/// with `beta = mu00/mu01` and `gamma = mu11/mu01`.
pub fn verify_conn1(
    f: &SymmetricFunction,
    g: &Graph,
    h: &Hypergraph,
    x: usize,
    y: usize,
) -> Result<IdentityReport, ReductionError> {
    let mu = pair_table(f, h, x, y)?;
    if mu.m01.is_zero() || mu.m10.is_zero() {
        return Err(ReductionError::ZeroOffDiagonal);
    }
    if !mu.is_symmetric() {
        return Err(ReductionError::AsymmetricTable { mu01: mu.m01.to_string(), mu10: mu.m10.to_string() });
    }
    let z = partition_function(f, h)?;
    let beta = &mu.m00 / &mu.m01;
    let gamma = &mu.m11 / &mu.m01;
    let replaced = edge_replace(g, h, x, y)?;
    let cut: Vec<usize> = (0..g.vertex_count()).collect();
    let lhs = partition_with_cut(f, &replaced.hypergraph, &cut)?;
    let cap = EnumOptions::from_env().cap;
    let binary = binary_partition_exact(&beta, &gamma, &Rational::from_integer(1.into()), g, cap)?;
    let scale = num_traits::pow(&mu.m01 * &z, g.edges().len());
    let rhs = &scale * &binary;
    Ok(IdentityReport { holds: lhs == rhs, lhs, rhs, beta, gamma, binary_partition: binary, scale })
}
