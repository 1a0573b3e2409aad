//! Exact enumeration of weighted configurations.
//!
//! The engine fixes every spin that the query pins down (pinned vertices,
//! the subject assignment, and any block that touches the subject), merges
//! each remaining equality block into a single variable, and then splits
//! the rest into connected components. Each component is enumerated in
//! Gray-code order with per-edge one-counts updated incrementally. Large
//! components are split into shards by fixing their top variables; shard
//! sums are integers and are merged in shard order.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::conditioning::AdmissibleCollection;
use crate::error::SpinError;
use crate::function::SymmetricFunction;
use crate::hypergraph::{Hypergraph, UnionFind};
use crate::rational::Rational;

pub const DEFAULT_CAP: usize = 26;
pub const CAP_ENV_VAR: &str = "SPINLAB_CAP";

/// Limits for exhaustive enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumOptions {
    /// Largest number of free binary variables enumerated in one component.
    pub cap: usize,
    /// Number of shards a large component is split into (rounded down to a
    /// power of two).
    pub shards: usize,
}

impl EnumOptions {
    /// Default cap, overridden by `SPINLAB_CAP` when set to an integer.
    pub fn from_env() -> Self {
        let cap = std::env::var(CAP_ENV_VAR).ok().and_then(|s| s.trim().parse().ok()).unwrap_or(DEFAULT_CAP);
        Self { cap, shards: 64 }
    }

    pub fn with_cap(mut self, cap: usize) -> Self {
        self.cap = cap;
        self
    }

    pub fn with_shards(mut self, shards: usize) -> Self {
        self.shards = shards.max(1);
        self
    }
}

impl Default for EnumOptions {
    fn default() -> Self {
        Self::from_env()
    }
}

/// A total spin assignment.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Configuration(Vec<bool>);

impl Configuration {
    pub fn new(spins: Vec<bool>) -> Self {
        Self(spins)
    }

    /// Bit `v` of `bits` is the spin of vertex `v`.
    pub fn from_bits(bits: u64, n: usize) -> Self {
        Self((0..n).map(|v| (bits >> v) & 1 == 1).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn spin(&self, v: usize) -> bool {
        self.0[v]
    }

    pub fn spins(&self) -> &[bool] {
        &self.0
    }

    pub fn complement(&self) -> Self {
        Self(self.0.iter().map(|s| !s).collect())
    }
}

fn check_arity(f: &SymmetricFunction, h: &Hypergraph) -> Result<(), SpinError> {
    if f.arity() != h.uniformity() {
        return Err(SpinError::ArityMismatch { function: f.arity(), hypergraph: h.uniformity() });
    }
    Ok(())
}

/// Product over edges of `w[#ones on the edge]`.
pub fn weight(f: &SymmetricFunction, h: &Hypergraph, sigma: &Configuration) -> Result<Rational, SpinError> {
    check_arity(f, h)?;
    if sigma.len() != h.vertex_count() {
        return Err(SpinError::InvalidConditioning(format!(
            "configuration has {} spins for {} vertices",
            sigma.len(),
            h.vertex_count()
        )));
    }
    let mut acc = Rational::one();
    for e in h.edges() {
        let ones = e.iter().filter(|&&v| sigma.spin(v)).count();
        acc *= f.w(ones);
        if acc.is_zero() {
            break;
        }
    }
    Ok(acc)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Class {
    Zero,
    Unit,
    Tracked(usize),
}

/// Weights rescaled to integers `a[l] = w[l] * denom`.
struct Scaled {
    denom: BigInt,
    classes: Vec<Class>,
    tracked: Vec<BigInt>,
    numer: Vec<BigInt>,
}

impl Scaled {
    fn new(f: &SymmetricFunction) -> Self {
        let denom = f.weights().iter().fold(BigInt::one(), |acc, w| acc.lcm(w.denom()));
        let numer: Vec<BigInt> = f.weights().iter().map(|w| w.numer() * (&denom / w.denom())).collect();
        let mut tracked = Vec::new();
        let classes = numer
            .iter()
            .map(|a| {
                if a.is_zero() {
                    Class::Zero
                } else if a.is_one() {
                    Class::Unit
                } else {
                    tracked.push(a.clone());
                    Class::Tracked(tracked.len() - 1)
                }
            })
            .collect();
        Self { denom, classes, tracked, numer }
    }
}

/// One connected piece of the free variables.
struct Component {
    /// For each variable, the (local edge, multiplicity) pairs it touches.
    incidence: Vec<Vec<(usize, u32)>>,
    /// Ones contributed by fixed vertices, per local edge.
    base: Vec<u32>,
}

#[derive(Default)]
struct ShardSum {
    count: u64,
    hist: HashMap<Vec<u32>, u64>,
}

fn enumerate_component(comp: &Component, scaled: &Scaled, opts: &EnumOptions) -> Result<BigInt, SpinError> {
    let m = comp.incidence.len();
    if m > opts.cap {
        return Err(SpinError::CapExceeded { needed: m, cap: opts.cap });
    }
    let max_shard_bits = usize::BITS as usize - 1 - opts.shards.max(1).leading_zeros() as usize;
    let shard_bits = if m >= 16 { max_shard_bits.min(m - 8) } else { 0 };
    let low = m - shard_bits;
    let tracked_len = scaled.tracked.len();

    let run_shard = |shard: u64| -> ShardSum {
        let mut counts = comp.base.clone();
        for j in 0..shard_bits {
            if (shard >> j) & 1 == 1 {
                for &(e, mult) in &comp.incidence[low + j] {
                    counts[e] += mult;
                }
            }
        }
        let mut bad = 0usize;
        let mut hist = vec![0u32; tracked_len];
        for &c in &counts {
            match scaled.classes[c as usize] {
                Class::Zero => bad += 1,
                Class::Unit => {}
                Class::Tracked(t) => hist[t] += 1,
            }
        }
        let mut out = ShardSum::default();
        let record = |bad: usize, hist: &Vec<u32>, out: &mut ShardSum| {
            if bad == 0 {
                if tracked_len == 0 {
                    out.count += 1;
                } else {
                    *out.hist.entry(hist.clone()).or_insert(0) += 1;
                }
            }
        };
        record(bad, &hist, &mut out);
        let mut spins = vec![false; low];
        for i in 1u64..(1u64 << low) {
            let j = i.trailing_zeros() as usize;
            let up = !spins[j];
            spins[j] = up;
            for &(e, mult) in &comp.incidence[j] {
                let before = counts[e];
                let after = if up { before + mult } else { before - mult };
                counts[e] = after;
                match scaled.classes[before as usize] {
                    Class::Zero => bad -= 1,
                    Class::Unit => {}
                    Class::Tracked(t) => hist[t] -= 1,
                }
                match scaled.classes[after as usize] {
                    Class::Zero => bad += 1,
                    Class::Unit => {}
                    Class::Tracked(t) => hist[t] += 1,
                }
            }
            record(bad, &hist, &mut out);
        }
        out
    };

    let shards: Vec<ShardSum> = if shard_bits == 0 {
        vec![run_shard(0)]
    } else {
        (0..1u64 << shard_bits).into_par_iter().map(run_shard).collect()
    };

    let mut total = BigInt::zero();
    for s in shards {
        total += BigInt::from(s.count);
        let mut keys: Vec<_> = s.hist.into_iter().collect();
        keys.sort();
        for (h, c) in keys {
            let mut term = BigInt::from(c);
            for (t, &e) in h.iter().enumerate() {
                term *= num_traits::pow(scaled.tracked[t].clone(), e as usize);
            }
            total += term;
        }
    }
    Ok(total)
}

fn validate_subject(subject: &[usize], n: usize) -> Result<(), SpinError> {
    for (i, &v) in subject.iter().enumerate() {
        if v >= n {
            return Err(SpinError::VertexOutOfRange { vertex: v, n });
        }
        if subject[..i].contains(&v) {
            return Err(SpinError::InvalidConditioning(format!("subject repeats vertex {v}")));
        }
    }
    if subject.len() > 20 {
        return Err(SpinError::CapExceeded { needed: subject.len(), cap: 20 });
    }
    Ok(())
}

/// Unnormalised weights `Σ_σ w(σ) [σ satisfies cond, σ_S = τ]` for each
/// assignment `τ` of `subject`, indexed so that bit `i` of the index is the
/// spin of `subject[i]`.
pub fn conditioned_weights(
    f: &SymmetricFunction,
    h: &Hypergraph,
    cond: &AdmissibleCollection,
    subject: &[usize],
    opts: &EnumOptions,
) -> Result<Vec<Rational>, SpinError> {
    check_arity(f, h)?;
    let n = h.vertex_count();
    cond.check_range(n)?;
    validate_subject(subject, n)?;
    let scaled = Scaled::new(f);

    let mut pinned: Vec<Option<bool>> = vec![None; n];
    for &v in cond.pin0() {
        pinned[v] = Some(false);
    }
    for &v in cond.pin1() {
        pinned[v] = Some(true);
    }
    let mut block_of: Vec<Option<usize>> = vec![None; n];
    for (b, block) in cond.blocks().iter().enumerate() {
        for &v in block {
            block_of[v] = Some(b);
        }
    }

    let denom_total = num_traits::pow(scaled.denom.clone(), h.edge_count());
    (0..1usize << subject.len())
        .map(|tau| {
            let num = weight_for_assignment(h, cond, &scaled, &pinned, &block_of, subject, tau, opts)?;
            Ok(Rational::new(num, denom_total.clone()))
        })
        .collect()
}

#[allow(clippy::too_many_arguments)]
fn weight_for_assignment(
    h: &Hypergraph,
    cond: &AdmissibleCollection,
    scaled: &Scaled,
    pinned: &[Option<bool>],
    block_of: &[Option<usize>],
    subject: &[usize],
    tau: usize,
    opts: &EnumOptions,
) -> Result<BigInt, SpinError> {
    let n = h.vertex_count();
    let mut spins = pinned.to_vec();
    let mut block_spin: Vec<Option<bool>> = vec![None; cond.blocks().len()];
    for (i, &v) in subject.iter().enumerate() {
        let t = (tau >> i) & 1 == 1;
        if let Some(s) = spins[v] {
            if s != t {
                return Ok(BigInt::zero());
            }
        } else if let Some(b) = block_of[v] {
            match block_spin[b] {
                Some(s) if s != t => return Ok(BigInt::zero()),
                _ => block_spin[b] = Some(t),
            }
        } else {
            spins[v] = Some(t);
        }
    }
    for (b, block) in cond.blocks().iter().enumerate() {
        if let Some(s) = block_spin[b] {
            for &v in block {
                spins[v] = Some(s);
            }
        }
    }

    // Free variables: unfixed blocks first, then unfixed lone vertices.
    let mut var_of: Vec<Option<usize>> = vec![None; n];
    let mut var_count = 0;
    for (b, block) in cond.blocks().iter().enumerate() {
        if block_spin[b].is_none() {
            for &v in block {
                var_of[v] = Some(var_count);
            }
            var_count += 1;
        }
    }
    for v in 0..n {
        if spins[v].is_none() && var_of[v].is_none() {
            var_of[v] = Some(var_count);
            var_count += 1;
        }
    }

    let mut constant = BigInt::one();
    let mut uf = UnionFind::new(var_count);
    let mut touched = vec![false; var_count];
    // Per edge: fixed ones and the variables it touches, with multiplicity.
    let mut live_edges: Vec<(u32, Vec<(usize, u32)>)> = Vec::new();
    for e in h.edges() {
        let mut base = 0u32;
        let mut vars: Vec<(usize, u32)> = Vec::new();
        for &v in e {
            match var_of[v] {
                Some(x) => match vars.iter_mut().find(|(y, _)| *y == x) {
                    Some(slot) => slot.1 += 1,
                    None => vars.push((x, 1)),
                },
                None => base += spins[v].expect("fixed") as u32,
            }
        }
        if vars.is_empty() {
            let a = &scaled.numer[base as usize];
            if a.is_zero() {
                return Ok(BigInt::zero());
            }
            constant *= a;
            continue;
        }
        for w in vars.windows(2) {
            uf.union(w[0].0, w[1].0);
        }
        for &(x, _) in &vars {
            touched[x] = true;
        }
        live_edges.push((base, vars));
    }

    let free_vars = touched.iter().filter(|t| !**t).count();
    constant <<= free_vars;

    let mut root_index: HashMap<usize, usize> = HashMap::new();
    let mut components: Vec<(Vec<usize>, Vec<usize>)> = Vec::new(); // (vars, edges)
    for (x, _) in touched.iter().enumerate().take(var_count).filter(|(_, t)| **t) {
        let r = uf.find(x);
        let idx = *root_index.entry(r).or_insert_with(|| {
            components.push((Vec::new(), Vec::new()));
            components.len() - 1
        });
        components[idx].0.push(x);
    }
    for (ei, (_, vars)) in live_edges.iter().enumerate() {
        let idx = root_index[&uf.find(vars[0].0)];
        components[idx].1.push(ei);
    }

    let mut total = constant;
    for (vars, edges) in components {
        let mut local = vec![usize::MAX; var_count];
        for (i, &x) in vars.iter().enumerate() {
            local[x] = i;
        }
        let mut incidence = vec![Vec::new(); vars.len()];
        let mut base = Vec::with_capacity(edges.len());
        for (le, &ei) in edges.iter().enumerate() {
            let (b, ref vs) = live_edges[ei];
            base.push(b);
            for &(x, mult) in vs {
                incidence[local[x]].push((le, mult));
            }
        }
        let comp = Component { incidence, base };
        let s = enumerate_component(&comp, scaled, opts)?;
        if s.is_zero() {
            return Ok(s);
        }
        total *= s;
    }
    Ok(total)
}

/// Exact partition function.
pub fn partition_function(f: &SymmetricFunction, h: &Hypergraph) -> Result<Rational, SpinError> {
    partition_function_with(f, h, &EnumOptions::from_env())
}

pub fn partition_function_with(
    f: &SymmetricFunction,
    h: &Hypergraph,
    opts: &EnumOptions,
) -> Result<Rational, SpinError> {
    Ok(conditioned_weights(f, h, &AdmissibleCollection::empty(), &[], opts)?.remove(0))
}

/// Partition function computed by fixing `separator` first. Same value as
/// [`partition_function`]; useful when removing the separator breaks the
/// hypergraph into pieces that each fit under the cap.
pub fn partition_function_split(
    f: &SymmetricFunction,
    h: &Hypergraph,
    separator: &[usize],
    opts: &EnumOptions,
) -> Result<Rational, SpinError> {
    let parts = conditioned_weights(f, h, &AdmissibleCollection::empty(), separator, opts)?;
    Ok(parts.into_iter().fold(Rational::zero(), |a, b| a + b))
}

pub fn is_admissible(f: &SymmetricFunction, h: &Hypergraph, cond: &AdmissibleCollection) -> Result<bool, SpinError> {
    is_admissible_with(f, h, cond, &EnumOptions::from_env())
}

pub fn is_admissible_with(
    f: &SymmetricFunction,
    h: &Hypergraph,
    cond: &AdmissibleCollection,
    opts: &EnumOptions,
) -> Result<bool, SpinError> {
    Ok(!conditioned_weights(f, h, cond, &[], opts)?[0].is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    fn nae3() -> SymmetricFunction {
        SymmetricFunction::not_all_equal(3)
    }

    #[test]
    fn weight_examples() {
        let e = Hypergraph::single_edge(3);
        let f = nae3();
        assert_eq!(weight(&f, &e, &Configuration::new(vec![false, true, false])).unwrap(), int(1));
        assert_eq!(weight(&f, &e, &Configuration::new(vec![false; 3])).unwrap(), int(0));
        let h = Hypergraph::new(4, 3, vec![vec![0, 1, 2], vec![1, 2, 3]]).unwrap();
        let wis = SymmetricFunction::weak_independent_set(3);
        assert_eq!(weight(&wis, &h, &Configuration::new(vec![true; 4])).unwrap(), int(0));
    }

    #[test]
    fn arity_is_checked() {
        let f = SymmetricFunction::not_all_equal(4);
        let e = Hypergraph::single_edge(3);
        assert!(matches!(partition_function(&f, &e), Err(SpinError::ArityMismatch { .. })));
    }

    #[test]
    fn small_partition_functions() {
        let e = Hypergraph::single_edge(3);
        assert_eq!(partition_function(&SymmetricFunction::weak_independent_set(3), &e).unwrap(), int(7));
        assert_eq!(partition_function(&nae3(), &e).unwrap(), int(6));
        assert_eq!(partition_function(&nae3(), &Hypergraph::twin_edges(3)).unwrap(), int(10));
        assert_eq!(partition_function(&nae3(), &Hypergraph::empty(5, 3)).unwrap(), int(32));
    }

    #[test]
    fn rational_weights() {
        let f = SymmetricFunction::new(vec![rat(1, 2), rat(2, 3), int(3)]).unwrap();
        let h = Hypergraph::new(3, 2, vec![vec![0, 1], vec![1, 2]]).unwrap();
        // brute force by hand through `weight`
        let mut z = Rational::zero();
        for bits in 0..8 {
            z += weight(&f, &h, &Configuration::from_bits(bits, 3)).unwrap();
        }
        assert_eq!(partition_function(&f, &h).unwrap(), z);
    }

    #[test]
    fn cap_applies_to_largest_component() {
        let h = Hypergraph::new(6, 2, (0..5).map(|i| vec![i, i + 1]).collect()).unwrap();
        let f = SymmetricFunction::from_ints(&[1, 1, 0]).unwrap();
        let opts = EnumOptions::from_env().with_cap(5);
        assert_eq!(partition_function_with(&f, &h, &opts), Err(SpinError::CapExceeded { needed: 6, cap: 5 }));
        // Fixing the middle vertex splits the path.
        assert!(partition_function_split(&f, &h, &[2], &opts).is_ok());
    }

    #[test]
    fn admissibility() {
        let e = Hypergraph::single_edge(3);
        let all0 = AdmissibleCollection::pins(vec![0, 1, 2], vec![]).unwrap();
        assert!(!is_admissible(&nae3(), &e, &all0).unwrap());
        assert!(is_admissible(&SymmetricFunction::weak_independent_set(3), &e, &all0).unwrap());
        let eq3 = SymmetricFunction::from_ints(&[1, 0, 0, 1]).unwrap();
        let block = AdmissibleCollection::new(vec![], vec![], vec![vec![0, 1, 2]]).unwrap();
        assert!(is_admissible(&eq3, &e, &block).unwrap());
    }

    #[test]
    fn sharding_does_not_change_results() {
        let h = Hypergraph::new(18, 3, (0..16).map(|i| vec![i, i + 1, i + 2]).collect()).unwrap();
        let f = SymmetricFunction::new(vec![int(1), rat(3, 2), int(1), rat(1, 3)]).unwrap();
        let one = partition_function_with(&f, &h, &EnumOptions::from_env().with_shards(1)).unwrap();
        let many = partition_function_with(&f, &h, &EnumOptions::from_env().with_shards(256)).unwrap();
        assert_eq!(one, many);
    }
}
