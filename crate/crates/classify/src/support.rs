//! Which of pinning-to-0, pinning-to-1 and equality a function supports.
//!
//! A `Yes` always carries a small conditioned instance whose exact marginal
//! shows the property. A `No` is only given when a general argument rules
//! the property out. Anything else stays `Unknown`.

use std::fmt;

use num_traits::Zero;
use spin_core::{
    conditioned_weights, AdmissibleCollection, EnumOptions, Hypergraph, HypergraphBuilder, Rational, SpinError,
    SymmetricFunction,
};

use crate::edge::{edge_shapes, single_edge_weights, EdgeShape};
use crate::pair::pair_gadget;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Property {
    Pin0,
    Pin1,
    Equality,
}

impl Property {
    pub fn name(self) -> &'static str {
        match self {
            Property::Pin0 => "pin0",
            Property::Pin1 => "pin1",
            Property::Equality => "equality",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WitnessKind {
    /// Two edges sharing all but one vertex, nothing conditioned.
    PairGadget,
    /// One edge with some slots pinned or tied together.
    SingleEdge,
    /// Three overlapping edges, used when one edge cannot tip the balance.
    ThreeEdge,
}

/// A conditioned instance and the unnormalised weights of its subject.
///
/// For a pin witness the subject is one vertex whose conditional majority
/// is the pinned spin. For equality, `weights` holds the all-0 weight, the
/// all-1 weight and the total, and the first two are equal with nothing
/// else left over (or, for the pair gadget, the usual `00, 10, 01, 11`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SupportWitness {
    pub kind: WitnessKind,
    pub hypergraph: Hypergraph,
    pub conditioning: AdmissibleCollection,
    pub subject: Vec<usize>,
    pub weights: Vec<Rational>,
}

impl fmt::Display for SupportWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match self.kind {
            WitnessKind::PairGadget => "pair gadget",
            WitnessKind::SingleEdge => "single edge",
            WitnessKind::ThreeEdge => "three edges",
        };
        let subject: Vec<String> = self.subject.iter().map(ToString::to_string).collect();
        write!(f, "{kind} [{}] subject {{{}}}", self.conditioning, subject.join(","))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NoReason {
    /// Flipping every spin preserves the measure, so every vertex is balanced.
    SelfDual,
    /// A constant function gives the uniform measure (or none at all).
    Constant,
    /// Satisfying tuples are closed under lowering a spin, so no vertex is
    /// more likely 1 than 0.
    DownClosed,
    /// Mirror image of `DownClosed`.
    UpClosed,
}

impl fmt::Display for NoReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            NoReason::SelfDual => "self-dual",
            NoReason::Constant => "constant",
            NoReason::DownClosed => "mu(spin 1) <= 1/2 on every hypergraph",
            NoReason::UpClosed => "mu(spin 0) <= 1/2 on every hypergraph",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Support {
    Yes(SupportWitness),
    No(NoReason),
    Unknown,
}

impl Support {
    pub fn is_yes(&self) -> bool {
        matches!(self, Support::Yes(_))
    }

    pub fn is_no(&self) -> bool {
        matches!(self, Support::No(_))
    }

    pub fn is_unknown(&self) -> bool {
        matches!(self, Support::Unknown)
    }

    pub fn witness(&self) -> Option<&SupportWitness> {
        match self {
            Support::Yes(w) => Some(w),
            _ => None,
        }
    }
}

impl fmt::Display for Support {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Support::Yes(w) => write!(f, "yes ({w})"),
            Support::No(r) => write!(f, "no ({r})"),
            Support::Unknown => f.write_str("unknown"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SupportVerdict {
    pub pin0: Support,
    pub pin1: Support,
    pub equality: Support,
}

impl SupportVerdict {
    pub fn get(&self, p: Property) -> &Support {
        match p {
            Property::Pin0 => &self.pin0,
            Property::Pin1 => &self.pin1,
            Property::Equality => &self.equality,
        }
    }

    fn get_mut(&mut self, p: Property) -> &mut Support {
        match p {
            Property::Pin0 => &mut self.pin0,
            Property::Pin1 => &mut self.pin1,
            Property::Equality => &mut self.equality,
        }
    }

    /// Records a witness unless the entry is already settled.
    fn offer(&mut self, p: Property, w: SupportWitness) -> bool {
        let slot = self.get_mut(p);
        if slot.is_unknown() {
            *slot = Support::Yes(w);
            true
        } else {
            false
        }
    }

    fn settled(&self) -> bool {
        !self.pin0.is_unknown() && !self.pin1.is_unknown() && !self.equality.is_unknown()
    }

    /// Names of the supported properties, e.g. `["pin0", "equality"]`.
    pub fn supported(&self) -> Vec<&'static str> {
        [Property::Pin0, Property::Pin1, Property::Equality]
            .into_iter()
            .filter(|&p| self.get(p).is_yes())
            .map(Property::name)
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchBudget {
    /// Most equality blocks on one conditioned edge.
    pub max_blocks: usize,
    /// Most unconditioned slots on one edge.
    pub max_free: usize,
    /// Passes of the closure loop.
    pub max_rounds: usize,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget { max_blocks: 3, max_free: usize::MAX, max_rounds: 8 }
    }
}

pub fn support_verdict(f: &SymmetricFunction, budget: &SearchBudget) -> SupportVerdict {
    let mut v = SupportVerdict { pin0: Support::Unknown, pin1: Support::Unknown, equality: Support::Unknown };
    let k = f.arity();
    if f.is_constant() {
        let no = Support::No(NoReason::Constant);
        return SupportVerdict { pin0: no.clone(), pin1: no.clone(), equality: no };
    }
    if f.is_self_dual() {
        v.pin0 = Support::No(NoReason::SelfDual);
        v.pin1 = Support::No(NoReason::SelfDual);
    }
    let down = [SymmetricFunction::weak_independent_set(k), SymmetricFunction::strong_independent_set(k)];
    if down.contains(f) {
        v.pin1 = Support::No(NoReason::DownClosed);
    }
    if down.contains(&f.flipped()) {
        v.pin0 = Support::No(NoReason::UpClosed);
    }

    let pair = pair_gadget(f);
    let witness = |subject: Vec<usize>, weights: Vec<Rational>| SupportWitness {
        kind: WitnessKind::PairGadget,
        hypergraph: Hypergraph::twin_edges(k),
        conditioning: AdmissibleCollection::empty(),
        subject,
        weights,
    };
    let at0 = &pair.z00 + &pair.z01;
    let at1 = &pair.z01 + &pair.z11;
    if at0 > at1 {
        v.offer(Property::Pin0, witness(vec![0], vec![at0, at1]));
    } else if at1 > at0 {
        v.offer(Property::Pin1, witness(vec![0], vec![at0, at1]));
    }
    if pair.z00 == pair.z11 && pair.z00 > pair.z01 {
        v.offer(Property::Equality, witness(vec![0, 1], pair.as_weights().to_vec()));
    }

    for _ in 0..budget.max_rounds {
        if v.settled() {
            break;
        }
        let mut changed = single_edge_round(f, budget, &mut v);
        changed |= three_edge_round(f, &mut v);
        if !changed {
            break;
        }
    }
    v
}

fn total(f: &SymmetricFunction, cond: &AdmissibleCollection) -> Rational {
    single_edge_weights(f, cond, &[]).expect("slots are within the edge").remove(0)
}

fn edge_witness(k: usize, shape: &EdgeShape, subject: Vec<usize>, weights: Vec<Rational>) -> SupportWitness {
    SupportWitness {
        kind: WitnessKind::SingleEdge,
        hypergraph: Hypergraph::single_edge(k),
        conditioning: shape.conditioning(),
        subject,
        weights,
    }
}

/// Adds pinned sets to a conditioning.
fn with_pins(cond: &AdmissibleCollection, extra0: &[usize], extra1: &[usize]) -> AdmissibleCollection {
    let mut p0 = cond.pin0().to_vec();
    p0.extend_from_slice(extra0);
    let mut p1 = cond.pin1().to_vec();
    p1.extend_from_slice(extra1);
    AdmissibleCollection::new(p0, p1, cond.blocks().to_vec()).expect("pins land on free slots")
}

fn single_edge_round(f: &SymmetricFunction, budget: &SearchBudget, v: &mut SupportVerdict) -> bool {
    let k = f.arity();
    let mut changed = false;
    let shapes =
        edge_shapes(k, v.pin0.is_yes(), v.pin1.is_yes(), v.equality.is_yes(), budget.max_blocks, budget.max_free);
    for shape in shapes {
        if v.settled() {
            break;
        }
        let cond = shape.conditioning();
        let z = total(f, &cond);
        if z.is_zero() {
            continue;
        }
        // A free slot, or the first slot of a block, with a strict majority.
        let mut candidates: Vec<usize> = shape.free_slots().into_iter().take(1).collect();
        candidates.extend(shape.block_slots().iter().map(|b| b[0]));
        for x in candidates {
            let w = single_edge_weights(f, &cond, &[x]).expect("slots are within the edge");
            let p = if w[0] > w[1] {
                Property::Pin0
            } else if w[1] > w[0] {
                Property::Pin1
            } else {
                continue;
            };
            changed |= v.offer(p, edge_witness(k, &shape, vec![x], w));
        }
        // A set of free slots that is all-0 or all-1, each half the time.
        if v.equality.is_unknown() {
            for m in 2..=shape.free {
                let set: Vec<usize> = (0..m).collect();
                let z0 = total(f, &with_pins(&cond, &set, &[]));
                let z1 = total(f, &with_pins(&cond, &[], &set));
                if z0 == z1 && &z0 + &z1 == z {
                    changed |= v.offer(Property::Equality, edge_witness(k, &shape, set, vec![z0, z1, z]));
                    break;
                }
            }
        }
    }
    changed
}

/// Three edges overlapping so that a tied block of `2i` slots outweighs
/// the rest. `target` is the spin the subject should favour; slots outside
/// the gadget's core are pinned to the opposite spin.
///
/// Layout: edge X is `x_1..x_k`; edge Y is `x_1..x_i` plus `y_{i+1}..y_k`;
/// edge Z is `x_{i+1}..x_{2i}` plus `z_{i+1}..z_k`. Slots beyond `j` are
/// pinned, and `x_1..x_{2i}`, `x_{2i+1}..x_j`, `y_{i+1}..y_j`, `z_{i+1}..z_j`
/// are each tied together.
pub fn three_edge_gadget(k: usize, i: usize, j: usize, target: bool) -> (Hypergraph, AdmissibleCollection) {
    assert!(i >= 1 && 2 * i < j && j <= k);
    let mut b = HypergraphBuilder::new(k);
    let x: Vec<usize> = (0..k).map(|_| b.fresh_vertex()).collect();
    let y: Vec<usize> = (0..k - i).map(|_| b.fresh_vertex()).collect();
    let z: Vec<usize> = (0..k - i).map(|_| b.fresh_vertex()).collect();
    b.add_edge(x.clone());
    b.add_edge(x[..i].iter().chain(&y).copied().collect());
    b.add_edge(x[i..2 * i].iter().chain(&z).copied().collect());
    let h = b.build().expect("three distinct edges");
    // y and z are indexed from i+1, so slot s of them sits at s - i - 1.
    let mut pinned: Vec<usize> = x[j..].to_vec();
    pinned.extend_from_slice(&y[j - i..]);
    pinned.extend_from_slice(&z[j - i..]);
    let blocks: Vec<Vec<usize>> = [x[..2 * i].to_vec(), x[2 * i..j].to_vec(), y[..j - i].to_vec(), z[..j - i].to_vec()]
        .into_iter()
        .filter(|b| b.len() >= 2)
        .collect();
    let (p0, p1) = if target { (pinned, vec![]) } else { (vec![], pinned) };
    let cond = AdmissibleCollection::new(p0, p1, blocks).expect("disjoint by construction");
    (h, cond)
}

fn three_edge_round(f: &SymmetricFunction, v: &mut SupportVerdict) -> bool {
    if !v.equality.is_yes() {
        return false;
    }
    let mut changed = false;
    for target in [true, false] {
        let (need, want) = if target { (&v.pin0, Property::Pin1) } else { (&v.pin1, Property::Pin0) };
        if !need.is_yes() || !v.get(want).is_unknown() {
            continue;
        }
        // Positions counted from the pinned side.
        let oriented = if target { f.clone() } else { f.flipped() };
        let k = f.arity();
        let support: Vec<usize> = (1..=k).filter(|&l| !oriented.w(l).is_zero()).collect();
        let Some(&i) = support.first() else { continue };
        let Some(&j) = support.iter().find(|&&l| l > 2 * i) else { continue };
        if let Some(w) = three_edge_witness(f, k, i, j, target) {
            changed |= v.offer(want, w);
        }
    }
    changed
}

fn three_edge_witness(f: &SymmetricFunction, k: usize, i: usize, j: usize, target: bool) -> Option<SupportWitness> {
    let (h, cond) = three_edge_gadget(k, i, j, target);
    let w = match conditioned_weights(f, &h, &cond, &[0], &EnumOptions::from_env()) {
        Ok(w) => w,
        Err(SpinError::CapExceeded { .. }) => return None,
        Err(e) => panic!("three-edge gadget is well formed: {e}"),
    };
    let (lo, hi) = if target { (&w[0], &w[1]) } else { (&w[1], &w[0]) };
    (hi > lo).then(|| SupportWitness {
        kind: WitnessKind::ThreeEdge,
        hypergraph: h,
        conditioning: cond,
        subject: vec![0],
        weights: w,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use spin_core::rational::int;

    fn verdict(f: &SymmetricFunction) -> SupportVerdict {
        support_verdict(f, &SearchBudget::default())
    }

    #[test]
    fn weak_independent_set() {
        let v = verdict(&SymmetricFunction::weak_independent_set(3));
        assert!(v.pin0.is_yes());
        assert_eq!(v.pin1, Support::No(NoReason::DownClosed));
    }

    #[test]
    fn not_all_equal() {
        let v = verdict(&SymmetricFunction::not_all_equal(3));
        assert_eq!(v.pin0, Support::No(NoReason::SelfDual));
        assert_eq!(v.pin1, Support::No(NoReason::SelfDual));
        let w = v.equality.witness().unwrap();
        assert_eq!(w.kind, WitnessKind::PairGadget);
        assert_eq!(w.weights, vec![int(3), int(2), int(2), int(3)]);
    }

    #[test]
    fn exactly_one_gets_both_pins() {
        let v = verdict(&SymmetricFunction::exactly_one(3));
        assert_eq!(v.pin0.witness().unwrap().kind, WitnessKind::PairGadget);
        let w = v.pin1.witness().unwrap();
        assert_eq!(w.kind, WitnessKind::SingleEdge);
        assert!(w.weights[1] > w.weights[0]);
    }

    #[test]
    fn constant_functions_support_nothing() {
        for f in
            [SymmetricFunction::from_ints(&[0, 0, 0]).unwrap(), SymmetricFunction::from_ints(&[2, 2, 2, 2]).unwrap()]
        {
            let v = verdict(&f);
            assert!(v.pin0.is_no() && v.pin1.is_no() && v.equality.is_no());
        }
    }

    #[test]
    fn three_edge_gadget_tips_towards_one() {
        // w = 1 at 0, 2 and 5 only: one edge cannot favour spin 1 after
        // pinning zeros, the three-edge gadget can.
        let f = SymmetricFunction::from_ints(&[1, 0, 1, 0, 0, 1, 0]).unwrap();
        let w = three_edge_witness(&f, 6, 2, 5, true).unwrap();
        assert!(w.weights[1] > w.weights[0]);
        let (h, _) = three_edge_gadget(6, 2, 5, true);
        assert_eq!(h.vertex_count(), 6 + 4 + 4);
        assert_eq!(h.edge_count(), 3);
    }

    #[test]
    fn witnesses_replay_on_the_engine() {
        let f = SymmetricFunction::from_ints(&[1, 0, 1, 1, 0]).unwrap();
        let v = verdict(&f);
        for p in [Property::Pin0, Property::Pin1] {
            if let Some(w) = v.get(p).witness() {
                let got = conditioned_weights(&f, &w.hypergraph, &w.conditioning, &w.subject, &EnumOptions::from_env())
                    .unwrap();
                assert_eq!(got, w.weights);
            }
        }
    }
}
