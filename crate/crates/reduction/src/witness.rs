//! Single-edge witnesses: a conditioning of one edge and two terminals whose
//! conditional pair table lies in the antiferromagnetic region.

use std::fmt;

use classify::edge::single_edge_weights;
use classify::{Case, ClassificationReport};
use num_traits::Zero;
use spin_core::{marginal, AdmissibleCollection, Hypergraph, SymmetricFunction};

use crate::error::ReductionError;
use crate::table::PairTable;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Route {
    /// Simulate an antiferromagnetic binary spin system.
    Antiferro,
    /// Reduce from deciding whether a CSP instance has a solution.
    DecisionCsp,
}

impl fmt::Display for Route {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Route::Antiferro => "antiferromagnetic",
            Route::DecisionCsp => "decision-CSP",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HardnessWitness {
    pub route: Route,
    pub base: Hypergraph,
    pub conditioning: AdmissibleCollection,
    pub x: usize,
    pub y: usize,
    /// Conditional pair table; `None` on the decision route.
    pub mu: Option<PairTable>,
    /// Which construction produced the witness.
    pub recipe: String,
}

/// Slot layout of a candidate: the `x` block, the `y` block, free slots,
/// extra equality blocks, slots pinned to 1, slots pinned to 0.
#[derive(Debug, Clone, PartialEq, Eq)]
struct Layout {
    x_block: usize,
    y_block: usize,
    extra: Vec<usize>,
    pin1: usize,
    pin0: usize,
}

impl Layout {
    fn conditioned(&self) -> usize {
        self.x_block + self.y_block - 2 + self.extra.iter().sum::<usize>() + self.pin1 + self.pin0
    }

    /// Returns the conditioning and the terminals on a `k`-edge.
    fn build(&self, k: usize) -> Option<(AdmissibleCollection, usize, usize)> {
        let fixed = self.x_block + self.y_block + self.extra.iter().sum::<usize>() + self.pin1 + self.pin0;
        if fixed > k {
            return None;
        }
        let free = k - fixed;
        let mut next = 0;
        let mut take = |n: usize| {
            let out: Vec<usize> = (next..next + n).collect();
            next += n;
            out
        };
        let xb = take(self.x_block);
        let yb = take(self.y_block);
        take(free);
        let mut blocks: Vec<Vec<usize>> = self.extra.iter().map(|&s| take(s)).collect();
        let p1 = take(self.pin1);
        let p0 = take(self.pin0);
        let (x, y) = (xb[0], yb[0]);
        for b in [xb, yb] {
            if b.len() >= 2 {
                blocks.push(b);
            }
        }
        blocks.sort();
        Some((AdmissibleCollection::new(p0, p1, blocks).ok()?, x, y))
    }
}

/// Candidate layouts in search order: pins to 0 only, then pins to 1, then
/// equality blocks; within a group, fewer conditioned slots first.
fn layouts(k: usize, pin0: bool, pin1: bool, equality: bool) -> Vec<Layout> {
    let max0 = if pin0 { k - 2 } else { 0 };
    let max1 = if pin1 { k - 2 } else { 0 };
    let plain = |p0, p1| Layout { x_block: 1, y_block: 1, extra: vec![], pin1: p1, pin0: p0 };
    let mut out: Vec<Layout> = (0..=max0).map(|a| plain(a, 0)).collect();
    let mut with_one: Vec<Layout> =
        (1..=max1).flat_map(|b| (0..=max0).map(move |a| plain(a, b))).filter(|l| l.build(k).is_some()).collect();
    with_one.sort_by_key(Layout::conditioned);
    out.extend(with_one);
    if equality {
        let mut blocky = Vec::new();
        for xb in 1..=k {
            for yb in 1..=k {
                for extra in extra_blocks(k) {
                    if xb == 1 && yb == 1 && extra.is_empty() {
                        continue;
                    }
                    for b in 0..=max1 {
                        for a in 0..=max0 {
                            let l = Layout { x_block: xb, y_block: yb, extra: extra.clone(), pin1: b, pin0: a };
                            if l.build(k).is_some() {
                                blocky.push(l);
                            }
                        }
                    }
                }
            }
        }
        blocky.sort_by_key(Layout::conditioned);
        out.extend(blocky);
    }
    out
}

/// Up to two extra blocks of size at least 2, sizes non-decreasing.
fn extra_blocks(k: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for a in 2..=k {
        out.push(vec![a]);
        for b in a..=k - a {
            out.push(vec![a, b]);
        }
    }
    out
}

fn table_of(f: &SymmetricFunction, cond: &AdmissibleCollection, x: usize, y: usize) -> Option<PairTable> {
    let w = single_edge_weights(f, cond, &[x, y]).ok()?;
    PairTable::from_weights(&w).ok()
}

/// Named constructions tried before the generic search.
fn catalog(f: &SymmetricFunction, report: &ClassificationReport) -> Vec<(String, AdmissibleCollection, usize, usize)> {
    let k = f.arity();
    let mut out = Vec::new();
    let one = |l: usize| !f.w(l).is_zero();
    // Pinning to 0 with w0 = w1 = 1: pin all but two slots to 0, leaving
    // the table proportional to (w0, w1, w2).
    if report.support.pin0.is_yes() && one(0) && one(1) {
        if let Ok(c) = AdmissibleCollection::pins((2..k).collect(), vec![]) {
            out.push(("pin0, i = 1".to_string(), c, 0, 1));
        }
    }
    if report.support.pin1.is_yes() && one(k) && one(k - 1) {
        if let Ok(c) = AdmissibleCollection::pins(vec![], (2..k).collect()) {
            out.push(("pin1, i = 1".to_string(), c, 0, 1));
        }
    }
    // Self-dual with w0 = 1 and support exactly the multiples of i:
    // terminals at slots 2i-1, 2i and equality on the rest.
    if report.case == Case::CaseIIW0One {
        if let Some(i) = report.i {
            if 2 * i <= k {
                let rest: Vec<usize> = (2 * i..k).collect();
                let blocks = if rest.len() >= 2 { vec![rest] } else { vec![] };
                if let Ok(c) = AdmissibleCollection::new(vec![], vec![], blocks) {
                    out.push(("self-dual, slots 2i-1 and 2i".to_string(), c, 2 * i - 2, 2 * i - 1));
                }
            }
        }
    }
    out
}

/// Finds a single-edge witness for a non-tractable Boolean `f`.
pub fn witness_search(f: &SymmetricFunction, report: &ClassificationReport) -> Result<HardnessWitness, ReductionError> {
    if let Some(kind) = report.easy {
        return Err(ReductionError::Easy(kind.name().to_string()));
    }
    let k = f.arity();
    let base = Hypergraph::single_edge(k);
    if report.case == Case::CaseIIW0Zero {
        return Ok(HardnessWitness {
            route: Route::DecisionCsp,
            base,
            conditioning: AdmissibleCollection::empty(),
            x: 0,
            y: 1,
            mu: None,
            recipe: "self-dual with w0 = 0: exact equality and CSP splitting".to_string(),
        });
    }
    let s = &report.support;
    let generic = layouts(k, s.pin0.is_yes(), s.pin1.is_yes(), s.equality.is_yes()).into_iter().filter_map(|l| {
        let (c, x, y) = l.build(k)?;
        Some((format!("generic single edge {c}"), c, x, y))
    });
    for (recipe, cond, x, y) in catalog(f, report).into_iter().chain(generic) {
        let Some(mu) = table_of(f, &cond, x, y) else { continue };
        if !mu.is_antiferro() {
            continue;
        }
        let check = marginal(f, &base, &[x, y], &cond)?;
        let expect = [&mu.m00, &mu.m10, &mu.m01, &mu.m11];
        if check.probabilities().iter().zip(expect).any(|(a, b)| a != b) {
            return Err(ReductionError::Inconsistent(format!("closed form and enumeration differ for {cond}")));
        }
        if report.self_dual && mu.is_self_dual_hard() != mu.is_antiferro() {
            return Err(ReductionError::Inconsistent(format!("self-dual criteria disagree on {mu}")));
        }
        return Ok(HardnessWitness { route: Route::Antiferro, base, conditioning: cond, x, y, mu: Some(mu), recipe });
    }
    Err(ReductionError::NoWitnessInBudget(format!("{f}, case {}", report.case)))
}
