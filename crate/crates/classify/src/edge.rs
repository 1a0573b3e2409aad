//! Conditioned single edges, evaluated by binomial sums over the free slots.

use num_traits::Zero;
use spin_core::rational::binomial_rat;
use spin_core::{AdmissibleCollection, Rational, SpinError, SymmetricFunction};

/// Slots `from..=to` of an edge written `x_1 … x_k`, as 0-based vertices.
/// Empty when `from > to`.
pub fn slots(from: usize, to: usize) -> Vec<usize> {
    if from > to || from == 0 {
        return Vec::new();
    }
    (from - 1..to).collect()
}

/// Builds a conditioning on one edge. Blocks of size one are dropped,
/// since forcing a single vertex to agree with itself is no condition.
pub fn edge_conditioning(pin0: Vec<usize>, pin1: Vec<usize>, blocks: Vec<Vec<usize>>) -> AdmissibleCollection {
    let blocks = blocks.into_iter().filter(|b| b.len() >= 2).collect();
    AdmissibleCollection::new(pin0, pin1, blocks).expect("edge slots are disjoint by construction")
}

/// Unnormalised conditional weights of the assignments of `subject` on the
/// single edge `{0, …, k-1}`, indexed like `spin_core::conditioned_weights`.
///
/// Only slot counts matter for a symmetric function: the fixed ones, the
/// spins of the unfixed blocks, and a binomial sum over the free slots.
pub fn single_edge_weights(
    f: &SymmetricFunction,
    cond: &AdmissibleCollection,
    subject: &[usize],
) -> Result<Vec<Rational>, SpinError> {
    let k = f.arity();
    cond.check_range(k)?;
    if let Some(&v) = subject.iter().find(|&&v| v >= k) {
        return Err(SpinError::VertexOutOfRange { vertex: v, n: k });
    }
    let conditioned: usize = cond.vertices().count();
    let block_of = |v: usize| cond.blocks().iter().position(|b| b.contains(&v));
    let free_subject = subject
        .iter()
        .filter(|&&v| !cond.pin0().contains(&v) && !cond.pin1().contains(&v) && block_of(v).is_none())
        .count();
    let free_rest = k - conditioned - free_subject;

    let mut out = Vec::with_capacity(1 << subject.len());
    'tau: for tau in 0..1usize << subject.len() {
        let mut ones = cond.pin1().len();
        let mut block_spin: Vec<Option<bool>> = vec![None; cond.blocks().len()];
        for (j, &v) in subject.iter().enumerate() {
            let t = (tau >> j) & 1 == 1;
            if cond.pin0().contains(&v) {
                if t {
                    out.push(Rational::zero());
                    continue 'tau;
                }
            } else if cond.pin1().contains(&v) {
                if !t {
                    out.push(Rational::zero());
                    continue 'tau;
                }
            } else if let Some(b) = block_of(v) {
                match block_spin[b] {
                    Some(s) if s != t => {
                        out.push(Rational::zero());
                        continue 'tau;
                    }
                    _ => block_spin[b] = Some(t),
                }
            } else {
                ones += t as usize;
            }
        }
        let mut open = Vec::new();
        for (b, block) in cond.blocks().iter().enumerate() {
            match block_spin[b] {
                Some(true) => ones += block.len(),
                Some(false) => {}
                None => open.push(block.len()),
            }
        }
        let mut total = Rational::zero();
        for mask in 0..1usize << open.len() {
            let extra: usize = open.iter().enumerate().filter(|(i, _)| (mask >> i) & 1 == 1).map(|(_, s)| s).sum();
            for j in 0..=free_rest {
                let w = f.w(ones + extra + j);
                if !w.is_zero() {
                    total += binomial_rat(free_rest, j) * w;
                }
            }
        }
        out.push(total);
    }
    Ok(out)
}

/// Slot counts of a conditioned edge, laid out as: free slots, then the
/// equality blocks, then the slots pinned to 1, then those pinned to 0.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct EdgeShape {
    pub pin0: usize,
    pub pin1: usize,
    pub blocks: Vec<usize>,
    pub free: usize,
}

impl EdgeShape {
    pub fn arity(&self) -> usize {
        self.pin0 + self.pin1 + self.blocks.iter().sum::<usize>() + self.free
    }

    pub fn free_slots(&self) -> Vec<usize> {
        (0..self.free).collect()
    }

    pub fn block_slots(&self) -> Vec<Vec<usize>> {
        let mut start = self.free;
        self.blocks
            .iter()
            .map(|&s| {
                let b: Vec<usize> = (start..start + s).collect();
                start += s;
                b
            })
            .collect()
    }

    pub fn conditioning(&self) -> AdmissibleCollection {
        let start1 = self.free + self.blocks.iter().sum::<usize>();
        let start0 = start1 + self.pin1;
        edge_conditioning(
            (start0..start0 + self.pin0).collect(),
            (start1..start1 + self.pin1).collect(),
            self.block_slots(),
        )
    }
}

/// Shapes of a `k`-slot edge using only the allowed kinds of condition.
///
/// Order: pins to 0 only, then shapes with pins to 1, then shapes with
/// equality blocks; within each group, fewer conditioned slots first.
pub fn edge_shapes(
    k: usize,
    allow_pin0: bool,
    allow_pin1: bool,
    allow_blocks: bool,
    max_blocks: usize,
    max_free: usize,
) -> Vec<EdgeShape> {
    let max_a = if allow_pin0 { k } else { 0 };
    let max_b = if allow_pin1 { k } else { 0 };
    let mut out = Vec::new();
    let mut push = |a: usize, b: usize, blocks: &[usize]| {
        let used = a + b + blocks.iter().sum::<usize>();
        if used <= k && k - used <= max_free {
            out.push(EdgeShape { pin0: a, pin1: b, blocks: blocks.to_vec(), free: k - used });
        }
    };
    for a in 0..=max_a {
        push(a, 0, &[]);
    }
    for b in 1..=max_b {
        for a in 0..=max_a {
            push(a, b, &[]);
        }
    }
    if allow_blocks {
        for nb in 1..=max_blocks {
            for blocks in block_multisets(k, nb) {
                for b in 0..=max_b {
                    for a in 0..=max_a {
                        push(a, b, &blocks);
                    }
                }
            }
        }
    }
    out
}

/// Non-decreasing sequences of `count` sizes, each at least 2, summing to at most `k`.
fn block_multisets(k: usize, count: usize) -> Vec<Vec<usize>> {
    fn rec(k: usize, count: usize, min: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == count {
            out.push(cur.clone());
            return;
        }
        let used: usize = cur.iter().sum();
        let left = count - cur.len();
        for s in min.. {
            if used + s * left > k {
                break;
            }
            cur.push(s);
            rec(k, count, s, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(k, count, 2, &mut Vec::new(), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use spin_core::rational::int;
    use spin_core::{conditioned_weights, EnumOptions, Hypergraph};

    #[test]
    fn slot_ranges() {
        assert_eq!(slots(3, 5), vec![2, 3, 4]);
        assert!(slots(4, 3).is_empty());
    }

    #[test]
    fn strong_independent_set_recipe() {
        let f = SymmetricFunction::strong_independent_set(3);
        let cond = edge_conditioning(slots(3, 3), vec![], vec![]);
        let w = single_edge_weights(&f, &cond, &[0, 1]).unwrap();
        assert_eq!(w, vec![int(1), int(1), int(1), int(0)]);
    }

    #[test]
    fn closed_form_matches_engine() {
        let f = SymmetricFunction::from_ints(&[1, 0, 1, 1, 0, 1, 1]).unwrap();
        let edge = Hypergraph::single_edge(6);
        for shape in edge_shapes(6, true, true, true, 3, 6) {
            let cond = shape.conditioning();
            let subject: Vec<usize> = (0..6).filter(|v| v % 2 == 0).collect();
            let closed = single_edge_weights(&f, &cond, &subject).unwrap();
            let brute = conditioned_weights(&f, &edge, &cond, &subject, &EnumOptions::from_env()).unwrap();
            assert_eq!(closed, brute, "{shape:?}");
        }
    }

    #[test]
    fn shape_order_starts_with_zero_pins() {
        let shapes = edge_shapes(4, true, true, true, 3, 4);
        assert_eq!(shapes[0], EdgeShape { pin0: 0, pin1: 0, blocks: vec![], free: 4 });
        assert_eq!(shapes[1].pin0, 1);
        let first_pin1 = shapes.iter().position(|s| s.pin1 > 0).unwrap();
        let first_block = shapes.iter().position(|s| !s.blocks.is_empty()).unwrap();
        assert!(shapes[..first_pin1].iter().all(|s| s.pin1 == 0 && s.blocks.is_empty()));
        assert!(first_pin1 < first_block);
        assert!(shapes.iter().all(|s| s.arity() == 4));
    }

    #[test]
    fn block_sizes() {
        assert_eq!(block_multisets(6, 2), vec![vec![2, 2], vec![2, 3], vec![2, 4], vec![3, 3]]);
    }
}
