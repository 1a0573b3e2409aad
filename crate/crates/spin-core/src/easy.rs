//! Closed forms for the seven easy functions.

use num_traits::Zero;

use crate::error::SpinError;
use crate::function::{EasyKind, SymmetricFunction};
use crate::hypergraph::Hypergraph;
use crate::rational::{pow2, Rational};

/// Partition function of an easy function without enumeration.
pub fn easy_partition(f: &SymmetricFunction, h: &Hypergraph) -> Result<Rational, SpinError> {
    if f.arity() != h.uniformity() {
        return Err(SpinError::ArityMismatch { function: f.arity(), hypergraph: h.uniformity() });
    }
    let kind = EasyKind::detect(f).ok_or(SpinError::NotEasy)?;
    let n = h.vertex_count();
    Ok(match kind {
        EasyKind::One => pow2(n),
        EasyKind::Zero if h.edge_count() == 0 => pow2(n),
        EasyKind::Zero => Rational::zero(),
        EasyKind::AllZero | EasyKind::AllOne => pow2(h.isolated_vertices().len()),
        EasyKind::Eq => pow2(h.components().len()),
        EasyKind::Even => parity_count(h, false),
        EasyKind::Odd => parity_count(h, true),
    })
}

/// Number of solutions of the GF(2) system "sum over each edge = rhs".
fn parity_count(h: &Hypergraph, odd: bool) -> Rational {
    let n = h.vertex_count();
    let words = n / 64 + 1; // one extra bit holds the right-hand side
    let rhs_bit = n;
    let mut rows: Vec<Vec<u64>> = h
        .edges()
        .iter()
        .map(|e| {
            let mut row = vec![0u64; words];
            for &v in e {
                row[v / 64] ^= 1 << (v % 64);
            }
            if odd {
                row[rhs_bit / 64] ^= 1 << (rhs_bit % 64);
            }
            row
        })
        .collect();
    let bit = |row: &[u64], c: usize| (row[c / 64] >> (c % 64)) & 1 == 1;
    let mut rank = 0;
    for col in 0..n {
        let Some(p) = (rank..rows.len()).find(|&r| bit(&rows[r], col)) else {
            continue;
        };
        rows.swap(rank, p);
        let pivot = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && bit(row, col) {
                for (a, b) in row.iter_mut().zip(&pivot) {
                    *a ^= b;
                }
            }
        }
        rank += 1;
    }
    // A remaining row reading 0 = 1 means no solution.
    if rows[rank..].iter().any(|r| bit(r, rhs_bit)) {
        return Rational::zero();
    }
    pow2(n - rank)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    #[test]
    fn examples() {
        let one = EasyKind::One.function(3);
        let h = Hypergraph::new(10, 3, vec![vec![0, 1, 2]]).unwrap();
        assert_eq!(easy_partition(&one, &h).unwrap(), int(1024));
        let even = EasyKind::Even.function(3);
        assert_eq!(easy_partition(&even, &Hypergraph::single_edge(3)).unwrap(), int(4));
        let eq = EasyKind::Eq.function(3);
        assert_eq!(easy_partition(&eq, &Hypergraph::twin_edges(3)).unwrap(), int(2));
    }

    #[test]
    fn inconsistent_parity_system() {
        // Three pairwise edges around a triangle cannot all be odd.
        let odd = EasyKind::Odd.function(2);
        let h = Hypergraph::new(3, 2, vec![vec![0, 1], vec![1, 2], vec![0, 2]]).unwrap();
        assert_eq!(easy_partition(&odd, &h).unwrap(), int(0));
        let even = EasyKind::Even.function(2);
        assert_eq!(easy_partition(&even, &h).unwrap(), int(2));
    }

    #[test]
    fn rejects_hard_functions() {
        let f = SymmetricFunction::weak_independent_set(3);
        assert_eq!(easy_partition(&f, &Hypergraph::single_edge(3)), Err(SpinError::NotEasy));
    }
}
