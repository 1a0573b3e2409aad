//! Brute-force partition function of a binary 2-spin system on a graph.

use std::collections::HashMap;

use num_traits::{One, Pow, Zero};
use spin_core::{Graph, Rational};

use crate::error::UniquenessError;

/// Counts `(#spin-0 vertices, #00 edges, #11 edges)` over all configurations.
fn statistics(g: &Graph, cap: usize) -> Result<HashMap<(u32, u32, u32), u64>, UniquenessError> {
    let n = g.vertex_count();
    if n > cap {
        return Err(UniquenessError::CapExceeded { needed: n, cap });
    }
    let mut counts = HashMap::new();
    for bits in 0u64..1 << n {
        let zeros = n as u32 - bits.count_ones();
        let (mut m00, mut m11) = (0, 0);
        for &(u, v) in g.edges() {
            match ((bits >> u) & 1, (bits >> v) & 1) {
                (0, 0) => m00 += 1,
                (1, 1) => m11 += 1,
                _ => {}
            }
        }
        *counts.entry((zeros, m00, m11)).or_insert(0) += 1;
    }
    Ok(counts)
}

/// `sum over sigma of lambda^#0 * beta^#00 * gamma^#11`, exactly, with `0^0 = 1`.
pub fn binary_partition_exact(
    beta: &Rational,
    gamma: &Rational,
    lambda: &Rational,
    g: &Graph,
    cap: usize,
) -> Result<Rational, UniquenessError> {
    let mut z = Rational::zero();
    let pow = |x: &Rational, e: u32| if e == 0 { Rational::one() } else { Pow::pow(x, e) };
    for ((zeros, m00, m11), count) in statistics(g, cap)? {
        z += pow(lambda, zeros) * pow(beta, m00) * pow(gamma, m11) * Rational::from_integer(count.into());
    }
    Ok(z)
}

pub fn binary_partition(beta: f64, gamma: f64, lambda: f64, g: &Graph, cap: usize) -> Result<f64, UniquenessError> {
    let pow = |x: f64, e: u32| if e == 0 { 1.0 } else { x.powi(e as i32) };
    Ok(statistics(g, cap)?
        .into_iter()
        .map(|((zeros, m00, m11), count)| pow(lambda, zeros) * pow(beta, m00) * pow(gamma, m11) * count as f64)
        .sum())
}

/// Hard-core threshold `gamma^(d+1) d^d / (d-1)^(d+1)` as an exact rational.
pub fn hard_core_threshold_exact(gamma: &Rational, d: usize) -> Rational {
    let d32 = d as u32;
    let dr = Rational::from_integer(d.into());
    let dm = Rational::from_integer((d - 1).into());
    Pow::pow(gamma, d32 + 1) * Pow::pow(&dr, d32) / Pow::pow(&dm, d32 + 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use spin_core::rational::{int, rat};

    #[test]
    fn complete_graph_example() {
        let z = binary_partition_exact(&int(1), &rat(1, 2), &int(1), &Graph::complete(4), 26).unwrap();
        assert_eq!(z, rat(545, 64));
        let ones = binary_partition_exact(&int(1), &int(1), &int(1), &Graph::complete(5), 26).unwrap();
        assert_eq!(ones, int(32));
    }

    #[test]
    fn zero_to_the_zero_is_one() {
        // beta = 0 still allows configurations without a 00 edge.
        let g = Graph::new(2, vec![(0, 1)]).unwrap();
        let z = binary_partition_exact(&int(0), &int(1), &int(1), &g, 26).unwrap();
        assert_eq!(z, int(3));
        assert_eq!(binary_partition(0.0, 1.0, 1.0, &g, 26).unwrap(), 3.0);
    }

    #[test]
    fn threshold() {
        assert_eq!(hard_core_threshold_exact(&int(1), 5), rat(3125, 4096));
    }

    #[test]
    fn cap() {
        assert_eq!(
            binary_partition(1.0, 1.0, 1.0, &Graph::complete(6), 5),
            Err(UniquenessError::CapExceeded { needed: 6, cap: 5 })
        );
    }
}
