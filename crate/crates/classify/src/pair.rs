//! Two-edge gadget table and the balance system that characterises self-duality.

use std::fmt;

use num_traits::{One, Zero};
use spin_core::rational::{binomial_rat, fmt_rational};
use spin_core::{Rational, SymmetricFunction};

/// Unnormalised weights of `(σ_x, σ_y)` on two edges sharing `k-1` vertices.
/// `z10` equals `z01` and is not stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairGadgetTable {
    pub z00: Rational,
    pub z01: Rational,
    pub z11: Rational,
}

impl PairGadgetTable {
    pub fn total(&self) -> Rational {
        &self.z00 + &self.z01 + &self.z01 + &self.z11
    }

    /// `z00 * z11 >= z01^2`, which holds for every nonnegative weight vector.
    pub fn satisfies_cauchy_schwarz(&self) -> bool {
        &self.z00 * &self.z11 >= &self.z01 * &self.z01
    }

    /// Weights in the engine's subject order `00, 10, 01, 11`.
    pub fn as_weights(&self) -> [Rational; 4] {
        [self.z00.clone(), self.z01.clone(), self.z01.clone(), self.z11.clone()]
    }
}

impl fmt::Display for PairGadgetTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Z00={} Z01={} Z11={}", fmt_rational(&self.z00), fmt_rational(&self.z01), fmt_rational(&self.z11))
    }
}

pub fn pair_gadget(f: &SymmetricFunction) -> PairGadgetTable {
    let k = f.arity();
    let z = |s1: usize, s2: usize| {
        (0..k).fold(Rational::zero(), |acc, l| acc + binomial_rat(k - 1, l) * f.w(l + s1) * f.w(l + s2))
    };
    PairGadgetTable { z00: z(0, 0), z01: z(0, 1), z11: z(1, 1) }
}

/// One row of the balance system, for a given `t`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BalanceRow {
    pub t: usize,
    pub z0_prime: Rational,
    pub z0_second: Rational,
    pub z1_prime: Rational,
    pub z1_second: Rational,
}

impl BalanceRow {
    pub fn z0(&self) -> Rational {
        &self.z0_prime + &self.z0_second
    }

    pub fn z1(&self) -> Rational {
        &self.z1_prime + &self.z1_second
    }

    pub fn balanced(&self) -> bool {
        self.z0() == self.z1()
    }
}

/// Rows for `t = 1..=k`. Row `t` weighs a vertex with spin `s` against
/// `t` others held equal to each other and `k-1-t` free ones.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZbalTable {
    pub rows: Vec<BalanceRow>,
}

impl ZbalTable {
    pub fn row(&self, t: usize) -> &BalanceRow {
        &self.rows[t - 1]
    }

    pub fn all_balanced(&self) -> bool {
        self.rows.iter().all(BalanceRow::balanced)
    }

    pub fn first_unbalanced(&self) -> Option<usize> {
        self.rows.iter().find(|r| !r.balanced()).map(|r| r.t)
    }
}

pub fn zbal_table(f: &SymmetricFunction) -> ZbalTable {
    let k = f.arity();
    let rows = (1..=k)
        .map(|t| {
            if t == k {
                return BalanceRow {
                    t,
                    z0_prime: f.w(0).clone(),
                    z0_second: Rational::zero(),
                    z1_prime: f.w(k).clone(),
                    z1_second: Rational::zero(),
                };
            }
            let m = k - 1 - t;
            let sum = |shift: usize| (0..=m).fold(Rational::zero(), |acc, l| acc + binomial_rat(m, l) * f.w(l + shift));
            BalanceRow { t, z0_prime: sum(0), z0_second: sum(t), z1_prime: sum(1), z1_second: sum(1 + t) }
        })
        .collect();
    ZbalTable { rows }
}

/// Coefficient matrix of the homogeneous system `Z_{0,t} - Z_{1,t} = 0`,
/// `t = 1..=k`, in the unknowns `w_0..w_k`.
pub fn balance_matrix(k: usize) -> Vec<Vec<Rational>> {
    (1..=k)
        .map(|t| {
            let mut row = vec![Rational::zero(); k + 1];
            if t == k {
                row[0] += Rational::one();
                row[k] -= Rational::one();
                return row;
            }
            let m = k - 1 - t;
            for l in 0..=m {
                let c = binomial_rat(m, l);
                row[l] += &c;
                row[l + t] += &c;
                row[l + 1] -= &c;
                row[l + 1 + t] -= &c;
            }
            row
        })
        .collect()
}

/// Rank of a rational matrix by Gaussian elimination.
pub fn rank(mut m: Vec<Vec<Rational>>) -> usize {
    let cols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let pivot = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let factor = &row[c] / &pivot[c];
                for (a, b) in row.iter_mut().zip(&pivot) {
                    *a -= &factor * b;
                }
            }
        }
        r += 1;
    }
    r
}

/// Dimension of the solution space of the balance system. The palindromic
/// vectors of length `k+1` form a space of dimension `floor(k/2) + 1`.
pub fn balance_nullity(k: usize) -> usize {
    k + 1 - rank(balance_matrix(k))
}
