use std::fmt;

use num_traits::Zero;

use crate::conditioning::AdmissibleCollection;
use crate::engine::{conditioned_weights, EnumOptions};
use crate::error::SpinError;
use crate::function::SymmetricFunction;
use crate::hypergraph::Hypergraph;
use crate::rational::{fmt_rational, Rational};

/// Exact distribution of the spins on a subject set.
///
/// Entry `i` is the probability of the assignment whose bit `j` is the
/// spin of `subject[j]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MarginalTable {
    subject: Vec<usize>,
    probs: Vec<Rational>,
}

impl MarginalTable {
    /// Normalises nonnegative weights. Fails if they sum to zero.
    pub fn from_weights(subject: Vec<usize>, weights: Vec<Rational>) -> Result<Self, SpinError> {
        assert_eq!(weights.len(), 1 << subject.len());
        let total: Rational = weights.iter().cloned().sum();
        if total.is_zero() {
            return Err(SpinError::NotAdmissible);
        }
        let probs = weights.into_iter().map(|w| w / &total).collect();
        Ok(Self { subject, probs })
    }

    pub fn subject(&self) -> &[usize] {
        &self.subject
    }

    pub fn probabilities(&self) -> &[Rational] {
        &self.probs
    }

    pub fn prob_index(&self, index: usize) -> &Rational {
        &self.probs[index]
    }

    /// Probability of `spins[j]` on `subject[j]` for all `j`.
    pub fn prob(&self, spins: &[bool]) -> &Rational {
        assert_eq!(spins.len(), self.subject.len());
        let idx = spins.iter().enumerate().fold(0, |acc, (j, &s)| acc | ((s as usize) << j));
        &self.probs[idx]
    }

    /// Probability that every subject vertex has spin `s`.
    pub fn all_equal(&self, s: bool) -> &Rational {
        let idx = if s { self.probs.len() - 1 } else { 0 };
        &self.probs[idx]
    }

    pub fn total(&self) -> Rational {
        self.probs.iter().cloned().sum()
    }

    /// Table with every assignment replaced by its complement.
    pub fn flipped(&self) -> Self {
        let mask = self.probs.len() - 1;
        let probs = (0..self.probs.len()).map(|i| self.probs[i ^ mask].clone()).collect();
        Self { subject: self.subject.clone(), probs }
    }

    /// Sums out `subject[j]`.
    pub fn sum_out(&self, j: usize) -> Self {
        let mut subject = self.subject.clone();
        subject.remove(j);
        let mut probs = vec![Rational::zero(); self.probs.len() / 2];
        for (i, p) in self.probs.iter().enumerate() {
            let low = i & ((1 << j) - 1);
            let high = (i >> (j + 1)) << j;
            probs[low | high] += p;
        }
        Self { subject, probs }
    }

    /// Largest entrywise absolute difference. Subjects must match.
    pub fn max_abs_diff(&self, other: &Self) -> Rational {
        assert_eq!(self.subject, other.subject);
        self.probs
            .iter()
            .zip(&other.probs)
            .map(|(a, b)| if a > b { a - b } else { b - a })
            .max()
            .unwrap_or_else(Rational::zero)
    }

    /// Label of entry `i`, spins written in subject order, e.g. `01`.
    pub fn label(&self, index: usize) -> String {
        (0..self.subject.len()).map(|j| if (index >> j) & 1 == 1 { '1' } else { '0' }).collect()
    }
}

impl fmt::Display for MarginalTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, p) in self.probs.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{}: {}", self.label(i), fmt_rational(p))?;
        }
        Ok(())
    }
}

/// Conditional distribution of the spins on `subject` given `cond`.
pub fn marginal(
    f: &SymmetricFunction,
    h: &Hypergraph,
    subject: &[usize],
    cond: &AdmissibleCollection,
) -> Result<MarginalTable, SpinError> {
    marginal_with(f, h, subject, cond, &EnumOptions::from_env())
}

pub fn marginal_with(
    f: &SymmetricFunction,
    h: &Hypergraph,
    subject: &[usize],
    cond: &AdmissibleCollection,
    opts: &EnumOptions,
) -> Result<MarginalTable, SpinError> {
    let weights = conditioned_weights(f, h, cond, subject, opts)?;
    MarginalTable::from_weights(subject.to_vec(), weights)
}
