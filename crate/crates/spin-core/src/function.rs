use std::fmt;

use num_traits::{One, Zero};

use crate::error::SpinError;
use crate::rational::{fmt_rational, is_nonnegative, Rational};

/// A symmetric function `f: {0,1}^k -> Q>=0`, stored as the value `w[l]`
/// it takes on any input with exactly `l` ones.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SymmetricFunction {
    k: usize,
    weights: Vec<Rational>,
}

impl SymmetricFunction {
    pub fn new(weights: Vec<Rational>) -> Result<Self, SpinError> {
        if weights.len() < 2 {
            return Err(SpinError::InvalidFunction("need at least two weights (arity >= 1)".into()));
        }
        if let Some(w) = weights.iter().find(|w| !is_nonnegative(w)) {
            return Err(SpinError::InvalidFunction(format!("negative weight {}", fmt_rational(w))));
        }
        Ok(Self { k: weights.len() - 1, weights })
    }

    /// Convenience constructor for integer weight vectors.
    pub fn from_ints(weights: &[i64]) -> Result<Self, SpinError> {
        Self::new(weights.iter().map(|&w| Rational::from_integer(w.into())).collect())
    }

    /// Boolean function with `w[l] = 1` exactly when `pred(l)`.
    pub fn from_predicate(k: usize, pred: impl Fn(usize) -> bool) -> Self {
        let weights = (0..=k).map(|l| if pred(l) { Rational::one() } else { Rational::zero() }).collect();
        Self { k, weights }
    }

    pub fn arity(&self) -> usize {
        self.k
    }

    pub fn weights(&self) -> &[Rational] {
        &self.weights
    }

    /// Weight of an input with `ones` ones.
    pub fn w(&self, ones: usize) -> &Rational {
        &self.weights[ones]
    }

    pub fn is_boolean(&self) -> bool {
        self.weights.iter().all(|w| w.is_zero() || w.is_one())
    }

    pub fn is_constant(&self) -> bool {
        self.weights.iter().all(|w| *w == self.weights[0])
    }

    /// `w[l] == w[k-l]` for all `l`.
    pub fn is_self_dual(&self) -> bool {
        (0..=self.k).all(|l| self.weights[l] == self.weights[self.k - l])
    }

    /// The function obtained by swapping the roles of spins 0 and 1.
    pub fn flipped(&self) -> Self {
        let mut weights = self.weights.clone();
        weights.reverse();
        Self { k: self.k, weights }
    }

    /// Smallest positive index with a nonzero weight.
    pub fn first_positive_support(&self) -> Option<usize> {
        (1..=self.k).find(|&l| !self.weights[l].is_zero())
    }

    pub fn not_all_equal(k: usize) -> Self {
        Self::from_predicate(k, |l| l != 0 && l != k)
    }

    /// Weak independent set: forbids an edge whose vertices are all 1.
    pub fn weak_independent_set(k: usize) -> Self {
        Self::from_predicate(k, |l| l < k)
    }

    /// Strong independent set: at most one 1 per edge.
    pub fn strong_independent_set(k: usize) -> Self {
        Self::from_predicate(k, |l| l <= 1)
    }

    pub fn exactly_one(k: usize) -> Self {
        Self::from_predicate(k, |l| l == 1)
    }

    pub fn parity(k: usize, odd: bool) -> Self {
        Self::from_predicate(k, |l| (l % 2 == 1) == odd)
    }
}

impl fmt::Display for SymmetricFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.weights.iter().map(fmt_rational).collect();
        write!(f, "k={} w=({})", self.k, parts.join(", "))
    }
}

/// The seven functions whose partition functions are polynomial-time computable.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EasyKind {
    Zero,
    One,
    AllZero,
    AllOne,
    Eq,
    Even,
    Odd,
}

impl EasyKind {
    pub const ALL: [EasyKind; 7] = [
        EasyKind::Zero,
        EasyKind::One,
        EasyKind::AllZero,
        EasyKind::AllOne,
        EasyKind::Eq,
        EasyKind::Even,
        EasyKind::Odd,
    ];

    pub fn function(self, k: usize) -> SymmetricFunction {
        match self {
            EasyKind::Zero => SymmetricFunction::from_predicate(k, |_| false),
            EasyKind::One => SymmetricFunction::from_predicate(k, |_| true),
            EasyKind::AllZero => SymmetricFunction::from_predicate(k, |l| l == 0),
            EasyKind::AllOne => SymmetricFunction::from_predicate(k, |l| l == k),
            EasyKind::Eq => SymmetricFunction::from_predicate(k, |l| l == 0 || l == k),
            EasyKind::Even => SymmetricFunction::parity(k, false),
            EasyKind::Odd => SymmetricFunction::parity(k, true),
        }
    }

    /// Exact pattern match of `f` against the seven weight vectors.
    pub fn detect(f: &SymmetricFunction) -> Option<EasyKind> {
        Self::ALL.into_iter().find(|e| e.function(f.arity()) == *f)
    }

    pub fn name(self) -> &'static str {
        match self {
            EasyKind::Zero => "Zero",
            EasyKind::One => "One",
            EasyKind::AllZero => "AllZero",
            EasyKind::AllOne => "AllOne",
            EasyKind::Eq => "Eq",
            EasyKind::Even => "Even",
            EasyKind::Odd => "Odd",
        }
    }
}

impl fmt::Display for EasyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}
