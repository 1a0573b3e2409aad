use std::fmt;

use num_traits::Zero;
use spin_core::rational::fmt_rational;
use spin_core::{Rational, SpinError};

/// Normalised joint distribution of the spins at two terminals `x`, `y`.
/// `m01` is the probability of `x = 0, y = 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairTable {
    pub m00: Rational,
    pub m01: Rational,
    pub m10: Rational,
    pub m11: Rational,
}

impl PairTable {
    /// From weights indexed with bit 0 for `x` and bit 1 for `y`, as
    /// returned by the enumeration engine.
    pub fn from_weights(w: &[Rational]) -> Result<Self, SpinError> {
        assert_eq!(w.len(), 4);
        let total: Rational = w.iter().cloned().sum();
        if total.is_zero() {
            return Err(SpinError::NotAdmissible);
        }
        Ok(PairTable { m00: &w[0] / &total, m10: &w[1] / &total, m01: &w[2] / &total, m11: &w[3] / &total })
    }

    /// Exchanges the roles of spins 0 and 1.
    pub fn swapped(&self) -> Self {
        PairTable { m00: self.m11.clone(), m01: self.m10.clone(), m10: self.m01.clone(), m11: self.m00.clone() }
    }

    pub fn is_symmetric(&self) -> bool {
        self.m01 == self.m10
    }

    /// `m00 + m11 > 0`, `min(m00, m11) < sqrt(m01 m10)` and
    /// `max(m00, m11) <= sqrt(m01 m10)`, compared after squaring.
    pub fn is_antiferro(&self) -> bool {
        let off = &self.m01 * &self.m10;
        let (lo, hi) = if self.m00 <= self.m11 { (&self.m00, &self.m11) } else { (&self.m11, &self.m00) };
        !(&self.m00 + &self.m11).is_zero() && lo * lo < off && hi * hi <= off
    }

    /// The self-dual form `0 < m00 < m01`.
    pub fn is_self_dual_hard(&self) -> bool {
        !self.m00.is_zero() && self.m00 < self.m01
    }

    /// `(beta0, gamma0, swapped)`: after swapping spins if needed so that
    /// `m00 <= m11`, `beta0 = m00^2 / (m01 m10)` and `gamma0 = m11^2 / (m01 m10)`.
    pub fn normalised_params(&self) -> Option<(Rational, Rational, bool)> {
        let swap = self.m00 > self.m11;
        let t = if swap { self.swapped() } else { self.clone() };
        let off = &t.m01 * &t.m10;
        if off.is_zero() {
            return None;
        }
        Some((&t.m00 * &t.m00 / &off, &t.m11 * &t.m11 / &off, swap))
    }
}

impl fmt::Display for PairTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "mu00={} mu01={} mu10={} mu11={}",
            fmt_rational(&self.m00),
            fmt_rational(&self.m01),
            fmt_rational(&self.m10),
            fmt_rational(&self.m11)
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use spin_core::rational::{int, rat};

    #[test]
    fn hard_core_normalisation() {
        let t = PairTable::from_weights(&[int(1), int(1), int(1), int(0)]).unwrap();
        assert!(t.is_antiferro());
        assert_eq!(t.normalised_params(), Some((rat(0, 1), rat(1, 1), true)));
    }

    #[test]
    fn ferromagnetic_table_fails() {
        let t = PairTable::from_weights(&[int(2), int(1), int(1), int(2)]).unwrap();
        assert!(!t.is_antiferro());
        assert!(!t.is_self_dual_hard());
    }
}
