//! Schaefer polymorphisms of the support relation of a symmetric function.

use std::fmt;

use num_traits::Zero;
use spin_core::SymmetricFunction;

use crate::error::ClassifyError;

pub const BINARY_CAP: usize = 12;
pub const TERNARY_CAP: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Polymorphism {
    Const0,
    Const1,
    And,
    Or,
    Majority,
    Minority,
}

impl Polymorphism {
    /// Test order used by the tractability verdict.
    pub const ALL: [Polymorphism; 6] = [
        Polymorphism::Const0,
        Polymorphism::Const1,
        Polymorphism::And,
        Polymorphism::Or,
        Polymorphism::Majority,
        Polymorphism::Minority,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Polymorphism::Const0 => "g0",
            Polymorphism::Const1 => "g1",
            Polymorphism::And => "AND",
            Polymorphism::Or => "OR",
            Polymorphism::Majority => "Maj",
            Polymorphism::Minority => "minority",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|g| g.name().eq_ignore_ascii_case(s))
    }

    fn arity(self) -> usize {
        match self {
            Polymorphism::Const0 | Polymorphism::Const1 => 1,
            Polymorphism::And | Polymorphism::Or => 2,
            Polymorphism::Majority | Polymorphism::Minority => 3,
        }
    }

    fn cap(self) -> usize {
        match self.arity() {
            3 => TERNARY_CAP,
            _ => BINARY_CAP,
        }
    }
}

impl fmt::Display for Polymorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

fn satisfies(f: &SymmetricFunction, tuple: u32) -> bool {
    !f.w(tuple.count_ones() as usize).is_zero()
}

fn satisfying_tuples(f: &SymmetricFunction) -> Vec<u32> {
    (0..1u32 << f.arity()).filter(|&t| satisfies(f, t)).collect()
}

/// Whether `g`, applied position-wise to satisfying tuples, always yields a
/// satisfying tuple. Tuples are bitmasks over the `k` positions.
pub fn polymorphism_check(f: &SymmetricFunction, g: Polymorphism) -> Result<bool, ClassifyError> {
    let k = f.arity();
    if k > g.cap() {
        return Err(ClassifyError::CapExceeded { k, cap: g.cap() });
    }
    let full = (1u32 << k) - 1;
    let sat = satisfying_tuples(f);
    Ok(match g {
        Polymorphism::Const0 => satisfies(f, 0),
        Polymorphism::Const1 => satisfies(f, full),
        Polymorphism::And => sat.iter().all(|&a| sat.iter().all(|&b| satisfies(f, a & b))),
        Polymorphism::Or => sat.iter().all(|&a| sat.iter().all(|&b| satisfies(f, a | b))),
        Polymorphism::Majority => {
            sat.iter().all(|&a| sat.iter().all(|&b| sat.iter().all(|&c| satisfies(f, (a & b) | (a & c) | (b & c)))))
        }
        Polymorphism::Minority => {
            sat.iter().all(|&a| sat.iter().all(|&b| sat.iter().all(|&c| satisfies(f, a ^ b ^ c))))
        }
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CspVerdict {
    /// Every polymorphism that holds, in test order.
    Tractable(Vec<Polymorphism>),
    NpComplete,
}

impl fmt::Display for CspVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CspVerdict::Tractable(gs) => {
                let names: Vec<_> = gs.iter().map(|g| g.name()).collect();
                write!(f, "tractable ({})", names.join(", "))
            }
            CspVerdict::NpComplete => f.write_str("NP-complete"),
        }
    }
}

pub fn csp_decision_verdict(f: &SymmetricFunction) -> Result<CspVerdict, ClassifyError> {
    let mut found = Vec::new();
    for g in Polymorphism::ALL {
        if polymorphism_check(f, g)? {
            found.push(g);
        }
    }
    Ok(if found.is_empty() { CspVerdict::NpComplete } else { CspVerdict::Tractable(found) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use spin_core::EasyKind;

    #[test]
    fn examples() {
        let even = SymmetricFunction::parity(3, false);
        let nae = SymmetricFunction::not_all_equal(3);
        assert!(polymorphism_check(&even, Polymorphism::Minority).unwrap());
        assert!(!polymorphism_check(&nae, Polymorphism::Majority).unwrap());
        assert!(polymorphism_check(&EasyKind::AllZero.function(3), Polymorphism::And).unwrap());
        assert_eq!(csp_decision_verdict(&nae).unwrap(), CspVerdict::NpComplete);
        assert_eq!(
            csp_decision_verdict(&even).unwrap(),
            CspVerdict::Tractable(vec![Polymorphism::Const0, Polymorphism::Minority])
        );
        let wis = SymmetricFunction::weak_independent_set(3);
        match csp_decision_verdict(&wis).unwrap() {
            CspVerdict::Tractable(gs) => assert_eq!(gs[0], Polymorphism::Const0),
            v => panic!("{v}"),
        }
    }

    #[test]
    fn caps() {
        let f = SymmetricFunction::not_all_equal(9);
        assert!(polymorphism_check(&f, Polymorphism::And).is_ok());
        assert_eq!(
            polymorphism_check(&f, Polymorphism::Majority),
            Err(ClassifyError::CapExceeded { k: 9, cap: TERNARY_CAP })
        );
    }

    #[test]
    fn names_round_trip() {
        for g in Polymorphism::ALL {
            assert_eq!(Polymorphism::parse(g.name()), Some(g));
        }
    }
}
