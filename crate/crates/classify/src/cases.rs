//! The case split that decides which witness construction applies.

use std::fmt;

use num_traits::Zero;
use spin_core::{EasyKind, SymmetricFunction};

use crate::error::ClassifyError;
use crate::support::{support_verdict, SearchBudget, SupportVerdict};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Case {
    Easy,
    /// Both pins supported.
    CaseI,
    /// Self-dual with `w_0 = 0`.
    CaseIIW0Zero,
    /// Self-dual with `w_0 = 1`.
    CaseIIW0One,
    /// Only pinning-to-0 established.
    CaseIIIPin0,
    /// Only pinning-to-1 established.
    CaseIIIPin1,
}

impl Case {
    pub fn label(self) -> &'static str {
        match self {
            Case::Easy => "EASY",
            Case::CaseI => "I",
            Case::CaseIIW0Zero => "II (w0=0)",
            Case::CaseIIW0One => "II (w0=1)",
            Case::CaseIIIPin0 => "III (pin0)",
            Case::CaseIIIPin1 => "III (pin1)",
        }
    }
}

impl fmt::Display for Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassificationReport {
    pub easy: Option<EasyKind>,
    pub self_dual: bool,
    pub support: SupportVerdict,
    pub case: Case,
    /// Smallest positive index with `w_i = 1`.
    pub i: Option<usize>,
}

pub fn case_trichotomy(f: &SymmetricFunction, budget: &SearchBudget) -> Result<ClassificationReport, ClassifyError> {
    if !f.is_boolean() {
        return Err(ClassifyError::NotBoolean);
    }
    let easy = EasyKind::detect(f);
    let self_dual = f.is_self_dual();
    let support = support_verdict(f, budget);
    let i = (1..=f.arity()).find(|&l| !f.w(l).is_zero());
    let case = if easy.is_some() {
        Case::Easy
    } else if self_dual {
        if f.w(0).is_zero() {
            Case::CaseIIW0Zero
        } else {
            Case::CaseIIW0One
        }
    } else {
        match (support.pin0.is_yes(), support.pin1.is_yes()) {
            (true, true) => Case::CaseI,
            (true, false) => Case::CaseIIIPin0,
            (false, true) => Case::CaseIIIPin1,
            (false, false) => {
                return Err(ClassifyError::Undetermined(format!(
                    "neither pin established for {f} (pin0: {}, pin1: {})",
                    support.pin0, support.pin1
                )))
            }
        }
    };
    Ok(ClassificationReport { easy, self_dual, support, case, i })
}
