//! Degree certificates for a witness, and the binomial inequality that the
//! self-dual constructions lean on.

use std::fmt;

use num_traits::Zero;
use spin_core::rational::{binomial, fmt_rational, to_f64};
use spin_core::Rational;
use uniqueness::{strip_certificate, uniqueness_verdict, SpinSystemParams, StripCertificate, UniquenessError, Verdict};

use crate::error::ReductionError;
use crate::table::PairTable;
use crate::witness::{HardnessWitness, Route};

#[derive(Debug, Clone, PartialEq)]
pub struct DegreeReport {
    pub beta0: Rational,
    pub gamma0: Rational,
    /// Whether spins were exchanged to get `mu00 <= mu11`.
    pub swapped: bool,
    /// Degree past which the whole strip around `beta0` is non-unique, or
    /// why no such degree could be produced.
    pub strip: Result<StripCertificate, UniquenessError>,
    /// Verdicts at `(beta0, gamma0, lambda = 1)` for the requested degrees.
    pub spot_checks: Vec<(usize, Verdict)>,
}

impl DegreeReport {
    /// Accuracy the realised pair table must reach, `1/Delta`.
    pub fn epsilon(&self) -> Option<f64> {
        self.strip.as_ref().ok().map(|c| c.epsilon)
    }

    /// Whether a realised table normalises into the certified strip
    /// `beta0 - eps <= beta < beta0 + eps`, `0 < gamma < 1 + eps`. `None`
    /// without a certificate.
    pub fn in_strip(&self, mu: &PairTable) -> Option<bool> {
        let c = self.strip.as_ref().ok()?;
        let (beta, gamma, _) = mu.normalised_params()?;
        let (beta, gamma, beta0) = (to_f64(&beta), to_f64(&gamma), to_f64(&self.beta0));
        Some(beta0 - c.epsilon <= beta && beta < beta0 + c.epsilon && gamma > 0.0 && gamma < 1.0 + c.epsilon)
    }
}

impl fmt::Display for DegreeReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "beta0 = {}, gamma0 = {}", fmt_rational(&self.beta0), fmt_rational(&self.gamma0))?;
        if self.swapped {
            f.write_str(" (spins swapped)")?;
        }
        match &self.strip {
            Ok(c) => write!(f, "; strip degree {} (epsilon {:.12e})", c.delta, c.epsilon)?,
            Err(e) => write!(f, "; strip degree unavailable: {e}")?,
        }
        for (d, v) in &self.spot_checks {
            write!(f, "; delta {d}: {v}")?;
        }
        Ok(())
    }
}

/// Normalises the witness table and certifies a degree from which the
/// corresponding binary spin system is non-unique at zero field.
pub fn min_delta_certificate(w: &HardnessWitness, spot_degrees: &[usize]) -> Result<DegreeReport, ReductionError> {
    if w.route != Route::Antiferro {
        return Err(ReductionError::WrongRoute);
    }
    let mu = w.mu.as_ref().ok_or(ReductionError::WrongRoute)?;
    let (beta0, gamma0, swapped) = mu.normalised_params().ok_or(ReductionError::ZeroOffDiagonal)?;
    let strip = strip_certificate(to_f64(&beta0));
    let mut spot_checks = Vec::new();
    if !gamma0.is_zero() {
        for &d in spot_degrees {
            let p = SpinSystemParams::new(to_f64(&beta0), to_f64(&gamma0), 1.0, d)?;
            spot_checks.push((d, uniqueness_verdict(&p)?));
        }
    }
    Ok(DegreeReport { beta0, gamma0, swapped, strip, spot_checks })
}

/// `(1 + C(n,i)) (1 + C(n,i-2))` against `C(n,i-1)^2`.
pub fn binomial_inequality(n: usize, i: usize) -> (Rational, Rational) {
    let c = |j| Rational::from_integer(binomial(n, j).into());
    let one = Rational::from_integer(1.into());
    ((&one + c(i)) * (&one + c(i - 2)), c(i - 1) * c(i - 1))
}

/// Checks the inequality for `2 <= i <= n <= max_n`: strict everywhere
/// except `n = i = 2`, where it is an equality. Returns the first failure.
pub fn check_binomial_inequality(max_n: usize) -> Result<(), (usize, usize)> {
    for n in 2..=max_n {
        for i in 2..=n {
            let (lhs, rhs) = binomial_inequality(n, i);
            let ok = if (n, i) == (2, 2) { lhs == rhs } else { lhs < rhs };
            if !ok {
                return Err((n, i));
            }
        }
    }
    Ok(())
}
