//! Degree certificates: a Δ past which every system in a thin strip around
//! `(beta0, 1)` is antiferromagnetic and non-unique at zero field.

use crate::error::UniquenessError;
use crate::tree::{hard_core_threshold, uniqueness_verdict, SpinSystemParams, Verdict, TOLERANCE};

const LINEAR_SCAN_LIMIT: u64 = 1_000_000;
/// Beyond this `d - 1` and `d` are no longer distinct in binary64.
const SEARCH_CEILING: u64 = 1 << 52;

#[derive(Debug, Clone, PartialEq)]
pub struct InequalityCheck {
    pub name: &'static str,
    pub lhs: f64,
    pub rhs: f64,
    pub holds: bool,
}

impl InequalityCheck {
    fn less(name: &'static str, lhs: f64, rhs: f64) -> Self {
        InequalityCheck { name, lhs, rhs, holds: lhs < rhs }
    }

    fn at_least(name: &'static str, lhs: f64, rhs: f64) -> Self {
        InequalityCheck { name, lhs, rhs, holds: lhs >= rhs }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct StripCertificate {
    pub beta0: f64,
    pub delta: u64,
    /// Half-width of the strip, `1/delta`.
    pub epsilon: f64,
    pub checks: Vec<InequalityCheck>,
    /// Verdict at `beta0 + epsilon/2`, `gamma = 1 + epsilon/2`, `lambda = 1`.
    pub spot_check: Option<Verdict>,
}

/// Upper bound on `lambda1` in terms of `T`, as `(6/T)(1 + 2/T)^d`.
fn lambda1_bound(t: f64, d: f64) -> f64 {
    ((6.0 / t).ln() + d * (2.0 / t).ln_1p()).exp()
}

/// Lower bound on `lambda2`, as `(T/2)(1 - 2/T)^d`.
fn lambda2_bound(t: f64, d: f64) -> f64 {
    ((t / 2.0).ln() + d * (-2.0 / t).ln_1p()).exp()
}

/// The inequalities that make the strip certificate go through at `delta`.
pub fn strip_checks(beta0: f64, delta: u64) -> Vec<InequalityCheck> {
    let big_d = delta as f64;
    let d = big_d - 1.0;
    let eps = 1.0 / big_d;
    let mut out = Vec::new();
    let t = if beta0 > 0.0 {
        let bg = (beta0 + eps) * (1.0 + eps);
        out.push(InequalityCheck::less("1/beta0 < delta", 1.0 / beta0, big_d));
        out.push(InequalityCheck::less("beta_max < 1", beta0 + eps, 1.0));
        out.push(InequalityCheck::less("beta_max * gamma_max < 1", bg, 1.0));
        let t = (d - 1.0) - (d + 1.0) * bg;
        out.push(InequalityCheck::at_least("T >= d(1-beta0)/2", t, d * (1.0 - beta0) / 2.0));
        out.push(InequalityCheck::less("2 < T", 2.0, t));
        out.push(InequalityCheck::less("4 beta gamma < T^2", 4.0 * bg, t * t));
        t
    } else {
        out.push(InequalityCheck::at_least("d >= 10", d, 10.0));
        out.push(InequalityCheck::less("lambda_c(1+eps, d) < 1", hard_core_threshold(1.0 + eps, d as usize), 1.0));
        d - 3.0
    };
    let ok = t > 2.0;
    let l1 = if ok { lambda1_bound(t, d) } else { f64::INFINITY };
    let l2 = if ok { lambda2_bound(t, d) } else { 0.0 };
    out.push(InequalityCheck::less("(6/T)(1+2/T)^d < 1", l1, 1.0 - TOLERANCE));
    out.push(InequalityCheck::less("1 < (T/2)(1-2/T)^d", 1.0 + TOLERANCE, l2));
    out
}

fn passes(beta0: f64, delta: u64) -> bool {
    strip_checks(beta0, delta).iter().all(|c| c.holds)
}

/// Rough `log10` of the certified degree for large degrees, from the
/// leading behaviour `T ~ d(1 - beta0)` and `(1 + 2/T)^d ~ exp(2/(1 - beta0))`.
pub fn log10_degree_estimate(beta0: f64) -> f64 {
    let c = 1.0 - beta0;
    ((6.0f64).ln() + 2.0 / c - c.ln()) / std::f64::consts::LN_10
}

/// Smallest degree, counting up from 3, at which every check passes.
pub fn strip_certificate(beta0: f64) -> Result<StripCertificate, UniquenessError> {
    if !(0.0..1.0).contains(&beta0) {
        return Err(UniquenessError::InvalidParams(format!("beta0 = {beta0} is outside [0, 1)")));
    }
    let out_of_range = || UniquenessError::DeltaOutOfRange { beta0, log10_estimate: log10_degree_estimate(beta0) };
    if log10_degree_estimate(beta0) > (SEARCH_CEILING as f64).log10() + 1.0 {
        return Err(out_of_range());
    }
    let found = (3..=LINEAR_SCAN_LIMIT).find(|&delta| passes(beta0, delta)).or_else(|| {
        // Gallop past the linear range, then bisect back to the first pass.
        let mut lo = LINEAR_SCAN_LIMIT;
        let mut hi = lo * 2;
        while !passes(beta0, hi) {
            lo = hi;
            hi = hi.checked_mul(2).filter(|&h| h <= SEARCH_CEILING)?;
        }
        while hi - lo > 1 {
            let mid = lo + (hi - lo) / 2;
            if passes(beta0, mid) {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        Some(hi)
    });
    let delta = found.ok_or_else(out_of_range)?;
    let epsilon = 1.0 / delta as f64;
    let spot = usize::try_from(delta).ok().and_then(|dl| {
        let p = SpinSystemParams::new(beta0 + epsilon / 2.0, 1.0 + epsilon / 2.0, 1.0, dl).ok()?;
        uniqueness_verdict(&p).ok()
    });
    Ok(StripCertificate { beta0, delta, epsilon, checks: strip_checks(beta0, delta), spot_check: spot })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hard_core_strip() {
        let c = strip_certificate(0.0).unwrap();
        assert!((41..=61).contains(&c.delta), "{}", c.delta);
        assert!(c.checks.iter().all(|x| x.holds));
        assert!(!passes(0.0, c.delta - 1));
        assert_eq!(c.spot_check, Some(Verdict::NonUnique));
    }

    #[test]
    fn soft_strip() {
        let c = strip_certificate(0.5).unwrap();
        assert!(c.checks.iter().all(|x| x.holds));
        assert_eq!(c.spot_check, Some(Verdict::NonUnique));
    }

    #[test]
    fn near_one_is_out_of_range() {
        match strip_certificate(0.999) {
            Err(UniquenessError::DeltaOutOfRange { log10_estimate, .. }) => assert!(log10_estimate > 800.0),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn rejects_beta0_at_one() {
        assert!(strip_certificate(1.0).is_err());
    }
}
