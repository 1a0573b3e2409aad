//! Tree recursion for antiferromagnetic 2-spin systems on the Δ-regular tree.

use std::fmt;

use crate::error::UniquenessError;

/// Distance from a decision boundary below which a verdict is not trusted.
pub const TOLERANCE: f64 = 1e-9;

/// Edge weights `beta` (both ends 0) and `gamma` (both ends 1), field
/// `lambda` on spin 0, and tree degree `delta`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpinSystemParams {
    pub beta: f64,
    pub gamma: f64,
    pub lambda: f64,
    pub delta: usize,
}

impl SpinSystemParams {
    pub fn new(beta: f64, gamma: f64, lambda: f64, delta: usize) -> Result<Self, UniquenessError> {
        let p = SpinSystemParams { beta, gamma, lambda, delta };
        p.validate()?;
        Ok(p)
    }

    fn validate(&self) -> Result<(), UniquenessError> {
        let finite = [self.beta, self.gamma, self.lambda].iter().all(|x| x.is_finite());
        if !finite || self.beta < 0.0 || self.gamma < 0.0 || self.lambda <= 0.0 {
            return Err(UniquenessError::InvalidParams(format!("{self}")));
        }
        if self.delta < 3 {
            return Err(UniquenessError::InvalidParams(format!("delta = {} < 3", self.delta)));
        }
        Ok(())
    }

    /// `d = delta - 1`, the branching factor.
    pub fn d(&self) -> usize {
        self.delta - 1
    }

    pub fn is_antiferro(&self) -> bool {
        self.beta * self.gamma < 1.0
    }

    fn require_antiferro(&self) -> Result<(), UniquenessError> {
        self.validate()?;
        if !self.is_antiferro() {
            return Err(UniquenessError::NotAntiferro { product: self.beta * self.gamma });
        }
        if self.gamma == 0.0 {
            return Err(UniquenessError::ZeroGamma);
        }
        Ok(())
    }

    /// `h(x) = lambda * ((beta x + 1) / (x + gamma))^d`, in log space.
    pub fn h(&self, x: f64) -> f64 {
        let d = self.d() as f64;
        (self.lambda.ln() + d * ((self.beta * x).ln_1p() - (x + self.gamma).ln())).exp()
    }

    /// `h'` at a fixed point, where it simplifies to a rational expression.
    pub fn h_prime_at_fixed_point(&self, x: f64) -> f64 {
        let d = self.d() as f64;
        -x * d * (1.0 - self.beta * self.gamma) / ((self.beta * x + 1.0) * (x + self.gamma))
    }
}

impl fmt::Display for SpinSystemParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "beta={} gamma={} lambda={} delta={}", self.beta, self.gamma, self.lambda, self.delta)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Verdict {
    Unique,
    NonUnique,
    /// Too close to the boundary to call.
    Indeterminate {
        tolerance: f64,
    },
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Unique => f.write_str("unique"),
            Verdict::NonUnique => f.write_str("non-unique"),
            Verdict::Indeterminate { tolerance } => write!(f, "indeterminate (within {tolerance:e})"),
        }
    }
}

/// Unique positive solution of `x = h(x)`, by bisection on `[0, h(0)]`.
pub fn fixed_point(p: &SpinSystemParams) -> Result<f64, UniquenessError> {
    p.require_antiferro()?;
    let (mut lo, mut hi) = (0.0f64, p.h(0.0));
    // x - h(x) is increasing; negative at lo, nonnegative at hi.
    loop {
        let mid = lo + (hi - lo) / 2.0;
        if mid <= lo || mid >= hi {
            break;
        }
        if mid - p.h(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let lo_gap = (lo - p.h(lo)).abs();
    let hi_gap = (hi - p.h(hi)).abs();
    Ok(if lo_gap <= hi_gap && lo > 0.0 { lo } else { hi })
}

/// Soft-constrained critical interval: the field values between which the
/// tree has more than one fixed point of the two-step recursion.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CriticalInterval {
    pub x1: Option<f64>,
    pub x2: Option<f64>,
    pub lambda1: f64,
    /// `f64::INFINITY` for hard-core systems.
    pub lambda2: f64,
}

impl CriticalInterval {
    pub fn contains(&self, lambda: f64) -> bool {
        self.lambda1 < lambda && lambda < self.lambda2
    }

    /// Within relative `TOLERANCE` of either endpoint.
    pub fn near_boundary(&self, lambda: f64) -> bool {
        [self.lambda1, self.lambda2].iter().any(|b| b.is_finite() && (lambda - b).abs() <= TOLERANCE * b.abs().max(1.0))
    }
}

/// Hard-core threshold `gamma^(d+1) d^d / (d-1)^(d+1)`.
pub fn hard_core_threshold(gamma: f64, d: usize) -> f64 {
    let d = d as f64;
    ((d + 1.0) * gamma.ln() + d * d.ln() - (d + 1.0) * (d - 1.0).ln()).exp()
}

pub fn critical_interval(beta: f64, gamma: f64, delta: usize) -> Result<CriticalInterval, UniquenessError> {
    SpinSystemParams::new(beta, gamma, 1.0, delta)?.require_antiferro()?;
    let d = delta - 1;
    if beta == 0.0 {
        // Non-uniqueness exactly above the threshold.
        return Ok(CriticalInterval {
            x1: None,
            x2: None,
            lambda1: hard_core_threshold(gamma, d),
            lambda2: f64::INFINITY,
        });
    }
    let df = d as f64;
    let bg = beta * gamma;
    let t = (df - 1.0) - (df + 1.0) * bg;
    let disc = t * t - 4.0 * bg;
    if t <= 0.0 || disc <= 0.0 {
        return Err(UniquenessError::NoInterval);
    }
    let root = disc.sqrt();
    // Conjugate form avoids cancellation in the small root.
    let x1 = 2.0 * gamma / (t + root);
    let x2 = (t + root) / (2.0 * beta);
    let lam = |x: f64| (x.ln() + df * ((x + gamma).ln() - (beta * x).ln_1p())).exp();
    Ok(CriticalInterval { x1: Some(x1), x2: Some(x2), lambda1: lam(x1), lambda2: lam(x2) })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TreeAnalysis {
    pub x_star: f64,
    pub h_prime_at_x_star: f64,
    pub interval: Option<CriticalInterval>,
    pub verdict: Verdict,
}

/// Uniqueness holds iff `|h'(x*)| <= 1`. The verdict is cross-checked
/// against membership of `lambda` in the critical interval.
pub fn analyse(p: &SpinSystemParams) -> Result<TreeAnalysis, UniquenessError> {
    let x_star = fixed_point(p)?;
    let hp = p.h_prime_at_fixed_point(x_star);
    let slope = hp.abs();
    let verdict = if (slope - 1.0).abs() <= TOLERANCE {
        Verdict::Indeterminate { tolerance: TOLERANCE }
    } else if slope > 1.0 {
        Verdict::NonUnique
    } else {
        Verdict::Unique
    };
    let interval = match critical_interval(p.beta, p.gamma, p.delta) {
        Ok(iv) => Some(iv),
        Err(UniquenessError::NoInterval) => None,
        Err(e) => return Err(e),
    };
    let by_interval = match &interval {
        Some(iv) if iv.near_boundary(p.lambda) => None,
        Some(iv) => Some(iv.contains(p.lambda)),
        None => Some(false),
    };
    if let (Some(inside), Verdict::Unique | Verdict::NonUnique) = (by_interval, verdict) {
        if inside != (verdict == Verdict::NonUnique) {
            return Err(UniquenessError::InconsistentCriteria(format!(
                "{p}: |h'(x*)| = {slope}, interval membership = {inside}"
            )));
        }
    }
    Ok(TreeAnalysis { x_star, h_prime_at_x_star: hp, interval, verdict })
}

pub fn uniqueness_verdict(p: &SpinSystemParams) -> Result<Verdict, UniquenessError> {
    analyse(p).map(|a| a.verdict)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hard_core(lambda: f64, delta: usize) -> SpinSystemParams {
        SpinSystemParams::new(0.0, 1.0, lambda, delta).unwrap()
    }

    #[test]
    fn symmetric_fixed_point_is_one() {
        for delta in 3..8 {
            let p = SpinSystemParams::new(0.3, 0.3, 1.0, delta).unwrap();
            assert!((fixed_point(&p).unwrap() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn hard_core_fixed_point_residual() {
        let p = hard_core(1.0, 6);
        let x = fixed_point(&p).unwrap();
        assert!((x * (x + 1.0).powi(5) - 1.0).abs() < 1e-11);
        assert!((x - p.h(x)).abs() < 1e-12);
    }

    #[test]
    fn hard_core_verdicts() {
        assert_eq!(uniqueness_verdict(&hard_core(1.0, 5)).unwrap(), Verdict::Unique);
        assert_eq!(uniqueness_verdict(&hard_core(1.0, 6)).unwrap(), Verdict::NonUnique);
    }

    #[test]
    fn ising_interval() {
        let iv = critical_interval(0.5, 0.5, 6).unwrap();
        assert!((iv.x1.unwrap() - (5.0 - 21f64.sqrt()) / 2.0).abs() < 1e-12);
        assert!((iv.x2.unwrap() - (5.0 + 21f64.sqrt()) / 2.0).abs() < 1e-12);
        assert!((iv.lambda1 - 0.022717028).abs() < 1e-8);
        assert!((iv.lambda2 - 44.019843).abs() < 1e-5);
        assert!((iv.lambda1 * iv.lambda2 - 1.0).abs() < 1e-9);
        let p = SpinSystemParams::new(0.5, 0.5, 1.0, 6).unwrap();
        assert_eq!(uniqueness_verdict(&p).unwrap(), Verdict::NonUnique);
    }

    #[test]
    fn hard_core_threshold_value() {
        assert!((hard_core_threshold(1.0, 5) - 3125.0 / 4096.0).abs() < 1e-15);
        let iv = critical_interval(0.0, 1.0, 6).unwrap();
        assert_eq!(iv.lambda2, f64::INFINITY);
    }

    #[test]
    fn no_interval_when_strongly_coupled() {
        assert_eq!(critical_interval(0.9, 0.9, 6), Err(UniquenessError::NoInterval));
    }

    #[test]
    fn rejections() {
        let p = SpinSystemParams::new(2.0, 1.0, 1.0, 4).unwrap();
        assert!(matches!(fixed_point(&p), Err(UniquenessError::NotAntiferro { .. })));
        let p = SpinSystemParams::new(0.5, 0.0, 1.0, 4).unwrap();
        assert_eq!(fixed_point(&p), Err(UniquenessError::ZeroGamma));
        assert!(SpinSystemParams::new(0.5, 0.5, 0.0, 4).is_err());
    }

    #[test]
    fn boundary_is_indeterminate() {
        let lc = hard_core_threshold(1.0, 5);
        let p = hard_core(lc, 6);
        assert!(matches!(uniqueness_verdict(&p).unwrap(), Verdict::Indeterminate { .. }));
    }
}
