//! Reduction of an antiferromagnetic system to Ising or hard-core form.

use crate::error::UniquenessError;
use crate::tree::SpinSystemParams;

/// Maps `(beta, gamma, lambda)` to an equivalent symmetric system on
/// `delta`-regular graphs: `(sqrt(bg), sqrt(bg), lambda (beta/gamma)^(delta/2))`
/// when `beta > 0`, and `(0, 1, lambda / gamma^delta)` when `beta = 0`.
pub fn normalise(p: &SpinSystemParams) -> Result<SpinSystemParams, UniquenessError> {
    let p = SpinSystemParams::new(p.beta, p.gamma, p.lambda, p.delta)?;
    if !p.is_antiferro() {
        return Err(UniquenessError::NotAntiferro { product: p.beta * p.gamma });
    }
    if p.gamma == 0.0 {
        return Err(UniquenessError::ZeroGamma);
    }
    let delta = p.delta as f64;
    if p.beta == 0.0 {
        return SpinSystemParams::new(0.0, 1.0, p.lambda / p.gamma.powf(delta), p.delta);
    }
    let b = (p.beta * p.gamma).sqrt();
    SpinSystemParams::new(b, b, p.lambda * (p.beta / p.gamma).powf(delta / 2.0), p.delta)
}

/// Factor `c` with `Z(p; G) = c * Z(normalise(p); G)` on a `delta`-regular
/// graph with `edges` edges.
pub fn normalisation_factor(p: &SpinSystemParams, edges: usize) -> f64 {
    let e = edges as f64;
    if p.beta == 0.0 {
        p.gamma.powf(e)
    } else {
        (p.gamma / p.beta).sqrt().powf(e)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let p = SpinSystemParams::new(0.5, 0.5, 2.0, 5).unwrap();
        assert_eq!(normalise(&p).unwrap(), p);
        let q = normalise(&SpinSystemParams::new(0.0, 2.0, 1.0, 3).unwrap()).unwrap();
        assert_eq!((q.beta, q.gamma, q.lambda), (0.0, 1.0, 0.125));
    }
}
