//! Powering constructions: glue many copies of a weakly biased gadget at its
//! terminals until the bias is overwhelming.

use num_traits::{One, Zero};
use spin_core::rational::{pow2, to_f64};
use spin_core::{
    conditioned_weights, AdmissibleCollection, EnumOptions, Hypergraph, HypergraphBuilder, Rational, SpinError,
    SymmetricFunction,
};

use crate::error::GadgetError;
use crate::gadget::{
    check_epsilon, measure_table, realisation_error, Certification, Gadget, GadgetProperty, Replication,
};

/// Smallest `r` of the form `1 + ceil(ln eps / ln(q/p))`, bumped until
/// `(q/p)^r <= eps` holds exactly. `q = 0` needs a single copy.
pub fn powering_exponent(p: &Rational, q: &Rational, eps: &Rational) -> Result<usize, GadgetError> {
    check_epsilon(eps)?;
    if q.is_zero() {
        return Ok(1);
    }
    if q >= p || *q < Rational::zero() {
        return Err(GadgetError::PreconditionViolated(format!("need p > q >= 0, got p={p}, q={q}")));
    }
    let ratio = q / p;
    let guess = (to_f64(eps).ln() / to_f64(&ratio).ln()).ceil();
    let mut r = if guess.is_finite() && guess > 0.0 { 1 + guess as usize } else { 1 };
    while num_traits::pow(ratio.clone(), r) > *eps {
        r += 1;
    }
    Ok(r)
}

fn normalised(weights: Vec<Rational>) -> Result<Vec<Rational>, GadgetError> {
    let total: Rational = weights.iter().cloned().sum();
    if total.is_zero() {
        return Err(GadgetError::NotAdmissible);
    }
    Ok(weights.into_iter().map(|w| w / &total).collect())
}

fn certify(
    f: &SymmetricFunction,
    h: &Hypergraph,
    property: &GadgetProperty,
    terminals: &[usize],
    cut: &[usize],
    analytic: Rational,
) -> Result<(Rational, Certification), GadgetError> {
    match measure_table(f, h, terminals, cut) {
        Ok(table) => Ok((realisation_error(property, &table), Certification::Exact)),
        Err(SpinError::CapExceeded { .. }) => Ok((analytic, Certification::AnalyticOnly)),
        Err(e) => Err(e.into()),
    }
}

/// `r` copies of `h` glued at `v`, amplifying a strict majority for spin `s`
/// at `v` into an `eps`-realisation of pinning-to-`s`.
pub fn power_pinning(
    f: &SymmetricFunction,
    h: &Hypergraph,
    v: usize,
    s: bool,
    eps: &Rational,
) -> Result<Gadget, GadgetError> {
    check_epsilon(eps)?;
    let mu = normalised(conditioned_weights(f, h, &AdmissibleCollection::empty(), &[v], &EnumOptions::from_env())?)?;
    let (p, q) = (mu[s as usize].clone(), mu[!s as usize].clone());
    if p <= q {
        return Err(GadgetError::NoMajority { vertex: v, spin: s as u8 });
    }
    let r = powering_exponent(&p, &q, eps)?;
    let mut b = HypergraphBuilder::new(h.uniformity());
    let t = b.fresh_vertex();
    for _ in 0..r {
        b.add_copy(h, &[(v, t)]);
    }
    let hypergraph = b.build()?;
    let (pr, qr) = (num_traits::pow(p.clone(), r), num_traits::pow(q.clone(), r));
    let analytic = &qr / (&pr + &qr);
    let property = GadgetProperty::PinTo(s);
    let (measured, certification) = certify(f, &hypergraph, &property, &[t], &[t], analytic)?;
    Ok(Gadget {
        hypergraph,
        terminals: vec![t],
        property,
        epsilon_target: eps.clone(),
        epsilon_measured: measured,
        certification,
        cut: vec![t],
        replication: Some(Replication { r, p, q }),
    })
}

/// Pairs two crossed copies of `h` so the off-diagonal entries agree, then
/// powers the pair at both terminals into an `eps`-realisation of
/// 2-equality.
pub fn symmetrise_equality(
    f: &SymmetricFunction,
    h: &Hypergraph,
    x: usize,
    y: usize,
    eps: &Rational,
) -> Result<Gadget, GadgetError> {
    check_epsilon(eps)?;
    if x == y {
        return Err(GadgetError::PreconditionViolated("terminals must differ".into()));
    }
    let mu = normalised(conditioned_weights(f, h, &AdmissibleCollection::empty(), &[x, y], &EnumOptions::from_env())?)?;
    // Index bit 0 is x, bit 1 is y.
    let (m00, m10, m01, m11) = (&mu[0], &mu[1], &mu[2], &mu[3]);
    if m00 != m11 {
        return Err(GadgetError::PreconditionViolated(format!("mu(00) = {m00} differs from mu(11) = {m11}")));
    }
    if m00 + m11 <= m01 + m10 {
        return Err(GadgetError::PreconditionViolated("equal spins are not more likely than unequal".into()));
    }
    let p = m00 * m00;
    let q = m01 * m10;
    let r = powering_exponent(&p, &q, eps)?;
    let mut b = HypergraphBuilder::new(h.uniformity());
    let t1 = b.fresh_vertex();
    let t2 = b.fresh_vertex();
    for _ in 0..r {
        b.add_copy(h, &[(x, t1), (y, t2)]);
        b.add_copy(h, &[(x, t2), (y, t1)]);
    }
    let hypergraph = b.build()?;
    let (pr, qr) = (num_traits::pow(p.clone(), r), num_traits::pow(q.clone(), r));
    let analytic = &qr / (&pr + &qr);
    let property = GadgetProperty::Equality(2);
    let (measured, certification) = certify(f, &hypergraph, &property, &[t1, t2], &[t1, t2], analytic)?;
    Ok(Gadget {
        hypergraph,
        terminals: vec![t1, t2],
        property,
        epsilon_target: eps.clone(),
        epsilon_measured: measured,
        certification,
        cut: vec![t1, t2],
        replication: Some(Replication { r, p, q }),
    })
}

fn pairs(t: usize) -> usize {
    t * (t - 1) / 2
}

/// Whether `((1-d)/(1+d))^C(t,2) >= max((1-eps/2)/(1+eps/2), 1/2)`.
fn ratio_condition(t: usize, eps: &Rational, delta: &Rational) -> bool {
    let one = Rational::one();
    let half_eps = eps / Rational::from_integer(2.into());
    let target = ((&one - &half_eps) / (&one + &half_eps)).max(Rational::new(1.into(), 2.into()));
    let base = (&one - delta) / (&one + delta);
    num_traits::pow(base, pairs(t)) >= target
}

/// Accuracy of 2-equality needed to lift to an `eps`-realisation of
/// `t`-equality: at most `eps/2^(t+2)` and small enough for the ratio
/// condition, both checked exactly.
pub fn required_delta(t: usize, eps: &Rational) -> Result<Rational, GadgetError> {
    check_epsilon(eps)?;
    if t < 2 {
        return Err(GadgetError::PreconditionViolated(format!("t = {t} < 2")));
    }
    let by_size = eps / pow2(t + 2);
    let half_eps = to_f64(eps) / 2.0;
    let m = ((1.0 - half_eps) / (1.0 + half_eps)).max(0.5);
    let root = m.powf(1.0 / pairs(t) as f64);
    let by_ratio_f = (1.0 - root) / (1.0 + root);
    // Round down onto a dyadic grid so the comparison stays exact.
    let scaled = (by_ratio_f * 2f64.powi(48)).floor().max(0.0) as u64;
    let by_ratio = Rational::from_integer(scaled.into()) / pow2(48);
    let mut delta = by_size.clone().min(by_ratio);
    if delta <= Rational::zero() {
        delta = by_size;
    }
    while !ratio_condition(t, eps, &delta) {
        delta /= Rational::from_integer(2.into());
    }
    Ok(delta)
}

/// One copy of a 2-equality gadget on every pair of `t` fresh terminals.
pub fn lift_equality(f: &SymmetricFunction, gadget2: &Gadget, t: usize, eps: &Rational) -> Result<Gadget, GadgetError> {
    if gadget2.property != GadgetProperty::Equality(2) || gadget2.terminals.len() != 2 {
        return Err(GadgetError::PreconditionViolated("input is not a 2-equality gadget".into()));
    }
    if t < 2 {
        return Err(GadgetError::PreconditionViolated(format!("t = {t} < 2")));
    }
    if t == 2 {
        return Ok(gadget2.clone());
    }
    let need = required_delta(t, eps)?;
    if gadget2.epsilon_measured > need {
        return Err(GadgetError::AccuracyInsufficient {
            have: gadget2.epsilon_measured.to_string(),
            need: need.to_string(),
        });
    }
    let (x, y) = (gadget2.terminals[0], gadget2.terminals[1]);
    let mut b = HypergraphBuilder::new(gadget2.hypergraph.uniformity());
    let terminals: Vec<usize> = (0..t).map(|_| b.fresh_vertex()).collect();
    let mut cut = terminals.clone();
    for i in 0..t {
        for j in i + 1..t {
            let map = b.add_copy(&gadget2.hypergraph, &[(x, terminals[i]), (y, terminals[j])]);
            for &c in &gadget2.cut {
                if !cut.contains(&map[c]) {
                    cut.push(map[c]);
                }
            }
        }
    }
    let hypergraph = b.build()?;
    let property = GadgetProperty::Equality(t);
    let (measured, certification) = certify(f, &hypergraph, &property, &terminals, &cut, eps.clone())?;
    Ok(Gadget {
        hypergraph,
        terminals,
        property,
        epsilon_target: eps.clone(),
        epsilon_measured: measured,
        certification,
        cut,
        replication: None,
    })
}
