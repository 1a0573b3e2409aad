//! Realising conditional distributions: attach pinning and equality gadgets
//! to a hypergraph until its unconditioned marginals on a subject set track
//! the conditioned ones.

use num_traits::{One, Zero};
use spin_core::rational::pow2;
use spin_core::{
    conditioned_weights, is_admissible, AdmissibleCollection, EnumOptions, Hypergraph, HypergraphBuilder,
    MarginalTable, Rational, SpinError, SymmetricFunction,
};

use crate::error::GadgetError;
use crate::gadget::{check_epsilon, measure_conditioned, measure_table, Certification, Gadget, GadgetProperty};
use crate::power::{lift_equality, power_pinning, required_delta, symmetrise_equality};

/// Halvings tried before giving up on an equality attachment.
const MAX_HALVINGS: usize = 30;

/// Supplies pinning and equality gadgets of any requested accuracy.
pub trait GadgetLibrary {
    fn pin(&self, s: bool, eps: &Rational) -> Result<Gadget, GadgetError>;
    fn equality(&self, t: usize, eps: &Rational) -> Result<Gadget, GadgetError>;
}

/// Builds gadgets by powering a biased vertex or a balanced pair found on a
/// single edge or on two edges sharing all but one slot.
#[derive(Debug, Clone)]
pub struct PowerLibrary {
    f: SymmetricFunction,
    pin_base: [Option<(Hypergraph, usize)>; 2],
    equality_base: Option<(Hypergraph, usize, usize)>,
}

impl PowerLibrary {
    pub fn new(f: &SymmetricFunction) -> Self {
        let k = f.arity();
        let mut pin_base: [Option<(Hypergraph, usize)>; 2] = [None, None];
        let mut equality_base = None;
        let opts = EnumOptions::from_env();
        for h in [Hypergraph::single_edge(k), Hypergraph::twin_edges(k)] {
            for v in 0..h.vertex_count() {
                let Ok(w) = conditioned_weights(f, &h, &AdmissibleCollection::empty(), &[v], &opts) else {
                    continue;
                };
                for s in [false, true] {
                    if w[s as usize] > w[!s as usize] && pin_base[s as usize].is_none() {
                        pin_base[s as usize] = Some((h.clone(), v));
                    }
                }
            }
            if equality_base.is_none() && h.vertex_count() >= 2 {
                if let Ok(w) = conditioned_weights(f, &h, &AdmissibleCollection::empty(), &[0, 1], &opts) {
                    if w[0] == w[3] && &w[0] + &w[3] > &w[1] + &w[2] {
                        equality_base = Some((h.clone(), 0, 1));
                    }
                }
            }
        }
        PowerLibrary { f: f.clone(), pin_base, equality_base }
    }

    pub fn supports_pin(&self, s: bool) -> bool {
        self.pin_base[s as usize].is_some()
    }

    pub fn supports_equality(&self) -> bool {
        self.equality_base.is_some()
    }
}

impl GadgetLibrary for PowerLibrary {
    fn pin(&self, s: bool, eps: &Rational) -> Result<Gadget, GadgetError> {
        let (h, v) = self.pin_base[s as usize].as_ref().ok_or(GadgetError::Unsupported(if s {
            "pinning-to-1"
        } else {
            "pinning-to-0"
        }))?;
        power_pinning(&self.f, h, *v, s, eps)
    }

    fn equality(&self, t: usize, eps: &Rational) -> Result<Gadget, GadgetError> {
        let (h, x, y) = self.equality_base.as_ref().ok_or(GadgetError::Unsupported("equality"))?;
        let delta = if t == 2 { eps.clone() } else { required_delta(t, eps)? };
        let g2 = symmetrise_equality(&self.f, h, *x, *y, &delta)?;
        lift_equality(&self.f, &g2, t, eps)
    }
}

/// What the peeled-off set is conditioned on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Event {
    Pin(bool),
    Equal,
}

/// Removes one condition: the first vertex pinned to 0, else the first
/// pinned to 1, else the last equality block.
fn peel(cond: &AdmissibleCollection) -> Option<(Vec<usize>, Event, AdmissibleCollection)> {
    let (p0, p1, blocks) = (cond.pin0().to_vec(), cond.pin1().to_vec(), cond.blocks().to_vec());
    let rebuild = |a, b, c| AdmissibleCollection::new(a, b, c).expect("subcollection of a valid collection");
    if let Some((&v, rest)) = p0.split_first() {
        return Some((vec![v], Event::Pin(false), rebuild(rest.to_vec(), p1, blocks)));
    }
    if let Some((&v, rest)) = p1.split_first() {
        return Some((vec![v], Event::Pin(true), rebuild(p0, rest.to_vec(), blocks)));
    }
    let (last, rest) = blocks.split_last()?;
    Some((last.clone(), Event::Equal, rebuild(p0, p1, rest.to_vec())))
}

/// Probability of the event on `x` in a table whose subject is `x`.
fn event_probability(table: &MarginalTable, event: Event) -> Rational {
    match event {
        Event::Pin(s) => table.all_equal(s).clone(),
        Event::Equal => table.all_equal(false) + table.all_equal(true),
    }
}

fn union(a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut out = a.to_vec();
    out.extend(b.iter().filter(|v| !a.contains(v)));
    out
}

struct Realised {
    hypergraph: Hypergraph,
    cut: Vec<usize>,
}

fn attach(base: &Realised, g: &Gadget, targets: &[usize]) -> Result<Realised, GadgetError> {
    let mut b = HypergraphBuilder::from_hypergraph(&base.hypergraph);
    let glue: Vec<(usize, usize)> = g.terminals.iter().copied().zip(targets.iter().copied()).collect();
    let map = b.add_copy(&g.hypergraph, &glue);
    let mapped: Vec<usize> = g.cut.iter().map(|&c| map[c]).collect();
    Ok(Realised { hypergraph: b.build()?, cut: union(&base.cut, &mapped) })
}

/// Largest `2^-m` with `(e/(1-e)) * rho <= eps1/(1-eps1)`.
fn pin_accuracy(rho: &Rational, eps1: &Rational) -> Rational {
    let one = Rational::one();
    let bound = eps1 / (&one - eps1);
    let mut e = Rational::new(1.into(), 2.into());
    while &(&e / (&one - &e)) * rho > bound {
        e /= Rational::from_integer(2.into());
    }
    e
}

fn realise(
    f: &SymmetricFunction,
    h: &Hypergraph,
    cond: &AdmissibleCollection,
    subject: &[usize],
    eps: &Rational,
    library: &dyn GadgetLibrary,
) -> Result<Realised, GadgetError> {
    let Some((x, event, reduced)) = peel(cond) else {
        return Ok(Realised { hypergraph: h.clone(), cut: subject.to_vec() });
    };
    if x.len() < 2 && event == Event::Equal {
        // A single vertex is trivially equal to itself.
        return realise(f, h, &reduced, subject, eps, library);
    }
    let opts = EnumOptions::from_env();
    let w = conditioned_weights(f, h, &reduced, &x, &opts)?;
    let m = event_probability(&MarginalTable::from_weights(x.clone(), w)?, event);
    if m.is_zero() {
        return Err(GadgetError::NotAdmissible);
    }
    let two = Rational::from_integer(2.into());
    let eps1 = eps / &two;
    let eps2 = &eps1 * &m * &m / Rational::from_integer(4.into());
    let eps3 = &eps2 / pow2(subject.len());
    // Pinned sets agree with one extension of each subject assignment,
    // equality blocks with two.
    let eps_inner = if event == Event::Equal { &eps3 / &two } else { eps3 };
    let extended = union(subject, &x);
    let inner = realise(f, h, &reduced, &extended, &eps_inner, library)?;

    match event {
        Event::Pin(s) => {
            let u = x[0];
            let t = measure_table(f, &inner.hypergraph, &[u], &inner.cut)?;
            let rho = t.all_equal(!s) / t.all_equal(s);
            let g = library.pin(s, &pin_accuracy(&rho, &eps1))?;
            attach(&inner, &g, &[u])
        }
        Event::Equal => {
            let block = AdmissibleCollection::new(vec![], vec![], vec![x.clone()])?;
            let want = measure_conditioned(f, &inner.hypergraph, &block, subject, &inner.cut)?;
            let mut e = eps1.clone();
            for _ in 0..MAX_HALVINGS {
                let g = library.equality(x.len(), &e)?;
                let next = attach(&inner, &g, &x)?;
                let got = measure_table(f, &next.hypergraph, subject, &next.cut)?;
                if got.max_abs_diff(&want) <= eps1 {
                    return Ok(next);
                }
                e /= &two;
            }
            Err(GadgetError::AccuracyInsufficient { have: e.to_string(), need: eps1.to_string() })
        }
    }
}

/// Extends `h` with gadgets from `library` so that, with no conditioning,
/// the distribution on `subject` is within `eps` entrywise of the
/// distribution on `h` conditioned on `cond`. Vertices of `h` keep their
/// labels.
pub fn realise_conditional(
    f: &SymmetricFunction,
    h: &Hypergraph,
    cond: &AdmissibleCollection,
    subject: &[usize],
    eps: &Rational,
    library: &dyn GadgetLibrary,
) -> Result<Gadget, GadgetError> {
    check_epsilon(eps)?;
    if !is_admissible(f, h, cond)? {
        return Err(GadgetError::NotAdmissible);
    }
    let target = MarginalTable::from_weights(
        subject.to_vec(),
        conditioned_weights(f, h, cond, subject, &EnumOptions::from_env())?,
    )?;
    let built = realise(f, h, cond, subject, eps, library)?;
    let (measured, certification) = match measure_table(f, &built.hypergraph, subject, &built.cut) {
        Ok(t) => (t.max_abs_diff(&target), Certification::Exact),
        Err(SpinError::CapExceeded { .. }) => (eps.clone(), Certification::AnalyticOnly),
        Err(e) => return Err(e.into()),
    };
    Ok(Gadget {
        hypergraph: built.hypergraph,
        terminals: subject.to_vec(),
        property: GadgetProperty::Conditional { conditioning: cond.clone(), target },
        epsilon_target: eps.clone(),
        epsilon_measured: measured,
        certification,
        cut: built.cut,
        replication: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use spin_core::rational::rat;

    #[test]
    fn empty_conditioning_is_identity() {
        let f = SymmetricFunction::weak_independent_set(3);
        let h = Hypergraph::single_edge(3);
        let lib = PowerLibrary::new(&f);
        let g = realise_conditional(&f, &h, &AdmissibleCollection::empty(), &[0, 1], &rat(1, 10), &lib).unwrap();
        assert_eq!(g.hypergraph, h);
        assert!(g.epsilon_measured.is_zero());
    }

    #[test]
    fn pinned_weak_independent_set() {
        let f = SymmetricFunction::weak_independent_set(3);
        let h = Hypergraph::single_edge(3);
        let lib = PowerLibrary::new(&f);
        let cond = AdmissibleCollection::pins(vec![0], vec![]).unwrap();
        let g = realise_conditional(&f, &h, &cond, &[1, 2], &rat(1, 10), &lib).unwrap();
        let GadgetProperty::Conditional { target, .. } = &g.property else { panic!() };
        assert!(target.probabilities().iter().all(|p| *p == rat(1, 4)));
        assert_eq!(g.certification, Certification::Exact);
        assert!(g.epsilon_measured <= rat(1, 10), "{g}");
        // One pin gadget with eleven powered copies on vertex 0.
        assert_eq!(g.hypergraph.edge_count(), 12);
        assert_eq!(g.hypergraph.degree(0), 12);
    }

    #[test]
    fn pin_accuracy_is_a_power_of_half() {
        assert_eq!(pin_accuracy(&rat(3, 4), &rat(1, 20)), rat(1, 16));
    }

    #[test]
    fn equality_block_on_nae() {
        let f = SymmetricFunction::not_all_equal(4);
        let h = Hypergraph::single_edge(4);
        let lib = PowerLibrary::new(&f);
        assert!(lib.supports_equality() && !lib.supports_pin(false));
        let cond = AdmissibleCollection::new(vec![], vec![], vec![vec![0, 1]]).unwrap();
        let g = realise_conditional(&f, &h, &cond, &[2, 3], &rat(1, 10), &lib).unwrap();
        assert!(g.is_certified(), "{g}");
    }

    #[test]
    fn missing_pin_is_reported() {
        let f = SymmetricFunction::not_all_equal(3);
        let lib = PowerLibrary::new(&f);
        let cond = AdmissibleCollection::pins(vec![0], vec![]).unwrap();
        let err = realise_conditional(&f, &Hypergraph::single_edge(3), &cond, &[1], &rat(1, 10), &lib).unwrap_err();
        assert_eq!(err, GadgetError::Unsupported("pinning-to-0"));
    }
}
