//! End-to-end acceptance checks. Runs without the test harness so that the
//! PASS/FAIL line of every criterion is always printed.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use num_traits::{One, Zero};
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};

use classify::{
    case_trichotomy, csp_decision_verdict, pair_gadget, support_verdict, zbal_table, Case, CspVerdict, SearchBudget,
};
use cli::report::fmt_float;
use gadgets::{exact_equality_search, GadgetLibrary, PowerLibrary};
use reduction::{
    check_binomial_inequality, csp_split, symmetrise_witness, verify_conn1, witness_search, CspInstance, PairTable,
    ReductionError,
};
use spin_core::rational::{int, rat, to_f64};
use spin_core::{
    conditioned_weights, easy_partition, marginal, marginal_with, weight, AdmissibleCollection, Configuration,
    EasyKind, EnumOptions, Graph, Hypergraph, Rational, SymmetricFunction,
};
use uniqueness::{
    binary_partition, critical_interval, hard_core_threshold, hard_core_threshold_exact, normalisation_factor,
    normalise, strip_certificate, uniqueness_verdict, SpinSystemParams, Verdict,
};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn runner(cases: u32) -> TestRunner {
    let config = Config { cases, failure_persistence: None, ..Config::default() };
    TestRunner::new_with_rng(config, TestRng::deterministic_rng(RngAlgorithm::ChaCha))
}

fn run_cases<S: Strategy>(
    cases: u32,
    strategy: S,
    test: impl Fn(S::Value) -> Result<(), TestCaseError>,
) -> Result<(), String>
where
    S::Value: std::fmt::Debug,
{
    runner(cases).run(&strategy, test).map_err(|e| e.to_string())
}

fn brute_force_z(f: &SymmetricFunction, h: &Hypergraph) -> Rational {
    let n = h.vertex_count();
    (0u64..1 << n).map(|b| weight(f, h, &Configuration::from_bits(b, n)).unwrap()).sum()
}

fn rational_function(k: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = SymmetricFunction> {
    k.prop_flat_map(|k| prop::collection::vec((0i64..5, 1i64..4), k + 1))
        .prop_map(|ws| SymmetricFunction::new(ws.into_iter().map(|(p, q)| rat(p, q)).collect()).unwrap())
}

fn self_dual_function(k: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = SymmetricFunction> {
    rational_function(k).prop_map(|f| {
        let mut w = f.weights().to_vec();
        let k = w.len() - 1;
        for l in 0..=k / 2 {
            w[k - l] = w[l].clone();
        }
        SymmetricFunction::new(w).unwrap()
    })
}

/// Random `k`-uniform hypergraph on `n` vertices.
fn hypergraph(
    n: std::ops::RangeInclusive<usize>,
    k: std::ops::RangeInclusive<usize>,
) -> impl Strategy<Value = Hypergraph> {
    (n, k).prop_flat_map(|(n, k)| {
        let k = k.min(n);
        prop::collection::vec(prop::collection::btree_set(0..n, k), 0..=n + 2).prop_map(move |es| {
            let edges: BTreeSet<Vec<usize>> =
                es.into_iter().filter(|e| e.len() == k).map(|e| e.into_iter().collect()).collect();
            Hypergraph::new(n, k, edges.into_iter().collect()).unwrap()
        })
    })
}

fn graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        prop::collection::vec(any::<bool>(), pairs.len()).prop_map(move |keep| {
            Graph::new(n, pairs.iter().zip(keep).filter(|(_, k)| *k).map(|(e, _)| *e).collect()).unwrap()
        })
    })
}

fn reduction_identity() -> Outcome {
    let start = Instant::now();
    let f = SymmetricFunction::weak_independent_set(3);
    let h = Hypergraph::single_edge(3);
    let r = verify_conn1(&f, &Graph::complete(4), &h, 0, 1).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    ensure(r.lhs == int(545) && r.holds, || format!("Z = {} vs {}", r.lhs, r.rhs))?;
    ensure((r.beta.clone(), r.gamma.clone()) == (int(1), rat(1, 2)), || format!("beta {} gamma {}", r.beta, r.gamma))?;
    // Independent right-hand side: mu01 * Z(edge) = 2, and Z_{1,1/2,1}(K4) by direct summation.
    let k4 = Graph::complete(4);
    let mut binary = Rational::zero();
    for bits in 0u32..16 {
        let mut w = Rational::one();
        for &(u, v) in k4.edges() {
            if (bits >> u) & 1 == 1 && (bits >> v) & 1 == 1 {
                w *= rat(1, 2);
            }
        }
        binary += w;
    }
    ensure(num_traits::pow(int(2), 6) * &binary == int(545), || format!("independent rhs {binary}"))?;
    ensure(elapsed < Duration::from_secs(1), || format!("took {elapsed:?}"))?;

    let count = std::cell::Cell::new(0);
    let strategy = (rational_function(3..=3), graph(5), hypergraph(2..=5, 3..=3));
    run_cases(50, strategy, |(f, g, h)| {
        let h = if h.vertex_count() < 3 { Hypergraph::single_edge(3) } else { h };
        let (h, x, y) = match symmetrise_witness(&f, &h, 0, 1) {
            Ok(s) => (s.hypergraph, s.x, s.y),
            Err(ReductionError::ZeroOffDiagonal | ReductionError::Spin(_)) => return Ok(()),
            Err(e) => return Err(TestCaseError::fail(e.to_string())),
        };
        let r = verify_conn1(&f, &g, &h, x, y).map_err(|e| TestCaseError::fail(e.to_string()))?;
        prop_assert!(r.holds, "{} != {}", r.lhs, r.rhs);
        count.set(count.get() + 1);
        Ok(())
    })?;
    Ok(format!("Z = 545 = 2^6 * 545/64 in {elapsed:?}; {} random triples exact", count.get()))
}

fn tree_thresholds() -> Outcome {
    for delta in 3..=12 {
        let v = uniqueness_verdict(&SpinSystemParams::new(0.0, 1.0, 1.0, delta).unwrap()).map_err(|e| e.to_string())?;
        let want = if delta <= 5 { Verdict::Unique } else { Verdict::NonUnique };
        ensure(v == want, || format!("delta {delta}: {v}"))?;
    }
    let exact = hard_core_threshold_exact(&int(1), 5);
    ensure(exact == rat(3125, 4096), || format!("lambda_c = {exact}"))?;
    let shown = fmt_float(hard_core_threshold(1.0, 5));
    ensure(shown == "0.762939453125", || format!("lambda_c printed as {shown}"))?;
    let iv = critical_interval(0.5, 0.5, 6).map_err(|e| e.to_string())?;
    let product = iv.lambda1 * iv.lambda2;
    ensure((product - 1.0).abs() < 1e-9, || format!("lambda1 * lambda2 = {product}"))?;
    ensure(iv.contains(1.0), || format!("1 outside ({}, {})", iv.lambda1, iv.lambda2))?;
    Ok(format!(
        "hard-core unique to 5, non-unique 6..12; lambda_c(6) = 3125/4096 = {shown}; Ising interval ({}, {})",
        fmt_float(iv.lambda1),
        fmt_float(iv.lambda2)
    ))
}

fn timed<T>(what: &str, f: impl FnOnce() -> T) -> Result<T, String> {
    let start = Instant::now();
    let out = f();
    let t = start.elapsed();
    ensure(t < Duration::from_secs(1), || format!("{what} took {t:?}"))?;
    Ok(out)
}

fn classification_catalog() -> Outcome {
    let budget = SearchBudget::default();
    let weak = SymmetricFunction::weak_independent_set(3);
    let r = timed("weakIS", || case_trichotomy(&weak, &budget))?.map_err(|e| e.to_string())?;
    ensure(r.case == Case::CaseIIIPin0, || format!("weakIS: {}", r.case))?;

    let strong = SymmetricFunction::strong_independent_set(3);
    let r = timed("strongIS", || case_trichotomy(&strong, &budget))?.map_err(|e| e.to_string())?;
    ensure(r.case == Case::CaseIIIPin0, || format!("strongIS: {}", r.case))?;
    let w = witness_search(&strong, &r).map_err(|e| e.to_string())?;
    let mu = w.mu.ok_or("strongIS witness has no table")?;
    let expected = PairTable::from_weights(&[int(1), int(1), int(1), int(0)]).unwrap();
    ensure(mu == expected, || format!("strongIS table {mu}"))?;
    let (b0, g0, _) = mu.normalised_params().ok_or("no normalisation")?;
    ensure((b0.clone(), g0.clone()) == (int(0), int(1)), || format!("strongIS (beta0, gamma0) = ({b0}, {g0})"))?;

    let nae = SymmetricFunction::not_all_equal(3);
    let r = timed("NAE", || case_trichotomy(&nae, &budget))?.map_err(|e| e.to_string())?;
    ensure(r.case == Case::CaseIIW0Zero, || format!("NAE: {}", r.case))?;
    let v = csp_decision_verdict(&nae).map_err(|e| e.to_string())?;
    ensure(v == CspVerdict::NpComplete, || format!("NAE CSP: {v}"))?;

    let kinds = [
        EasyKind::Even,
        EasyKind::Odd,
        EasyKind::Eq,
        EasyKind::AllZero,
        EasyKind::AllOne,
        EasyKind::Zero,
        EasyKind::One,
    ];
    for k in [3, 4] {
        for kind in kinds {
            let f = kind.function(k);
            let r = timed(kind.name(), || case_trichotomy(&f, &budget))?.map_err(|e| e.to_string())?;
            ensure(r.easy == Some(kind) && r.case == Case::Easy, || {
                format!("{} at k = {k}: {:?}", kind.name(), r.easy)
            })?;
        }
    }
    Ok("weakIS and strongIS case III (pin0), strongIS table (1,1,0) -> (0,1), NAE case II NP-complete, 14 easy".into())
}

fn gadget_certification() -> Outcome {
    let weak = SymmetricFunction::weak_independent_set(3);
    let g = PowerLibrary::new(&weak).pin(false, &rat(1, 20)).map_err(|e| e.to_string())?;
    let rep = g.replication.clone().ok_or("pin gadget has no replication record")?;
    let three = num_traits::pow(int(3), 12);
    let bound = &three / (&three + num_traits::pow(int(4), 12));
    ensure(rep.r == 12, || format!("pin r = {}", rep.r))?;
    // Independent measurement of mu(sigma_v = 1) on the returned gadget.
    let w = conditioned_weights(
        &weak,
        &g.hypergraph,
        &AdmissibleCollection::empty(),
        &[g.terminals[0]],
        &EnumOptions::from_env(),
    )
    .map_err(|e| e.to_string())?;
    let mu1 = &w[1] / (&w[0] + &w[1]);
    ensure(mu1 == bound && g.epsilon_measured == bound, || format!("mu(v=1) = {mu1}"))?;
    ensure(bound <= rat(1, 20), || "bound above 1/20".into())?;

    let nae = SymmetricFunction::not_all_equal(3);
    let g = PowerLibrary::new(&nae).equality(2, &rat(1, 100)).map_err(|e| e.to_string())?;
    let rep = g.replication.clone().ok_or("equality gadget has no replication record")?;
    ensure(rep.r == 7, || format!("equality r = {}", rep.r))?;
    ensure(&rep.p / &rep.q == rat(9, 4), || format!("p/q = {}", &rep.p / &rep.q))?;
    let ratio = &rep.q / &rep.p;
    let formula = 1.0 + (0.01f64.ln() / to_f64(&ratio).ln()).ceil();
    ensure(rep.r as f64 == formula, || format!("r = {} but the powering formula gives {formula}", rep.r))?;
    ensure(num_traits::pow(ratio, rep.r) <= rat(1, 100), || "(q/p)^r above 1/100".into())?;
    ensure(g.is_certified(), || format!("measured {}", g.epsilon_measured))?;
    Ok(format!("pin r = 12, mu(v=1) = {bound} <= 1/20; equality r = 7 with p/q = 9/4, measured {}", g.epsilon_measured))
}

fn exact_equality() -> Outcome {
    let nae = SymmetricFunction::not_all_equal(3);
    let k5 = Hypergraph::complete(5, 3);
    ensure(k5.vertex_count() == 5 && brute_force_z(&nae, &k5).is_zero(), || "K5 has positive Z".into())?;
    let g = exact_equality_search(&nae).map_err(|e| e.to_string())?;
    let h = &g.hypergraph;
    let n = h.vertex_count();
    let mut z = [Rational::zero(), Rational::zero()];
    let (mut positive, mut equal) = (0usize, 0usize);
    for bits in 0u64..1 << n {
        let sigma = Configuration::from_bits(bits, n);
        let w = weight(&nae, h, &sigma).unwrap();
        if w.is_zero() {
            continue;
        }
        positive += 1;
        if sigma.spin(g.x) == sigma.spin(g.y) {
            equal += 1;
            z[sigma.spin(g.x) as usize] += w;
        }
    }
    ensure(positive > 0, || "gadget has Z = 0".into())?;
    ensure(positive == equal, || format!("{equal} of {positive} positive configurations agree"))?;
    ensure(z[0] == z[1] && z[0] == g.zeta, || format!("Z0 = {}, Z1 = {}", z[0], z[1]))?;
    Ok(format!("K5 Z = 0 over 32 configurations; gadget {n} vertices, {positive}/{positive} agree, Z0 = Z1 = {}", z[0]))
}

fn csp_split_check() -> Outcome {
    let nae = SymmetricFunction::not_all_equal(3);
    let g = exact_equality_search(&nae).map_err(|e| e.to_string())?;
    let inst = CspInstance::new(2, vec![vec![0, 0, 1]]).unwrap();
    let r = csp_split(&nae, &inst, &g).map_err(|e| e.to_string())?;
    ensure(r.hypergraph_partition == &g.zeta * int(2), || format!("Z(split) = {}", r.hypergraph_partition))?;
    ensure(brute_force_z(&nae, &r.hypergraph) == r.hypergraph_partition, || "split Z differs from brute force".into())?;
    let strategy = (1usize..=4, prop::collection::vec(prop::collection::vec(0usize..4, 3), 1..=3));
    run_cases(20, strategy, |(vars, raw)| {
        let cs: Vec<Vec<usize>> = raw.into_iter().map(|c| c.into_iter().map(|v| v % vars).collect()).collect();
        let inst = CspInstance::new(vars, cs.clone()).unwrap();
        let r = csp_split(&nae, &inst, &g).map_err(|e| TestCaseError::fail(e.to_string()))?;
        // Satisfiability by direct search.
        let sat = (0u32..1 << vars).any(|b| {
            cs.iter().all(|c| {
                let ones = c.iter().filter(|&&v| (b >> v) & 1 == 1).count();
                ones != 0 && ones != 3
            })
        });
        prop_assert_eq!(sat, !r.csp_partition.is_zero());
        prop_assert_eq!(r.csp_partition.is_zero(), r.hypergraph_partition.is_zero());
        prop_assert!(r.holds);
        Ok(())
    })?;
    Ok(format!("Z(split) = {} * 2; 20 random instances agree on Z = 0", g.zeta))
}

fn property_suites() -> Outcome {
    const CASES: u32 = 200;
    // Pair-gadget Cauchy-Schwarz, on brute-force weights of the two-edge gadget.
    run_cases(CASES, rational_function(2..=10), |f| {
        let k = f.arity();
        let h = Hypergraph::twin_edges(k);
        let w = conditioned_weights(&f, &h, &AdmissibleCollection::empty(), &[0, 1], &EnumOptions::from_env()).unwrap();
        prop_assert!(&w[0] * &w[3] >= &w[1] * &w[2]);
        prop_assert!(pair_gadget(&f).satisfies_cauchy_schwarz());
        Ok(())
    })
    .map_err(|e| format!("(a) {e}"))?;

    check_binomial_inequality(30).map_err(|(n, i)| format!("(b) fails at n = {n}, i = {i}"))?;

    run_cases(CASES, (self_dual_function(2..=10), hypergraph(3..=12, 2..=4)), |(f, h)| {
        prop_assert!(zbal_table(&f).all_balanced());
        let f = if f.arity() == h.uniformity() { f } else { SymmetricFunction::not_all_equal(h.uniformity()) };
        let subject: Vec<usize> = (0..h.vertex_count().min(3)).collect();
        match marginal(&f, &h, &subject, &AdmissibleCollection::empty()) {
            Ok(m) => prop_assert_eq!(m.flipped(), m),
            Err(spin_core::SpinError::NotAdmissible) => {}
            Err(e) => return Err(TestCaseError::fail(e.to_string())),
        }
        Ok(())
    })
    .map_err(|e| format!("(c) {e}"))?;

    let kinds = [
        EasyKind::Zero,
        EasyKind::One,
        EasyKind::AllZero,
        EasyKind::AllOne,
        EasyKind::Eq,
        EasyKind::Even,
        EasyKind::Odd,
    ];
    run_cases(CASES, hypergraph(1..=12, 2..=4), |h| {
        for kind in kinds {
            let f = kind.function(h.uniformity());
            prop_assert_eq!(easy_partition(&f, &h).unwrap(), brute_force_z(&f, &h), "{}", kind.name());
        }
        Ok(())
    })
    .map_err(|e| format!("(d) {e}"))?;

    let budget = SearchBudget::default();
    run_cases(CASES, rational_function(2..=6), |f| {
        if f.is_constant() {
            return Ok(());
        }
        let v = support_verdict(&f, &budget);
        prop_assert!(!v.supported().is_empty(), "{}", f);
        Ok(())
    })
    .map_err(|e| format!("(e) {e}"))?;

    run_cases(CASES, (rational_function(2..=4), hypergraph(2..=10, 2..=4), 0usize..4), |(f, h, s)| {
        let f = if f.arity() == h.uniformity() { f } else { SymmetricFunction::weak_independent_set(h.uniformity()) };
        let subject: Vec<usize> = (0..h.vertex_count().min(s)).collect();
        let cond = AdmissibleCollection::empty();
        let one = marginal_with(&f, &h, &subject, &cond, &EnumOptions::from_env().with_shards(1));
        let many = marginal_with(&f, &h, &subject, &cond, &EnumOptions::from_env().with_shards(16));
        match (one, many) {
            (Ok(a), Ok(b)) => {
                prop_assert_eq!(a.total(), Rational::one());
                prop_assert_eq!(a, b);
            }
            (Err(a), Err(b)) => prop_assert_eq!(a, b),
            (a, b) => return Err(TestCaseError::fail(format!("{a:?} vs {b:?}"))),
        }
        Ok(())
    })
    .map_err(|e| format!("(f) {e}"))?;
    Ok(format!("six suites, {CASES} cases each, binomial inequality on 435 pairs"))
}

fn normalisation() -> Outcome {
    let k4 = Graph::complete(4);
    let strategy = (0.0f64..1.0, 0.05f64..3.0, 0.1f64..3.0, any::<bool>())
        .prop_filter("antiferromagnetic", |(b, g, _, _)| b * g < 0.95);
    let cap = EnumOptions::from_env().cap;
    run_cases(20, strategy, |(b, g, l, hard)| {
        let b = if hard { 0.0 } else { b };
        let p = SpinSystemParams::new(b, g, l, 3).unwrap();
        let q = normalise(&p).unwrap();
        let lhs = binary_partition(p.beta, p.gamma, p.lambda, &k4, cap).unwrap();
        let rhs = normalisation_factor(&p, 6) * binary_partition(q.beta, q.gamma, q.lambda, &k4, cap).unwrap();
        prop_assert!(((lhs - rhs) / lhs).abs() < 1e-9, "{} vs {}", lhs, rhs);
        let (vp, vq) = (uniqueness_verdict(&p).unwrap(), uniqueness_verdict(&q).unwrap());
        let indeterminate = |v: &Verdict| matches!(v, Verdict::Indeterminate { .. });
        prop_assert!(vp == vq || indeterminate(&vp) || indeterminate(&vq), "{} vs {}", vp, vq);
        Ok(())
    })?;
    Ok("partition identity and verdicts agree on 20 parameter sets".into())
}

fn strip() -> Outcome {
    let c = strip_certificate(0.0).map_err(|e| e.to_string())?;
    let failed: Vec<&str> = c.checks.iter().filter(|k| !k.holds).map(|k| k.name).collect();
    ensure(!c.checks.is_empty() && failed.is_empty(), || format!("failing checks: {failed:?}"))?;
    ensure(c.spot_check == Some(Verdict::NonUnique), || format!("spot check {:?}", c.spot_check))?;
    // Independent look at the opposite corner of the strip.
    let corner = SpinSystemParams::new(c.epsilon / 4.0, 1.0 - c.epsilon / 4.0, 1.0, c.delta as usize).unwrap();
    let v = uniqueness_verdict(&corner).map_err(|e| e.to_string())?;
    ensure(v == Verdict::NonUnique, || format!("corner verdict {v}"))?;
    Ok(format!("delta = {}, {} inequalities hold, spot check non-unique", c.delta, c.checks.len()))
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("reduction identity", reduction_identity),
        ("tree thresholds", tree_thresholds),
        ("classification catalog", classification_catalog),
        ("gadget certification", gadget_certification),
        ("exact-equality search", exact_equality),
        ("CSP split", csp_split_check),
        ("property suites", property_suites),
        ("normalisation", normalisation),
        ("strip certificate", strip),
    ];
    let mut failures = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(check).unwrap_or_else(|_| Err("panicked".into()));
        let t = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {}. {name}: {detail} ({t:.2} s)", i + 1),
            Err(why) => {
                failures += 1;
                println!("FAIL {}. {name}: {why} ({t:.2} s)", i + 1);
            }
        }
    }
    if failures > 0 {
        std::process::exit(1);
    }
}
