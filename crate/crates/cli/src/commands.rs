//! One function per subcommand. Each reads its inputs, runs the library
//! calls and returns the report; hypergraph outputs go to `out` when given.

use std::fs;
use std::path::Path;

use classify::{case_trichotomy, csp_decision_verdict, Case, ClassificationReport, SearchBudget};
use gadgets::{exact_equality_search, realise_conditional, Certification, Gadget, GadgetLibrary, PowerLibrary};
use reduction::{
    csp_split, min_delta_certificate, pair_table, symmetrise_witness, verify_conn1, witness_search, IdentityReport,
    Route,
};
use spin_core::rational::{fmt_rational, parse_rational, to_f64};
use spin_core::{
    conditioned_weights, marginal_with, parse_list, partition_function_with, AdmissibleCollection, EnumOptions, Graph,
    Rational, SymmetricFunction,
};
use uniqueness::{analyse, hard_core_threshold_exact, SpinSystemParams, Verdict};

use crate::error::CliError;
use crate::formats::{parse_csp, parse_function, parse_graph, parse_hypergraph, write_hypergraph, HypergraphFile};
use crate::report::{fmt_float, RunReport};

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io { path: path.display().to_string(), source })
}

fn load_function(report: &mut RunReport, path: &Path) -> Result<SymmetricFunction, CliError> {
    let text = read(path)?;
    report.input("function", &text);
    parse_function(&text).map_err(|e| CliError::parse(&path.display().to_string(), e))
}

fn load_hypergraph(report: &mut RunReport, path: &Path, arity: usize) -> Result<HypergraphFile, CliError> {
    let text = read(path)?;
    report.input("hypergraph", &text);
    parse_hypergraph(&text, Some(arity)).map_err(|e| CliError::parse(&path.display().to_string(), e))
}

fn load_graph(report: &mut RunReport, path: &Path) -> Result<Graph, CliError> {
    let text = read(path)?;
    report.input("graph", &text);
    parse_graph(&text).map_err(|e| CliError::parse(&path.display().to_string(), e))
}

fn parse_eps(s: &str) -> Result<Rational, CliError> {
    parse_rational(s).map_err(|e| CliError::parse("--eps", e))
}

fn write_output(report: &mut RunReport, out: Option<&Path>, text: &str) -> Result<(), CliError> {
    if let Some(p) = out {
        fs::write(p, text).map_err(|source| CliError::Io { path: p.display().to_string(), source })?;
        report.line(format!("output: {}", p.display()));
    }
    Ok(())
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn summary_line(f: &SymmetricFunction, rep: &ClassificationReport) -> Result<String, CliError> {
    let csp =
        if f.is_boolean() { csp_decision_verdict(f)?.to_string() } else { "n/a (weights not Boolean)".to_string() };
    let supported = rep.support.supported();
    let supports = if supported.is_empty() { "none".to_string() } else { supported.join(", ") };
    Ok(format!("case: {}; self-dual: {}; supports: {supports}; CSP: {csp}", rep.case, yes_no(rep.self_dual)))
}

pub fn classify(command: &str, function: &Path) -> Result<RunReport, CliError> {
    let mut report = RunReport::new(command);
    let f = load_function(&mut report, function)?;
    report.line(format!("function: {f}"));
    let rep = case_trichotomy(&f, &SearchBudget::default())?;
    if let Some(kind) = rep.easy {
        report.line(format!("EASY: {}", kind.name()));
        return Ok(report);
    }
    report.line(summary_line(&f, &rep)?);
    report.line(format!("pin0: {}", rep.support.pin0));
    report.line(format!("pin1: {}", rep.support.pin1));
    report.line(format!("equality: {}", rep.support.equality));
    if let Some(i) = rep.i {
        report.line(format!("i = {i}"));
    }
    match witness_search(&f, &rep) {
        Ok(w) if w.route == Route::DecisionCsp => report.line(format!("route: {}; {}", w.route, w.recipe)),
        Ok(w) => {
            report.line(format!("route: {}; witness: {}", w.route, w.recipe));
            report.line(format!("terminals: x = {}, y = {}; conditioning: {}", w.x, w.y, w.conditioning));
            if let Some(mu) = &w.mu {
                report.line(format!("table: {mu}"));
                if let Some((b, g, swapped)) = mu.normalised_params() {
                    let note = if swapped { " (spins swapped)" } else { "" };
                    report.line(format!("beta0 = {}, gamma0 = {}{note}", fmt_rational(&b), fmt_rational(&g)));
                }
            }
        }
        Err(e) => report.line(format!("witness: none ({e})")),
    }
    Ok(report)
}

pub fn partition(
    command: &str,
    function: &Path,
    hypergraph: &Path,
    cond: Option<&str>,
    marginal: Option<&str>,
) -> Result<RunReport, CliError> {
    let mut report = RunReport::new(command);
    let f = load_function(&mut report, function)?;
    let hf = load_hypergraph(&mut report, hypergraph, f.arity())?;
    let h = &hf.hypergraph;
    let opts = EnumOptions::from_env();
    report.line(format!("Z = {}", fmt_rational(&partition_function_with(&f, h, &opts)?)));
    if cond.is_none() && marginal.is_none() {
        return Ok(report);
    }
    report.input("cond", cond.unwrap_or(""));
    report.input("marginal", marginal.unwrap_or(""));
    let cond = match cond {
        Some(c) => AdmissibleCollection::parse(c).map_err(|e| CliError::parse("--cond", e))?,
        None => AdmissibleCollection::empty(),
    };
    cond.check_range(h.vertex_count()).map_err(|e| CliError::parse("--cond", e))?;
    if !cond.is_empty() {
        let mass: Rational = conditioned_weights(&f, h, &cond, &[], &opts)?.into_iter().sum();
        report.line(format!("Z[{cond}] = {}", fmt_rational(&mass)));
    }
    let subject = parse_list(marginal.unwrap_or("")).map_err(|e| CliError::parse("--marginal", e))?;
    if let Some(&v) = subject.iter().find(|&&v| v >= h.vertex_count()) {
        return Err(CliError::parse("--marginal", format!("vertex {v} out of range")));
    }
    let table = marginal_with(&f, h, &subject, &cond, &opts)?;
    if !subject.is_empty() {
        let names: Vec<String> = subject.iter().map(ToString::to_string).collect();
        for (i, p) in table.probabilities().iter().enumerate() {
            report.line(format!("P[{} = {}] = {}", names.join(","), table.label(i), fmt_rational(p)));
        }
        report.line(format!("sum = {}", fmt_rational(&table.total())));
    }
    Ok(report)
}

fn gadget_comments(kind: &str, g: &Gadget) -> Vec<String> {
    let mut c = vec![
        format!("spinlab gadget {kind}"),
        format!("property: {}", g.property),
        format!("epsilon target: {}", fmt_rational(&g.epsilon_target)),
        format!("epsilon measured: {}", fmt_rational(&g.epsilon_measured)),
        format!(
            "certification: {}",
            match g.certification {
                Certification::Exact => "exact",
                Certification::AnalyticOnly => "analytic-only",
            }
        ),
    ];
    if let Some(r) = &g.replication {
        c.push(format!("replication: r = {}, p = {}, q = {}", r.r, fmt_rational(&r.p), fmt_rational(&r.q)));
    }
    c
}

/// `kind` is `pin0`, `pin1`, `equal<t>` or `exact-equality`.
pub fn gadget(
    command: &str,
    kind: &str,
    function: &Path,
    eps: &str,
    out: Option<&Path>,
) -> Result<RunReport, CliError> {
    let mut report = RunReport::new(command);
    let f = load_function(&mut report, function)?;
    if kind == "exact-equality" {
        let g = exact_equality_search(&f)?;
        let h = &g.hypergraph;
        report.line(format!(
            "exact equality: {} vertices, {} edges, terminals {} {}",
            h.vertex_count(),
            h.edge_count(),
            g.x,
            g.y
        ));
        report.line(format!("zeta = {}; rewiring j = {}", fmt_rational(&g.zeta), g.j));
        let comments = vec!["spinlab gadget exact-equality".to_string(), format!("zeta: {}", fmt_rational(&g.zeta))];
        write_output(&mut report, out, &write_hypergraph(h, &[g.x, g.y], &comments))?;
        return Ok(report);
    }
    let eps = parse_eps(eps)?;
    let lib = PowerLibrary::new(&f);
    let g = match kind {
        "pin0" => lib.pin(false, &eps)?,
        "pin1" => lib.pin(true, &eps)?,
        _ => {
            let t = kind
                .strip_prefix("equal")
                .and_then(|t| t.parse::<usize>().ok())
                .filter(|&t| t >= 2)
                .ok_or_else(|| CliError::parse("kind", format!("unknown gadget kind {kind:?}")))?;
            lib.equality(t, &eps)?
        }
    };
    report.line(g.to_string());
    if let Some(r) = &g.replication {
        report.line(format!("replication: r = {}, p = {}, q = {}", r.r, fmt_rational(&r.p), fmt_rational(&r.q)));
    }
    report.line(format!(
        "measured = {} ≈ {}",
        fmt_rational(&g.epsilon_measured),
        fmt_float(to_f64(&g.epsilon_measured))
    ));
    report.line(format!("target met: {}", yes_no(g.is_certified())));
    write_output(&mut report, out, &write_hypergraph(&g.hypergraph, &g.terminals, &gadget_comments(kind, &g)))?;
    Ok(report)
}

/// A number as given: exact when it parses as `p/q` or an integer.
fn parse_param(name: &str, s: &str) -> Result<(f64, Option<Rational>), CliError> {
    if let Ok(r) = parse_rational(s) {
        return Ok((to_f64(&r), Some(r)));
    }
    s.trim().parse::<f64>().map(|x| (x, None)).map_err(|_| CliError::parse(name, format!("not a number: {s:?}")))
}

pub fn uniqueness(command: &str, beta: &str, gamma: &str, lambda: &str, delta: &str) -> Result<RunReport, CliError> {
    let mut report = RunReport::new(command);
    report.input("parameters", &format!("{beta} {gamma} {lambda} {delta}"));
    let (b, _) = parse_param("beta", beta)?;
    let (g, g_exact) = parse_param("gamma", gamma)?;
    let (l, _) = parse_param("lambda", lambda)?;
    let d: usize = delta.trim().parse().map_err(|_| CliError::parse("delta", format!("not a degree: {delta:?}")))?;
    let p = SpinSystemParams::new(b, g, l, d)?;
    let a = analyse(&p)?;
    let word = match a.verdict {
        Verdict::Unique => "UNIQUE",
        Verdict::NonUnique => "NONUNIQUE",
        Verdict::Indeterminate { .. } => "INDETERMINATE",
    };
    let detail = match (b == 0.0, &g_exact, a.interval) {
        (true, Some(ge), _) => {
            let lc = hard_core_threshold_exact(ge, d - 1);
            format!("lambda_c = {} ≈ {}", fmt_rational(&lc), fmt_float(to_f64(&lc)))
        }
        (_, _, Some(iv)) => {
            format!("critical interval ({}, {})", fmt_float(iv.lambda1), fmt_float(iv.lambda2))
        }
        (_, _, None) => "no critical interval".to_string(),
    };
    report.line(format!("{word}; {detail}"));
    report.line(format!("fixed point x* = {}", fmt_float(a.x_star)));
    report.line(format!("h'(x*) = {}", fmt_float(a.h_prime_at_x_star)));
    if let Verdict::Indeterminate { tolerance } = a.verdict {
        report.line(format!("|h'(x*)| is within {tolerance:e} of 1"));
    }
    Ok(report)
}

fn identity_lines(report: &mut RunReport, r: &IdentityReport) -> Result<(), CliError> {
    report.line(format!("beta = {}, gamma = {}", fmt_rational(&r.beta), fmt_rational(&r.gamma)));
    report.line(format!(
        "scale = {}, binary partition = {}",
        fmt_rational(&r.scale),
        fmt_rational(&r.binary_partition)
    ));
    if r.holds {
        report.line(format!("identity VERIFIED: {} = {}", fmt_rational(&r.lhs), fmt_rational(&r.rhs)));
        Ok(())
    } else {
        Err(CliError::Internal(format!("identity FAILED: {} != {}", fmt_rational(&r.lhs), fmt_rational(&r.rhs))))
    }
}

/// Accuracy used when no degree could be certified.
const FALLBACK_EPS_DENOM: u64 = 10;

/// Witness, certificate, realised and symmetrised gadget, edge replacement.
/// A supplied gadget file (with two terminals) replaces the first four steps.
pub fn reduce(
    command: &str,
    function: &Path,
    graph: &Path,
    gadget_file: Option<&Path>,
    eps: Option<&str>,
    out: Option<&Path>,
) -> Result<RunReport, CliError> {
    let mut report = RunReport::new(command);
    let f = load_function(&mut report, function)?;
    let g = load_graph(&mut report, graph)?;
    let rep = case_trichotomy(&f, &SearchBudget::default())?;
    if let Some(kind) = rep.easy {
        return Err(CliError::Refused(format!(
            "EASY: {}; no reduction applies, use the partition command (closed form via easy_partition)",
            kind.name()
        )));
    }
    let mut strip = None;
    let (h, x, y) = match gadget_file {
        Some(path) => {
            let hf = load_hypergraph(&mut report, path, f.arity())?;
            let [x, y] = hf.terminals[..] else {
                return Err(CliError::parse(&path.display().to_string(), "gadget needs exactly two terminals"));
            };
            report.line(format!("gadget: supplied, terminals {x} {y}"));
            (hf.hypergraph, x, y)
        }
        None => {
            let w = witness_search(&f, &rep)?;
            if w.route == Route::DecisionCsp {
                report.line(format!("route: {}; use csp-split", w.route));
                return Ok(report);
            }
            report.line(format!("route: {}; witness: {}", w.route, w.recipe));
            let cert = min_delta_certificate(&w, &[])?;
            report.line(format!("certificate: {cert}"));
            let eps = match (eps, &cert.strip) {
                (Some(e), _) => parse_eps(e)?,
                (None, Ok(c)) => Rational::new(1.into(), c.delta.into()),
                (None, Err(_)) => Rational::new(1.into(), FALLBACK_EPS_DENOM.into()),
            };
            report.line(format!("gadget accuracy: {}", fmt_rational(&eps)));
            let built = realise_conditional(&f, &w.base, &w.conditioning, &[w.x, w.y], &eps, &PowerLibrary::new(&f))?;
            report.line(format!("realised: {built}"));
            strip = Some(cert);
            (built.hypergraph, built.terminals[0], built.terminals[1])
        }
    };
    let mu = pair_table(&f, &h, x, y)?;
    report.line(format!("pair table: {mu}; antiferromagnetic: {}", yes_no(mu.is_antiferro())));
    if let Some(covered) = strip.as_ref().and_then(|c| c.in_strip(&mu)) {
        report.line(format!("inside certified strip: {}", yes_no(covered)));
    }
    let (h, x, y) = if mu.is_symmetric() {
        (h, x, y)
    } else {
        let s = symmetrise_witness(&f, &h, x, y)?;
        report.line(format!(
            "symmetrised: {} vertices, {} edges; {}",
            s.hypergraph.vertex_count(),
            s.hypergraph.edge_count(),
            s.mu
        ));
        (s.hypergraph, s.x, s.y)
    };
    let r = verify_conn1(&f, &g, &h, x, y)?;
    let replaced = reduction::edge_replace(&g, &h, x, y)?.hypergraph;
    report.line(format!(
        "replaced: {} vertices, {} edges, max degree {}",
        replaced.vertex_count(),
        replaced.edge_count(),
        replaced.max_degree()
    ));
    let graph_vertices: Vec<usize> = (0..g.vertex_count()).collect();
    write_output(&mut report, out, &write_hypergraph(&replaced, &graph_vertices, &["spinlab reduce".to_string()]))?;
    identity_lines(&mut report, &r)?;
    Ok(report)
}

pub fn csp_split_cmd(command: &str, function: &Path, csp: &Path, out: Option<&Path>) -> Result<RunReport, CliError> {
    let mut report = RunReport::new(command);
    let f = load_function(&mut report, function)?;
    let text = read(csp)?;
    report.input("csp", &text);
    let inst = parse_csp(&text).map_err(|e| CliError::parse(&csp.display().to_string(), e))?;
    let rep = case_trichotomy(&f, &SearchBudget::default())?;
    if rep.case != Case::CaseIIW0Zero {
        report.line(format!("note: case {} does not take the decision-CSP route", rep.case));
    }
    let g = exact_equality_search(&f)?;
    report.line(format!(
        "equality gadget: {} vertices, {} edges, zeta = {}",
        g.hypergraph.vertex_count(),
        g.hypergraph.edge_count(),
        fmt_rational(&g.zeta)
    ));
    let r = csp_split(&f, &inst, &g)?;
    report.line(format!("Z(instance) = {}", fmt_rational(&r.csp_partition)));
    report.line(format!("Z(split) = {}", fmt_rational(&r.hypergraph_partition)));
    report.line(format!("exponent = {}", r.exponent));
    report.line(format!(
        "split: {} vertices, {} edges, max degree {} (gadget max degree {})",
        r.hypergraph.vertex_count(),
        r.hypergraph.edge_count(),
        r.max_degree,
        r.gadget_max_degree
    ));
    write_output(&mut report, out, &write_hypergraph(&r.hypergraph, &[], &["spinlab csp-split".to_string()]))?;
    if !r.holds {
        return Err(CliError::Internal("identity FAILED: Z(split) != zeta^exponent * Z(instance)".into()));
    }
    report.line("identity VERIFIED: Z(split) = zeta^exponent * Z(instance)");
    report.line(format!("satisfiable: {}", yes_no(!num_traits::Zero::is_zero(&r.csp_partition))));
    Ok(report)
}
