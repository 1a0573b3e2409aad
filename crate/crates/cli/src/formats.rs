//! Line-oriented text formats for functions, hypergraphs, graphs and CSP
//! instances. Blank lines and lines starting with `#` are ignored.

use std::fmt::Write;

use spin_core::rational::{fmt_rational, parse_rational};
use spin_core::{Graph, Hypergraph, SymmetricFunction};

use reduction::CspInstance;

/// Parse failure with a 1-based line number where one applies.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormatError(pub String);

impl std::fmt::Display for FormatError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

type Result<T> = std::result::Result<T, FormatError>;

/// `line` 0 marks a problem with the file as a whole.
fn err<T>(line: usize, msg: impl std::fmt::Display) -> Result<T> {
    Err(FormatError(if line == 0 { msg.to_string() } else { format!("line {line}: {msg}") }))
}

/// Non-empty, non-comment lines with their line numbers, split on spaces.
fn records(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
        .map(|(i, l)| (i, l.split_whitespace().collect()))
}

fn number(line: usize, tok: &str) -> Result<usize> {
    tok.parse().or_else(|_| err(line, format!("not a non-negative integer: {tok:?}")))
}

/// `<keyword> <n>` header.
fn header<'a>(recs: &mut impl Iterator<Item = (usize, Vec<&'a str>)>, keyword: &str) -> Result<usize> {
    match recs.next() {
        Some((line, toks)) if toks.len() == 2 && toks[0] == keyword => number(line, toks[1]),
        Some((line, _)) => err(line, format!("expected \"{keyword} <n>\"")),
        None => err(1, format!("empty file, expected \"{keyword} <n>\"")),
    }
}

pub fn parse_function(text: &str) -> Result<SymmetricFunction> {
    let mut recs = records(text);
    let k = header(&mut recs, "k")?;
    let Some((line, toks)) = recs.next() else { return err(2, "missing weight line") };
    if toks.first() != Some(&"w") {
        return err(line, "expected \"w <k+1 rationals>\"");
    }
    if toks.len() != k + 2 {
        return err(line, format!("expected {} weights for k = {k}, found {}", k + 1, toks.len() - 1));
    }
    let weights = toks[1..].iter().map(|t| parse_rational(t).or_else(|e| err(line, e))).collect::<Result<Vec<_>>>()?;
    if let Some((line, _)) = recs.next() {
        return err(line, "unexpected content after the weight line");
    }
    SymmetricFunction::new(weights).or_else(|e| err(line, e))
}

pub fn write_function(f: &SymmetricFunction) -> String {
    let ws: Vec<String> = f.weights().iter().map(fmt_rational).collect();
    format!("k {}\nw {}\n", f.arity(), ws.join(" "))
}

/// A hypergraph with optional terminal vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HypergraphFile {
    pub hypergraph: Hypergraph,
    pub terminals: Vec<usize>,
}

/// `arity` supplies the uniformity when the file has no edges, and is
/// checked against the edges otherwise.
pub fn parse_hypergraph(text: &str, arity: Option<usize>) -> Result<HypergraphFile> {
    let mut recs = records(text);
    let n = header(&mut recs, "vertices")?;
    let mut edges = Vec::new();
    let mut terminals = None;
    let mut k = arity;
    for (line, toks) in recs {
        match toks[0] {
            "e" => {
                if terminals.is_some() {
                    return err(line, "edge after the terminals line");
                }
                let e = toks[1..].iter().map(|t| number(line, t)).collect::<Result<Vec<_>>>()?;
                if e.windows(2).any(|p| p[0] >= p[1]) {
                    return err(line, "edge vertices must be strictly ascending");
                }
                match k {
                    Some(k) if k != e.len() => {
                        return err(line, format!("edge has {} vertices, expected {k}", e.len()))
                    }
                    _ => k = Some(e.len()),
                }
                edges.push(e);
            }
            "terminals" | "terminals:" => {
                if terminals.is_some() {
                    return err(line, "second terminals line");
                }
                terminals = Some(toks[1..].iter().map(|t| number(line, t)).collect::<Result<Vec<_>>>()?);
            }
            other => return err(line, format!("unknown record {other:?}")),
        }
    }
    let terminals = terminals.unwrap_or_default();
    if let Some(&v) = terminals.iter().find(|&&v| v >= n) {
        return err(0, format!("terminal {v} out of range for {n} vertices"));
    }
    let Some(k) = k else { return err(0, "no edges and no arity to infer uniformity from") };
    let hypergraph = Hypergraph::new(n, k, edges).or_else(|e| err(0, e))?;
    Ok(HypergraphFile { hypergraph, terminals })
}

/// Writes `comments` as `#` lines, then the hypergraph, then the terminals.
pub fn write_hypergraph(h: &Hypergraph, terminals: &[usize], comments: &[String]) -> String {
    let mut out = String::new();
    for c in comments {
        let _ = writeln!(out, "# {c}");
    }
    let _ = writeln!(out, "vertices {}", h.vertex_count());
    for e in h.edges() {
        let vs: Vec<String> = e.iter().map(ToString::to_string).collect();
        let _ = writeln!(out, "e {}", vs.join(" "));
    }
    if !terminals.is_empty() {
        let ts: Vec<String> = terminals.iter().map(ToString::to_string).collect();
        let _ = writeln!(out, "terminals {}", ts.join(" "));
    }
    out
}

pub fn parse_graph(text: &str) -> Result<Graph> {
    let mut recs = records(text);
    let n = header(&mut recs, "vertices")?;
    let mut edges = Vec::new();
    for (line, toks) in recs {
        if toks[0] != "g" || toks.len() != 3 {
            return err(line, "expected \"g u v\"");
        }
        edges.push((number(line, toks[1])?, number(line, toks[2])?));
    }
    Graph::new(n, edges).or_else(|e| err(0, e))
}

pub fn write_graph(g: &Graph) -> String {
    let mut out = format!("vertices {}\n", g.vertex_count());
    for (u, v) in g.edges() {
        let _ = writeln!(out, "g {u} {v}");
    }
    out
}

pub fn parse_csp(text: &str) -> Result<CspInstance> {
    let mut recs = records(text);
    let n = header(&mut recs, "vars")?;
    let mut constraints = Vec::new();
    for (line, toks) in recs {
        if toks[0] != "c" || toks.len() < 2 {
            return err(line, "expected \"c v1 ... vk\"");
        }
        constraints.push(toks[1..].iter().map(|t| number(line, t)).collect::<Result<Vec<_>>>()?);
    }
    CspInstance::new(n, constraints).or_else(|e| err(0, e))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use spin_core::rational::rat;

    #[test]
    fn function_round_trip() {
        let f = parse_function("k 3\nw 1 1/2 2/4 0\n").unwrap();
        assert_eq!(f.weights()[1], rat(1, 2));
        assert_eq!(parse_function(&write_function(&f)).unwrap(), f);
    }

    #[test]
    fn function_errors() {
        assert!(parse_function("k 3\nw 1 1 0\n").unwrap_err().0.contains("expected 4 weights"));
        assert!(parse_function("k 3\n").is_err());
        assert!(parse_function("k 2\nw 1 x 0\n").is_err());
        assert!(parse_function("k 2\nw 1 -1 0\n").is_err());
    }

    #[test]
    fn hypergraph_with_terminals() {
        let text = "# two edges\nvertices 4\ne 0 2 3\ne 1 2 3\nterminals 0 1\n";
        let hf = parse_hypergraph(text, Some(3)).unwrap();
        assert_eq!(hf.terminals, vec![0, 1]);
        assert_eq!(hf.hypergraph.edge_count(), 2);
        assert_eq!(parse_hypergraph(&write_hypergraph(&hf.hypergraph, &hf.terminals, &[]), None).unwrap(), hf);
    }

    #[test]
    fn hypergraph_errors() {
        assert!(parse_hypergraph("vertices 3\ne 2 1 0\n", None).is_err());
        assert!(parse_hypergraph("vertices 3\ne 0 1 2\n", Some(4)).is_err());
        assert!(parse_hypergraph("vertices 3\n", None).is_err());
        assert!(parse_hypergraph("vertices 3\ne 0 1 5\n", None).is_err());
        assert!(parse_hypergraph("vertices 3\ne 0 1 2\nterminals 7\n", None).is_err());
        assert_eq!(parse_hypergraph("vertices 3\n", Some(3)).unwrap().hypergraph.edge_count(), 0);
    }

    #[test]
    fn graph_and_csp() {
        let g = parse_graph("vertices 3\ng 0 1\ng 1 2\n").unwrap();
        assert_eq!(g.edges().len(), 2);
        assert_eq!(parse_graph(&write_graph(&g)).unwrap(), g);
        let c = parse_csp("vars 2\nc 0 0 1\n").unwrap();
        assert_eq!(c.uses(), vec![2, 1]);
        assert!(parse_csp("vars 1\nc 0 0 3\n").is_err());
    }

    proptest! {
        #[test]
        fn hypergraph_files_round_trip(
            n in 3usize..9,
            raw in prop::collection::btree_set(prop::collection::btree_set(0usize..9, 3), 0..6),
            terms in prop::collection::vec(0usize..9, 0..3),
        ) {
            let edges: Vec<Vec<usize>> = raw.into_iter().map(|e| e.into_iter().map(|v| v % n).collect::<std::collections::BTreeSet<_>>())
                .filter(|e| e.len() == 3)
                .map(|e| e.into_iter().collect())
                .collect::<std::collections::BTreeSet<_>>()
                .into_iter()
                .collect();
            let h = Hypergraph::new(n, 3, edges).unwrap();
            let terminals: Vec<usize> = terms.into_iter().map(|v| v % n).collect();
            let text = write_hypergraph(&h, &terminals, &["comment".to_string()]);
            let back = parse_hypergraph(&text, Some(3)).unwrap();
            prop_assert_eq!(write_hypergraph(&back.hypergraph, &back.terminals, &["comment".to_string()]), text);
            prop_assert_eq!(back.hypergraph, h);
            prop_assert_eq!(back.terminals, terminals);
        }
    }
}
