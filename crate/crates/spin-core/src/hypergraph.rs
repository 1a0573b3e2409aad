use std::collections::BTreeSet;

use crate::error::SpinError;

/// A k-uniform hypergraph on vertices `0..n`.
///
/// Edges are stored sorted ascending and the edge list is kept in
/// lexicographic order, so two hypergraphs with the same edge set compare
/// equal regardless of construction order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Hypergraph {
    n: usize,
    k: usize,
    edges: Vec<Vec<usize>>,
}

impl Hypergraph {
    pub fn new(n: usize, k: usize, edges: Vec<Vec<usize>>) -> Result<Self, SpinError> {
        if k == 0 {
            return Err(SpinError::InvalidHypergraph("uniformity must be positive".into()));
        }
        let mut set = BTreeSet::new();
        for mut e in edges {
            e.sort_unstable();
            if e.len() != k {
                return Err(SpinError::InvalidHypergraph(format!("edge {e:?} has {} vertices, expected {k}", e.len())));
            }
            if e.windows(2).any(|p| p[0] == p[1]) {
                return Err(SpinError::InvalidHypergraph(format!("edge {e:?} repeats a vertex")));
            }
            if let Some(&v) = e.iter().find(|&&v| v >= n) {
                return Err(SpinError::VertexOutOfRange { vertex: v, n });
            }
            if !set.insert(e.clone()) {
                return Err(SpinError::InvalidHypergraph(format!("duplicate edge {e:?}")));
            }
        }
        Ok(Self { n, k, edges: set.into_iter().collect() })
    }

    pub fn empty(n: usize, k: usize) -> Self {
        Self { n, k, edges: Vec::new() }
    }

    /// One edge on vertices `0..k`.
    pub fn single_edge(k: usize) -> Self {
        Self { n: k, k, edges: vec![(0..k).collect()] }
    }

    /// Two edges sharing `k-1` vertices: `{0} ∪ Z` and `{1} ∪ Z` with
    /// `Z = {2, …, k}`. Vertices 0 and 1 are the natural terminals.
    pub fn twin_edges(k: usize) -> Self {
        let shared: Vec<usize> = (2..=k).collect();
        let mut a = vec![0];
        a.extend(&shared);
        let mut b = vec![1];
        b.extend(&shared);
        Self::new(k + 1, k, vec![a, b]).expect("twin edges are well formed")
    }

    /// All `k`-subsets of `0..n`.
    pub fn complete(n: usize, k: usize) -> Self {
        let mut edges = Vec::new();
        let mut cur = Vec::with_capacity(k);
        fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if cur.len() == k {
                out.push(cur.clone());
                return;
            }
            for v in start..n {
                if n - v < k - cur.len() {
                    break;
                }
                cur.push(v);
                rec(v + 1, n, k, cur, out);
                cur.pop();
            }
        }
        rec(0, n, k, &mut cur, &mut edges);
        Self { n, k, edges }
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn uniformity(&self) -> usize {
        self.k
    }

    pub fn edges(&self) -> &[Vec<usize>] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn contains_edge(&self, edge: &[usize]) -> bool {
        let mut e = edge.to_vec();
        e.sort_unstable();
        self.edges.binary_search(&e).is_ok()
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.n];
        for e in &self.edges {
            for &v in e {
                d[v] += 1;
            }
        }
        d
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|e| e.contains(&v)).count()
    }

    pub fn max_degree(&self) -> usize {
        self.degrees().into_iter().max().unwrap_or(0)
    }

    pub fn isolated_vertices(&self) -> Vec<usize> {
        self.degrees().iter().enumerate().filter(|(_, &d)| d == 0).map(|(v, _)| v).collect()
    }

    /// Connected components of the vertex/edge incidence structure,
    /// isolated vertices included. Each component is sorted; components are
    /// ordered by their smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut uf = UnionFind::new(self.n);
        for e in &self.edges {
            for w in e.windows(2) {
                uf.union(w[0], w[1]);
            }
        }
        uf.groups()
    }

    pub fn without_edge(&self, edge: &[usize]) -> Self {
        let mut e = edge.to_vec();
        e.sort_unstable();
        let edges = self.edges.iter().filter(|x| **x != e).cloned().collect();
        Self { n: self.n, k: self.k, edges }
    }

    pub fn with_edge(&self, edge: Vec<usize>) -> Result<Self, SpinError> {
        let mut edges = self.edges.clone();
        edges.push(edge);
        Self::new(self.n, self.k, edges)
    }

    /// Adds `extra` fresh vertices, labelled `n..n+extra`.
    pub fn with_extra_vertices(&self, extra: usize) -> Self {
        Self { n: self.n + extra, k: self.k, edges: self.edges.clone() }
    }

    /// Drops isolated vertices and relabels the rest in increasing order.
    /// Returns the new hypergraph and the old-to-new label map.
    pub fn compact(&self) -> (Self, Vec<Option<usize>>) {
        let deg = self.degrees();
        let mut map = vec![None; self.n];
        let mut next = 0;
        for v in 0..self.n {
            if deg[v] > 0 {
                map[v] = Some(next);
                next += 1;
            }
        }
        let edges = self.edges.iter().map(|e| e.iter().map(|&v| map[v].expect("non-isolated")).collect()).collect();
        (Self::new(next, self.k, edges).expect("relabelling preserves validity"), map)
    }
}

/// Incremental construction of hypergraphs out of copies of smaller ones.
///
/// Fresh labels are handed out in increasing order, so every construction
/// that goes through the builder is reproducible label for label.
#[derive(Debug, Clone)]
pub struct HypergraphBuilder {
    k: usize,
    n: usize,
    edges: Vec<Vec<usize>>,
}

impl HypergraphBuilder {
    pub fn new(k: usize) -> Self {
        Self { k, n: 0, edges: Vec::new() }
    }

    /// Starts from an existing hypergraph, keeping its labels.
    pub fn from_hypergraph(h: &Hypergraph) -> Self {
        Self { k: h.k, n: h.n, edges: h.edges.clone() }
    }

    pub fn fresh_vertex(&mut self) -> usize {
        self.n += 1;
        self.n - 1
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn add_edge(&mut self, edge: Vec<usize>) {
        self.edges.push(edge);
    }

    /// Adds a copy of `h`. Vertices listed in `glue` as `(vertex of h,
    /// existing label)` are identified with existing labels; every other
    /// vertex of `h` gets a fresh label, in increasing order of its label in
    /// `h`. Returns the label of each vertex of `h` in the builder.
    pub fn add_copy(&mut self, h: &Hypergraph, glue: &[(usize, usize)]) -> Vec<usize> {
        let mut map = vec![usize::MAX; h.n];
        for &(src, dst) in glue {
            map[src] = dst;
        }
        for slot in map.iter_mut() {
            if *slot == usize::MAX {
                *slot = self.fresh_vertex();
            }
        }
        for e in &h.edges {
            self.edges.push(e.iter().map(|&v| map[v]).collect());
        }
        map
    }

    pub fn build(self) -> Result<Hypergraph, SpinError> {
        Hypergraph::new(self.n, self.k, self.edges)
    }
}

/// A simple undirected graph on `0..n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl Graph {
    pub fn new(n: usize, edges: Vec<(usize, usize)>) -> Result<Self, SpinError> {
        let mut set = BTreeSet::new();
        for (u, v) in edges {
            if u == v {
                return Err(SpinError::InvalidHypergraph(format!("loop at {u}")));
            }
            if u.max(v) >= n {
                return Err(SpinError::VertexOutOfRange { vertex: u.max(v), n });
            }
            if !set.insert((u.min(v), u.max(v))) {
                return Err(SpinError::InvalidHypergraph(format!("duplicate edge {u}-{v}")));
            }
        }
        Ok(Self { n, edges: set.into_iter().collect() })
    }

    pub fn complete(n: usize) -> Self {
        let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        Self { n, edges }
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.n];
        for &(u, v) in &self.edges {
            d[u] += 1;
            d[v] += 1;
        }
        d
    }

    /// The common degree, if every vertex has the same degree.
    pub fn regular_degree(&self) -> Option<usize> {
        let d = self.degrees();
        match d.first() {
            None => Some(0),
            Some(&first) => d.iter().all(|&x| x == first).then_some(first),
        }
    }
}

pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        Self { parent: (0..n).collect() }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub(crate) fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = (ra.min(rb), ra.max(rb));
            self.parent[hi] = lo;
        }
    }

    pub(crate) fn groups(&mut self) -> Vec<Vec<usize>> {
        let n = self.parent.len();
        let mut by_root: Vec<Vec<usize>> = vec![Vec::new(); n];
        for v in 0..n {
            let r = self.find(v);
            by_root[r].push(v);
        }
        by_root.into_iter().filter(|g| !g.is_empty()).collect()
    }
}
