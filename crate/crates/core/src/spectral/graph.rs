use std::collections::HashSet;
use std::fmt::Write as _;

use super::SpectralError;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub w: f64,
}

/// A connected simple graph with positive edge weights.
///
/// `vol(S)` is the sum of weighted degrees over `S` and `cut(S)` the total
/// weight of edges leaving `S`.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedGraph {
    n: usize,
    edges: Vec<Edge>,
    degrees: Vec<f64>,
    adjacency: Vec<Vec<(usize, f64)>>,
}

impl WeightedGraph {
    /// Validates and normalizes `(u, v, w)` triples so that `u < v`.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize, f64)>) -> Result<Self, SpectralError> {
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        for (a, b, w) in edges {
            if a >= n || b >= n {
                return Err(SpectralError::InvalidGraph(format!("edge ({a}, {b}) out of range for {n} vertices")));
            }
            if a == b {
                return Err(SpectralError::InvalidGraph(format!("loop at vertex {a}")));
            }
            if !(w.is_finite() && w > 0.0) {
                return Err(SpectralError::InvalidGraph(format!("edge ({a}, {b}) has weight {w}")));
            }
            let (u, v) = if a < b { (a, b) } else { (b, a) };
            if !seen.insert((u, v)) {
                return Err(SpectralError::InvalidGraph(format!("duplicate edge ({u}, {v})")));
            }
            out.push(Edge { u, v, w });
        }
        if out.is_empty() {
            return Err(SpectralError::InvalidGraph("graph has no edges".into()));
        }
        let mut degrees = vec![0.0; n];
        let mut adjacency = vec![Vec::new(); n];
        for e in &out {
            degrees[e.u] += e.w;
            degrees[e.v] += e.w;
            adjacency[e.u].push((e.v, e.w));
            adjacency[e.v].push((e.u, e.w));
        }
        let g = Self { n, edges: out, degrees, adjacency };
        if !g.is_connected() {
            return Err(SpectralError::Disconnected);
        }
        Ok(g)
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn degrees(&self) -> &[f64] {
        &self.degrees
    }

    pub fn neighbors(&self, v: usize) -> &[(usize, f64)] {
        &self.adjacency[v]
    }

    pub fn total_volume(&self) -> f64 {
        self.degrees.iter().sum()
    }

    pub fn volume(&self, set: &[bool]) -> f64 {
        self.degrees.iter().zip(set).filter(|(_, &s)| s).map(|(d, _)| d).sum()
    }

    pub fn cut(&self, set: &[bool]) -> f64 {
        self.edges.iter().filter(|e| set[e.u] != set[e.v]).map(|e| e.w).sum()
    }

    /// `cut(S) / min(vol S, vol V \ S)`.
    pub fn cheeger_ratio(&self, set: &[bool]) -> f64 {
        let vol = self.volume(set);
        let small = vol.min(self.total_volume() - vol);
        self.cut(set) / small
    }

    fn is_connected(&self) -> bool {
        let mut seen = vec![false; self.n];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(x) = stack.pop() {
            for &(y, _) in &self.adjacency[x] {
                if !seen[y] {
                    seen[y] = true;
                    count += 1;
                    stack.push(y);
                }
            }
        }
        count == self.n
    }

    /// Same graph with every weight multiplied by `k > 0`.
    pub fn scaled(&self, k: f64) -> Self {
        Self::new(self.n, self.edges.iter().map(|e| (e.u, e.v, e.w * k))).expect("positive scaling")
    }

    /// Applies a vertex relabeling `v -> perm[v]`.
    pub fn relabeled(&self, perm: &[usize]) -> Self {
        Self::new(self.n, self.edges.iter().map(|e| (perm[e.u], perm[e.v], e.w))).expect("permutation")
    }
}

/// A `±1` label on every edge of a graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Signing {
    signs: Vec<i8>,
    nontrivial_cohomology: bool,
}

impl Signing {
    pub fn new(graph: &WeightedGraph, signs: Vec<i8>) -> Result<Self, SpectralError> {
        if signs.len() != graph.edge_count() {
            return Err(SpectralError::LengthMismatch { expected: graph.edge_count(), got: signs.len() });
        }
        if let Some(bad) = signs.iter().find(|s| s.abs() != 1) {
            return Err(SpectralError::InvalidGraph(format!("edge sign {bad} is not ±1")));
        }
        let nontrivial_cohomology = !is_balanced(graph, &signs);
        Ok(Self { signs, nontrivial_cohomology })
    }

    pub fn all_positive(graph: &WeightedGraph) -> Self {
        Self { signs: vec![1; graph.edge_count()], nontrivial_cohomology: false }
    }

    pub fn signs(&self) -> &[i8] {
        &self.signs
    }

    pub fn sign(&self, edge: usize) -> i8 {
        self.signs[edge]
    }

    /// True iff some cycle has sign product `-1`, i.e. the double cover is connected.
    pub fn nontrivial_cohomology(&self) -> bool {
        self.nontrivial_cohomology
    }
}

/// Tries to write every sign as `p(u) p(v)` for a vertex potential `p`
/// propagated along a spanning tree.
fn is_balanced(graph: &WeightedGraph, signs: &[i8]) -> bool {
    let n = graph.vertex_count();
    let mut incident: Vec<Vec<(usize, i8)>> = vec![Vec::new(); n];
    for (e, s) in graph.edges().iter().zip(signs) {
        incident[e.u].push((e.v, *s));
        incident[e.v].push((e.u, *s));
    }
    let mut potential = vec![0i8; n];
    potential[0] = 1;
    let mut stack = vec![0];
    while let Some(x) = stack.pop() {
        for &(y, s) in &incident[x] {
            if potential[y] == 0 {
                potential[y] = potential[x] * s;
                stack.push(y);
            }
        }
    }
    graph.edges().iter().zip(signs).all(|(e, &s)| potential[e.u] * potential[e.v] == s)
}

/// Parses the text format: a header `n m`, then `m` lines `u v w [s]`.
/// Missing signs default to `+1`; blank lines and `#` comments are ignored.
pub fn parse_graph(text: &str) -> Result<(WeightedGraph, Signing), SpectralError> {
    let bad = |msg: String| SpectralError::Parse(msg);
    let mut lines = text.lines().map(|l| l.split('#').next().unwrap_or("").trim()).filter(|l| !l.is_empty());
    let header = lines.next().ok_or_else(|| bad("missing header".into()))?;
    let mut hdr = header.split_whitespace();
    let mut field = |name: &str| -> Result<usize, SpectralError> {
        hdr.next()
            .ok_or_else(|| bad(format!("header missing {name}")))?
            .parse()
            .map_err(|_| bad(format!("bad {name} in header")))
    };
    let n = field("vertex count")?;
    let m = field("edge count")?;
    let mut triples = Vec::with_capacity(m);
    let mut signs = Vec::with_capacity(m);
    for i in 0..m {
        let line = lines.next().ok_or_else(|| bad(format!("expected {m} edges, found {i}")))?;
        let toks: Vec<_> = line.split_whitespace().collect();
        if !(3..=4).contains(&toks.len()) {
            return Err(bad(format!("edge line {i}: expected `u v w [s]`")));
        }
        let u = toks[0].parse().map_err(|_| bad(format!("edge line {i}: bad vertex")))?;
        let v = toks[1].parse().map_err(|_| bad(format!("edge line {i}: bad vertex")))?;
        let w = toks[2].parse().map_err(|_| bad(format!("edge line {i}: bad weight")))?;
        let s: i8 = match toks.get(3) {
            Some(t) => t.trim_start_matches('+').parse().map_err(|_| bad(format!("edge line {i}: bad sign")))?,
            None => 1,
        };
        triples.push((u, v, w));
        signs.push(s);
    }
    if lines.next().is_some() {
        return Err(bad("trailing content after edge list".into()));
    }
    let g = WeightedGraph::new(n, triples)?;
    let s = Signing::new(&g, signs)?;
    Ok((g, s))
}

/// Writes a graph (and optional signing) in the text format.
pub fn format_graph(g: &WeightedGraph, signing: Option<&Signing>) -> String {
    let mut out = format!("{} {}\n", g.vertex_count(), g.edge_count());
    for (i, e) in g.edges().iter().enumerate() {
        match signing {
            Some(s) => writeln!(out, "{} {} {} {}", e.u, e.v, e.w, s.sign(i)),
            None => writeln!(out, "{} {} {}", e.u, e.v, e.w),
        }
        .expect("write to string");
    }
    out
}
