use std::collections::BTreeMap;

use rand::Rng;

use super::graph::{Signing, WeightedGraph};
use super::SpectralError;

fn param(msg: impl Into<String>) -> SpectralError {
    SpectralError::InvalidParameter(msg.into())
}

/// The cycle `C_n` with unit weights.
pub fn cycle(n: usize) -> Result<WeightedGraph, SpectralError> {
    if n < 3 {
        return Err(param(format!("cycle needs n >= 3, got {n}")));
    }
    WeightedGraph::new(n, (0..n).map(|i| (i, (i + 1) % n, 1.0)))
}

/// The `a x b` grid with wraparound in both directions, vertex `(i, j)` at
/// index `i * b + j`. Parallel edges (when a side has length 2) merge with
/// summed weight.
pub fn torus_grid(a: usize, b: usize) -> Result<WeightedGraph, SpectralError> {
    if a < 2 || b < 2 {
        return Err(param(format!("torus_grid needs a, b >= 2, got {a} x {b}")));
    }
    let mut weights: BTreeMap<(usize, usize), f64> = BTreeMap::new();
    let mut add = |x: usize, y: usize| {
        let key = if x < y { (x, y) } else { (y, x) };
        *weights.entry(key).or_insert(0.0) += 1.0;
    };
    for i in 0..a {
        for j in 0..b {
            add(i * b + j, ((i + 1) % a) * b + j);
            add(i * b + j, i * b + (j + 1) % b);
        }
    }
    WeightedGraph::new(a * b, weights.into_iter().map(|((u, v), w)| (u, v, w)))
}

/// Two disjoint copies of `K_n` (vertices `0..n` and `n..2n`) joined by the
/// `k` edges `(i, n + i)` of weight `eps`.
pub fn pinched_pair(n: usize, k: usize, eps: f64) -> Result<WeightedGraph, SpectralError> {
    if n < 3 {
        return Err(param(format!("pinched_pair needs n >= 3, got {n}")));
    }
    if k == 0 || k > n {
        return Err(param(format!("pinched_pair needs 1 <= k <= n, got k = {k}")));
    }
    if !(eps.is_finite() && eps > 0.0) {
        return Err(param(format!("pinched_pair needs eps > 0, got {eps}")));
    }
    let mut edges = Vec::new();
    for block in [0, n] {
        for i in 0..n {
            for j in i + 1..n {
                edges.push((block + i, block + j, 1.0));
            }
        }
    }
    edges.extend((0..k).map(|i| (i, n + i, eps)));
    WeightedGraph::new(2 * n, edges)
}

/// The `m`-fold cyclic cover: vertex `(v, layer)` sits at `layer * n + v`;
/// an edge `(u, v)` listed in `marked` joins `(u, i)` to `(v, i + 1 mod m)`,
/// every other edge stays within its layer.
pub fn cyclic_cover(g: &WeightedGraph, marked: &[usize], m: usize) -> Result<WeightedGraph, SpectralError> {
    if m < 2 {
        return Err(param(format!("cyclic_cover needs m >= 2, got {m}")));
    }
    if let Some(bad) = marked.iter().find(|&&e| e >= g.edge_count()) {
        return Err(param(format!("marked edge {bad} out of range")));
    }
    let n = g.vertex_count();
    let mut edges = Vec::with_capacity(m * g.edge_count());
    for (idx, e) in g.edges().iter().enumerate() {
        let shift = usize::from(marked.contains(&idx));
        for layer in 0..m {
            edges.push((layer * n + e.u, ((layer + shift) % m) * n + e.v, e.w));
        }
    }
    WeightedGraph::new(m * n, edges)
}

/// An Erdos-Renyi graph `G(n, p)` with unit weights, resampled until it is
/// connected and contains a cycle.
pub fn random_graph<R: Rng>(rng: &mut R, n: usize, p: f64) -> Result<WeightedGraph, SpectralError> {
    if n < 3 {
        return Err(param(format!("random_graph needs n >= 3, got {n}")));
    }
    if !(p > 0.0 && p <= 1.0) {
        return Err(param(format!("random_graph needs 0 < p <= 1, got {p}")));
    }
    loop {
        let mut edges = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                if rng.gen_bool(p) {
                    edges.push((i, j, 1.0));
                }
            }
        }
        if edges.len() < n {
            continue;
        }
        if let Ok(g) = WeightedGraph::new(n, edges) {
            return Ok(g);
        }
    }
}

/// Uniform random signs, resampled until the cover is connected. The graph
/// must contain a cycle.
pub fn random_nontrivial_signing<R: Rng>(rng: &mut R, g: &WeightedGraph) -> Result<Signing, SpectralError> {
    if g.edge_count() < g.vertex_count() {
        return Err(SpectralError::TrivialCover);
    }
    loop {
        let signs = (0..g.edge_count()).map(|_| if rng.gen_bool(0.5) { 1 } else { -1 }).collect();
        let s = Signing::new(g, signs)?;
        if s.nontrivial_cohomology() {
            return Ok(s);
        }
    }
}
