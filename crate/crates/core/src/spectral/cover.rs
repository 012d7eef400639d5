use super::graph::{Signing, WeightedGraph};
use super::SpectralError;

/// The double cover on `V x {0, 1}`, vertex `(u, i)` at index `u + i n`.
/// Positive edges stay on their sheet, negative edges switch sheets.
pub fn double_cover(g: &WeightedGraph, s: &Signing) -> Result<WeightedGraph, SpectralError> {
    if s.signs().len() != g.edge_count() {
        return Err(SpectralError::LengthMismatch { expected: g.edge_count(), got: s.signs().len() });
    }
    if !s.nontrivial_cohomology() {
        return Err(SpectralError::TrivialCover);
    }
    let n = g.vertex_count();
    let mut edges = Vec::with_capacity(2 * g.edge_count());
    for (i, e) in g.edges().iter().enumerate() {
        for sheet in 0..2 {
            let other = if s.sign(i) > 0 { sheet } else { 1 - sheet };
            edges.push((e.u + sheet * n, e.v + other * n, e.w));
        }
    }
    WeightedGraph::new(2 * n, edges)
}

/// The deck involution `(u, i) -> (u, 1 - i)` as a vertex permutation.
pub fn deck_involution(base_vertices: usize) -> Vec<usize> {
    (0..2 * base_vertices).map(|x| (x + base_vertices) % (2 * base_vertices)).collect()
}
