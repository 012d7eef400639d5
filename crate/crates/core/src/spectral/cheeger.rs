use super::graph::WeightedGraph;
use super::laplacian::{cluster_basis, eigen, normalized_laplacian};
use super::SpectralError;

/// Largest vertex count accepted by the exhaustive Cheeger search.
pub const MAX_EXACT_VERTICES: usize = 24;

/// A Cheeger ratio together with the vertex set attaining it.
#[derive(Debug, Clone, PartialEq)]
pub struct CheegerCut {
    pub h: f64,
    pub witness: Vec<bool>,
}

impl CheegerCut {
    pub fn witness_vertices(&self) -> Vec<usize> {
        self.witness.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i).collect()
    }
}

/// Exact `h(G)` by Gray-code enumeration of the `2^(n-1) - 1` proper subsets
/// containing vertex 0. Cut and volume are updated incrementally; candidates
/// near the running minimum are recomputed from scratch so drift cannot
/// change the reported value.
pub fn cheeger_exact(g: &WeightedGraph) -> Result<CheegerCut, SpectralError> {
    let n = g.vertex_count();
    if n > MAX_EXACT_VERTICES {
        return Err(SpectralError::TooLarge { vertices: n, limit: MAX_EXACT_VERTICES });
    }
    let total = g.total_volume();
    let deg = g.degrees();
    let mut inside = vec![false; n];
    inside[0] = true;
    let mut vol = deg[0];
    let mut cut = deg[0];
    let mut best = CheegerCut { h: g.cheeger_ratio(&inside), witness: inside.clone() };
    let mut members = 1;
    for step in 1u64..(1u64 << (n - 1)) {
        // Gray code: flip the bit at the position of the lowest set bit of `step`.
        let v = step.trailing_zeros() as usize + 1;
        let adding = !inside[v];
        let mut delta = 0.0;
        for &(x, w) in g.neighbors(v) {
            delta += if inside[x] { -w } else { w };
        }
        if adding {
            cut += delta;
            vol += deg[v];
        } else {
            cut -= delta;
            vol -= deg[v];
        }
        inside[v] = adding;
        members = if adding { members + 1 } else { members - 1 };
        if members == n {
            continue;
        }
        let ratio = cut / vol.min(total - vol);
        if ratio < best.h + 1e-9 * (1.0 + best.h) {
            let exact = g.cheeger_ratio(&inside);
            if exact < best.h {
                best = CheegerCut { h: exact, witness: inside.clone() };
            }
        }
    }
    Ok(best)
}

/// Best threshold cut `{f <= t}` over the distinct values of `f`.
pub fn cheeger_sweep(g: &WeightedGraph, f: &[f64]) -> Result<CheegerCut, SpectralError> {
    let n = g.vertex_count();
    check_len(n, f)?;
    let order = sorted_order(f);
    let total = g.total_volume();
    let mut inside = vec![false; n];
    let (mut cut, mut vol) = (0.0, 0.0);
    let mut best: Option<(f64, usize)> = None;
    for (k, &v) in order.iter().enumerate().take(n - 1) {
        for &(x, w) in g.neighbors(v) {
            cut += if inside[x] { -w } else { w };
        }
        vol += g.degrees()[v];
        inside[v] = true;
        if f[order[k + 1]] > f[v] {
            let ratio = cut / vol.min(total - vol);
            if best.is_none_or(|(b, _)| ratio < b) {
                best = Some((ratio, k));
            }
        }
    }
    let (_, k) = best.ok_or(SpectralError::DegenerateOrder)?;
    let mut witness = vec![false; n];
    for &v in &order[..=k] {
        witness[v] = true;
    }
    Ok(CheegerCut { h: g.cheeger_ratio(&witness), witness })
}

/// Best sweep cut over the Fiedler eigenspace. When `lambda1` is repeated,
/// every echelon basis vector of the eigenspace and every pairwise sum and
/// difference is swept, since a single representative can miss the best cut.
pub fn fiedler_sweep(g: &WeightedGraph) -> Result<CheegerCut, SpectralError> {
    let l = normalized_laplacian(g);
    let spec = eigen(&l)?;
    let basis = cluster_basis(&spec, 1, 1);
    let mut candidates = basis.clone();
    for i in 0..basis.len() {
        for j in i + 1..basis.len() {
            candidates.push(&basis[i] + &basis[j]);
            candidates.push(&basis[i] - &basis[j]);
        }
    }
    let mut best: Option<CheegerCut> = None;
    for x in candidates.into_iter().rev() {
        let f: Vec<f64> = x.iter().zip(g.degrees()).map(|(x, d)| x / d.sqrt()).collect();
        if let Ok(cut) = cheeger_sweep(g, &f) {
            if best.as_ref().is_none_or(|b| cut.h < b.h) {
                best = Some(cut);
            }
        }
    }
    best.ok_or(SpectralError::DegenerateOrder)
}

/// Total variation `sum_e w |f(u) - f(v)|`.
pub fn gradient_l1(g: &WeightedGraph, f: &[f64]) -> f64 {
    g.edges().iter().map(|e| e.w * (f[e.u] - f[e.v]).abs()).sum()
}

/// Dirichlet energy `sum_e w (f(u) - f(v))^2`.
pub fn gradient_energy(g: &WeightedGraph, f: &[f64]) -> f64 {
    g.edges().iter().map(|e| e.w * (f[e.u] - f[e.v]).powi(2)).sum()
}

/// A minimizer of `sum_i w_i |x_i - m|`: the lower weighted median.
pub fn weighted_median(values: &[f64], weights: &[f64]) -> f64 {
    let order = sorted_order(values);
    let half = weights.iter().sum::<f64>() / 2.0;
    let mut acc = 0.0;
    for &i in &order {
        acc += weights[i];
        if acc >= half {
            return values[i];
        }
    }
    values[*order.last().expect("nonempty")]
}

/// `sum_i w_i |x_i - m|`.
pub fn weighted_l1_deviation(values: &[f64], weights: &[f64], m: f64) -> f64 {
    values.iter().zip(weights).map(|(x, w)| w * (x - m).abs()).sum()
}

/// Result of a Sobolev-ratio evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SobolevRatio {
    pub ratio: f64,
    pub median: f64,
}

/// `||grad f||_1 / min_a ||f - a||_1` with degree-weighted L1 norm; the
/// minimizing shift is the degree-weighted median.
pub fn sobolev_ratio(g: &WeightedGraph, f: &[f64]) -> Result<SobolevRatio, SpectralError> {
    check_len(g.vertex_count(), f)?;
    if f.iter().all(|x| *x == f[0]) {
        return Err(SpectralError::ConstantFunction);
    }
    let median = weighted_median(f, g.degrees());
    let denom = weighted_l1_deviation(f, g.degrees(), median);
    Ok(SobolevRatio { ratio: gradient_l1(g, f) / denom, median })
}

/// `integral over t of cut({f > t})`, summed exactly over the intervals
/// between consecutive distinct values.
pub fn coarea_integral(g: &WeightedGraph, f: &[f64]) -> Result<f64, SpectralError> {
    check_len(g.vertex_count(), f)?;
    let order = sorted_order(f);
    let mut below = vec![false; f.len()];
    let mut total = 0.0;
    for k in 0..order.len() - 1 {
        below[order[k]] = true;
        let gap = f[order[k + 1]] - f[order[k]];
        if gap > 0.0 {
            total += g.cut(&below) * gap;
        }
    }
    Ok(total)
}

fn sorted_order(f: &[f64]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..f.len()).collect();
    order.sort_by(|&a, &b| f[a].total_cmp(&f[b]).then(a.cmp(&b)));
    order
}

fn check_len(n: usize, f: &[f64]) -> Result<(), SpectralError> {
    if f.len() != n {
        return Err(SpectralError::LengthMismatch { expected: n, got: f.len() });
    }
    Ok(())
}
