use nalgebra::{DMatrix, DVector, SymmetricEigen};

use super::graph::{Signing, WeightedGraph};
use super::SpectralError;

/// Largest vertex count accepted by the dense eigensolver.
pub const MAX_DENSE_VERTICES: usize = 2048;

/// Eigenvalues closer than this are treated as one cluster.
const CLUSTER_TOL: f64 = 1e-9;

/// `I - D^{-1/2} W D^{-1/2}`.
pub fn normalized_laplacian(g: &WeightedGraph) -> DMatrix<f64> {
    signed_or_plain(g, None)
}

/// `I - D^{-1/2} W^s D^{-1/2}` with `W^s(u, v) = s(uv) w(uv)`.
pub fn signed_laplacian(g: &WeightedGraph, s: &Signing) -> DMatrix<f64> {
    signed_or_plain(g, Some(s))
}

fn signed_or_plain(g: &WeightedGraph, s: Option<&Signing>) -> DMatrix<f64> {
    let n = g.vertex_count();
    let inv_sqrt: Vec<f64> = g.degrees().iter().map(|d| 1.0 / d.sqrt()).collect();
    let mut l = DMatrix::identity(n, n);
    for (i, e) in g.edges().iter().enumerate() {
        let sign = s.map_or(1.0, |s| f64::from(s.sign(i)));
        let x = sign * e.w * inv_sqrt[e.u] * inv_sqrt[e.v];
        l[(e.u, e.v)] -= x;
        l[(e.v, e.u)] -= x;
    }
    l
}

/// Eigenvalues in ascending order with matching unit eigenvectors as columns.
#[derive(Debug, Clone)]
pub struct Spectrum {
    pub values: Vec<f64>,
    pub vectors: DMatrix<f64>,
}

/// Dense symmetric eigendecomposition, sorted ascending.
pub fn eigen(m: &DMatrix<f64>) -> Result<Spectrum, SpectralError> {
    let n = m.nrows();
    if n > MAX_DENSE_VERTICES {
        return Err(SpectralError::TooLarge { vertices: n, limit: MAX_DENSE_VERTICES });
    }
    let eig = SymmetricEigen::new(m.clone());
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]).then(a.cmp(&b)));
    let values = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let vectors = DMatrix::from_fn(n, n, |r, c| eig.eigenvectors[(r, order[c])]);
    Ok(Spectrum { values, vectors })
}

/// Sorted eigenvalues only.
pub fn spectrum(m: &DMatrix<f64>) -> Result<Vec<f64>, SpectralError> {
    Ok(eigen(m)?.values)
}

/// An eigenpair together with its residual `||M x - lambda x||`.
#[derive(Debug, Clone)]
pub struct Eigenpair {
    pub value: f64,
    pub vector: DVector<f64>,
    pub residual: f64,
}

/// Spectral norm bound used to scale residual checks (max absolute row sum).
pub fn matrix_norm(m: &DMatrix<f64>) -> f64 {
    m.row_iter().map(|r| r.iter().map(|x| x.abs()).sum::<f64>()).fold(0.0, f64::max)
}

/// Row-echelon unit-norm basis of the eigenvalue cluster containing
/// `index` (indices below `floor` excluded). Later rows have more leading zeros.
pub fn cluster_basis(spec: &Spectrum, index: usize, floor: usize) -> Vec<DVector<f64>> {
    let target = spec.values[index];
    let cluster: Vec<usize> =
        (floor..spec.values.len()).filter(|&j| (spec.values[j] - target).abs() <= CLUSTER_TOL).collect();
    let n = spec.vectors.nrows();
    let mut rows: Vec<Vec<f64>> = cluster.iter().map(|&j| spec.vectors.column(j).iter().copied().collect()).collect();
    let mut pivot_row = 0;
    for col in 0..n {
        if pivot_row == rows.len() {
            break;
        }
        let best = (pivot_row..rows.len())
            .max_by(|&a, &b| rows[a][col].abs().total_cmp(&rows[b][col].abs()))
            .expect("nonempty");
        if rows[best][col].abs() <= 1e-8 {
            continue;
        }
        rows.swap(pivot_row, best);
        let p = rows[pivot_row][col];
        let (head, tail) = rows.split_at_mut(pivot_row + 1);
        let pivot = &head[pivot_row];
        for row in tail {
            let f = row[col] / p;
            for (x, y) in row.iter_mut().zip(pivot) {
                *x -= f * y;
            }
            row[col] = 0.0;
        }
        pivot_row += 1;
    }
    rows.into_iter()
        .map(|r| {
            let mut x = DVector::from_vec(r);
            x /= x.norm();
            if let Some(first) = x.iter().find(|v| v.abs() > 1e-12) {
                if *first < 0.0 {
                    x = -x;
                }
            }
            x
        })
        .collect()
}

/// Rayleigh quotient and residual of a unit vector.
pub fn eigenpair_of(m: &DMatrix<f64>, x: DVector<f64>) -> Eigenpair {
    let value = x.dot(&(m * &x));
    let residual = (m * &x - &x * value).norm();
    Eigenpair { value, vector: x, residual }
}

/// The eigenpair at `index`, canonicalized within its eigenvalue cluster:
/// among unit vectors of the cluster's span, the one with the most leading
/// zeros (last row of the row-echelon basis) with first nonzero entry positive.
/// Indices below `floor` are excluded from the cluster.
pub fn canonical_eigenpair(m: &DMatrix<f64>, spec: &Spectrum, index: usize, floor: usize) -> Eigenpair {
    let x = cluster_basis(spec, index, floor).pop().expect("cluster contains index");
    eigenpair_of(m, x)
}

/// The second-smallest eigenpair of the normalized Laplacian.
pub fn fiedler_pair(g: &WeightedGraph) -> Result<Eigenpair, SpectralError> {
    let l = normalized_laplacian(g);
    let spec = eigen(&l)?;
    if spec.values.len() < 2 {
        return Err(SpectralError::Disconnected);
    }
    let pair = canonical_eigenpair(&l, &spec, 1, 1);
    if pair.value <= 1e-12 {
        return Err(SpectralError::Disconnected);
    }
    let limit = 1e-10 * matrix_norm(&l).max(1.0);
    if pair.residual > limit {
        return Err(SpectralError::EigenResidual { residual: pair.residual, limit });
    }
    Ok(pair)
}

/// Second-smallest eigenvalue of the normalized Laplacian.
pub fn lambda1(g: &WeightedGraph) -> Result<f64, SpectralError> {
    Ok(fiedler_pair(g)?.value)
}

/// The Fiedler eigenvector mapped back to a vertex function, `D^{-1/2} x`.
pub fn fiedler_function(g: &WeightedGraph, pair: &Eigenpair) -> Vec<f64> {
    pair.vector.iter().zip(g.degrees()).map(|(x, d)| x / d.sqrt()).collect()
}
