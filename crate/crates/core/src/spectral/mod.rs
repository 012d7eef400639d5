//! Weighted graphs as discrete manifolds: normalized Laplacian spectra,
//! Cheeger and Sobolev constants, double covers from edge signings, and a
//! numerical trace of the two-cover eigenvalue bound.

mod cheeger;
mod cover;
mod generators;
mod graph;
mod laplacian;
mod proof;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use cheeger::{
    cheeger_exact, cheeger_sweep, coarea_integral, fiedler_sweep, gradient_energy, gradient_l1, sobolev_ratio,
    weighted_l1_deviation, weighted_median, CheegerCut, SobolevRatio, MAX_EXACT_VERTICES,
};
pub use cover::{deck_involution, double_cover};
pub use generators::{cycle, cyclic_cover, pinched_pair, random_graph, random_nontrivial_signing, torus_grid};
pub use graph::{format_graph, parse_graph, Edge, Signing, WeightedGraph};
pub use laplacian::{
    canonical_eigenpair, cluster_basis, eigen, eigenpair_of, fiedler_function, fiedler_pair, lambda1, matrix_norm,
    normalized_laplacian, signed_laplacian, spectrum, Eigenpair, Spectrum, MAX_DENSE_VERTICES,
};
pub use proof::{
    proof_chain_check, verify_two_cover_bound, ChainLedger, ChainStep, ProofChainTrace, StepOutcome,
    EXACT_COVER_BASE_LIMIT, NODAL_TOL,
};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpectralError {
    #[error("graph is disconnected")]
    Disconnected,
    #[error("{vertices} vertices exceeds the limit of {limit}")]
    TooLarge { vertices: usize, limit: usize },
    #[error("order vector is constant; no threshold cut exists")]
    DegenerateOrder,
    #[error("function is constant")]
    ConstantFunction,
    #[error("signing is balanced; its double cover is two disjoint copies")]
    TrivialCover,
    #[error("double cover is disconnected")]
    DisconnectedCover,
    #[error("trace is vacuous: cover spectrum is not below the base")]
    VacuousTrace,
    #[error("eigen residual {residual:e} exceeds {limit:e}")]
    EigenResidual { residual: f64, limit: f64 },
    #[error("expected {expected} values, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("parse error: {0}")]
    Parse(String),
}

/// Largest graph for which `spectral_report` includes the exact Cheeger constant.
pub const REPORT_EXACT_LIMIT: usize = 20;

/// Spectral summary of one graph. `h_lower = lambda1 / 2` and `h_upper` is
/// the best sweep cut over the Fiedler eigenspace.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectralReport {
    pub vertex_count: usize,
    pub edge_count: usize,
    pub lambda1: f64,
    pub h_lower: f64,
    pub h_upper: f64,
    pub h_exact: Option<f64>,
    pub sobolev_best: f64,
    pub eig_residual: f64,
    pub sweep_witness: Vec<usize>,
}

pub fn spectral_report(g: &WeightedGraph) -> Result<SpectralReport, SpectralError> {
    let pair = fiedler_pair(g)?;
    let f = fiedler_function(g, &pair);
    let sweep = fiedler_sweep(g)?;
    let exact = if g.vertex_count() <= REPORT_EXACT_LIMIT { Some(cheeger_exact(g)?) } else { None };
    let indicator = |w: &[bool]| -> Vec<f64> { w.iter().map(|&b| f64::from(u8::from(b))).collect() };
    let mut sobolev_best = sobolev_ratio(g, &f)?.ratio.min(sobolev_ratio(g, &indicator(&sweep.witness))?.ratio);
    if let Some(cut) = &exact {
        sobolev_best = sobolev_best.min(sobolev_ratio(g, &indicator(&cut.witness))?.ratio);
    }
    Ok(SpectralReport {
        vertex_count: g.vertex_count(),
        edge_count: g.edge_count(),
        lambda1: pair.value,
        h_lower: pair.value / 2.0,
        h_upper: sweep.h,
        h_exact: exact.map(|c| c.h),
        sobolev_best,
        eig_residual: pair.residual,
        sweep_witness: sweep.witness_vertices(),
    })
}
