//! Numerical trace of the two-cover eigenvalue bound
//! `lambda1(G') >= 1/4 sqrt(lambda1(G)) h(G')` and of each inequality in its
//! proof, evaluated on an odd eigenfunction of the cover.

use serde::{Deserialize, Serialize};

use super::cheeger::{
    cheeger_exact, cheeger_sweep, gradient_energy, gradient_l1, weighted_l1_deviation, weighted_median,
};
use super::cover::double_cover;
use super::graph::{Signing, WeightedGraph};
use super::laplacian::{canonical_eigenpair, eigen, fiedler_function, fiedler_pair, lambda1, signed_laplacian};
use super::SpectralError;
use crate::constants::THEOREM_CONST;

/// Largest base graph whose cover Cheeger constant is computed exhaustively.
pub const EXACT_COVER_BASE_LIMIT: usize = 12;

/// Values at or below this magnitude count as zeros of the eigenfunction.
pub const NODAL_TOL: f64 = 1e-12;

/// Every quantity of the proof chain on one `(G, signing)` instance. Norms on
/// the cover are degree-weighted; energies are `sum_e w (a - b)^2`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProofChainTrace {
    pub lambda1_base: f64,
    pub lambda1_cover: f64,
    /// Bottom eigenvalue of the signed Laplacian.
    pub mu0: f64,
    pub vol_cover: f64,
    /// Degree-weighted mean of `|f|` on the cover.
    pub alpha: f64,
    pub u_norm_sq: f64,
    pub f_norm_sq: f64,
    pub grad_f_norm_sq: f64,
    pub grad_u_norm_sq: f64,
    pub normbound_lhs: f64,
    pub normbound_rhs: f64,
    pub cauchy_schwarz_lhs: f64,
    pub cauchy_schwarz_rhs: f64,
    /// `2 ||u|| sqrt(E(u))`, the smooth chain-rule form; informational only.
    pub cauchy_schwarz_smooth_rhs: f64,
    pub shifted_l1_min: f64,
    pub shifted_l1_lower: f64,
    pub h_cover: f64,
    pub h_cover_exact: bool,
    pub final_lhs: f64,
    pub final_rhs: f64,
    /// `lambda1(G') / (sqrt(lambda1(G)) h(G'))`.
    pub ratio: f64,
    pub f_has_zero_entry: bool,
    /// Set when `lambda1(G') >= lambda1(G)`; the chain quantities are then zero.
    pub vacuous: bool,
    /// The odd eigenfunction on the cover, normalized to `||f||^2 = 1`.
    pub f: Vec<f64>,
}

impl ProofChainTrace {
    pub fn final_holds(&self) -> bool {
        self.final_lhs >= self.final_rhs
    }
}

/// Builds the proof-chain trace for `(G, s)`. A cover whose first eigenvalue
/// is not below the base's yields a trace with `vacuous = true`.
pub fn verify_two_cover_bound(g: &WeightedGraph, s: &Signing) -> Result<ProofChainTrace, SpectralError> {
    if !s.nontrivial_cohomology() {
        return Err(SpectralError::DisconnectedCover);
    }
    let cover = double_cover(g, s)?;
    let lambda1_base = lambda1(g)?;
    let cover_pair = fiedler_pair(&cover)?;
    let lambda1_cover = cover_pair.value;
    let ls = signed_laplacian(g, s);
    let bottom = canonical_eigenpair(&ls, &eigen(&ls)?, 0, 0);
    let mu0 = bottom.value;
    let n = g.vertex_count();
    let deg = cover.degrees();
    let vol_cover = cover.total_volume();

    let vacuous = lambda1_cover >= lambda1_base - 1e-12;
    let mut f = Vec::new();
    if !vacuous {
        // f(u, 0) = y(u) / sqrt(2 d(u)), f(u, 1) = -f(u, 0).
        let half: Vec<f64> = bottom.vector.iter().zip(g.degrees()).map(|(y, d)| y / (2.0 * d).sqrt()).collect();
        f = half.iter().copied().chain(half.iter().map(|x| -x)).collect();
    }
    let f_has_zero_entry = f.iter().any(|x| x.abs() <= NODAL_TOL);
    for x in &mut f {
        if x.abs() <= NODAL_TOL {
            *x = 0.0;
        }
    }

    let h_cover_exact = n <= EXACT_COVER_BASE_LIMIT;
    let h_cover = if h_cover_exact {
        cheeger_exact(&cover)?.h
    } else if vacuous {
        cheeger_sweep(&cover, &fiedler_function(&cover, &cover_pair))?.h
    } else {
        cheeger_sweep(&cover, &f)?.h
    };
    let final_rhs = THEOREM_CONST * lambda1_base.sqrt() * h_cover;
    let ratio = lambda1_cover / (lambda1_base.sqrt() * h_cover);

    let mut trace = ProofChainTrace {
        lambda1_base,
        lambda1_cover,
        mu0,
        vol_cover,
        alpha: 0.0,
        u_norm_sq: 0.0,
        f_norm_sq: 0.0,
        grad_f_norm_sq: 0.0,
        grad_u_norm_sq: 0.0,
        normbound_lhs: 0.0,
        normbound_rhs: 0.0,
        cauchy_schwarz_lhs: 0.0,
        cauchy_schwarz_rhs: 0.0,
        cauchy_schwarz_smooth_rhs: 0.0,
        shifted_l1_min: 0.0,
        shifted_l1_lower: 0.0,
        h_cover,
        h_cover_exact,
        final_lhs: lambda1_cover,
        final_rhs,
        ratio,
        f_has_zero_entry,
        vacuous,
        f: Vec::new(),
    };
    if vacuous {
        return Ok(trace);
    }

    let abs_f: Vec<f64> = f.iter().map(|x| x.abs()).collect();
    let alpha = abs_f.iter().zip(deg).map(|(a, d)| a * d).sum::<f64>() / vol_cover;
    let u: Vec<f64> = abs_f.iter().map(|a| a - alpha).collect();
    let u_norm_sq: f64 = u.iter().zip(deg).map(|(x, d)| d * x * x).sum();
    let f_norm_sq: f64 = f.iter().zip(deg).map(|(x, d)| d * x * x).sum();
    let grad_f = gradient_energy(&cover, &f);
    let grad_u = gradient_energy(&cover, &u);
    let v: Vec<f64> =
        f.iter().zip(&u).map(|(fx, ux)| if *fx >= 0.0 { ux * ux } else { 2.0 * alpha * alpha - ux * ux }).collect();
    let slope_sq: f64 = cover
        .edges()
        .iter()
        .map(|e| {
            let df = f[e.u] - f[e.v];
            if df == 0.0 {
                0.0
            } else {
                e.w * ((v[e.u] - v[e.v]) / df).powi(2)
            }
        })
        .sum();
    let m = weighted_median(&v, deg);

    trace.alpha = alpha;
    trace.u_norm_sq = u_norm_sq;
    trace.f_norm_sq = f_norm_sq;
    trace.grad_f_norm_sq = grad_f;
    trace.grad_u_norm_sq = grad_u;
    trace.normbound_lhs = lambda1_base * u_norm_sq;
    trace.normbound_rhs = grad_u;
    trace.cauchy_schwarz_lhs = gradient_l1(&cover, &v);
    trace.cauchy_schwarz_rhs = slope_sq.sqrt() * grad_f.sqrt();
    trace.cauchy_schwarz_smooth_rhs = 2.0 * u_norm_sq.sqrt() * grad_u.sqrt();
    trace.shifted_l1_min = weighted_l1_deviation(&v, deg, m);
    trace.shifted_l1_lower = alpha * alpha * vol_cover - u_norm_sq;
    trace.f = f;
    Ok(trace)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ChainStep {
    EvenRayleigh,
    Contraction,
    CauchySchwarz,
    ShiftedL1,
    FinalBound,
}

impl ChainStep {
    pub const ALL: [ChainStep; 5] =
        [Self::EvenRayleigh, Self::Contraction, Self::CauchySchwarz, Self::ShiftedL1, Self::FinalBound];

    pub fn name(self) -> &'static str {
        match self {
            Self::EvenRayleigh => "even_rayleigh",
            Self::Contraction => "contraction",
            Self::CauchySchwarz => "cauchy_schwarz",
            Self::ShiftedL1 => "shifted_l1",
            Self::FinalBound => "final_bound",
        }
    }
}

/// Outcome of one inequality `lhs <= rhs` (or `>=` for the lower bounds).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StepOutcome {
    pub step: ChainStep,
    pub lhs: f64,
    pub rhs: f64,
    pub holds: bool,
    /// False for steps that are reported but not hard requirements.
    pub asserted: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChainLedger {
    pub steps: Vec<StepOutcome>,
    pub nodal_flag: bool,
}

impl ChainLedger {
    /// First asserted step that fails, if any.
    pub fn first_failure(&self) -> Option<ChainStep> {
        self.steps.iter().find(|s| s.asserted && !s.holds).map(|s| s.step)
    }

    pub fn all_asserted_hold(&self) -> bool {
        self.first_failure().is_none()
    }

    pub fn outcome(&self, step: ChainStep) -> &StepOutcome {
        self.steps.iter().find(|s| s.step == step).expect("every step is recorded")
    }
}

fn le(lhs: f64, rhs: f64) -> bool {
    lhs <= rhs + 1e-9 * (1.0 + lhs.abs().max(rhs.abs()))
}

/// Checks steps (i)-(iv) of the chain and reports the final comparison.
/// The shifted-L1 step relies on the deck pairing of the two sign classes and
/// is not asserted when `f` vanishes somewhere.
pub fn proof_chain_check(trace: &ProofChainTrace) -> Result<ChainLedger, SpectralError> {
    if trace.vacuous {
        return Err(SpectralError::VacuousTrace);
    }
    let t = trace;
    let outcome = |step, lhs: f64, rhs: f64, holds, asserted| StepOutcome { step, lhs, rhs, holds, asserted };
    let steps = vec![
        outcome(ChainStep::EvenRayleigh, t.normbound_lhs, t.normbound_rhs, le(t.normbound_lhs, t.normbound_rhs), true),
        outcome(
            ChainStep::Contraction,
            t.grad_u_norm_sq,
            t.grad_f_norm_sq,
            le(t.grad_u_norm_sq, t.grad_f_norm_sq),
            true,
        ),
        outcome(
            ChainStep::CauchySchwarz,
            t.cauchy_schwarz_lhs,
            t.cauchy_schwarz_rhs,
            le(t.cauchy_schwarz_lhs, t.cauchy_schwarz_rhs),
            true,
        ),
        outcome(
            ChainStep::ShiftedL1,
            t.shifted_l1_min,
            t.shifted_l1_lower,
            le(t.shifted_l1_lower, t.shifted_l1_min),
            !t.f_has_zero_entry,
        ),
        outcome(ChainStep::FinalBound, t.final_lhs, t.final_rhs, t.final_holds(), false),
    ];
    Ok(ChainLedger { steps, nodal_flag: t.f_has_zero_entry })
}
