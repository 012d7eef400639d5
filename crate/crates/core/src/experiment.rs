//! Seeded experiments over the three laboratories. Every instance is a pure
//! function of `(seed, instance)`; results are merged by instance id, so the
//! output does not depend on the number of worker threads.

use std::sync::atomic::{AtomicU64, Ordering};
use std::thread;

use serde::{Deserialize, Serialize};

use crate::arith::{ramification_plan, trace_field, PlanReport};
use crate::constants::THEOREM_CONST;
use crate::rng::instance_rng;
use crate::salem::{enumerate_salem_range, merge_enumeration, SalemCertificate, SalemReport, TraceBox};
use crate::spectral::{
    cycle, cyclic_cover, format_graph, lambda1, proof_chain_check, random_graph, random_nontrivial_signing,
    verify_two_cover_bound, ChainStep, ProofChainTrace, SpectralError,
};

/// Maps `f` over `0..count` on up to `jobs` threads, returning results in id order.
pub fn par_map<T, F>(count: u64, jobs: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(u64) -> T + Sync,
{
    let jobs = jobs.clamp(1, usize::try_from(count).unwrap_or(usize::MAX).max(1));
    if jobs == 1 {
        return (0..count).map(f).collect();
    }
    let next = AtomicU64::new(0);
    let mut tagged: Vec<(u64, T)> = thread::scope(|s| {
        let workers: Vec<_> = (0..jobs)
            .map(|_| {
                s.spawn(|| {
                    let mut out = Vec::new();
                    loop {
                        let i = next.fetch_add(1, Ordering::Relaxed);
                        if i >= count {
                            break out;
                        }
                        out.push((i, f(i)));
                    }
                })
            })
            .collect();
        workers.into_iter().flat_map(|w| w.join().expect("worker panicked")).collect()
    });
    tagged.sort_by_key(|(i, _)| *i);
    tagged.into_iter().map(|(_, t)| t).collect()
}

/// Status of one proof-chain step in a result row.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StepStatus {
    Pass,
    Fail,
    /// Vacuous trace, or a step not asserted because of the nodal flag.
    Skip,
}

/// Outcome of the final two-cover comparison.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundStatus {
    True,
    False,
    Vacuous,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TwoCoverParams {
    pub seed: u64,
    pub vertices: usize,
    pub instances: u64,
    pub edge_probability: f64,
}

impl TwoCoverParams {
    pub fn new(seed: u64, vertices: usize, instances: u64) -> Self {
        Self { seed, vertices, instances, edge_probability: 0.5 }
    }
}

/// One CSV row of the two-cover experiment.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TwoCoverRow {
    pub seed: u64,
    pub instance: u64,
    pub lambda1_base: f64,
    pub lambda1_cover: f64,
    pub h_cover: f64,
    pub bound_rhs: f64,
    pub pass: BoundStatus,
    pub nodal_flag: bool,
    pub even_rayleigh: StepStatus,
    pub contraction: StepStatus,
    pub cauchy_schwarz: StepStatus,
    pub shifted_l1: StepStatus,
    pub ratio: f64,
    pub vertices: usize,
    pub edges: usize,
}

impl TwoCoverRow {
    pub fn step(&self, step: ChainStep) -> StepStatus {
        match step {
            ChainStep::EvenRayleigh => self.even_rayleigh,
            ChainStep::Contraction => self.contraction,
            ChainStep::CauchySchwarz => self.cauchy_schwarz,
            ChainStep::ShiftedL1 => self.shifted_l1,
            ChainStep::FinalBound => match self.pass {
                BoundStatus::True => StepStatus::Pass,
                BoundStatus::False => StepStatus::Fail,
                BoundStatus::Vacuous => StepStatus::Skip,
            },
        }
    }

    pub fn chain_failed(&self) -> bool {
        ChainStep::ALL[..4].iter().any(|s| self.step(*s) == StepStatus::Fail)
    }
}

/// Full record of an instance whose final comparison or chain step failed.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TwoCoverViolation {
    pub instance: u64,
    pub graph: String,
    pub failed_steps: Vec<ChainStep>,
    pub trace: ProofChainTrace,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TwoCoverSummary {
    pub seed: u64,
    pub vertices: usize,
    pub instances: u64,
    pub non_vacuous: u64,
    pub vacuous: u64,
    pub nodal: u64,
    pub chain_failures: u64,
    pub bound_violations: u64,
    pub theorem_const: f64,
    /// Smallest `lambda1(G') / (sqrt(lambda1(G)) h(G'))` over all instances.
    pub min_ratio: Option<f64>,
    pub min_ratio_instance: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TwoCoverRun {
    pub rows: Vec<TwoCoverRow>,
    pub violations: Vec<TwoCoverViolation>,
    pub summary: TwoCoverSummary,
}

impl TwoCoverRun {
    pub fn has_violations(&self) -> bool {
        !self.violations.is_empty()
    }
}

/// Draws instance `instance` (a connected `G(n, p)` graph with a random
/// signing whose cover is connected) and traces the two-cover bound on it.
pub fn two_cover_instance(
    params: &TwoCoverParams,
    instance: u64,
) -> Result<(TwoCoverRow, Option<TwoCoverViolation>), SpectralError> {
    let mut rng = instance_rng(params.seed, instance);
    let (g, s) = loop {
        let g = random_graph(&mut rng, params.vertices, params.edge_probability)?;
        if let Ok(s) = random_nontrivial_signing(&mut rng, &g) {
            break (g, s);
        }
    };
    let trace = verify_two_cover_bound(&g, &s)?;
    let (ledger, pass) = if trace.vacuous {
        (None, BoundStatus::Vacuous)
    } else {
        let l = proof_chain_check(&trace)?;
        let pass = if trace.final_holds() { BoundStatus::True } else { BoundStatus::False };
        (Some(l), pass)
    };
    let step_status = |step: ChainStep| match &ledger {
        None => StepStatus::Skip,
        Some(l) => {
            let o = l.outcome(step);
            if !o.asserted {
                StepStatus::Skip
            } else if o.holds {
                StepStatus::Pass
            } else {
                StepStatus::Fail
            }
        }
    };
    let row = TwoCoverRow {
        seed: params.seed,
        instance,
        vertices: g.vertex_count(),
        edges: g.edge_count(),
        lambda1_base: trace.lambda1_base,
        lambda1_cover: trace.lambda1_cover,
        h_cover: trace.h_cover,
        bound_rhs: trace.final_rhs,
        ratio: trace.ratio,
        pass,
        nodal_flag: trace.f_has_zero_entry,
        even_rayleigh: step_status(ChainStep::EvenRayleigh),
        contraction: step_status(ChainStep::Contraction),
        cauchy_schwarz: step_status(ChainStep::CauchySchwarz),
        shifted_l1: step_status(ChainStep::ShiftedL1),
    };
    let failed_steps: Vec<ChainStep> =
        ChainStep::ALL.iter().copied().filter(|st| row.step(*st) == StepStatus::Fail).collect();
    let violation = (!failed_steps.is_empty()).then(|| TwoCoverViolation {
        instance,
        graph: format_graph(&g, Some(&s)),
        failed_steps,
        trace,
    });
    Ok((row, violation))
}

pub fn run_two_cover(params: &TwoCoverParams, jobs: usize) -> Result<TwoCoverRun, SpectralError> {
    let results = par_map(params.instances, jobs, |i| two_cover_instance(params, i));
    let mut rows = Vec::with_capacity(results.len());
    let mut violations = Vec::new();
    for r in results {
        let (row, v) = r?;
        rows.push(row);
        violations.extend(v);
    }
    let count = |pred: &dyn Fn(&TwoCoverRow) -> bool| rows.iter().filter(|r| pred(r)).count() as u64;
    let best = rows
        .iter()
        .filter(|r| r.pass != BoundStatus::Vacuous)
        .min_by(|a, b| a.ratio.total_cmp(&b.ratio).then(a.instance.cmp(&b.instance)));
    let summary = TwoCoverSummary {
        seed: params.seed,
        vertices: params.vertices,
        instances: params.instances,
        non_vacuous: count(&|r| r.pass != BoundStatus::Vacuous),
        vacuous: count(&|r| r.pass == BoundStatus::Vacuous),
        nodal: count(&|r| r.nodal_flag),
        chain_failures: count(&|r| r.chain_failed()),
        bound_violations: count(&|r| r.pass == BoundStatus::False),
        theorem_const: THEOREM_CONST,
        min_ratio: best.map(|r| r.ratio),
        min_ratio_instance: best.map(|r| r.instance),
    };
    Ok(TwoCoverRun { rows, violations, summary })
}

/// One point of the cyclic-cover scaling curve.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CyclicScalingRow {
    pub m: usize,
    pub vertices: usize,
    pub lambda1: f64,
    /// `1 - cos(2 pi / (3 m))`, the first eigenvalue of the cycle `C_{3m}`.
    pub closed_form: f64,
    pub abs_error: f64,
    pub lambda1_m_sq: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CyclicScalingReport {
    pub rows: Vec<CyclicScalingRow>,
    /// Least-squares slope of `ln lambda1` against `ln m`.
    pub slope: f64,
}

/// `lambda1` of the `m`-fold cyclic covers of a triangle with one marked edge.
pub fn run_cyclic_scaling(ms: &[usize], jobs: usize) -> Result<CyclicScalingReport, SpectralError> {
    let base = cycle(3)?;
    let rows = par_map(ms.len() as u64, jobs, |i| -> Result<CyclicScalingRow, SpectralError> {
        let m = ms[i as usize];
        let g = cyclic_cover(&base, &[0], m)?;
        let l1 = lambda1(&g)?;
        let closed_form = 1.0 - (std::f64::consts::TAU / (3 * m) as f64).cos();
        Ok(CyclicScalingRow {
            m,
            vertices: g.vertex_count(),
            lambda1: l1,
            closed_form,
            abs_error: (l1 - closed_form).abs(),
            lambda1_m_sq: l1 * (m * m) as f64,
        })
    })
    .into_iter()
    .collect::<Result<Vec<_>, _>>()?;
    let pts: Vec<(f64, f64)> = rows.iter().map(|r| ((r.m as f64).ln(), r.lambda1.ln())).collect();
    Ok(CyclicScalingReport { slope: least_squares_slope(&pts), rows })
}

pub fn least_squares_slope(pts: &[(f64, f64)]) -> f64 {
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = pts.iter().map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = pts.iter().map(|(x, _)| (x - mx).powi(2)).sum();
    sxy / sxx
}

/// All Salem certificates in a trace box, computed in `jobs` chunks and merged.
pub fn run_salem_enumeration(half_degree: usize, height: u32, jobs: usize) -> Vec<SalemCertificate> {
    let tbox = TraceBox::new(half_degree, height);
    let ranges = tbox.partition(jobs.max(1));
    let chunks = par_map(ranges.len() as u64, jobs, |i| enumerate_salem_range(&tbox, ranges[i as usize].clone()));
    merge_enumeration(chunks)
}

/// Ramification data for one enumerated Salem number.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurveyRow {
    pub salem: SalemReport,
    pub trace_field_degree: usize,
    pub plan: Option<PlanReport>,
    pub error: Option<String>,
}

pub fn run_ramification_survey(half_degree: usize, height: u32, prime_bound: u64, jobs: usize) -> Vec<SurveyRow> {
    let certs = run_salem_enumeration(half_degree, height, jobs);
    par_map(certs.len() as u64, jobs, |i| {
        let cert = &certs[i as usize];
        let (plan, error) = match ramification_plan(cert, prime_bound) {
            Ok(plan) => (Some(PlanReport::from(&plan)), None),
            Err(e) => (None, Some(e.to_string())),
        };
        SurveyRow {
            salem: SalemReport::new(cert, crate::salem::CERTIFICATE_BITS),
            trace_field_degree: trace_field(cert).degree,
            plan,
            error,
        }
    })
}
