//! Browser bindings for the salemlab demo page. Each exported function takes
//! plain strings or numbers and returns a JSON document; the `*_json`
//! functions hold the logic and are callable from native code.

use serde::Serialize;
use wasm_bindgen::prelude::*;

use salemlab_core::arith::{ramification_plan, PlanReport, DEFAULT_PRIME_BOUND};
use salemlab_core::experiment::{run_cyclic_scaling, CyclicScalingRow};
use salemlab_core::salem::{certify_salem, SalemReport};
use salemlab_core::spectral::{parse_graph, proof_chain_check, verify_two_cover_bound, ChainLedger, ProofChainTrace};
use salemlab_core::IntPolynomial;

/// Largest geodesic precision the page may request.
pub const MAX_BITS: u32 = 1024;

/// Largest cover degree plotted by the page.
pub const MAX_CYCLIC_M: usize = 128;

/// Largest base graph accepted for a two-cover trace.
pub const MAX_BASE_VERTICES: usize = 200;

#[derive(Serialize)]
struct CertifyResponse {
    salem: bool,
    reason: Option<String>,
    report: Option<SalemReport>,
    tau: Option<f64>,
    geodesic: Option<f64>,
    plan: Option<PlanReport>,
}

#[derive(Serialize)]
struct CurveResponse {
    rows: Vec<CyclicScalingRow>,
    slope: f64,
}

#[derive(Serialize)]
struct TraceResponse {
    trace: ProofChainTrace,
    ledger: Option<ChainLedger>,
}

fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("response types serialize")
}

/// Certifies `coeffs` (`c0,c1,...` or `x^4 - x^3 - ...`) and encloses the
/// geodesic length `2 ln tau` to `bits` bits.
pub fn certify_json(coeffs: &str, bits: u32) -> Result<String, String> {
    if bits == 0 || bits > MAX_BITS {
        return Err(format!("bits must lie in 1..={MAX_BITS}"));
    }
    let p: IntPolynomial = coeffs.parse().map_err(|e| format!("{e}"))?;
    let response = match certify_salem(&p) {
        Ok(cert) => {
            let report = SalemReport::new(&cert, bits);
            let geodesic = report.geodesic_lo.parse::<f64>().ok();
            CertifyResponse {
                salem: true,
                reason: None,
                tau: Some(cert.tau_f64()),
                geodesic,
                plan: ramification_plan(&cert, DEFAULT_PRIME_BOUND).ok().map(|p| PlanReport::from(&p)),
                report: Some(report),
            }
        }
        Err(reason) => CertifyResponse {
            salem: false,
            reason: Some(format!("{reason:?}")),
            report: None,
            tau: None,
            geodesic: None,
            plan: None,
        },
    };
    Ok(to_json(&response))
}

/// First eigenvalue of the `m`-fold cyclic cover of the triangle for
/// `m_min..=m_max`, with the closed form and the log-log slope.
pub fn cyclic_curve_json(m_min: usize, m_max: usize) -> Result<String, String> {
    if m_min < 2 || m_min >= m_max || m_max > MAX_CYCLIC_M {
        return Err(format!("need 2 <= m_min < m_max <= {MAX_CYCLIC_M}"));
    }
    let ms: Vec<usize> = (m_min..=m_max).collect();
    let report = run_cyclic_scaling(&ms, 1).map_err(|e| e.to_string())?;
    Ok(to_json(&CurveResponse { rows: report.rows, slope: report.slope }))
}

/// Proof-chain trace of the signed double cover of a graph in the text
/// format (`n m` header, then `u v w [sign]` lines).
pub fn two_cover_json(graph: &str) -> Result<String, String> {
    let (g, s) = parse_graph(graph).map_err(|e| e.to_string())?;
    if g.vertex_count() > MAX_BASE_VERTICES {
        return Err(format!("at most {MAX_BASE_VERTICES} vertices"));
    }
    let trace = verify_two_cover_bound(&g, &s).map_err(|e| e.to_string())?;
    let ledger = if trace.vacuous { None } else { Some(proof_chain_check(&trace).map_err(|e| e.to_string())?) };
    Ok(to_json(&TraceResponse { trace, ledger }))
}

#[wasm_bindgen]
pub fn certify(coeffs: &str, bits: u32) -> Result<String, JsError> {
    certify_json(coeffs, bits).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn cyclic_curve(m_min: usize, m_max: usize) -> Result<String, JsError> {
    cyclic_curve_json(m_min, m_max).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn two_cover(graph: &str) -> Result<String, JsError> {
    two_cover_json(graph).map_err(|e| JsError::new(&e))
}
