//! Certification and enumeration of Salem numbers.
//!
//! A monic reciprocal `P` of degree `2n` is the minimal polynomial of a Salem
//! number exactly when its trace polynomial `Q` (with `P(x) = x^n Q(x + 1/x)`)
//! has one real root above 2 and its other `n - 1` roots in `(-2, 2)`, and `P`
//! has no cyclotomic factor. Every check below is an exact Sturm count or an
//! exact gcd; floating point is only used for display.

use std::cmp::Ordering;
use std::fmt;
use std::ops::Range;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

use crate::interval::{ln_interval, parse_decimal, to_decimal, RationalInterval};
use crate::intpoly::{
    has_cyclotomic_factor, inverse_trace_transform, refine_root, root_bound, trace_transform, Endpoint, IntPolynomial,
    SturmSequence,
};

/// Precision of the enclosures stored in a fresh certificate.
pub const CERTIFICATE_BITS: u32 = 53;

/// Why a polynomial is not the minimal polynomial of a Salem number. Checks run
/// in the order: monic, even degree at least 4, reciprocal, squarefree, no
/// cyclotomic factor, totally real trace polynomial, one trace root above 2,
/// no trace root at `±2`, remaining trace roots inside `(-2, 2)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum NotSalemReason {
    NotMonic,
    OddDegree,
    DegreeTooSmall,
    NotReciprocal,
    HasCyclotomicFactor,
    RepeatedFactor,
    ComplexTraceRoot,
    NoRootBeyondTwo,
    MultipleRootsBeyondTwo,
    TraceRootAtBoundary,
    NoCircleConjugate,
}

impl fmt::Display for NotSalemReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl std::error::Error for NotSalemReason {}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SalemError {
    #[error("no Salem number in the search box")]
    NotFound,
    #[error("not a Salem polynomial: {0}")]
    NotSalem(NotSalemReason),
    #[error("malformed certificate report: {0}")]
    BadReport(String),
}

/// Verified evidence that `p` is the minimal polynomial of the Salem number
/// enclosed by `tau`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SalemCertificate {
    p: IntPolynomial,
    q: IntPolynomial,
    tau: RationalInterval,
    s0: RationalInterval,
    circle_root_count: usize,
}

impl SalemCertificate {
    pub fn p(&self) -> &IntPolynomial {
        &self.p
    }

    /// Trace polynomial, the minimal polynomial of `s0 = tau + 1/tau`.
    pub fn q(&self) -> &IntPolynomial {
        &self.q
    }

    pub fn tau_interval(&self) -> &RationalInterval {
        &self.tau
    }

    pub fn s0_interval(&self) -> &RationalInterval {
        &self.s0
    }

    /// Roots of `Q` in `(-2, 2)`, i.e. conjugate pairs of `tau` on the unit circle.
    pub fn circle_root_count(&self) -> usize {
        self.circle_root_count
    }

    /// Half the degree of `P`.
    pub fn half_degree(&self) -> usize {
        self.q.degree()
    }

    pub fn tau_f64(&self) -> f64 {
        self.tau.midpoint_f64()
    }

    /// Re-checks the stored enclosures against `P` and `Q`: both isolate the
    /// right root, `|P(m)| < |P'(m)| * width` at the midpoint, and `s0`
    /// meets the image of `tau` under `t + 1/t`.
    pub fn check_enclosures(&self) -> bool {
        let one = BigRational::one();
        let two = BigRational::from_integer(2.into());
        if self.tau.lo() <= &one || self.s0.lo() <= &two {
            return false;
        }
        let brackets = |poly: &IntPolynomial, iv: &RationalInterval| {
            let (a, b) = (poly.sign_at(iv.lo()), poly.sign_at(iv.hi()));
            a != Ordering::Equal && b != Ordering::Equal && a != b
        };
        if !brackets(&self.p, &self.tau) || !brackets(&self.q, &self.s0) {
            return false;
        }
        let m = self.tau.midpoint();
        let residual = self.p.eval_rational(&m).abs();
        let slope = self.p.derivative().eval_rational(&m).abs();
        if residual >= slope * self.tau.width() {
            return false;
        }
        let image =
            RationalInterval::new(self.tau.lo() + one.clone() / self.tau.lo(), self.tau.hi() + one / self.tau.hi())
                .expect("t + 1/t is increasing on t > 1");
        image.intersects(&self.s0)
    }
}

fn count(sturm: &SturmSequence, a: Endpoint, b: Endpoint) -> usize {
    sturm.count(&a, &b)
}

/// Runs the certification pipeline on an arbitrary integer polynomial.
pub fn certify_salem(p: &IntPolynomial) -> Result<SalemCertificate, NotSalemReason> {
    use NotSalemReason::*;
    if !p.is_monic() {
        return Err(NotMonic);
    }
    if p.degree() % 2 == 1 {
        return Err(OddDegree);
    }
    if p.degree() < 4 {
        return Err(DegreeTooSmall);
    }
    if !p.is_reciprocal() {
        return Err(NotReciprocal);
    }
    if !p.is_squarefree() {
        return Err(RepeatedFactor);
    }
    if has_cyclotomic_factor(p) {
        return Err(HasCyclotomicFactor);
    }
    let q = trace_transform(p).expect("monic reciprocal even degree");
    let n = q.degree();
    let sturm = SturmSequence::new(&q);
    if count(&sturm, Endpoint::NegInfinity, Endpoint::PosInfinity) != n {
        return Err(ComplexTraceRoot);
    }
    let two = BigRational::from_integer(2.into());
    if q.sign_at(&two) == Ordering::Equal || q.sign_at(&-two.clone()) == Ordering::Equal {
        return Err(TraceRootAtBoundary);
    }
    match count(&sturm, Endpoint::Finite(two.clone()), Endpoint::PosInfinity) {
        0 => return Err(NoRootBeyondTwo),
        1 => {}
        _ => return Err(MultipleRootsBeyondTwo),
    }
    let inside = count(&sturm, Endpoint::Finite(-two.clone()), Endpoint::Finite(two.clone()));
    if inside != n - 1 {
        return Err(NoCircleConjugate);
    }

    let s0_box = RationalInterval::new(two, root_bound(&q)).expect("bound exceeds 2");
    let s0 = refine_root(&q, &s0_box, CERTIFICATE_BITS).expect("single trace root above 2");
    let tau_box = RationalInterval::new(BigRational::one(), root_bound(p)).expect("bound exceeds 1");
    let tau = refine_root(p, &tau_box, CERTIFICATE_BITS).expect("single root of P above 1");
    Ok(SalemCertificate { p: p.clone(), q, tau, s0, circle_root_count: inside })
}

/// Dyadic enclosure of `tau` with width at most `2^-bits`, nested inside the
/// certificate's own enclosure.
pub fn tau_approx(cert: &SalemCertificate, bits: u32) -> RationalInterval {
    refine_root(&cert.p, &cert.tau, bits).expect("certificate interval isolates tau")
}

/// Enclosure of `ln tau` of width at most `2^-bits`.
pub fn log_tau(cert: &SalemCertificate, bits: u32) -> RationalInterval {
    let guard = bits + 3;
    ln_interval(&tau_approx(cert, guard), guard).expect("tau > 1")
}

/// Enclosure of the closed-geodesic length `2 ln tau`, width at most `2^-bits`.
pub fn geodesic_length(cert: &SalemCertificate, bits: u32) -> RationalInterval {
    log_tau(cert, bits + 1).scale(&BigRational::from_integer(2.into()))
}

/// `2 ln` applied to an arbitrary positive enclosure; the width grows by at
/// most `2^-bits` beyond the exact image.
pub fn geodesic_length_of_interval(tau: &RationalInterval, bits: u32) -> RationalInterval {
    ln_interval(tau, bits + 1).expect("positive interval").scale(&BigRational::from_integer(2.into()))
}

/// The box of monic trace polynomials of degree `n` with lower coefficients in
/// `[-height, height]`, indexed in lexicographic order of the coefficient
/// vector (constant term most significant).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TraceBox {
    pub half_degree: usize,
    pub height: u32,
}

impl TraceBox {
    pub fn new(half_degree: usize, height: u32) -> Self {
        Self { half_degree, height }
    }

    pub fn len(&self) -> u64 {
        u64::from(2 * self.height + 1).pow(self.half_degree as u32)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn coeffs_at(&self, mut index: u64) -> Vec<i64> {
        let radix = u64::from(2 * self.height + 1);
        let mut c = vec![0i64; self.half_degree + 1];
        c[self.half_degree] = 1;
        for slot in (0..self.half_degree).rev() {
            c[slot] = (index % radix) as i64 - i64::from(self.height);
            index /= radix;
        }
        c
    }

    pub fn polynomial_at(&self, index: u64) -> IntPolynomial {
        IntPolynomial::from_i64s(&self.coeffs_at(index))
    }

    /// Splits the index range into `parts` contiguous chunks.
    pub fn partition(&self, parts: usize) -> Vec<Range<u64>> {
        let parts = parts.max(1) as u64;
        let len = self.len();
        (0..parts).map(|i| (len * i / parts)..(len * (i + 1) / parts)).filter(|r| !r.is_empty()).collect()
    }
}

/// `Q(2) < 0` and `sign Q(-2) = (-1)^n` are necessary for the Salem pattern.
fn passes_sign_prefilter(q: &IntPolynomial) -> bool {
    let two = BigInt::from(2);
    let at_two = q.eval(&two);
    let at_minus_two = q.eval(&-two);
    let want_minus = if q.degree().is_multiple_of(2) { Ordering::Greater } else { Ordering::Less };
    at_two.is_negative() && at_minus_two.cmp(&BigInt::from(0)) == want_minus
}

/// Certificates for the trace polynomials with box index in `range`, in index order.
pub fn enumerate_salem_range(tbox: &TraceBox, range: Range<u64>) -> Vec<SalemCertificate> {
    range
        .filter_map(|i| {
            let q = tbox.polynomial_at(i);
            if !passes_sign_prefilter(&q) {
                return None;
            }
            let p = inverse_trace_transform(&q).expect("monic");
            certify_salem(&p).ok()
        })
        .collect()
}

/// Every Salem certificate whose trace polynomial has degree `n` and lower
/// coefficients bounded by `height`, ordered lexicographically by `Q`.
pub fn enumerate_salem(n: usize, height: u32) -> Vec<SalemCertificate> {
    let tbox = TraceBox::new(n, height);
    enumerate_salem_range(&tbox, 0..tbox.len())
}

/// Merges chunk outputs from a partitioned run back into serial order.
pub fn merge_enumeration(chunks: Vec<Vec<SalemCertificate>>) -> Vec<SalemCertificate> {
    let mut all: Vec<_> = chunks.into_iter().flatten().collect();
    all.sort_by_key(trace_key);
    all.dedup_by(|a, b| a.q == b.q);
    all
}

fn trace_key(c: &SalemCertificate) -> Vec<BigInt> {
    c.q.coeffs().to_vec()
}

/// Orders two certificates by their Salem numbers, refining the enclosures
/// until they separate.
pub fn compare_tau(a: &SalemCertificate, b: &SalemCertificate) -> Ordering {
    if a.p == b.p {
        return Ordering::Equal;
    }
    let mut bits = CERTIFICATE_BITS;
    let (mut ia, mut ib) = (a.tau.clone(), b.tau.clone());
    loop {
        if ia.hi() < ib.lo() {
            return Ordering::Less;
        }
        if ib.hi() < ia.lo() {
            return Ordering::Greater;
        }
        bits = if bits < 128 { 128 } else { bits * 2 };
        ia = tau_approx(a, bits);
        ib = tau_approx(b, bits);
    }
}

pub fn smallest_salem(n: usize, height: u32) -> Result<SalemCertificate, SalemError> {
    smallest_of(enumerate_salem(n, height))
}

pub fn smallest_of(certs: Vec<SalemCertificate>) -> Result<SalemCertificate, SalemError> {
    certs.into_iter().min_by(compare_tau).ok_or(SalemError::NotFound)
}

/// Serialized certificate: polynomials in the comma coefficient format and
/// enclosure endpoints as exact decimal expansions of dyadic rationals.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SalemReport {
    pub p: String,
    pub q: String,
    pub tau_lo: String,
    pub tau_hi: String,
    pub s0_lo: String,
    pub s0_hi: String,
    pub geodesic_lo: String,
    pub geodesic_hi: String,
}

impl SalemReport {
    pub fn new(cert: &SalemCertificate, geodesic_bits: u32) -> Self {
        let g = geodesic_length(cert, geodesic_bits);
        let dec = |x: &BigRational| to_decimal(x).expect("dyadic endpoint");
        Self {
            p: cert.p.to_coeff_string(),
            q: cert.q.to_coeff_string(),
            tau_lo: dec(cert.tau.lo()),
            tau_hi: dec(cert.tau.hi()),
            s0_lo: dec(cert.s0.lo()),
            s0_hi: dec(cert.s0.hi()),
            geodesic_lo: dec(g.lo()),
            geodesic_hi: dec(g.hi()),
        }
    }

    /// Rebuilds and re-verifies the certificate described by the report.
    pub fn to_certificate(&self) -> Result<SalemCertificate, SalemError> {
        let bad = |e: &dyn fmt::Display| SalemError::BadReport(e.to_string());
        let p: IntPolynomial = self.p.parse().map_err(|e| bad(&e))?;
        let q: IntPolynomial = self.q.parse().map_err(|e| bad(&e))?;
        let iv = |lo: &str, hi: &str| -> Result<RationalInterval, SalemError> {
            let lo = parse_decimal(lo).map_err(|e| bad(&e))?;
            let hi = parse_decimal(hi).map_err(|e| bad(&e))?;
            RationalInterval::new(lo, hi).map_err(|e| bad(&e))
        };
        let fresh = certify_salem(&p).map_err(SalemError::NotSalem)?;
        if fresh.q != q {
            return Err(SalemError::BadReport("trace polynomial does not match p".into()));
        }
        let cert = SalemCertificate {
            p,
            q,
            tau: iv(&self.tau_lo, &self.tau_hi)?,
            s0: iv(&self.s0_lo, &self.s0_hi)?,
            circle_root_count: fresh.circle_root_count,
        };
        if !cert.check_enclosures() {
            return Err(SalemError::BadReport("enclosures do not verify".into()));
        }
        Ok(cert)
    }
}
