//! Arithmetic data attached to a Salem number: its trace field
//! `k0 = Q(tau + 1/tau)` and the ramification set of a quaternion algebra over
//! `k0` into which `Q(tau)` embeds.
//!
//! Only degree-one primes of `k0` are searched: a root `a` of `Q` modulo an odd
//! prime `p` (with `p` not dividing the discriminant) gives a prime of residue
//! field `F_p`, and since `tau^2 - s0 tau + 1 = 0` that prime is inert in
//! `k0(tau)` exactly when `a^2 - 4` is a non-residue mod `p`.

use num_bigint::BigInt;
use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::interval::RationalInterval;
use crate::intpoly::{Endpoint, IntPolynomial, SturmSequence};
use crate::salem::SalemCertificate;

/// Default upper bound for the finite-prime search.
pub const DEFAULT_PRIME_BOUND: u64 = 10_000;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ArithError {
    #[error("no suitable prime up to {bound}")]
    NotFound { bound: u64 },
}

/// The totally real field `k0` generated by `s0 = tau + 1/tau`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceFieldData {
    pub q: IntPolynomial,
    pub degree: usize,
    pub totally_real: bool,
    pub s0_interval: RationalInterval,
    pub disc_q: BigInt,
}

pub fn trace_field(cert: &SalemCertificate) -> TraceFieldData {
    let q = cert.q().clone();
    let degree = q.degree();
    let real_roots = SturmSequence::new(&q).count(&Endpoint::NegInfinity, &Endpoint::PosInfinity);
    TraceFieldData {
        disc_q: q.discriminant(),
        totally_real: real_roots == degree,
        s0_interval: cert.s0_interval().clone(),
        degree,
        q,
    }
}

/// Legendre symbol `(n / p)` for an odd prime `p`, by Euler's criterion.
pub fn legendre(n: &BigInt, p: u64) -> i8 {
    let r = n.mod_floor(&BigInt::from(p));
    let r = u64::try_from(r).expect("reduced below p");
    match mod_pow(r, (p - 1) / 2, p) {
        0 => 0,
        1 => 1,
        _ => -1,
    }
}

fn mod_pow(base: u64, mut exp: u64, m: u64) -> u64 {
    let m128 = u128::from(m);
    let mut acc: u128 = 1 % m128;
    let mut b = u128::from(base % m);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m128;
        }
        b = b * b % m128;
        exp >>= 1;
    }
    acc as u64
}

/// Odd primes up to `bound`, ascending.
pub fn odd_primes(bound: u64) -> Vec<u64> {
    if bound < 3 {
        return Vec::new();
    }
    let n = bound as usize;
    let mut sieve = vec![true; n + 1];
    sieve[0] = false;
    sieve[1] = false;
    let mut i = 2;
    while i * i <= n {
        if sieve[i] {
            for j in (i * i..=n).step_by(i) {
                sieve[j] = false;
            }
        }
        i += 1;
    }
    (3..=n).filter(|&k| sieve[k]).map(|k| k as u64).collect()
}

/// A degree-one prime `(p, a)`: `p` odd, `Q(a) = 0 mod p`, `0 <= a < p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DegreeOnePrime {
    pub p: u64,
    pub a: u64,
}

/// Lexicographically smallest degree-one prime `(p, a)` with `p <= bound`,
/// `p` not dividing `disc_q`, accepted by `accept(p, a)`.
fn first_degree_one_prime(
    tf: &TraceFieldData,
    bound: u64,
    accept: impl Fn(u64, u64) -> bool,
) -> Result<DegreeOnePrime, ArithError> {
    for p in odd_primes(bound) {
        if (&tf.disc_q % BigInt::from(p)) == BigInt::from(0) {
            continue;
        }
        for a in 0..p {
            if tf.q.eval_mod(a, p) == 0 && accept(p, a) {
                return Ok(DegreeOnePrime { p, a });
            }
        }
    }
    Err(ArithError::NotFound { bound })
}

/// Smallest degree-one prime of `k0` that is inert in `k0(tau) = k0(sqrt(s0^2 - 4))`.
pub fn find_inert_prime(tf: &TraceFieldData, bound: u64) -> Result<DegreeOnePrime, ArithError> {
    first_degree_one_prime(tf, bound, |p, a| {
        let delta = BigInt::from(a) * a - 4;
        legendre(&delta, p) == -1
    })
}

/// Smallest degree-one prime of `k0` at which `delta(s0)` is a nonzero square,
/// i.e. which splits in `k0(sqrt(delta(s0)))`.
pub fn find_split_prime(tf: &TraceFieldData, delta: &IntPolynomial, bound: u64) -> Result<DegreeOnePrime, ArithError> {
    first_degree_one_prime(tf, bound, |p, a| {
        let value = BigInt::from(delta.eval_mod(a, p));
        legendre(&value, p) == 1
    })
}

/// Orders `n` of possible torsion in the norm-one group: `2cos(2pi/n)` must lie
/// in `k0`, forcing `phi(n) <= 2 [k0 : Q]`.
pub fn torsion_order_candidates(degree: usize) -> Vec<usize> {
    let bound = 2 * degree;
    let limit = (2 * bound * bound).max(2);
    let phi = crate::intpoly::totient_table(limit);
    (1..=limit).filter(|&n| phi[n] <= bound).collect()
}

/// The ramification set: every real place of `k0` except the defining one,
/// plus one inert finite prime when that count is odd.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RamificationPlan {
    pub archimedean_count: usize,
    pub finite_prime: Option<DegreeOnePrime>,
    pub delta_residue: Option<u64>,
    pub parity_ok: bool,
}

impl RamificationPlan {
    pub fn cardinality(&self) -> usize {
        self.archimedean_count + usize::from(self.finite_prime.is_some())
    }
}

pub fn ramification_plan(cert: &SalemCertificate, bound: u64) -> Result<RamificationPlan, ArithError> {
    let tf = trace_field(cert);
    let archimedean_count = tf.degree - 1;
    let finite_prime = if tf.degree.is_multiple_of(2) { Some(find_inert_prime(&tf, bound)?) } else { None };
    let delta_residue = finite_prime.map(|DegreeOnePrime { p, a }| {
        let d: BigInt = (BigInt::from(a) * a - 4i32).mod_floor(&BigInt::from(p));
        u64::try_from(d).expect("reduced below p")
    });
    let mut plan = RamificationPlan { archimedean_count, finite_prime, delta_residue, parity_ok: false };
    plan.parity_ok = plan.cardinality().is_multiple_of(2);
    Ok(plan)
}

/// JSON form of a [`RamificationPlan`]; integers are decimal strings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlanReport {
    pub archimedean_count: String,
    pub finite_prime: Option<PrimeReport>,
    pub delta_residue: Option<String>,
    pub parity_ok: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeReport {
    pub p: String,
    pub a: String,
}

impl From<DegreeOnePrime> for PrimeReport {
    fn from(fp: DegreeOnePrime) -> Self {
        Self { p: fp.p.to_string(), a: fp.a.to_string() }
    }
}

impl TryFrom<&PrimeReport> for DegreeOnePrime {
    type Error = std::num::ParseIntError;

    fn try_from(r: &PrimeReport) -> Result<Self, Self::Error> {
        Ok(Self { p: r.p.parse()?, a: r.a.parse()? })
    }
}

impl From<&RamificationPlan> for PlanReport {
    fn from(plan: &RamificationPlan) -> Self {
        Self {
            archimedean_count: plan.archimedean_count.to_string(),
            finite_prime: plan.finite_prime.map(Into::into),
            delta_residue: plan.delta_residue.map(|d| d.to_string()),
            parity_ok: plan.parity_ok,
        }
    }
}

impl TryFrom<&PlanReport> for RamificationPlan {
    type Error = std::num::ParseIntError;

    fn try_from(r: &PlanReport) -> Result<Self, Self::Error> {
        Ok(Self {
            archimedean_count: r.archimedean_count.parse()?,
            finite_prime: r.finite_prime.as_ref().map(TryInto::try_into).transpose()?,
            delta_residue: r.delta_residue.as_ref().map(|d| d.parse()).transpose()?,
            parity_ok: r.parity_ok,
        })
    }
}
