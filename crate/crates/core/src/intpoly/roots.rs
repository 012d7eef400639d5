//! Sturm sequences, real-root isolation and bisection refinement.

use std::cmp::Ordering;

use num_rational::BigRational;
use num_traits::{One, Signed};

use super::{IntPolynomial, PolyError};
use crate::interval::{dyadic_ceil, dyadic_floor, pow2, RationalInterval};

/// An endpoint of a root-counting range.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Endpoint {
    NegInfinity,
    Finite(BigRational),
    PosInfinity,
}

impl Endpoint {
    pub fn int(v: i64) -> Self {
        Endpoint::Finite(BigRational::from_integer(v.into()))
    }

    fn rank(&self) -> u8 {
        match self {
            Endpoint::NegInfinity => 0,
            Endpoint::Finite(_) => 1,
            Endpoint::PosInfinity => 2,
        }
    }

    fn less_than(&self, other: &Self) -> bool {
        match (self, other) {
            (Endpoint::Finite(a), Endpoint::Finite(b)) => a < b,
            _ => self.rank() < other.rank(),
        }
    }
}

impl From<BigRational> for Endpoint {
    fn from(r: BigRational) -> Self {
        Endpoint::Finite(r)
    }
}

/// The Sturm chain `p0 = P`, `p1 = P'`, `p_{k+1} = -rem(p_{k-1}, p_k)`, kept
/// primitive. Only positive scalings are applied so sign patterns survive.
#[derive(Debug, Clone)]
pub struct SturmSequence {
    chain: Vec<IntPolynomial>,
}

impl SturmSequence {
    pub fn new(p: &IntPolynomial) -> Self {
        let mut chain = vec![p.clone()];
        let d = p.derivative();
        if d.is_zero() {
            return Self { chain };
        }
        chain.push(d);
        loop {
            let a = &chain[chain.len() - 2];
            let b = &chain[chain.len() - 1];
            let mut r = a.pseudo_rem(b);
            let delta = a.degree() - b.degree() + 1;
            if b.leading().is_negative() && delta % 2 == 1 {
                r = -&r;
            }
            if r.is_zero() {
                break;
            }
            let g = r.content();
            let next = IntPolynomial::new(r.coeffs().iter().map(|c| -(c / &g)).collect());
            chain.push(next);
        }
        Self { chain }
    }

    pub fn polynomials(&self) -> &[IntPolynomial] {
        &self.chain
    }

    fn signs_at(&self, at: &Endpoint) -> Vec<Ordering> {
        self.chain
            .iter()
            .map(|q| match at {
                Endpoint::NegInfinity => q.sign_at_infinity(false),
                Endpoint::PosInfinity => q.sign_at_infinity(true),
                Endpoint::Finite(x) => q.sign_at(x),
            })
            .collect()
    }

    pub fn variations(&self, at: &Endpoint) -> usize {
        let signs: Vec<_> = self.signs_at(at).into_iter().filter(|s| *s != Ordering::Equal).collect();
        signs.windows(2).filter(|w| w[0] != w[1]).count()
    }

    /// Distinct real roots in the open interval; endpoints must not be roots.
    pub fn count(&self, a: &Endpoint, b: &Endpoint) -> usize {
        self.variations(a).saturating_sub(self.variations(b))
    }
}

fn check_range(p: &IntPolynomial, a: &Endpoint, b: &Endpoint) -> Result<(), PolyError> {
    if p.is_zero() {
        return Err(PolyError::ZeroPolynomial);
    }
    if !a.less_than(b) {
        return Err(PolyError::EmptyInterval);
    }
    for e in [a, b] {
        if let Endpoint::Finite(x) = e {
            if p.sign_at(x) == Ordering::Equal {
                return Err(PolyError::EndpointIsRoot(x.to_string()));
            }
        }
    }
    Ok(())
}

/// Exact number of distinct real roots of `p` in the open interval `(a, b)`.
pub fn sturm_count(p: &IntPolynomial, a: &Endpoint, b: &Endpoint) -> Result<usize, PolyError> {
    check_range(p, a, b)?;
    Ok(SturmSequence::new(p).count(a, b))
}

/// A power of two strictly larger than the modulus of every complex root
/// (Cauchy bound `1 + max |c_i / c_n|`).
pub fn root_bound(p: &IntPolynomial) -> BigRational {
    let lc = p.leading().abs();
    let max = p.coeffs()[..p.degree()].iter().map(|c| c.abs()).max().unwrap_or_default();
    let cauchy = BigRational::one() + BigRational::new(max, lc);
    let mut b = BigRational::one();
    while b <= cauchy {
        b *= BigRational::from_integer(2.into());
    }
    b
}

/// A point strictly inside `(lo, hi)` where `p` does not vanish, as close to
/// the midpoint as the dyadic grid allows.
fn split_point(p: &IntPolynomial, lo: &BigRational, hi: &BigRational) -> BigRational {
    let two = BigRational::from_integer(2.into());
    let mid = (lo + hi) / &two;
    if p.sign_at(&mid) != Ordering::Equal {
        return mid;
    }
    let mut step = (hi - lo) / BigRational::from_integer(8.into());
    loop {
        for cand in [&mid + &step, &mid - &step] {
            if p.sign_at(&cand) != Ordering::Equal {
                return cand;
            }
        }
        step /= &two;
    }
}

/// Pairwise-disjoint isolating intervals, sorted ascending, each containing
/// exactly one root of `p` in `(a, b)`. Infinite endpoints are replaced by a
/// dyadic root bound. The polynomial is made squarefree first.
pub fn isolate_real_roots(p: &IntPolynomial, a: &Endpoint, b: &Endpoint) -> Result<Vec<RationalInterval>, PolyError> {
    check_range(p, a, b)?;
    let sq = p.squarefree_part();
    let sturm = SturmSequence::new(&sq);
    let bound = root_bound(&sq);
    let lo = match a {
        Endpoint::Finite(x) => x.clone(),
        _ => -bound.clone(),
    };
    let hi = match b {
        Endpoint::Finite(x) => x.clone(),
        _ => bound,
    };
    let mut out = Vec::new();
    let mut stack = vec![(lo, hi)];
    while let Some((lo, hi)) = stack.pop() {
        let n = sturm.count(&Endpoint::Finite(lo.clone()), &Endpoint::Finite(hi.clone()));
        match n {
            0 => {}
            1 => out.push(RationalInterval::new(lo, hi).expect("ordered")),
            _ => {
                let m = split_point(&sq, &lo, &hi);
                stack.push((m.clone(), hi));
                stack.push((lo, m));
            }
        }
    }
    out.sort_by(|x, y| x.lo().cmp(y.lo()));
    Ok(out)
}

/// Shrinks an isolating interval of a simple root to width `<= 2^-bits`
/// with dyadic endpoints.
pub fn refine_root(p: &IntPolynomial, iv: &RationalInterval, bits: u32) -> Result<RationalInterval, PolyError> {
    let (mut lo, mut hi) = (iv.lo().clone(), iv.hi().clone());
    if p.is_zero() || lo >= hi {
        return Err(PolyError::NotIsolating);
    }
    let s_lo = p.sign_at(&lo);
    let s_hi = p.sign_at(&hi);
    if s_lo == Ordering::Equal || s_hi == Ordering::Equal || s_lo == s_hi {
        return Err(PolyError::NotIsolating);
    }
    let sturm = SturmSequence::new(p);
    let count =
        |l: &BigRational, h: &BigRational| sturm.count(&Endpoint::Finite(l.clone()), &Endpoint::Finite(h.clone()));
    if count(&lo, &hi) != 1 {
        return Err(PolyError::NotIsolating);
    }
    let target = pow2(-(i64::from(bits) + 1));
    let two = BigRational::from_integer(2.into());
    while &hi - &lo > target {
        let mid = (&lo + &hi) / &two;
        match p.sign_at(&mid) {
            Ordering::Equal => {
                // Exact rational root: shrink a symmetric window around it.
                let mut delta = target.clone() / &two;
                loop {
                    let (l, h) = (&mid - &delta, &mid + &delta);
                    if p.sign_at(&l) != Ordering::Equal && p.sign_at(&h) != Ordering::Equal && count(&l, &h) == 1 {
                        lo = l;
                        hi = h;
                        break;
                    }
                    delta /= &two;
                }
                break;
            }
            s if s == s_lo => lo = mid,
            _ => hi = mid,
        }
    }
    // Snap inward onto a dyadic grid; the root is interior, so a fine enough
    // grid always leaves it bracketed.
    let mut k = i64::from(bits) + 2;
    loop {
        let l = dyadic_ceil(&lo, k);
        let h = dyadic_floor(&hi, k);
        if l < h && p.sign_at(&l) == s_lo && p.sign_at(&h) == s_hi {
            return Ok(RationalInterval::new(l, h).expect("ordered"));
        }
        k += 1;
    }
}
