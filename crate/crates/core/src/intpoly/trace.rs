//! The substitution `s = x + 1/x` between reciprocal polynomials of degree `2n`
//! and polynomials of degree `n`.
//!
//! Both directions go through the Chebyshev-like basis `T_k(s) = x^k + x^-k`,
//! `T_0 = 1` (counted once), `T_1 = s`, `T_{k+1} = s T_k - T_{k-1}` (with the
//! recurrence seeded by `x^0 + x^0 = 2`).

use num_bigint::BigInt;
use num_traits::Zero;

use super::{IntPolynomial, PolyError};

/// `x^k + x^-k` as a polynomial in `s`, for `k = 0..=n` (index 0 holds the
/// doubled constant `2`).
fn power_sum_basis(n: usize) -> Vec<IntPolynomial> {
    let s = IntPolynomial::monomial(1);
    let mut basis = vec![IntPolynomial::constant(2)];
    if n >= 1 {
        basis.push(s.clone());
    }
    for k in 2..=n {
        let next = &(&s * &basis[k - 1]) - &basis[k - 2];
        basis.push(next);
    }
    basis
}

/// Returns `Q` with `P(x) = x^n Q(x + 1/x)` for monic reciprocal `P` of
/// degree `2n`.
pub fn trace_transform(p: &IntPolynomial) -> Result<IntPolynomial, PolyError> {
    if p.is_zero() {
        return Err(PolyError::ZeroPolynomial);
    }
    if p.degree() % 2 == 1 {
        return Err(PolyError::OddDegree);
    }
    if !p.is_reciprocal() {
        return Err(PolyError::NotReciprocal);
    }
    if !p.is_monic() {
        return Err(PolyError::NotMonic);
    }
    let n = p.degree() / 2;
    let basis = power_sum_basis(n);
    let mut q = IntPolynomial::constant(p.coeff(n));
    for (k, t_k) in basis.iter().enumerate().skip(1) {
        q = &q + &t_k.scale(&p.coeff(n + k));
    }
    Ok(q)
}

/// Returns the monic reciprocal `P(x) = x^n Q(x + 1/x)` of degree `2n`.
pub fn inverse_trace_transform(q: &IntPolynomial) -> Result<IntPolynomial, PolyError> {
    if q.is_zero() {
        return Err(PolyError::ZeroPolynomial);
    }
    if !q.is_monic() {
        return Err(PolyError::NotMonic);
    }
    let n = q.degree();
    let basis = power_sum_basis(n);
    let mut rest = q.clone();
    let mut p = vec![BigInt::zero(); 2 * n + 1];
    for k in (1..=n).rev() {
        let c = rest.coeff(k);
        if !c.is_zero() {
            rest = &rest - &basis[k].scale(&c);
        }
        p[n + k] = c.clone();
        p[n - k] = c;
    }
    p[n] = rest.coeff(0);
    Ok(IntPolynomial::new(p))
}
