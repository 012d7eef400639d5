//! Detection of cyclotomic factors by a finite gcd sweep against `x^m - 1`.

use super::IntPolynomial;

/// Euler's totient for `0..=limit` by a sieve (`phi[0] = 0`).
pub fn totient_table(limit: usize) -> Vec<usize> {
    let mut phi: Vec<usize> = (0..=limit).collect();
    for i in 2..=limit {
        if phi[i] == i {
            for j in (i..=limit).step_by(i) {
                phi[j] -= phi[j] / i;
            }
        }
    }
    phi
}

/// Orders `m` with `phi(m) <= d`. Since `phi(m) >= sqrt(m/2)`, every such
/// `m` is at most `2 d^2`.
fn candidate_orders(d: usize) -> impl Iterator<Item = usize> {
    let limit = (2 * d * d).max(2);
    let phi = totient_table(limit);
    (1..=limit).filter(move |&m| phi[m] <= d)
}

/// Smallest `m` such that `P` shares a factor with `x^m - 1`, if any.
pub fn cyclotomic_factor_order(p: &IntPolynomial) -> Option<usize> {
    if p.degree() == 0 {
        return None;
    }
    candidate_orders(p.degree()).find(|&m| p.gcd(&IntPolynomial::x_pow_minus_one(m)).degree() > 0)
}

/// True iff `P` is divisible by some cyclotomic polynomial.
pub fn has_cyclotomic_factor(p: &IntPolynomial) -> bool {
    cyclotomic_factor_order(p).is_some()
}
