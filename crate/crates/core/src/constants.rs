//! Named thresholds used by the experiments.

/// Uniform lower bound on the first eigenvalue of congruence arithmetic
/// 2-orbifolds.
pub const SELBERG_LOWER: f64 = 3.0 / 16.0;

/// `sqrt(3) / 16`: the two-cover constant combined with `SELBERG_LOWER`.
pub const RAMA_COEFF: f64 = 0.108_253_175_473_054_83;

/// Constant in `lambda1(M') >= THEOREM_CONST * sqrt(lambda1(M)) * h(M')`.
pub const THEOREM_CONST: f64 = 0.25;
