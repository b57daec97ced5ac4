//! Internal numeric helpers shared by the distribution and grid code.

/// Natural log of the gamma function.
pub(crate) fn ln_gamma(x: f64) -> f64 {
    libm::lgamma(x)
}

/// ln(m!) via the gamma function.
pub(crate) fn ln_factorial(m: u64) -> f64 {
    ln_gamma(m as f64 + 1.0)
}

/// ln C(n, k) for k ≤ n.
pub(crate) fn ln_choose(n: u64, k: u64) -> f64 {
    debug_assert!(k <= n);
    ln_factorial(n) - ln_factorial(k) - ln_factorial(n - k)
}

/// Max-shifted log-sum-exp over `terms`, accumulated in the order given.
///
/// Returns -inf when every term is -inf (the zero-mass case), never NaN.
pub(crate) fn log_sum_exp(terms: &[f64]) -> f64 {
    let max = terms.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if max == f64::NEG_INFINITY {
        return f64::NEG_INFINITY;
    }
    let sum: f64 = terms.iter().map(|&t| (t - max).exp()).sum();
    max + sum.ln()
}
