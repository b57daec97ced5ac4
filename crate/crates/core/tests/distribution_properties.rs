//! Property tests for the distribution families: normalization, moment
//! consistency, log-domain agreement, and the Poisson-approximation bound.

use bdt_core::distributions::{
    poisson_approx_tv, Binomial, DiscreteUniform, NegativeBinomial, Poisson,
};
use proptest::prelude::*;

/// Truncation point for the negative binomial: far enough past the mean
/// that the remaining geometric-rate tail is negligible.
fn negbinom_cutoff(kappa: u64, p: f64) -> u64 {
    let mean = kappa as f64 * (1.0 - p) / p;
    let std = (kappa as f64 * (1.0 - p)).sqrt() / p;
    (mean + 30.0 * std).ceil() as u64 + 50
}

proptest! {
    #[test]
    fn uniform_pmf_normalizes(m_max in 1u64..=500) {
        let d = DiscreteUniform::new(m_max).unwrap();
        let total: f64 = (1..=m_max).map(|m| d.pmf(m)).sum();
        prop_assert!((total - 1.0).abs() <= 1e-9);
    }

    #[test]
    fn binomial_pmf_normalizes(n in 1u64..=200, p in 0.0f64..=1.0) {
        let d = Binomial::new(n, p).unwrap();
        let total: f64 = (0..=n).map(|m| d.pmf(m)).sum();
        prop_assert!((total - 1.0).abs() <= 1e-9);
    }

    #[test]
    fn poisson_pmf_normalizes(lambda in 0.01f64..=50.0) {
        let d = Poisson::new(lambda).unwrap();
        let total: f64 = (0..=d.truncation_cutoff()).map(|m| d.pmf(m)).sum();
        prop_assert!((total - 1.0).abs() <= 1e-9);
    }

    #[test]
    fn negbinom_pmf_normalizes(kappa in 1u64..=20, p in 0.05f64..=1.0) {
        let d = NegativeBinomial::new(kappa, p).unwrap();
        let total: f64 = (0..=negbinom_cutoff(kappa, p)).map(|m| d.pmf(m)).sum();
        prop_assert!((total - 1.0).abs() <= 1e-9);
    }

    #[test]
    fn binomial_moments_match_summation(n in 1u64..=150, p in 0.0f64..=1.0) {
        let d = Binomial::new(n, p).unwrap();
        let mean: f64 = (0..=n).map(|m| m as f64 * d.pmf(m)).sum();
        let second: f64 = (0..=n).map(|m| (m as f64).powi(2) * d.pmf(m)).sum();
        prop_assert!((mean - d.mean()).abs() <= 1e-6);
        prop_assert!((second - mean * mean - d.variance()).abs() <= 1e-6);
    }

    #[test]
    fn poisson_moments_match_summation(lambda in 0.01f64..=40.0) {
        let d = Poisson::new(lambda).unwrap();
        let hi = d.truncation_cutoff();
        let mean: f64 = (0..=hi).map(|m| m as f64 * d.pmf(m)).sum();
        let second: f64 = (0..=hi).map(|m| (m as f64).powi(2) * d.pmf(m)).sum();
        prop_assert!((mean - d.mean()).abs() <= 1e-6);
        prop_assert!((second - mean * mean - d.variance()).abs() <= 1e-6);
    }

    #[test]
    fn negbinom_moments_match_summation(kappa in 1u64..=15, p in 0.1f64..=1.0) {
        let d = NegativeBinomial::new(kappa, p).unwrap();
        let hi = negbinom_cutoff(kappa, p);
        let mean: f64 = (0..=hi).map(|m| m as f64 * d.pmf(m)).sum();
        let second: f64 = (0..=hi).map(|m| (m as f64).powi(2) * d.pmf(m)).sum();
        prop_assert!((mean - d.mean()).abs() <= 1e-6);
        prop_assert!((second - mean * mean - d.variance()).abs() <= 1e-6);
    }

    #[test]
    fn uniform_moments_match_summation(m_max in 1u64..=300) {
        let d = DiscreteUniform::new(m_max).unwrap();
        let mean: f64 = (1..=m_max).map(|m| m as f64 * d.pmf(m)).sum();
        let second: f64 = (1..=m_max).map(|m| (m as f64).powi(2) * d.pmf(m)).sum();
        prop_assert!((mean - d.mean()).abs() <= 1e-6);
        prop_assert!((second - mean * mean - d.variance()).abs() <= 1e-6);
    }

    #[test]
    fn log_pmf_agrees_with_pmf(n in 1u64..=100, p in 0.001f64..=0.999, m in 0u64..=100) {
        let d = Binomial::new(n, p).unwrap();
        let pmf = d.pmf(m);
        if pmf > 1e-300 {
            let via_log = d.ln_pmf(m).exp();
            prop_assert!(((via_log - pmf) / pmf).abs() <= 1e-12);
        }
        let poisson = Poisson::new(p * 20.0).unwrap();
        let pmf = poisson.pmf(m);
        if pmf > 1e-300 {
            prop_assert!(((poisson.ln_pmf(m).exp() - pmf) / pmf).abs() <= 1e-12);
        }
    }

    #[test]
    fn le_cam_bound_holds(n in 1u64..=300, p in 0.0f64..=0.3) {
        let tv = poisson_approx_tv(n, p).unwrap();
        prop_assert!(tv <= n as f64 * p * p + 1e-12);
        prop_assert!(tv >= 0.0);
    }

    #[test]
    fn kappa_one_is_geometric(p in 0.01f64..=1.0, m in 0u64..=200) {
        let d = NegativeBinomial::new(1, p).unwrap();
        let geometric = p * (1.0 - p).powi(m as i32);
        let pmf = d.pmf(m);
        if geometric > 1e-300 {
            prop_assert!(((pmf - geometric) / geometric).abs() <= 1e-12);
        } else {
            prop_assert!(pmf <= 1e-300);
        }
    }
}
