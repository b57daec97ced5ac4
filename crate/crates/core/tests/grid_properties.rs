//! Property tests for the grid posterior engine, including the brute-force
//! enumeration oracle it is checked against.

use bdt_core::distributions::Binomial;
use bdt_core::grid::{
    point_bayes_factor, posterior, GridPoint, Observation, ObservationModel, PriorGrid,
};
use proptest::prelude::*;

/// Likelihood of `m` successes in `n` trials by explicit enumeration of all
/// 2ⁿ outcome sequences: sequences with exactly `m` successes each
/// contribute the product of their per-trial probabilities. Deliberately
/// avoids the binomial coefficient and the log-gamma path.
fn brute_force_likelihood(n: u64, m: u64, theta: f64) -> f64 {
    let mut total = 0.0;
    for mask in 0u64..(1 << n) {
        if u64::from(mask.count_ones()) != m {
            continue;
        }
        let mut sequence_prob = 1.0;
        for bit in 0..n {
            sequence_prob *= if mask >> bit & 1 == 1 {
                theta
            } else {
                1.0 - theta
            };
        }
        total += sequence_prob;
    }
    total
}

/// Posterior over the grid by direct normalization of weight × brute-force
/// likelihood products.
fn brute_force_posterior(grid: &[(f64, f64)], observations: &[(u64, u64)]) -> Vec<f64> {
    let terms: Vec<f64> = grid
        .iter()
        .map(|&(theta, weight)| {
            let likelihood: f64 = observations
                .iter()
                .map(|&(n, m)| brute_force_likelihood(n, m, theta))
                .product();
            weight * likelihood
        })
        .collect();
    let total: f64 = terms.iter().sum();
    terms.iter().map(|t| t / total).collect()
}

/// Strictly increasing thetas from distinct integer percent points.
fn theta_grid(size: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::btree_set(1u32..=99, 2..=size)
        .prop_map(|set| set.into_iter().map(|i| i as f64 / 100.0).collect())
}

proptest! {
    #[test]
    fn posterior_matches_brute_force_enumeration(
        thetas in theta_grid(16),
        weights_seed in prop::collection::vec(0.05f64..=5.0, 16),
        n in 1u64..=12,
        m_frac in 0.0f64..=1.0,
    ) {
        let m = (m_frac * n as f64).round() as u64;
        let points: Vec<GridPoint> = thetas
            .iter()
            .zip(&weights_seed)
            .map(|(&theta, &weight)| GridPoint { theta, weight })
            .collect();
        let grid = PriorGrid::new_unnormalized(points.clone()).unwrap();
        let model = ObservationModel::new(vec![Observation::Binomial { n, m }]).unwrap();
        let table = posterior(&grid, &model).unwrap();

        let reference: Vec<(f64, f64)> =
            points.iter().map(|p| (p.theta, p.weight)).collect();
        let expected = brute_force_posterior(&reference, &[(n, m)]);
        for (entry, want) in table.entries().iter().zip(expected) {
            prop_assert!((entry.posterior - want).abs() <= 1e-10);
        }
    }

    #[test]
    fn prior_scaling_is_invariant(
        thetas in theta_grid(10),
        weights_seed in prop::collection::vec(0.05f64..=5.0, 10),
        scale in prop::sample::select(vec![1e-6, 1e-3, 0.5, 2.0, 1e3, 1e6]),
        n in 1u64..=30,
        m_frac in 0.0f64..=1.0,
    ) {
        let m = (m_frac * n as f64).round() as u64;
        let model = ObservationModel::new(vec![Observation::Binomial { n, m }]).unwrap();
        let base_points: Vec<GridPoint> = thetas
            .iter()
            .zip(&weights_seed)
            .map(|(&theta, &weight)| GridPoint { theta, weight })
            .collect();
        let scaled_points: Vec<GridPoint> = base_points
            .iter()
            .map(|p| GridPoint { theta: p.theta, weight: p.weight * scale })
            .collect();
        let base = posterior(&PriorGrid::new_unnormalized(base_points).unwrap(), &model).unwrap();
        let scaled =
            posterior(&PriorGrid::new_unnormalized(scaled_points).unwrap(), &model).unwrap();
        for (a, b) in base.entries().iter().zip(scaled.entries()) {
            prop_assert!((a.posterior - b.posterior).abs() <= 1e-12);
        }
        prop_assert!((base.mean() - scaled.mean()).abs() <= 1e-12);
    }

    #[test]
    fn sequential_updates_match_joint_update(
        thetas in theta_grid(10),
        first_n in 1u64..=20,
        first_frac in 0.0f64..=1.0,
        second_n in 1u64..=20,
        second_frac in 0.0f64..=1.0,
    ) {
        let first = Observation::Binomial {
            n: first_n,
            m: (first_frac * first_n as f64).round() as u64,
        };
        let second = Observation::Binomial {
            n: second_n,
            m: (second_frac * second_n as f64).round() as u64,
        };
        let prior = PriorGrid::uniform(&thetas).unwrap();
        let joint = posterior(
            &prior,
            &ObservationModel::new(vec![first, second]).unwrap(),
        )
        .unwrap();
        let first_stage = posterior(
            &prior,
            &ObservationModel::new(vec![first]).unwrap(),
        )
        .unwrap();
        let second_stage = posterior(
            &first_stage.to_prior(),
            &ObservationModel::new(vec![second]).unwrap(),
        )
        .unwrap();
        for (a, b) in joint.entries().iter().zip(second_stage.entries()) {
            prop_assert!((a.posterior - b.posterior).abs() <= 1e-12);
        }
    }

    #[test]
    fn posterior_sums_to_one(
        thetas in theta_grid(12),
        n in 1u64..=40,
        m_frac in 0.0f64..=1.0,
    ) {
        let m = (m_frac * n as f64).round() as u64;
        let prior = PriorGrid::uniform(&thetas).unwrap();
        let model = ObservationModel::new(vec![Observation::Binomial { n, m }]).unwrap();
        let table = posterior(&prior, &model).unwrap();
        let total: f64 = table.entries().iter().map(|e| e.posterior).sum();
        prop_assert!((total - 1.0).abs() <= 1e-9);
    }

    #[test]
    fn uniform_prior_mode_is_likelihood_argmax(
        n in 1u64..=20,
        m_frac in 0.0f64..=1.0,
    ) {
        let m = (m_frac * n as f64).round() as u64;
        let thetas: Vec<f64> = (1..=20).map(|i| i as f64 * 0.05).collect();
        let prior = PriorGrid::uniform(&thetas).unwrap();
        let model = ObservationModel::new(vec![Observation::Binomial { n, m }]).unwrap();
        let table = posterior(&prior, &model).unwrap();

        let argmax = thetas
            .iter()
            .copied()
            .reduce(|best, theta| {
                let best_lik = Binomial::new(n, best).unwrap().ln_pmf(m);
                let lik = Binomial::new(n, theta).unwrap().ln_pmf(m);
                if lik > best_lik { theta } else { best }
            })
            .unwrap();
        prop_assert_eq!(table.mode().0, argmax);
    }

    #[test]
    fn point_bayes_factor_is_posterior_to_prior_odds_ratio(
        theta_pair in prop::collection::btree_set(1u32..=99, 2),
        prior_weight in 0.05f64..=0.95,
        n in 1u64..=25,
        m_frac in 0.0f64..=1.0,
    ) {
        let thetas: Vec<f64> = theta_pair.into_iter().map(|i| i as f64 / 100.0).collect();
        let m = (m_frac * n as f64).round() as u64;
        let model = ObservationModel::new(vec![Observation::Binomial { n, m }]).unwrap();
        let grid = PriorGrid::new(vec![
            GridPoint { theta: thetas[0], weight: prior_weight },
            GridPoint { theta: thetas[1], weight: 1.0 - prior_weight },
        ])
        .unwrap();
        let table = posterior(&grid, &model).unwrap();

        // Bayes factor of theta0 against theta1 equals the posterior odds
        // of the two grid points over their prior odds. Taking the odds as
        // mass ratios keeps the check conditioned even when one posterior
        // is within an ulp of 1.
        let bf = point_bayes_factor(&model, thetas[0], thetas[1]).unwrap();
        let posterior_ratio = table.entries()[0].posterior / table.entries()[1].posterior;
        let prior_ratio = prior_weight / (1.0 - prior_weight);
        let lhs = posterior_ratio / prior_ratio;
        prop_assert!((lhs - bf).abs() <= 1e-9 * bf.abs().max(1.0));
    }
}
