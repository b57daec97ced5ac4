//! Binomial maximum likelihood estimation, closed-form and numeric, plus
//! the uniform-prior bridge: under a uniform grid prior the posterior mode
//! is the grid-restricted MLE.

use thiserror::Error;

use crate::distributions::Binomial;
use crate::grid::{self, GridError, Observation, ObservationModel, PriorGrid};

/// Hard cap on golden-section iterations. From a unit bracket this allows
/// shrinkage well past 1e-12, so hitting the cap signals a bug rather than
/// a tight tolerance.
const MAX_ITERATIONS: u32 = 200;

/// Golden ratio conjugate (√5 − 1)/2: each iteration keeps this fraction of
/// the bracket.
const INV_PHI: f64 = 0.618_033_988_749_894_9;

#[derive(Debug, Error)]
pub enum MleError {
    #[error("invalid counts: {m} successes out of {n} trials")]
    InvalidCounts { m: u64, n: u64 },
    #[error("tolerance must be positive and finite, got {0}")]
    InvalidTolerance(f64),
    #[error("search bracket still {bracket} after {iterations} iterations (tolerance {tolerance})")]
    NonConvergence {
        bracket: f64,
        tolerance: f64,
        iterations: u32,
    },
    #[error("grid weights are not uniform")]
    NonUniformGrid,
    #[error(transparent)]
    Grid(#[from] GridError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    ClosedForm,
    Numeric,
}

/// A maximum likelihood estimate with the log-likelihood it attains.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MleResult {
    pub theta_hat: f64,
    pub log_likelihood_at_max: f64,
    pub method: Method,
    pub iterations: u32,
}

fn check_counts(m: u64, n: u64) -> Result<(), MleError> {
    if n < 1 || m > n {
        return Err(MleError::InvalidCounts { m, n });
    }
    Ok(())
}

fn binomial_log_likelihood(m: u64, n: u64, theta: f64) -> f64 {
    Binomial::new(n, theta)
        .expect("theta validated by caller")
        .ln_pmf(m)
}

/// Closed-form MLE for m successes in n trials: theta = m/n.
pub fn binomial_mle_closed(m: u64, n: u64) -> Result<MleResult, MleError> {
    check_counts(m, n)?;
    let theta_hat = m as f64 / n as f64;
    Ok(MleResult {
        theta_hat,
        log_likelihood_at_max: binomial_log_likelihood(m, n, theta_hat),
        method: Method::ClosedForm,
        iterations: 0,
    })
}

/// Numeric MLE by golden-section search on the log-likelihood over [0, 1].
///
/// The search shrinks the bracket until it is below `tolerance`, then both
/// endpoints of the domain are evaluated explicitly so boundary optima
/// (m = 0 or m = n) are returned exactly.
pub fn binomial_mle_numeric(m: u64, n: u64, tolerance: f64) -> Result<MleResult, MleError> {
    check_counts(m, n)?;
    if !tolerance.is_finite() || tolerance <= 0.0 {
        return Err(MleError::InvalidTolerance(tolerance));
    }
    let f = |theta: f64| binomial_log_likelihood(m, n, theta);

    let mut a = 0.0_f64;
    let mut b = 1.0_f64;
    let mut x1 = b - INV_PHI * (b - a);
    let mut x2 = a + INV_PHI * (b - a);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    let mut iterations = 0;
    while b - a > tolerance {
        if iterations >= MAX_ITERATIONS {
            return Err(MleError::NonConvergence {
                bracket: b - a,
                tolerance,
                iterations,
            });
        }
        if f1 > f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - INV_PHI * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + INV_PHI * (b - a);
            f2 = f(x2);
        }
        iterations += 1;
    }

    let mut theta_hat = (a + b) / 2.0;
    let mut best = f(theta_hat);
    for endpoint in [0.0, 1.0] {
        let value = f(endpoint);
        if value > best {
            best = value;
            theta_hat = endpoint;
        }
    }
    Ok(MleResult {
        theta_hat,
        log_likelihood_at_max: best,
        method: Method::Numeric,
        iterations,
    })
}

/// Posterior mode under a uniform grid prior, next to the grid point
/// nearest the closed-form MLE.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridMapComparison {
    pub map_theta: f64,
    pub mle_grid_theta: f64,
    pub equal: bool,
}

/// Compare the posterior mode under `grid` (which must carry uniform
/// weights) against the grid point nearest m/n. The two coincide: a flat
/// prior leaves the likelihood shape untouched.
pub fn grid_map_equals_mle(
    m: u64,
    n: u64,
    grid: &PriorGrid,
) -> Result<GridMapComparison, MleError> {
    check_counts(m, n)?;
    let first = grid.points()[0].weight;
    if grid
        .points()
        .iter()
        .any(|p| (p.weight - first).abs() > 1e-12)
    {
        return Err(MleError::NonUniformGrid);
    }
    let model = ObservationModel::new(vec![Observation::Binomial { n, m }])?;
    let table = grid::posterior(grid, &model)?;
    let map_theta = table.mode().0;

    let mle = m as f64 / n as f64;
    let mut nearest = grid.points()[0].theta;
    let mut best_dist = (nearest - mle).abs();
    for p in &grid.points()[1..] {
        let dist = (p.theta - mle).abs();
        if dist < best_dist {
            nearest = p.theta;
            best_dist = dist;
        }
    }
    Ok(GridMapComparison {
        map_theta,
        mle_grid_theta: nearest,
        equal: map_theta == nearest,
    })
}
