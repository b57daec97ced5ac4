//! Discrete-grid posterior inference: a prior over a finite set of
//! candidate parameter values is updated by the likelihood of conditionally
//! independent observations.
//!
//! Per-observation masses are accumulated as log-pmfs, and the marginal
//! likelihood uses a max-shifted log-sum over grid points in ascending theta
//! order, so the computation is reproducible and does not underflow even
//! when individual likelihoods are tiny. Grid points whose likelihood is
//! exactly zero stay in the table with posterior 0.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::distributions::{Binomial, NegativeBinomial, Poisson};
use crate::math::log_sum_exp;

/// Tolerance for "weights sum to one" validation.
const WEIGHT_SUM_TOL: f64 = 1e-9;

#[derive(Debug, Error)]
pub enum GridError {
    #[error("prior grid is empty")]
    EmptyGrid,
    #[error("grid thetas must be strictly increasing (offending value {0})")]
    NonIncreasingThetas(f64),
    #[error("negative prior weight {0}")]
    NegativeWeight(f64),
    #[error("prior weights sum to {0}, expected 1 (use the unnormalized constructor to skip)")]
    UnnormalizedWeights(f64),
    #[error("prior weights are all zero")]
    ZeroWeightSum,
    #[error("invalid observation: {0}")]
    InvalidObservation(String),
    #[error("theta {theta} is invalid for {family} observations")]
    InvalidTheta { theta: f64, family: &'static str },
    #[error("every grid point has zero likelihood")]
    AllZeroLikelihood,
    #[error("zero likelihood at reference theta {0}")]
    ZeroReferenceLikelihood(f64),
    #[error("malformed problem spec: {0}")]
    MalformedSpec(String),
}

/// One candidate parameter value and its prior weight.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridPoint {
    pub theta: f64,
    pub weight: f64,
}

/// Prior over a strictly increasing grid of candidate theta values.
#[derive(Debug, Clone, PartialEq)]
pub struct PriorGrid {
    points: Vec<GridPoint>,
}

impl PriorGrid {
    /// Validated prior: weights must be nonnegative and sum to one. Inputs
    /// that do not are rejected, not renormalized.
    pub fn new(points: Vec<GridPoint>) -> Result<Self, GridError> {
        let grid = Self::new_unnormalized(points)?;
        let sum: f64 = grid.points.iter().map(|p| p.weight).sum();
        if (sum - 1.0).abs() > WEIGHT_SUM_TOL {
            return Err(GridError::UnnormalizedWeights(sum));
        }
        Ok(grid)
    }

    /// Prior with arbitrary positive scale; the posterior only depends on
    /// weight ratios. Weights must still be nonnegative with positive sum.
    pub fn new_unnormalized(points: Vec<GridPoint>) -> Result<Self, GridError> {
        if points.is_empty() {
            return Err(GridError::EmptyGrid);
        }
        let mut sum = 0.0;
        for (i, p) in points.iter().enumerate() {
            if !p.weight.is_finite() || p.weight < 0.0 {
                return Err(GridError::NegativeWeight(p.weight));
            }
            if !p.theta.is_finite() {
                return Err(GridError::NonIncreasingThetas(p.theta));
            }
            if i > 0 && p.theta <= points[i - 1].theta {
                return Err(GridError::NonIncreasingThetas(p.theta));
            }
            sum += p.weight;
        }
        if sum <= 0.0 {
            return Err(GridError::ZeroWeightSum);
        }
        Ok(Self { points })
    }

    /// Equal weight on each of the given theta values.
    pub fn uniform(thetas: &[f64]) -> Result<Self, GridError> {
        if thetas.is_empty() {
            return Err(GridError::EmptyGrid);
        }
        let w = 1.0 / thetas.len() as f64;
        Self::new_unnormalized(
            thetas
                .iter()
                .map(|&theta| GridPoint { theta, weight: w })
                .collect(),
        )
    }

    pub fn points(&self) -> &[GridPoint] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// One observed count, with the family and fixed nuisance parameters it was
/// drawn under. The unknown theta is substituted at evaluation time: it is
/// the success probability for the binomial and negative binomial families
/// and the rate for the Poisson family.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", deny_unknown_fields)]
pub enum Observation {
    #[serde(rename = "binomial")]
    Binomial { n: u64, m: u64 },
    #[serde(rename = "negbinomial")]
    NegativeBinomial { kappa: u64, m: u64 },
    #[serde(rename = "poisson")]
    Poisson { m: u64 },
}

impl Observation {
    fn validate(&self) -> Result<(), GridError> {
        match *self {
            Observation::Binomial { n, m } => {
                if n < 1 {
                    return Err(GridError::InvalidObservation(
                        "binomial observation needs at least one trial".into(),
                    ));
                }
                if m > n {
                    return Err(GridError::InvalidObservation(format!(
                        "observed {m} successes out of {n} trials"
                    )));
                }
            }
            Observation::NegativeBinomial { kappa, .. } => {
                if kappa < 1 {
                    return Err(GridError::InvalidObservation(
                        "negative binomial observation needs a success target of at least 1".into(),
                    ));
                }
            }
            Observation::Poisson { .. } => {}
        }
        Ok(())
    }

    fn ln_pmf_at(&self, theta: f64) -> Result<f64, GridError> {
        match *self {
            Observation::Binomial { n, m } => {
                let dist = Binomial::new(n, theta).map_err(|_| GridError::InvalidTheta {
                    theta,
                    family: "binomial",
                })?;
                Ok(dist.ln_pmf(m))
            }
            Observation::NegativeBinomial { kappa, m } => {
                let dist =
                    NegativeBinomial::new(kappa, theta).map_err(|_| GridError::InvalidTheta {
                        theta,
                        family: "negbinomial",
                    })?;
                Ok(dist.ln_pmf(m))
            }
            Observation::Poisson { m } => {
                let dist = Poisson::new(theta).map_err(|_| GridError::InvalidTheta {
                    theta,
                    family: "poisson",
                })?;
                Ok(dist.ln_pmf(m))
            }
        }
    }
}

/// Conditionally independent observations sharing one unknown theta.
#[derive(Debug, Clone, PartialEq)]
pub struct ObservationModel {
    observations: Vec<Observation>,
}

impl ObservationModel {
    pub fn new(observations: Vec<Observation>) -> Result<Self, GridError> {
        for obs in &observations {
            obs.validate()?;
        }
        Ok(Self { observations })
    }

    pub fn observations(&self) -> &[Observation] {
        &self.observations
    }

    /// Joint log-likelihood at `theta`: the sum of per-observation log-pmfs
    /// (the conditional-independence product in log space). An empty model
    /// has log-likelihood 0.
    pub fn log_likelihood(&self, theta: f64) -> Result<f64, GridError> {
        let mut total = 0.0;
        for obs in &self.observations {
            total += obs.ln_pmf_at(theta)?;
        }
        Ok(total)
    }
}

/// One grid point of a computed posterior.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PosteriorEntry {
    pub theta: f64,
    /// The prior weight as supplied (not renormalized).
    pub prior: f64,
    pub log_likelihood: f64,
    pub posterior: f64,
}

/// Posterior over the grid, with the marginal likelihood and the per-theta
/// log-likelihood record.
#[derive(Debug, Clone, PartialEq)]
pub struct PosteriorTable {
    entries: Vec<PosteriorEntry>,
    marginal_likelihood: f64,
    log_marginal_likelihood: f64,
}

impl PosteriorTable {
    pub fn entries(&self) -> &[PosteriorEntry] {
        &self.entries
    }

    /// Σᵢ weightᵢ · likelihoodᵢ (a probability when the prior is
    /// normalized).
    pub fn marginal_likelihood(&self) -> f64 {
        self.marginal_likelihood
    }

    pub fn log_marginal_likelihood(&self) -> f64 {
        self.log_marginal_likelihood
    }

    /// Posterior mean Σ thetaᵢ · posteriorᵢ.
    pub fn mean(&self) -> f64 {
        self.entries
            .iter()
            .map(|e| e.theta * e.posterior)
            .sum()
    }

    /// Grid point with maximal posterior mass; ties break toward the
    /// smallest theta.
    pub fn mode(&self) -> (f64, f64) {
        let mut best = (self.entries[0].theta, self.entries[0].posterior);
        for e in &self.entries[1..] {
            if e.posterior > best.1 {
                best = (e.theta, e.posterior);
            }
        }
        best
    }

    /// Grid theta nearest to the posterior mean; ties break toward the
    /// smallest theta.
    pub fn nearest_grid_estimate(&self) -> f64 {
        let mean = self.mean();
        let mut best = self.entries[0].theta;
        let mut best_dist = (best - mean).abs();
        for e in &self.entries[1..] {
            let dist = (e.theta - mean).abs();
            if dist < best_dist {
                best = e.theta;
                best_dist = dist;
            }
        }
        best
    }

    /// Reuse this posterior as the prior for a further update.
    pub fn to_prior(&self) -> PriorGrid {
        PriorGrid {
            points: self
                .entries
                .iter()
                .map(|e| GridPoint {
                    theta: e.theta,
                    weight: e.posterior,
                })
                .collect(),
        }
    }

    /// CSV rendering: a full-precision marginal-likelihood metadata line,
    /// then `theta,prior,likelihood,posterior` rows at six decimal places.
    /// Lines end with LF.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "# marginal_likelihood={}\n",
            self.marginal_likelihood
        ));
        out.push_str("theta,prior,likelihood,posterior\n");
        for e in &self.entries {
            let likelihood = if e.log_likelihood == f64::NEG_INFINITY {
                0.0
            } else {
                e.log_likelihood.exp()
            };
            out.push_str(&format!(
                "{:.6},{:.6},{:.6},{:.6}\n",
                e.theta, e.prior, likelihood, e.posterior
            ));
        }
        out
    }
}

/// Marginal likelihood of the observations under the prior:
/// Σᵢ weightᵢ · likelihood(thetaᵢ), accumulated by a max-shifted log-sum in
/// ascending theta order.
pub fn marginal_likelihood(
    prior: &PriorGrid,
    model: &ObservationModel,
) -> Result<f64, GridError> {
    Ok(posterior(prior, model)?.marginal_likelihood())
}

/// Posterior over the grid: per theta, weight × likelihood over the
/// marginal. Fails if every grid point carries zero mass.
pub fn posterior(prior: &PriorGrid, model: &ObservationModel) -> Result<PosteriorTable, GridError> {
    let mut log_terms = Vec::with_capacity(prior.len());
    let mut log_likelihoods = Vec::with_capacity(prior.len());
    for point in prior.points() {
        let log_lik = model.log_likelihood(point.theta)?;
        log_likelihoods.push(log_lik);
        let log_weight = if point.weight == 0.0 {
            f64::NEG_INFINITY
        } else {
            point.weight.ln()
        };
        log_terms.push(log_weight + log_lik);
    }
    let log_marginal = log_sum_exp(&log_terms);
    if log_marginal == f64::NEG_INFINITY {
        return Err(GridError::AllZeroLikelihood);
    }
    // Normalize in linear space after the max shift: the shifted terms are
    // all ≤ 1, and dividing by their sum keeps the posterior column summing
    // to one to the last bit.
    let shift = log_terms
        .iter()
        .copied()
        .fold(f64::NEG_INFINITY, f64::max);
    let shifted: Vec<f64> = log_terms.iter().map(|&t| (t - shift).exp()).collect();
    let total: f64 = shifted.iter().sum();
    let entries = prior
        .points()
        .iter()
        .zip(shifted.iter().zip(&log_likelihoods))
        .map(|(point, (&term, &log_lik))| PosteriorEntry {
            theta: point.theta,
            prior: point.weight,
            log_likelihood: log_lik,
            posterior: term / total,
        })
        .collect();
    Ok(PosteriorTable {
        entries,
        marginal_likelihood: log_marginal.exp(),
        log_marginal_likelihood: log_marginal,
    })
}

/// Bayes factor of theta0 against theta1 under the model:
/// exp(loglik(theta0) − loglik(theta1)).
pub fn point_bayes_factor(
    model: &ObservationModel,
    theta0: f64,
    theta1: f64,
) -> Result<f64, GridError> {
    let log_num = model.log_likelihood(theta0)?;
    let log_den = model.log_likelihood(theta1)?;
    if log_den == f64::NEG_INFINITY {
        return Err(GridError::ZeroReferenceLikelihood(theta1));
    }
    if log_num == f64::NEG_INFINITY {
        return Ok(0.0);
    }
    Ok((log_num - log_den).exp())
}

/// A grid-inference problem as read from disk: prior points, observations,
/// and whether the prior weights are claimed to be normalized.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemSpec {
    pub prior: Vec<GridPoint>,
    pub observations: Vec<Observation>,
    #[serde(default = "default_normalized")]
    pub normalized: bool,
}

fn default_normalized() -> bool {
    true
}

impl ProblemSpec {
    pub fn from_json(text: &str) -> Result<Self, GridError> {
        serde_json::from_str(text).map_err(|e| GridError::MalformedSpec(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("problem spec serializes")
    }

    pub fn prior_grid(&self) -> Result<PriorGrid, GridError> {
        if self.normalized {
            PriorGrid::new(self.prior.clone())
        } else {
            PriorGrid::new_unnormalized(self.prior.clone())
        }
    }

    pub fn observation_model(&self) -> Result<ObservationModel, GridError> {
        ObservationModel::new(self.observations.clone())
    }

    pub fn solve(&self) -> Result<PosteriorTable, GridError> {
        posterior(&self.prior_grid()?, &self.observation_model()?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    /// Two screening tests run on known-positive subjects: 6 of 10 positive
    /// under the first, 4 of 7 under the second, sensitivity either 0.35 or
    /// 0.5 a priori.
    fn two_test_model() -> ObservationModel {
        ObservationModel::new(vec![
            Observation::Binomial { n: 10, m: 6 },
            Observation::Binomial { n: 7, m: 4 },
        ])
        .unwrap()
    }

    fn two_test_prior() -> PriorGrid {
        PriorGrid::new(vec![
            GridPoint {
                theta: 0.35,
                weight: 0.5,
            },
            GridPoint {
                theta: 0.5,
                weight: 0.5,
            },
        ])
        .unwrap()
    }

    /// Vaccine response: 7 of 10 subjects respond, uniform prior on
    /// theta ∈ {0.1, …, 1.0}.
    fn vaccine_prior() -> PriorGrid {
        let thetas: Vec<f64> = (1..=10).map(|i| i as f64 / 10.0).collect();
        PriorGrid::uniform(&thetas).unwrap()
    }

    fn vaccine_model() -> ObservationModel {
        ObservationModel::new(vec![Observation::Binomial { n: 10, m: 7 }]).unwrap()
    }

    #[test]
    fn grid_validation() {
        assert!(matches!(PriorGrid::new(vec![]), Err(GridError::EmptyGrid)));
        let decreasing = vec![
            GridPoint { theta: 0.5, weight: 0.5 },
            GridPoint { theta: 0.3, weight: 0.5 },
        ];
        assert!(matches!(
            PriorGrid::new(decreasing),
            Err(GridError::NonIncreasingThetas(_))
        ));
        let unnormalized = vec![
            GridPoint { theta: 0.3, weight: 2.0 },
            GridPoint { theta: 0.5, weight: 2.0 },
        ];
        assert!(matches!(
            PriorGrid::new(unnormalized.clone()),
            Err(GridError::UnnormalizedWeights(_))
        ));
        assert!(PriorGrid::new_unnormalized(unnormalized).is_ok());
        let negative = vec![GridPoint { theta: 0.3, weight: -0.1 }];
        assert!(matches!(
            PriorGrid::new_unnormalized(negative),
            Err(GridError::NegativeWeight(_))
        ));
    }

    #[test]
    fn likelihood_examples() {
        let model = two_test_model();
        // C(10,6)(0.5)¹⁰ · C(7,4)(0.5)⁷ = 0.0560760498046875 exactly.
        let at_half = model.log_likelihood(0.5).unwrap().exp();
        assert_abs_diff_eq!(at_half, 0.056076, epsilon = 1e-6);
        assert_abs_diff_eq!(at_half, 0.0560760498046875, epsilon = 1e-15);

        let empty = ObservationModel::new(vec![]).unwrap();
        assert_eq!(empty.log_likelihood(0.7).unwrap(), 0.0);

        let single = ObservationModel::new(vec![Observation::Binomial { n: 10, m: 7 }]).unwrap();
        let log_lik = single.log_likelihood(0.7).unwrap();
        assert_abs_diff_eq!(log_lik, 0.266827932_f64.ln(), epsilon = 1e-6);

        assert!(matches!(
            single.log_likelihood(1.5),
            Err(GridError::InvalidTheta { .. })
        ));
    }

    #[test]
    fn observation_validation() {
        assert!(ObservationModel::new(vec![Observation::Binomial { n: 0, m: 0 }]).is_err());
        assert!(ObservationModel::new(vec![Observation::Binomial { n: 5, m: 6 }]).is_err());
        assert!(
            ObservationModel::new(vec![Observation::NegativeBinomial { kappa: 0, m: 1 }]).is_err()
        );
    }

    #[test]
    fn two_test_marginal_and_posterior() {
        let table = posterior(&two_test_prior(), &two_test_model()).unwrap();
        assert_abs_diff_eq!(table.marginal_likelihood(), 0.0330077, epsilon = 1e-6);
        assert_abs_diff_eq!(table.entries()[0].posterior, 0.151, epsilon = 1e-3);
        assert_abs_diff_eq!(table.entries()[1].posterior, 0.849, epsilon = 1e-3);
    }

    #[test]
    fn two_test_point_bayes_factor() {
        let model = two_test_model();
        let bf = point_bayes_factor(&model, 0.5, 0.35).unwrap();
        assert_abs_diff_eq!(bf, 5.64, epsilon = 0.01);
        assert_eq!(point_bayes_factor(&model, 0.4, 0.4).unwrap(), 1.0);
        // The ratio of the two reported likelihoods rounds the same way.
        assert_abs_diff_eq!(0.056076 / 0.0099389, 5.642, epsilon = 1e-3);
    }

    #[test]
    fn blood_donation_posteriors() {
        // One failure-until-match observation at m = 7 under NB(1, theta);
        // candidate match rates 0.2 (group A) and 0.1 (group B).
        let model =
            ObservationModel::new(vec![Observation::NegativeBinomial { kappa: 1, m: 7 }]).unwrap();
        let weighted = PriorGrid::new(vec![
            GridPoint { theta: 0.1, weight: 0.75 },
            GridPoint { theta: 0.2, weight: 0.25 },
        ])
        .unwrap();
        let table = posterior(&weighted, &model).unwrap();
        assert_abs_diff_eq!(table.marginal_likelihood(), 0.046358, epsilon = 1e-5);
        assert_abs_diff_eq!(table.entries()[0].posterior, 0.774, epsilon = 1e-3);
        assert_abs_diff_eq!(table.entries()[1].posterior, 0.226, epsilon = 1e-3);

        let uniform = PriorGrid::uniform(&[0.1, 0.2]).unwrap();
        let table = posterior(&uniform, &model).unwrap();
        assert_abs_diff_eq!(table.entries()[0].posterior, 0.533, epsilon = 1e-3);
        assert_abs_diff_eq!(table.entries()[1].posterior, 0.467, epsilon = 1e-3);
    }

    #[test]
    fn vaccine_posterior_table() {
        let table = posterior(&vaccine_prior(), &vaccine_model()).unwrap();
        assert_abs_diff_eq!(table.marginal_likelihood(), 0.0909993, epsilon = 1e-6);
        let expected = [
            0.000, 0.001, 0.010, 0.047, 0.129, 0.236, 0.293, 0.221, 0.063, 0.000,
        ];
        for (entry, want) in table.entries().iter().zip(expected) {
            assert_abs_diff_eq!(entry.posterior, want, epsilon = 1e-3);
        }
        // theta = 1.0 cannot produce failures; the row stays with mass 0.
        assert_eq!(table.entries()[9].posterior, 0.0);
        assert_abs_diff_eq!(table.mean(), 0.667, epsilon = 1e-3);
        let (mode_theta, mode_mass) = table.mode();
        assert_eq!(mode_theta, 0.7);
        assert_abs_diff_eq!(mode_mass, 0.293, epsilon = 1e-3);
        assert_eq!(table.nearest_grid_estimate(), 0.7);
    }

    #[test]
    fn point_estimates_on_degenerate_tables() {
        let point_mass = PriorGrid::new(vec![GridPoint { theta: 0.4, weight: 1.0 }]).unwrap();
        let empty = ObservationModel::new(vec![]).unwrap();
        let table = posterior(&point_mass, &empty).unwrap();
        assert_eq!(table.mean(), 0.4);
        assert_eq!(table.mode(), (0.4, 1.0));
        assert_eq!(table.nearest_grid_estimate(), 0.4);

        // Exact binary fractions so the tie arithmetic is exact.
        let two = PriorGrid::uniform(&[0.25, 0.75]).unwrap();
        let table = posterior(&two, &empty).unwrap();
        assert_eq!(table.mean(), 0.5);
        // Exact tie in posterior mass and in distance to the mean: both
        // resolve toward the smaller theta.
        assert_eq!(table.mode().0, 0.25);
        assert_eq!(table.nearest_grid_estimate(), 0.25);
    }

    #[test]
    fn all_zero_likelihood_is_an_error() {
        let grid = PriorGrid::new(vec![GridPoint { theta: 1.0, weight: 1.0 }]).unwrap();
        let model = ObservationModel::new(vec![Observation::Binomial { n: 10, m: 3 }]).unwrap();
        assert!(matches!(
            posterior(&grid, &model),
            Err(GridError::AllZeroLikelihood)
        ));
        assert!(matches!(
            point_bayes_factor(&model, 0.5, 1.0),
            Err(GridError::ZeroReferenceLikelihood(_))
        ));
        assert_eq!(point_bayes_factor(&model, 1.0, 0.5).unwrap(), 0.0);
    }

    #[test]
    fn empty_observations_return_the_prior() {
        let prior = two_test_prior();
        let empty = ObservationModel::new(vec![]).unwrap();
        let table = posterior(&prior, &empty).unwrap();
        for (entry, point) in table.entries().iter().zip(prior.points()) {
            assert_abs_diff_eq!(entry.posterior, point.weight, epsilon = 1e-15);
        }
        assert_abs_diff_eq!(table.marginal_likelihood(), 1.0, epsilon = 1e-15);
    }

    #[test]
    fn prior_scaling_leaves_posterior_unchanged() {
        let model = two_test_model();
        let base = posterior(&two_test_prior(), &model).unwrap();
        for scale in [0.25, 3.0, 1e-8, 1e6] {
            let scaled = PriorGrid::new_unnormalized(vec![
                GridPoint { theta: 0.35, weight: 0.5 * scale },
                GridPoint { theta: 0.5, weight: 0.5 * scale },
            ])
            .unwrap();
            let table = posterior(&scaled, &model).unwrap();
            for (a, b) in table.entries().iter().zip(base.entries()) {
                assert_abs_diff_eq!(a.posterior, b.posterior, epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn sequential_updates_compose() {
        let prior = two_test_prior();
        let both = two_test_model();
        let first = ObservationModel::new(vec![Observation::Binomial { n: 10, m: 6 }]).unwrap();
        let second = ObservationModel::new(vec![Observation::Binomial { n: 7, m: 4 }]).unwrap();

        let joint = posterior(&prior, &both).unwrap();
        let staged = posterior(&posterior(&prior, &first).unwrap().to_prior(), &second).unwrap();
        for (a, b) in joint.entries().iter().zip(staged.entries()) {
            assert_abs_diff_eq!(a.posterior, b.posterior, epsilon = 1e-12);
        }
    }

    #[test]
    fn csv_rendering() {
        let table = posterior(&two_test_prior(), &two_test_model()).unwrap();
        let csv = table.to_csv();
        let mut lines = csv.lines();
        let meta = lines.next().unwrap();
        assert!(meta.starts_with("# marginal_likelihood="));
        let marginal: f64 = meta.rsplit('=').next().unwrap().parse().unwrap();
        assert_eq!(marginal, table.marginal_likelihood());
        assert_eq!(lines.next().unwrap(), "theta,prior,likelihood,posterior");
        assert_eq!(lines.next().unwrap(), "0.350000,0.500000,0.009939,0.150562");
        assert_eq!(lines.next().unwrap(), "0.500000,0.500000,0.056076,0.849438");
        assert!(csv.ends_with('\n'));
    }

    #[test]
    fn problem_spec_round_trip() {
        let spec = ProblemSpec {
            prior: vec![
                GridPoint { theta: 0.35, weight: 0.5 },
                GridPoint { theta: 0.5, weight: 0.5 },
            ],
            observations: vec![
                Observation::Binomial { n: 10, m: 6 },
                Observation::Binomial { n: 7, m: 4 },
            ],
            normalized: true,
        };
        let parsed = ProblemSpec::from_json(&spec.to_json()).unwrap();
        assert_eq!(parsed, spec);
        let table = parsed.solve().unwrap();
        assert_abs_diff_eq!(table.marginal_likelihood(), 0.0330077, epsilon = 1e-6);

        let json = r#"{
            "prior": [{"theta": 0.1, "weight": 0.75}, {"theta": 0.2, "weight": 0.25}],
            "observations": [{"family": "negbinomial", "kappa": 1, "m": 7}]
        }"#;
        let parsed = ProblemSpec::from_json(json).unwrap();
        assert!(parsed.normalized);
        assert!(parsed.solve().is_ok());

        assert!(ProblemSpec::from_json("{").is_err());
        assert!(ProblemSpec::from_json(r#"{"prior": [], "observations": [], "bogus": 1}"#).is_err());
    }
}
