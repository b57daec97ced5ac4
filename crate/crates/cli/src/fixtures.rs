//! Golden fixture registry: every headline number the toolkit is expected
//! to reproduce, with its tolerance. `bdt paper-fixtures` runs the whole
//! registry and fails loudly when any value drifts.

use bdt_core::diagnostics::{DiagnosticTest, TestResult};
use bdt_core::evidence;
use bdt_core::grid::{self, GridPoint, Observation, ObservationModel, PosteriorTable, PriorGrid};
use bdt_core::mle;
use bdt_core::network;
use bdt_core::probability::{odds, posterior_odds, ContingencyTable, Branch, Partition};
use serde::Serialize;

pub enum Expected {
    Value { expected: f64, tolerance: f64 },
    Label(&'static str),
}

pub enum Computed {
    Value(f64),
    Label(String),
}

pub struct Fixture {
    pub id: &'static str,
    pub scenario: &'static str,
    pub expected: Expected,
    pub compute: Box<dyn Fn() -> Result<Computed, String>>,
}

/// Result of one fixture run, rendered for the table and `--json` output.
#[derive(Debug, Clone, Serialize)]
pub struct Outcome {
    pub id: &'static str,
    pub scenario: &'static str,
    pub expected: String,
    pub computed: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<f64>,
    pub pass: bool,
}

fn value(x: f64) -> Result<Computed, String> {
    Ok(Computed::Value(x))
}

fn hiv_test() -> DiagnosticTest {
    DiagnosticTest::new(0.95, 0.98, 0.001).expect("valid test")
}

fn survival_partition() -> Partition {
    Partition::new(vec![
        Branch::new("early-stage", 0.9, 0.8),
        Branch::new("late-stage", 0.1, 0.2),
    ])
    .expect("valid partition")
}

fn hospitalization_table() -> ContingencyTable {
    ContingencyTable::from_csv(
        "gender,race,hospitalized,not_hospitalized\n\
         Male,Caucasian,56,79\n\
         Male,AfricanAmerican,56,80\n\
         Male,Other,5,13\n\
         Female,Caucasian,7,3\n\
         Female,AfricanAmerican,6,9\n\
         Female,Other,1,1\n",
    )
    .expect("valid table")
}

fn two_test_model() -> ObservationModel {
    ObservationModel::new(vec![
        Observation::Binomial { n: 10, m: 6 },
        Observation::Binomial { n: 7, m: 4 },
    ])
    .expect("valid model")
}

fn two_test_table() -> Result<PosteriorTable, String> {
    let prior = PriorGrid::new(vec![
        GridPoint { theta: 0.35, weight: 0.5 },
        GridPoint { theta: 0.5, weight: 0.5 },
    ])
    .map_err(|e| e.to_string())?;
    grid::posterior(&prior, &two_test_model()).map_err(|e| e.to_string())
}

fn blood_model() -> ObservationModel {
    ObservationModel::new(vec![Observation::NegativeBinomial { kappa: 1, m: 7 }])
        .expect("valid model")
}

fn blood_table(weight_low: f64, weight_high: f64) -> Result<PosteriorTable, String> {
    let prior = PriorGrid::new(vec![
        GridPoint { theta: 0.1, weight: weight_low },
        GridPoint { theta: 0.2, weight: weight_high },
    ])
    .map_err(|e| e.to_string())?;
    grid::posterior(&prior, &blood_model()).map_err(|e| e.to_string())
}

fn vaccine_table() -> Result<PosteriorTable, String> {
    let thetas: Vec<f64> = (1..=10).map(|i| i as f64 / 10.0).collect();
    let prior = PriorGrid::uniform(&thetas).map_err(|e| e.to_string())?;
    let model = ObservationModel::new(vec![Observation::Binomial { n: 10, m: 7 }])
        .map_err(|e| e.to_string())?;
    grid::posterior(&prior, &model).map_err(|e| e.to_string())
}

pub fn registry() -> Vec<Fixture> {
    let mut fixtures = vec![
        Fixture {
            id: "uniform-pmf",
            scenario: "equal assignment to one of five treatment groups",
            expected: Expected::Value { expected: 0.2, tolerance: 0.0 },
            compute: Box::new(|| {
                let d = bdt_core::distributions::DiscreteUniform::new(5)
                    .map_err(|e| e.to_string())?;
                value(d.pmf(3))
            }),
        },
        Fixture {
            id: "uniform-variance",
            scenario: "variance of the five-group assignment",
            expected: Expected::Value { expected: 2.0, tolerance: 0.0 },
            compute: Box::new(|| {
                let d = bdt_core::distributions::DiscreteUniform::new(5)
                    .map_err(|e| e.to_string())?;
                value(d.variance())
            }),
        },
        Fixture {
            id: "binomial-pmf",
            scenario: "exactly 5 colon-cancer patients among 20 sampled at rate 0.3",
            expected: Expected::Value { expected: 0.1789, tolerance: 1e-4 },
            compute: Box::new(|| {
                let d = bdt_core::distributions::Binomial::new(20, 0.3)
                    .map_err(|e| e.to_string())?;
                value(d.pmf(5))
            }),
        },
        Fixture {
            id: "poisson-pmf",
            scenario: "exactly 4 adverse reactions in a day at rate 2.1",
            expected: Expected::Value { expected: 0.0992, tolerance: 1e-4 },
            compute: Box::new(|| {
                let d = bdt_core::distributions::Poisson::new(2.1).map_err(|e| e.to_string())?;
                value(d.pmf(4))
            }),
        },
        Fixture {
            id: "negbinomial-pmf",
            scenario: "10 non-responders before the third response at success rate 0.33",
            expected: Expected::Value { expected: 0.0432, tolerance: 1e-4 },
            compute: Box::new(|| {
                let d = bdt_core::distributions::NegativeBinomial::new(3, 0.33)
                    .map_err(|e| e.to_string())?;
                value(d.pmf(10))
            }),
        },
        Fixture {
            id: "hospitalization-conditional",
            scenario: "P(hospitalized | male) from the gender-by-race count table",
            expected: Expected::Value { expected: 0.405, tolerance: 5e-4 },
            compute: Box::new(|| {
                hospitalization_table()
                    .conditional(|labels| labels[0] == "Male", |col| col == "hospitalized")
                    .map(Computed::Value)
                    .map_err(|e| e.to_string())
            }),
        },
        Fixture {
            id: "survival-total-probability",
            scenario: "overall survival across early and late diagnosis stages",
            expected: Expected::Value { expected: 0.74, tolerance: 1e-12 },
            compute: Box::new(|| value(survival_partition().total_probability())),
        },
        Fixture {
            id: "survival-stage-posterior",
            scenario: "probability of early-stage diagnosis given survival",
            expected: Expected::Value { expected: 0.973, tolerance: 1e-3 },
            compute: Box::new(|| {
                survival_partition()
                    .bayes_posterior("early-stage")
                    .map(Computed::Value)
                    .map_err(|e| e.to_string())
            }),
        },
        Fixture {
            id: "hiv-ppv",
            scenario: "probability of infection after a positive screen at prevalence 0.001",
            expected: Expected::Value { expected: 0.045, tolerance: 1e-3 },
            compute: Box::new(|| hiv_test().ppv().map(Computed::Value).map_err(|e| e.to_string())),
        },
        Fixture {
            id: "hiv-npv",
            scenario: "probability of health after a negative screen",
            expected: Expected::Value { expected: 0.999949, tolerance: 1e-5 },
            compute: Box::new(|| hiv_test().npv().map(Computed::Value).map_err(|e| e.to_string())),
        },
        Fixture {
            id: "hiv-bayes-factor",
            scenario: "evidence carried by a positive screen: sens/(1-spec)",
            expected: Expected::Value { expected: 47.5, tolerance: 1e-9 },
            compute: Box::new(|| {
                hiv_test()
                    .bayes_factor_positive()
                    .map(Computed::Value)
                    .map_err(|e| e.to_string())
            }),
        },
        Fixture {
            id: "hiv-posterior-odds",
            scenario: "prior odds of infection scaled by the positive-screen factor",
            expected: Expected::Value { expected: 0.0475, tolerance: 5e-4 },
            compute: Box::new(|| {
                let test = hiv_test();
                let prior_odds = odds(test.prevalence()).map_err(|e| e.to_string())?;
                let bf = test.bayes_factor_positive().map_err(|e| e.to_string())?;
                value(posterior_odds(prior_odds, bf))
            }),
        },
        Fixture {
            id: "hiv-prior-positive",
            scenario: "prior bar: infection probability before testing",
            expected: Expected::Value { expected: 0.001, tolerance: 0.0 },
            compute: Box::new(|| {
                hiv_test()
                    .posterior_from_test(TestResult::Positive)
                    .map(|update| Computed::Value(update.prior))
                    .map_err(|e| e.to_string())
            }),
        },
        Fixture {
            id: "hiv-prior-negative",
            scenario: "prior bar: health probability before testing",
            expected: Expected::Value { expected: 0.999, tolerance: 1e-12 },
            compute: Box::new(|| {
                hiv_test()
                    .posterior_from_test(TestResult::Positive)
                    .map(|update| Computed::Value(1.0 - update.prior))
                    .map_err(|e| e.to_string())
            }),
        },
        Fixture {
            id: "hiv-posterior-positive",
            scenario: "posterior bar: infection probability after a positive screen",
            expected: Expected::Value { expected: 0.045, tolerance: 1e-3 },
            compute: Box::new(|| {
                hiv_test()
                    .posterior_from_test(TestResult::Positive)
                    .map(|update| Computed::Value(update.posterior))
                    .map_err(|e| e.to_string())
            }),
        },
        Fixture {
            id: "hiv-posterior-negative",
            scenario: "posterior bar: health probability after a positive screen",
            expected: Expected::Value { expected: 0.955, tolerance: 1e-3 },
            compute: Box::new(|| {
                hiv_test()
                    .posterior_from_test(TestResult::Positive)
                    .map(|update| Computed::Value(1.0 - update.posterior))
                    .map_err(|e| e.to_string())
            }),
        },
        Fixture {
            id: "two-test-likelihood-at-half",
            scenario: "joint mass of 6/10 and 4/7 positives at sensitivity 0.5",
            expected: Expected::Value { expected: 0.056076, tolerance: 1e-6 },
            compute: Box::new(|| {
                two_test_model()
                    .log_likelihood(0.5)
                    .map(|l| Computed::Value(l.exp()))
                    .map_err(|e| e.to_string())
            }),
        },
        Fixture {
            id: "two-test-likelihood-at-low",
            scenario: "joint mass of the same data at sensitivity 0.35",
            expected: Expected::Value { expected: 0.0099389, tolerance: 1e-6 },
            compute: Box::new(|| {
                two_test_model()
                    .log_likelihood(0.35)
                    .map(|l| Computed::Value(l.exp()))
                    .map_err(|e| e.to_string())
            }),
        },
        Fixture {
            id: "two-test-marginal",
            scenario: "marginal likelihood under the 50/50 sensitivity prior",
            expected: Expected::Value { expected: 0.0330077, tolerance: 1e-6 },
            compute: Box::new(|| two_test_table().map(|t| Computed::Value(t.marginal_likelihood()))),
        },
        Fixture {
            id: "two-test-posterior-low",
            scenario: "posterior mass on sensitivity 0.35",
            expected: Expected::Value { expected: 0.151, tolerance: 1e-3 },
            compute: Box::new(|| two_test_table().map(|t| Computed::Value(t.entries()[0].posterior))),
        },
        Fixture {
            id: "two-test-posterior-high",
            scenario: "posterior mass on sensitivity 0.5",
            expected: Expected::Value { expected: 0.849, tolerance: 1e-3 },
            compute: Box::new(|| two_test_table().map(|t| Computed::Value(t.entries()[1].posterior))),
        },
        Fixture {
            id: "two-test-bayes-factor",
            scenario: "likelihood ratio of sensitivity 0.5 against 0.35",
            expected: Expected::Value { expected: 5.64, tolerance: 0.01 },
            compute: Box::new(|| {
                grid::point_bayes_factor(&two_test_model(), 0.5, 0.35)
                    .map(Computed::Value)
                    .map_err(|e| e.to_string())
            }),
        },
        Fixture {
            id: "two-test-evidence",
            scenario: "evidence category of the 5.64 likelihood ratio",
            expected: Expected::Label("Substantial"),
            compute: Box::new(|| {
                let bf = grid::point_bayes_factor(&two_test_model(), 0.5, 0.35)
                    .map_err(|e| e.to_string())?;
                let report = evidence::classify_bf(bf).map_err(|e| e.to_string())?;
                Ok(Computed::Label(report.category.to_string()))
            }),
        },
        Fixture {
            id: "blood-marginal",
            scenario: "marginal mass of 7 failed donations before a match, 3:1 prior",
            expected: Expected::Value { expected: 0.046358, tolerance: 1e-5 },
            compute: Box::new(|| blood_table(0.75, 0.25).map(|t| Computed::Value(t.marginal_likelihood()))),
        },
        Fixture {
            id: "blood-posterior-rare-group",
            scenario: "posterior that the match was the single rarer-group patient",
            expected: Expected::Value { expected: 0.226, tolerance: 1e-3 },
            compute: Box::new(|| blood_table(0.75, 0.25).map(|t| Computed::Value(t.entries()[1].posterior))),
        },
        Fixture {
            id: "blood-posterior-common-group",
            scenario: "posterior that the match was one of the three common-group patients",
            expected: Expected::Value { expected: 0.774, tolerance: 1e-3 },
            compute: Box::new(|| blood_table(0.75, 0.25).map(|t| Computed::Value(t.entries()[0].posterior))),
        },
        Fixture {
            id: "blood-uniform-posterior-rare-group",
            scenario: "rarer-group posterior under a 50/50 prior",
            expected: Expected::Value { expected: 0.467, tolerance: 1e-3 },
            compute: Box::new(|| blood_table(0.5, 0.5).map(|t| Computed::Value(t.entries()[1].posterior))),
        },
        Fixture {
            id: "blood-uniform-posterior-common-group",
            scenario: "common-group posterior under a 50/50 prior",
            expected: Expected::Value { expected: 0.533, tolerance: 1e-3 },
            compute: Box::new(|| blood_table(0.5, 0.5).map(|t| Computed::Value(t.entries()[0].posterior))),
        },
        Fixture {
            id: "vaccine-marginal",
            scenario: "marginal mass of 7 responders in 10 under the flat ten-point prior",
            expected: Expected::Value { expected: 0.0909993, tolerance: 1e-6 },
            compute: Box::new(|| vaccine_table().map(|t| Computed::Value(t.marginal_likelihood()))),
        },
        Fixture {
            id: "vaccine-posterior-mean",
            scenario: "posterior mean response probability",
            expected: Expected::Value { expected: 0.667, tolerance: 1e-3 },
            compute: Box::new(|| vaccine_table().map(|t| Computed::Value(t.mean()))),
        },
        Fixture {
            id: "vaccine-posterior-mode",
            scenario: "posterior mode over the grid",
            expected: Expected::Value { expected: 0.7, tolerance: 0.0 },
            compute: Box::new(|| vaccine_table().map(|t| Computed::Value(t.mode().0))),
        },
        Fixture {
            id: "vaccine-nearest-grid",
            scenario: "grid point nearest the posterior mean",
            expected: Expected::Value { expected: 0.7, tolerance: 0.0 },
            compute: Box::new(|| vaccine_table().map(|t| Computed::Value(t.nearest_grid_estimate()))),
        },
        Fixture {
            id: "vaccine-mle-closed",
            scenario: "closed-form maximum likelihood estimate of the response rate",
            expected: Expected::Value { expected: 0.7, tolerance: 0.0 },
            compute: Box::new(|| {
                mle::binomial_mle_closed(7, 10)
                    .map(|r| Computed::Value(r.theta_hat))
                    .map_err(|e| e.to_string())
            }),
        },
        Fixture {
            id: "vaccine-mle-numeric",
            scenario: "golden-section maximum likelihood estimate",
            expected: Expected::Value { expected: 0.7, tolerance: 1e-8 },
            compute: Box::new(|| {
                mle::binomial_mle_numeric(7, 10, 1e-9)
                    .map(|r| Computed::Value(r.theta_hat))
                    .map_err(|e| e.to_string())
            }),
        },
        Fixture {
            id: "evidence-hiv-category",
            scenario: "category of the 47.5 screening factor on the raw scale",
            expected: Expected::Label("Strong"),
            compute: Box::new(|| {
                evidence::classify_bf(47.5)
                    .map(|r| Computed::Label(r.category.to_string()))
                    .map_err(|e| e.to_string())
            }),
        },
        Fixture {
            id: "evidence-two-ln-value",
            scenario: "2·ln of the 47.5 screening factor",
            expected: Expected::Value { expected: 7.721, tolerance: 1e-3 },
            compute: Box::new(|| {
                evidence::classify_two_ln_bf(47.5)
                    .map(|r| Computed::Value(r.two_ln_bf))
                    .map_err(|e| e.to_string())
            }),
        },
        Fixture {
            id: "evidence-two-ln-category",
            scenario: "category of the same factor on the 2·ln scale",
            expected: Expected::Label("Strong"),
            compute: Box::new(|| {
                evidence::classify_two_ln_bf(47.5)
                    .map(|r| Computed::Label(r.category.to_string()))
                    .map_err(|e| e.to_string())
            }),
        },
        Fixture {
            id: "converge-at-start",
            scenario: "zero imaginary samples leave the starting belief untouched",
            expected: Expected::Value { expected: 0.9, tolerance: 0.0 },
            compute: Box::new(|| {
                network::converge(0.0, 0.9, 0.5, 50.0)
                    .map(Computed::Value)
                    .map_err(|e| e.to_string())
            }),
        },
        Fixture {
            id: "converge-high-risk-midpoint",
            scenario: "high-risk positive probability at 50 imaginary samples",
            expected: Expected::Value { expected: 0.64715, tolerance: 1e-5 },
            compute: Box::new(|| {
                network::converge(50.0, 0.9, 0.5, 50.0)
                    .map(Computed::Value)
                    .map_err(|e| e.to_string())
            }),
        },
    ];

    // Full posterior column for the vaccine grid, one fixture per theta.
    let vaccine_ids = [
        "vaccine-posterior-theta-0.1",
        "vaccine-posterior-theta-0.2",
        "vaccine-posterior-theta-0.3",
        "vaccine-posterior-theta-0.4",
        "vaccine-posterior-theta-0.5",
        "vaccine-posterior-theta-0.6",
        "vaccine-posterior-theta-0.7",
        "vaccine-posterior-theta-0.8",
        "vaccine-posterior-theta-0.9",
        "vaccine-posterior-theta-1.0",
    ];
    let vaccine_expected = [
        0.000, 0.001, 0.010, 0.047, 0.129, 0.236, 0.293, 0.221, 0.063, 0.000,
    ];
    for (index, (id, expected)) in vaccine_ids.into_iter().zip(vaccine_expected).enumerate() {
        fixtures.push(Fixture {
            id,
            scenario: "posterior column of the vaccine grid",
            expected: Expected::Value { expected, tolerance: 1e-3 },
            compute: Box::new(move || {
                vaccine_table().map(|t| Computed::Value(t.entries()[index].posterior))
            }),
        });
    }
    fixtures
}

/// Run every fixture whose id contains `filter` (all of them when `None`).
pub fn run(filter: Option<&str>) -> Vec<Outcome> {
    registry()
        .into_iter()
        .filter(|fixture| filter.is_none_or(|needle| fixture.id.contains(needle)))
        .map(|fixture| {
            let computed = (fixture.compute)();
            let (expected_text, tolerance) = match fixture.expected {
                Expected::Value { expected, tolerance } => {
                    (format!("{expected}"), Some(tolerance))
                }
                Expected::Label(label) => (label.to_string(), None),
            };
            let (computed_text, pass) = match (&fixture.expected, &computed) {
                (Expected::Value { expected, tolerance }, Ok(Computed::Value(got))) => {
                    (format!("{got:.9}"), (got - expected).abs() <= *tolerance)
                }
                (Expected::Label(want), Ok(Computed::Label(got))) => {
                    (got.clone(), got == want)
                }
                (_, Ok(_)) => ("wrong result kind".to_string(), false),
                (_, Err(message)) => (format!("error: {message}"), false),
            };
            Outcome {
                id: fixture.id,
                scenario: fixture.scenario,
                expected: expected_text,
                computed: computed_text,
                tolerance,
                pass,
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_registered_fixture_passes() {
        let outcomes = run(None);
        assert!(outcomes.len() >= 20);
        for outcome in &outcomes {
            assert!(
                outcome.pass,
                "{}: expected {} got {}",
                outcome.id, outcome.expected, outcome.computed
            );
        }
    }

    #[test]
    fn filter_narrows_by_id_substring() {
        let outcomes = run(Some("hiv"));
        assert!(!outcomes.is_empty());
        assert!(outcomes.iter().all(|o| o.id.contains("hiv")));
        assert!(run(Some("no-such-fixture")).is_empty());
    }
}
