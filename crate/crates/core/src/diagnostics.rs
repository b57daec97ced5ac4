//! Diagnostic-test calculus for screening scenarios: predictive values,
//! test-result Bayes factors, and prior-to-posterior updates.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DiagError {
    #[error("probability {0} outside [0, 1]")]
    InvalidProbability(f64),
    #[error("degenerate test: conditioning event has zero probability")]
    DegenerateTest,
    #[error("bayes factor is infinite (perfect specificity)")]
    InfiniteBayesFactor,
}

/// Outcome of administering the test once.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TestResult {
    Positive,
    Negative,
}

/// Prior and posterior disease probability around one test result.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PriorPosterior {
    pub prior: f64,
    pub posterior: f64,
}

/// A screening test characterized by sensitivity P(T+ | D+), specificity
/// P(T− | D−), and disease prevalence P(D+).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiagnosticTest {
    sensitivity: f64,
    specificity: f64,
    prevalence: f64,
}

impl DiagnosticTest {
    pub fn new(sensitivity: f64, specificity: f64, prevalence: f64) -> Result<Self, DiagError> {
        for value in [sensitivity, specificity, prevalence] {
            if !(0.0..=1.0).contains(&value) {
                return Err(DiagError::InvalidProbability(value));
            }
        }
        Ok(Self {
            sensitivity,
            specificity,
            prevalence,
        })
    }

    pub fn sensitivity(&self) -> f64 {
        self.sensitivity
    }

    pub fn specificity(&self) -> f64 {
        self.specificity
    }

    pub fn prevalence(&self) -> f64 {
        self.prevalence
    }

    /// Positive predictive value:
    /// sens·prev / (sens·prev + (1 − spec)(1 − prev)).
    pub fn ppv(&self) -> Result<f64, DiagError> {
        let true_pos = self.sensitivity * self.prevalence;
        let false_pos = (1.0 - self.specificity) * (1.0 - self.prevalence);
        let denom = true_pos + false_pos;
        if denom == 0.0 {
            return Err(DiagError::DegenerateTest);
        }
        Ok(true_pos / denom)
    }

    /// Negative predictive value:
    /// spec(1 − prev) / ((1 − sens)prev + spec(1 − prev)).
    pub fn npv(&self) -> Result<f64, DiagError> {
        let true_neg = self.specificity * (1.0 - self.prevalence);
        let false_neg = (1.0 - self.sensitivity) * self.prevalence;
        let denom = false_neg + true_neg;
        if denom == 0.0 {
            return Err(DiagError::DegenerateTest);
        }
        Ok(true_neg / denom)
    }

    /// Bayes factor carried by a positive result:
    /// P(T+ | D+) / P(T+ | D−) = sens / (1 − spec).
    ///
    /// Perfect specificity makes the factor infinite; that is reported as a
    /// typed error so callers can classify it as decisive evidence instead
    /// of propagating a floating infinity.
    pub fn bayes_factor_positive(&self) -> Result<f64, DiagError> {
        let false_pos_rate = 1.0 - self.specificity;
        if false_pos_rate == 0.0 {
            return if self.sensitivity > 0.0 {
                Err(DiagError::InfiniteBayesFactor)
            } else {
                Err(DiagError::DegenerateTest)
            };
        }
        Ok(self.sensitivity / false_pos_rate)
    }

    /// Bayes factor carried by a negative result:
    /// P(T− | D+) / P(T− | D−) = (1 − sens) / spec.
    pub fn bayes_factor_negative(&self) -> Result<f64, DiagError> {
        if self.specificity == 0.0 {
            return if self.sensitivity < 1.0 {
                Err(DiagError::InfiniteBayesFactor)
            } else {
                Err(DiagError::DegenerateTest)
            };
        }
        Ok((1.0 - self.sensitivity) / self.specificity)
    }

    /// Disease probability before and after observing `result`. The prior
    /// is the prevalence; the posterior is PPV for a positive result and
    /// 1 − NPV for a negative one.
    pub fn posterior_from_test(&self, result: TestResult) -> Result<PriorPosterior, DiagError> {
        let posterior = match result {
            TestResult::Positive => self.ppv()?,
            TestResult::Negative => 1.0 - self.npv()?,
        };
        Ok(PriorPosterior {
            prior: self.prevalence,
            posterior,
        })
    }
}
