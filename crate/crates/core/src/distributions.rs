//! Discrete distribution families: uniform, binomial, Poisson, negative
//! binomial.
//!
//! Every pmf is evaluated in the log domain (log-gamma for the factorial
//! terms) and exponentiated at the boundary, so that downstream likelihood
//! products over many observations do not underflow. Zero-probability
//! outcomes report `ln_pmf = -inf` rather than NaN, and the degenerate
//! parameter edges (`p = 0`, `p = 1`) return exact 0/1 masses.

use thiserror::Error;

use crate::math::{ln_choose, ln_factorial};

/// Parameter validation failure for a distribution constructor.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum DistError {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

/// Discrete uniform on {1, …, M}.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiscreteUniform {
    m_max: u64,
}

impl DiscreteUniform {
    /// Support size `m_max ≥ 1`.
    pub fn new(m_max: u64) -> Result<Self, DistError> {
        if m_max < 1 {
            return Err(DistError::InvalidParameter(
                "uniform support size must be at least 1".into(),
            ));
        }
        Ok(Self { m_max })
    }

    pub fn support_size(&self) -> u64 {
        self.m_max
    }

    /// 1/M on {1, …, M}, 0 elsewhere.
    pub fn pmf(&self, m: u64) -> f64 {
        if (1..=self.m_max).contains(&m) {
            1.0 / self.m_max as f64
        } else {
            0.0
        }
    }

    pub fn ln_pmf(&self, m: u64) -> f64 {
        if (1..=self.m_max).contains(&m) {
            -(self.m_max as f64).ln()
        } else {
            f64::NEG_INFINITY
        }
    }

    /// (M+1)/2.
    pub fn mean(&self) -> f64 {
        (self.m_max as f64 + 1.0) / 2.0
    }

    /// (M² − 1)/12.
    pub fn variance(&self) -> f64 {
        let m = self.m_max as f64;
        (m * m - 1.0) / 12.0
    }
}

/// Binomial B(n, p): successes in `n` independent trials.
///
/// P(Z = m) = C(n, m) pᵐ (1 − p)ⁿ⁻ᵐ for m = 0, …, n.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Binomial {
    n: u64,
    p: f64,
}

impl Binomial {
    /// `n ≥ 1` trials, success probability `p ∈ [0, 1]`.
    pub fn new(n: u64, p: f64) -> Result<Self, DistError> {
        if n < 1 {
            return Err(DistError::InvalidParameter(
                "binomial trial count must be at least 1".into(),
            ));
        }
        if !(0.0..=1.0).contains(&p) {
            return Err(DistError::InvalidParameter(format!(
                "binomial success probability must lie in [0, 1], got {p}"
            )));
        }
        Ok(Self { n, p })
    }

    pub fn trials(&self) -> u64 {
        self.n
    }

    pub fn success_prob(&self) -> f64 {
        self.p
    }

    pub fn pmf(&self, m: u64) -> f64 {
        let ln = self.ln_pmf(m);
        if ln == f64::NEG_INFINITY {
            0.0
        } else {
            ln.exp()
        }
    }

    pub fn ln_pmf(&self, m: u64) -> f64 {
        if m > self.n {
            return f64::NEG_INFINITY;
        }
        // Degenerate p puts all mass on one endpoint; avoid ln(0).
        if self.p == 0.0 {
            return if m == 0 { 0.0 } else { f64::NEG_INFINITY };
        }
        if self.p == 1.0 {
            return if m == self.n { 0.0 } else { f64::NEG_INFINITY };
        }
        ln_choose(self.n, m)
            + m as f64 * self.p.ln()
            + (self.n - m) as f64 * (1.0 - self.p).ln()
    }

    /// np.
    pub fn mean(&self) -> f64 {
        self.n as f64 * self.p
    }

    /// np(1 − p).
    pub fn variance(&self) -> f64 {
        self.n as f64 * self.p * (1.0 - self.p)
    }
}

/// Poisson with rate λ > 0.
///
/// P(Z = m) = exp(−λ) λᵐ / m! for m = 0, 1, 2, …
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Poisson {
    lambda: f64,
}

impl Poisson {
    pub fn new(lambda: f64) -> Result<Self, DistError> {
        if !lambda.is_finite() || lambda <= 0.0 {
            return Err(DistError::InvalidParameter(format!(
                "poisson rate must be positive and finite, got {lambda}"
            )));
        }
        Ok(Self { lambda })
    }

    pub fn rate(&self) -> f64 {
        self.lambda
    }

    pub fn pmf(&self, m: u64) -> f64 {
        self.ln_pmf(m).exp()
    }

    pub fn ln_pmf(&self, m: u64) -> f64 {
        -self.lambda + m as f64 * self.lambda.ln() - ln_factorial(m)
    }

    pub fn mean(&self) -> f64 {
        self.lambda
    }

    pub fn variance(&self) -> f64 {
        self.lambda
    }

    /// Smallest m* beyond the mean whose upper-tail mass is below 1e-15,
    /// from the Chernoff bound P(Z ≥ m) ≤ exp(−λ)(eλ/m)ᵐ for m > λ.
    ///
    /// Summing the pmf over {0, …, m*} therefore captures all but < 1e-15
    /// of the mass; normalization checks and the binomial approximation
    /// distance truncate there.
    pub fn truncation_cutoff(&self) -> u64 {
        const LN_TAIL: f64 = -34.538776394910684; // ln(1e-15)
        let mut m = self.lambda.ceil() as u64 + 1;
        loop {
            let mf = m as f64;
            let ln_bound = -self.lambda + mf * (1.0 + self.lambda.ln() - mf.ln());
            if ln_bound < LN_TAIL {
                return m;
            }
            m += 1;
        }
    }
}

/// Negative binomial NB(κ, p): failures before the κ-th success.
///
/// P(Z = m) = C(m + κ − 1, m) p^κ (1 − p)ᵐ for m = 0, 1, 2, …
/// With κ = 1 this reduces to the geometric form p(1 − p)ᵐ.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NegativeBinomial {
    kappa: u64,
    p: f64,
}

impl NegativeBinomial {
    /// Target success count `kappa ≥ 1`, per-trial success probability
    /// `p ∈ (0, 1]`.
    pub fn new(kappa: u64, p: f64) -> Result<Self, DistError> {
        if kappa < 1 {
            return Err(DistError::InvalidParameter(
                "negative binomial success target must be at least 1".into(),
            ));
        }
        if !(p > 0.0 && p <= 1.0) {
            return Err(DistError::InvalidParameter(format!(
                "negative binomial success probability must lie in (0, 1], got {p}"
            )));
        }
        Ok(Self { kappa, p })
    }

    pub fn successes(&self) -> u64 {
        self.kappa
    }

    pub fn success_prob(&self) -> f64 {
        self.p
    }

    pub fn pmf(&self, m: u64) -> f64 {
        let ln = self.ln_pmf(m);
        if ln == f64::NEG_INFINITY {
            0.0
        } else {
            ln.exp()
        }
    }

    pub fn ln_pmf(&self, m: u64) -> f64 {
        if self.p == 1.0 {
            // Certain success: zero failures with probability one.
            return if m == 0 { 0.0 } else { f64::NEG_INFINITY };
        }
        ln_choose(m + self.kappa - 1, m)
            + self.kappa as f64 * self.p.ln()
            + m as f64 * (1.0 - self.p).ln()
    }

    /// κ(1 − p)/p.
    pub fn mean(&self) -> f64 {
        self.kappa as f64 * (1.0 - self.p) / self.p
    }

    /// κ(1 − p)/p².
    pub fn variance(&self) -> f64 {
        self.kappa as f64 * (1.0 - self.p) / (self.p * self.p)
    }
}

/// Tagged union over the four families, for callers that pick one at runtime.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DiscreteDistribution {
    Uniform(DiscreteUniform),
    Binomial(Binomial),
    Poisson(Poisson),
    NegativeBinomial(NegativeBinomial),
}

impl DiscreteDistribution {
    pub fn pmf(&self, m: u64) -> f64 {
        match self {
            Self::Uniform(d) => d.pmf(m),
            Self::Binomial(d) => d.pmf(m),
            Self::Poisson(d) => d.pmf(m),
            Self::NegativeBinomial(d) => d.pmf(m),
        }
    }

    pub fn ln_pmf(&self, m: u64) -> f64 {
        match self {
            Self::Uniform(d) => d.ln_pmf(m),
            Self::Binomial(d) => d.ln_pmf(m),
            Self::Poisson(d) => d.ln_pmf(m),
            Self::NegativeBinomial(d) => d.ln_pmf(m),
        }
    }

    pub fn mean(&self) -> f64 {
        match self {
            Self::Uniform(d) => d.mean(),
            Self::Binomial(d) => d.mean(),
            Self::Poisson(d) => d.mean(),
            Self::NegativeBinomial(d) => d.mean(),
        }
    }

    pub fn variance(&self) -> f64 {
        match self {
            Self::Uniform(d) => d.variance(),
            Self::Binomial(d) => d.variance(),
            Self::Poisson(d) => d.variance(),
            Self::NegativeBinomial(d) => d.variance(),
        }
    }
}

/// Total-variation distance between B(n, p) and its Poisson(np)
/// approximation: ½ Σ |Bin(m) − Poisson(m)| over m up to the larger of `n`
/// and the Poisson truncation cutoff (tail mass < 1e-15).
///
/// Bounded above by np² (Le Cam). Defined as 0 at p = 0, where both laws
/// degenerate to a point mass at zero.
pub fn poisson_approx_tv(n: u64, p: f64) -> Result<f64, DistError> {
    let binomial = Binomial::new(n, p)?;
    if p == 0.0 {
        return Ok(0.0);
    }
    let poisson = Poisson::new(n as f64 * p)?;
    let hi = n.max(poisson.truncation_cutoff());
    let mut acc = 0.0;
    for m in 0..=hi {
        acc += (binomial.pmf(m) - poisson.pmf(m)).abs();
    }
    Ok(acc / 2.0)
}
