//! Event-level probability algebra: conditional probability, contingency
//! tables, the law of total probability, Bayes theorem, and odds.
//!
//! Contingency-table queries aggregate counts in integer arithmetic and
//! divide once at the end, so marginals are bit-reproducible. Partitions are
//! validated rather than silently renormalized: a prior vector that does not
//! sum to one is rejected.

use thiserror::Error;

/// Tolerance for "priors sum to one" checks.
const PRIOR_SUM_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ProbError {
    #[error("marginal probability is zero")]
    ZeroMarginal,
    #[error("joint probability {joint} exceeds marginal {marginal}")]
    Inconsistent { joint: f64, marginal: f64 },
    #[error("probability {0} outside [0, 1]")]
    InvalidProbability(f64),
    #[error("partition priors sum to {0}, expected 1")]
    UnnormalizedPartition(f64),
    #[error("evidence has zero total probability")]
    ZeroEvidence,
    #[error("unknown branch label: {0}")]
    UnknownBranch(String),
    #[error("odds undefined at probability 1")]
    InfiniteOdds,
    #[error("malformed table: {0}")]
    MalformedTable(String),
}

/// P(E₁ | E₂) = P(E₁ ∩ E₂) / P(E₂), for marginal > 0 and joint ≤ marginal.
pub fn conditional_probability(joint: f64, marginal: f64) -> Result<f64, ProbError> {
    if !(0.0..=1.0).contains(&joint) {
        return Err(ProbError::InvalidProbability(joint));
    }
    if !(0.0..=1.0).contains(&marginal) {
        return Err(ProbError::InvalidProbability(marginal));
    }
    if marginal == 0.0 {
        return Err(ProbError::ZeroMarginal);
    }
    if joint > marginal {
        return Err(ProbError::Inconsistent { joint, marginal });
    }
    Ok(joint / marginal)
}

/// Odds of an event: p / (1 − p), for p ∈ [0, 1).
///
/// p = 1 is an error rather than +inf so that downstream products with
/// zero priors cannot produce NaN.
pub fn odds(p: f64) -> Result<f64, ProbError> {
    if !(0.0..=1.0).contains(&p) {
        return Err(ProbError::InvalidProbability(p));
    }
    if p == 1.0 {
        return Err(ProbError::InfiniteOdds);
    }
    Ok(p / (1.0 - p))
}

/// Posterior odds = Bayes factor × prior odds. Both inputs must be ≥ 0.
pub fn posterior_odds(prior_odds: f64, bayes_factor: f64) -> f64 {
    bayes_factor * prior_odds
}

/// One row of a contingency table: its stratum labels plus a count per
/// outcome column.
#[derive(Debug, Clone, PartialEq)]
pub struct TableRow {
    pub labels: Vec<String>,
    pub counts: Vec<u64>,
}

/// Cross-tabulated counts: rows are strata (possibly multi-label, e.g.
/// gender × race), columns are outcomes.
#[derive(Debug, Clone, PartialEq)]
pub struct ContingencyTable {
    stratum_names: Vec<String>,
    column_labels: Vec<String>,
    rows: Vec<TableRow>,
}

impl ContingencyTable {
    pub fn new(
        stratum_names: Vec<String>,
        column_labels: Vec<String>,
        rows: Vec<TableRow>,
    ) -> Result<Self, ProbError> {
        if column_labels.is_empty() {
            return Err(ProbError::MalformedTable(
                "table needs at least one count column".into(),
            ));
        }
        if rows.is_empty() {
            return Err(ProbError::MalformedTable("table has no rows".into()));
        }
        for row in &rows {
            if row.labels.len() != stratum_names.len() {
                return Err(ProbError::MalformedTable(format!(
                    "row has {} labels, expected {}",
                    row.labels.len(),
                    stratum_names.len()
                )));
            }
            if row.counts.len() != column_labels.len() {
                return Err(ProbError::MalformedTable(format!(
                    "row has {} counts, expected {}",
                    row.counts.len(),
                    column_labels.len()
                )));
            }
        }
        Ok(Self {
            stratum_names,
            column_labels,
            rows,
        })
    }

    /// Parse from CSV. The header row names the columns; within each data
    /// row, the leading cells that do not parse as nonnegative integers are
    /// stratum labels and every remaining cell must be a count. The label
    /// width is fixed by the first data row.
    pub fn from_csv(text: &str) -> Result<Self, ProbError> {
        let mut lines = text
            .lines()
            .map(str::trim_end)
            .filter(|l| !l.trim().is_empty());
        let header: Vec<String> = lines
            .next()
            .ok_or_else(|| ProbError::MalformedTable("empty input".into()))?
            .split(',')
            .map(|c| c.trim().to_string())
            .collect();
        let data: Vec<Vec<String>> = lines
            .map(|l| l.split(',').map(|c| c.trim().to_string()).collect())
            .collect();
        let first = data
            .first()
            .ok_or_else(|| ProbError::MalformedTable("no data rows".into()))?;
        let label_width = first
            .iter()
            .take_while(|cell| cell.parse::<u64>().is_err())
            .count();
        if label_width >= header.len() {
            return Err(ProbError::MalformedTable(
                "first data row contains no counts".into(),
            ));
        }
        let mut rows = Vec::with_capacity(data.len());
        for cells in &data {
            if cells.len() != header.len() {
                return Err(ProbError::MalformedTable(format!(
                    "row has {} cells, expected {}",
                    cells.len(),
                    header.len()
                )));
            }
            let labels = cells[..label_width].to_vec();
            let counts = cells[label_width..]
                .iter()
                .map(|c| {
                    c.parse::<u64>().map_err(|_| {
                        ProbError::MalformedTable(format!("not a nonnegative count: {c:?}"))
                    })
                })
                .collect::<Result<Vec<u64>, _>>()?;
            rows.push(TableRow { labels, counts });
        }
        Self::new(
            header[..label_width].to_vec(),
            header[label_width..].to_vec(),
            rows,
        )
    }

    pub fn stratum_names(&self) -> &[String] {
        &self.stratum_names
    }

    pub fn column_labels(&self) -> &[String] {
        &self.column_labels
    }

    pub fn rows(&self) -> &[TableRow] {
        &self.rows
    }

    /// P(event | given): counts in the selected rows falling in the selected
    /// columns, over all counts in the selected rows. Aggregation is exact
    /// integer arithmetic with a single final division.
    pub fn conditional<G, E>(&self, given: G, event: E) -> Result<f64, ProbError>
    where
        G: Fn(&[String]) -> bool,
        E: Fn(&str) -> bool,
    {
        let mut marginal: u64 = 0;
        let mut joint: u64 = 0;
        for row in &self.rows {
            if !given(&row.labels) {
                continue;
            }
            for (label, &count) in self.column_labels.iter().zip(&row.counts) {
                marginal += count;
                if event(label) {
                    joint += count;
                }
            }
        }
        if marginal == 0 {
            return Err(ProbError::ZeroMarginal);
        }
        Ok(joint as f64 / marginal as f64)
    }
}

/// One branch of a partition of the sample space: a label, its prior
/// probability, and the conditional probability of the evidence given it.
#[derive(Debug, Clone, PartialEq)]
pub struct Branch {
    pub label: String,
    pub prior: f64,
    pub conditional: f64,
}

impl Branch {
    pub fn new(label: impl Into<String>, prior: f64, conditional: f64) -> Self {
        Self {
            label: label.into(),
            prior,
            conditional,
        }
    }
}

/// A finite partition with per-branch priors summing to one and evidence
/// conditionals in [0, 1].
#[derive(Debug, Clone, PartialEq)]
pub struct Partition {
    branches: Vec<Branch>,
}

impl Partition {
    pub fn new(branches: Vec<Branch>) -> Result<Self, ProbError> {
        if branches.is_empty() {
            return Err(ProbError::UnnormalizedPartition(0.0));
        }
        let mut sum = 0.0;
        for b in &branches {
            if !(0.0..=1.0).contains(&b.prior) {
                return Err(ProbError::InvalidProbability(b.prior));
            }
            if !(0.0..=1.0).contains(&b.conditional) {
                return Err(ProbError::InvalidProbability(b.conditional));
            }
            sum += b.prior;
        }
        if (sum - 1.0).abs() > PRIOR_SUM_TOL {
            return Err(ProbError::UnnormalizedPartition(sum));
        }
        Ok(Self { branches })
    }

    pub fn branches(&self) -> &[Branch] {
        &self.branches
    }

    /// Law of total probability: Σᵢ P(E | branchᵢ) · P(branchᵢ).
    pub fn total_probability(&self) -> f64 {
        self.branches
            .iter()
            .map(|b| b.conditional * b.prior)
            .sum()
    }

    /// Bayes theorem for one branch:
    /// P(branch | E) = P(E | branch) P(branch) / P(E).
    pub fn bayes_posterior(&self, target: &str) -> Result<f64, ProbError> {
        let branch = self
            .branches
            .iter()
            .find(|b| b.label == target)
            .ok_or_else(|| ProbError::UnknownBranch(target.to_string()))?;
        let evidence = self.total_probability();
        if evidence == 0.0 {
            return Err(ProbError::ZeroEvidence);
        }
        Ok(branch.conditional * branch.prior / evidence)
    }
}
