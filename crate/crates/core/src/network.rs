//! Seeded random DAG generation, the two-node disease/test network, and
//! prior-strength convergence curves.
//!
//! # RNG contract
//!
//! Edge sampling uses ChaCha with 8 rounds, keyed from the 64-bit seed via
//! the standard SplitMix64 expansion (`ChaCha8Rng::seed_from_u64`), and
//! converts each `u64` draw to a unit uniform by 53-bit mantissa division.
//! Candidate node pairs (i, j), i < j, are visited in row-major order
//! (i ascending, then j ascending) and consume exactly one draw each.
//! The generated edge set is therefore a pure function of
//! (node count, edge probability, seed) on every platform.

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};
use thiserror::Error;

use crate::diagnostics::DiagnosticTest;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum NetworkError {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("edge ({0}, {1}) violates the topological order")]
    CycleDetected(usize, usize),
    #[error("conditioning event has zero probability")]
    ZeroConditioningEvent,
}

/// One unit-uniform draw: the top 53 bits of a u64 over 2⁵³.
fn unit_uniform(rng: &mut ChaCha8Rng) -> f64 {
    (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// A directed acyclic graph over nodes "V1" … "VN" with edges only from
/// lower to higher index, so acyclicity holds by construction.
#[derive(Debug, Clone, PartialEq)]
pub struct Dag {
    node_count: usize,
    edges: Vec<(usize, usize)>,
    seed: u64,
    edge_prob: f64,
}

/// Sample a DAG: each pair (i, j) with i < j is included independently with
/// probability `edge_prob`, pairs visited in row-major order.
pub fn random_dag(node_count: usize, edge_prob: f64, seed: u64) -> Result<Dag, NetworkError> {
    if node_count < 1 {
        return Err(NetworkError::InvalidParameter(
            "node count must be at least 1".into(),
        ));
    }
    if !(0.0..=1.0).contains(&edge_prob) {
        return Err(NetworkError::InvalidParameter(format!(
            "edge probability must lie in [0, 1], got {edge_prob}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for i in 0..node_count.saturating_sub(1) {
        for j in (i + 1)..node_count {
            if unit_uniform(&mut rng) < edge_prob {
                edges.push((i, j));
            }
        }
    }
    Ok(Dag {
        node_count,
        edges,
        seed,
        edge_prob,
    })
}

impl Dag {
    pub fn node_count(&self) -> usize {
        self.node_count
    }

    /// Edges as 0-based (from, to) index pairs in generation order.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn edge_prob(&self) -> f64 {
        self.edge_prob
    }

    /// Display label of a 0-based node index.
    pub fn node_label(&self, index: usize) -> String {
        format!("V{}", index + 1)
    }

    /// Index order 0..N, verified against every edge. The check can only
    /// fail on a hand-built edge set; generated graphs satisfy it by
    /// construction.
    pub fn topological_order(&self) -> Result<Vec<usize>, NetworkError> {
        for &(from, to) in &self.edges {
            if from >= to {
                return Err(NetworkError::CycleDetected(from, to));
            }
        }
        Ok((0..self.node_count).collect())
    }

    /// DOT rendering: every node declared, then edges in generation order.
    /// LF line endings throughout.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph G {\n");
        for i in 0..self.node_count {
            out.push_str(&format!("  {};\n", self.node_label(i)));
        }
        for &(from, to) in &self.edges {
            out.push_str(&format!(
                "  {} -> {};\n",
                self.node_label(from),
                self.node_label(to)
            ));
        }
        out.push_str("}\n");
        out
    }

    /// Edge list as `from,to` CSV, in generation order.
    pub fn adjacency_csv(&self) -> String {
        let mut out = String::from("from,to\n");
        for &(from, to) in &self.edges {
            out.push_str(&format!(
                "{},{}\n",
                self.node_label(from),
                self.node_label(to)
            ));
        }
        out
    }
}

/// Joint distribution of the two-node disease → test-result network.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoNodeJoint {
    pub disease_pos_test_pos: f64,
    pub disease_pos_test_neg: f64,
    pub disease_neg_test_pos: f64,
    pub disease_neg_test_neg: f64,
}

/// Build the 4-cell joint from a diagnostic test: the disease node carries
/// the prevalence and the test node the sensitivity/specificity tables.
pub fn two_node_diagnostic_net(test: &DiagnosticTest) -> TwoNodeJoint {
    let sens = test.sensitivity();
    let spec = test.specificity();
    let prev = test.prevalence();
    TwoNodeJoint {
        disease_pos_test_pos: sens * prev,
        disease_pos_test_neg: (1.0 - sens) * prev,
        disease_neg_test_pos: (1.0 - spec) * (1.0 - prev),
        disease_neg_test_neg: spec * (1.0 - prev),
    }
}

impl TwoNodeJoint {
    pub fn marginal_disease(&self) -> f64 {
        self.disease_pos_test_pos + self.disease_pos_test_neg
    }

    pub fn marginal_test_positive(&self) -> f64 {
        self.disease_pos_test_pos + self.disease_neg_test_pos
    }

    /// P(disease | test positive) by conditioning on the positive column.
    pub fn disease_given_positive(&self) -> Result<f64, NetworkError> {
        let denom = self.disease_pos_test_pos + self.disease_neg_test_pos;
        if denom == 0.0 {
            return Err(NetworkError::ZeroConditioningEvent);
        }
        Ok(self.disease_pos_test_pos / denom)
    }

    /// P(disease | test negative).
    pub fn disease_given_negative(&self) -> Result<f64, NetworkError> {
        let denom = self.disease_pos_test_neg + self.disease_neg_test_neg;
        if denom == 0.0 {
            return Err(NetworkError::ZeroConditioningEvent);
        }
        Ok(self.disease_pos_test_neg / denom)
    }
}

/// Positive-result probability after blending a group's starting belief
/// toward `end` with imaginary sample size `n`:
/// end + (start − end)·exp(−n/rate).
pub fn converge(n: f64, start: f64, end: f64, rate: f64) -> Result<f64, NetworkError> {
    if !n.is_finite() || n < 0.0 {
        return Err(NetworkError::InvalidParameter(format!(
            "sample size must be nonnegative and finite, got {n}"
        )));
    }
    if !rate.is_finite() || rate <= 0.0 {
        return Err(NetworkError::InvalidParameter(format!(
            "rate must be positive and finite, got {rate}"
        )));
    }
    for p in [start, end] {
        if !(0.0..=1.0).contains(&p) {
            return Err(NetworkError::InvalidParameter(format!(
                "probability {p} outside [0, 1]"
            )));
        }
    }
    Ok(end + (start - end) * (-n / rate).exp())
}

/// A labeled group with its starting positive-result probability.
#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceGroup {
    pub label: String,
    pub start: f64,
}

impl ConvergenceGroup {
    pub fn new(label: impl Into<String>, start: f64) -> Self {
        Self {
            label: label.into(),
            start,
        }
    }
}

/// Positive-result probabilities for one group across the sample sizes.
#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceCurve {
    pub label: String,
    pub start: f64,
    pub end: f64,
    pub rate: f64,
    pub sample_sizes: Vec<u64>,
    pub positive: Vec<f64>,
}

/// Evaluate every group at every sample size.
pub fn convergence_table(
    groups: &[ConvergenceGroup],
    end: f64,
    rate: f64,
    samples: &[u64],
) -> Result<Vec<ConvergenceCurve>, NetworkError> {
    groups
        .iter()
        .map(|group| {
            let positive = samples
                .iter()
                .map(|&n| converge(n as f64, group.start, end, rate))
                .collect::<Result<Vec<f64>, _>>()?;
            Ok(ConvergenceCurve {
                label: group.label.clone(),
                start: group.start,
                end,
                rate,
                sample_sizes: samples.to_vec(),
                positive,
            })
        })
        .collect()
}

/// Long-format CSV: `group,n,result,probability`, six decimal places, one
/// positive and one negative row per (group, sample size). The negative row
/// is exactly one minus the positive row.
pub fn convergence_csv(curves: &[ConvergenceCurve]) -> String {
    let mut out = String::from("group,n,result,probability\n");
    for curve in curves {
        for (&n, &positive) in curve.sample_sizes.iter().zip(&curve.positive) {
            out.push_str(&format!(
                "{},{},positive,{:.6}\n",
                curve.label, n, positive
            ));
            out.push_str(&format!(
                "{},{},negative,{:.6}\n",
                curve.label,
                n,
                1.0 - positive
            ));
        }
    }
    out
}
