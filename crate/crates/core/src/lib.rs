//! Discrete Bayesian inference toolkit for clinical-trial style decision
//! problems.
//!
//! The crate covers the pieces needed to run small exact-Bayes analyses over
//! discrete parameter spaces:
//!
//! - [`distributions`]: uniform, binomial, Poisson and negative binomial
//!   families with log-domain pmfs and moments.
//! - [`probability`]: event-level algebra — conditional probability,
//!   contingency-table queries, the law of total probability, Bayes theorem,
//!   odds.
//! - [`diagnostics`]: screening-test calculus (PPV/NPV, test Bayes factors,
//!   prior-to-posterior updates).
//! - [`grid`]: the discrete-grid posterior engine — prior grid × likelihood
//!   of independent observations → marginal likelihood and posterior table.
//! - [`evidence`]: Bayes-factor evidence classification on the raw and
//!   2·ln(BF) scales.
//! - [`mle`]: binomial maximum likelihood (closed form and golden-section),
//!   and the uniform-prior posterior-mode/MLE bridge.
//! - [`network`]: seeded random DAG generation with DOT export, the
//!   two-node disease/test joint, and prior-strength convergence curves.
//!
//! Everything is a pure function over immutable values; all types are safe
//! to share across threads.

pub mod diagnostics;
pub mod distributions;
pub mod evidence;
pub mod grid;
pub mod mle;
pub mod network;
pub mod probability;

mod math;
