//! Bayes-factor evidence classification.
//!
//! Two conventions are supported: bands on the raw Bayes factor
//! (3.2 / 10 / 100) and bands on 2·ln(BF) (2 / 6 / 10), the latter being
//! comparable to deviance-style statistics. All bands are half-open
//! [lo, hi), so a factor of exactly 10 counts as strong on the raw scale.
//! A factor below one is evidence for the alternative and is classified
//! through its reciprocal with the direction flipped.

use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EvidenceError {
    #[error("bayes factor must be positive and finite, got {0}")]
    InvalidBayesFactor(f64),
}

/// Strength category, ordered weakest to strongest.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Category {
    NotWorthMention,
    Substantial,
    Strong,
    Decisive,
}

impl fmt::Display for Category {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let text = match self {
            Category::NotWorthMention => "Not worth more than a bare mention",
            Category::Substantial => "Substantial",
            Category::Strong => "Strong",
            Category::Decisive => "Decisive",
        };
        f.write_str(text)
    }
}

/// Which hypothesis the evidence favors.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    ForNull,
    ForAlternative,
    Neutral,
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let text = match self {
            Direction::ForNull => "for null",
            Direction::ForAlternative => "for alternative",
            Direction::Neutral => "neutral",
        };
        f.write_str(text)
    }
}

/// Which banding convention produced a report.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scale {
    Raw,
    Log,
}

/// Band edges on the raw Bayes factor magnitude.
pub const RAW_BANDS: [f64; 3] = [3.2, 10.0, 100.0];

/// Band edges on |2·ln(BF)|.
pub const TWO_LN_BANDS: [f64; 3] = [2.0, 6.0, 10.0];

/// Raw-factor column of the log-scale convention (3 / 20 / 150). Shown for
/// reference only; log-scale classification uses [`TWO_LN_BANDS`].
pub const LOG_SCALE_BF_BANDS: [f64; 3] = [3.0, 20.0, 150.0];

/// A classified Bayes factor.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvidenceReport {
    pub bf: f64,
    pub two_ln_bf: f64,
    pub direction: Direction,
    pub category: Category,
    pub scale: Scale,
}

fn category_for(magnitude: f64, bands: &[f64; 3]) -> Category {
    if magnitude < bands[0] {
        Category::NotWorthMention
    } else if magnitude < bands[1] {
        Category::Substantial
    } else if magnitude < bands[2] {
        Category::Strong
    } else {
        Category::Decisive
    }
}

fn direction_for(bf: f64) -> Direction {
    if bf > 1.0 {
        Direction::ForNull
    } else if bf < 1.0 {
        Direction::ForAlternative
    } else {
        Direction::Neutral
    }
}

fn validate(bf: f64) -> Result<(), EvidenceError> {
    if !bf.is_finite() || bf <= 0.0 {
        return Err(EvidenceError::InvalidBayesFactor(bf));
    }
    Ok(())
}

/// Classify on the raw scale: bands applied to max(bf, 1/bf).
pub fn classify_bf(bf: f64) -> Result<EvidenceReport, EvidenceError> {
    validate(bf)?;
    let magnitude = bf.max(1.0 / bf);
    Ok(EvidenceReport {
        bf,
        two_ln_bf: 2.0 * bf.ln(),
        direction: direction_for(bf),
        category: category_for(magnitude, &RAW_BANDS),
        scale: Scale::Raw,
    })
}

/// Classify on the log scale: bands applied to |2·ln(bf)|.
pub fn classify_two_ln_bf(bf: f64) -> Result<EvidenceReport, EvidenceError> {
    validate(bf)?;
    let two_ln = 2.0 * bf.ln();
    Ok(EvidenceReport {
        bf,
        two_ln_bf: two_ln,
        direction: direction_for(bf),
        category: category_for(two_ln.abs(), &TWO_LN_BANDS),
        scale: Scale::Log,
    })
}

/// The typed infinite-evidence outcome (a perfect test): decisive for the
/// null on either scale. This is the only way an infinite factor enters a
/// report; feeding `f64::INFINITY` to the classifiers is an error.
pub fn infinite_evidence(scale: Scale) -> EvidenceReport {
    EvidenceReport {
        bf: f64::INFINITY,
        two_ln_bf: f64::INFINITY,
        direction: Direction::ForNull,
        category: Category::Decisive,
        scale,
    }
}
