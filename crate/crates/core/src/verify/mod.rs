//! Randomized verification suites. Each suite draws independent trials
//! from `trial_seed(seed, k)`, computes one residual per trial and passes
//! iff the largest residual is within the suite tolerance.

mod suites;

use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::opcore::trial_seed;
use crate::Result;

pub use suites::{class_family, registry, word_length};

/// Size limits shared by all suites.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SuiteConfig {
    /// Overrides each suite's default trial count.
    pub trials: Option<usize>,
    pub seed: u64,
    pub max_dim: usize,
    pub max_n: usize,
    pub degree: usize,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self {
            trials: None,
            seed: 1,
            max_dim: 6,
            max_n: 3,
            degree: 5,
        }
    }
}

/// Outcome of one trial: a residual, or `None` when the random instance
/// violates the hypotheses of the statement under test.
pub type TrialResult = Result<Option<f64>>;

pub struct Suite {
    pub name: &'static str,
    pub anchor: &'static str,
    pub default_trials: usize,
    pub tolerance: f64,
    pub trial: fn(u64, usize, &SuiteConfig) -> TrialResult,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct VerificationReport {
    pub suite_name: String,
    pub paper_anchor: String,
    pub trials: usize,
    pub max_residual: f64,
    pub tolerance: f64,
    pub pass: bool,
    pub seed: u64,
    pub runtime_millis: u64,
    /// Trials whose random instance did not satisfy the hypotheses.
    pub skipped: usize,
    /// Trials that raised an error; each counts as an infinite residual.
    pub errors: usize,
    /// Message of the first failing trial, in trial order.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_error: Option<String>,
}

pub fn find(name: &str) -> Option<Suite> {
    registry().into_iter().find(|s| s.name == name)
}

pub fn suite_names() -> Vec<&'static str> {
    registry().iter().map(|s| s.name).collect()
}

pub fn run_suite(suite: &Suite, cfg: &SuiteConfig) -> VerificationReport {
    let start = Instant::now();
    let trials = cfg.trials.unwrap_or(suite.default_trials);
    let outcomes: Vec<TrialResult> = (0..trials)
        .into_par_iter()
        .map(|k| (suite.trial)(trial_seed(cfg.seed, k as u64), k, cfg))
        .collect();

    let mut max_residual: f64 = 0.0;
    let (mut skipped, mut errors) = (0, 0);
    let mut first_error = None;
    for outcome in outcomes {
        match outcome {
            Ok(Some(r)) => {
                let r = if r.is_nan() { f64::INFINITY } else { r };
                max_residual = max_residual.max(r);
            }
            Ok(None) => skipped += 1,
            Err(e) => {
                errors += 1;
                first_error.get_or_insert_with(|| e.to_string());
                max_residual = f64::INFINITY;
            }
        }
    }
    VerificationReport {
        suite_name: suite.name.to_string(),
        paper_anchor: suite.anchor.to_string(),
        trials,
        pass: max_residual <= suite.tolerance,
        max_residual,
        tolerance: suite.tolerance,
        seed: cfg.seed,
        runtime_millis: start.elapsed().as_millis() as u64,
        skipped,
        errors,
        first_error,
    }
}

/// Every suite, in name order.
pub fn run_all(cfg: &SuiteConfig) -> Vec<VerificationReport> {
    registry().iter().map(|s| run_suite(s, cfg)).collect()
}
