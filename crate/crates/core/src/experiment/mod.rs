//! Seeded Monte Carlo experiments: configuration, per-trial records,
//! aggregates with Wilson intervals, acceptance checks and file output.
//!
//! Trial `i` of grid point `j` runs on seed
//! `split_seed(seed, j * trials + i)`; trials run in parallel and are merged
//! by index, so a config always yields the same records.

mod output;
mod runners;
pub mod stats;

use std::collections::BTreeMap;
use std::path::PathBuf;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::random::Replacement;
use crate::solvers::{SolveBudget, SolveStatus};
use crate::Variant;

pub use output::{emit_outputs, OutputFormat};
pub use runners::run_experiment;
pub use stats::{wilson, Interval, Z95};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum ExperimentKind {
    Stopping,
    Threshold,
    KoutBerge,
    KoutWeak,
    CouponCover,
    ImplicationAudit,
}

/// Bounds applied by the checks that `run --check` enforces.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", default)]
pub struct Acceptance {
    pub min_frequency: f64,
    pub max_inconclusive_rate: f64,
    /// Threshold runs: last grid point minus first grid point.
    pub min_spread: f64,
    /// k-out runs: share of samples with exactly `nk` distinct edges.
    pub min_distinct_frequency: f64,
}

impl Default for Acceptance {
    fn default() -> Self {
        Acceptance {
            min_frequency: 0.9,
            max_inconclusive_rate: 0.1,
            min_spread: 0.3,
            min_distinct_frequency: 0.95,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ExperimentConfig {
    pub experiment: ExperimentKind,
    pub n: usize,
    pub r: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub variant: Option<Variant>,
    /// Threshold runs: values of `c`.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub c_grid: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    #[serde(default)]
    pub replacement: Replacement,
    pub trials: u64,
    pub seed: u64,
    #[serde(default)]
    pub budget: SolveBudget,
    /// Stopping runs: also solve `H(T_2 - 1)`.
    #[serde(default = "yes")]
    pub negative_control: bool,
    /// Implication audits: sparsifier parameter.
    #[serde(default = "default_epsilon")]
    pub epsilon: f64,
    #[serde(default)]
    pub acceptance: Acceptance,
    /// Output path prefix; `.json`, `.csv` and `.plot.tsv` are appended.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<PathBuf>,
}

fn yes() -> bool {
    true
}

fn default_epsilon() -> f64 {
    crate::sparsifier::DEFAULT_EPSILON
}

impl ExperimentConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        let config: ExperimentConfig =
            serde_json::from_str(text).map_err(|e| Error::ConfigInvalid(e.to_string()))?;
        config.validate()?;
        Ok(config)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::ConfigInvalid(m));
        if self.trials == 0 {
            return bad("trials must be at least 1".into());
        }
        if self.n < 3 {
            return bad(format!("n = {} is below 3", self.n));
        }
        if self.r < 2 || self.r > self.n {
            return bad(format!("r = {} must satisfy 2 <= r <= n", self.r));
        }
        self.budget.validate().map_err(|e| Error::ConfigInvalid(e.to_string()))?;
        match self.experiment {
            ExperimentKind::Threshold => {
                if self.c_grid.is_empty() {
                    return bad("threshold runs need a nonempty cGrid".into());
                }
                if self.c_grid.iter().any(|c| !c.is_finite()) {
                    return bad("cGrid values must be finite".into());
                }
                if self.variant.is_none() {
                    return bad("threshold runs need a variant".into());
                }
            }
            ExperimentKind::KoutBerge => {
                if self.k.unwrap_or(2) != 2 || self.r < 3 {
                    return bad("koutBerge runs need k = 2 and r >= 3".into());
                }
            }
            ExperimentKind::KoutWeak => {
                if self.k.unwrap_or(1) != 1 || self.r < 3 {
                    return bad("koutWeak runs need k = 1 and r >= 3".into());
                }
            }
            ExperimentKind::ImplicationAudit => {
                if !(self.epsilon.is_finite() && self.epsilon > 0.0) {
                    return bad(format!("epsilon = {} must be positive", self.epsilon));
                }
            }
            ExperimentKind::Stopping | ExperimentKind::CouponCover => {}
        }
        Ok(())
    }

    /// Grid points: the `c` values for threshold runs, a single unnamed
    /// point otherwise.
    pub(crate) fn points(&self) -> Vec<Option<f64>> {
        match self.experiment {
            ExperimentKind::Threshold => self.c_grid.iter().map(|&c| Some(c)).collect(),
            _ => vec![None],
        }
    }
}

/// Outcome of one measure on one trial. For deterministic events (an
/// obstruction witness, an edge count) `found` means the event occurred and
/// `provedAbsent` that it did not.
pub type Outcome = SolveStatus;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct MeasureOutcome {
    pub measure: String,
    pub outcome: Outcome,
    pub nodes: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct TrialRecord {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub point: Option<f64>,
    pub trial: u64,
    pub seed: u64,
    /// Edge count of the instance the main measure ran on.
    pub edges: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t1: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t2: Option<usize>,
    pub outcomes: Vec<MeasureOutcome>,
}

impl TrialRecord {
    pub fn outcome(&self, measure: &str) -> Option<Outcome> {
        self.outcomes.iter().find(|o| o.measure == measure).map(|o| o.outcome)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Aggregate {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub point: Option<f64>,
    pub measure: String,
    pub found: u64,
    pub proved_absent: u64,
    pub inconclusive: u64,
    /// `found / (found + provedAbsent)`; 0 when nothing was conclusive.
    pub frequency: f64,
    pub interval: Interval,
    pub inconclusive_rate: f64,
    /// `exp(-exp(-c))` on threshold runs.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub limit: Option<f64>,
}

/// Certificates that break a degree condition, counted over every solve.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct NecessityTally {
    pub certificates_checked: u64,
    pub invalid_certificates: u64,
    /// Valid ordinary certificates with minimum degree below 2.
    pub ordinary_below_two: u64,
    /// Valid weak certificates with minimum degree below 1.
    pub weak_below_one: u64,
    /// Valid weak certificates on instances with a degree-1 triple.
    pub weak_with_triple: u64,
}

impl NecessityTally {
    pub fn violations(&self) -> u64 {
        self.invalid_certificates + self.ordinary_below_two + self.weak_below_one + self.weak_with_triple
    }

    pub fn absorb(&mut self, other: &NecessityTally) {
        self.certificates_checked += other.certificates_checked;
        self.invalid_certificates += other.invalid_certificates;
        self.ordinary_below_two += other.ordinary_below_two;
        self.weak_below_one += other.weak_below_one;
        self.weak_with_triple += other.weak_with_triple;
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct CheckOutcome {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ExperimentResult {
    pub config: ExperimentConfig,
    pub version: String,
    pub trials: Vec<TrialRecord>,
    pub aggregates: Vec<Aggregate>,
    pub necessity: NecessityTally,
    /// Extra scalar summaries, such as the coupon-cover estimate.
    pub extras: BTreeMap<String, f64>,
    pub checks: Vec<CheckOutcome>,
    pub wall_time_ms: u64,
}

impl ExperimentResult {
    pub fn all_checks_pass(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn aggregate(&self, point: Option<f64>, measure: &str) -> Option<&Aggregate> {
        self.aggregates
            .iter()
            .find(|a| a.point == point && a.measure == measure)
    }

    /// The per-trial part of the JSON record, which is identical across
    /// runs of the same config.
    pub fn trials_json(&self) -> Result<String> {
        Ok(serde_json::to_string(&self.trials)?)
    }
}
