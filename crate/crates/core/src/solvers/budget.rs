use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hypergraph::BergeCertificate;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "camelCase")]
pub enum SolveMode {
    ExactOnly,
    #[default]
    HeuristicFirst,
}

/// Per-call search limits.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", default)]
pub struct SolveBudget {
    pub node_limit: u64,
    pub time_limit_ms: u64,
    pub mode: SolveMode,
}

impl Default for SolveBudget {
    fn default() -> Self {
        SolveBudget {
            node_limit: 5_000_000,
            time_limit_ms: 10_000,
            mode: SolveMode::HeuristicFirst,
        }
    }
}

impl SolveBudget {
    pub fn new(node_limit: u64, time_limit_ms: u64, mode: SolveMode) -> Result<Self> {
        let b = SolveBudget {
            node_limit,
            time_limit_ms,
            mode,
        };
        b.validate()?;
        Ok(b)
    }

    pub fn exact(node_limit: u64) -> Self {
        SolveBudget {
            node_limit,
            mode: SolveMode::ExactOnly,
            ..Self::default()
        }
    }

    /// Half of each limit, spent by a heuristic before the exact phase.
    pub(crate) fn heuristic_share(&self) -> SolveBudget {
        SolveBudget {
            node_limit: (self.node_limit / 2).max(1),
            time_limit_ms: (self.time_limit_ms / 2).max(1),
            mode: self.mode,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.node_limit == 0 || self.time_limit_ms == 0 {
            return Err(Error::ParameterOutOfRange("budget limits must be positive".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum SolveStatus {
    Found,
    ProvedAbsent,
    Inconclusive,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct SolveStats {
    pub nodes: u64,
    pub rotations: u64,
    pub elapsed_ms: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct SolveResult {
    pub status: SolveStatus,
    pub certificate: Option<BergeCertificate>,
    pub stats: SolveStats,
}

impl SolveResult {
    pub fn is_found(&self) -> bool {
        self.status == SolveStatus::Found
    }
}

/// Counts search nodes and rotations against a budget. The clock is read
/// every 1024 ticks.
#[derive(Debug)]
pub(crate) struct Meter {
    start: Instant,
    node_limit: u64,
    time_limit_ms: u64,
    pub nodes: u64,
    pub rotations: u64,
    out: bool,
}

impl Meter {
    pub fn new(budget: &SolveBudget) -> Self {
        Meter {
            start: Instant::now(),
            node_limit: budget.node_limit,
            time_limit_ms: budget.time_limit_ms,
            nodes: 0,
            rotations: 0,
            out: false,
        }
    }

    /// Charges one node; false once the budget is spent.
    #[inline]
    pub fn tick(&mut self) -> bool {
        if self.out {
            return false;
        }
        self.nodes += 1;
        if self.nodes >= self.node_limit
            || (self.nodes.is_multiple_of(1024) && self.start.elapsed().as_millis() as u64 >= self.time_limit_ms)
        {
            self.out = true;
        }
        !self.out
    }

    pub fn exhausted(&self) -> bool {
        self.out
    }

    pub fn stats(&self) -> SolveStats {
        SolveStats {
            nodes: self.nodes,
            rotations: self.rotations,
            elapsed_ms: self.start.elapsed().as_millis() as u64,
        }
    }

    pub fn finish(&self, status: SolveStatus, certificate: Option<BergeCertificate>) -> SolveResult {
        SolveResult {
            status,
            certificate,
            stats: self.stats(),
        }
    }
}
