use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hypergraph::combin::{binomial, colex_unrank, k_subsets};
use crate::hypergraph::Hypergraph;
use crate::random::rng::{rng_from_seed, uniform_below};
use crate::solvers::{find_hamiltonian_berge, find_weak_hamiltonian, longest_berge_path, SolveBudget, SolveStatus};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", tag = "kind")]
pub enum BoosterMode {
    /// Every non-edge.
    Exact,
    /// `trials` uniform non-edges (all of them if there are fewer).
    Sampled { trials: usize, seed: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct BoosterReport {
    pub weak: bool,
    pub mode: BoosterMode,
    /// Vertex count of a longest (weak) Berge path of the input.
    pub longest_path: usize,
    pub candidates: usize,
    /// Sampled candidates whose checks ran out of budget.
    pub undecided: usize,
    pub boosters: Vec<Vec<usize>>,
}

/// All boosters of `h`: non-edges whose addition makes the longest (weak)
/// Berge path longer or the hypergraph (weakly) Berge Hamiltonian.
pub fn boosters(h: &Hypergraph, budget: &SolveBudget, weak: bool) -> Result<Vec<Vec<usize>>> {
    Ok(boosters_with(h, budget, weak, BoosterMode::Exact)?.boosters)
}

pub fn boosters_with(h: &Hypergraph, budget: &SolveBudget, weak: bool, mode: BoosterMode) -> Result<BoosterReport> {
    let base = longest_berge_path(h, budget, weak)?;
    if base.status != SolveStatus::Found {
        return Err(Error::BudgetExceeded);
    }
    let longest_path = base.certificate.map_or(1, |c| c.len());
    let candidates = match mode {
        BoosterMode::Exact => non_edges(h),
        BoosterMode::Sampled { trials, seed } => sample_non_edges(h, trials, seed),
    };
    let mut found = Vec::new();
    let mut undecided = 0;
    for e in &candidates {
        match is_booster(h, e, longest_path, budget, weak) {
            Ok(true) => found.push(e.clone()),
            Ok(false) => {}
            Err(Error::BudgetExceeded) if matches!(mode, BoosterMode::Sampled { .. }) => undecided += 1,
            Err(err) => return Err(err),
        }
    }
    Ok(BoosterReport {
        weak,
        mode,
        longest_path,
        candidates: candidates.len(),
        undecided,
        boosters: found,
    })
}

fn is_booster(h: &Hypergraph, e: &[usize], base_len: usize, budget: &SolveBudget, weak: bool) -> Result<bool> {
    let g = h.with_edge(e)?;
    let longer = longest_berge_path(&g, budget, weak)?;
    if longer.status != SolveStatus::Found {
        return Err(Error::BudgetExceeded);
    }
    if longer.certificate.map_or(1, |c| c.len()) > base_len {
        return Ok(true);
    }
    if g.n() < 3 {
        return Ok(false);
    }
    let ham = if weak {
        find_weak_hamiltonian(&g, budget)?
    } else {
        find_hamiltonian_berge(&g, budget)?
    };
    match ham.status {
        SolveStatus::Found => Ok(true),
        SolveStatus::ProvedAbsent => Ok(false),
        SolveStatus::Inconclusive => Err(Error::BudgetExceeded),
    }
}

/// r-subsets of `{1..n}` that are not edges, in lexicographic order.
pub fn non_edges(h: &Hypergraph) -> Vec<Vec<usize>> {
    k_subsets(h.n(), h.r())
        .filter(|s| h.find_edge(s).is_none())
        .collect()
}

fn sample_non_edges(h: &Hypergraph, trials: usize, seed: u64) -> Vec<Vec<usize>> {
    let total = binomial(h.n() as u64, h.r() as u64);
    let missing = total.saturating_sub(h.m() as u64);
    if missing <= trials as u64 {
        return non_edges(h);
    }
    let mut rng = rng_from_seed(seed);
    let mut picked = BTreeSet::new();
    while picked.len() < trials {
        let s = colex_unrank(uniform_below(&mut rng, total), h.r());
        if h.find_edge(&s).is_none() {
            picked.insert(s);
        }
    }
    picked.into_iter().collect()
}
