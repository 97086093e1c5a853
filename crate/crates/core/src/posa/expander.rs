use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hypergraph::combin::{k_subsets, subsets_up_to};
use crate::hypergraph::Hypergraph;
use crate::random::rng::{rng_from_seed, sample_indices, uniform_below};

/// Largest number of sets `X` the exact modes will enumerate.
pub const EXACT_SET_LIMIT: u64 = 1_000_000;
/// Branch-and-bound nodes allowed across one exact expander check.
pub const HITTING_SET_NODE_LIMIT: u64 = 50_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", tag = "kind")]
pub enum ExpanderMode {
    Exact,
    /// `trials` uniform sets `X` (size uniform in `1..=k`), each checked
    /// exactly against every admissible `Y`.
    Sampled { trials: u64, seed: u64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum ExpanderVerdict {
    Expander,
    Counterexample,
    SampledPass,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExpanderWitness {
    pub x: Vec<usize>,
    pub y: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ExpanderReport {
    pub verdict: ExpanderVerdict,
    pub k: usize,
    pub alpha: f64,
    pub witness: Option<ExpanderWitness>,
    pub checked_sets: u64,
}

/// Largest integer strictly below `alpha * s`.
fn max_blocker(alpha: f64, s: usize) -> usize {
    let t = alpha * s as f64;
    let c = t.ceil();
    (c as usize).saturating_sub(1)
}

fn validate(h: &Hypergraph, k: usize, alpha: f64) -> Result<()> {
    if k > h.n() {
        return Err(Error::ParameterOutOfRange(format!("k = {k} exceeds n = {}", h.n())));
    }
    if !(alpha.is_finite() && alpha > 0.0) {
        return Err(Error::ParameterOutOfRange(format!("alpha = {alpha} must be positive")));
    }
    Ok(())
}

/// Sets `X` to examine: all of size `1..=k` in size-then-lexicographic order
/// (exact), or random ones (sampled).
fn candidate_sets(n: usize, k: usize, mode: ExpanderMode) -> Result<Box<dyn Iterator<Item = Vec<usize>>>> {
    match mode {
        ExpanderMode::Exact => {
            let count = subsets_up_to(n as u64, k as u64).saturating_sub(1);
            if count > EXACT_SET_LIMIT {
                return Err(Error::Infeasible(format!(
                    "{count} sets of size at most {k} exceed the exact limit {EXACT_SET_LIMIT}"
                )));
            }
            Ok(Box::new((1..=k).flat_map(move |s| {
                k_subsets(n, s)
            })))
        }
        ExpanderMode::Sampled { trials, seed } => {
            let mut rng = rng_from_seed(seed);
            Ok(Box::new((0..if k == 0 { 0 } else { trials }).map(move |_| {
                let s = 1 + uniform_below(&mut rng, k as u64);
                sample_indices(&mut rng, n as u64, s)
                    .into_iter()
                    .map(|i| i as usize + 1)
                    .collect()
            })))
        }
    }
}

/// Checks the (k, alpha)-expander property: for all disjoint `X`, `Y` with
/// `|X| <= k` and `|Y| < alpha |X|`, some edge meets `X` in exactly one
/// vertex and misses `Y`. For each `X` this asks whether the sets
/// `e \ X` over edges with `|e ∩ X| = 1` have a hitting set smaller than
/// `alpha |X|`.
pub fn is_expander(h: &Hypergraph, k: usize, alpha: f64, mode: ExpanderMode) -> Result<ExpanderReport> {
    validate(h, k, alpha)?;
    let mut checked = 0u64;
    let mut nodes = 0u64;
    let mut in_x = vec![false; h.n() + 1];
    for x in candidate_sets(h.n(), k, mode)? {
        checked += 1;
        for &v in &x {
            in_x[v] = true;
        }
        let mut links: Vec<Vec<usize>> = h
            .edges()
            .filter(|(_, e)| e.iter().filter(|&&v| in_x[v]).count() == 1)
            .map(|(_, e)| e.iter().copied().filter(|&v| !in_x[v]).collect())
            .collect();
        for &v in &x {
            in_x[v] = false;
        }
        links.sort();
        links.dedup();
        drop_supersets(&mut links);
        let limit = max_blocker(alpha, x.len());
        if let Some(y) = hitting_set_within(&links, limit, &mut nodes)? {
            return Ok(ExpanderReport {
                verdict: ExpanderVerdict::Counterexample,
                k,
                alpha,
                witness: Some(ExpanderWitness { x, y }),
                checked_sets: checked,
            });
        }
    }
    Ok(pass(k, alpha, mode, checked))
}

fn pass(k: usize, alpha: f64, mode: ExpanderMode, checked: u64) -> ExpanderReport {
    ExpanderReport {
        verdict: match mode {
            ExpanderMode::Exact => ExpanderVerdict::Expander,
            ExpanderMode::Sampled { .. } => ExpanderVerdict::SampledPass,
        },
        k,
        alpha,
        witness: None,
        checked_sets: checked,
    }
}

/// Weak expansion: every `X` with `|X| <= k` has `|N(X) \ X| >= alpha |X|`,
/// where `N(X)` is the union of the edges meeting `X`.
pub fn is_weak_expander(h: &Hypergraph, k: usize, alpha: f64) -> Result<ExpanderReport> {
    is_weak_expander_with(h, k, alpha, ExpanderMode::Exact)
}

pub fn is_weak_expander_with(h: &Hypergraph, k: usize, alpha: f64, mode: ExpanderMode) -> Result<ExpanderReport> {
    validate(h, k, alpha)?;
    let n = h.n();
    let mut checked = 0u64;
    let mut mark = vec![0u8; n + 1];
    for x in candidate_sets(n, k, mode)? {
        checked += 1;
        for &v in &x {
            mark[v] = 1;
        }
        let mut outside = Vec::new();
        for &v in &x {
            for &e in h.incident(v) {
                for &w in h.edge(e) {
                    if mark[w] == 0 {
                        mark[w] = 2;
                        outside.push(w);
                    }
                }
            }
        }
        for &v in x.iter().chain(&outside) {
            mark[v] = 0;
        }
        if (outside.len() as f64) < alpha * x.len() as f64 {
            outside.sort_unstable();
            return Ok(ExpanderReport {
                verdict: ExpanderVerdict::Counterexample,
                k,
                alpha,
                witness: Some(ExpanderWitness { x, y: outside }),
                checked_sets: checked,
            });
        }
    }
    Ok(pass(k, alpha, mode, checked))
}

/// Whether the shadow graph is connected.
pub fn is_connected(h: &Hypergraph) -> bool {
    h.shadow().is_connected()
}

fn drop_supersets(sets: &mut Vec<Vec<usize>>) {
    sets.sort_by_key(|s| s.len());
    let mut kept: Vec<Vec<usize>> = Vec::with_capacity(sets.len());
    for s in sets.drain(..) {
        if !kept.iter().any(|t| t.iter().all(|v| s.binary_search(v).is_ok())) {
            kept.push(s);
        }
    }
    *sets = kept;
}

/// A minimum hitting set of `sets` if one has at most `limit` elements.
/// Iterative deepening over the size; each level branches on the elements
/// of a smallest unhit set, most frequent element first.
pub(crate) fn hitting_set_within(sets: &[Vec<usize>], limit: usize, nodes: &mut u64) -> Result<Option<Vec<usize>>> {
    if sets.iter().any(|s| s.is_empty()) {
        return Ok(None);
    }
    let mut chosen = Vec::new();
    for size in 0..=limit.min(sets.len()) {
        if hit_dfs(sets, size, &mut chosen, nodes)? {
            chosen.sort_unstable();
            return Ok(Some(chosen));
        }
    }
    Ok(None)
}

fn hit_dfs(sets: &[Vec<usize>], left: usize, chosen: &mut Vec<usize>, nodes: &mut u64) -> Result<bool> {
    *nodes += 1;
    if *nodes > HITTING_SET_NODE_LIMIT {
        return Err(Error::Infeasible("hitting-set search exceeded its node limit".into()));
    }
    let unhit: Vec<&Vec<usize>> = sets.iter().filter(|s| !s.iter().any(|v| chosen.contains(v))).collect();
    if unhit.is_empty() {
        return Ok(true);
    }
    if left == 0 || disjoint_packing(&unhit) > left {
        return Ok(false);
    }
    let pivot = unhit.iter().min_by_key(|s| s.len()).unwrap();
    let mut order: Vec<(usize, usize)> = pivot
        .iter()
        .map(|&v| (unhit.iter().filter(|s| s.contains(&v)).count(), v))
        .collect();
    order.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
    for (_, v) in order {
        chosen.push(v);
        if hit_dfs(sets, left - 1, chosen, nodes)? {
            return Ok(true);
        }
        chosen.pop();
    }
    Ok(false)
}

/// Greedy count of pairwise disjoint sets, a lower bound on any hitting set.
fn disjoint_packing(sets: &[&Vec<usize>]) -> usize {
    let mut used: Vec<usize> = Vec::new();
    let mut count = 0;
    let mut by_size: Vec<&&Vec<usize>> = sets.iter().collect();
    by_size.sort_by_key(|s| s.len());
    for s in by_size {
        if !s.iter().any(|v| used.contains(v)) {
            used.extend(s.iter());
            count += 1;
        }
    }
    count
}
