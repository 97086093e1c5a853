use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::rng::{rng_from_seed, uniform_below};
use crate::error::{Error, Result};
use crate::hypergraph::combin::{binomial, colex_unrank};
use crate::hypergraph::Hypergraph;

/// Largest full permutation we are willing to materialise.
const MAX_FULL_TRACE: u64 = 50_000_000;

/// A uniformly random ordering `e_1, e_2, ...` of the r-subsets of `{1..n}`
/// (or a prefix of one), stored as colex ranks.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProcessTrace {
    pub n: usize,
    pub r: usize,
    pub order: Vec<u64>,
}

/// Draws the first `length` entries of a uniform permutation of all
/// `C(n, r)` subsets (the whole permutation when `length` is `None`).
///
/// This is a forward Fisher-Yates shuffle: step `i` swaps position `i` with
/// a uniform position in `i..C(n,r)`. Truncated traces keep the unvisited
/// positions in a sparse map, so a prefix of length `t` costs O(t) and equals
/// the first `t` entries of the full trace for the same seed.
pub fn process_sample(n: usize, r: usize, seed: u64, length: Option<u64>) -> Result<ProcessTrace> {
    Hypergraph::empty(n, r)?;
    let total = binomial(n as u64, r as u64);
    let length = match length {
        Some(l) if l > total => {
            return Err(Error::ParameterOutOfRange(format!(
                "trace length {l} exceeds C({n}, {r}) = {total}"
            )))
        }
        Some(l) => l,
        None if total > MAX_FULL_TRACE => {
            return Err(Error::ParameterOutOfRange(format!(
                "full trace of C({n}, {r}) = {total} subsets is too large; pass a length"
            )))
        }
        None => total,
    };
    let mut rng = rng_from_seed(seed);
    let mut order = Vec::with_capacity(length as usize);
    if length == total {
        let mut perm: Vec<u64> = (0..total).collect();
        for i in 0..total {
            let j = i + uniform_below(&mut rng, total - i);
            perm.swap(i as usize, j as usize);
        }
        order = perm;
    } else {
        let mut displaced: HashMap<u64, u64> = HashMap::new();
        for i in 0..length {
            let j = i + uniform_below(&mut rng, total - i);
            let at_j = *displaced.get(&j).unwrap_or(&j);
            let at_i = *displaced.get(&i).unwrap_or(&i);
            displaced.insert(j, at_i);
            order.push(at_j);
        }
    }
    Ok(ProcessTrace { n, r, order })
}

impl ProcessTrace {
    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    /// The `i`-th edge (0-based) as a sorted vertex list.
    pub fn edge(&self, i: usize) -> Vec<usize> {
        colex_unrank(self.order[i], self.r)
    }

    /// `H(t)`: the hypergraph formed by the first `t` edges.
    pub fn prefix(&self, t: usize) -> Result<Hypergraph> {
        if t > self.order.len() {
            return Err(Error::ParameterOutOfRange(format!(
                "prefix {t} longer than trace of length {}",
                self.order.len()
            )));
        }
        Hypergraph::new(self.n, self.r, (0..t).map(|i| self.edge(i)))
    }

    /// `T_k`: the least `t` such that every vertex of `H(t)` has degree at
    /// least `k`.
    pub fn stopping_time(&self, k: usize) -> Result<usize> {
        if k == 0 {
            return Ok(0);
        }
        let mut degree = vec![0usize; self.n + 1];
        let mut below = self.n;
        for (i, &rank) in self.order.iter().enumerate() {
            for v in colex_unrank(rank, self.r) {
                degree[v] += 1;
                if degree[v] == k {
                    below -= 1;
                }
            }
            if below == 0 {
                return Ok(i + 1);
            }
        }
        Err(Error::Unreachable { k })
    }
}

/// Free-function form of [`ProcessTrace::stopping_time`].
pub fn stopping_time(trace: &ProcessTrace, k: usize) -> Result<usize> {
    trace.stopping_time(k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::combin::colex_rank;

    fn fixed_f5() -> ProcessTrace {
        let edges = [[1, 2, 3], [1, 2, 4], [1, 3, 4], [2, 3, 4]];
        ProcessTrace {
            n: 4,
            r: 3,
            order: edges.iter().map(|e| colex_rank(e)).collect(),
        }
    }

    #[test]
    fn stopping_times_on_fixed_trace() {
        let t = fixed_f5();
        assert_eq!(t.stopping_time(0).unwrap(), 0);
        assert_eq!(t.stopping_time(1).unwrap(), 2);
        // after three edges vertex 4 lies in {1,2,4} and {1,3,4}
        assert_eq!(t.stopping_time(2).unwrap(), 3);
        assert_eq!(t.stopping_time(3).unwrap(), 4);
        assert!(matches!(t.stopping_time(4), Err(Error::Unreachable { k: 4 })));
    }

    #[test]
    fn full_trace_is_a_permutation() {
        let t = process_sample(4, 3, 11, None).unwrap();
        let mut sorted = t.order.clone();
        sorted.sort_unstable();
        assert_eq!(sorted, vec![0, 1, 2, 3]);
        let all = t.prefix(4).unwrap();
        assert_eq!(all.m(), 4);
        assert_eq!(t.prefix(0).unwrap().m(), 0);
        assert!(t.prefix(5).is_err());
    }

    #[test]
    fn truncated_trace_is_prefix_of_full() {
        for seed in 0..20 {
            let full = process_sample(9, 3, seed, None).unwrap();
            let part = process_sample(9, 3, seed, Some(17)).unwrap();
            assert_eq!(&full.order[..17], &part.order[..]);
        }
        assert!(process_sample(4, 3, 0, Some(5)).is_err());
    }

    #[test]
    fn first_edge_is_uniform() {
        let trials = 2000;
        let mut first = [0usize; 4];
        for s in 0..trials {
            first[process_sample(4, 3, s, Some(1)).unwrap().order[0] as usize] += 1;
        }
        let se = (0.25f64 * 0.75 / trials as f64).sqrt();
        for &c in &first {
            assert!((c as f64 / trials as f64 - 0.25).abs() < 3.0 * se, "{first:?}");
        }
    }
}
