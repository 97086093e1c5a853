use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::rng::{rng_from_seed, sample_indices};
use crate::error::{Error, Result};
use crate::hypergraph::combin::binomial;
use crate::hypergraph::{EdgeId, Hypergraph};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Replacement {
    #[default]
    With,
    Without,
}

/// A draw from the k-out model: every vertex `v` picks `k` uniform r-sets
/// containing `v`, and the hypergraph is the union of all picks.
///
/// `choices[v]` lists the picks of `v` as ids into the union hypergraph;
/// a set picked several times (by one vertex or by different vertices)
/// appears once in the hypergraph and its count is kept in `multiplicity`.
#[derive(Clone, Debug)]
pub struct KOutSample {
    pub n: usize,
    pub r: usize,
    pub k: usize,
    pub mode: Replacement,
    choices: Vec<Vec<EdgeId>>,
    multiplicity: Vec<usize>,
    hypergraph: Hypergraph,
}

/// Origin labels of a k-out sample, written next to its fixture dump.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KOutSidecar {
    pub n: usize,
    pub r: usize,
    pub k: usize,
    pub mode: Replacement,
    /// `choices[v - 1]`: edge ids (into the fixture) picked by vertex `v`.
    pub choices: Vec<Vec<EdgeId>>,
    pub multiplicity: Vec<usize>,
}

pub fn kout_sample(n: usize, r: usize, k: usize, mode: Replacement, seed: u64) -> Result<KOutSample> {
    Hypergraph::empty(n, r)?;
    if k == 0 {
        return Err(Error::ParameterOutOfRange("k must be at least 1".into()));
    }
    let per_vertex = binomial(n as u64 - 1, r as u64 - 1);
    if mode == Replacement::Without && (k as u64) > per_vertex {
        return Err(Error::ParameterOutOfRange(format!(
            "cannot draw {k} distinct edges from the {per_vertex} containing a vertex"
        )));
    }
    let mut rng = rng_from_seed(seed);
    let mut picks: Vec<Vec<Vec<usize>>> = vec![Vec::new(); n + 1];
    for v in 1..=n {
        while picks[v].len() < k {
            let others = sample_indices(&mut rng, n as u64 - 1, r as u64 - 1);
            let mut e: Vec<usize> = others
                .into_iter()
                .map(|i| {
                    let label = i as usize + 1;
                    if label < v {
                        label
                    } else {
                        label + 1
                    }
                })
                .collect();
            e.push(v);
            e.sort_unstable();
            if mode == Replacement::Without && picks[v].contains(&e) {
                continue;
            }
            picks[v].push(e);
        }
    }
    Ok(KOutSample::from_picks(n, r, k, mode, &picks))
}

impl KOutSample {
    /// Assembles a sample from explicit picks (`picks[v]` for `v` in `1..=n`,
    /// slot 0 ignored). Used by the sampler and by hand-built fixtures.
    pub fn from_picks(n: usize, r: usize, k: usize, mode: Replacement, picks: &[Vec<Vec<usize>>]) -> Self {
        let mut hypergraph = Hypergraph::empty(n, r).expect("validated parameters");
        let mut ids: HashMap<Vec<usize>, EdgeId> = HashMap::new();
        let mut multiplicity = Vec::new();
        let mut choices = vec![Vec::new(); n + 1];
        for v in 1..=n {
            for e in &picks[v] {
                let mut key = e.clone();
                key.sort_unstable();
                let id = *ids.entry(key.clone()).or_insert_with(|| {
                    multiplicity.push(0);
                    hypergraph.add_edge(&key).expect("pick is a valid r-set")
                });
                multiplicity[id.0] += 1;
                choices[v].push(id);
            }
        }
        KOutSample {
            n,
            r,
            k,
            mode,
            choices,
            multiplicity,
            hypergraph,
        }
    }

    /// The union hypergraph.
    pub fn hypergraph(&self) -> &Hypergraph {
        &self.hypergraph
    }

    /// The picks `E_v` of vertex `v`, in draw order.
    pub fn choices(&self, v: usize) -> &[EdgeId] {
        &self.choices[v]
    }

    /// How many times each union edge was picked.
    pub fn multiplicity(&self, id: EdgeId) -> usize {
        self.multiplicity[id.0]
    }

    /// Number of distinct edges in the union.
    pub fn distinct_edges(&self) -> usize {
        self.hypergraph.m()
    }

    pub fn sidecar(&self) -> KOutSidecar {
        KOutSidecar {
            n: self.n,
            r: self.r,
            k: self.k,
            mode: self.mode,
            choices: self.choices[1..].to_vec(),
            multiplicity: self.multiplicity.clone(),
        }
    }
}
