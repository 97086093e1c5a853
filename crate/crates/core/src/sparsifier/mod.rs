//! `SMALL(G)`, the sparsified sub-hypergraph `Γ₀`, checkers for the seven
//! structural properties P1 to P7 and the audit of the implication from
//! those properties to expansion.

pub mod implication;
pub mod properties;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hypergraph::{EdgeId, Hypergraph};
use crate::random::rng::{rng_from_seed, sample_indices};

pub use implication::{implication_check, ImplicationReport};
pub use properties::{
    check_properties, witness_holds, Property, PropertyMode, PropertyReport, PropertyVerdict, Thresholds, Witness,
};

pub const DEFAULT_EPSILON: f64 = 0.3;

#[derive(Clone, Debug)]
pub struct SparsifierOutput {
    pub epsilon: f64,
    pub small_set: Vec<usize>,
    /// Ids of `H` kept in `Γ₀`, ascending; `gamma0` numbers them in this order.
    pub kept: Vec<EdgeId>,
    pub gamma0: Hypergraph,
    /// `E_v` for each vertex, as ids of `H`; slot 0 is empty.
    pub choices: Vec<Vec<EdgeId>>,
}

/// Per-vertex choices, written next to the `Γ₀` fixture.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ChoiceSidecar {
    pub epsilon: f64,
    pub seed: u64,
    pub small_set: Vec<usize>,
    /// `choices[v - 1]` lists the edges of `H` chosen by `v`, as vertex sets.
    pub choices: Vec<Vec<Vec<usize>>>,
}

impl SparsifierOutput {
    pub fn sidecar(&self, h: &Hypergraph, seed: u64) -> ChoiceSidecar {
        ChoiceSidecar {
            epsilon: self.epsilon,
            seed,
            small_set: self.small_set.clone(),
            choices: self.choices[1..]
                .iter()
                .map(|ids| ids.iter().map(|&id| h.edge(id).to_vec()).collect())
                .collect(),
        }
    }
}

fn check_epsilon(h: &Hypergraph, epsilon: f64) -> Result<()> {
    if !(epsilon.is_finite() && epsilon > 0.0) {
        return Err(Error::ParameterOutOfRange(format!("epsilon = {epsilon} must be positive")));
    }
    if h.n() < 2 {
        return Err(Error::ParameterOutOfRange("SMALL needs n >= 2".into()));
    }
    Ok(())
}

/// `epsilon * ln n`, the degree cut-off for `SMALL`.
pub fn small_threshold(n: usize, epsilon: f64) -> f64 {
    epsilon * (n as f64).ln()
}

/// Vertices of degree at most `epsilon * ln n`.
pub fn small_set(h: &Hypergraph, epsilon: f64) -> Result<Vec<usize>> {
    check_epsilon(h, epsilon)?;
    let t = small_threshold(h.n(), epsilon);
    Ok(h.vertices().filter(|&v| h.incident(v).len() as f64 <= t).collect())
}

/// Number of edges each vertex outside `SMALL` keeps: `ceil(epsilon ln n)`.
pub fn choice_count(n: usize, epsilon: f64) -> usize {
    small_threshold(n, epsilon).ceil() as usize
}

/// Builds `Γ₀`: vertices in `SMALL` keep all incident edges, every other
/// vertex keeps a uniform `ceil(epsilon ln n)`-subset of its incident edges.
pub fn sparsify(h: &Hypergraph, epsilon: f64, seed: u64) -> Result<SparsifierOutput> {
    let small = small_set(h, epsilon)?;
    let c = choice_count(h.n(), epsilon);
    let mut in_small = vec![false; h.n() + 1];
    for &v in &small {
        in_small[v] = true;
    }
    let mut rng = rng_from_seed(seed);
    let mut choices = vec![Vec::new(); h.n() + 1];
    let mut keep = vec![false; h.m()];
    for v in h.vertices() {
        let incident = h.incident(v);
        let mut chosen: Vec<EdgeId> = if in_small[v] || incident.len() <= c {
            incident.to_vec()
        } else {
            sample_indices(&mut rng, incident.len() as u64, c as u64)
                .into_iter()
                .map(|i| incident[i as usize])
                .collect()
        };
        chosen.sort_unstable();
        for id in &chosen {
            keep[id.index()] = true;
        }
        choices[v] = chosen;
    }
    let kept: Vec<EdgeId> = h.edge_ids().filter(|id| keep[id.index()]).collect();
    Ok(SparsifierOutput {
        epsilon,
        small_set: small,
        gamma0: h.sub_hypergraph(&kept),
        kept,
        choices,
    })
}
