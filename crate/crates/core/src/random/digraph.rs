use std::collections::BTreeMap;

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::kout::KOutSample;
use super::rng::rng_from_seed;
use crate::error::{Error, Result};
use crate::hypergraph::EdgeId;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sign {
    Minus,
    Plus,
}

/// Where an arc came from: vertex `vertex` labelled edge `edge` with `sign`.
/// A `Minus` origin at `v` yields arcs `u -> v`, a `Plus` origin arcs `v -> w`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ArcOrigin {
    pub vertex: usize,
    pub edge: EdgeId,
    pub sign: Sign,
}

/// A simple digraph on `{1..n}`. Parallel arcs collapse to one; every
/// origin that produced an arc is kept in its provenance list.
#[derive(Clone, Debug)]
pub struct Digraph {
    n: usize,
    out: Vec<Vec<usize>>,
    inn: Vec<Vec<usize>>,
    provenance: BTreeMap<(usize, usize), Vec<ArcOrigin>>,
}

impl Digraph {
    /// A digraph from bare arcs (no provenance). Self-loops are dropped.
    pub fn from_arcs(n: usize, arcs: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut d = Digraph::empty(n);
        for (u, v) in arcs {
            if u == 0 || u > n || v == 0 || v > n {
                return Err(Error::VertexOutOfRange { vertex: u.max(v), n });
            }
            d.provenance.entry((u, v)).or_default();
        }
        d.rebuild_adjacency();
        Ok(d)
    }

    fn empty(n: usize) -> Self {
        Digraph {
            n,
            out: vec![Vec::new(); n + 1],
            inn: vec![Vec::new(); n + 1],
            provenance: BTreeMap::new(),
        }
    }

    fn rebuild_adjacency(&mut self) {
        self.provenance.retain(|&(u, v), _| u != v);
        for list in self.out.iter_mut().chain(self.inn.iter_mut()) {
            list.clear();
        }
        for &(u, v) in self.provenance.keys() {
            self.out[u].push(v);
            self.inn[v].push(u);
        }
        for list in &mut self.inn {
            list.sort_unstable();
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn arc_count(&self) -> usize {
        self.provenance.len()
    }

    pub fn arcs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.provenance.keys().copied()
    }

    /// Sorted out-neighbours.
    pub fn out_neighbors(&self, v: usize) -> &[usize] {
        &self.out[v]
    }

    /// Sorted in-neighbours.
    pub fn in_neighbors(&self, v: usize) -> &[usize] {
        &self.inn[v]
    }

    pub fn has_arc(&self, u: usize, v: usize) -> bool {
        self.provenance.contains_key(&(u, v))
    }

    pub fn provenance(&self, u: usize, v: usize) -> &[ArcOrigin] {
        self.provenance.get(&(u, v)).map(Vec::as_slice).unwrap_or(&[])
    }
}

/// The `(e_v^-, e_v^+)` labelling chosen for each vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Orientation {
    pub digraph: Digraph,
    /// `labels[v] = (minus, plus)`; slot 0 unused.
    pub labels: Vec<(EdgeId, EdgeId)>,
}

/// Orients a 2-out sample: a fair coin per vertex decides which pick is
/// `e_v^-` (arcs `u -> v` for `u` in it) and which is `e_v^+` (arcs
/// `v -> w`).
pub fn orient_two_out(sample: &KOutSample, seed: u64) -> Result<Orientation> {
    if sample.k != 2 {
        return Err(Error::WrongK {
            expected: 2,
            found: sample.k,
        });
    }
    let h = sample.hypergraph();
    let mut rng = rng_from_seed(seed);
    let mut d = Digraph::empty(sample.n);
    let mut labels = vec![(EdgeId(0), EdgeId(0)); sample.n + 1];
    for v in 1..=sample.n {
        let picks = sample.choices(v);
        let (minus, plus) = if rng.gen::<bool>() {
            (picks[0], picks[1])
        } else {
            (picks[1], picks[0])
        };
        labels[v] = (minus, plus);
        for &u in h.edge(minus) {
            if u != v {
                d.provenance.entry((u, v)).or_default().push(ArcOrigin {
                    vertex: v,
                    edge: minus,
                    sign: Sign::Minus,
                });
            }
        }
        for &w in h.edge(plus) {
            if w != v {
                d.provenance.entry((v, w)).or_default().push(ArcOrigin {
                    vertex: v,
                    edge: plus,
                    sign: Sign::Plus,
                });
            }
        }
    }
    d.rebuild_adjacency();
    Ok(Orientation { digraph: d, labels })
}

impl PartialEq for Digraph {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.provenance == other.provenance
    }
}

impl Eq for Digraph {}
