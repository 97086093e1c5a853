//! r-uniform hypergraphs on the vertex set `{1..n}`.
//!
//! Edges are stored as sorted vertex lists with stable [`EdgeId`]s assigned
//! in insertion order. The vertex-to-edge incidence lists are built alongside,
//! so degree and incidence queries are O(1) / O(d(v)).

pub mod certificate;
pub mod combin;
pub mod fixture;
pub mod shadow;

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use certificate::{verify_certificate, BergeCertificate, CertificateKind, Verdict};
pub use shadow::ShadowGraph;

/// Stable identifier of an edge: its insertion index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct EdgeId(pub usize);

impl EdgeId {
    #[inline]
    pub fn index(self) -> usize {
        self.0
    }
}

impl fmt::Display for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e{}", self.0)
    }
}

#[derive(Clone, Debug)]
pub struct Hypergraph {
    n: usize,
    r: usize,
    edges: Vec<Box<[usize]>>,
    // indexed by vertex label; slot 0 unused
    incidence: Vec<Vec<EdgeId>>,
    lookup: HashMap<Box<[usize]>, EdgeId>,
    allow_duplicates: bool,
}

impl Hypergraph {
    /// Builds an r-graph on `{1..n}`. Edges are given as vertex lists in any
    /// order; each must have exactly `r` distinct labels in `1..=n`.
    pub fn new<I, E>(n: usize, r: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = E>,
        E: AsRef<[usize]>,
    {
        Self::build(n, r, edges, false)
    }

    /// Like [`Hypergraph::new`], but repeated edges are kept as distinct
    /// [`EdgeId`]s (multigraph mode).
    pub fn with_duplicates<I, E>(n: usize, r: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = E>,
        E: AsRef<[usize]>,
    {
        Self::build(n, r, edges, true)
    }

    pub fn empty(n: usize, r: usize) -> Result<Self> {
        Self::new(n, r, std::iter::empty::<[usize; 0]>())
    }

    fn build<I, E>(n: usize, r: usize, edges: I, allow_duplicates: bool) -> Result<Self>
    where
        I: IntoIterator<Item = E>,
        E: AsRef<[usize]>,
    {
        if n == 0 {
            return Err(Error::ParameterOutOfRange("n must be at least 1".into()));
        }
        if r < 2 || r > n {
            return Err(Error::ParameterOutOfRange(format!(
                "uniformity r = {r} must satisfy 2 <= r <= n = {n}"
            )));
        }
        let mut h = Hypergraph {
            n,
            r,
            edges: Vec::new(),
            incidence: vec![Vec::new(); n + 1],
            lookup: HashMap::new(),
            allow_duplicates,
        };
        for e in edges {
            h.add_edge(e.as_ref())?;
        }
        Ok(h)
    }

    /// Appends an edge and returns its id.
    pub fn add_edge(&mut self, vertices: &[usize]) -> Result<EdgeId> {
        let index = self.edges.len();
        let mut sorted: Vec<usize> = vertices.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        if vertices.len() != self.r || sorted.len() != self.r {
            return Err(Error::EdgeWrongSize {
                index,
                expected: self.r,
                found: sorted.len(),
            });
        }
        if let Some(&v) = sorted.iter().find(|&&v| v == 0 || v > self.n) {
            return Err(Error::VertexOutOfRange { vertex: v, n: self.n });
        }
        let key: Box<[usize]> = sorted.into_boxed_slice();
        if let Some(&first) = self.lookup.get(&key) {
            if !self.allow_duplicates {
                return Err(Error::DuplicateEdge {
                    first: first.0,
                    second: index,
                });
            }
        } else {
            self.lookup.insert(key.clone(), EdgeId(index));
        }
        for &v in key.iter() {
            self.incidence[v].push(EdgeId(index));
        }
        self.edges.push(key);
        Ok(EdgeId(index))
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn r(&self) -> usize {
        self.r
    }

    /// Number of edges.
    #[inline]
    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn allows_duplicates(&self) -> bool {
        self.allow_duplicates
    }

    /// Sorted vertex list of an edge. Panics on an id from another graph.
    #[inline]
    pub fn edge(&self, id: EdgeId) -> &[usize] {
        &self.edges[id.0]
    }

    pub fn edges(&self) -> impl Iterator<Item = (EdgeId, &[usize])> + '_ {
        self.edges.iter().enumerate().map(|(i, e)| (EdgeId(i), &e[..]))
    }

    pub fn edge_ids(&self) -> impl Iterator<Item = EdgeId> {
        (0..self.edges.len()).map(EdgeId)
    }

    pub fn vertices(&self) -> std::ops::RangeInclusive<usize> {
        1..=self.n
    }

    /// Edges containing `v`, ascending by id. Panics if `v` is out of range.
    #[inline]
    pub fn incident(&self, v: usize) -> &[EdgeId] {
        &self.incidence[v]
    }

    #[inline]
    pub fn edge_contains(&self, id: EdgeId, v: usize) -> bool {
        self.edges[id.0].binary_search(&v).is_ok()
    }

    /// Id of the (first) edge equal to `vertices` as a set.
    pub fn find_edge(&self, vertices: &[usize]) -> Option<EdgeId> {
        let mut key = vertices.to_vec();
        key.sort_unstable();
        self.lookup.get(&key[..]).copied()
    }

    pub fn degree(&self, v: usize) -> Result<usize> {
        if v == 0 || v > self.n {
            return Err(Error::VertexOutOfRange { vertex: v, n: self.n });
        }
        Ok(self.incidence[v].len())
    }

    /// Degrees indexed by vertex label (slot 0 is always 0).
    pub fn degrees(&self) -> Vec<usize> {
        self.incidence.iter().map(Vec::len).collect()
    }

    pub fn min_degree(&self) -> usize {
        self.incidence[1..].iter().map(Vec::len).min().unwrap_or(0)
    }

    pub fn max_degree(&self) -> usize {
        self.incidence[1..].iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn shadow(&self) -> ShadowGraph {
        ShadowGraph::of(self)
    }

    /// The sub-hypergraph keeping only `ids` (renumbered in the given order).
    pub fn sub_hypergraph(&self, ids: &[EdgeId]) -> Hypergraph {
        let mut h = Hypergraph {
            n: self.n,
            r: self.r,
            edges: Vec::with_capacity(ids.len()),
            incidence: vec![Vec::new(); self.n + 1],
            lookup: HashMap::new(),
            allow_duplicates: self.allow_duplicates,
        };
        for &id in ids {
            h.add_edge(self.edge(id))
                .expect("edges of a valid hypergraph stay valid in a subgraph");
        }
        h
    }

    /// A copy with one more edge.
    pub fn with_edge(&self, vertices: &[usize]) -> Result<Hypergraph> {
        let mut h = self.clone();
        h.add_edge(vertices)?;
        Ok(h)
    }
}

impl PartialEq for Hypergraph {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.r == other.r && self.edges == other.edges
    }
}

impl Eq for Hypergraph {}
