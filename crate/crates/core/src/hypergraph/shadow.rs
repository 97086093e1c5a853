use std::collections::BTreeMap;

use super::{EdgeId, Hypergraph};

/// The 2-shadow of a hypergraph: `u ~ v` iff some edge contains both. Each
/// pair keeps the ascending list of edges that cover it.
#[derive(Clone, Debug)]
pub struct ShadowGraph {
    n: usize,
    adjacency: Vec<Vec<usize>>,
    multiplicity: BTreeMap<(usize, usize), Vec<EdgeId>>,
}

impl ShadowGraph {
    pub fn of(h: &Hypergraph) -> Self {
        let n = h.n();
        let mut multiplicity: BTreeMap<(usize, usize), Vec<EdgeId>> = BTreeMap::new();
        for (id, e) in h.edges() {
            for (i, &u) in e.iter().enumerate() {
                for &v in &e[i + 1..] {
                    multiplicity.entry((u, v)).or_default().push(id);
                }
            }
        }
        let mut adjacency = vec![Vec::new(); n + 1];
        for &(u, v) in multiplicity.keys() {
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        ShadowGraph {
            n,
            adjacency,
            multiplicity,
        }
    }

    /// Builds a simple graph directly from pairs, with no covering edges.
    pub(crate) fn from_pairs(n: usize, pairs: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut multiplicity: BTreeMap<(usize, usize), Vec<EdgeId>> = BTreeMap::new();
        for (u, v) in pairs {
            if u != v {
                multiplicity.entry((u.min(v), u.max(v))).or_default();
            }
        }
        let mut adjacency = vec![Vec::new(); n + 1];
        for &(u, v) in multiplicity.keys() {
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        ShadowGraph {
            n,
            adjacency,
            multiplicity,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Sorted neighbours of `v`.
    #[inline]
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn has_pair(&self, u: usize, v: usize) -> bool {
        u != v && self.adjacency[u].binary_search(&v).is_ok()
    }

    /// Edges containing both `u` and `v`, ascending; empty if not adjacent.
    pub fn covering(&self, u: usize, v: usize) -> &[EdgeId] {
        self.multiplicity
            .get(&(u.min(v), u.max(v)))
            .map(Vec::as_slice)
            .unwrap_or(&[])
    }

    /// Adjacent pairs `(u, v)` with `u < v`, in ascending order.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.multiplicity.keys().copied()
    }

    pub fn pair_count(&self) -> usize {
        self.multiplicity.len()
    }

    pub fn is_connected(&self) -> bool {
        if self.n <= 1 {
            return true;
        }
        let mut seen = vec![false; self.n + 1];
        let mut stack = vec![1];
        seen[1] = true;
        let mut count = 1;
        while let Some(u) = stack.pop() {
            for &w in &self.adjacency[u] {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == self.n
    }
}
