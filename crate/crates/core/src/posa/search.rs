//! Randomised rotation-extension search for long Berge paths and
//! Hamiltonian Berge cycles.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::hypergraph::{BergeCertificate, EdgeId, Hypergraph};
use crate::random::SeededRng;
use crate::solvers::budget::Meter;
use crate::solvers::matching::perfect_matching;

const OFF: usize = usize::MAX;

pub(crate) struct SearchOutcome {
    pub cycle: Option<BergeCertificate>,
    pub best_path: BergeCertificate,
}

struct Walk<'a> {
    h: &'a Hypergraph,
    vertices: Vec<usize>,
    edges: Vec<EdgeId>,
    pos: Vec<usize>,
    used: Vec<bool>,
}

impl<'a> Walk<'a> {
    fn new(h: &'a Hypergraph, start: usize) -> Self {
        let mut pos = vec![OFF; h.n() + 1];
        pos[start] = 0;
        Walk {
            h,
            vertices: vec![start],
            edges: Vec::new(),
            pos,
            used: vec![false; h.m()],
        }
    }

    fn end(&self) -> usize {
        *self.vertices.last().unwrap()
    }

    fn push(&mut self, e: EdgeId, x: usize) {
        self.used[e.0] = true;
        self.pos[x] = self.vertices.len();
        self.vertices.push(x);
        self.edges.push(e);
    }

    fn reindex(&mut self, from: usize) {
        for (k, &v) in self.vertices.iter().enumerate().skip(from) {
            self.pos[v] = k;
        }
    }

    fn reverse(&mut self) {
        self.vertices.reverse();
        self.edges.reverse();
        self.reindex(0);
    }

    fn rotate(&mut self, p: usize, e: EdgeId) {
        self.used[self.edges[p].0] = false;
        self.used[e.0] = true;
        self.edges[p] = e;
        self.vertices[p + 1..].reverse();
        self.edges[p + 1..].reverse();
        self.reindex(p + 1);
    }

    /// Unused edges at `v` reaching off-path vertices.
    fn extensions_at(&self, v: usize) -> Vec<(EdgeId, usize)> {
        let mut out = Vec::new();
        for &e in self.h.incident(v) {
            if self.used[e.0] {
                continue;
            }
            for &x in self.h.edge(e) {
                if self.pos[x] == OFF {
                    out.push((e, x));
                }
            }
        }
        out
    }

    /// Re-assigns all path edges so that one more pair `(end, x)` gets an
    /// edge too; succeeds for the first off-path shadow neighbour `x` that
    /// admits distinct representatives.
    fn matched_extension(&mut self, rng: &mut SeededRng, meter: &mut Meter) -> bool {
        let end = self.end();
        let mut targets: Vec<usize> = self
            .h
            .incident(end)
            .iter()
            .flat_map(|&e| self.h.edge(e).iter().copied())
            .filter(|&x| self.pos[x] == OFF)
            .collect();
        targets.sort_unstable();
        targets.dedup();
        targets.shuffle(rng);
        for x in targets.into_iter().take(3) {
            meter.tick();
            let mut pairs: Vec<(usize, usize)> = self.vertices.windows(2).map(|w| (w[0], w[1])).collect();
            pairs.push((end, x));
            if let Some(assign) = assign_edges(self.h, &pairs) {
                for (i, e) in assign.iter().take(self.edges.len()).enumerate() {
                    self.edges[i] = *e;
                }
                self.used.iter_mut().for_each(|u| *u = false);
                for e in &self.edges {
                    self.used[e.0] = true;
                }
                self.push(*assign.last().unwrap(), x);
                return true;
            }
        }
        false
    }

    /// Edges closing the path into a cycle, if the closing pair can be
    /// covered: an unused edge, or a full reassignment by matching.
    fn close(&self) -> Option<Vec<EdgeId>> {
        let (head, end) = (self.vertices[0], self.end());
        if self.vertices.len() < 3 {
            return None;
        }
        if let Some(&e) = self
            .h
            .incident(end)
            .iter()
            .find(|&&e| !self.used[e.0] && self.h.edge_contains(e, head))
        {
            let mut edges = self.edges.clone();
            edges.push(e);
            return Some(edges);
        }
        if !self.h.incident(end).iter().any(|&e| self.h.edge_contains(e, head)) {
            return None;
        }
        let mut pairs: Vec<(usize, usize)> = self.vertices.windows(2).map(|w| (w[0], w[1])).collect();
        pairs.push((end, head));
        assign_edges(self.h, &pairs)
    }

    fn certificate(&self) -> BergeCertificate {
        BergeCertificate::path(self.vertices.clone(), self.edges.clone(), false)
    }
}

/// Distinct covering edges for consecutive pairs, by bipartite matching.
pub(crate) fn assign_edges(h: &Hypergraph, pairs: &[(usize, usize)]) -> Option<Vec<EdgeId>> {
    let adj: Vec<Vec<usize>> = pairs
        .iter()
        .map(|&(u, v)| {
            h.incident(u)
                .iter()
                .filter(|&&e| h.edge_contains(e, v))
                .map(|e| e.0)
                .collect()
        })
        .collect();
    perfect_matching(&adj, h.m()).map(|m| m.into_iter().map(EdgeId).collect())
}

/// Rotation-extension search. Each attempt grows a path from a start
/// vertex, extending when possible, closing and reopening cycles that miss
/// vertices, and otherwise rotating at a random legal pivot; it restarts
/// after `stall` steps without growth.
pub(crate) fn rotation_search(h: &Hypergraph, rng: &mut SeededRng, meter: &mut Meter, stall: u64) -> SearchOutcome {
    let n = h.n();
    let stall = stall.max(1);
    let first = (1..=n).min_by_key(|&v| (h.incident(v).len(), v)).unwrap();
    let mut best = BergeCertificate::path(vec![first], vec![], false);
    let mut attempt = 0u64;
    while !meter.exhausted() {
        let start = if attempt == 0 { first } else { rng.gen_range(1..=n) };
        attempt += 1;
        let mut walk = Walk::new(h, start);
        let mut idle = 0u64;
        while idle < stall && meter.tick() {
            idle += 1;
            if walk.vertices.len() > best.len() {
                best = walk.certificate();
            }
            let ext = walk.extensions_at(walk.end());
            if let Some(&(e, x)) = ext.choose(rng) {
                walk.push(e, x);
                idle = 0;
                continue;
            }
            if walk.vertices.len() > 1 && !walk.extensions_at(walk.vertices[0]).is_empty() {
                walk.reverse();
                continue;
            }
            if walk.vertices.len() < n && walk.matched_extension(rng, meter) {
                idle = 0;
                continue;
            }
            if let Some(cycle_edges) = walk.close() {
                if walk.vertices.len() == n {
                    return SearchOutcome {
                        cycle: Some(BergeCertificate::cycle(walk.vertices.clone(), cycle_edges, false)),
                        best_path: walk.certificate(),
                    };
                }
                if reopen(&mut walk, cycle_edges, rng) {
                    idle = 0;
                    continue;
                }
            }
            let position = walk
                .vertices
                .iter()
                .enumerate()
                .map(|(i, &v)| (v, i))
                .collect();
            let state = super::rotation::PathState {
                vertices: walk.vertices.clone(),
                edges: walk.edges.clone(),
            };
            let moves = state.moves(h, &position);
            if moves.is_empty() || rng.gen_ratio(1, 20) {
                walk.reverse();
                continue;
            }
            let &(rot, p) = moves.choose(rng).unwrap();
            walk.rotate(p, rot.edge);
            meter.rotations += 1;
        }
        if walk.vertices.len() > best.len() {
            best = walk.certificate();
        }
    }
    SearchOutcome {
        cycle: None,
        best_path: best,
    }
}

/// Breaks the cycle (walk vertices closed by `cycle_edges`) at a vertex
/// with an edge to the outside and prepends that outside vertex.
fn reopen(walk: &mut Walk<'_>, cycle_edges: Vec<EdgeId>, rng: &mut SeededRng) -> bool {
    let h = walk.h;
    let len = walk.vertices.len();
    let cv = walk.vertices.clone();
    let mut in_cycle = vec![false; h.m()];
    for e in &cycle_edges {
        in_cycle[e.0] = true;
    }
    let offset = rng.gen_range(0..len);
    for k in 0..len {
        let t = (k + offset) % len;
        for &e in h.incident(cv[t]) {
            let Some(&w) = h.edge(e).iter().find(|&&x| walk.pos[x] == OFF) else {
                continue;
            };
            // drop the cycle edge after t (walk backwards) unless e is the one before t
            let before = cycle_edges[(t + len - 1) % len];
            let (vertices, edges): (Vec<usize>, Vec<EdgeId>) = if e == before {
                let vs = (0..len).map(|i| cv[(t + i) % len]).collect();
                let es = (0..len - 1).map(|i| cycle_edges[(t + i) % len]).collect();
                (vs, es)
            } else if !in_cycle[e.0] || e == cycle_edges[t] {
                let vs = (0..len).map(|i| cv[(t + len - i) % len]).collect();
                let es = (1..len).map(|i| cycle_edges[(t + len - i) % len]).collect();
                (vs, es)
            } else {
                continue;
            };
            let mut nv = vec![w];
            nv.extend(vertices);
            let mut ne = vec![e];
            ne.extend(edges);
            walk.vertices = nv;
            walk.edges = ne;
            walk.used.iter_mut().for_each(|u| *u = false);
            for e in &walk.edges {
                walk.used[e.0] = true;
            }
            walk.reindex(0);
            return true;
        }
    }
    false
}
