//! Hamiltonian cycles and long paths in simple graphs (shadow graphs and
//! the (r-1)-out graph). Vertices are labels `1..=n`.

use rand::seq::SliceRandom;
use rand::Rng;

use super::budget::Meter;
use crate::hypergraph::ShadowGraph;
use crate::random::SeededRng;

pub(crate) enum Outcome {
    Found(Vec<usize>),
    Absent,
    Unknown,
}

/// Consulted on every tentative pair `(u, v)` the search wants to join.
/// Rejecting a pair prunes that branch; `pop` undoes the last accepted pair.
pub(crate) trait PairFilter {
    fn push(&mut self, u: usize, v: usize) -> bool;
    fn pop(&mut self);
}

/// Accepts every pair of the graph (weak Berge, plain graphs).
pub(crate) struct AnyPair;

impl PairFilter for AnyPair {
    fn push(&mut self, _: usize, _: usize) -> bool {
        true
    }
    fn pop(&mut self) {}
}

/// Structural certificates of non-Hamiltonicity: a vertex of degree < 2,
/// disconnection, a cut vertex, a vertex forced onto three cycle edges by
/// degree-2 neighbours, or forced edges closing a short cycle.
#[cfg(test)]
pub(crate) fn refute(g: &ShadowGraph) -> bool {
    reduce(g).is_none()
}

/// Deletes edges that no Hamiltonian cycle can use: once a vertex has two
/// forced edges (edges at degree-2 vertices), its other edges go, which can
/// force more edges. Returns `None` when the propagation, connectivity or a
/// cut vertex shows that no Hamiltonian cycle exists.
pub(crate) fn reduce(g: &ShadowGraph) -> Option<ShadowGraph> {
    let n = g.n();
    if n < 3 {
        return None;
    }
    let mut adj: Vec<Vec<usize>> = (0..=n).map(|v| if v == 0 { Vec::new() } else { g.neighbors(v).to_vec() }).collect();
    let mut changed = true;
    while changed {
        changed = false;
        if (1..=n).any(|v| adj[v].len() < 2) {
            return None;
        }
        let mut forced: Vec<(usize, usize)> = Vec::new();
        for v in 1..=n {
            if adj[v].len() == 2 {
                for &u in &adj[v] {
                    forced.push((u.min(v), u.max(v)));
                }
            }
        }
        forced.sort_unstable();
        forced.dedup();
        if closes_short_cycle(n, &forced) {
            return None;
        }
        let mut forced_at: Vec<Vec<usize>> = vec![Vec::new(); n + 1];
        for &(u, v) in &forced {
            forced_at[u].push(v);
            forced_at[v].push(u);
        }
        for u in 1..=n {
            match forced_at[u].len() {
                0 | 1 => {}
                2 if adj[u].len() > 2 => {
                    let keep = &forced_at[u];
                    let dropped: Vec<usize> = adj[u].iter().copied().filter(|w| !keep.contains(w)).collect();
                    for w in dropped {
                        adj[w].retain(|&x| x != u);
                    }
                    adj[u].retain(|w| keep.contains(w));
                    changed = true;
                }
                2 => {}
                _ => return None,
            }
        }
    }
    let reduced = ShadowGraph::from_pairs(n, (1..=n).flat_map(|u| adj[u].iter().filter(move |&&w| w > u).map(move |&w| (u, w))));
    if !reduced.is_connected() || has_cut_vertex(&reduced) {
        return None;
    }
    Some(reduced)
}

/// Whether the forced edges contain a cycle missing some vertex.
fn closes_short_cycle(n: usize, forced: &[(usize, usize)]) -> bool {
    let mut parent: Vec<usize> = (0..=n).collect();
    let mut size = vec![1usize; n + 1];
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for &(u, v) in forced {
        let (a, b) = (find(&mut parent, u), find(&mut parent, v));
        if a == b {
            if size[a] < n {
                return true;
            }
        } else {
            parent[a] = b;
            size[b] += size[a];
        }
    }
    false
}

fn has_cut_vertex(g: &ShadowGraph) -> bool {
    let n = g.n();
    let mut disc = vec![0usize; n + 1];
    let mut low = vec![0usize; n + 1];
    let mut timer = 1;
    let root = 1;
    // iterative DFS: (vertex, parent, next neighbour index)
    let mut stack: Vec<(usize, usize, usize)> = vec![(root, 0, 0)];
    disc[root] = timer;
    low[root] = timer;
    let mut root_children = 0;
    while let Some(&mut (v, p, ref mut i)) = stack.last_mut() {
        if let Some(&w) = g.neighbors(v).get(*i) {
            *i += 1;
            if disc[w] == 0 {
                timer += 1;
                disc[w] = timer;
                low[w] = timer;
                if v == root {
                    root_children += 1;
                }
                stack.push((w, v, 0));
            } else if w != p {
                low[v] = low[v].min(disc[w]);
            }
        } else {
            stack.pop();
            if let Some(&(u, _, _)) = stack.last() {
                low[u] = low[u].min(low[v]);
                if u != root && low[v] >= disc[u] {
                    return true;
                }
            }
        }
    }
    root_children > 1
}

/// Exhaustive depth-first search for a Hamiltonian cycle whose consecutive
/// pairs are all accepted by `filter`. Returns the cyclic order on success.
pub(crate) fn exact_cycle(g: &ShadowGraph, filter: &mut impl PairFilter, meter: &mut Meter) -> Outcome {
    let n = g.n();
    let start = (1..=n).min_by_key(|&v| (g.degree(v), v)).expect("n >= 1");
    let mut s = Search {
        g,
        visited: vec![false; n + 1],
        path: vec![start],
        avail: vec![0; n + 1],
    };
    s.visited[start] = true;
    s.dfs(filter, meter)
}

struct Search<'a> {
    g: &'a ShadowGraph,
    visited: Vec<bool>,
    path: Vec<usize>,
    avail: Vec<usize>,
}

impl Search<'_> {
    fn dfs(&mut self, filter: &mut impl PairFilter, meter: &mut Meter) -> Outcome {
        if !meter.tick() {
            return Outcome::Unknown;
        }
        let n = self.g.n();
        let start = self.path[0];
        let end = *self.path.last().unwrap();
        if self.path.len() == n {
            if self.g.has_pair(end, start) && filter.push(end, start) {
                filter.pop();
                return Outcome::Found(self.path.clone());
            }
            return Outcome::Absent;
        }
        let Some(candidates) = self.candidates(start, end) else {
            return Outcome::Absent;
        };
        for w in candidates {
            if !filter.push(end, w) {
                continue;
            }
            self.visited[w] = true;
            self.path.push(w);
            let res = self.dfs(filter, meter);
            self.path.pop();
            self.visited[w] = false;
            filter.pop();
            match res {
                Outcome::Absent => {}
                other => return other,
            }
        }
        Outcome::Absent
    }

    /// Next vertices worth trying, or `None` when the partial path cannot
    /// be completed.
    fn candidates(&mut self, start: usize, end: usize) -> Option<Vec<usize>> {
        let g = self.g;
        let n = g.n();
        let single = self.path.len() == 1;
        let mut remaining = 0;
        let mut forced_end = Vec::new();
        let mut forced_start = 0;
        for u in 1..=n {
            if self.visited[u] {
                continue;
            }
            remaining += 1;
            let a = g
                .neighbors(u)
                .iter()
                .filter(|&&w| !self.visited[w] || w == start || w == end)
                .count();
            if a < 2 {
                return None;
            }
            self.avail[u] = a;
            if a == 2 {
                let to_end = g.has_pair(u, end);
                if to_end {
                    forced_end.push(u);
                }
                if !single && g.has_pair(u, start) {
                    forced_start += 1;
                    if to_end && remaining_other_than(self, u) {
                        return None;
                    }
                }
            }
        }
        let end_slots = if single { 2 } else { 1 };
        if forced_end.len() > end_slots || (!single && forced_start > 1) {
            return None;
        }
        if !self.unvisited_connected(start, end, remaining) {
            return None;
        }
        if !forced_end.is_empty() {
            return Some(forced_end);
        }
        let mut next: Vec<usize> = g
            .neighbors(end)
            .iter()
            .copied()
            .filter(|&w| !self.visited[w])
            .collect();
        next.sort_by_key(|&w| (self.avail[w], w));
        (!next.is_empty()).then_some(next)
    }

    /// All unvisited vertices reachable from `end` through unvisited ones,
    /// and `start` still has an unvisited neighbour.
    fn unvisited_connected(&self, start: usize, end: usize, remaining: usize) -> bool {
        let g = self.g;
        if self.path.len() > 1 && !g.neighbors(start).iter().any(|&w| !self.visited[w]) {
            return false;
        }
        let mut seen = vec![false; g.n() + 1];
        let mut stack = vec![end];
        let mut reached = 0;
        while let Some(v) = stack.pop() {
            for &w in g.neighbors(v) {
                if !self.visited[w] && !seen[w] {
                    seen[w] = true;
                    reached += 1;
                    stack.push(w);
                }
            }
        }
        reached == remaining
    }
}

fn remaining_other_than(s: &Search<'_>, u: usize) -> bool {
    (1..=s.g.n()).any(|w| w != u && !s.visited[w])
}

/// Randomised Pósa rotation-extension search for a Hamiltonian cycle.
/// Restarts after `stall` consecutive steps without the path growing.
pub(crate) fn posa_cycle(g: &ShadowGraph, rng: &mut SeededRng, meter: &mut Meter, stall: u64) -> Option<Vec<usize>> {
    let n = g.n();
    if n < 3 {
        return None;
    }
    let first = (1..=n).min_by_key(|&v| (g.degree(v), v)).unwrap();
    let mut attempt = 0u64;
    while !meter.exhausted() {
        let start = if attempt == 0 { first } else { rng.gen_range(1..=n) };
        attempt += 1;
        if let Some(c) = posa_attempt(g, start, rng, meter, stall) {
            return Some(c);
        }
    }
    None
}

const OFF: usize = usize::MAX;

fn posa_attempt(g: &ShadowGraph, start: usize, rng: &mut SeededRng, meter: &mut Meter, stall: u64) -> Option<Vec<usize>> {
    let n = g.n();
    let mut path = vec![start];
    let mut pos = vec![OFF; n + 1];
    pos[start] = 0;
    let mut idle = 0u64;
    while idle < stall {
        if !meter.tick() {
            return None;
        }
        idle += 1;
        let end = *path.last().unwrap();
        if let Some(w) = best_extension(g, &pos, end, rng) {
            pos[w] = path.len();
            path.push(w);
            idle = 0;
            continue;
        }
        let head = path[0];
        if path.len() > 1 && g.neighbors(head).iter().any(|&w| pos[w] == OFF) {
            reverse_segment(&mut path, &mut pos, 0);
            continue;
        }
        if g.has_pair(end, head) && path.len() > 2 {
            if path.len() == n {
                return Some(path);
            }
            // open the cycle at a vertex with an outside neighbour
            let len = path.len();
            let offset = rng.gen_range(0..len);
            let hit = (0..len).map(|t| (t + offset) % len).find_map(|i| {
                g.neighbors(path[i]).iter().find(|&&w| pos[w] == OFF).map(|&w| (i, w))
            });
            if let Some((i, w)) = hit {
                let mut next = Vec::with_capacity(len + 1);
                next.push(w);
                next.extend(path[..=i].iter().rev());
                next.extend(path[i + 1..].iter().rev());
                path = next;
                for (k, &v) in path.iter().enumerate() {
                    pos[v] = k;
                }
                idle = 0;
                continue;
            }
        }
        // rotate: end ~ path[j] with j < len - 2
        let len = path.len();
        let pivots: Vec<usize> = g
            .neighbors(end)
            .iter()
            .map(|&x| pos[x])
            .filter(|&j| j != OFF && j + 2 < len)
            .collect();
        if pivots.is_empty() || rng.gen_ratio(1, 20) {
            reverse_segment(&mut path, &mut pos, 0);
            continue;
        }
        let j = *pivots.choose(rng).unwrap();
        reverse_segment(&mut path, &mut pos, j + 1);
        meter.rotations += 1;
    }
    None
}

fn best_extension(g: &ShadowGraph, pos: &[usize], end: usize, rng: &mut SeededRng) -> Option<usize> {
    let mut best: Option<(usize, usize)> = None;
    let mut ties = 0u32;
    for &w in g.neighbors(end) {
        if pos[w] != OFF {
            continue;
        }
        let free = g.neighbors(w).iter().filter(|&&x| pos[x] == OFF).count();
        match best {
            Some((_, f)) if free > f => {}
            Some((_, f)) if free == f => {
                ties += 1;
                if rng.gen_ratio(1, ties + 1) {
                    best = Some((w, free));
                }
            }
            _ => {
                best = Some((w, free));
                ties = 0;
            }
        }
    }
    best.map(|(w, _)| w)
}

fn reverse_segment(path: &mut [usize], pos: &mut [usize], from: usize) {
    path[from..].reverse();
    for (k, &v) in path.iter().enumerate().skip(from) {
        pos[v] = k;
    }
}

/// Exact longest path (vertex count) through pairs accepted by `filter`.
/// The flag is false when the budget ran out before the search finished.
pub(crate) fn longest_path(g: &ShadowGraph, filter: &mut impl PairFilter, meter: &mut Meter) -> (Vec<usize>, bool) {
    let n = g.n();
    let mut lp = LongestPath {
        g,
        visited: vec![false; n + 1],
        path: Vec::with_capacity(n),
        best: vec![1],
        done: true,
    };
    for s in 1..=n {
        if lp.best.len() == n || !lp.done {
            break;
        }
        lp.visited[s] = true;
        lp.path.push(s);
        lp.dfs(filter, meter);
        lp.path.pop();
        lp.visited[s] = false;
    }
    (lp.best, lp.done)
}

struct LongestPath<'a> {
    g: &'a ShadowGraph,
    visited: Vec<bool>,
    path: Vec<usize>,
    best: Vec<usize>,
    done: bool,
}

impl LongestPath<'_> {
    fn dfs(&mut self, filter: &mut impl PairFilter, meter: &mut Meter) {
        if !meter.tick() {
            self.done = false;
            return;
        }
        if self.path.len() > self.best.len() {
            self.best = self.path.clone();
        }
        let n = self.g.n();
        if self.best.len() == n {
            return;
        }
        let end = *self.path.last().unwrap();
        if self.path.len() + self.reach(end) <= self.best.len() {
            return;
        }
        for i in 0..self.g.degree(end) {
            let w = self.g.neighbors(end)[i];
            if self.visited[w] || !filter.push(end, w) {
                continue;
            }
            self.visited[w] = true;
            self.path.push(w);
            self.dfs(filter, meter);
            self.path.pop();
            self.visited[w] = false;
            filter.pop();
            if !self.done || self.best.len() == n {
                return;
            }
        }
    }

    fn reach(&self, from: usize) -> usize {
        let mut seen = vec![false; self.g.n() + 1];
        let mut stack = vec![from];
        let mut count = 0;
        while let Some(v) = stack.pop() {
            for &w in self.g.neighbors(v) {
                if !self.visited[w] && !seen[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count
    }
}
