//! Directed Hamiltonian cycles: cycle-cover patching first, then
//! depth-first search with degree pruning.

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use super::berge::HEURISTIC_SEED;
use super::budget::{Meter, SolveBudget, SolveMode, SolveStats, SolveStatus};
use super::matching::hopcroft_karp;
use crate::error::{Error, Result};
use crate::random::{rng_from_seed, Digraph, SeededRng};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct DirectedResult {
    pub status: SolveStatus,
    /// Cyclic vertex order `v_1 -> v_2 -> ... -> v_n -> v_1`.
    pub order: Option<Vec<usize>>,
    pub stats: SolveStats,
}

pub fn digraph_hamilton(d: &Digraph, budget: &SolveBudget) -> Result<DirectedResult> {
    let n = d.n();
    if n < 3 {
        return Err(Error::TooFewVertices(n));
    }
    budget.validate()?;
    let mut meter = Meter::new(budget);
    let finish = |meter: &Meter, status, order| DirectedResult {
        status,
        order,
        stats: meter.stats(),
    };
    if (1..=n).any(|v| d.out_neighbors(v).is_empty() || d.in_neighbors(v).is_empty()) || !strongly_connected(d) {
        return Ok(finish(&meter, SolveStatus::ProvedAbsent, None));
    }
    let Some(cover) = cycle_cover(d) else {
        return Ok(finish(&meter, SolveStatus::ProvedAbsent, None));
    };
    if budget.mode == SolveMode::HeuristicFirst {
        let mut rng = rng_from_seed(HEURISTIC_SEED);
        if let Some(order) = patch_cycles(d, cover, &mut rng, &mut meter, budget.node_limit / 2) {
            return Ok(finish(&meter, SolveStatus::Found, Some(order)));
        }
    }
    let mut s = Dfs {
        d,
        visited: vec![false; n + 1],
        path: vec![1],
    };
    s.visited[1] = true;
    Ok(match s.run(&mut meter) {
        Some(true) => finish(&meter, SolveStatus::Found, Some(s.path)),
        Some(false) => finish(&meter, SolveStatus::ProvedAbsent, None),
        None => finish(&meter, SolveStatus::Inconclusive, None),
    })
}

fn strongly_connected(d: &Digraph) -> bool {
    let n = d.n();
    let reach = |forward: bool| {
        let mut seen = vec![false; n + 1];
        seen[1] = true;
        let mut stack = vec![1];
        let mut count = 1;
        while let Some(v) = stack.pop() {
            let next = if forward { d.out_neighbors(v) } else { d.in_neighbors(v) };
            for &w in next {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count
    };
    reach(true) == n && reach(false) == n
}

/// A spanning set of vertex-disjoint directed cycles as `succ[v]`, from a
/// perfect matching between out-slots and in-slots.
fn cycle_cover(d: &Digraph) -> Option<Vec<usize>> {
    let n = d.n();
    let adj: Vec<Vec<usize>> = (0..=n)
        .map(|v| if v == 0 { Vec::new() } else { d.out_neighbors(v).to_vec() })
        .collect();
    let m = hopcroft_karp(&adj[1..], n + 1);
    let mut succ = vec![0; n + 1];
    for (i, w) in m.into_iter().enumerate() {
        succ[i + 1] = w?;
    }
    Some(succ)
}

fn cycle_ids(succ: &[usize]) -> (Vec<usize>, usize) {
    let n = succ.len() - 1;
    let mut id = vec![usize::MAX; n + 1];
    let mut count = 0;
    for v in 1..=n {
        if id[v] != usize::MAX {
            continue;
        }
        let mut u = v;
        while id[u] == usize::MAX {
            id[u] = count;
            u = succ[u];
        }
        count += 1;
    }
    (id, count)
}

/// Merges the cycles of a cover into one. Two-exchanges that join two
/// cycles are applied greedily; when none exists, a random arc between
/// cycles is forced in and the cover repaired along an alternating path.
fn patch_cycles(d: &Digraph, mut succ: Vec<usize>, rng: &mut SeededRng, meter: &mut Meter, steps: u64) -> Option<Vec<usize>> {
    let n = d.n();
    let mut pred = vec![0; n + 1];
    for v in 1..=n {
        pred[succ[v]] = v;
    }
    let mut order: Vec<usize> = (1..=n).collect();
    let mut spent = 0u64;
    loop {
        let (id, count) = cycle_ids(&succ);
        if count == 1 {
            let mut cycle = vec![1];
            let mut v = succ[1];
            while v != 1 {
                cycle.push(v);
                v = succ[v];
            }
            return Some(cycle);
        }
        spent += 1;
        if spent > steps || !meter.tick() {
            return None;
        }
        order.shuffle(rng);
        // u -> w and x -> u' replace u -> u' and x -> w, where x = pred[w]
        let merge = order.iter().find_map(|&u| {
            d.out_neighbors(u).iter().find_map(|&w| {
                let (x, u2) = (pred[w], succ[u]);
                (id[w] != id[u] && d.has_arc(x, u2)).then_some((u, w, x, u2))
            })
        });
        if let Some((u, w, x, u2)) = merge {
            succ[u] = w;
            pred[w] = u;
            succ[x] = u2;
            pred[u2] = x;
            continue;
        }
        let saved = succ.clone();
        let u = order[0];
        let across: Vec<usize> = d.out_neighbors(u).iter().copied().filter(|&w| id[w] != id[u]).collect();
        let Some(&w) = across.choose(rng) else {
            continue;
        };
        if !reroute(d, &mut succ, &mut pred, u, w, rng) {
            succ = saved;
            for v in 1..=n {
                pred[succ[v]] = v;
            }
            continue;
        }
        meter.rotations += 1;
        let (_, after) = cycle_ids(&succ);
        if after > count && rng.gen_ratio(3, 4) {
            succ = saved;
            for v in 1..=n {
                pred[succ[v]] = v;
            }
        }
    }
}

/// Forces the arc `u -> w` into the cover and repairs it: `x = pred[w]`
/// loses its successor and `succ[u]` its predecessor; a BFS over
/// alternating paths from `x` finds a way to hand `x` a new successor.
fn reroute(d: &Digraph, succ: &mut [usize], pred: &mut [usize], u: usize, w: usize, rng: &mut SeededRng) -> bool {
    let n = d.n();
    let x0 = pred[w];
    let target = succ[u];
    succ[u] = w;
    pred[w] = u;
    // BFS over "free left" vertices; parent links record (left, right) choices
    let mut came: Vec<Option<(usize, usize)>> = vec![None; n + 1];
    let mut seen_left = vec![false; n + 1];
    seen_left[x0] = true;
    let mut frontier = vec![x0];
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for &x in &frontier {
            let mut outs = d.out_neighbors(x).to_vec();
            outs.shuffle(rng);
            for y in outs {
                if y == w {
                    continue;
                }
                if y == target {
                    // unwind: x takes y, previous lefts take their rights
                    let (mut l, mut r) = (x, y);
                    loop {
                        succ[l] = r;
                        pred[r] = l;
                        match came[l] {
                            Some((pl, pr)) => {
                                l = pl;
                                r = pr;
                            }
                            None => return true,
                        }
                    }
                }
                let z = pred[y];
                if z == u || seen_left[z] {
                    continue;
                }
                seen_left[z] = true;
                came[z] = Some((x, y));
                next.push(z);
            }
        }
        frontier = next;
    }
    false
}

struct Dfs<'a> {
    d: &'a Digraph,
    visited: Vec<bool>,
    path: Vec<usize>,
}

impl Dfs<'_> {
    /// `Some(true)` found, `Some(false)` exhausted, `None` out of budget.
    fn run(&mut self, meter: &mut Meter) -> Option<bool> {
        if !meter.tick() {
            return None;
        }
        let n = self.d.n();
        let end = *self.path.last().unwrap();
        if self.path.len() == n {
            return Some(self.d.has_arc(end, self.path[0]));
        }
        let start = self.path[0];
        let mut forced = None;
        for u in 1..=n {
            if self.visited[u] {
                continue;
            }
            let ins = self
                .d
                .in_neighbors(u)
                .iter()
                .filter(|&&p| !self.visited[p] || p == end)
                .count();
            let outs = self
                .d
                .out_neighbors(u)
                .iter()
                .filter(|&&s| !self.visited[s] || s == start)
                .count();
            if ins == 0 || outs == 0 {
                return Some(false);
            }
            if ins == 1 && self.d.has_arc(end, u) {
                if forced.is_some() {
                    return Some(false);
                }
                forced = Some(u);
            }
        }
        let mut next: Vec<usize> = match forced {
            Some(u) => vec![u],
            None => self
                .d
                .out_neighbors(end)
                .iter()
                .copied()
                .filter(|&w| !self.visited[w])
                .collect(),
        };
        next.sort_by_key(|&w| {
            let free = self.d.out_neighbors(w).iter().filter(|&&s| !self.visited[s]).count();
            (free, w)
        });
        for w in next {
            self.visited[w] = true;
            self.path.push(w);
            match self.run(meter) {
                Some(true) => return Some(true),
                Some(false) => {}
                None => return None,
            }
            self.path.pop();
            self.visited[w] = false;
        }
        Some(false)
    }
}
