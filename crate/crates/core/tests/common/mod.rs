//! Brute-force oracles shared by the integration tests. They work from the
//! definitions only and use nothing from the solvers they check.

#![allow(dead_code)]

use std::collections::{BTreeSet, HashSet, VecDeque};

use bergelab::random::rng_from_seed;
use bergelab::{verify_certificate, BergeCertificate, EdgeId, Hypergraph};
use rand::seq::SliceRandom;
use rand::Rng;

pub type Rng64 = bergelab::random::SeededRng;

pub fn rng(seed: u64) -> Rng64 {
    rng_from_seed(seed)
}

/// All r-subsets of `{1..n}` as sorted vectors, in lexicographic order.
pub fn r_subsets(n: usize, r: usize) -> Vec<Vec<usize>> {
    let mut all: Vec<Vec<usize>> = (0u32..1 << n)
        .filter(|m| m.count_ones() as usize == r)
        .map(|m| (1..=n).filter(|v| m >> (v - 1) & 1 == 1).collect())
        .collect();
    all.sort();
    all
}

/// `m` distinct uniform r-subsets, capped at all of them.
pub fn random_hypergraph(rng: &mut Rng64, n: usize, r: usize, m: usize) -> Hypergraph {
    let mut all = r_subsets(n, r);
    all.shuffle(rng);
    all.truncate(m);
    Hypergraph::new(n, r, all).unwrap()
}

pub fn random_instance(rng: &mut Rng64, n_range: (usize, usize), r: usize, max_m: usize) -> Hypergraph {
    let n = rng.gen_range(n_range.0..=n_range.1);
    let m = rng.gen_range(0..=max_m);
    random_hypergraph(rng, n, r, m)
}

pub fn for_each_permutation(items: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
    if k == items.len() {
        f(items);
        return;
    }
    for i in k..items.len() {
        items.swap(k, i);
        for_each_permutation(items, k + 1, f);
        items.swap(k, i);
    }
}

fn covering(h: &Hypergraph, u: usize, v: usize) -> Vec<usize> {
    h.edges()
        .filter(|(_, e)| e.contains(&u) && e.contains(&v))
        .map(|(id, _)| id.index())
        .collect()
}

/// Whether the consecutive pairs can take pairwise distinct covering edges.
fn injective(options: &[Vec<usize>], used: &mut Vec<bool>, i: usize) -> bool {
    if i == options.len() {
        return true;
    }
    for &e in &options[i] {
        if !used[e] {
            used[e] = true;
            let ok = injective(options, used, i + 1);
            used[e] = false;
            if ok {
                return true;
            }
        }
    }
    false
}

/// Hamiltonicity by trying every cyclic order through vertex 1 and every
/// edge assignment.
pub fn hamiltonian_by_orders(h: &Hypergraph, weak: bool) -> bool {
    let n = h.n();
    let mut rest: Vec<usize> = (2..=n).collect();
    let mut found = false;
    for_each_permutation(&mut rest, 0, &mut |p| {
        if found {
            return;
        }
        let order: Vec<usize> = std::iter::once(1).chain(p.iter().copied()).collect();
        let options: Vec<Vec<usize>> = (0..n).map(|i| covering(h, order[i], order[(i + 1) % n])).collect();
        found = if weak {
            options.iter().all(|o| !o.is_empty())
        } else {
            injective(&options, &mut vec![false; h.m()], 0)
        };
    });
    found
}

/// Longest Berge path (in vertices) and Hamiltonicity, by depth-first search
/// over every Berge path.
pub fn berge_by_dfs(h: &Hypergraph, weak: bool) -> (usize, bool) {
    struct Search<'a> {
        h: &'a Hypergraph,
        weak: bool,
        path: Vec<usize>,
        on_path: Vec<bool>,
        used: Vec<bool>,
        best: usize,
        cycle: bool,
    }
    impl Search<'_> {
        fn go(&mut self) {
            self.best = self.best.max(self.path.len());
            let last = *self.path.last().unwrap();
            let n = self.h.n();
            if self.path.len() == n && n >= 3 && self.path[0] == 1 {
                let first = self.path[0];
                if covering(self.h, last, first).iter().any(|&e| self.weak || !self.used[e]) {
                    self.cycle = true;
                }
            }
            for u in 1..=n {
                if self.on_path[u] {
                    continue;
                }
                for e in covering(self.h, last, u) {
                    if !self.weak && self.used[e] {
                        continue;
                    }
                    self.used[e] = true;
                    self.on_path[u] = true;
                    self.path.push(u);
                    self.go();
                    self.path.pop();
                    self.on_path[u] = false;
                    self.used[e] = false;
                    if self.weak {
                        break;
                    }
                }
            }
        }
    }
    let mut s = Search {
        h,
        weak,
        path: Vec::new(),
        on_path: vec![false; h.n() + 1],
        used: vec![false; h.m()],
        best: 0,
        cycle: false,
    };
    for v in 1..=h.n() {
        s.path = vec![v];
        s.on_path[v] = true;
        s.go();
        s.on_path[v] = false;
    }
    (s.best, s.cycle)
}

pub struct Closure {
    pub right_endpoints: BTreeSet<usize>,
    pub extension: bool,
    pub states: usize,
}

/// Every path `v_1 .. v_p, v_m .. v_{p+1}` with `e` joining `v_p` and `v_m`
/// that is still a Berge path with distinct edges, breadth first from
/// `base`.
pub fn closure_by_states(h: &Hypergraph, base: &BergeCertificate) -> Closure {
    let start = (base.vertices.clone(), base.edges.clone());
    let mut seen: HashSet<(Vec<usize>, Vec<EdgeId>)> = HashSet::from([start.clone()]);
    let mut queue = VecDeque::from([start]);
    let mut right_endpoints = BTreeSet::new();
    let mut extension = false;
    while let Some((vs, es)) = queue.pop_front() {
        let end = *vs.last().unwrap();
        right_endpoints.insert(end);
        for (id, e) in h.edges() {
            if e.contains(&end) && !es.contains(&id) && e.iter().any(|x| !vs.contains(x)) {
                extension = true;
            }
        }
        for p in 0..vs.len().saturating_sub(1) {
            for id in h.edge_ids() {
                let mut nv = vs[..=p].to_vec();
                nv.extend(vs[p + 1..].iter().rev());
                let mut ne = es[..p].to_vec();
                ne.push(id);
                ne.extend(es[p + 1..].iter().rev());
                if nv == vs && ne == es {
                    continue;
                }
                let cert = BergeCertificate::path(nv.clone(), ne.clone(), false);
                if verify_certificate(h, &cert).is_valid() && seen.insert((nv.clone(), ne.clone())) {
                    queue.push_back((nv, ne));
                }
            }
        }
    }
    Closure {
        right_endpoints,
        extension,
        states: seen.len(),
    }
}

pub fn masks(n: usize) -> impl Iterator<Item = u32> {
    0u32..1 << n
}

pub fn mask_to_set(mask: u32, n: usize) -> Vec<usize> {
    (1..=n).filter(|v| mask >> (v - 1) & 1 == 1).collect()
}

fn edge_mask(e: &[usize]) -> u32 {
    e.iter().fold(0, |m, v| m | 1 << (v - 1))
}

/// Is there a pair `X, Y` with `|X| <= k`, `|Y| < alpha |X|` such that
/// every edge meeting `X` lies inside `X ∪ Y`?
pub fn weak_counterexample_exists(h: &Hypergraph, k: usize, alpha: f64) -> bool {
    let n = h.n();
    let edges: Vec<u32> = h.edges().map(|(_, e)| edge_mask(e)).collect();
    masks(n).any(|x| {
        let size = x.count_ones() as usize;
        size >= 1
            && size <= k
            && masks(n).any(|y| {
                y & x == 0
                    && (y.count_ones() as f64) < alpha * size as f64
                    && edges.iter().all(|&e| e & x == 0 || e & !(x | y) == 0)
            })
    })
}

/// Whether `(X, Y)` violates the expander definition: the sizes fit and no
/// edge meets `X` exactly once while avoiding `Y`.
pub fn expander_violation(h: &Hypergraph, x: &[usize], y: &[usize], k: usize, alpha: f64) -> bool {
    let (xm, ym) = (edge_mask(x), edge_mask(y));
    !x.is_empty()
        && x.len() <= k
        && xm & ym == 0
        && (y.len() as f64) < alpha * x.len() as f64
        && h.edges().all(|(_, e)| {
            let em = edge_mask(e);
            (em & xm).count_ones() != 1 || em & ym != 0
        })
}

pub fn expander_counterexample_exists(h: &Hypergraph, k: usize, alpha: f64) -> bool {
    let n = h.n();
    let edges: Vec<u32> = h.edges().map(|(_, e)| edge_mask(e)).collect();
    masks(n).any(|x| {
        let size = x.count_ones() as usize;
        size >= 1
            && size <= k
            && masks(n).any(|y| {
                y & x == 0
                    && (y.count_ones() as f64) < alpha * size as f64
                    && edges.iter().all(|&e| (e & x).count_ones() != 1 || e & y != 0)
            })
    })
}
