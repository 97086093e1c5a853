use super::budget::{Meter, SolveBudget, SolveMode, SolveResult, SolveStatus};
use super::graph_ham::{exact_cycle, longest_path, posa_cycle, reduce, AnyPair, Outcome, PairFilter};
use super::matching::StackMatching;
use crate::error::{Error, Result};
use crate::hypergraph::{BergeCertificate, EdgeId, Hypergraph, ShadowGraph};
use crate::posa::search::{assign_edges, rotation_search};
use crate::random::rng_from_seed;

/// Seed of the randomised heuristics; fixed so that a solve is a function
/// of its input.
pub(crate) const HEURISTIC_SEED: u64 = 0x05ee_d0fb_3a6e;

/// Accepts a pair only while all accepted pairs keep distinct covering
/// edges.
pub(crate) struct DistinctEdges<'a> {
    shadow: &'a ShadowGraph,
    matching: StackMatching,
}

impl<'a> DistinctEdges<'a> {
    pub fn new(h: &Hypergraph, shadow: &'a ShadowGraph) -> Self {
        DistinctEdges {
            shadow,
            matching: StackMatching::new(h.m()),
        }
    }
}

impl PairFilter for DistinctEdges<'_> {
    fn push(&mut self, u: usize, v: usize) -> bool {
        let ids = self.shadow.covering(u, v).iter().map(|e| e.0).collect();
        self.matching.push(ids)
    }

    fn pop(&mut self) {
        self.matching.pop();
    }
}

fn require_three(h: &Hypergraph) -> Result<()> {
    if h.n() < 3 {
        return Err(Error::TooFewVertices(h.n()));
    }
    Ok(())
}

fn cyclic_pairs(order: &[usize]) -> Vec<(usize, usize)> {
    (0..order.len()).map(|i| (order[i], order[(i + 1) % order.len()])).collect()
}

fn weak_cycle(shadow: &ShadowGraph, order: Vec<usize>) -> BergeCertificate {
    let edges = cyclic_pairs(&order)
        .into_iter()
        .map(|(u, v)| shadow.covering(u, v)[0])
        .collect();
    BergeCertificate::cycle(order, edges, true)
}

pub(crate) fn merge(total: &mut Meter, part: &Meter) {
    total.nodes += part.nodes;
    total.rotations += part.rotations;
}

/// Hamiltonian cycle of the shadow graph, lifted to a weak Berge cycle
/// using the lowest covering edge of each pair.
pub fn find_weak_hamiltonian(h: &Hypergraph, budget: &SolveBudget) -> Result<SolveResult> {
    require_three(h)?;
    budget.validate()?;
    let shadow = h.shadow();
    let mut meter = Meter::new(budget);
    let Some(core) = reduce(&shadow) else {
        return Ok(meter.finish(SolveStatus::ProvedAbsent, None));
    };
    if budget.mode == SolveMode::HeuristicFirst {
        let mut rng = rng_from_seed(HEURISTIC_SEED);
        let mut part = Meter::new(&budget.heuristic_share());
        let found = posa_cycle(&core, &mut rng, &mut part, 50 * h.n() as u64);
        merge(&mut meter, &part);
        if let Some(order) = found {
            return Ok(meter.finish(SolveStatus::Found, Some(weak_cycle(&shadow, order))));
        }
    }
    Ok(match exact_cycle(&core, &mut AnyPair, &mut meter) {
        Outcome::Found(order) => meter.finish(SolveStatus::Found, Some(weak_cycle(&shadow, order))),
        Outcome::Absent => meter.finish(SolveStatus::ProvedAbsent, None),
        Outcome::Unknown => meter.finish(SolveStatus::Inconclusive, None),
    })
}

/// Propagates forced incidences of an ordinary Hamiltonian Berge cycle.
/// Every vertex is flanked by two distinct edges containing it, so a vertex
/// with two incident edges uses both; an edge flanks at most two vertices,
/// so once two vertices need it the others lose it. Returns the graph of
/// pairs still coverable by a usable edge, or `None` when some vertex is
/// left with fewer than two edges, an edge is needed three times, or the
/// forced incidences close a cycle through fewer than `n` vertices.
pub(crate) fn incidence_core(h: &Hypergraph) -> Option<ShadowGraph> {
    let n = h.n();
    let mut inc: Vec<Vec<EdgeId>> = (0..=n).map(|v| if v == 0 { Vec::new() } else { h.incident(v).to_vec() }).collect();
    let mut members: Vec<Vec<usize>> = h.edges().map(|(_, e)| e.to_vec()).collect();
    loop {
        if (1..=n).any(|v| inc[v].len() < 2) {
            return None;
        }
        let mut needed_by: Vec<Vec<usize>> = vec![Vec::new(); h.m()];
        for v in 1..=n {
            if inc[v].len() == 2 {
                for e in &inc[v] {
                    needed_by[e.0].push(v);
                }
            }
        }
        if needed_by.iter().any(|w| w.len() > 2) || forced_short_cycle(n, &needed_by) {
            return None;
        }
        let mut changed = false;
        for (e, want) in needed_by.iter().enumerate() {
            if want.len() == 2 && members[e].len() > 2 {
                for &x in &members[e] {
                    if !want.contains(&x) {
                        inc[x].retain(|f| f.0 != e);
                    }
                }
                members[e] = want.clone();
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    let pairs = members
        .iter()
        .flat_map(|m| m.iter().enumerate().flat_map(move |(i, &u)| m[i + 1..].iter().map(move |&v| (u, v))));
    Some(ShadowGraph::from_pairs(n, pairs))
}

/// Whether the forced vertex-edge incidences contain a cycle missing some
/// vertex. Nodes `1..=n` are vertices, `n + 1 + e` edges.
fn forced_short_cycle(n: usize, needed_by: &[Vec<usize>]) -> bool {
    let mut parent: Vec<usize> = (0..=n + needed_by.len()).collect();
    let mut vertices = vec![0usize; parent.len()];
    for v in 1..=n {
        vertices[v] = 1;
    }
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for (e, want) in needed_by.iter().enumerate() {
        for &v in want {
            let (a, b) = (find(&mut parent, v), find(&mut parent, n + 1 + e));
            if a == b {
                if vertices[a] < n {
                    return true;
                }
            } else {
                parent[a] = b;
                vertices[b] += vertices[a];
            }
        }
    }
    false
}

/// Hamiltonian Berge cycle with distinct edges.
pub fn find_hamiltonian_berge(h: &Hypergraph, budget: &SolveBudget) -> Result<SolveResult> {
    require_three(h)?;
    budget.validate()?;
    let mut meter = Meter::new(budget);
    if h.min_degree() < 2 || h.m() < h.n() {
        return Ok(meter.finish(SolveStatus::ProvedAbsent, None));
    }
    let shadow = h.shadow();
    let Some(core) = incidence_core(h).and_then(|g| reduce(&g)) else {
        return Ok(meter.finish(SolveStatus::ProvedAbsent, None));
    };
    if budget.mode == SolveMode::HeuristicFirst {
        let mut rng = rng_from_seed(HEURISTIC_SEED);
        let mut part = Meter::new(&budget.heuristic_share());
        let out = rotation_search(h, &mut rng, &mut part, 50 * h.n() as u64);
        merge(&mut meter, &part);
        if let Some(c) = out.cycle {
            return Ok(meter.finish(SolveStatus::Found, Some(c)));
        }
    }
    let mut filter = DistinctEdges::new(h, &shadow);
    Ok(match exact_cycle(&core, &mut filter, &mut meter) {
        Outcome::Found(order) => {
            let edges = assign_edges(h, &cyclic_pairs(&order)).expect("search kept a matching");
            meter.finish(SolveStatus::Found, Some(BergeCertificate::cycle(order, edges, false)))
        }
        Outcome::Absent => meter.finish(SolveStatus::ProvedAbsent, None),
        Outcome::Unknown => meter.finish(SolveStatus::Inconclusive, None),
    })
}

/// A longest (weak) Berge path. `Found` means the search finished and the
/// path is optimal; `Inconclusive` carries the best path seen so far.
pub fn longest_berge_path(h: &Hypergraph, budget: &SolveBudget, weak: bool) -> Result<SolveResult> {
    budget.validate()?;
    let shadow = h.shadow();
    let mut meter = Meter::new(budget);
    let (order, done) = if weak {
        longest_path(&shadow, &mut AnyPair, &mut meter)
    } else {
        let mut filter = DistinctEdges::new(h, &shadow);
        longest_path(&shadow, &mut filter, &mut meter)
    };
    let pairs: Vec<(usize, usize)> = order.windows(2).map(|w| (w[0], w[1])).collect();
    let edges: Vec<EdgeId> = if weak {
        pairs.iter().map(|&(u, v)| shadow.covering(u, v)[0]).collect()
    } else {
        assign_edges(h, &pairs).expect("search kept a matching")
    };
    let cert = BergeCertificate::path(order, edges, weak);
    let status = if done {
        SolveStatus::Found
    } else {
        SolveStatus::Inconclusive
    };
    Ok(meter.finish(status, Some(cert)))
}
