use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::berge::{merge, HEURISTIC_SEED};
use super::budget::{Meter, SolveBudget, SolveMode, SolveResult, SolveStatus};
use super::digraph_ham::digraph_hamilton;
use super::graph_ham::{exact_cycle, posa_cycle, reduce, AnyPair, Outcome};
use super::matching::perfect_matching;
use crate::error::{Error, Result};
use crate::hypergraph::{verify_certificate, BergeCertificate, EdgeId, Hypergraph, ShadowGraph};
use crate::posa::search::assign_edges;
use crate::random::{orient_two_out, rng_from_seed, KOutSample};

/// 2-out construction: orient the sample, find a directed Hamiltonian
/// cycle, and lift each arc to the edge that produced it.
///
/// Arcs are lifted to their first recorded origin. If two arcs land on the
/// same edge, every origin of every arc is offered to a bipartite
/// matching, and failing that every edge of the sample covering the pair.
/// The directed search failing or refuting never refutes the hypergraph, so
/// both give `Inconclusive`.
pub fn kout2_pipeline(sample: &KOutSample, budget: &SolveBudget, seed: u64) -> Result<SolveResult> {
    if sample.k != 2 {
        return Err(Error::WrongK {
            expected: 2,
            found: sample.k,
        });
    }
    if sample.r < 3 {
        return Err(Error::WrongR {
            requirement: "r >= 3",
            found: sample.r,
        });
    }
    if sample.n < 3 {
        return Err(Error::TooFewVertices(sample.n));
    }
    let h = sample.hypergraph();
    let orientation = orient_two_out(sample, seed)?;
    let d = &orientation.digraph;
    let directed = digraph_hamilton(d, budget)?;
    let mut meter = Meter::new(budget);
    meter.nodes = directed.stats.nodes;
    meter.rotations = directed.stats.rotations;
    let Some(order) = directed.order else {
        return Ok(meter.finish(SolveStatus::Inconclusive, None));
    };
    let n = order.len();
    let arcs: Vec<(usize, usize)> = (0..n).map(|i| (order[i], order[(i + 1) % n])).collect();

    let primary: Vec<EdgeId> = arcs.iter().map(|&(u, v)| d.provenance(u, v)[0].edge).collect();
    let mut sorted = primary.clone();
    sorted.sort_unstable();
    sorted.dedup();
    let edges = if sorted.len() == n {
        Some(primary)
    } else {
        let adj: Vec<Vec<usize>> = arcs
            .iter()
            .map(|&(u, v)| {
                let mut ids: Vec<usize> = d.provenance(u, v).iter().map(|o| o.edge.0).collect();
                ids.sort_unstable();
                ids.dedup();
                ids
            })
            .collect();
        perfect_matching(&adj, h.m())
            .map(|m| m.into_iter().map(EdgeId).collect())
            .or_else(|| assign_edges(h, &arcs))
    };
    let Some(edges) = edges else {
        return Ok(meter.finish(SolveStatus::Inconclusive, None));
    };
    let cert = BergeCertificate::cycle(order, edges, false);
    if !verify_certificate(h, &cert).is_hamiltonian() {
        debug_assert!(false, "lifted certificate failed verification");
        return Ok(meter.finish(SolveStatus::Inconclusive, None));
    }
    Ok(meter.finish(SolveStatus::Found, Some(cert)))
}

/// 1-out construction for `r >= 4`: the graph with `x ~ y` for
/// `y in S_x` is an (r-1)-out graph; a Hamiltonian cycle there lifts to a
/// weak Berge cycle through the edges `S_x`.
pub fn one_out_weak_pipeline(sample: &KOutSample, budget: &SolveBudget) -> Result<SolveResult> {
    if sample.k != 1 {
        return Err(Error::WrongK {
            expected: 1,
            found: sample.k,
        });
    }
    if sample.r < 4 {
        return Err(Error::WrongR {
            requirement: "r >= 4",
            found: sample.r,
        });
    }
    budget.validate()?;
    let h = sample.hypergraph();
    let n = sample.n;
    let mut source: BTreeMap<(usize, usize), EdgeId> = BTreeMap::new();
    for x in 1..=n {
        let s = sample.choices(x)[0];
        for &y in h.edge(s) {
            if y != x {
                source.entry((x.min(y), x.max(y))).or_insert(s);
            }
        }
    }
    let g = ShadowGraph::from_pairs(n, source.keys().copied());
    let mut meter = Meter::new(budget);
    let Some(g) = reduce(&g) else {
        return Ok(meter.finish(SolveStatus::Inconclusive, None));
    };
    let mut order = None;
    if budget.mode == SolveMode::HeuristicFirst {
        let mut rng = rng_from_seed(HEURISTIC_SEED);
        let mut part = Meter::new(&budget.heuristic_share());
        order = posa_cycle(&g, &mut rng, &mut part, 50 * n as u64);
        merge(&mut meter, &part);
    }
    if order.is_none() {
        if let Outcome::Found(o) = exact_cycle(&g, &mut AnyPair, &mut meter) {
            order = Some(o);
        }
    }
    let Some(order) = order else {
        return Ok(meter.finish(SolveStatus::Inconclusive, None));
    };
    let edges = (0..n)
        .map(|i| {
            let (u, v) = (order[i], order[(i + 1) % n]);
            source[&(u.min(v), u.max(v))]
        })
        .collect();
    let cert = BergeCertificate::cycle(order, edges, true);
    if !verify_certificate(h, &cert).is_hamiltonian() {
        debug_assert!(false, "lifted certificate failed verification");
        return Ok(meter.finish(SolveStatus::Inconclusive, None));
    }
    Ok(meter.finish(SolveStatus::Found, Some(cert)))
}

/// Three degree-1 vertices whose edges share a fourth vertex `x`, which
/// would need three neighbours on any weak Hamiltonian cycle.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TripleWitness {
    pub leaves: [usize; 3],
    pub hub: usize,
}

pub fn degree1_triple_obstruction(h: &Hypergraph) -> Result<Option<TripleWitness>> {
    if h.r() != 3 {
        return Err(Error::WrongR {
            requirement: "r = 3",
            found: h.r(),
        });
    }
    let mut leaves_at: Vec<Vec<usize>> = vec![Vec::new(); h.n() + 1];
    for v in h.vertices() {
        if let [e] = h.incident(v) {
            for &x in h.edge(*e) {
                if x != v {
                    leaves_at[x].push(v);
                }
            }
        }
    }
    Ok(leaves_at.iter().enumerate().find_map(|(x, leaves)| {
        (leaves.len() >= 3).then(|| TripleWitness {
            leaves: [leaves[0], leaves[1], leaves[2]],
            hub: x,
        })
    }))
}
