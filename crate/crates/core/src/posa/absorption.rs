use serde::{Deserialize, Serialize};

use super::search::rotation_search;
use crate::error::{Error, Result};
use crate::hypergraph::{verify_certificate, BergeCertificate, Hypergraph, Verdict};
use crate::random::rng_from_seed;
use crate::solvers::budget::Meter;
use crate::solvers::{find_hamiltonian_berge, SolveBudget, SolveStats, SolveStatus};

const ABSORPTION_SEED: u64 = 0x00ab_504b;
/// Node cap for the rotation search run on each candidate.
const CANDIDATE_NODES: u64 = 20_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct AbsorptionResult {
    pub status: SolveStatus,
    /// Hamiltonian Berge cycle with edge ids of `supply`.
    pub certificate: Option<BergeCertificate>,
    /// Supply edges added, in order.
    pub absorbed: Vec<Vec<usize>>,
    /// Vertex count of the longest path known for the final graph.
    pub longest_path: usize,
    pub stats: SolveStats,
}

/// Grows `start` by supply edges that act as boosters until it becomes Berge
/// Hamiltonian. Path lengths come from the rotation search, so a candidate
/// counts as a booster when the graph with it has a path longer than any
/// found so far, or a Hamiltonian cycle. Each absorption lengthens the best
/// path, so there are fewer than `n` of them.
pub fn booster_absorption(start: &Hypergraph, supply: &Hypergraph, budget: &SolveBudget) -> Result<AbsorptionResult> {
    budget.validate()?;
    if start.n() != supply.n() || start.r() != supply.r() {
        return Err(Error::ParameterOutOfRange("start and supply differ in n or r".into()));
    }
    if let Some((_, e)) = start.edges().find(|(_, e)| supply.find_edge(e).is_none()) {
        return Err(Error::ParameterOutOfRange(format!("start edge {e:?} is not in the supply")));
    }
    let n = start.n();
    if n < 3 {
        return Err(Error::TooFewVertices(n));
    }
    let mut current = start.clone();
    let mut absorbed = Vec::new();
    let mut stats = SolveStats::default();
    let mut rng = rng_from_seed(ABSORPTION_SEED);

    let candidate_budget = SolveBudget {
        node_limit: CANDIDATE_NODES.min(budget.node_limit),
        ..*budget
    };
    let mut run = |g: &Hypergraph, stats: &mut SolveStats| {
        let mut meter = Meter::new(&candidate_budget);
        let out = rotation_search(g, &mut rng, &mut meter, 50 * n as u64);
        stats.nodes += meter.nodes;
        stats.rotations += meter.rotations;
        out
    };

    let mut best = run(&current, &mut stats).best_path.len();
    let done = |g: &Hypergraph, cert: BergeCertificate, absorbed: Vec<Vec<usize>>, stats: SolveStats| {
        let cert = relabel(g, supply, cert);
        debug_assert_eq!(verify_certificate(supply, &cert), Verdict::Valid { hamiltonian: true });
        AbsorptionResult {
            status: SolveStatus::Found,
            certificate: Some(cert),
            absorbed,
            longest_path: n,
            stats,
        }
    };

    for _ in 0..n {
        let ham = find_hamiltonian_berge(&current, budget)?;
        add(&mut stats, &ham.stats);
        if let Some(cert) = ham.certificate {
            return Ok(done(&current, cert, absorbed, stats));
        }
        let mut progress = None;
        for (_, e) in supply.edges() {
            if current.find_edge(e).is_some() {
                continue;
            }
            let g = current.with_edge(e)?;
            let out = run(&g, &mut stats);
            if let Some(cert) = out.cycle {
                absorbed.push(e.to_vec());
                return Ok(done(&g, cert, absorbed, stats));
            }
            if best == n {
                let ham = find_hamiltonian_berge(&g, &candidate_budget)?;
                add(&mut stats, &ham.stats);
                if let Some(cert) = ham.certificate {
                    absorbed.push(e.to_vec());
                    return Ok(done(&g, cert, absorbed, stats));
                }
            } else if out.best_path.len() > best {
                progress = Some((e.to_vec(), g, out.best_path.len()));
                break;
            }
        }
        match progress {
            Some((e, g, len)) => {
                absorbed.push(e);
                current = g;
                best = len;
            }
            None => break,
        }
    }
    Ok(AbsorptionResult {
        status: SolveStatus::Inconclusive,
        certificate: None,
        absorbed,
        longest_path: best,
        stats,
    })
}

fn add(total: &mut SolveStats, part: &SolveStats) {
    total.nodes += part.nodes;
    total.rotations += part.rotations;
    total.elapsed_ms += part.elapsed_ms;
}

/// Rewrites edge ids of `g` into ids of `supply`, which contains every edge
/// of `g`.
fn relabel(g: &Hypergraph, supply: &Hypergraph, cert: BergeCertificate) -> BergeCertificate {
    let edges = cert
        .edges
        .iter()
        .map(|&id| supply.find_edge(g.edge(id)).expect("edge of g lies in the supply"))
        .collect();
    BergeCertificate { edges, ..cert }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle5() -> Hypergraph {
        Hypergraph::new(5, 3, [[1, 2, 3], [2, 3, 4], [3, 4, 5], [1, 4, 5], [1, 2, 5]]).unwrap()
    }

    #[test]
    fn hamiltonian_start_needs_nothing() {
        let h = cycle5();
        let r = booster_absorption(&h, &h, &SolveBudget::default()).unwrap();
        assert_eq!(r.status, SolveStatus::Found);
        assert!(r.absorbed.is_empty());
        assert_eq!(verify_certificate(&h, r.certificate.as_ref().unwrap()), Verdict::Valid { hamiltonian: true });
    }

    #[test]
    fn no_spare_edges() {
        let h = Hypergraph::new(5, 3, [[1, 2, 3], [3, 4, 5]]).unwrap();
        let r = booster_absorption(&h, &h, &SolveBudget::default()).unwrap();
        assert_eq!(r.status, SolveStatus::Inconclusive);
        assert!(r.absorbed.is_empty());
    }

    #[test]
    fn absorbs_from_supply() {
        let supply = cycle5();
        let start = Hypergraph::new(5, 3, [[1, 2, 3], [3, 4, 5]]).unwrap();
        let r = booster_absorption(&start, &supply, &SolveBudget::default()).unwrap();
        assert_eq!(r.status, SolveStatus::Found);
        assert!(!r.absorbed.is_empty());
        assert_eq!(verify_certificate(&supply, r.certificate.as_ref().unwrap()), Verdict::Valid { hamiltonian: true });
    }

    #[test]
    fn rejects_start_outside_supply() {
        let start = Hypergraph::new(5, 3, [[1, 2, 4]]).unwrap();
        assert!(booster_absorption(&start, &cycle5(), &SolveBudget::default()).is_err());
    }
}
