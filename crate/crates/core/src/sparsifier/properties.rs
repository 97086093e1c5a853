use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{small_set, small_threshold};
use crate::error::{Error, Result};
use crate::hypergraph::combin::{binomial, k_subsets, Combinations};
use crate::hypergraph::Hypergraph;
use crate::random::rng::{rng_from_seed, sample_indices, split_seed, uniform_below};

pub const DEFAULT_SAMPLE_TRIALS: u64 = 10_000;
/// Largest number of `U` (or `(U, W)`) choices enumerated in exact mode.
pub const EXACT_PAIR_LIMIT: u64 = 1_000_000;
/// Seed for the sampled fallback when exact mode is over the limit.
pub const FALLBACK_SEED: u64 = 0x005a_3b1e;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Property {
    P1,
    P2,
    P3,
    P4,
    P5,
    P6,
    P7,
}

impl Property {
    pub const ALL: [Property; 7] = [
        Property::P1,
        Property::P2,
        Property::P3,
        Property::P4,
        Property::P5,
        Property::P6,
        Property::P7,
    ];
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", tag = "kind")]
pub enum PropertyMode {
    /// Enumerate when the count of sets is at most [`EXACT_PAIR_LIMIT`],
    /// otherwise sample [`DEFAULT_SAMPLE_TRIALS`] draws.
    Exact,
    Sampled { trials: u64, seed: u64 },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", tag = "kind")]
pub enum Witness {
    /// P1: a vertex of degree above the bound.
    Vertex { vertex: usize, degree: usize },
    /// P2: `SMALL` is too large.
    SmallSet { size: usize },
    /// P3, first clause: an edge meeting `SMALL` twice or more.
    Edge { edge: Vec<usize> },
    /// P3, second clause: a vertex outside `SMALL` on two edges meeting
    /// `N \ {vertex}`.
    Spread { vertex: usize, edges: Vec<Vec<usize>> },
    /// P4 to P7: the sets and the count that breaks the bound (`w` empty for
    /// P4).
    Sets { u: Vec<usize>, w: Vec<usize>, count: usize },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", tag = "verdict")]
pub enum PropertyVerdict {
    Pass,
    Fail { witness: Witness },
    /// No violation among `trials` random draws; not a proof.
    SampledPass { trials: u64 },
}

impl PropertyVerdict {
    pub fn is_fail(&self) -> bool {
        matches!(self, PropertyVerdict::Fail { .. })
    }
}

/// The numeric bounds used, after rounding. With `L = ln n`:
/// `u_max = floor(n / sqrt L)` bounds `|U|` in P4 and P5, `|W| <= floor(|U| L^(1/4))`
/// in P5 (only the largest `W` is checked since the count grows with `W`),
/// and P6, P7 use `|U| = ceil(n / sqrt L)`, `|W| = ceil(n / 4)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Thresholds {
    pub log_n: f64,
    pub small_threshold: f64,
    pub max_degree_bound: f64,
    pub small_size_bound: f64,
    pub u_max: usize,
    /// P4 allows `|U| * p4_factor` edges meeting `U` twice.
    pub p4_factor: f64,
    /// P5 checks `|W| = floor(|U| * p5_w_factor)`.
    pub p5_w_factor: f64,
    /// P5 allows `|U| * p5_factor` edges.
    pub p5_factor: f64,
    pub u_exact: usize,
    pub w_exact: usize,
    /// P6 needs at least this many crossing edges.
    pub p6_bound: f64,
}

impl Thresholds {
    pub fn new(n: usize, epsilon: f64) -> Self {
        let l = (n as f64).ln();
        let nf = n as f64;
        Thresholds {
            log_n: l,
            small_threshold: small_threshold(n, epsilon),
            max_degree_bound: 10.0 * l,
            small_size_bound: nf.powf(0.9),
            u_max: ((nf / l.sqrt()).floor() as usize).min(n),
            p4_factor: l.powf(0.75),
            p5_w_factor: l.powf(0.25),
            p5_factor: epsilon * l / 2.0,
            u_exact: (nf / l.sqrt()).ceil() as usize,
            w_exact: (nf / 4.0).ceil() as usize,
            p6_bound: nf * l.powf(1.0 / 3.0),
        }
    }

    fn p5_w(&self, n: usize, u: usize) -> usize {
        ((u as f64 * self.p5_w_factor).floor() as usize).min(n - u)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct PropertyReport {
    pub epsilon: f64,
    pub mode: PropertyMode,
    pub thresholds: Thresholds,
    pub small_set: Vec<usize>,
    pub results: BTreeMap<Property, PropertyVerdict>,
}

/// Checks the requested properties of `h`; P7 looks at `gamma0`.
pub fn check_properties(
    h: &Hypergraph,
    gamma0: Option<&Hypergraph>,
    epsilon: f64,
    mode: PropertyMode,
    which: &[Property],
) -> Result<PropertyReport> {
    let small = small_set(h, epsilon)?;
    if which.contains(&Property::P7) && gamma0.is_none() {
        return Err(Error::MissingGamma0);
    }
    if let Some(g) = gamma0 {
        if g.n() != h.n() || g.r() != h.r() {
            return Err(Error::ParameterOutOfRange("gamma0 differs from H in n or r".into()));
        }
    }
    if let PropertyMode::Sampled { trials: 0, .. } = mode {
        return Err(Error::ParameterOutOfRange("sampled mode needs trials > 0".into()));
    }
    let t = Thresholds::new(h.n(), epsilon);
    let mut results = BTreeMap::new();
    for &p in which {
        let verdict = match p {
            Property::P1 => p1(h, &t),
            Property::P2 => p2(&small, &t),
            Property::P3 => p3(h, &small),
            Property::P4 => set_property(h, p, &t, mode),
            Property::P5 => set_property(h, p, &t, mode),
            Property::P6 => set_property(h, p, &t, mode),
            Property::P7 => set_property(gamma0.unwrap(), p, &t, mode),
        };
        results.insert(p, verdict);
    }
    Ok(PropertyReport {
        epsilon,
        mode,
        thresholds: t,
        small_set: small,
        results,
    })
}

fn p1(h: &Hypergraph, t: &Thresholds) -> PropertyVerdict {
    match h.vertices().find(|&v| h.incident(v).len() as f64 > t.max_degree_bound) {
        Some(v) => PropertyVerdict::Fail {
            witness: Witness::Vertex {
                vertex: v,
                degree: h.incident(v).len(),
            },
        },
        None => PropertyVerdict::Pass,
    }
}

fn p2(small: &[usize], t: &Thresholds) -> PropertyVerdict {
    if small.len() as f64 > t.small_size_bound {
        PropertyVerdict::Fail {
            witness: Witness::SmallSet { size: small.len() },
        }
    } else {
        PropertyVerdict::Pass
    }
}

fn p3(h: &Hypergraph, small: &[usize]) -> PropertyVerdict {
    let mut in_small = vec![false; h.n() + 1];
    for &v in small {
        in_small[v] = true;
    }
    if let Some((_, e)) = h.edges().find(|(_, e)| e.iter().filter(|&&v| in_small[v]).count() > 1) {
        return PropertyVerdict::Fail {
            witness: Witness::Edge { edge: e.to_vec() },
        };
    }
    let near = near_small(h, &in_small);
    for u in h.vertices().filter(|&u| !in_small[u]) {
        let edges: Vec<Vec<usize>> = h
            .incident(u)
            .iter()
            .map(|&id| h.edge(id))
            .filter(|e| e.iter().any(|&v| v != u && near[v]))
            .take(2)
            .map(<[usize]>::to_vec)
            .collect();
        if edges.len() == 2 {
            return PropertyVerdict::Fail {
                witness: Witness::Spread { vertex: u, edges },
            };
        }
    }
    PropertyVerdict::Pass
}

/// Membership in `N`: vertices on some edge that meets `SMALL`.
fn near_small(h: &Hypergraph, in_small: &[bool]) -> Vec<bool> {
    let mut near = vec![false; h.n() + 1];
    for (_, e) in h.edges() {
        if e.iter().any(|&v| in_small[v]) {
            for &v in e {
                near[v] = true;
            }
        }
    }
    near
}

/// Count for P4 to P7 given membership masks.
fn crossing(h: &Hypergraph, p: Property, in_u: &[bool], in_w: &[bool]) -> usize {
    h.edges()
        .filter(|(_, e)| {
            let a = e.iter().filter(|&&v| in_u[v]).count();
            match p {
                Property::P4 => a >= 2,
                Property::P5 => a == 1 && e.iter().any(|&v| in_w[v]),
                _ => a == 1 && e.iter().filter(|&&v| in_w[v]).count() == h.r() - 1,
            }
        })
        .count()
}

fn violates(p: Property, t: &Thresholds, u: usize, count: usize) -> bool {
    match p {
        Property::P4 => count as f64 > u as f64 * t.p4_factor,
        Property::P5 => count as f64 > u as f64 * t.p5_factor,
        Property::P6 => (count as f64) < t.p6_bound,
        _ => count == 0,
    }
}

/// `(|U|, |W|)` size pairs the property ranges over.
fn sizes(n: usize, p: Property, t: &Thresholds) -> Vec<(usize, usize)> {
    match p {
        Property::P4 => (1..=t.u_max).map(|u| (u, 0)).collect(),
        Property::P5 => (1..=t.u_max).map(|u| (u, t.p5_w(n, u))).collect(),
        _ if t.u_exact + t.w_exact <= n => vec![(t.u_exact, t.w_exact)],
        // no disjoint pair of the required sizes exists
        _ => Vec::new(),
    }
}

fn evaluate(h: &Hypergraph, p: Property, t: &Thresholds, u: &[usize], w: &[usize]) -> Option<Witness> {
    let mut in_u = vec![false; h.n() + 1];
    let mut in_w = vec![false; h.n() + 1];
    for &v in u {
        in_u[v] = true;
    }
    for &v in w {
        in_w[v] = true;
    }
    let count = crossing(h, p, &in_u, &in_w);
    violates(p, t, u.len(), count).then(|| Witness::Sets {
        u: u.to_vec(),
        w: w.to_vec(),
        count,
    })
}

fn set_property(h: &Hypergraph, p: Property, t: &Thresholds, mode: PropertyMode) -> PropertyVerdict {
    let n = h.n();
    let sizes = sizes(n, p, t);
    let (trials, seed) = match mode {
        PropertyMode::Sampled { trials, seed } => (trials, seed),
        PropertyMode::Exact => {
            let total = sizes.iter().fold(0u64, |acc, &(u, w)| {
                acc.saturating_add(binomial(n as u64, u as u64).saturating_mul(binomial((n - u) as u64, w as u64)))
            });
            if total <= EXACT_PAIR_LIMIT {
                return enumerate(h, p, t, &sizes);
            }
            (DEFAULT_SAMPLE_TRIALS, FALLBACK_SEED)
        }
    };
    if sizes.is_empty() {
        return PropertyVerdict::Pass;
    }
    let hit = (0..trials).into_par_iter().find_map_first(|i| {
        let mut rng = rng_from_seed(split_seed(seed, i));
        let (u_len, w_len) = sizes[uniform_below(&mut rng, sizes.len() as u64) as usize];
        let perm = sample_indices(&mut rng, n as u64, (u_len + w_len) as u64);
        // a uniform (u+w)-set split uniformly into U and W
        let pick = sample_indices(&mut rng, perm.len() as u64, u_len as u64);
        let mut u = Vec::with_capacity(u_len);
        let mut w = Vec::with_capacity(w_len);
        let mut next = pick.iter().peekable();
        for (j, &v) in perm.iter().enumerate() {
            if next.peek() == Some(&&(j as u64)) {
                next.next();
                u.push(v as usize + 1);
            } else {
                w.push(v as usize + 1);
            }
        }
        evaluate(h, p, t, &u, &w)
    });
    match hit {
        Some(witness) => PropertyVerdict::Fail { witness },
        None => PropertyVerdict::SampledPass { trials },
    }
}

fn enumerate(h: &Hypergraph, p: Property, t: &Thresholds, sizes: &[(usize, usize)]) -> PropertyVerdict {
    let n = h.n();
    for &(u_len, w_len) in sizes {
        for u in k_subsets(n, u_len) {
            let rest: Vec<usize> = h.vertices().filter(|v| u.binary_search(v).is_err()).collect();
            for w in Combinations::new(rest, w_len) {
                if let Some(witness) = evaluate(h, p, t, &u, &w) {
                    return PropertyVerdict::Fail { witness };
                }
            }
        }
    }
    PropertyVerdict::Pass
}

/// Re-checks a failure witness against the raw predicate, independently of
/// the search that produced it.
pub fn witness_holds(h: &Hypergraph, gamma0: Option<&Hypergraph>, epsilon: f64, p: Property, witness: &Witness) -> bool {
    let n = h.n();
    let l = (n as f64).ln();
    let small: Vec<usize> = h
        .vertices()
        .filter(|&v| (h.incident(v).len() as f64) <= epsilon * l)
        .collect();
    let meets = |e: &[usize], s: &[usize]| e.iter().filter(|v| s.contains(v)).count();
    match (p, witness) {
        (Property::P1, Witness::Vertex { vertex, degree }) => {
            h.incident(*vertex).len() == *degree && *degree as f64 > 10.0 * l
        }
        (Property::P2, Witness::SmallSet { size }) => small.len() == *size && *size as f64 > (n as f64).powf(0.9),
        (Property::P3, Witness::Edge { edge }) => h.find_edge(edge).is_some() && meets(edge, &small) >= 2,
        (Property::P3, Witness::Spread { vertex, edges }) => {
            let near: Vec<usize> = h
                .vertices()
                .filter(|&v| h.edges().any(|(_, e)| e.contains(&v) && meets(e, &small) > 0))
                .collect();
            !small.contains(vertex)
                && edges.len() == 2
                && edges[0] != edges[1]
                && edges.iter().all(|e| {
                    h.find_edge(e).is_some()
                        && e.contains(vertex)
                        && e.iter().any(|v| v != vertex && near.contains(v))
                })
        }
        (_, Witness::Sets { u, w, count }) => {
            let g = if p == Property::P7 {
                match gamma0 {
                    Some(g) => g,
                    None => return false,
                }
            } else {
                h
            };
            let disjoint = u.iter().all(|v| !w.contains(v));
            let lu = u.len() as f64;
            let sqrt_bound = n as f64 / l.sqrt();
            let real: usize = g
                .edges()
                .filter(|(_, e)| {
                    let a = meets(e, u);
                    let b = meets(e, w);
                    match p {
                        Property::P4 => a >= 2,
                        Property::P5 => a == 1 && b > 0,
                        _ => a == 1 && b == g.r() - 1,
                    }
                })
                .count();
            let sized = match p {
                Property::P4 => lu <= sqrt_bound,
                Property::P5 => lu <= sqrt_bound && w.len() as f64 <= lu * l.powf(0.25),
                _ => u.len() == sqrt_bound.ceil() as usize && w.len() == (n as f64 / 4.0).ceil() as usize,
            };
            let broken = match p {
                Property::P4 => real as f64 > lu * l.powf(0.75),
                Property::P5 => real as f64 > epsilon * l * lu / 2.0,
                Property::P6 => (real as f64) < n as f64 * l.powf(1.0 / 3.0),
                _ => real == 0,
            };
            !u.is_empty() && disjoint && sized && real == *count && broken
        }
        _ => false,
    }
}
