use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hypergraph::{verify_certificate, BergeCertificate, CertificateKind, EdgeId, Hypergraph};

/// Default cap on distinct path states visited by [`rotation_closure`].
pub const DEFAULT_STATE_LIMIT: usize = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum RotationCase {
    /// An edge not on the path containing the right endpoint and `pivot`;
    /// it replaces the path edge that follows `pivot`.
    UnusedEdge,
    /// The path edge between `pivot` and its successor also contains the
    /// right endpoint and is moved to join `pivot` to it.
    PathEdge,
}

/// One rotation: with right endpoint `v_m` and `pivot = v_j`, the path
/// `v_1 .. v_j, v_{j+1} .. v_m` becomes `v_1 .. v_j, v_m, v_{m-1} .. v_{j+1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Rotation {
    pub case: RotationCase,
    pub pivot: usize,
    pub edge: EdgeId,
}

/// An edge from the right endpoint of a reachable path to a vertex outside
/// it, so the base path was not a longest path.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Extension {
    pub rotations: Vec<Rotation>,
    pub edge: EdgeId,
    pub vertex: usize,
    /// The rotated path followed by `edge` and `vertex`.
    pub path: BergeCertificate,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct RotationState {
    pub base_path: BergeCertificate,
    pub left_endpoint: usize,
    /// Right endpoints of all paths reachable from the base path.
    pub right_endpoints: BTreeSet<usize>,
    /// Vertices whose predecessor or successor on the base path lies in
    /// `right_endpoints`.
    pub neighbors_on_base: BTreeSet<usize>,
    /// A shortest rotation sequence reaching each right endpoint.
    pub derivations: BTreeMap<usize, Vec<Rotation>>,
    pub extension: Option<Extension>,
    pub states: usize,
    /// False when the state limit stopped the search early.
    pub complete: bool,
}

/// A path as parallel vertex and edge lists (`edges[i]` joins
/// `vertices[i]` and `vertices[i + 1]`).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub(crate) struct PathState {
    pub vertices: Vec<usize>,
    pub edges: Vec<EdgeId>,
}

impl PathState {
    pub fn end(&self) -> usize {
        *self.vertices.last().unwrap()
    }

    pub fn certificate(&self) -> BergeCertificate {
        BergeCertificate::path(self.vertices.clone(), self.edges.clone(), false)
    }

    /// The path after rotating at index `p` with edge `e` in position `p`.
    pub fn rotated(&self, p: usize, e: EdgeId) -> PathState {
        let mut vertices = self.vertices[..=p].to_vec();
        vertices.extend(self.vertices[p + 1..].iter().rev());
        let mut edges = self.edges[..p].to_vec();
        edges.push(e);
        edges.extend(self.edges[p + 1..].iter().rev());
        PathState { vertices, edges }
    }

    /// Rotations available at the right endpoint, in ascending edge order
    /// then ascending pivot position.
    pub fn moves(&self, h: &Hypergraph, position: &HashMap<usize, usize>) -> Vec<(Rotation, usize)> {
        let len = self.vertices.len();
        let end = self.end();
        let mut out = Vec::new();
        for &e in h.incident(end) {
            match self.edges.iter().position(|&f| f == e) {
                Some(i) => {
                    if i + 2 < len {
                        out.push((
                            Rotation {
                                case: RotationCase::PathEdge,
                                pivot: self.vertices[i],
                                edge: e,
                            },
                            i,
                        ));
                    }
                }
                None => {
                    let mut pivots: Vec<usize> = h
                        .edge(e)
                        .iter()
                        .filter(|&&x| x != end)
                        .filter_map(|x| position.get(x).copied())
                        .collect();
                    pivots.sort_unstable();
                    for j in pivots {
                        out.push((
                            Rotation {
                                case: RotationCase::UnusedEdge,
                                pivot: self.vertices[j],
                                edge: e,
                            },
                            j,
                        ));
                    }
                }
            }
        }
        out
    }

    /// First unused edge at the right endpoint reaching a vertex off the path.
    pub fn extension(&self, h: &Hypergraph, position: &HashMap<usize, usize>) -> Option<(EdgeId, usize)> {
        let end = self.end();
        h.incident(end)
            .iter()
            .filter(|e| !self.edges.contains(e))
            .find_map(|&e| h.edge(e).iter().find(|x| !position.contains_key(x)).map(|&x| (e, x)))
    }

    fn positions(&self) -> HashMap<usize, usize> {
        self.vertices.iter().enumerate().map(|(i, &v)| (v, i)).collect()
    }
}

fn checked_base(h: &Hypergraph, path: &BergeCertificate) -> Result<PathState> {
    if path.kind != CertificateKind::Path {
        return Err(Error::InvalidPath("expected a path certificate".into()));
    }
    if path.has_repeated_edge() {
        return Err(Error::InvalidPath("path repeats an edge".into()));
    }
    let mut plain = path.clone();
    plain.weak = false;
    if let crate::hypergraph::Verdict::Violation { step, reason } = verify_certificate(h, &plain) {
        return Err(Error::InvalidPath(match step {
            Some(s) => format!("step {s}: {reason}"),
            None => reason,
        }));
    }
    Ok(PathState {
        vertices: path.vertices.clone(),
        edges: path.edges.clone(),
    })
}

/// Breadth-first closure of the base path under rotations. Paths are
/// memoised on their full (vertex order, edge assignment) state.
pub fn rotation_closure(h: &Hypergraph, path: &BergeCertificate) -> Result<RotationState> {
    rotation_closure_with_limit(h, path, DEFAULT_STATE_LIMIT)
}

pub fn rotation_closure_with_limit(h: &Hypergraph, path: &BergeCertificate, max_states: usize) -> Result<RotationState> {
    let base = checked_base(h, path)?;
    let mut parent: Vec<Option<(usize, Rotation)>> = vec![None];
    let mut states = vec![base.clone()];
    let mut index: HashMap<PathState, usize> = HashMap::from([(base.clone(), 0)]);
    let mut queue = VecDeque::from([0usize]);
    let mut first_at: BTreeMap<usize, usize> = BTreeMap::new();
    let mut extension: Option<(usize, EdgeId, usize)> = None;
    let mut complete = true;

    while let Some(s) = queue.pop_front() {
        let state = states[s].clone();
        first_at.entry(state.end()).or_insert(s);
        let position = state.positions();
        if extension.is_none() {
            if let Some((e, x)) = state.extension(h, &position) {
                extension = Some((s, e, x));
            }
        }
        for (rot, p) in state.moves(h, &position) {
            let next = state.rotated(p, rot.edge);
            if index.contains_key(&next) {
                continue;
            }
            if states.len() >= max_states {
                complete = false;
                break;
            }
            index.insert(next.clone(), states.len());
            parent.push(Some((s, rot)));
            states.push(next);
            queue.push_back(states.len() - 1);
        }
        if !complete {
            break;
        }
    }

    let trail = |mut s: usize| {
        let mut moves = Vec::new();
        while let Some((p, rot)) = parent[s] {
            moves.push(rot);
            s = p;
        }
        moves.reverse();
        moves
    };
    let right_endpoints: BTreeSet<usize> = first_at.keys().copied().collect();
    let derivations = first_at.iter().map(|(&v, &s)| (v, trail(s))).collect();
    let b = &base.vertices;
    let neighbors_on_base = (0..b.len())
        .filter(|&i| {
            (i > 0 && right_endpoints.contains(&b[i - 1])) || (i + 1 < b.len() && right_endpoints.contains(&b[i + 1]))
        })
        .map(|i| b[i])
        .collect();
    let extension = extension.map(|(s, edge, vertex)| {
        let mut p = states[s].clone();
        p.vertices.push(vertex);
        p.edges.push(edge);
        Extension {
            rotations: trail(s),
            edge,
            vertex,
            path: p.certificate(),
        }
    });
    Ok(RotationState {
        base_path: base.certificate(),
        left_endpoint: base.vertices[0],
        right_endpoints,
        neighbors_on_base,
        derivations,
        extension,
        states: states.len(),
        complete,
    })
}

/// Applies one rotation, checking that it is legal for the current path.
pub fn apply_rotation(h: &Hypergraph, path: &BergeCertificate, rot: &Rotation) -> Result<BergeCertificate> {
    let state = checked_base(h, path)?;
    let position = state.positions();
    let (_, p) = state
        .moves(h, &position)
        .into_iter()
        .find(|(m, _)| m == rot)
        .ok_or_else(|| Error::InvalidPath(format!("rotation {rot:?} is not available")))?;
    Ok(state.rotated(p, rot.edge).certificate())
}

/// Replays a rotation sequence from `path`.
pub fn replay(h: &Hypergraph, path: &BergeCertificate, moves: &[Rotation]) -> Result<BergeCertificate> {
    moves.iter().try_fold(path.clone(), |p, rot| apply_rotation(h, &p, rot))
}
