//! Berge path / cycle witnesses and their verification.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use super::{EdgeId, Hypergraph};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CertificateKind {
    Cycle,
    Path,
}

/// A vertex sequence plus the edge used at each step.
///
/// For a cycle, `edges[i]` joins `vertices[i]` and `vertices[(i + 1) % l]`;
/// for a path there are `l - 1` edges. With `weak` set, the same edge may be
/// used at several steps.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BergeCertificate {
    pub kind: CertificateKind,
    pub weak: bool,
    pub vertices: Vec<usize>,
    pub edges: Vec<EdgeId>,
}

impl BergeCertificate {
    pub fn cycle(vertices: Vec<usize>, edges: Vec<EdgeId>, weak: bool) -> Self {
        BergeCertificate {
            kind: CertificateKind::Cycle,
            weak,
            vertices,
            edges,
        }
    }

    pub fn path(vertices: Vec<usize>, edges: Vec<EdgeId>, weak: bool) -> Self {
        BergeCertificate {
            kind: CertificateKind::Path,
            weak,
            vertices,
            edges,
        }
    }

    /// Number of vertices.
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn is_cycle(&self) -> bool {
        self.kind == CertificateKind::Cycle
    }

    /// Endpoints of step `i`.
    pub fn step(&self, i: usize) -> (usize, usize) {
        let l = self.vertices.len();
        (self.vertices[i], self.vertices[(i + 1) % l])
    }

    /// Whether any edge is used at more than one step.
    pub fn has_repeated_edge(&self) -> bool {
        let mut seen = HashSet::new();
        self.edges.iter().any(|e| !seen.insert(*e))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "lowercase")]
pub enum Verdict {
    /// All invariants hold; `hamiltonian` when every vertex of the graph
    /// appears.
    Valid { hamiltonian: bool },
    /// The first failing step (or vertex position) and what went wrong.
    Violation { step: Option<usize>, reason: String },
}

impl Verdict {
    pub fn is_valid(&self) -> bool {
        matches!(self, Verdict::Valid { .. })
    }

    pub fn is_hamiltonian(&self) -> bool {
        matches!(self, Verdict::Valid { hamiltonian: true })
    }

    fn at(step: usize, reason: String) -> Self {
        Verdict::Violation {
            step: Some(step),
            reason,
        }
    }
}

/// Checks a certificate against `h`. Steps are numbered from 0.
pub fn verify_certificate(h: &Hypergraph, cert: &BergeCertificate) -> Verdict {
    let l = cert.vertices.len();
    let expected_edges = match cert.kind {
        CertificateKind::Cycle => {
            if l < 2 {
                return Verdict::Violation {
                    step: None,
                    reason: format!("a cycle needs at least 2 vertices, got {l}"),
                };
            }
            l
        }
        CertificateKind::Path => {
            if l == 0 {
                return Verdict::Violation {
                    step: None,
                    reason: "a path needs at least 1 vertex".into(),
                };
            }
            l - 1
        }
    };
    if cert.edges.len() != expected_edges {
        return Verdict::Violation {
            step: None,
            reason: format!(
                "expected {expected_edges} edges for {l} vertices, got {}",
                cert.edges.len()
            ),
        };
    }
    let mut seen_vertices = HashSet::with_capacity(l);
    for (i, &v) in cert.vertices.iter().enumerate() {
        if v == 0 || v > h.n() {
            return Verdict::at(i, format!("vertex {v} out of range at position {i}"));
        }
        if !seen_vertices.insert(v) {
            return Verdict::at(i, format!("repeated vertex {v} at position {i}"));
        }
    }
    let mut seen_edges = HashSet::with_capacity(expected_edges);
    for (i, &e) in cert.edges.iter().enumerate() {
        if e.0 >= h.m() {
            return Verdict::at(i, format!("unknown edge {e} at step {i}"));
        }
        let (a, b) = cert.step(i);
        if !h.edge_contains(e, a) || !h.edge_contains(e, b) {
            return Verdict::at(i, format!("edge {e} does not contain {a} and {b} at step {i}"));
        }
        let fresh = seen_edges.insert(e);
        if !fresh && (!cert.weak || (cert.is_cycle() && l == 2)) {
            return Verdict::at(i, format!("repeated edge at step {i}"));
        }
    }
    Verdict::Valid {
        hamiltonian: l == h.n(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f1() -> Hypergraph {
        Hypergraph::new(4, 3, [[1, 2, 3], [1, 2, 4], [1, 3, 4], [2, 3, 4]]).unwrap()
    }

    fn f2() -> Hypergraph {
        Hypergraph::new(4, 3, [[1, 2, 3], [1, 2, 4]]).unwrap()
    }

    fn ids(xs: &[usize]) -> Vec<EdgeId> {
        xs.iter().map(|&i| EdgeId(i)).collect()
    }

    #[test]
    fn complete_graph_cycle_is_hamiltonian() {
        let h = f1();
        // {1,2,3},{2,3,4},{1,3,4},{1,2,4}
        let c = BergeCertificate::cycle(vec![1, 2, 3, 4], ids(&[0, 3, 2, 1]), false);
        assert_eq!(verify_certificate(&h, &c), Verdict::Valid { hamiltonian: true });
    }

    #[test]
    fn weak_cycle_separates_from_ordinary() {
        let h = f2();
        let weak = BergeCertificate::cycle(vec![3, 1, 4, 2], ids(&[0, 1, 1, 0]), true);
        assert_eq!(verify_certificate(&h, &weak), Verdict::Valid { hamiltonian: true });
        let ordinary = BergeCertificate { weak: false, ..weak };
        assert_eq!(
            verify_certificate(&h, &ordinary),
            Verdict::Violation {
                step: Some(2),
                reason: "repeated edge at step 2".into()
            }
        );
    }

    #[test]
    fn single_edge_weak_triangle() {
        let h = Hypergraph::new(3, 3, [[1, 2, 3]]).unwrap();
        let c = BergeCertificate::cycle(vec![1, 2, 3], ids(&[0, 0, 0]), true);
        assert!(verify_certificate(&h, &c).is_hamiltonian());
    }

    #[test]
    fn two_vertex_cycle_needs_two_edges() {
        let h = Hypergraph::with_duplicates(3, 3, [[1, 2, 3], [1, 2, 3]]).unwrap();
        let ok = BergeCertificate::cycle(vec![1, 2], ids(&[0, 1]), false);
        assert_eq!(verify_certificate(&h, &ok), Verdict::Valid { hamiltonian: false });
        let bad = BergeCertificate::cycle(vec![1, 2], ids(&[0, 0]), true);
        assert!(!verify_certificate(&h, &bad).is_valid());
    }

    #[test]
    fn reports_first_failing_step() {
        let h = f2();
        let c = BergeCertificate::path(vec![3, 4, 1], ids(&[0, 1]), false);
        match verify_certificate(&h, &c) {
            Verdict::Violation { step, .. } => assert_eq!(step, Some(0)),
            v => panic!("{v:?}"),
        }
        let c = BergeCertificate::path(vec![1, 2, 1], ids(&[0, 1]), false);
        assert!(matches!(
            verify_certificate(&h, &c),
            Verdict::Violation { step: Some(2), .. }
        ));
        let c = BergeCertificate::path(vec![1, 2], ids(&[]), false);
        assert!(matches!(
            verify_certificate(&h, &c),
            Verdict::Violation { step: None, .. }
        ));
        let c = BergeCertificate::path(vec![1, 2], ids(&[7]), false);
        assert!(!verify_certificate(&h, &c).is_valid());
    }

    #[test]
    fn single_vertex_path() {
        let h = Hypergraph::empty(4, 3).unwrap();
        let c = BergeCertificate::path(vec![2], vec![], false);
        assert_eq!(verify_certificate(&h, &c), Verdict::Valid { hamiltonian: false });
    }

    #[test]
    fn json_shape() {
        let c = BergeCertificate::cycle(vec![1, 2, 3], ids(&[0, 0, 0]), true);
        let s = serde_json::to_string(&c).unwrap();
        assert_eq!(
            s,
            r#"{"kind":"cycle","weak":true,"vertices":[1,2,3],"edges":[0,0,0]}"#
        );
        let back: BergeCertificate = serde_json::from_str(&s).unwrap();
        assert_eq!(back, c);
    }
}
