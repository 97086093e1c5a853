//! Hamiltonian Berge cycles in random r-uniform hypergraphs.
//!
//! The crate is organised as:
//!
//! - [`hypergraph`]: the r-graph type, shadow graph, Berge certificates and
//!   the text fixture format.
//! - [`random`]: seeded samplers for `G(n, r, p)`, the random edge process
//!   with its minimum-degree stopping times, the k-out model and its
//!   orientation into a digraph, plus threshold formulas.
//! - [`solvers`]: exact and heuristic searches for (weak) Berge Hamiltonian
//!   cycles and longest Berge paths, directed Hamiltonicity and the k-out
//!   pipelines.
//! - [`posa`]: rotation closure, boosters, expander checks and booster
//!   absorption.
//! - [`sparsifier`]: `SMALL(G)`, the sparsified sub-hypergraph and the
//!   property checkers used to certify expansion.
//! - [`experiment`]: the Monte Carlo harness behind the `bergelab` CLI.
//!
//! Vertices are labelled `1..=n` everywhere. All randomness flows from an
//! explicit `u64` seed through [`random::rng_from_seed`].

pub mod error;
pub mod experiment;
pub mod hypergraph;
pub mod posa;
pub mod random;
pub mod solvers;
pub mod sparsifier;

use serde::{Deserialize, Serialize};

pub use error::{Error, Result};
pub use hypergraph::{
    verify_certificate, BergeCertificate, CertificateKind, EdgeId, Hypergraph, ShadowGraph,
    Verdict,
};

/// Which Berge notion a query refers to: distinct edges (`Ordinary`) or
/// edges that may repeat (`Weak`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    Weak,
    Ordinary,
}

impl Variant {
    pub fn is_weak(self) -> bool {
        self == Variant::Weak
    }
}
