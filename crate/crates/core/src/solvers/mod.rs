//! Exact and heuristic searches for (weak) Berge Hamiltonian cycles, longest
//! Berge paths, directed Hamiltonian cycles and the k-out constructions.

pub mod berge;
pub mod budget;
pub mod digraph_ham;
pub(crate) mod graph_ham;
pub mod matching;
pub mod pipelines;

pub use berge::{find_hamiltonian_berge, find_weak_hamiltonian, longest_berge_path};
pub use budget::{SolveBudget, SolveMode, SolveResult, SolveStats, SolveStatus};
pub use digraph_ham::{digraph_hamilton, DirectedResult};
pub use pipelines::{degree1_triple_obstruction, kout2_pipeline, one_out_weak_pipeline, TripleWitness};
