//! Random hypergraph models and their deterministic companions.

pub mod digraph;
pub mod gnrp;
pub mod kout;
pub mod process;
pub mod rng;
pub mod threshold;

pub use digraph::{orient_two_out, ArcOrigin, Digraph, Orientation, Sign};
pub use gnrp::gnrp_sample;
pub use kout::{kout_sample, KOutSample, KOutSidecar, Replacement};
pub use process::{process_sample, stopping_time, ProcessTrace};
pub use rng::{rng_from_seed, split_seed, SeededRng};
pub use threshold::{coupon_cover_estimate, limit_probability, threshold_p};
