//! Pósa rotations on Berge paths, boosters, expansion checks and booster
//! absorption.

pub mod absorption;
pub mod boosters;
pub mod expander;
pub mod rotation;
pub(crate) mod search;

pub use rotation::{
    apply_rotation, replay, rotation_closure, rotation_closure_with_limit, Extension, Rotation, RotationCase,
    RotationState,
};
pub use absorption::{booster_absorption, AbsorptionResult};
pub use boosters::{boosters, boosters_with, non_edges, BoosterMode, BoosterReport};
pub use expander::{
    is_connected, is_expander, is_weak_expander, is_weak_expander_with, ExpanderMode, ExpanderReport,
    ExpanderVerdict, ExpanderWitness,
};
