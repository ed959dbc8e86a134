//! Explicit functions with `t(f) + t(1 - f) < 2^{1-d}`.

pub mod directional;
pub mod muting;
pub mod proportional;
pub mod rounding;
pub mod tuner;

pub use directional::{directional_function, DirectionalSpec};
pub use muting::{assemble, muting_atoms, muting_recipe};
pub use proportional::{proportional_counterexample, ProportionalConstruction, ProportionalKind};
pub use rounding::{round_to_set, RoundedSet};
pub use tuner::{tune_parameters, Route, SweepRow, TuneGrid, TuneOutcome};
