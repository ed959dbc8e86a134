//! Numerical checks of the inequalities behind the constructions.

pub mod cube;
pub mod muting;
pub mod phase;

pub use cube::{
    additive_hextuple_value, additive_quadruple_value, cube_report, ContributionReport, CubeAnalyzer, InequalityCheck,
};
pub use muting::{check_muting_subconfig_bounds, MutingBoundReport, MutingCheck, MutingInequality};
pub use phase::{check_phase_bounds, PhaseBoundReport, PhaseRegime, RegimeSummary};
