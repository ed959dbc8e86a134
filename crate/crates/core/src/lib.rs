//! Arithmetic multiplicities of linear configurations in finite abelian groups.
//!
//! The crate evaluates `t_Φ(f) = E_{w ∈ G^r} ∏_i f(φ_i(w))` for systems of
//! linear forms, builds explicit functions `f = 1/2 + α·f₁·f₂` that push
//! `t(f) + t(1 - f)` below the random-coloring value `2^{1-d}` for systems
//! containing a 4-term arithmetic progression, and checks the inequalities
//! those constructions depend on.

pub mod arith;
pub mod bounds;
pub mod counterexamples;
pub mod error;
pub mod forms;
pub mod fraction;
pub mod group;
pub mod multiplicity;
pub mod numeric;
pub mod progression;
pub mod structured;

pub use error::{Error, Result};
pub use forms::{induce_system, reparametrize, FormSystem, ProportionalPair, Reparametrization};
pub use fraction::{c_fraction_bound, fraction_census, FractionWitness};
pub use group::{
    character_value, fourier_transform, phase_average, DensityTable, GroupElement, GroupSpec,
};
pub use progression::{split_ap, APDescriptor};
pub use multiplicity::{
    commonness_threshold, degenerate_count, min_coloring, monochromatic_pair, multiplicity_direct, MinColoring,
    PairValue,
};
pub use structured::{
    multiplicity_structured, CounterexampleRecipe, Expansion, ExpansionTerm, Mode, PhaseAtom, StructuredValue,
};
