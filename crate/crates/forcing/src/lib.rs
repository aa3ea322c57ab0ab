//! Energy-forcing arguments over the column lifts `v(γ)` of a complete
//! system of mutually unbiased Hadamard matrices.
//!
//! For a set `Γ` of exponent vectors with all pairwise differences in the
//! vanishing set, the lifts are pairwise orthogonal and
//! `‖Σ_{γ∈Γ} v(γ)‖² = |Γ|·d²`. Knowing some columns of the system fixes part
//! of that energy; when the known part is everything, each remaining column
//! satisfies a polynomial identity.

pub mod energy;
pub mod lift;
pub mod noreal;
pub mod presets;
pub mod relations;
pub mod search;
pub mod set;

pub use energy::{
    forcing_conclusion, partial_energy, Conclusion, ForcedIdentity, ForcingCheck, Num,
};
pub use lift::{lift_coordinate, ColumnLift};
pub use noreal::{doubled_units, verify_theorem_noreal, NoRealReport};
pub use presets::{
    no_fourier6_preset, no_real_preset, run_pipeline, six_vector_alternative, six_vector_set,
    PipelineReport, DEFAULT_SHIFTS,
};
pub use relations::{
    derive_contradiction, difference_identities, ContradictionReport, MonomialRelation, Verdict,
};
pub use search::{search_forcing_sets, ForcingSearchReport, SearchOptions, Strategy};
pub use set::{check_forcing_set, differences, ForcingSet};
