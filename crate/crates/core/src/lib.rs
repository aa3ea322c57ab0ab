//! Unimodular matrices, mutually unbiased Hadamard systems and their
//! Fourier-side functions, in exact cyclotomic or high-precision arithmetic.

pub mod construct;
pub mod cyclotomic;
pub mod equivalence;
pub mod error;
pub mod families;
pub mod fourier;
pub mod interchange;
pub mod matrix;
pub mod numeric;
pub mod phase;
pub mod system;
pub mod value;
pub mod vanishing;

pub use construct::{fourier_matrix, is_prime, kronecker, prime_complete_system};
pub use cyclotomic::CyclotomicInteger;
pub use equivalence::{canonical_form, equivalent, CanonicalForm};
pub use error::{MuhError, Result};
pub use families::{family_d6, family_f6, family_f6_transposed, s6, FamilyId};
pub use fourier::{
    big_f_of, big_g_of, big_g_of_matrix, f_of, g_of, g_of_columns, ExponentVector, FourierProfile,
    ProfileSource,
};
pub use matrix::{is_hadamard, is_unbiased_pair, PhaseMatrix};
pub use numeric::{HpComplex, DEFAULT_PREC, DEFAULT_TOL};
pub use phase::{PhaseScalar, PhaseVector, Phases};
pub use system::MuhSystem;
pub use value::Value;
pub use vanishing::{enumerate_vanishing_set, in_vanishing_set, VanishingMode};
