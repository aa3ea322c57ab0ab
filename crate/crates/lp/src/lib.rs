//! Exact linear programs over orbit variables of the Fourier-side functions.
//!
//! Programs are built over a cube window, solved with an exact simplex that
//! may be warm-started from a floating-point basis, and returned with a
//! certificate that [`verify_certificate`] rechecks from scratch.

pub mod certificate;
pub mod dixon;
pub mod error;
pub mod forcing;
pub mod modp;
pub mod orbit;
pub mod problem;
pub mod simplex;
mod solve;
mod warm;

pub use certificate::{is_valid, verify_certificate, CertStatus, LpCertificate, Violation};
pub use error::{LpError, Result};
pub use forcing::{certify_forcing, ForcingOptions, ForcingReport, RadiusAttempt};
pub use orbit::{canon, OrbitIndex};
pub use problem::{forcing_target, LpMode, LpProblem, Relation, Row, Sense, VarKind};
pub use simplex::WarmStart;
pub use solve::{solve, solve_with};
