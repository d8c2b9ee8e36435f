//! Exact-arithmetic toolkit for counting singular points of plane curves
//! with one place at infinity.
//!
//! Everything here is exact: rationals are arbitrary-precision fractions,
//! bound functions evaluate to quadratic surds `L + sqrt(S)` compared by
//! sign analysis rather than floating point, and every batch verification
//! (crossover thresholds, the finite Zaidenberg-Lin enumeration, proof-chain
//! replays, feasibility searches) reports exact witnesses.
//!
//! Module map:
//! - [`exact`]: rationals, surds, polynomial identity checking.
//! - [`bounds`]: the twelve singularity-count bound functions and their
//!   integer thresholds.
//! - [`local`]: single-point invariants (multiplicity, branches, delta,
//!   external codimension) and multi-branch composition.
//! - [`global`]: whole-curve profiles, the double-point budget, energy, and
//!   the constraint system tying them together.
//! - [`chains`]: exact replay of the four Delta proof chains and discrete
//!   verification of their monotonicity lemmas.
//! - [`verify`]: batch checks reproducing every computer-verified claim.
//! - [`par`]: sequential/parallel execution toggle shared by the scans.

pub mod bounds;
pub mod chains;
pub mod exact;
pub mod global;
pub mod local;
pub mod par;
pub mod verify;

pub use exact::{ExactError, Rat, Surd};
