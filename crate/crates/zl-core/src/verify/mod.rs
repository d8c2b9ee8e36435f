//! Batch verifications of the headline claims.
//!
//! Each submodule turns one claim into a finite exact computation and
//! returns a serializable report: where the linear family member takes over
//! its envelope ([`crossover`]), that the envelope's integer part respects
//! the singular-point cap with exactly two small exceptions ([`zl`]), where
//! the three experimental linear caps are valid ([`envelopes`]), that the
//! three-term exchange inequality is positive on ordered triples
//! ([`exchange`]), and that a brute-force scan over small curve profiles
//! finds no counterexample to the counting theorems ([`search`]).

pub mod crossover;
pub mod envelopes;
pub mod exchange;
pub mod search;
pub mod zl;

pub use crossover::{
    crossover_j_sweep, find_crossover_i, find_crossover_j, CrossoverIReport, CrossoverJReport,
    CrossoverJRow, FailurePoint, GapIdentity, RootBracket, TailCertificate,
};
pub use envelopes::{check_envelopes, EnvelopeLine, EnvelopeReport, ENVELOPE_SCAN_MAX};
pub use exchange::{check_exchange, exchange_term, ExchangeReport};
pub use search::{
    feasibility_search, FeasibilityReport, FeasibilityRow, SearchBox, SearchError, SearchOptions,
    Theorem,
};
pub use zl::{check_zl_finite, ZlException, ZlReport};
