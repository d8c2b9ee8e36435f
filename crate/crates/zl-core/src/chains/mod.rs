//! Exact replay of the four estimate chains and their monotonicity lemmas.
//!
//! A chain starts from the double-point budget of a degree pair, majorizes
//! the codimension energy step by step (each step justified by a discrete
//! monotonicity or concavity lemma), and ends in a closed-form gap whose
//! positivity bounds the number of singular points. The four chains split
//! by branch structure (unibranched `R = 0` vs. multibranched `R >= 1`) and
//! by which term dominates the energy (a singular point at finite distance
//! vs. the place at infinity).
//!
//! [`thm1_finite_chain`], [`thm1_infinity_chain`], [`thm2_finite_chain`]
//! and [`thm2_infinity_chain`] evaluate every intermediate display at the
//! given parameters and return a labeled [`ChainTrace`]. Steps that need a
//! parameter the caller left unset are skipped; the closed forms at the end
//! never are. [`check_chain_lemmas`] replays the discrete lemma claims on a
//! bounded grid, and [`check_endpoint_identities`] certifies that each
//! closed-form endpoint is a scaled completed square of the bound it
//! decides.

pub mod endpoints;
pub mod formulas;
pub mod lemmas;

pub use endpoints::{check_endpoint_identities, EndpointIdentity, EndpointReport};
pub use lemmas::{check_chain_lemmas, LemmaCheck, LemmaGrid, LemmaReport};

use crate::exact::Rat;
use num_integer::Integer;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Inputs for a chain replay. `g`, `big_r` and `n` are always required;
/// everything else is optional and gates which steps are emitted.
///
/// The tally fields `r` and `k2` are derived quantities (the point counts
/// must add up to `n` and the extra branches to `big_r`); passing them pins
/// the derivation and any mismatch is rejected, which makes a trace a
/// checkable record rather than a trust-me computation.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ChainParams {
    /// Genus of the curve.
    pub g: i64,
    /// Total branch excess R: the sum over singular points of
    /// (branch count - 1).
    pub big_r: i64,
    /// Number of singular points N.
    pub n: i64,
    /// Smaller degree of the pencil pair.
    pub p: Option<i64>,
    /// Larger degree of the pencil pair.
    pub q: Option<i64>,
    /// Branch multiplicity p' at the place at infinity.
    pub p_prime: Option<i64>,
    /// Count of triple-multiplicity unibranched points.
    pub s: Option<i64>,
    /// Count of double-multiplicity unibranched points; derived, checked.
    pub r: Option<i64>,
    /// Count of ordinary double points among the decorations; derived,
    /// checked.
    pub k2: Option<i64>,
    /// Branch count cap A over the ordinary multiple points.
    pub big_a: Option<i64>,
    /// Branch count B of the distinguished finite-distance point.
    pub big_b: Option<i64>,
    /// Multiplicity of the distinguished finite-distance point.
    pub m1: Option<i64>,
}

impl ChainParams {
    pub fn new(g: i64, big_r: i64, n: i64) -> Self {
        ChainParams {
            g,
            big_r,
            n,
            ..ChainParams::default()
        }
    }
}

/// One labeled value of a chain replay.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainStep {
    pub label: String,
    pub value: Rat,
}

/// The full replay: every emitted step in chain order plus the verdict,
/// the sharpest fully-determined gap and its sign.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainTrace {
    pub steps: Vec<ChainStep>,
    pub verdict_label: String,
    pub verdict_value: Rat,
    /// True when the verdict gap is strictly positive.
    pub verdict: bool,
}

impl ChainTrace {
    /// The value of the step with the given label, if it was emitted.
    pub fn get(&self, label: &str) -> Option<&Rat> {
        self.steps
            .iter()
            .find(|s| s.label == label)
            .map(|s| &s.value)
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ChainError {
    #[error("{chain}: precondition violated: {constraint}")]
    Precondition {
        chain: &'static str,
        constraint: String,
    },
}

fn fail(chain: &'static str, constraint: impl Into<String>) -> ChainError {
    ChainError::Precondition {
        chain,
        constraint: constraint.into(),
    }
}

/// Shared sanity checks, then the parameters as `Rat`s.
fn base_checks(chain: &'static str, params: &ChainParams) -> Result<(Rat, Rat, Rat), ChainError> {
    if params.g < 0 {
        return Err(fail(chain, format!("g >= 0 (got {})", params.g)));
    }
    if params.n < 1 {
        return Err(fail(chain, format!("N >= 1 (got {})", params.n)));
    }
    if params.big_r < 0 {
        return Err(fail(chain, format!("R >= 0 (got {})", params.big_r)));
    }
    if let (Some(p), Some(q)) = (params.p, params.q) {
        if q <= p {
            return Err(fail(chain, format!("q > p (got p = {p}, q = {q})")));
        }
    }
    if let Some(p) = params.p {
        if p < 1 {
            return Err(fail(chain, format!("p >= 1 (got {p})")));
        }
    }
    Ok((
        Rat::int(params.g),
        Rat::int(params.big_r),
        Rat::int(params.n),
    ))
}

fn check_unused(
    chain: &'static str,
    fields: &[(&str, Option<i64>)],
) -> Result<(), ChainError> {
    for (name, value) in fields {
        if value.is_some() {
            return Err(fail(chain, format!("{name} is not a parameter of this chain")));
        }
    }
    Ok(())
}

/// Resolves `s` and the forced tally `r = expected`, rejecting an explicit
/// `r` that contradicts it.
fn resolve_r(
    chain: &'static str,
    params: &ChainParams,
    expected: i64,
    relation: &str,
) -> Result<i64, ChainError> {
    if expected < 0 {
        return Err(fail(chain, format!("{relation} must be nonnegative (got {expected})")));
    }
    if let Some(r) = params.r {
        if r != expected {
            return Err(fail(
                chain,
                format!("{relation} forces r = {expected} (got {r})"),
            ));
        }
    }
    Ok(expected)
}

fn push(steps: &mut Vec<ChainStep>, label: &str, value: Rat) {
    steps.push(ChainStep {
        label: label.to_string(),
        value,
    });
}

/// Picks the verdict among candidate closing gaps: the first strictly
/// smallest value wins, so ties resolve to the earlier chain step.
fn close(steps: Vec<ChainStep>, candidates: &[&str]) -> ChainTrace {
    let mut best: Option<(String, Rat)> = None;
    for step in &steps {
        if candidates.contains(&step.label.as_str()) {
            match &best {
                Some((_, v)) if *v <= step.value => {}
                _ => best = Some((step.label.clone(), step.value.clone())),
            }
        }
    }
    let (verdict_label, verdict_value) =
        best.expect("every chain emits at least one closing gap");
    let verdict = verdict_value.is_positive();
    ChainTrace {
        steps,
        verdict_label,
        verdict_value,
        verdict,
    }
}

/// Replays the unibranched chain dominated by a finite-distance point:
/// E through E2 majorize the energy, Delta2 through Delta5 minorize the
/// gap down to the closed form in (g, N).
pub fn thm1_finite_chain(params: &ChainParams) -> Result<ChainTrace, ChainError> {
    const CHAIN: &str = "thm1-finite";
    let (g, _, n) = base_checks(CHAIN, params)?;
    if params.big_r != 0 {
        return Err(fail(CHAIN, format!("R = 0 (got {})", params.big_r)));
    }
    check_unused(
        CHAIN,
        &[
            ("p_prime", params.p_prime),
            ("big_a", params.big_a),
            ("big_b", params.big_b),
        ],
    )?;
    if params.k2.unwrap_or(0) != 0 {
        return Err(fail(CHAIN, "unibranched curves have no ordinary multiple points (k2 = 0)"));
    }
    let s = params.s.unwrap_or(0);
    if s < 0 {
        return Err(fail(CHAIN, format!("s >= 0 (got {s})")));
    }
    resolve_r(CHAIN, params, params.n - 1 - s, "r + s = N - 1")?;
    let sq = Rat::int(s);

    let mut steps = Vec::new();
    if let (Some(p), Some(q)) = (params.p, params.q) {
        let (pq, qq) = (Rat::int(p), Rat::int(q));
        if let Some(m1) = params.m1 {
            push(
                &mut steps,
                "E",
                formulas::fin1_energy(&g, &n, &pq, &qq, &Rat::int(m1), &sq),
            );
        }
        push(&mut steps, "E1", formulas::fin1_energy_m1cap(&g, &n, &pq, &qq, &sq));
        let e2 = formulas::fin1_energy_closed(&g, &n, &pq, &qq);
        push(&mut steps, "E2", e2.clone());
        push(
            &mut steps,
            "Delta2",
            formulas::double_point_count(p, q, params.g) - &e2,
        );
        push(&mut steps, "Delta3", formulas::fin1_gap(&g, &n, &pq, &qq));
    }
    if let Some(p) = params.p {
        push(&mut steps, "Delta4", formulas::fin1_gap_qmin(&g, &n, &Rat::int(p)));
    }
    push(&mut steps, "Delta5", formulas::fin1_gap_closed(&g, &n));

    let candidates: &[&str] = if params.p.is_some() {
        &["Delta4"]
    } else {
        &["Delta5"]
    };
    Ok(close(steps, candidates))
}

/// Replays the unibranched chain dominated by the place at infinity. The
/// gap forks at Delta7 into the two concavity endpoints pp = 3 and
/// pp = p/2; the verdict takes the smaller closing gap of the two branches.
pub fn thm1_infinity_chain(params: &ChainParams) -> Result<ChainTrace, ChainError> {
    const CHAIN: &str = "thm1-infinity";
    let (g, _, n) = base_checks(CHAIN, params)?;
    if params.big_r != 0 {
        return Err(fail(CHAIN, format!("R = 0 (got {})", params.big_r)));
    }
    check_unused(
        CHAIN,
        &[
            ("m1", params.m1),
            ("big_a", params.big_a),
            ("big_b", params.big_b),
        ],
    )?;
    if params.k2.unwrap_or(0) != 0 {
        return Err(fail(CHAIN, "unibranched curves have no ordinary multiple points (k2 = 0)"));
    }
    let s = params.s.unwrap_or(0);
    if s < 0 {
        return Err(fail(CHAIN, format!("s >= 0 (got {s})")));
    }
    resolve_r(CHAIN, params, params.n - s, "r + s = N")?;
    if let Some(p) = params.p {
        if p < 6 {
            return Err(fail(CHAIN, format!("p >= 6 (got {p})")));
        }
    }
    if let Some(pp) = params.p_prime {
        if pp < 3 {
            return Err(fail(CHAIN, format!("p' >= 3 (got {pp})")));
        }
    }
    let sq = Rat::int(s);

    let mut steps = Vec::new();
    if let (Some(p), Some(q), Some(pp)) = (params.p, params.q, params.p_prime) {
        let (pq, qq, ppq) = (Rat::int(p), Rat::int(q), Rat::int(pp));
        push(&mut steps, "E", formulas::inf1_energy(&g, &n, &pq, &qq, &ppq, &sq));
        push(&mut steps, "E6", formulas::inf1_energy_closed(&g, &n, &pq, &qq, &ppq));
        push(&mut steps, "Delta6", formulas::inf1_gap(&g, &n, &pq, &qq, &ppq));
    }
    if let (Some(p), Some(pp)) = (params.p, params.p_prime) {
        push(
            &mut steps,
            "Delta7",
            formulas::inf1_gap_qmin(&g, &n, &Rat::int(p), &Rat::int(pp)),
        );
    }
    if let Some(p) = params.p {
        let pq = Rat::int(p);
        push(&mut steps, "Delta7(3)", formulas::inf1_gap_qmin3(&g, &n, &pq));
    }
    push(&mut steps, "Delta8", formulas::inf1_gap_closed3(&g, &n));
    if let Some(p) = params.p {
        let pq = Rat::int(p);
        push(&mut steps, "Delta9", formulas::inf1_gap_half(&g, &n, &pq));
    }
    push(&mut steps, "Delta10", formulas::inf1_gap_closed_half(&g, &n));

    let candidates: &[&str] = if params.p.is_some() {
        &["Delta7(3)", "Delta9"]
    } else {
        &["Delta8", "Delta10"]
    };
    Ok(close(steps, candidates))
}

/// Replays the multibranched chain dominated by a finite-distance point.
/// Defaults realize the maximizing configuration: branch caps A = B = 2,
/// no triple points, k2 = R + 1 - B ordinary double points, and the forced
/// tally r = N - 1 - s - k2.
pub fn thm2_finite_chain(params: &ChainParams) -> Result<ChainTrace, ChainError> {
    const CHAIN: &str = "thm2-finite";
    let (g, rr, n) = base_checks(CHAIN, params)?;
    if params.big_r < 1 {
        return Err(fail(CHAIN, format!("R >= 1 (got {})", params.big_r)));
    }
    check_unused(CHAIN, &[("p_prime", params.p_prime), ("m1", params.m1)])?;
    let a = params.big_a.unwrap_or(2);
    if a < 2 {
        return Err(fail(CHAIN, format!("A >= 2 (got {a})")));
    }
    let b = params.big_b.unwrap_or(a);
    if b < 1 || b > a {
        return Err(fail(CHAIN, format!("1 <= B <= A (got B = {b}, A = {a})")));
    }
    let k2 = params.big_r + 1 - b;
    if k2 < 0 {
        return Err(fail(
            CHAIN,
            format!("k2 = R + 1 - B must be nonnegative (got {k2})"),
        ));
    }
    if let Some(given) = params.k2 {
        if given != k2 {
            return Err(fail(
                CHAIN,
                format!("double-point-only decorations force k2 = R + 1 - B = {k2} (got {given})"),
            ));
        }
    }
    let s = params.s.unwrap_or(0);
    if s < 0 {
        return Err(fail(CHAIN, format!("s >= 0 (got {s})")));
    }
    let r = resolve_r(CHAIN, params, params.n - 1 - s - k2, "r + s + k2 = N - 1")?;
    let t2mt1 = Rat::int(2 * k2);
    let (sq, aq, bq) = (Rat::int(s), Rat::int(a), Rat::int(b));
    let r1 = Rat::int(r + s);

    let mut steps = Vec::new();
    if let (Some(p), Some(q)) = (params.p, params.q) {
        let (pq, qq) = (Rat::int(p), Rat::int(q));
        push(
            &mut steps,
            "E",
            formulas::fin2_energy(&g, &n, &pq, &qq, &Rat::int(r), &sq, &bq, &t2mt1),
        );
        push(
            &mut steps,
            "E1",
            formulas::fin2_energy_s0(&g, &n, &pq, &qq, &r1, &aq, &t2mt1),
        );
        push(
            &mut steps,
            "E2",
            formulas::fin2_energy_ktab(&g, &rr, &n, &pq, &qq, &r1, &aq),
        );
        push(
            &mut steps,
            "E3",
            formulas::fin2_energy_rmin(&g, &rr, &n, &pq, &qq, &aq),
        );
        push(&mut steps, "E4", formulas::fin2_energy_closed(&g, &rr, &n, &pq, &qq));
        push(&mut steps, "Delta4", formulas::fin2_gap(&g, &rr, &n, &pq, &qq));
    }
    if let Some(p) = params.p {
        push(
            &mut steps,
            "Delta5",
            formulas::fin2_gap_qmin(&g, &rr, &n, &Rat::int(p)),
        );
    }
    push(&mut steps, "Delta6", formulas::fin2_gap_closed(&g, &rr, &n));

    let candidates: &[&str] = if params.p.is_some() {
        &["Delta5"]
    } else {
        &["Delta6"]
    };
    Ok(close(steps, candidates))
}

/// Replays the multibranched chain dominated by the place at infinity.
/// The tally constraints force k2 = R and r = N - R - s; E7 (which reads
/// the tallies directly) is emitted only under the default branch cap
/// A = 2, while E8 uses the exchange-eliminated form valid for any A.
pub fn thm2_infinity_chain(params: &ChainParams) -> Result<ChainTrace, ChainError> {
    const CHAIN: &str = "thm2-infinity";
    let (g, rr, n) = base_checks(CHAIN, params)?;
    if params.big_r < 1 {
        return Err(fail(CHAIN, format!("R >= 1 (got {})", params.big_r)));
    }
    check_unused(CHAIN, &[("m1", params.m1), ("big_b", params.big_b)])?;
    let a = params.big_a.unwrap_or(2);
    if a < 2 {
        return Err(fail(CHAIN, format!("A >= 2 (got {a})")));
    }
    if let Some(given) = params.k2 {
        if given != params.big_r {
            return Err(fail(
                CHAIN,
                format!(
                    "double-point-only decorations force k2 = R = {} (got {given})",
                    params.big_r
                ),
            ));
        }
    }
    if let Some(pp) = params.p_prime {
        if pp < 3 {
            return Err(fail(CHAIN, format!("p' >= 3 (got {pp})")));
        }
        if pp <= a {
            return Err(fail(CHAIN, format!("p' > A (got p' = {pp}, A = {a})")));
        }
    }
    let s = params.s.unwrap_or(0);
    if s < 0 {
        return Err(fail(CHAIN, format!("s >= 0 (got {s})")));
    }
    let r = resolve_r(CHAIN, params, params.n - params.big_r - s, "r + s + k2 = N")?;
    let r1 = Rat::int(r + s);
    let aq = Rat::int(a);

    let mut steps = Vec::new();
    if let (Some(p), Some(q), Some(pp)) = (params.p, params.q, params.p_prime) {
        let (pq, qq, ppq) = (Rat::int(p), Rat::int(q), Rat::int(pp));
        if a == 2 {
            push(
                &mut steps,
                "E7",
                formulas::inf2_energy(&g, &n, &pq, &qq, &ppq, &r1, &Rat::int(2 * params.big_r)),
            );
        }
        push(
            &mut steps,
            "E8",
            formulas::inf2_energy_acap(&g, &rr, &n, &pq, &qq, &ppq, &r1, &aq),
        );
        push(
            &mut steps,
            "E9",
            formulas::inf2_energy_closed(&g, &rr, &n, &pq, &qq, &ppq),
        );
        push(&mut steps, "Delta9", formulas::inf2_gap(&g, &rr, &n, &pq, &qq, &ppq));
    }
    if let (Some(p), Some(pp)) = (params.p, params.p_prime) {
        push(
            &mut steps,
            "Delta10",
            formulas::inf2_gap_qmin(&g, &rr, &n, &Rat::int(p), &Rat::int(pp)),
        );
    }
    if let Some(p) = params.p {
        let pq = Rat::int(p);
        push(&mut steps, "Delta10(3)", formulas::inf2_gap_qmin3(&g, &rr, &n, &pq));
    }
    push(&mut steps, "Delta11", formulas::inf2_gap_closed3(&g, &rr, &n));
    if let Some(p) = params.p {
        let pq = Rat::int(p);
        push(&mut steps, "Delta12", formulas::inf2_gap_half(&g, &rr, &n, &pq));
    }
    push(&mut steps, "Delta13", formulas::inf2_gap_closed_half(&g, &rr, &n));

    let candidates: &[&str] = if params.p.is_some() {
        &["Delta10(3)", "Delta12"]
    } else {
        &["Delta11", "Delta13"]
    };
    Ok(close(steps, candidates))
}

/// Delta2 differs from Delta3 by exactly (q - p) - gcd(p, q); exposed for
/// tests and the search verifier.
pub fn budget_gcd_slack(p: i64, q: i64) -> i64 {
    (q - p) - p.gcd(&q)
}
