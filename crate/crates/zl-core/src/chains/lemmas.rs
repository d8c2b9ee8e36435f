//! Discrete replay of the monotonicity and concavity lemmas that justify
//! each chain step.
//!
//! Every chain substitution leans on a sign claim: an energy form decreases
//! in `s`, a gap grows in `q`, a gap is concave in `pp`. The checks here
//! replay those claims as discrete differences on a bounded integer grid,
//! gated by each lemma's validity hypotheses, and report counterexamples
//! instead of failing. The evaluators in [`scaled`] are fixed-denominator
//! integer twins of the `formulas` module so the grid walk stays in `i128`;
//! property tests cross-validate them against the exact rationals.

use crate::par::{self, ExecMode};
use serde::Serialize;

/// Bounds for the lemma grid. Every check walks the sub-box of these ranges
/// its hypotheses admit.
#[derive(Debug, Clone)]
pub struct LemmaGrid {
    /// Genus range `0..=g_max`.
    pub g_max: i64,
    /// Singular-point count range `1..=n_max`.
    pub n_max: i64,
    /// Degree range `1..=p_max`; `q` ranges over `p+1..=p+q_slack`.
    pub p_max: i64,
    pub q_slack: i64,
    /// Branch excess range `1..=r_excess_max` for the multibranched lemmas.
    pub r_excess_max: i64,
    /// Branch count cap range `2..=a_max`.
    pub a_max: i64,
    /// Ordinary-point tally range `0..=t0_max` for the s-shift lemma.
    pub t0_max: i64,
    /// Triple-point count range `0..=s_max`.
    pub s_max: i64,
    pub mode: ExecMode,
}

impl Default for LemmaGrid {
    fn default() -> Self {
        LemmaGrid {
            g_max: 10,
            n_max: 60,
            p_max: 80,
            q_slack: 3,
            r_excess_max: 8,
            a_max: 5,
            t0_max: 3,
            s_max: 4,
            mode: ExecMode::Parallel,
        }
    }
}

/// Outcome of one lemma replay.
#[derive(Debug, Clone, Serialize)]
pub struct LemmaCheck {
    pub name: String,
    /// Grid points that satisfied the hypotheses and were tested.
    pub points: u64,
    /// Points where the claimed sign failed.
    pub failures: u64,
    /// Up to eight failing points, in deterministic grid order.
    pub counterexamples: Vec<String>,
    /// Extra findings that are not failures (e.g. which inequality
    /// direction the grid supports where the source is ambiguous).
    pub note: Option<String>,
}

impl LemmaCheck {
    pub fn ok(&self) -> bool {
        self.failures == 0
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct LemmaReport {
    pub checks: Vec<LemmaCheck>,
}

impl LemmaReport {
    pub fn ok(&self) -> bool {
        self.checks.iter().all(LemmaCheck::ok)
    }

    pub fn total_points(&self) -> u64 {
        self.checks.iter().map(|c| c.points).sum()
    }
}

/// Fixed-denominator integer twins of the chain formulas. The suffix names
/// the scale: `_x6` returns 6 times the rational value, and so on. All
/// inputs are small enough on the default grid that `i128` never overflows.
pub mod scaled {
    /// 6 x the unibranched finite energy with `m1` at its cap.
    pub fn fin1_energy_m1cap_x6(g: i128, n: i128, p: i128, q: i128, s: i128) -> i128 {
        let r = n - 1 - s;
        let m1 = p + 2 * g - r - 2 * s;
        12 * r + 36 * s + m1 * (6 * q + 12 * g - 5 * r - 9 * s - 3)
    }

    /// 6 x the unibranched gap against the floored budget.
    pub fn fin1_gap_x6(g: i128, n: i128, p: i128, q: i128) -> i128 {
        let energy = 12 * n - 12 + (p + 2 * g - n + 1) * (6 * q + 12 * g - 5 * n + 2);
        6 * ((p - 1) * (q - 1) - (q - p) + 1 - 2 * g) - energy
    }

    pub fn fin1_gap_qmin_x6(g: i128, n: i128, p: i128) -> i128 {
        fin1_gap_x6(g, n, p, p + 1)
    }

    /// 6 x the multibranched finite energy, tally term omitted (it is
    /// constant under the s-shift this evaluator exists for).
    pub fn fin2_energy_x6(g: i128, n: i128, p: i128, q: i128, r: i128, s: i128, b: i128) -> i128 {
        let m1 = p + 2 * g - 1 + b - r - 2 * s;
        m1 * (6 * q + 12 * g + 6 * b - 11 * r - 15 * s + 6 * n - 12) + 12 * r + 36 * s
    }

    /// 6 x the multibranched finite energy after tally elimination.
    pub fn fin2_energy_ktab_x6(
        g: i128,
        rr: i128,
        n: i128,
        p: i128,
        q: i128,
        r: i128,
        a: i128,
    ) -> i128 {
        (p + 2 * g + a - r - 1) * (6 * q + 12 * g + 6 * a + 6 * n - 11 * r - 12)
            + 6 * a * (rr - n + r + 1)
            + 6 * (rr + n + r)
            - 6 * a * a
    }

    /// 6 x the multibranched finite energy at minimal `r`.
    pub fn fin2_energy_rmin_x6(g: i128, rr: i128, n: i128, p: i128, q: i128, a: i128) -> i128 {
        (p + 2 * g + 1 + rr - n) * (6 * q + 12 * g + 11 * rr - 5 * a - 5 * n + 10) + 12 * n - 12
    }

    /// 6 x the multibranched gap against the floored budget.
    pub fn fin2_gap_x6(g: i128, rr: i128, n: i128, p: i128, q: i128) -> i128 {
        let energy = (p + 2 * g + 1 + rr - n) * (6 * q + 12 * g + 11 * rr - 5 * n) + 12 * n - 12;
        6 * ((p - 1) * (q - 1) - (q - p) + 1 - 2 * g) - energy
    }

    pub fn fin2_gap_qmin_x6(g: i128, rr: i128, n: i128, p: i128) -> i128 {
        fin2_gap_x6(g, rr, n, p, p + 1)
    }

    /// 6 x the infinity-side gap at q = p + pp; `rr = 0` is the
    /// unibranched case.
    pub fn inf2_gap_qmin_x6(g: i128, rr: i128, n: i128, p: i128, pp: i128) -> i128 {
        6 * (p - 1) * (p + pp - 1) + 6 - 12 * g - 12 * n
            - pp * (12 * p + 6 * pp - 6 + 24 * g + 17 * rr - 11 * n)
    }

    /// 2 x the infinity-side gap at pp = 3; `rr = 0` is the unibranched
    /// case.
    pub fn inf2_gap_qmin3_x2(g: i128, rr: i128, n: i128, p: i128) -> i128 {
        2 * p * p - 10 * p - 28 * g - 17 * rr + 7 * n - 14
    }

    /// 12 x the infinity-side gap at pp = p/2; `rr = 0` is the unibranched
    /// case.
    pub fn inf2_gap_half_x12(g: i128, rr: i128, n: i128, p: i128) -> i128 {
        3 * p * p + p * (11 * n - 24 * g - 17 * rr - 24) - 24 * g - 24 * n + 24
    }

    /// 672 x the closed infinity-side gap (the pp = p/2 branch endpoint).
    pub fn inf2_gap_closed_half_x672(g: i128, rr: i128, n: i128) -> i128 {
        let center = 28 * n - 58 * g - 34 * rr - 31;
        center * center - 4 * (g + 3 * rr) * (g + 3 * rr) - 4268 * g - 2052 * rr - 793
    }
}

use scaled::*;

const EXAMPLE_CAP: usize = 8;
const BLOCK_CAP: usize = 4;

/// Per-index accumulator; blocks merge in index order so reports are
/// deterministic under any thread schedule.
struct Block {
    points: u64,
    failures: u64,
    examples: Vec<String>,
}

impl Block {
    fn new() -> Self {
        Block {
            points: 0,
            failures: 0,
            examples: Vec::new(),
        }
    }

    fn pass(&mut self) {
        self.points += 1;
    }

    fn fail(&mut self, example: impl FnOnce() -> String) {
        self.points += 1;
        self.failures += 1;
        if self.examples.len() < BLOCK_CAP {
            self.examples.push(example());
        }
    }
}

fn collect<F>(name: &str, mode: ExecMode, lo: i64, hi: i64, per_index: F) -> LemmaCheck
where
    F: Fn(i64) -> Block + Sync + Send,
{
    let blocks = par::filter_map_range(mode, lo, hi, |i| Some(per_index(i)));
    let mut check = LemmaCheck {
        name: name.to_string(),
        points: 0,
        failures: 0,
        counterexamples: Vec::new(),
        note: None,
    };
    for block in blocks {
        check.points += block.points;
        check.failures += block.failures;
        for e in block.examples {
            if check.counterexamples.len() < EXAMPLE_CAP {
                check.counterexamples.push(e);
            }
        }
    }
    check
}

/// Strict decrease of the unibranched finite energy in `s`. Hypotheses:
/// both tallies admissible (`r >= 0`) and the distinguished multiplicity
/// dominant (`m1 >= 2`, and `m1 >= 3` once a triple point exists).
fn fin1_energy_decreasing_in_s(grid: &LemmaGrid) -> LemmaCheck {
    let (g_max, n_max, q_slack, s_max) = (grid.g_max, grid.n_max, grid.q_slack, grid.s_max);
    collect("fin1-energy-decreasing-in-s", grid.mode, 1, grid.p_max + 1, |p| {
        let mut block = Block::new();
        for g in 0..=g_max {
            for n in 1..=n_max {
                for q in p + 1..=p + q_slack {
                    for s in 0..=s_max {
                        let admissible = |s: i64| {
                            let r = n - 1 - s;
                            let m1 = p + 2 * g - r - 2 * s;
                            r >= 0 && m1 >= 2 && (s == 0 || m1 >= 3)
                        };
                        if !admissible(s) || !admissible(s + 1) {
                            continue;
                        }
                        let (gi, ni, pi, qi) = (g as i128, n as i128, p as i128, q as i128);
                        let lo = fin1_energy_m1cap_x6(gi, ni, pi, qi, s as i128 + 1);
                        let hi = fin1_energy_m1cap_x6(gi, ni, pi, qi, s as i128);
                        if lo < hi {
                            block.pass();
                        } else {
                            block.fail(|| format!("g={g} n={n} p={p} q={q} s={s}"));
                        }
                    }
                }
            }
        }
        block
    })
}

/// Nondecrease of the finite-side gaps in `q`. Hypothesis: the point count
/// clears `2g + 3` (plus the branch excess in the multibranched case).
fn fin_gap_nondecreasing_in_q(grid: &LemmaGrid, multibranched: bool) -> LemmaCheck {
    let name = if multibranched {
        "fin2-gap-nondecreasing-in-q"
    } else {
        "fin1-gap-nondecreasing-in-q"
    };
    let (g_max, n_max, q_slack) = (grid.g_max, grid.n_max, grid.q_slack);
    let rr_hi = if multibranched { grid.r_excess_max } else { 0 };
    let rr_lo = if multibranched { 1 } else { 0 };
    collect(name, grid.mode, 1, grid.p_max + 1, |p| {
        let mut block = Block::new();
        for g in 0..=g_max {
            for rr in rr_lo..=rr_hi {
                for n in 1..=n_max {
                    if n < 2 * g + rr + 3 {
                        continue;
                    }
                    for q in p + 1..=p + q_slack {
                        let (gi, ri, ni, pi, qi) =
                            (g as i128, rr as i128, n as i128, p as i128, q as i128);
                        let (lo, hi) = if multibranched {
                            (fin2_gap_x6(gi, ri, ni, pi, qi), fin2_gap_x6(gi, ri, ni, pi, qi + 1))
                        } else {
                            (fin1_gap_x6(gi, ni, pi, qi), fin1_gap_x6(gi, ni, pi, qi + 1))
                        };
                        if hi >= lo {
                            block.pass();
                        } else {
                            block.fail(|| format!("g={g} rr={rr} n={n} p={p} q={q}"));
                        }
                    }
                }
            }
        }
        block
    })
}

/// The finite-side gaps at q = p + 1 are linear in `p`, and the slope is
/// positive exactly when the point count clears the linear threshold
/// `(24g + 17rr + 20 or 18)/11` read off the bound table.
fn fin_gap_p_coefficient_sign(grid: &LemmaGrid, multibranched: bool) -> LemmaCheck {
    let name = if multibranched {
        "fin2-gap-p-coefficient-sign"
    } else {
        "fin1-gap-p-coefficient-sign"
    };
    let n_max = grid.n_max;
    let rr_hi = if multibranched { grid.r_excess_max } else { 0 };
    let rr_lo = if multibranched { 1 } else { 0 };
    collect(name, grid.mode, 0, grid.g_max + 1, |g| {
        let mut block = Block::new();
        for rr in rr_lo..=rr_hi {
            for n in 1..=n_max {
                let (gi, ri, ni) = (g as i128, rr as i128, n as i128);
                let at = |p: i128| {
                    if multibranched {
                        fin2_gap_qmin_x6(gi, ri, ni, p)
                    } else {
                        fin1_gap_qmin_x6(gi, ni, p)
                    }
                };
                let slope = at(1) - at(0);
                let linear = at(8) - at(7) == slope;
                // Slope of 6x the gap is 11n - 24g - 17rr - 18 (- 20 with
                // no branch excess term in the unibranched display).
                let threshold = if multibranched {
                    11 * ni - 24 * gi - 17 * ri - 18
                } else {
                    11 * ni - 24 * gi - 20
                };
                if linear && slope == threshold {
                    block.pass();
                } else {
                    block.fail(|| format!("g={g} rr={rr} n={n} slope={slope}"));
                }
            }
        }
        block
    })
}

/// Concavity of the infinity-side gap in `pp`: the second difference is
/// exactly -2 everywhere, so minima sit at the interval endpoints.
fn inf_gap_concave_in_pprime(grid: &LemmaGrid) -> LemmaCheck {
    let (g_max, n_max, r_max) = (grid.g_max, grid.n_max, grid.r_excess_max);
    collect("inf-gap-concave-in-pprime", grid.mode, 6, grid.p_max + 1, |p| {
        let mut block = Block::new();
        for g in 0..=g_max {
            for rr in 0..=r_max {
                for n in 1..=n_max {
                    for pp in 3..=p / 2 {
                        let (gi, ri, ni, pi, qi) =
                            (g as i128, rr as i128, n as i128, p as i128, pp as i128);
                        let second = inf2_gap_qmin_x6(gi, ri, ni, pi, qi - 1)
                            + inf2_gap_qmin_x6(gi, ri, ni, pi, qi + 1)
                            - 2 * inf2_gap_qmin_x6(gi, ri, ni, pi, qi);
                        if second == -12 {
                            block.pass();
                        } else {
                            block.fail(|| format!("g={g} rr={rr} n={n} p={p} pp={pp}"));
                        }
                    }
                }
            }
        }
        block
    })
}

/// Strict decrease of the multibranched finite energy in `s` at fixed
/// ordinary-point tallies. Hypotheses: a representable tally table
/// (`2T0 <= T1 <= A*T0` or both zero), admissible `r`, and a dominant
/// distinguished point (`m1 >= max(A, 2)`, `>= 3` once a triple exists).
fn fin2_energy_decreasing_in_s(grid: &LemmaGrid) -> LemmaCheck {
    let (g_max, n_max, q_slack, r_max, a_max, t0_max, s_max) = (
        grid.g_max,
        grid.n_max,
        grid.q_slack,
        grid.r_excess_max,
        grid.a_max,
        grid.t0_max,
        grid.s_max,
    );
    collect("fin2-energy-decreasing-in-s", grid.mode, 1, grid.p_max + 1, |p| {
        let mut block = Block::new();
        for g in 0..=g_max {
            for rr in 1..=r_max {
                for a in 2..=a_max {
                    for t0 in 0..=t0_max {
                        let t1 = t0 + rr + 1 - a;
                        let representable =
                            (t0 == 0 && t1 == 0) || (2 * t0 <= t1 && t1 <= a * t0);
                        if !representable {
                            continue;
                        }
                        for n in 1..=n_max {
                            for q in p + 1..=p + q_slack {
                                for s in 0..=s_max {
                                    let admissible = |s: i64| {
                                        let r = n - 1 - s - t0;
                                        let m1 = p + 2 * g - 1 + a - r - 2 * s;
                                        r >= 0 && m1 >= a.max(2) && (s == 0 || m1 >= 3)
                                    };
                                    if !admissible(s) || !admissible(s + 1) {
                                        continue;
                                    }
                                    let eval = |s: i64| {
                                        fin2_energy_x6(
                                            g as i128,
                                            n as i128,
                                            p as i128,
                                            q as i128,
                                            (n - 1 - s - t0) as i128,
                                            s as i128,
                                            a as i128,
                                        )
                                    };
                                    if eval(s + 1) < eval(s) {
                                        block.pass();
                                    } else {
                                        block.fail(|| {
                                            format!(
                                                "g={g} rr={rr} a={a} t0={t0} n={n} p={p} q={q} s={s}"
                                            )
                                        });
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
        block
    })
}

/// Strict decrease of the tally-eliminated finite energy in `r`.
/// Hypotheses: `q >= p + 1`, `r + 1 <= p + 2g - 1`, `n >= r + 2`,
/// `A >= 2`.
fn fin2_energy_decreasing_in_r(grid: &LemmaGrid) -> LemmaCheck {
    let (g_max, n_max, q_slack, r_max, a_max) = (
        grid.g_max,
        grid.n_max,
        grid.q_slack,
        grid.r_excess_max,
        grid.a_max,
    );
    collect("fin2-energy-decreasing-in-r", grid.mode, 1, grid.p_max + 1, |p| {
        let mut block = Block::new();
        for g in 0..=g_max {
            for rr in 1..=r_max {
                for a in 2..=a_max {
                    for n in 1..=n_max {
                        for q in p + 1..=p + q_slack {
                            for r in 0..=(p + 2 * g - 2).min(n - 2) {
                                let eval = |r: i64| {
                                    fin2_energy_ktab_x6(
                                        g as i128,
                                        rr as i128,
                                        n as i128,
                                        p as i128,
                                        q as i128,
                                        r as i128,
                                        a as i128,
                                    )
                                };
                                if eval(r + 1) < eval(r) {
                                    block.pass();
                                } else {
                                    block.fail(|| {
                                        format!("g={g} rr={rr} a={a} n={n} p={p} q={q} r={r}")
                                    });
                                }
                            }
                        }
                    }
                }
            }
        }
        block
    })
}

/// Strict decrease of the r-eliminated finite energy in the branch cap.
/// Hypothesis: the leading factor `p + 2g + 1 + rr - n` is at least 1.
fn fin2_energy_decreasing_in_a(grid: &LemmaGrid) -> LemmaCheck {
    let (g_max, n_max, q_slack, r_max, a_max) = (
        grid.g_max,
        grid.n_max,
        grid.q_slack,
        grid.r_excess_max,
        grid.a_max,
    );
    collect("fin2-energy-decreasing-in-a", grid.mode, 1, grid.p_max + 1, |p| {
        let mut block = Block::new();
        for g in 0..=g_max {
            for rr in 1..=r_max {
                for n in 1..=n_max {
                    if p + 2 * g + 1 + rr - n < 1 {
                        continue;
                    }
                    for q in p + 1..=p + q_slack {
                        for a in 2..=a_max {
                            let eval = |a: i64| {
                                fin2_energy_rmin_x6(
                                    g as i128,
                                    rr as i128,
                                    n as i128,
                                    p as i128,
                                    q as i128,
                                    a as i128,
                                )
                            };
                            if eval(a + 1) < eval(a) {
                                block.pass();
                            } else {
                                block.fail(|| format!("g={g} rr={rr} n={n} p={p} q={q} a={a}"));
                            }
                        }
                    }
                }
            }
        }
        block
    })
}

/// Strict growth of the pp = 3 gap branch in `p` for `p >= 3`.
fn inf_gap_pp3_growing_in_p(grid: &LemmaGrid) -> LemmaCheck {
    let (g_max, n_max, r_max) = (grid.g_max, grid.n_max, grid.r_excess_max);
    collect("inf-gap-pp3-growing-in-p", grid.mode, 3, grid.p_max + 1, |p| {
        let mut block = Block::new();
        for g in 0..=g_max {
            for rr in 0..=r_max {
                for n in 1..=n_max {
                    let (gi, ri, ni, pi) = (g as i128, rr as i128, n as i128, p as i128);
                    if inf2_gap_qmin3_x2(gi, ri, ni, pi + 1) > inf2_gap_qmin3_x2(gi, ri, ni, pi)
                    {
                        block.pass();
                    } else {
                        block.fail(|| format!("g={g} rr={rr} n={n} p={p}"));
                    }
                }
            }
        }
        block
    })
}

/// Nondecrease of the pp = p/2 gap branch in `p`. Hypotheses: the point
/// count clears the linear threshold `(36g + 23rr + 18)/17` and `p` sits
/// at or above its admissible minimum `n - rr - 2g + 1`.
fn inf_gap_half_nondecreasing_in_p(grid: &LemmaGrid) -> LemmaCheck {
    let (g_max, n_max, r_max) = (grid.g_max, grid.n_max, grid.r_excess_max);
    collect(
        "inf-gap-half-nondecreasing-in-p",
        grid.mode,
        1,
        grid.p_max + 1,
        |p| {
            let mut block = Block::new();
            for g in 0..=g_max {
                for rr in 0..=r_max {
                    for n in 1..=n_max {
                        if 17 * n <= 36 * g + 23 * rr + 18 || p < n - rr - 2 * g + 1 {
                            continue;
                        }
                        let (gi, ri, ni, pi) = (g as i128, rr as i128, n as i128, p as i128);
                        if inf2_gap_half_x12(gi, ri, ni, pi + 1)
                            >= inf2_gap_half_x12(gi, ri, ni, pi)
                        {
                            block.pass();
                        } else {
                            block.fail(|| format!("g={g} rr={rr} n={n} p={p}"));
                        }
                    }
                }
            }
            block
        },
    )
}

/// Which way the pp = p/2 branch relates to its closed form at minimal
/// `p`. The source states the two inequality directions inconsistently, so
/// this check verifies the direction the minimization argument needs
/// (gap at admissible p >= closed form) and records how often the reverse
/// direction fails on the same grid.
fn inf2_gap_half_vs_closed_direction(grid: &LemmaGrid) -> LemmaCheck {
    let (g_max, n_max, r_max) = (grid.g_max, grid.n_max, grid.r_excess_max);
    let blocks = par::filter_map_range(grid.mode, 1, grid.p_max + 1, |p| {
        let mut block = Block::new();
        let mut strictly_above: u64 = 0;
        for g in 0..=g_max {
            for rr in 1..=r_max {
                for n in 1..=n_max {
                    if 17 * n <= 36 * g + 23 * rr + 18 || p < n - rr - 2 * g + 1 {
                        continue;
                    }
                    let (gi, ri, ni, pi) = (g as i128, rr as i128, n as i128, p as i128);
                    let half = 56 * inf2_gap_half_x12(gi, ri, ni, pi);
                    let closed = inf2_gap_closed_half_x672(gi, ri, ni);
                    if half >= closed {
                        block.pass();
                        if half > closed {
                            strictly_above += 1;
                        }
                    } else {
                        block.fail(|| format!("g={g} rr={rr} n={n} p={p}"));
                    }
                }
            }
        }
        Some((block, strictly_above))
    });
    let mut check = LemmaCheck {
        name: "inf2-gap-half-vs-closed-direction".to_string(),
        points: 0,
        failures: 0,
        counterexamples: Vec::new(),
        note: None,
    };
    let mut strictly_above: u64 = 0;
    for (block, above) in blocks {
        check.points += block.points;
        check.failures += block.failures;
        strictly_above += above;
        for e in block.examples {
            if check.counterexamples.len() < EXAMPLE_CAP {
                check.counterexamples.push(e);
            }
        }
    }
    check.note = Some(format!(
        "grid supports gap >= closed form; the reverse direction fails strictly at {} of {} points",
        strictly_above, check.points
    ));
    check
}

/// Replays every lemma on the grid. Counterexamples are report entries,
/// never panics; an all-clear report is the machine-checked version of the
/// sign claims the chains rest on.
pub fn check_chain_lemmas(grid: &LemmaGrid) -> LemmaReport {
    LemmaReport {
        checks: vec![
            fin1_energy_decreasing_in_s(grid),
            fin_gap_nondecreasing_in_q(grid, false),
            fin_gap_nondecreasing_in_q(grid, true),
            fin_gap_p_coefficient_sign(grid, false),
            fin_gap_p_coefficient_sign(grid, true),
            inf_gap_concave_in_pprime(grid),
            fin2_energy_decreasing_in_s(grid),
            fin2_energy_decreasing_in_r(grid),
            fin2_energy_decreasing_in_a(grid),
            inf_gap_pp3_growing_in_p(grid),
            inf_gap_half_nondecreasing_in_p(grid),
            inf2_gap_half_vs_closed_direction(grid),
        ],
    }
}

#[cfg(test)]
mod tests {
    use super::super::formulas;
    use super::*;
    use crate::exact::Rat;

    fn small_grid() -> LemmaGrid {
        LemmaGrid {
            g_max: 3,
            n_max: 20,
            p_max: 24,
            q_slack: 2,
            r_excess_max: 4,
            a_max: 4,
            t0_max: 2,
            s_max: 3,
            mode: ExecMode::Sequential,
        }
    }

    #[test]
    fn small_grid_is_all_clear() {
        let report = check_chain_lemmas(&small_grid());
        assert_eq!(report.checks.len(), 12);
        for check in &report.checks {
            assert!(check.ok(), "{}: {:?}", check.name, check.counterexamples);
            assert!(check.points > 0, "{} tested nothing", check.name);
        }
        assert!(report.ok());
    }

    #[test]
    fn direction_note_reports_strict_majority() {
        let report = check_chain_lemmas(&small_grid());
        let check = report
            .checks
            .iter()
            .find(|c| c.name == "inf2-gap-half-vs-closed-direction")
            .unwrap();
        let note = check.note.as_deref().unwrap();
        assert!(note.contains("gap >= closed form"), "{note}");
        assert!(!note.contains(" at 0 of "), "{note}");
    }

    #[test]
    fn scaled_twins_match_exact_formulas() {
        let cases = [(0i64, 1i64, 5i64, 7i64, 11i64), (2, 3, 17, 23, 29), (1, 2, 8, 9, 12)];
        for (g, rr, n, p, q) in cases {
            let (gq, rq, nq, pq, qq) = (
                Rat::int(g),
                Rat::int(rr),
                Rat::int(n),
                Rat::int(p),
                Rat::int(q),
            );
            let (gi, ri, ni, pi, qi) = (g as i128, rr as i128, n as i128, p as i128, q as i128);
            assert_eq!(
                Rat::int(scaled::fin1_gap_x6(gi, ni, pi, qi) as i64),
                formulas::fin1_gap(&gq, &nq, &pq, &qq) * Rat::int(6)
            );
            assert_eq!(
                Rat::int(scaled::fin2_gap_x6(gi, ri, ni, pi, qi) as i64),
                formulas::fin2_gap(&gq, &rq, &nq, &pq, &qq) * Rat::int(6)
            );
            assert_eq!(
                Rat::int(scaled::inf2_gap_half_x12(gi, ri, ni, pi) as i64),
                formulas::inf2_gap_half(&gq, &rq, &nq, &pq) * Rat::int(12)
            );
            assert_eq!(
                Rat::int(scaled::inf2_gap_closed_half_x672(gi, ri, ni) as i64),
                formulas::inf2_gap_closed_half(&gq, &rq, &nq) * Rat::int(672)
            );
        }
    }
}
