//! Brute-force feasibility search for both counting theorems.
//!
//! The theorems assert that no curve profile sits at or beyond all six
//! bound inequalities of its family at once. This module enumerates
//! profiles `(g, p, q, points, nu'_inf)` over a finite box together with
//! the extremal codimension assignments the proofs consider, and lists
//! every candidate that passes the whole constraint system while every
//! non-dropped bound inequality holds. An empty report therefore replays
//! the theorems on the box; dropping inequalities re-admits known curves
//! (the cuspidal cubic, the six-node quintic profile) as sanity witnesses.
//!
//! Constraint system, never dropped:
//!   - multiplicity budget: `sum(m - b) <= p + 2g - 1`
//!   - double-point floor:  `sum(m(m-1)) <= D = (p-1)(q-1) - p' + 1 - 2g`
//!   - codimension budget:  `sum(ext) + nu' <= p + q - 2 + 4g + R - sum(eta)`
//!   - energy match:        `delta_gap = D - E <= 0`
//!   - degree floors:       `p >= 6` when the infinity part carries the
//!     push, `p >= N - R - 2g + 1` otherwise
//!
//! Profiles with at most six points get the general treatment: every
//! multiset of `(m, b)` points, assigned all-minimal, or with one point
//! per distinct group pushed to the whole remaining budget, or with the
//! budget pushed to infinity. Larger profiles use the reduced shapes the
//! proofs show are extremal: doubles, triples, ordinary clusters, and one
//! distinguished point that absorbs the push.

use num_integer::Integer;
use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use thiserror::Error;

use crate::bounds::{holds, BoundKind, Family, GenusProfile};
use crate::par::{filter_map_range, ExecMode};

/// Which counting theorem the search attacks: `One` is the unibranched
/// (cuspidal) case, `Two` the multibranched one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Theorem {
    One,
    Two,
}

impl Theorem {
    pub fn family(self) -> Family {
        match self {
            Theorem::One => Family::I,
            Theorem::Two => Family::J,
        }
    }
}

/// Finite enumeration region.
///
/// `r_max` caps the branch excess `R` of Theorem-Two profiles; Theorem-One
/// scans ignore it. `drop_inequalities` removes bound kinds from the
/// feasibility gate. Dropping all six turns the run into a pure
/// constraint-system scan, and a Theorem-One run then also splits
/// unibranched points into their ordinary variants so that multibranch
/// witnesses can surface.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SearchBox {
    pub g_max: i64,
    pub r_max: i64,
    pub n_max: i64,
    pub p_max: i64,
    /// Scans `q` in `p+1 ..= p + q_slack`, skipping multiples of `p`.
    pub q_slack: i64,
    pub theorem: Theorem,
    pub drop_inequalities: Vec<BoundKind>,
}

impl SearchBox {
    pub fn family(&self) -> Family {
        self.theorem.family()
    }

    fn all_dropped(&self) -> bool {
        self.drop_inequalities.len() == 6
    }
}

#[derive(Debug, Clone)]
pub struct SearchOptions {
    /// Candidate budget; the pre-flight estimate must stay at or below it
    /// or the search refuses to start.
    pub budget: u64,
    /// Cap on listed rows. Excess rows are cut in merge order and the
    /// report is marked truncated; the scanned count stays exact.
    pub max_rows: usize,
    pub mode: ExecMode,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            budget: 1_000_000_000,
            max_rows: 100_000,
            mode: ExecMode::default(),
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SearchError {
    #[error("estimated enumeration of {estimated} candidates exceeds budget {budget}")]
    BudgetExceeded { estimated: u64, budget: u64 },
    #[error("invalid search box: {0}")]
    InvalidBox(String),
}

/// One feasible configuration: the profile, its codimension assignment,
/// and the gap values that admitted it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FeasibilityRow {
    pub g: u32,
    /// Branch excess `R = sum(b - 1)` of this profile.
    #[serde(rename = "R")]
    pub big_r: u32,
    pub n: u64,
    pub p: u64,
    pub q: u64,
    pub p_prime: u64,
    /// `(multiplicity, branches, external codimension)` per finite point.
    pub points: Vec<(u64, u64, i64)>,
    pub nu_prime_inf: u64,
    /// `D = (p-1)(q-1) - p' + 1 - 2g`.
    pub double_points: i64,
    /// `E = sum m(ext - m + b + 1) + p' nu'` at this assignment.
    pub energy: i64,
    /// `D - sum(m(m-1))`; nonnegative on every listed row.
    pub declared_gap: i64,
    /// `D - E`; nonpositive on every listed row.
    pub delta_gap: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FeasibilityReport {
    pub theorem: Theorem,
    /// Pre-flight candidate count: exact for Theorem-One boxes, an
    /// overcount for Theorem-Two, whose estimator relaxes the double-point
    /// floor on the general band.
    pub estimated: u64,
    pub scanned_count: u64,
    pub dropped: Vec<BoundKind>,
    pub truncated: bool,
    pub feasible_configs: Vec<FeasibilityRow>,
}

impl FeasibilityReport {
    pub fn is_empty(&self) -> bool {
        self.feasible_configs.is_empty()
    }
}

/// Reduced shapes start at seven points; anything smaller gets the
/// general per-point treatment.
const GENERAL_N_CAP: i64 = 6;

/// Six times the minimal local excess of a point class: 5/6 for a
/// unibranched double, 1/2 for any higher cusp, 0 for multibranch points.
fn eta6(m: i64, b: i64) -> i64 {
    if b >= 2 {
        0
    } else if m == 2 {
        5
    } else {
        3
    }
}

/// Smallest external codimension at which a point can still carry its own
/// double-point floor `m(m-1)`.
fn min_ext(m: i64, b: i64) -> i64 {
    2 * m - b - 2
}

/// Precomputed "every non-dropped bound inequality holds at `(g, R, N)`"
/// gate. The I family ignores `R`, so Theorem-One tables hold one `R` slot.
struct HoldsTable {
    r_lo: i64,
    r_hi: i64,
    n_max: i64,
    bits: Vec<bool>,
    g_stride: usize,
}

impl HoldsTable {
    fn build(sbox: &SearchBox) -> HoldsTable {
        let (r_lo, r_hi) = match sbox.theorem {
            Theorem::One => (0, 0),
            Theorem::Two => (1, sbox.r_max),
        };
        let active: Vec<BoundKind> = sbox
            .family()
            .members()
            .into_iter()
            .filter(|k| !sbox.drop_inequalities.contains(k))
            .collect();
        let g_stride = (r_hi - r_lo + 1) as usize * sbox.n_max as usize;
        let mut bits = vec![false; (sbox.g_max + 1) as usize * g_stride];
        for g in 0..=sbox.g_max {
            for r in r_lo..=r_hi {
                let profile = GenusProfile::new(g as u32, r as u32);
                for n in 1..=sbox.n_max {
                    let ok = active
                        .iter()
                        .all(|&k| holds(k, n as u64, &profile).expect("family matches profile"));
                    bits[g as usize * g_stride
                        + (r - r_lo) as usize * sbox.n_max as usize
                        + (n - 1) as usize] = ok;
                }
            }
        }
        HoldsTable { r_lo, r_hi, n_max: sbox.n_max, bits, g_stride }
    }

    fn pass(&self, g: i64, r_prof: i64, n: i64) -> bool {
        let r = if self.r_hi == 0 { 0 } else { r_prof };
        debug_assert!((self.r_lo..=self.r_hi).contains(&r) && n >= 1 && n <= self.n_max);
        self.bits[g as usize * self.g_stride
            + (r - self.r_lo) as usize * self.n_max as usize
            + (n - 1) as usize]
    }
}

/// Per-worker scan state; one instance walks every cell of a single `p`.
struct Scanner<'a> {
    sbox: &'a SearchBox,
    table: &'a HoldsTable,
    row_cap: usize,
    rows: Vec<FeasibilityRow>,
    scanned: u64,
    truncated: bool,
    g: i64,
    p: i64,
    q: i64,
    pp: i64,
    dd: i64,
    mb: i64,
    ms: Vec<i64>,
    groups: Vec<(i64, i64)>,
    dec: Vec<(i64, i64)>,
    mins: Vec<i64>,
    pts: Vec<(i64, i64, i64)>,
}

impl<'a> Scanner<'a> {
    fn new(sbox: &'a SearchBox, table: &'a HoldsTable, row_cap: usize) -> Self {
        Scanner {
            sbox,
            table,
            row_cap,
            rows: Vec::new(),
            scanned: 0,
            truncated: false,
            g: 0,
            p: 2,
            q: 3,
            pp: 1,
            dd: 0,
            mb: 1,
            ms: Vec::new(),
            groups: Vec::new(),
            dec: Vec::new(),
            mins: Vec::new(),
            pts: Vec::new(),
        }
    }

    fn scan_p(&mut self, p: i64) {
        for g in 0..=self.sbox.g_max {
            for q in p + 1..=p + self.sbox.q_slack {
                if q % p == 0 {
                    continue;
                }
                self.g = g;
                self.p = p;
                self.q = q;
                self.pp = p.gcd(&q);
                self.dd = (p - 1) * (q - 1) - self.pp + 1 - 2 * g;
                self.mb = p + 2 * g - 1;
                match self.sbox.theorem {
                    Theorem::One => self.cell_one(),
                    Theorem::Two => self.cell_two(),
                }
            }
        }
    }

    /// Run one `(points, nu')` candidate through every gate. `dup` marks a
    /// pushed assignment that degenerated to the all-minimal one; it is
    /// scanned but not listed a second time.
    fn consider(&mut self, nu: i64, dup: bool) {
        self.scanned += 1;
        let n = self.pts.len() as i64;
        let mut r_prof = 0;
        let mut mult_excess = 0;
        let mut floor_sum = 0;
        let mut eta_sum6 = 0;
        let mut ext_sum = 0;
        for &(m, b, e) in &self.pts {
            r_prof += b - 1;
            mult_excess += m - b;
            floor_sum += m * (m - 1);
            eta_sum6 += eta6(m, b);
            ext_sum += e;
        }
        if self.sbox.theorem == Theorem::Two && !(1..=self.sbox.r_max).contains(&r_prof) {
            return;
        }
        if !self.table.pass(self.g, r_prof, n) {
            return;
        }
        if mult_excess > self.mb {
            return;
        }
        if self.dd < floor_sum {
            return;
        }
        let budget6 = 6 * (self.p + self.q - 2 + 4 * self.g + r_prof) - eta_sum6;
        if 6 * (ext_sum + nu) > budget6 {
            return;
        }
        for &(m, b, e) in &self.pts {
            if e < min_ext(m, b) {
                return;
            }
        }
        let energy: i64 = self
            .pts
            .iter()
            .map(|&(m, b, e)| m * (e - m + b + 1))
            .sum::<i64>()
            + self.pp * nu;
        let delta = self.dd - energy;
        if delta > 0 {
            return;
        }
        if nu > 0 {
            if self.p < 6 {
                return;
            }
        } else if self.p < n - r_prof - 2 * self.g + 1 {
            return;
        }
        if dup {
            return;
        }
        if self.rows.len() >= self.row_cap {
            self.truncated = true;
            return;
        }
        self.rows.push(FeasibilityRow {
            g: self.g as u32,
            big_r: r_prof as u32,
            n: n as u64,
            p: self.p as u64,
            q: self.q as u64,
            p_prime: self.pp as u64,
            points: self.pts.iter().map(|&(m, b, e)| (m as u64, b as u64, e)).collect(),
            nu_prime_inf: nu as u64,
            double_points: self.dd,
            energy,
            declared_gap: self.dd - floor_sum,
            delta_gap: delta,
        });
    }

    fn load_pts_min(&mut self) {
        self.pts.clear();
        for (&(m, b), &e) in self.dec.iter().zip(&self.mins) {
            self.pts.push((m, b, e));
        }
    }

    /// Minimal codimensions and the scaled budget of the decorated
    /// multiset in `self.dec`.
    fn prepare_mins(&mut self) -> (i64, i64) {
        self.mins.clear();
        let mut smin = 0;
        let mut r_prof = 0;
        let mut eta_sum6 = 0;
        for &(m, b) in &self.dec {
            let e = min_ext(m, b);
            self.mins.push(e);
            smin += e;
            r_prof += b - 1;
            eta_sum6 += eta6(m, b);
        }
        let budget6 = 6 * (self.p + self.q - 2 + 4 * self.g + r_prof) - eta_sum6;
        (smin, budget6)
    }

    /// Emit every assignment candidate for `self.dec`. General-band shapes
    /// get the all-minimal assignment plus one pushed point per distinct
    /// group; reduced shapes push only their distinguished last point.
    /// Both bands get the pushed-infinity variant.
    fn assignments(&mut self, general: bool) {
        let (smin, budget6) = self.prepare_mins();
        if general {
            self.load_pts_min();
            self.consider(0, false);
            for j in 0..self.dec.len() {
                if j > 0 && self.dec[j] == self.dec[j - 1] {
                    continue;
                }
                let ext = (budget6 - 6 * (smin - self.mins[j])).div_euclid(6);
                self.load_pts_min();
                self.pts[j].2 = ext;
                self.consider(0, ext == self.mins[j]);
            }
        } else {
            let j = self.dec.len() - 1;
            let ext = (budget6 - 6 * (smin - self.mins[j])).div_euclid(6);
            self.load_pts_min();
            self.pts[j].2 = ext;
            self.consider(0, false);
        }
        let nu = (budget6 - 6 * smin).div_euclid(6);
        if nu < 0 {
            self.scanned += 1;
        } else {
            self.load_pts_min();
            self.consider(nu, general && nu == 0);
        }
    }

    /// Infinity-push candidate for a shape with no distinguished point.
    fn infinity_only(&mut self) {
        let (smin, budget6) = self.prepare_mins();
        let nu = (budget6 - 6 * smin).div_euclid(6);
        if nu < 0 {
            self.scanned += 1;
        } else {
            self.load_pts_min();
            self.consider(nu, false);
        }
    }

    fn cell_one(&mut self) {
        let n_cap = self.sbox.n_max.min(GENERAL_N_CAP);
        self.ms.clear();
        self.one_ms_rec(2, self.mb, self.dd, n_cap, self.sbox.all_dropped());
        for n in 7..=self.sbox.n_max {
            for s in 0..n {
                let r = n - 1 - s;
                let lo = if s == 0 { 2 } else { 3 };
                let hi = self.p + 2 * self.g - r - 2 * s;
                for m1 in lo..=hi {
                    self.dec.clear();
                    self.dec.resize(r as usize, (2, 1));
                    self.dec.resize((r + s) as usize, (3, 1));
                    self.dec.push((m1, 1));
                    self.assignments(false);
                }
            }
            for s in 0..=n {
                let r = n - s;
                self.dec.clear();
                self.dec.resize(r as usize, (2, 1));
                self.dec.resize(n as usize, (3, 1));
                self.infinity_only();
            }
        }
    }

    /// Nondecreasing multisets of multiplicities `m >= 2` in preorder:
    /// every nonempty prefix is a shape. Plain scans budget on
    /// `sum(m - 1)`, sanity scans on the double-point floor `sum(m(m-1))`.
    fn one_ms_rec(&mut self, v_min: i64, mb_left: i64, tri_left: i64, n_left: i64, use_tri: bool) {
        if !self.ms.is_empty() {
            self.decorate_one();
        }
        if n_left == 0 {
            return;
        }
        let mut v = v_min;
        loop {
            if use_tri {
                if v * (v - 1) > tri_left {
                    break;
                }
            } else if v - 1 > mb_left {
                break;
            }
            self.ms.push(v);
            self.one_ms_rec(v, mb_left - (v - 1), tri_left - v * (v - 1), n_left - 1, use_tri);
            self.ms.pop();
            v += 1;
        }
    }

    fn decorate_one(&mut self) {
        if !self.sbox.all_dropped() {
            self.dec.clear();
            for &v in &self.ms {
                self.dec.push((v, 1));
            }
            self.assignments(true);
            return;
        }
        self.groups.clear();
        for &v in &self.ms {
            match self.groups.last_mut() {
                Some(last) if last.0 == v => last.1 += 1,
                _ => self.groups.push((v, 1)),
            }
        }
        self.dec.clear();
        self.split_rec(0);
    }

    /// Ordinary/unibranched split per group, emitted in product order. The
    /// result stays sorted because `(v, 1) < (v, v)` within a group.
    fn split_rec(&mut self, gi: usize) {
        if gi == self.groups.len() {
            self.assignments(true);
            return;
        }
        let (v, c) = self.groups[gi];
        for o in 0..=c {
            let mark = self.dec.len();
            for _ in 0..c - o {
                self.dec.push((v, 1));
            }
            for _ in 0..o {
                self.dec.push((v, v));
            }
            self.split_rec(gi + 1);
            self.dec.truncate(mark);
        }
    }

    fn cell_two(&mut self) {
        let n_cap = self.sbox.n_max.min(GENERAL_N_CAP);
        self.dec.clear();
        self.two_pairs_rec((2, 1), self.mb, self.sbox.r_max, self.dd, n_cap);
        for n in 7..=self.sbox.n_max {
            self.two_reduced(n);
        }
    }

    /// Nondecreasing multisets of `(m, b)` pairs with at least one
    /// multibranch point, in preorder.
    fn two_pairs_rec(&mut self, last: (i64, i64), mb_left: i64, r_left: i64, tri_left: i64, n_left: i64) {
        if self.dec.iter().any(|&(_, b)| b > 1) {
            self.assignments(true);
        }
        if n_left == 0 {
            return;
        }
        let mut m = last.0;
        while m * (m - 1) <= tri_left {
            for b in 1..=m.min(r_left + 1) {
                if (m, b) < last || m - b > mb_left {
                    continue;
                }
                self.dec.push((m, b));
                self.two_pairs_rec(
                    (m, b),
                    mb_left - (m - b),
                    r_left - (b - 1),
                    tri_left - m * (m - 1),
                    n_left - 1,
                );
                self.dec.pop();
            }
            m += 1;
        }
    }

    /// Reduced shapes `{(2,1)^r, (3,1)^s, (2,2)^k2, (A,A)^kA, (m1,B)}` with
    /// branch excess `k2 + (A-1)kA + (B-1)` inside the box.
    fn two_reduced(&mut self, n: i64) {
        let r_max = self.sbox.r_max;
        for big_b in 1..=r_max + 1 {
            for k2 in 0..=r_max - (big_b - 1) {
                let rem = r_max - (big_b - 1) - k2;
                let mut a_cands = vec![(0_i64, 0_i64)];
                for a in 3..=r_max + 1 {
                    for ka in 1..=rem / (a - 1) {
                        a_cands.push((a, ka));
                    }
                }
                for (a, ka) in a_cands {
                    let r_prof = k2 + (a - 1).max(0) * ka + big_b - 1;
                    if !(1..=r_max).contains(&r_prof) {
                        continue;
                    }
                    let t0 = k2 + ka;
                    if n - 1 - t0 < 0 {
                        continue;
                    }
                    for s in 0..n - t0 {
                        let r = n - 1 - t0 - s;
                        let mut lo = big_b.max(2);
                        if s > 0 {
                            lo = lo.max(3);
                        }
                        if ka > 0 {
                            lo = lo.max(a);
                        }
                        let hi = self.p + 2 * self.g - 1 + big_b - r - 2 * s;
                        for m1 in lo..=hi {
                            self.dec.clear();
                            self.dec.resize(r as usize, (2, 1));
                            self.dec.resize((r + s) as usize, (3, 1));
                            self.dec.resize((r + s + k2) as usize, (2, 2));
                            self.dec.resize((r + s + k2 + ka) as usize, (a, a));
                            self.dec.push((m1, big_b));
                            self.assignments(false);
                        }
                    }
                }
            }
        }
    }
}

fn validate(sbox: &SearchBox) -> Result<(), SearchError> {
    for (name, v) in [
        ("g_max", sbox.g_max),
        ("r_max", sbox.r_max),
        ("n_max", sbox.n_max),
        ("p_max", sbox.p_max),
        ("q_slack", sbox.q_slack),
    ] {
        if v < 1 {
            return Err(SearchError::InvalidBox(format!("{name} must be >= 1, got {v}")));
        }
    }
    let family = sbox.family();
    for (i, kind) in sbox.drop_inequalities.iter().enumerate() {
        if kind.family() != family {
            return Err(SearchError::InvalidBox(format!(
                "{} does not belong to the scanned family",
                kind.name()
            )));
        }
        if sbox.drop_inequalities[..i].contains(kind) {
            return Err(SearchError::InvalidBox(format!("{} dropped twice", kind.name())));
        }
    }
    Ok(())
}

/// Exact candidate count of one plain Theorem-One general band: each
/// nonempty multiset under the `sum(m-1)` budget costs its group count
/// plus two (all-minimal and infinity-push assignments).
fn one_plain_count(mb_budget: i64, n_cap: i64) -> u64 {
    fn rec(
        memo: &mut HashMap<(i64, i64, i64), (u64, u64)>,
        v: i64,
        n_left: i64,
        b_left: i64,
    ) -> (u64, u64) {
        if v - 1 > b_left || n_left == 0 {
            return (1, 0);
        }
        if let Some(&hit) = memo.get(&(v, n_left, b_left)) {
            return hit;
        }
        let (mut a, mut b) = rec(memo, v + 1, n_left, b_left);
        let mut c = 1;
        while c <= n_left && c * (v - 1) <= b_left {
            let (sa, sb) = rec(memo, v + 1, n_left - c, b_left - c * (v - 1));
            a = a.saturating_add(sa);
            b = b.saturating_add(sb).saturating_add(sa);
            c += 1;
        }
        memo.insert((v, n_left, b_left), (a, b));
        (a, b)
    }
    let mut memo = HashMap::new();
    let (a, b) = rec(&mut memo, 2, n_cap, mb_budget);
    b.saturating_add(2 * (a - 1))
}

/// Exact candidate count of one sanity-mode general band: decorated
/// multisets under the double-point floor, weighted by group splits. The
/// memo is budget-keyed, so one map serves every `q` of a `(g, p)` slice.
fn one_dropall_count(
    memo: &mut HashMap<(i64, i64, i64), (u64, u64)>,
    tri_budget: i64,
    n_cap: i64,
) -> u64 {
    fn rec(
        memo: &mut HashMap<(i64, i64, i64), (u64, u64)>,
        v: i64,
        n_left: i64,
        t_left: i64,
    ) -> (u64, u64) {
        if v * (v - 1) > t_left || n_left == 0 {
            return (1, 0);
        }
        if let Some(&hit) = memo.get(&(v, n_left, t_left)) {
            return hit;
        }
        let (mut a, mut b) = rec(memo, v + 1, n_left, t_left);
        let mut c = 1;
        while c <= n_left && c * v * (v - 1) <= t_left {
            let (sa, sb) = rec(memo, v + 1, n_left - c, t_left - c * v * (v - 1));
            let splits = (c + 1) as u64;
            a = a.saturating_add(splits.saturating_mul(sa));
            b = b
                .saturating_add(splits.saturating_mul(sb))
                .saturating_add((2 * c as u64).saturating_mul(sa));
            c += 1;
        }
        memo.insert((v, n_left, t_left), (a, b));
        (a, b)
    }
    let (a, b) = rec(memo, 2, n_cap, tri_budget.max(0));
    b.saturating_add(2 * (a - 1))
}

fn one_reduced_count(g: i64, p: i64, n_max: i64) -> u64 {
    let mut total: u64 = 0;
    for n in 7..=n_max {
        for s in 0..n {
            let r = n - 1 - s;
            let lo = if s == 0 { 2 } else { 3 };
            let hi = p + 2 * g - r - 2 * s;
            if hi >= lo {
                total = total.saturating_add(2 * (hi - lo + 1) as u64);
            }
        }
        total = total.saturating_add((n + 1) as u64);
    }
    total
}

/// Overcount of one Theorem-Two general band: the double-point floor is
/// relaxed away and every multiset is charged `n + 2` assignments.
fn two_general_overcount(mb_budget: i64, r_max: i64, n_cap: i64) -> u64 {
    let mut pairs = Vec::new();
    for b in 1..=r_max + 1 {
        for m in b.max(2)..=mb_budget + b {
            pairs.push((m, b));
        }
    }
    pairs.sort_unstable();
    fn rec(
        memo: &mut HashMap<(usize, i64, i64, i64), (u64, u64)>,
        pairs: &[(i64, i64)],
        i: usize,
        n_left: i64,
        mb_left: i64,
        r_left: i64,
    ) -> (u64, u64) {
        if i == pairs.len() || n_left == 0 {
            return (1, 0);
        }
        if let Some(&hit) = memo.get(&(i, n_left, mb_left, r_left)) {
            return hit;
        }
        let (m, b) = pairs[i];
        let (mut a, mut s) = rec(memo, pairs, i + 1, n_left, mb_left, r_left);
        let mut c = 1;
        while c <= n_left && c * (m - b) <= mb_left && c * (b - 1) <= r_left {
            let (sa, ss) = rec(
                memo,
                pairs,
                i + 1,
                n_left - c,
                mb_left - c * (m - b),
                r_left - c * (b - 1),
            );
            a = a.saturating_add(sa);
            s = s.saturating_add(ss).saturating_add((c as u64).saturating_mul(sa));
            c += 1;
        }
        memo.insert((i, n_left, mb_left, r_left), (a, s));
        (a, s)
    }
    let mut memo = HashMap::new();
    let (a, s) = rec(&mut memo, &pairs, 0, n_cap, mb_budget, r_max);
    s.saturating_add(2 * (a - 1))
}

fn two_reduced_count(g: i64, p: i64, n_max: i64, r_max: i64) -> u64 {
    let mut total: u64 = 0;
    for n in 7..=n_max {
        for big_b in 1..=r_max + 1 {
            for k2 in 0..=r_max - (big_b - 1) {
                let rem = r_max - (big_b - 1) - k2;
                let mut a_cands = vec![(0_i64, 0_i64)];
                for a in 3..=r_max + 1 {
                    for ka in 1..=rem / (a - 1) {
                        a_cands.push((a, ka));
                    }
                }
                for (a, ka) in a_cands {
                    let r_prof = k2 + (a - 1).max(0) * ka + big_b - 1;
                    if !(1..=r_max).contains(&r_prof) {
                        continue;
                    }
                    let t0 = k2 + ka;
                    if n - 1 - t0 < 0 {
                        continue;
                    }
                    for s in 0..n - t0 {
                        let r = n - 1 - t0 - s;
                        let mut lo = big_b.max(2);
                        if s > 0 {
                            lo = lo.max(3);
                        }
                        if ka > 0 {
                            lo = lo.max(a);
                        }
                        let hi = p + 2 * g - 1 + big_b - r - 2 * s;
                        if hi >= lo {
                            total = total.saturating_add(2 * (hi - lo + 1) as u64);
                        }
                    }
                }
            }
        }
    }
    total
}

/// Pre-flight candidate count. Exact for Theorem-One boxes; an overcount
/// for Theorem-Two general bands.
fn estimate(sbox: &SearchBox) -> u64 {
    let n_cap = sbox.n_max.min(GENERAL_N_CAP);
    let mut total: u64 = 0;
    for p in 2..=sbox.p_max {
        for g in 0..=sbox.g_max {
            let mb = p + 2 * g - 1;
            match sbox.theorem {
                Theorem::One => {
                    let reduced = one_reduced_count(g, p, sbox.n_max);
                    if sbox.all_dropped() {
                        let mut memo = HashMap::new();
                        for q in p + 1..=p + sbox.q_slack {
                            if q % p == 0 {
                                continue;
                            }
                            let pp = p.gcd(&q);
                            let dd = (p - 1) * (q - 1) - pp + 1 - 2 * g;
                            total = total
                                .saturating_add(one_dropall_count(&mut memo, dd, n_cap))
                                .saturating_add(reduced);
                        }
                    } else {
                        let gen = one_plain_count(mb, n_cap);
                        for q in p + 1..=p + sbox.q_slack {
                            if q % p == 0 {
                                continue;
                            }
                            total = total.saturating_add(gen).saturating_add(reduced);
                        }
                    }
                }
                Theorem::Two => {
                    let gen = two_general_overcount(mb, sbox.r_max, n_cap);
                    let reduced = two_reduced_count(g, p, sbox.n_max, sbox.r_max);
                    for q in p + 1..=p + sbox.q_slack {
                        if q % p == 0 {
                            continue;
                        }
                        total = total.saturating_add(gen).saturating_add(reduced);
                    }
                }
            }
        }
    }
    total
}

/// Run the feasibility search over the box. Workers partition the scan by
/// `p` and merge in ascending `p` order, so the row list is identical
/// under both execution modes.
pub fn feasibility_search(
    sbox: &SearchBox,
    opts: &SearchOptions,
) -> Result<FeasibilityReport, SearchError> {
    validate(sbox)?;
    let estimated = estimate(sbox);
    if estimated > opts.budget {
        return Err(SearchError::BudgetExceeded { estimated, budget: opts.budget });
    }
    let table = HoldsTable::build(sbox);
    let parts: Vec<(Vec<FeasibilityRow>, u64, bool)> =
        filter_map_range(opts.mode, 2, sbox.p_max + 1, |p| {
            let mut scanner = Scanner::new(sbox, &table, opts.max_rows);
            scanner.scan_p(p);
            Some((scanner.rows, scanner.scanned, scanner.truncated))
        });
    let mut rows = Vec::new();
    let mut scanned: u64 = 0;
    let mut truncated = false;
    for (part_rows, part_scanned, part_truncated) in parts {
        scanned += part_scanned;
        truncated |= part_truncated;
        for row in part_rows {
            if rows.len() < opts.max_rows {
                rows.push(row);
            } else {
                truncated = true;
                break;
            }
        }
    }
    Ok(FeasibilityReport {
        theorem: sbox.theorem,
        estimated,
        scanned_count: scanned,
        dropped: sbox.drop_inequalities.clone(),
        truncated,
        feasible_configs: rows,
    })
}
