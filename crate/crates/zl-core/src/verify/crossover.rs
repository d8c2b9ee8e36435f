//! Where the linear family member takes over its envelope.
//!
//! In both families the `b` member is the only one with an empty radicand,
//! so on a tail `[g*, oo)` its lead over a competitor `x` is equivalent to
//! two polynomial sign conditions: `L_b - L_x >= 0` and
//! `(L_b - L_x)^2 - S_x >= 0`, where `L` is the linear part and `S` the
//! radicand. Both polynomials are at most quadratic in `g`, which turns an
//! unbounded dominance claim into a finite exact check: a scan finds the
//! integer onset, the certificates cover every real point past it.

use std::cmp::Ordering;

use serde::Serialize;

use crate::bounds::{eval_bound, BoundDef, BoundKind, Family, GenusProfile};
use crate::exact::{poly_eval, poly_identity_check, poly_mul, poly_scale, poly_sub, Rat, Surd};
use crate::par::{filter_map_range, ExecMode};

/// Top of the unibranched dominance scan.
pub const CROSSOVER_I_SCAN_MAX: i64 = 2000;

/// Width of the per-`R` multibranched scan window.
pub const CROSSOVER_J_WINDOW: i64 = 50;

/// The linear part of a bound as a polynomial in `g`, at fixed `R`:
/// `[constant, slope]`.
fn linear_in_g(def: &BoundDef, big_r: &Rat) -> Vec<Rat> {
    vec![&def.linear[1] * big_r + &def.linear[2], def.linear[0].clone()]
}

/// The radicand of a bound as a polynomial in `g`, at fixed `R`.
fn radicand_in_g(def: &BoundDef, big_r: &Rat) -> Vec<Rat> {
    vec![
        &def.radicand[2] * big_r.square() + &def.radicand[4] * big_r + &def.radicand[5],
        &def.radicand[1] * big_r + &def.radicand[3],
        def.radicand[0].clone(),
    ]
}

/// Whether `p(g) >= 0` for every real `g >= from`, for `deg p <= 2`.
///
/// Quadratics use leading-sign plus root-location analysis: an upward
/// parabola is nonnegative on the tail iff it has no real roots or `from`
/// sits at or beyond the larger one (value and slope both nonnegative).
fn poly_nonneg_from(p: &[Rat], from: &Rat) -> bool {
    let mut deg = p.len();
    while deg > 0 && p[deg - 1].is_zero() {
        deg -= 1;
    }
    match deg {
        0 => true,
        1 => !p[0].is_negative(),
        2 => !p[1].is_negative() && !poly_eval(p, from).is_negative(),
        3 => {
            if p[2].is_negative() {
                return false;
            }
            let disc = p[1].square() - Rat::int(4) * &p[2] * &p[0];
            if !disc.is_positive() {
                return true;
            }
            let slope_at = Rat::int(2) * &p[2] * from + &p[1];
            !poly_eval(p, from).is_negative() && !slope_at.is_negative()
        }
        _ => unreachable!("tail polynomials are at most quadratic"),
    }
}

/// Exact proof that the champion stays at or above one competitor for all
/// real `g >= onset`, at the branch count the certificate was built with.
#[derive(Debug, Clone, Serialize)]
pub struct TailCertificate {
    pub competitor: &'static str,
    pub onset: i64,
    /// `L_b - L_x` as `[constant, slope]`.
    pub diff: Vec<Rat>,
    /// `(L_b - L_x)^2 - S_x`, low degree first.
    pub gap: Vec<Rat>,
    pub ok: bool,
}

fn tail_certificate(
    champion: BoundKind,
    competitor: BoundKind,
    big_r: i64,
    onset: i64,
) -> TailCertificate {
    let r = Rat::int(big_r);
    let champ = champion.def();
    debug_assert!(champ.radicand.iter().all(Rat::is_zero));
    let rival = competitor.def();
    let diff = poly_sub(&linear_in_g(&champ, &r), &linear_in_g(&rival, &r));
    let gap = poly_sub(&poly_mul(&diff, &diff), &radicand_in_g(&rival, &r));
    let from = Rat::int(onset);
    let ok = poly_nonneg_from(&diff, &from) && poly_nonneg_from(&gap, &from);
    TailCertificate {
        competitor: competitor.name(),
        onset,
        diff,
        gap,
        ok,
    }
}

/// A scanned genus where some competitor still beats the champion, with the
/// strongest competitor's exact value.
#[derive(Debug, Clone, Serialize)]
pub struct FailurePoint {
    pub g: i64,
    pub winner: &'static str,
    pub winner_value: Surd,
    pub champion_value: Surd,
}

fn strongest_rival(champion: BoundKind, g: i64, big_r: i64) -> Option<FailurePoint> {
    let profile = GenusProfile::new(g as u32, big_r as u32);
    let champ = eval_bound(champion, &profile).expect("profile in range");
    let mut worst: Option<(BoundKind, Surd)> = None;
    for kind in champion.family().members() {
        if kind == champion {
            continue;
        }
        let v = eval_bound(kind, &profile).expect("profile in range");
        if v > champ {
            worst = match worst {
                Some((wk, wv)) if wv >= v => Some((wk, wv)),
                _ => Some((kind, v)),
            };
        }
    }
    worst.map(|(kind, value)| FailurePoint {
        g,
        winner: kind.name(),
        winner_value: value,
        champion_value: champ,
    })
}

/// Closed form of the squared gap against the strongest rival:
/// `gap(g) = scale * monic(g)`, checked against the expanded product by
/// exact coefficient comparison.
#[derive(Debug, Clone, Serialize)]
pub struct GapIdentity {
    pub competitor: &'static str,
    pub scale: Rat,
    /// Monic closed form, low degree first.
    pub monic: Vec<Rat>,
    pub ok: bool,
}

/// Strict bracket for the crossover root, the larger zero of the monic gap:
/// `low < root < high` by exact surd comparison.
#[derive(Debug, Clone, Serialize)]
pub struct RootBracket {
    pub root: Surd,
    pub low: i64,
    pub high: i64,
    pub inside: bool,
}

fn bracket_larger_root(monic: &[Rat], low: i64, high: i64) -> RootBracket {
    debug_assert_eq!(monic.len(), 3);
    debug_assert!(monic[2] == Rat::one());
    let half = &monic[1] / &Rat::int(2);
    let root = Surd::new(-&half, half.square() - &monic[0]).expect("two real roots");
    let inside = root.cmp_rat(&Rat::int(low)) == Ordering::Greater
        && root.cmp_rat(&Rat::int(high)) == Ordering::Less;
    RootBracket {
        root,
        low,
        high,
        inside,
    }
}

/// Result of the unibranched dominance scan.
#[derive(Debug, Clone, Serialize)]
pub struct CrossoverIReport {
    /// Minimal scanned genus from which the champion leads through the top
    /// of the window (and, by the certificates, forever after).
    pub onset: i64,
    pub scan_max: i64,
    pub last_failure: Option<FailurePoint>,
    pub certificates: Vec<TailCertificate>,
    pub certified: bool,
    pub gap_identity: GapIdentity,
    pub root_bracket: RootBracket,
}

impl CrossoverIReport {
    pub fn ok(&self) -> bool {
        self.certified && self.gap_identity.ok && self.root_bracket.inside
    }
}

/// Scans `g = 0..=2000` for dominance of `I_b` over the other five family
/// members, then certifies the tail and the closed-form crossover root.
pub fn find_crossover_i(mode: ExecMode) -> CrossoverIReport {
    let champion = BoundKind::Ib;
    let failures: Vec<FailurePoint> = filter_map_range(mode, 0, CROSSOVER_I_SCAN_MAX + 1, |g| {
        strongest_rival(champion, g, 0)
    });
    let last_failure = failures.last().cloned();
    let onset = last_failure.as_ref().map_or(0, |f| f.g + 1);

    let certificates: Vec<TailCertificate> = Family::I
        .members()
        .iter()
        .filter(|&&k| k != champion)
        .map(|&k| tail_certificate(champion, k, 0, onset))
        .collect();
    let certified = certificates.iter().all(|c| c.ok);

    let gap_identity = i_gap_identity();
    let root_bracket = bracket_larger_root(&gap_identity.monic, onset - 1, onset);

    CrossoverIReport {
        onset,
        scan_max: CROSSOVER_I_SCAN_MAX,
        last_failure,
        certificates,
        certified,
        gap_identity,
        root_bracket,
    }
}

/// `(L_b - L_f)^2 - S_f = (6/847) (g^2 - (2239/3) g - 857/12)`.
fn i_gap_identity() -> GapIdentity {
    let champion = BoundKind::Ib.def();
    let rival = BoundKind::If.def();
    let zero = Rat::zero();
    let diff = poly_sub(&linear_in_g(&champion, &zero), &linear_in_g(&rival, &zero));
    let gap = poly_sub(&poly_mul(&diff, &diff), &radicand_in_g(&rival, &zero));
    let scale = Rat::new(6, 847);
    let monic = vec![Rat::new(-857, 12), Rat::new(-2239, 3), Rat::one()];
    let ok = poly_identity_check(&gap, &poly_scale(&monic, &scale));
    GapIdentity {
        competitor: BoundKind::If.name(),
        scale,
        monic,
        ok,
    }
}

/// One multibranched dominance window, scanned and certified at fixed `R`.
#[derive(Debug, Clone, Serialize)]
pub struct CrossoverJRow {
    #[serde(rename = "R")]
    pub big_r: i64,
    /// Minimal scanned genus from which `J_b` leads through the window top.
    pub onset: i64,
    pub scan_from: i64,
    pub scan_to: i64,
    pub dominant_throughout: bool,
    pub identity_ok: bool,
    pub certified: bool,
}

impl CrossoverJRow {
    pub fn ok(&self) -> bool {
        self.dominant_throughout && self.identity_ok && self.certified
    }
}

/// Scans the window `[max(0, 752 - 3R), +50]` for dominance of `J_b`,
/// certifies the tail past the onset, and checks the square-completion
/// identity `(L_b - L_f)^2 - S_f = (6/847) ((g + 3R - 376)^2 - 565917/4
/// + 1936 R)` at this `R`.
pub fn find_crossover_j(big_r: i64) -> CrossoverJRow {
    assert!(big_r >= 1, "the multibranched family needs R >= 1");
    let champion = BoundKind::Jb;
    let scan_from = (752 - 3 * big_r).max(0);
    let scan_to = scan_from + CROSSOVER_J_WINDOW;

    let mut last_fail = None;
    for g in scan_from..=scan_to {
        if strongest_rival(champion, g, big_r).is_some() {
            last_fail = Some(g);
        }
    }
    let onset = last_fail.map_or(scan_from, |g| g + 1);

    let certified = Family::J
        .members()
        .iter()
        .filter(|&&k| k != champion)
        .all(|&k| tail_certificate(champion, k, big_r, onset).ok);

    CrossoverJRow {
        big_r,
        onset,
        scan_from,
        scan_to,
        dominant_throughout: last_fail.is_none(),
        identity_ok: j_gap_identity(big_r),
        certified,
    }
}

fn j_gap_identity(big_r: i64) -> bool {
    let r = Rat::int(big_r);
    let champion = BoundKind::Jb.def();
    let rival = BoundKind::Jf.def();
    let diff = poly_sub(&linear_in_g(&champion, &r), &linear_in_g(&rival, &r));
    let gap = poly_sub(&poly_mul(&diff, &diff), &radicand_in_g(&rival, &r));
    let shift = Rat::int(3) * &r - Rat::int(376);
    let monic = vec![
        shift.square() - Rat::new(565917, 4) + Rat::int(1936) * &r,
        Rat::int(2) * &shift,
        Rat::one(),
    ];
    poly_identity_check(&gap, &poly_scale(&monic, &Rat::new(6, 847)))
}

#[derive(Debug, Clone, Serialize)]
pub struct CrossoverJReport {
    pub r_max: i64,
    pub rows: Vec<CrossoverJRow>,
    pub ok: bool,
}

/// [`find_crossover_j`] for every `R in 1..=r_max`.
pub fn crossover_j_sweep(r_max: i64, mode: ExecMode) -> CrossoverJReport {
    assert!(r_max >= 1);
    let rows = filter_map_range(mode, 1, r_max + 1, |r| Some(find_crossover_j(r)));
    let ok = rows.iter().all(CrossoverJRow::ok);
    CrossoverJReport { r_max, rows, ok }
}
