//! The three experimental linear caps on the unibranched envelope.
//!
//! Each cap is checked pointwise against the exact envelope on the window
//! `[0, 746]`; past the window the envelope equals its linear member of
//! slope `24/11`, which every cap eventually outgrows. The caps do not all
//! hold individually from `g = 0` (the steepest one starts at `g = 6`), so
//! the report records a validity onset per cap and verifies that their
//! pointwise maximum covers the whole window.

use serde::Serialize;

use crate::bounds::{envelope, Family, GenusProfile};
use crate::exact::Rat;
use crate::par::{filter_map_range, ExecMode};

/// Top of the scan window: the last genus before the linear family member
/// takes over the envelope.
pub const ENVELOPE_SCAN_MAX: i64 = 746;

/// One linear cap `slope * g + intercept` with its exact validity record.
#[derive(Debug, Clone, Serialize)]
pub struct EnvelopeLine {
    pub label: &'static str,
    pub slope: Rat,
    pub intercept: Rat,
    /// Minimal `g` from which the cap holds through the window top; `None`
    /// when it still fails at the top.
    pub valid_from: Option<i64>,
    pub failures: Vec<i64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct EnvelopeReport {
    pub g_max: i64,
    pub lines: Vec<EnvelopeLine>,
    /// The pointwise max of the three caps dominates the envelope on the
    /// whole window.
    pub max_covers_all: bool,
    pub max_failures: Vec<i64>,
}

impl EnvelopeReport {
    pub fn ok(&self) -> bool {
        self.max_covers_all
    }
}

const LINES: [(&str, (i64, i64), (i64, i64)); 3] = [
    ("3g + 3/2", (3, 1), (3, 2)),
    ("12g/5 + 6", (12, 5), (6, 1)),
    ("11g/5 + 20", (11, 5), (20, 1)),
];

/// Compares each cap with the exact unibranched envelope on `[0, 746]`.
pub fn check_envelopes(mode: ExecMode) -> EnvelopeReport {
    let marks: Vec<(i64, [bool; 3])> = filter_map_range(mode, 0, ENVELOPE_SCAN_MAX + 1, |g| {
        let profile = GenusProfile::new(g as u32, 0);
        let env = envelope(&profile, Family::I).expect("unibranched family ignores R");
        let gq = Rat::int(g);
        let mut fails = [false; 3];
        for (i, (_, slope, intercept)) in LINES.iter().enumerate() {
            let cap = Rat::new(slope.0, slope.1) * &gq + Rat::new(intercept.0, intercept.1);
            fails[i] = env.cmp_rat(&cap) == std::cmp::Ordering::Greater;
        }
        fails.iter().any(|&f| f).then_some((g, fails))
    });

    let lines = LINES
        .iter()
        .enumerate()
        .map(|(i, (label, slope, intercept))| {
            let failures: Vec<i64> = marks
                .iter()
                .filter(|(_, fails)| fails[i])
                .map(|&(g, _)| g)
                .collect();
            let valid_from = match failures.last() {
                Some(&g) if g == ENVELOPE_SCAN_MAX => None,
                Some(&g) => Some(g + 1),
                None => Some(0),
            };
            EnvelopeLine {
                label,
                slope: Rat::new(slope.0, slope.1),
                intercept: Rat::new(intercept.0, intercept.1),
                valid_from,
                failures,
            }
        })
        .collect();

    let max_failures: Vec<i64> = marks
        .iter()
        .filter(|(_, fails)| fails.iter().all(|&f| f))
        .map(|&(g, _)| g)
        .collect();

    EnvelopeReport {
        g_max: ENVELOPE_SCAN_MAX,
        lines,
        max_covers_all: max_failures.is_empty(),
        max_failures,
    }
}
