//! Exhaustive scan of the finite exception set.
//!
//! Over every profile with `g + 3R <= max_sum` the integer part of the
//! multibranched envelope is expected to stay within the singular-point cap
//! `2(2g + R) + 1`; the scan returns the profiles where it does not. At the
//! full window width the exception set is exactly `(0, 1)` and `(0, 2)`,
//! and both are cleared by the sharpened per-profile maximum.

use num_traits::ToPrimitive;
use serde::Serialize;

use crate::bounds::{envelope, refined_max_n, zl_bound, Family, GenusProfile};
use crate::par::{flat_map_range, ExecMode};

/// A profile where the envelope's integer part exceeds the cap.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ZlException {
    pub g: u32,
    #[serde(rename = "R")]
    pub r: u32,
    pub floor_envelope: i64,
    pub cap: i64,
    /// Whether the sharpened per-profile maximum clears the cap anyway.
    pub refined_ok: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct ZlReport {
    pub max_sum: i64,
    pub scanned: u64,
    /// In scan order: `g` ascending, then `R`.
    pub exceptions: Vec<ZlException>,
}

impl ZlReport {
    /// The known exceptions reachable under `g + 3R <= max_sum`.
    pub fn expected_exceptions(max_sum: i64) -> Vec<(u32, u32)> {
        [(0u32, 1u32), (0, 2)]
            .into_iter()
            .filter(|&(g, r)| i64::from(g) + 3 * i64::from(r) <= max_sum)
            .collect()
    }

    /// The scan confirms the cap iff nothing beyond the known exceptions
    /// shows up and the refinement clears those.
    pub fn ok(&self) -> bool {
        self.exceptions
            .iter()
            .map(|e| (e.g, e.r))
            .eq(Self::expected_exceptions(self.max_sum))
            && self.exceptions.iter().all(|e| e.refined_ok)
    }
}

/// Scans all integer profiles `g >= 0`, `R >= 1` with `g + 3R <= max_sum`
/// and reports those where `floor(J(g, R)) > 2(2g + R) + 1`.
pub fn check_zl_finite(max_sum: i64, mode: ExecMode) -> ZlReport {
    assert!(max_sum >= 3, "no profile has g + 3R < 3");
    let exceptions = flat_map_range(mode, 0, max_sum - 2, |g| {
        let mut out = Vec::new();
        for r in 1..=(max_sum - g) / 3 {
            let profile = GenusProfile::new(g as u32, r as u32);
            let floor = envelope(&profile, Family::J)
                .expect("R >= 1")
                .floor()
                .to_i64()
                .expect("envelope floor fits i64");
            let cap = zl_bound(&profile) as i64;
            if floor > cap {
                let refined = refined_max_n(&profile, Family::J).expect("R >= 1");
                out.push(ZlException {
                    g: g as u32,
                    r: r as u32,
                    floor_envelope: floor,
                    cap,
                    refined_ok: refined <= cap,
                });
            }
        }
        out
    });
    let scanned = (0..=max_sum - 3).map(|g| ((max_sum - g) / 3) as u64).sum();
    ZlReport {
        max_sum,
        scanned,
        exceptions,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_window_finds_both_exceptions() {
        let report = check_zl_finite(10, ExecMode::Sequential);
        assert_eq!(
            report
                .exceptions
                .iter()
                .map(|e| (e.g, e.r))
                .collect::<Vec<_>>(),
            vec![(0, 1), (0, 2)]
        );
        assert_eq!(report.exceptions[0].floor_envelope, 4);
        assert_eq!(report.exceptions[0].cap, 3);
        assert_eq!(report.exceptions[1].floor_envelope, 6);
        assert_eq!(report.exceptions[1].cap, 5);
        assert!(report.exceptions.iter().all(|e| e.refined_ok));
        assert!(report.ok());
    }

    #[test]
    fn narrowest_window_reaches_only_the_first() {
        let report = check_zl_finite(3, ExecMode::Sequential);
        assert_eq!(
            report
                .exceptions
                .iter()
                .map(|e| (e.g, e.r))
                .collect::<Vec<_>>(),
            vec![(0, 1)]
        );
        assert!(report.ok());
        assert_eq!(report.scanned, 1);
    }

    #[test]
    fn scanned_count_matches_the_triangle() {
        let report = check_zl_finite(10, ExecMode::Sequential);
        let brute = (0..=10)
            .flat_map(|g| (1..).take_while(move |r| g + 3 * r <= 10).map(move |r| (g, r)))
            .count() as u64;
        assert_eq!(report.scanned, brute);
    }

    #[test]
    fn parallel_and_sequential_agree() {
        let seq = check_zl_finite(40, ExecMode::Sequential);
        let par = check_zl_finite(40, ExecMode::Parallel);
        assert_eq!(seq.exceptions, par.exceptions);
        assert_eq!(seq.scanned, par.scanned);
    }
}
