//! The three-term exchange inequality used when reordering tangency
//! contributions: `zx(x - z) + zy(z - y) + xy(y - x) > 0` on every integer
//! triple `2 <= x < y < z`.

use serde::Serialize;

use crate::par::{filter_map_range, ExecMode};

#[derive(Debug, Clone, Serialize)]
pub struct ExchangeReport {
    pub limit: i64,
    pub ok: bool,
    pub checked: u64,
    pub min_value: i64,
    /// Lexicographically first triple attaining the minimum.
    pub min_at: (i64, i64, i64),
    pub violations: Vec<(i64, i64, i64, i64)>,
}

pub fn exchange_term(x: i64, y: i64, z: i64) -> i64 {
    z * x * (x - z) + z * y * (z - y) + x * y * (y - x)
}

/// Checks the exchange inequality on all `2 <= x < y < z <= limit`.
pub fn check_exchange(limit: i64, mode: ExecMode) -> ExchangeReport {
    assert!(limit >= 4, "no ordered triple fits below 2 < 3 < 4");

    struct Block {
        checked: u64,
        min_value: i64,
        min_at: (i64, i64, i64),
        violations: Vec<(i64, i64, i64, i64)>,
    }

    let blocks: Vec<Block> = filter_map_range(mode, 2, limit - 1, |x| {
        let mut block = Block {
            checked: 0,
            min_value: i64::MAX,
            min_at: (0, 0, 0),
            violations: Vec::new(),
        };
        for y in x + 1..limit {
            for z in y + 1..=limit {
                let v = exchange_term(x, y, z);
                block.checked += 1;
                if v < block.min_value {
                    block.min_value = v;
                    block.min_at = (x, y, z);
                }
                if v <= 0 {
                    block.violations.push((x, y, z, v));
                }
            }
        }
        Some(block)
    });

    let mut report = ExchangeReport {
        limit,
        ok: true,
        checked: 0,
        min_value: i64::MAX,
        min_at: (0, 0, 0),
        violations: Vec::new(),
    };
    for block in blocks {
        report.checked += block.checked;
        if block.min_value < report.min_value {
            report.min_value = block.min_value;
            report.min_at = block.min_at;
        }
        report.violations.extend(block.violations);
    }
    report.ok = report.violations.is_empty();
    report
}
