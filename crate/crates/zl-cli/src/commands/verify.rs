//! `zl verify`: re-run one of the batch verifications.
//!
//! Exit code 0 when the check certifies, 1 when it finds violations; the
//! violating rows are part of the output in every format.

use anyhow::Result;
use serde::Serialize;
use serde_json::json;
use zl_core::chains::{check_chain_lemmas, LemmaGrid, LemmaReport};
use zl_core::par::ExecMode;
use zl_core::verify::{
    check_envelopes, check_exchange, check_zl_finite, crossover_j_sweep, find_crossover_i,
    CrossoverIReport, CrossoverJReport, EnvelopeReport, ExchangeReport, ZlReport,
};

use crate::output::{self, OutputFormat, RenderOpts, SCHEMA};

pub enum Target {
    CrossoverI,
    CrossoverJ { r_max: i64 },
    Zl { max_sum: i64 },
    Envelopes,
    Exchange { limit: i64 },
    Lemmas { grid: LemmaGrid },
}

pub fn run(target: Target, mode: ExecMode, opts: RenderOpts) -> Result<(String, i32)> {
    match target {
        Target::CrossoverI => {
            let report = find_crossover_i(mode);
            render("crossover-i", report.ok(), &report, opts, crossover_i_csv)
        }
        Target::CrossoverJ { r_max } => {
            let report = crossover_j_sweep(r_max, mode);
            render("crossover-j", report.ok, &report, opts, crossover_j_csv)
        }
        Target::Zl { max_sum } => {
            let report = check_zl_finite(max_sum, mode);
            render("zl", report.ok(), &report, opts, zl_csv)
        }
        Target::Envelopes => {
            let report = check_envelopes(mode);
            render("envelopes", report.ok(), &report, opts, envelopes_csv)
        }
        Target::Exchange { limit } => {
            let report = check_exchange(limit, mode);
            render("exchange", report.ok, &report, opts, exchange_csv)
        }
        Target::Lemmas { grid } => {
            let grid = LemmaGrid { mode, ..grid };
            let report = check_chain_lemmas(&grid);
            render("lemmas", report.ok(), &report, opts, lemmas_csv)
        }
    }
}

type CsvFn<R> = fn(&R) -> (Vec<&'static str>, Vec<Vec<String>>);

fn render<R: Serialize + TableView>(
    target: &str,
    ok: bool,
    report: &R,
    opts: RenderOpts,
    csv_view: CsvFn<R>,
) -> Result<(String, i32)> {
    let text = match opts.format {
        OutputFormat::Json => {
            let doc = json!({
                "schema": SCHEMA,
                "command": "verify",
                "target": target,
                "ok": ok,
                "report": report,
            });
            output::json_string(&doc)?
        }
        OutputFormat::Csv => {
            let (headers, rows) = csv_view(report);
            output::csv_string(&headers, &rows)?
        }
        OutputFormat::Table => {
            let mut text = report.table_view();
            text.push_str(if ok { "result: certified\n" } else { "result: VIOLATIONS FOUND\n" });
            text
        }
    };
    Ok((text, i32::from(!ok)))
}

/// Plain-text rendering of one report type.
trait TableView {
    fn table_view(&self) -> String;
}

impl TableView for CrossoverIReport {
    fn table_view(&self) -> String {
        let mut out = format!(
            "crossover onset: {} (scan up to {})\n",
            self.onset, self.scan_max
        );
        if let Some(f) = &self.last_failure {
            out.push_str(&format!(
                "last non-dominant point: g = {}, {} = {} vs champion {}\n",
                f.g, f.winner, f.winner_value, f.champion_value
            ));
        }
        out.push_str(&format!(
            "root bracket: {} inside ({}, {}): {}\n",
            self.root_bracket.root, self.root_bracket.low, self.root_bracket.high,
            self.root_bracket.inside
        ));
        out.push_str(&format!(
            "gap identity vs {}: scale {}, ok: {}\n\n",
            self.gap_identity.competitor, self.gap_identity.scale, self.gap_identity.ok
        ));
        let rows: Vec<Vec<String>> = self
            .certificates
            .iter()
            .map(|c| vec![c.competitor.to_string(), c.onset.to_string(), c.ok.to_string()])
            .collect();
        out.push_str(&output::table(&["competitor", "onset", "certified"], &rows));
        out
    }
}

fn crossover_i_csv(report: &CrossoverIReport) -> (Vec<&'static str>, Vec<Vec<String>>) {
    let mut rows = vec![vec![
        "summary".to_string(),
        report.gap_identity.competitor.to_string(),
        report.onset.to_string(),
        report.ok().to_string(),
    ]];
    for c in &report.certificates {
        rows.push(vec![
            "tail".to_string(),
            c.competitor.to_string(),
            c.onset.to_string(),
            c.ok.to_string(),
        ]);
    }
    (vec!["row", "competitor", "onset", "ok"], rows)
}

impl TableView for CrossoverJReport {
    fn table_view(&self) -> String {
        let rows: Vec<Vec<String>> = self
            .rows
            .iter()
            .map(|r| {
                vec![
                    r.big_r.to_string(),
                    r.onset.to_string(),
                    format!("{}..{}", r.scan_from, r.scan_to),
                    r.dominant_throughout.to_string(),
                    r.identity_ok.to_string(),
                    r.certified.to_string(),
                ]
            })
            .collect();
        let mut out = format!("per-R crossover sweep, R = 1..={}\n\n", self.r_max);
        out.push_str(&output::table(
            &["R", "onset", "scan", "dominant", "identity", "certified"],
            &rows,
        ));
        out
    }
}

fn crossover_j_csv(report: &CrossoverJReport) -> (Vec<&'static str>, Vec<Vec<String>>) {
    let rows = report
        .rows
        .iter()
        .map(|r| {
            vec![
                r.big_r.to_string(),
                r.onset.to_string(),
                r.scan_from.to_string(),
                r.scan_to.to_string(),
                r.dominant_throughout.to_string(),
                r.identity_ok.to_string(),
                r.certified.to_string(),
            ]
        })
        .collect();
    (
        vec!["R", "onset", "scan_from", "scan_to", "dominant_throughout", "identity_ok", "certified"],
        rows,
    )
}

impl TableView for ZlReport {
    fn table_view(&self) -> String {
        let mut out = format!(
            "profiles with g + 3R <= {}: {} scanned, {} exception(s)\n\n",
            self.max_sum,
            self.scanned,
            self.exceptions.len()
        );
        let rows: Vec<Vec<String>> = self
            .exceptions
            .iter()
            .map(|e| {
                vec![
                    e.g.to_string(),
                    e.r.to_string(),
                    e.floor_envelope.to_string(),
                    e.cap.to_string(),
                    e.refined_ok.to_string(),
                ]
            })
            .collect();
        out.push_str(&output::table(
            &["g", "R", "floor_envelope", "cap", "refined_ok"],
            &rows,
        ));
        out
    }
}

fn zl_csv(report: &ZlReport) -> (Vec<&'static str>, Vec<Vec<String>>) {
    let rows = report
        .exceptions
        .iter()
        .map(|e| {
            vec![
                e.g.to_string(),
                e.r.to_string(),
                e.floor_envelope.to_string(),
                e.cap.to_string(),
                e.refined_ok.to_string(),
            ]
        })
        .collect();
    (vec!["g", "R", "floor_envelope", "cap", "refined_ok"], rows)
}

impl TableView for EnvelopeReport {
    fn table_view(&self) -> String {
        let rows: Vec<Vec<String>> = self
            .lines
            .iter()
            .map(|l| {
                vec![
                    l.label.to_string(),
                    l.slope.to_string(),
                    l.intercept.to_string(),
                    l.valid_from.map(|v| v.to_string()).unwrap_or_else(|| "never".to_string()),
                    l.failures.len().to_string(),
                ]
            })
            .collect();
        let mut out = format!("linear covers over g = 0..={}\n\n", self.g_max);
        out.push_str(&output::table(
            &["line", "slope", "intercept", "valid_from", "failures"],
            &rows,
        ));
        out.push_str(&format!(
            "\nmax of the three covers everywhere: {}\n",
            self.max_covers_all
        ));
        out
    }
}

fn envelopes_csv(report: &EnvelopeReport) -> (Vec<&'static str>, Vec<Vec<String>>) {
    let rows = report
        .lines
        .iter()
        .map(|l| {
            vec![
                l.label.to_string(),
                l.slope.to_string(),
                l.intercept.to_string(),
                l.valid_from.map(|v| v.to_string()).unwrap_or_default(),
                join_i64(&l.failures),
            ]
        })
        .collect();
    (vec!["line", "slope", "intercept", "valid_from", "failures"], rows)
}

impl TableView for ExchangeReport {
    fn table_view(&self) -> String {
        let mut out = format!(
            "exchange terms over 2 <= x < y < z <= {}: {} checked, minimum {} at {:?}\n",
            self.limit, self.checked, self.min_value, self.min_at
        );
        if !self.violations.is_empty() {
            let rows: Vec<Vec<String>> = self
                .violations
                .iter()
                .map(|(x, y, z, v)| {
                    vec![x.to_string(), y.to_string(), z.to_string(), v.to_string()]
                })
                .collect();
            out.push('\n');
            out.push_str(&output::table(&["x", "y", "z", "value"], &rows));
        }
        out
    }
}

fn exchange_csv(report: &ExchangeReport) -> (Vec<&'static str>, Vec<Vec<String>>) {
    let rows = report
        .violations
        .iter()
        .map(|(x, y, z, v)| vec![x.to_string(), y.to_string(), z.to_string(), v.to_string()])
        .collect();
    (vec!["x", "y", "z", "value"], rows)
}

impl TableView for LemmaReport {
    fn table_view(&self) -> String {
        let rows: Vec<Vec<String>> = self
            .checks
            .iter()
            .map(|c| {
                vec![
                    c.name.clone(),
                    c.points.to_string(),
                    c.failures.to_string(),
                    c.note.clone().unwrap_or_default(),
                ]
            })
            .collect();
        let mut out = format!("{} lemma checks, {} points\n\n", self.checks.len(), self.total_points());
        out.push_str(&output::table(&["lemma", "points", "failures", "note"], &rows));
        for check in &self.checks {
            for cx in &check.counterexamples {
                out.push_str(&format!("counterexample [{}]: {}\n", check.name, cx));
            }
        }
        out
    }
}

fn lemmas_csv(report: &LemmaReport) -> (Vec<&'static str>, Vec<Vec<String>>) {
    let rows = report
        .checks
        .iter()
        .map(|c| {
            vec![
                c.name.clone(),
                c.points.to_string(),
                c.failures.to_string(),
                c.counterexamples.join("; "),
                c.note.clone().unwrap_or_default(),
            ]
        })
        .collect();
    (vec!["lemma", "points", "failures", "counterexamples", "note"], rows)
}

fn join_i64(values: &[i64]) -> String {
    values
        .iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(";")
}
