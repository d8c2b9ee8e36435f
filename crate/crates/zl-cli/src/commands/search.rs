//! `zl search`: scan a parameter box for counterexample configurations.
//!
//! With the full inequality gate the scan proves a box empty: exit 0 means
//! no curve shape in the box beats every bound while satisfying the
//! constraint system, exit 1 means a counterexample row was listed. With
//! `--drop` the run is a survey of what the remaining constraints allow,
//! so listed rows are expected and the exit code stays 0. A pre-flight
//! estimate above `--budget` aborts with exit 2 before any scanning.

use anyhow::Result;
use serde_json::json;
use zl_core::bounds::BoundKind;
use zl_core::par::ExecMode;
use zl_core::verify::{
    feasibility_search, FeasibilityReport, FeasibilityRow, SearchBox, SearchError,
};

use crate::output::{self, OutputFormat, RenderOpts, SCHEMA};

pub fn run(
    sbox: &SearchBox,
    opts: &zl_core::verify::SearchOptions,
    render: RenderOpts,
) -> Result<(String, i32)> {
    let report = match feasibility_search(sbox, opts) {
        Ok(report) => report,
        Err(err @ SearchError::BudgetExceeded { .. }) => {
            eprintln!("error: {err}");
            return Ok((String::new(), 2));
        }
        Err(err @ SearchError::InvalidBox(_)) => {
            eprintln!("error: {err}");
            return Ok((String::new(), 2));
        }
    };

    let exit = if sbox.drop_inequalities.is_empty() {
        i32::from(!report.is_empty())
    } else {
        0
    };

    let text = match render.format {
        OutputFormat::Json => {
            let doc = json!({
                "schema": SCHEMA,
                "command": "search",
                "box": sbox,
                "report": &report,
            });
            output::json_string(&doc)?
        }
        OutputFormat::Csv => render_csv(&report)?,
        OutputFormat::Table => render_table(sbox, &report, opts.mode),
    };
    Ok((text, exit))
}

/// The `points` column packs the finite-distance singular points as
/// `m:b:ext` triples joined by `;`.
fn points_column(row: &FeasibilityRow) -> String {
    row.points
        .iter()
        .map(|(m, b, ext)| format!("{m}:{b}:{ext}"))
        .collect::<Vec<_>>()
        .join(";")
}

const CSV_HEADERS: [&str; 12] = [
    "g", "R", "n", "p", "q", "p_prime", "nu_prime_inf", "points", "double_points", "energy",
    "declared_gap", "delta_gap",
];

fn row_cells(row: &FeasibilityRow) -> Vec<String> {
    vec![
        row.g.to_string(),
        row.big_r.to_string(),
        row.n.to_string(),
        row.p.to_string(),
        row.q.to_string(),
        row.p_prime.to_string(),
        row.nu_prime_inf.to_string(),
        points_column(row),
        row.double_points.to_string(),
        row.energy.to_string(),
        row.declared_gap.to_string(),
        row.delta_gap.to_string(),
    ]
}

/// CSV carries only the data rows; the scan summary lives in the table and
/// JSON formats.
fn render_csv(report: &FeasibilityReport) -> Result<String> {
    let rows: Vec<Vec<String>> = report.feasible_configs.iter().map(row_cells).collect();
    output::csv_string(&CSV_HEADERS, &rows)
}

fn render_table(sbox: &SearchBox, report: &FeasibilityReport, mode: ExecMode) -> String {
    let dropped = if report.dropped.is_empty() {
        "none".to_string()
    } else {
        report
            .dropped
            .iter()
            .map(|k: &BoundKind| k.name())
            .collect::<Vec<_>>()
            .join(",")
    };
    let mut out = format!(
        "box: g <= {}, R <= {}, n <= {}, p <= {}, q <= p+{}\n\
         dropped inequalities: {}\n\
         candidates: {} estimated, {} scanned ({:?})\n\
         rows: {}{}\n",
        sbox.g_max,
        sbox.r_max,
        sbox.n_max,
        sbox.p_max,
        sbox.q_slack,
        dropped,
        report.estimated,
        report.scanned_count,
        mode,
        report.feasible_configs.len(),
        if report.truncated { " (truncated)" } else { "" },
    );
    if !report.feasible_configs.is_empty() {
        let rows: Vec<Vec<String>> = report.feasible_configs.iter().map(row_cells).collect();
        out.push('\n');
        out.push_str(&output::table(&CSV_HEADERS, &rows));
    }
    out
}
