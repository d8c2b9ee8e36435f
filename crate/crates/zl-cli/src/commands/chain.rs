//! `zl chain`: replay one proof chain at explicit parameters.
//!
//! The trace lists every intermediate quantity exactly; the verdict line
//! states whether the final gap is positive. A violated precondition names
//! the constraint and exits 2 without printing a partial trace.

use anyhow::Result;
use serde_json::json;
use zl_core::chains::{
    thm1_finite_chain, thm1_infinity_chain, thm2_finite_chain, thm2_infinity_chain, ChainParams,
    ChainTrace,
};

use crate::output::{self, OutputFormat, RenderOpts, SCHEMA};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Case {
    Finite,
    Infinity,
}

impl Case {
    fn name(self) -> &'static str {
        match self {
            Case::Finite => "finite",
            Case::Infinity => "infinity",
        }
    }
}

pub fn run(theorem: u8, case: Case, params: &ChainParams, opts: RenderOpts) -> Result<(String, i32)> {
    let result = match (theorem, case) {
        (1, Case::Finite) => thm1_finite_chain(params),
        (1, Case::Infinity) => thm1_infinity_chain(params),
        (2, Case::Finite) => thm2_finite_chain(params),
        (2, Case::Infinity) => thm2_infinity_chain(params),
        _ => unreachable!("clap restricts theorem to 1 or 2"),
    };
    let trace = match result {
        Ok(trace) => trace,
        Err(err) => {
            eprintln!("error: {err}");
            return Ok((String::new(), 2));
        }
    };

    let text = match opts.format {
        OutputFormat::Json => {
            let doc = json!({
                "schema": SCHEMA,
                "command": "chain",
                "theorem": theorem,
                "case": case.name(),
                "trace": &trace,
            });
            output::json_string(&doc)?
        }
        OutputFormat::Csv => render_csv(&trace, opts.precision)?,
        OutputFormat::Table => render_table(&trace, opts.precision),
    };
    Ok((text, 0))
}

/// CSV columns: `row,label,value,decimal,positive`. Step rows leave
/// `positive` empty; the single verdict row fills it.
fn render_csv(trace: &ChainTrace, precision: u32) -> Result<String> {
    let mut rows: Vec<Vec<String>> = trace
        .steps
        .iter()
        .map(|s| {
            vec![
                "step".to_string(),
                s.label.clone(),
                s.value.to_string(),
                output::rat_decimal(&s.value, precision),
                String::new(),
            ]
        })
        .collect();
    rows.push(vec![
        "verdict".to_string(),
        trace.verdict_label.clone(),
        trace.verdict_value.to_string(),
        output::rat_decimal(&trace.verdict_value, precision),
        trace.verdict.to_string(),
    ]);
    output::csv_string(&["row", "label", "value", "decimal", "positive"], &rows)
}

fn render_table(trace: &ChainTrace, precision: u32) -> String {
    let rows: Vec<Vec<String>> = trace
        .steps
        .iter()
        .map(|s| {
            vec![
                s.label.clone(),
                s.value.to_string(),
                output::rat_decimal(&s.value, precision),
            ]
        })
        .collect();
    let mut out = output::table(&["step", "exact", "decimal"], &rows);
    out.push_str(&format!(
        "\nverdict: {} = {} ({}) is {}\n",
        trace.verdict_label,
        trace.verdict_value,
        output::rat_decimal(&trace.verdict_value, precision),
        if trace.verdict { "positive" } else { "not positive" },
    ));
    out
}
