//! `zl bounds`: evaluate the bound family at a genus profile.

use anyhow::Result;
use serde::{Deserialize, Serialize};
use zl_core::bounds::{
    envelope, eval_bound, max_allowed_n, refined_max_n, threshold, zl_bound, Family, GenusProfile,
};
use zl_core::Surd;

use crate::output::{self, OutputFormat, RenderOpts, SCHEMA};

/// One evaluated bound (or envelope) row. `linear` and `radicand` are the
/// exact `num/den` components of `linear + sqrt(radicand)`; `value`
/// collapses to a plain rational when the surd is secretly one;
/// `threshold` is the smallest node count satisfying the bound, empty on
/// envelope rows.
#[derive(Debug, Serialize, Deserialize)]
pub struct BoundRow {
    pub name: String,
    pub linear: String,
    pub radicand: String,
    pub value: String,
    pub decimal: String,
    pub threshold: String,
}

/// Full `bounds` record; the JSON document is exactly this.
#[derive(Debug, Serialize, Deserialize)]
pub struct BoundsRecord {
    pub schema: u32,
    pub command: String,
    pub g: u32,
    #[serde(rename = "R", skip_serializing_if = "Option::is_none")]
    pub big_r: Option<u32>,
    pub bounds: Vec<BoundRow>,
    pub envelopes: Vec<BoundRow>,
    pub max_allowed_n: i64,
    pub refined_max_n: i64,
    pub zl_cap: u64,
    /// The envelope floor of the active family exceeds the cap `2b1 + 1`.
    pub exception: bool,
}

fn bound_row(name: &str, value: &Surd, threshold: Option<i64>, precision: u32) -> BoundRow {
    BoundRow {
        name: name.to_string(),
        linear: value.linear_part().to_string(),
        radicand: value.radicand().to_string(),
        value: output::surd_exact(value),
        decimal: output::surd_decimal(value, precision),
        threshold: threshold.map(|t| t.to_string()).unwrap_or_default(),
    }
}

pub fn run(g: u32, big_r: Option<u32>, opts: RenderOpts) -> Result<(String, i32)> {
    let profile_i = GenusProfile::new(g, 0);
    let mut families = vec![(Family::I, profile_i)];
    if let Some(r) = big_r {
        families.push((Family::J, GenusProfile::new(g, r)));
    }

    let mut bounds = Vec::new();
    let mut envelopes = Vec::new();
    for (family, profile) in &families {
        for kind in family.members() {
            let value = eval_bound(kind, profile)?;
            let t = threshold(kind, profile)?;
            let t = i64::try_from(&t).expect("threshold fits in i64 at CLI scale");
            bounds.push(bound_row(kind.name(), &value, Some(t), opts.precision));
        }
        let env = envelope(profile, *family)?;
        let name = match family {
            Family::I => "envelope(I)",
            Family::J => "envelope(J)",
        };
        envelopes.push(bound_row(name, &env, None, opts.precision));
    }

    let (active_family, active_profile) = *families.last().expect("at least one family");
    let max_n = max_allowed_n(&active_profile, active_family)?;
    let refined = refined_max_n(&active_profile, active_family)?;
    let cap = zl_bound(&active_profile);
    let active_env = envelope(&active_profile, active_family)?;
    let exception = active_env.floor() > cap.into();

    let record = BoundsRecord {
        schema: SCHEMA,
        command: "bounds".to_string(),
        g,
        big_r,
        bounds,
        envelopes,
        max_allowed_n: max_n,
        refined_max_n: refined,
        zl_cap: cap,
        exception,
    };

    let text = match opts.format {
        OutputFormat::Json => output::json_string(&record)?,
        OutputFormat::Csv => render_csv(&record)?,
        OutputFormat::Table => render_table(&record),
    };
    Ok((text, 0))
}

/// CSV columns: `name,linear,radicand,value,decimal,threshold`. Bound and
/// envelope rows come first; the summary quantities follow as rows whose
/// `value` column holds a plain `num/den` and whose `threshold` is empty.
fn render_csv(record: &BoundsRecord) -> Result<String> {
    let headers = ["name", "linear", "radicand", "value", "decimal", "threshold"];
    let mut rows: Vec<Vec<String>> = Vec::new();
    for row in record.bounds.iter().chain(&record.envelopes) {
        rows.push(vec![
            row.name.clone(),
            row.linear.clone(),
            row.radicand.clone(),
            row.value.clone(),
            row.decimal.clone(),
            row.threshold.clone(),
        ]);
    }
    for (name, value) in summary_pairs(record) {
        rows.push(vec![
            name.to_string(),
            String::new(),
            String::new(),
            value.clone(),
            String::new(),
            String::new(),
        ]);
    }
    output::csv_string(&headers, &rows)
}

fn summary_pairs(record: &BoundsRecord) -> Vec<(&'static str, String)> {
    vec![
        ("max_allowed_N", format!("{}/1", record.max_allowed_n)),
        ("refined_max_N", format!("{}/1", record.refined_max_n)),
        ("zl_cap", format!("{}/1", record.zl_cap)),
        ("exception", format!("{}/1", u8::from(record.exception))),
    ]
}

fn render_table(record: &BoundsRecord) -> String {
    let headers = ["bound", "value", "decimal", "threshold"];
    let rows: Vec<Vec<String>> = record
        .bounds
        .iter()
        .chain(&record.envelopes)
        .map(|row| {
            vec![
                row.name.clone(),
                row.value.clone(),
                row.decimal.clone(),
                row.threshold.clone(),
            ]
        })
        .collect();
    let mut out = table_header(record);
    out.push_str(&output::table(&headers, &rows));
    out.push_str(&format!(
        "\nmax allowed N: {}\nrefined max N: {}\nZL cap (2*b1 + 1): {}\n",
        record.max_allowed_n, record.refined_max_n, record.zl_cap
    ));
    if record.exception {
        out.push_str("exception: envelope floor exceeds the ZL cap\n");
    }
    out
}

fn table_header(record: &BoundsRecord) -> String {
    match record.big_r {
        Some(r) => format!("profile: g = {}, R = {}\n\n", record.g, r),
        None => format!("profile: g = {}, unibranched\n\n", record.g),
    }
}
