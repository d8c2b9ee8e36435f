//! `zl`: exact bound evaluation, batch verification, proof-chain replay,
//! and counterexample search from the command line.
//!
//! Exit codes follow one contract everywhere: 0 for success (including a
//! search over a dropped-inequality box, where rows are the product), 1
//! when a verification or an undropped search finds violations, 2 for
//! invalid arguments, violated preconditions, and budget overflows.

mod commands;
mod output;

use std::process;

use anyhow::{anyhow, Result};
use clap::{Args, Parser, Subcommand};
use zl_core::bounds::BoundKind;
use zl_core::chains::{ChainParams, LemmaGrid};
use zl_core::par::ExecMode;
use zl_core::verify::{SearchBox, SearchOptions, Theorem};

use commands::chain::Case;
use output::{OutputFormat, RenderOpts};

#[derive(Parser)]
#[command(
    name = "zl",
    version,
    about = "Exact singularity-count bounds for plane curves with one place at infinity"
)]
struct Cli {
    /// Output format; the ZL_FORMAT environment variable sets the default.
    #[arg(long, global = true, env = "ZL_FORMAT", default_value = "table", value_enum)]
    format: OutputFormat,

    /// Decimal digits in display-only annotations. Exact num/den values
    /// are always included regardless.
    #[arg(long, global = true, default_value_t = 3)]
    precision: u32,

    /// Run scans on one thread instead of the worker pool.
    #[arg(long, global = true)]
    sequential: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate the bound family at a genus profile.
    Bounds(BoundsArgs),
    /// Re-run one of the batch verifications.
    Verify {
        #[command(subcommand)]
        target: VerifyTarget,
    },
    /// Replay one proof chain at explicit parameters.
    Chain(ChainArgs),
    /// Search a parameter box for counterexample configurations.
    Search(SearchArgs),
}

#[derive(Args)]
struct BoundsArgs {
    /// Genus of the curve.
    #[arg(long)]
    g: u32,

    /// Branch excess; selects the multibranched family when given.
    #[arg(long = "R", value_parser = clap::value_parser!(u32).range(1..))]
    big_r: Option<u32>,
}

#[derive(Subcommand)]
enum VerifyTarget {
    /// Locate the genus where one bound overtakes the other five for good.
    CrossoverI,
    /// Certify per-R dominance of the multibranched workhorse bound.
    CrossoverJ {
        /// Branch excess range `1..=r_max`.
        #[arg(long, default_value_t = 250, value_parser = clap::value_parser!(i64).range(1..))]
        r_max: i64,
    },
    /// Enumerate profiles with `g + 3R <= max-sum` against the cap
    /// `4g + 2R + 1`.
    Zl {
        #[arg(long, default_value_t = 752, value_parser = clap::value_parser!(i64).range(3..))]
        max_sum: i64,
    },
    /// Check the three linear covers of the unibranched envelope.
    Envelopes,
    /// Positivity of the exchange term over ordered integer triples.
    Exchange {
        /// Triple range `2 <= x < y < z <= limit`.
        #[arg(long, default_value_t = 60, value_parser = clap::value_parser!(i64).range(4..))]
        limit: i64,
    },
    /// Replay the discrete chain lemmas on a bounded grid.
    Lemmas {
        #[arg(long, default_value_t = 10)]
        g_max: i64,
        #[arg(long, default_value_t = 60)]
        n_max: i64,
        #[arg(long, default_value_t = 80)]
        p_max: i64,
    },
}

#[derive(Args)]
struct ChainArgs {
    /// Which theorem's chain: 1 (unibranched) or 2 (multibranched).
    #[arg(long, value_parser = clap::value_parser!(u8).range(1..=2))]
    theorem: u8,

    /// Which case of the chain: the finite-distance or the infinity track.
    #[arg(long, value_enum)]
    case: Case,

    /// Genus of the curve.
    #[arg(long)]
    g: i64,

    /// Number of singular points.
    #[arg(long = "N")]
    n: i64,

    /// Total branch excess; required by theorem 2 chains.
    #[arg(long = "R")]
    big_r: Option<i64>,

    /// Smaller degree of the pencil pair.
    #[arg(long)]
    p: Option<i64>,

    /// Larger degree of the pencil pair.
    #[arg(long)]
    q: Option<i64>,

    /// Branch multiplicity at the place at infinity.
    #[arg(long)]
    p_prime: Option<i64>,

    /// Count of triple-multiplicity unibranched points.
    #[arg(long)]
    s: Option<i64>,

    /// Count of double-multiplicity unibranched points (derived; checked).
    #[arg(long)]
    r: Option<i64>,

    /// Count of ordinary double points among the decorations (derived;
    /// checked).
    #[arg(long)]
    k2: Option<i64>,

    /// Branch count cap over the ordinary multiple points.
    #[arg(long = "A")]
    big_a: Option<i64>,

    /// Branch count of the distinguished finite-distance point.
    #[arg(long = "B")]
    big_b: Option<i64>,

    /// Multiplicity of the distinguished finite-distance point.
    #[arg(long)]
    m1: Option<i64>,
}

#[derive(Args)]
struct SearchArgs {
    /// Which bound family gates the scan: 1 or 2.
    #[arg(long, value_parser = clap::value_parser!(u8).range(1..=2))]
    theorem: u8,

    #[arg(long)]
    g_max: i64,

    /// Branch excess cap for theorem 2 profiles.
    #[arg(long, default_value_t = 1)]
    r_max: i64,

    #[arg(long)]
    n_max: i64,

    #[arg(long)]
    p_max: i64,

    /// `q` ranges over `p+1 ..= p+q_slack`, skipping multiples of `p`.
    #[arg(long, default_value_t = 8)]
    q_slack: i64,

    /// Inequalities to drop from the gate: `all` or a comma list of bound
    /// names such as `I_a,I_c`.
    #[arg(long, value_delimiter = ',')]
    drop: Vec<String>,

    /// Abort (exit 2) when the pre-flight candidate estimate exceeds this.
    #[arg(long, default_value_t = 1_000_000_000)]
    budget: u64,

    /// Cap on listed rows; the scan itself stays exhaustive.
    #[arg(long, default_value_t = 100_000)]
    max_rows: usize,
}

fn theorem_of(n: u8) -> Theorem {
    match n {
        1 => Theorem::One,
        _ => Theorem::Two,
    }
}

fn parse_kind(name: &str) -> Result<BoundKind> {
    BoundKind::ALL
        .iter()
        .copied()
        .find(|k| k.name() == name)
        .ok_or_else(|| anyhow!("unknown bound kind {name:?}; expected I_a..I_f or J_a..J_f"))
}

fn resolve_drops(theorem: Theorem, specs: &[String]) -> Result<Vec<BoundKind>> {
    if specs.iter().any(|s| s == "all") {
        if specs.len() > 1 {
            return Err(anyhow!("--drop all cannot be combined with named kinds"));
        }
        return Ok(theorem.family().members().to_vec());
    }
    specs.iter().map(|s| parse_kind(s)).collect()
}

fn run(cli: Cli) -> Result<(String, i32)> {
    let opts = RenderOpts {
        format: cli.format,
        precision: cli.precision,
    };
    let mode = if cli.sequential {
        ExecMode::Sequential
    } else {
        ExecMode::Parallel
    };

    match cli.command {
        Command::Bounds(args) => commands::bounds::run(args.g, args.big_r, opts),
        Command::Verify { target } => {
            let target = match target {
                VerifyTarget::CrossoverI => commands::verify::Target::CrossoverI,
                VerifyTarget::CrossoverJ { r_max } => commands::verify::Target::CrossoverJ { r_max },
                VerifyTarget::Zl { max_sum } => commands::verify::Target::Zl { max_sum },
                VerifyTarget::Envelopes => commands::verify::Target::Envelopes,
                VerifyTarget::Exchange { limit } => commands::verify::Target::Exchange { limit },
                VerifyTarget::Lemmas { g_max, n_max, p_max } => commands::verify::Target::Lemmas {
                    grid: LemmaGrid {
                        g_max,
                        n_max,
                        p_max,
                        ..LemmaGrid::default()
                    },
                },
            };
            commands::verify::run(target, mode, opts)
        }
        Command::Chain(args) => {
            let params = ChainParams {
                p: args.p,
                q: args.q,
                p_prime: args.p_prime,
                s: args.s,
                r: args.r,
                k2: args.k2,
                big_a: args.big_a,
                big_b: args.big_b,
                m1: args.m1,
                ..ChainParams::new(args.g, args.big_r.unwrap_or(0), args.n)
            };
            commands::chain::run(args.theorem, args.case, &params, opts)
        }
        Command::Search(args) => {
            let theorem = theorem_of(args.theorem);
            let sbox = SearchBox {
                g_max: args.g_max,
                r_max: args.r_max,
                n_max: args.n_max,
                p_max: args.p_max,
                q_slack: args.q_slack,
                theorem,
                drop_inequalities: resolve_drops(theorem, &args.drop)?,
            };
            let search_opts = SearchOptions {
                budget: args.budget,
                max_rows: args.max_rows,
                mode,
            };
            commands::search::run(&sbox, &search_opts, opts)
        }
    }
}

fn main() {
    let cli = Cli::parse();
    match run(cli) {
        Ok((text, code)) => {
            print!("{text}");
            process::exit(code);
        }
        Err(err) => {
            eprintln!("error: {err:#}");
            process::exit(2);
        }
    }
}
