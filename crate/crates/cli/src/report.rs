//! Report subcommands: growth, workload, and query-access tables.

use std::path::PathBuf;

use anyhow::Result;
use clap::{Args, ValueEnum};
use pmviol_core::complexity::{ratio_table, rows_to_json, trial_ratio_table};
use pmviol_core::expansion::{expansion_measured, expansion_nominal};
use pmviol_core::instance::{generate_unique_violation, DEFAULT_EXHAUSTIVE_LIMIT};
use pmviol_core::metrics::{
    accessibility_profile, empirical_query_experiment, AccessibilityProfile, ExperimentReport,
    WitnessPrior,
};
use pmviol_core::table::{OutputFormat, Table};
use serde::Serialize;

use crate::io;

fn parse_format(s: &str) -> Result<OutputFormat, pmviol_core::Error> {
    s.parse()
}

fn render(format: OutputFormat, json: String, table: &Table) -> String {
    match format {
        OutputFormat::Json => json,
        OutputFormat::Csv => table.to_csv(),
        OutputFormat::Md => table.to_markdown(),
    }
}

#[derive(Copy, Clone, ValueEnum)]
enum ModeArg {
    /// Closed-form counts straight from the construction.
    Nominal,
    /// Counts read off a freshly encoded instance.
    Measured,
}

#[derive(Args)]
pub struct ExpansionArgs {
    /// Starting dimension.
    #[arg(long)]
    n: usize,
    #[arg(long, value_enum, default_value_t = ModeArg::Nominal)]
    mode: ModeArg,
    /// Witness size for measured mode; defaults to half of n, rounded up.
    #[arg(long)]
    k: Option<usize>,
    /// Instance seed for measured mode.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value = "md", value_parser = parse_format)]
    format: OutputFormat,
    /// Output file (stdout when omitted).
    #[arg(short, long)]
    output: Option<PathBuf>,
}

pub fn expansion(args: ExpansionArgs) -> Result<()> {
    let report = match args.mode {
        ModeArg::Nominal => expansion_nominal(args.n as u64),
        ModeArg::Measured => {
            let k = args.k.unwrap_or(args.n.div_ceil(2));
            let instance =
                generate_unique_violation(args.n, k, args.seed, DEFAULT_EXHAUSTIVE_LIMIT)?;
            expansion_measured(&instance)?
        }
    };
    let text = render(args.format, report.to_json(), &report.to_table());
    io::write_text(&text, args.output.as_ref())
}

#[derive(Args)]
pub struct RatiosArgs {
    /// Dimension the trial counts are evaluated at.
    #[arg(long)]
    n: usize,
    #[arg(long, default_value = "md", value_parser = parse_format)]
    format: OutputFormat,
    /// Output file (stdout when omitted).
    #[arg(short, long)]
    output: Option<PathBuf>,
}

pub fn ratios(args: RatiosArgs) -> Result<()> {
    let rows = trial_ratio_table(args.n as u64);
    let text = render(args.format, rows_to_json(&rows), &ratio_table(&rows));
    io::write_text(&text, args.output.as_ref())
}

#[derive(Copy, Clone, ValueEnum)]
enum PriorArg {
    /// Witness drawn uniformly from all subsets.
    AllSubsets,
    /// Witness drawn uniformly from subsets of the planted size.
    SizeK,
}

#[derive(Args)]
pub struct AccessibilityArgs {
    /// Matrix dimension.
    #[arg(long)]
    n: usize,
    /// Witness size; defaults to half of n, rounded up.
    #[arg(long)]
    k: Option<usize>,
    #[arg(long, value_enum, default_value_t = PriorArg::AllSubsets)]
    prior: PriorArg,
    /// Also run the sampled guessing experiment.
    #[arg(long)]
    empirical: bool,
    #[arg(long, default_value_t = 100_000)]
    samples: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value = "md", value_parser = parse_format)]
    format: OutputFormat,
    /// Output file (stdout when omitted).
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Serialize)]
struct AccessibilityDoc<'a> {
    version: u32,
    profile: &'a AccessibilityProfile,
    experiment: Option<&'a ExperimentReport>,
}

pub fn accessibility(args: AccessibilityArgs) -> Result<()> {
    let k = args.k.unwrap_or(args.n.div_ceil(2));
    let prior = match args.prior {
        PriorArg::AllSubsets => WitnessPrior::AllSubsets,
        PriorArg::SizeK => WitnessPrior::SizeK { k },
    };
    let profile = accessibility_profile(args.n, prior)?;
    let experiment = if args.empirical {
        Some(empirical_query_experiment(args.n, k, args.samples, args.seed, prior)?)
    } else {
        None
    };

    let doc = AccessibilityDoc {
        version: 1,
        profile: &profile,
        experiment: experiment.as_ref(),
    };
    let mut json = serde_json::to_string_pretty(&doc)?;
    json.push('\n');

    let mut table = Table::new(&["metric", "value"]);
    let mut put = |metric: &str, value: String| table.push_row(vec![metric.into(), value]);
    put("n", profile.n.to_string());
    put(
        "prior",
        match prior {
            WitnessPrior::AllSubsets => "all-subsets".into(),
            WitnessPrior::SizeK { k } => format!("size-{k}"),
        },
    );
    put("witness_entropy_bits", profile.witness_entropy_bits.to_string());
    put("query_success_prob", profile.query_success_prob.to_string());
    put(
        "per_query_information_bits",
        profile.per_query_information_bits.to_string(),
    );
    put("queries_to_resolve", profile.queries_to_resolve.to_string());
    if let Some(e) = &experiment {
        put("samples", e.samples.to_string());
        put("hits", e.hits.to_string());
        put("observed_rate", e.observed_rate.to_string());
        put("expected_prob", e.expected_prob.to_string());
        put("standard_error", e.standard_error.to_string());
        put("z_score", e.z_score.to_string());
        put("within_three_sigma", e.within_three_sigma.to_string());
    }

    let text = render(args.format, json, &table);
    io::write_text(&text, args.output.as_ref())
}
