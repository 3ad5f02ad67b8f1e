//! Command line front end for the violation search pipeline.

mod io;
mod report;
mod solve;
mod verify;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Result};
use clap::{Args, Parser, Subcommand};
use pmviol_core::cnf::CnfFormula;
use pmviol_core::instance::{generate_unique_violation, DEFAULT_EXHAUSTIVE_LIMIT};
use pmviol_core::sat_encode::encode_sat;
use pmviol_core::subset_sum::encode_subset_sum;

#[derive(Parser)]
#[command(name = "pmviol", version, about = "Planted principal minor violations: generate, reduce, solve")]
struct Cli {
    /// Worker threads for uniqueness sweeps (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build an instance with a single planted violating subset.
    Generate(GenerateArgs),
    /// Re-express an artifact in the next representation.
    Reduce {
        #[command(subcommand)]
        target: ReduceCommand,
    },
    /// Search an artifact for its hidden solution.
    Solve {
        #[command(subcommand)]
        solver: SolveCommand,
    },
    /// Summary tables for growth, workloads, and query access.
    Report {
        #[command(subcommand)]
        kind: ReportCommand,
    },
    /// Re-check invariants of written artifacts.
    Verify(verify::VerifyArgs),
}

#[derive(Args)]
struct GenerateArgs {
    /// Matrix dimension.
    #[arg(long)]
    n: usize,
    /// Planted subset size; defaults to half the dimension, rounded up.
    #[arg(long)]
    k: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Largest dimension the exhaustive uniqueness check will accept.
    #[arg(long, default_value_t = DEFAULT_EXHAUSTIVE_LIMIT)]
    limit: usize,
    /// Drop the witness from the written instance.
    #[arg(long)]
    redact: bool,
    /// Output file (stdout when omitted).
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Subcommand)]
enum ReduceCommand {
    /// Instance JSON to a DIMACS formula plus variable map.
    Sat(ReduceSatArgs),
    /// DIMACS formula to a subset sum instance plus decode map.
    SubsetSum(ReduceSubsetSumArgs),
}

#[derive(Args)]
struct ReduceSatArgs {
    /// Instance JSON; the witness must still be present.
    input: PathBuf,
    /// Output file (stdout when omitted).
    #[arg(short, long)]
    output: Option<PathBuf>,
    /// Variable map destination (default: output path with extension varmap.json).
    #[arg(long)]
    var_map: Option<PathBuf>,
}

#[derive(Args)]
struct ReduceSubsetSumArgs {
    /// DIMACS file.
    input: PathBuf,
    /// Output file (stdout when omitted).
    #[arg(short, long)]
    output: Option<PathBuf>,
    /// Decode map destination (default: output path with extension decodemap.json).
    #[arg(long)]
    decode_map: Option<PathBuf>,
}

#[derive(Subcommand)]
enum SolveCommand {
    /// Query principal minors of an instance directly.
    Direct(solve::DirectArgs),
    /// Randomized propagate-and-guess search on a formula.
    Ppsz(solve::PpszArgs),
    /// Exhaustive truth table sweep of a formula.
    Enumerate(solve::EnumerateArgs),
    /// Meet in the middle subset search.
    Mitm(solve::SubsetSumArgs),
    /// Plain exhaustive subset search.
    Brute(solve::SubsetSumArgs),
}

#[derive(Subcommand)]
enum ReportCommand {
    /// Dimension and clause growth across the pipeline.
    Expansion(report::ExpansionArgs),
    /// Published workload exponents spelled out as trial counts.
    Ratios(report::RatiosArgs),
    /// What a single minor sign query reveals about the witness.
    Accessibility(report::AccessibilityArgs),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global();
        if let Err(e) = pool {
            eprintln!("error: setting thread count: {e}");
            return ExitCode::FAILURE;
        }
    }
    match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}

fn run(command: Command) -> Result<ExitCode> {
    match command {
        Command::Generate(args) => generate(args)?,
        Command::Reduce { target } => match target {
            ReduceCommand::Sat(args) => reduce_sat(args)?,
            ReduceCommand::SubsetSum(args) => reduce_subset_sum(args)?,
        },
        Command::Solve { solver } => match solver {
            SolveCommand::Direct(args) => solve::direct(args)?,
            SolveCommand::Ppsz(args) => solve::ppsz(args)?,
            SolveCommand::Enumerate(args) => solve::enumerate(args)?,
            SolveCommand::Mitm(args) => solve::subset_sum(args, solve::SubsetSolver::Mitm)?,
            SolveCommand::Brute(args) => solve::subset_sum(args, solve::SubsetSolver::Brute)?,
        },
        Command::Report { kind } => match kind {
            ReportCommand::Expansion(args) => report::expansion(args)?,
            ReportCommand::Ratios(args) => report::ratios(args)?,
            ReportCommand::Accessibility(args) => report::accessibility(args)?,
        },
        Command::Verify(args) => return verify::run(args),
    }
    Ok(ExitCode::SUCCESS)
}

fn generate(args: GenerateArgs) -> Result<()> {
    let k = args.k.unwrap_or(args.n.div_ceil(2));
    let instance = generate_unique_violation(args.n, k, args.seed, args.limit)?;
    let instance = if args.redact { instance.redacted() } else { instance };
    io::write_text(&instance.to_json(), args.output.as_ref())?;
    eprintln!(
        "generated n={} k={} seed={} ({})",
        args.n,
        k,
        args.seed,
        if args.redact { "witness redacted" } else { "witness included" }
    );
    Ok(())
}

fn reduce_sat(args: ReduceSatArgs) -> Result<()> {
    let instance = io::load_instance(&args.input)?;
    let (formula, map) = encode_sat(&instance)?;
    let map_path = match (&args.var_map, &args.output) {
        (Some(path), _) => Some(path.clone()),
        (None, Some(out)) => Some(io::sidecar_path(out, "varmap.json")),
        (None, None) => None,
    };
    io::write_text(&formula.to_dimacs(), args.output.as_ref())?;
    match map_path {
        Some(path) => {
            io::write_text(&map.to_json(), Some(&path))?;
            eprintln!(
                "encoded {} vars, {} clauses; variable map in {}",
                formula.var_count(),
                formula.clause_count(),
                path.display()
            );
        }
        None => eprintln!("variable map not written; pass --var-map or -o to keep it"),
    }
    Ok(())
}

fn reduce_subset_sum(args: ReduceSubsetSumArgs) -> Result<()> {
    let formula = io::load_cnf(&args.input)?;
    let (instance, map) = encode_subset_sum(&formula)?;
    let map_path = match (&args.decode_map, &args.output) {
        (Some(path), _) => Some(path.clone()),
        (None, Some(out)) => Some(io::sidecar_path(out, "decodemap.json")),
        (None, None) => None,
    };
    io::write_text(&instance.to_json(), args.output.as_ref())?;
    match map_path {
        Some(path) => {
            io::write_text(&map.to_json(), Some(&path))?;
            eprintln!(
                "encoded {} items over {} digit columns; decode map in {}",
                instance.items().len(),
                instance.digit_count(),
                path.display()
            );
        }
        None => eprintln!("decode map not written; pass --decode-map or -o to keep it"),
    }
    Ok(())
}

/// Shared by solve and verify: a formula plus the map that names its variables.
fn load_formula_with_map(
    input: &PathBuf,
    var_map: Option<PathBuf>,
) -> Result<(CnfFormula, Option<pmviol_core::sat_encode::VarMap>)> {
    let formula = io::load_cnf(input)?;
    let map = match io::resolve_map(var_map, input, "varmap.json") {
        Some(path) => {
            let map = io::load_var_map(&path)?;
            eprintln!("using variable map {}", path.display());
            Some(map)
        }
        None => None,
    };
    if let Some(map) = &map {
        if map.var_count() != formula.var_count() {
            bail!(
                "variable map covers {} variables but the formula has {}",
                map.var_count(),
                formula.var_count()
            );
        }
    }
    Ok((formula, map))
}
