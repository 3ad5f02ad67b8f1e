//! Solver subcommands and the solution document they all emit.

use std::fs;
use std::path::PathBuf;
use std::time::Instant;

use anyhow::{Context, Result};
use clap::{Args, ValueEnum};
use pmviol_core::instance::SearchOrder;
use pmviol_core::sat_encode::decode_sat_solution;
use pmviol_core::solvers::{
    brute_force_subset_sum, mitm_subset_sum, ppsz_solve, sat_enumerate, Outcome, TrialLog,
};
use pmviol_core::subset_sum::decode_subset_sum_solution;
use pmviol_core::Error;
use serde::Serialize;

use crate::io;
use crate::load_formula_with_map;

/// What a solver run produced, at every decoding depth that was reachable
/// with the maps at hand.
#[derive(Serialize)]
struct SolutionDoc {
    version: u32,
    solver: String,
    outcome: Outcome,
    trials: u64,
    table_entries: u64,
    solution_count: Option<u64>,
    witness: Option<Vec<usize>>,
    assignment: Option<Vec<bool>>,
    chosen_items: Option<Vec<String>>,
}

impl SolutionDoc {
    fn from_log(log: &TrialLog) -> Self {
        Self {
            version: 1,
            solver: log.representation.clone(),
            outcome: log.outcome,
            trials: log.trials,
            table_entries: log.table_entries,
            solution_count: None,
            witness: None,
            assignment: None,
            chosen_items: None,
        }
    }
}

fn emit(
    doc: &SolutionDoc,
    log: &TrialLog,
    output: Option<&PathBuf>,
    log_path: Option<&PathBuf>,
) -> Result<()> {
    let mut text = serde_json::to_string_pretty(doc).context("serializing solution")?;
    text.push('\n');
    io::write_text(&text, output)?;
    if let Some(path) = log_path {
        fs::write(path, format!("{}\n", log.to_jsonl_line()))
            .with_context(|| format!("writing {}", path.display()))?;
    }
    match doc.outcome {
        Outcome::Found => eprintln!("{}: found after {} trials", doc.solver, doc.trials),
        Outcome::Exhausted => eprintln!("{}: exhausted after {} trials", doc.solver, doc.trials),
    }
    Ok(())
}

#[derive(Copy, Clone, ValueEnum)]
pub enum SearchModeArg {
    /// Subsets in increasing bit-pattern order.
    Lex,
    /// A seeded uniform shuffle of all subsets.
    Random,
}

#[derive(Args)]
pub struct DirectArgs {
    /// Instance JSON.
    input: PathBuf,
    #[arg(long, value_enum, default_value_t = SearchModeArg::Lex)]
    mode: SearchModeArg,
    /// Shuffle seed; only read in random mode.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Output file (stdout when omitted).
    #[arg(short, long)]
    output: Option<PathBuf>,
    /// Trial log destination (one JSON line).
    #[arg(long)]
    log: Option<PathBuf>,
    /// Record wall time in the trial log; off by default so reruns match.
    #[arg(long)]
    timings: bool,
}

pub fn direct(args: DirectArgs) -> Result<()> {
    let instance = io::load_instance(&args.input)?;
    let (order, seed) = match args.mode {
        SearchModeArg::Lex => (SearchOrder::Lexicographic, None),
        SearchModeArg::Random => (SearchOrder::UniformRandom, Some(args.seed)),
    };
    let started = Instant::now();
    let outcome = instance.direct_search(order, args.seed);
    let elapsed = started.elapsed();
    let (found, trials) = match outcome {
        Ok((mask, queries)) => (Some(mask), queries),
        Err(Error::SearchExhausted) => (None, 1u64 << instance.n()),
        Err(e) => return Err(e.into()),
    };
    let log = TrialLog {
        representation: "direct".into(),
        n: Some(instance.n() as u64),
        d: instance.n() as u64,
        seed,
        trials,
        outcome: if found.is_some() { Outcome::Found } else { Outcome::Exhausted },
        table_entries: 0,
        millis: args.timings.then(|| elapsed.as_millis() as u64),
    };
    let mut doc = SolutionDoc::from_log(&log);
    doc.witness = found.map(|mask| mask.indices());
    emit(&doc, &log, args.output.as_ref(), args.log.as_ref())
}

#[derive(Args)]
pub struct PpszArgs {
    /// DIMACS file.
    input: PathBuf,
    #[arg(long, default_value_t = 100_000)]
    max_trials: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Variable map (default: sidecar varmap.json next to the input).
    #[arg(long)]
    var_map: Option<PathBuf>,
    /// Output file (stdout when omitted).
    #[arg(short, long)]
    output: Option<PathBuf>,
    /// Trial log destination (one JSON line).
    #[arg(long)]
    log: Option<PathBuf>,
    /// Record wall time in the trial log; off by default so reruns match.
    #[arg(long)]
    timings: bool,
}

pub fn ppsz(args: PpszArgs) -> Result<()> {
    let (formula, map) = load_formula_with_map(&args.input, args.var_map)?;
    let started = Instant::now();
    let (found, mut log) = ppsz_solve(&formula, args.max_trials, args.seed);
    log.millis = args.timings.then(|| started.elapsed().as_millis() as u64);
    let mut doc = SolutionDoc::from_log(&log);
    if let Some(assignment) = &found {
        if let Some(map) = &map {
            doc.witness = Some(decode_sat_solution(map, assignment)?.indices());
        }
        doc.assignment = Some(assignment.values().to_vec());
    }
    emit(&doc, &log, args.output.as_ref(), args.log.as_ref())
}

#[derive(Args)]
pub struct EnumerateArgs {
    /// DIMACS file.
    input: PathBuf,
    /// Variable map (default: sidecar varmap.json next to the input).
    #[arg(long)]
    var_map: Option<PathBuf>,
    /// Output file (stdout when omitted).
    #[arg(short, long)]
    output: Option<PathBuf>,
    /// Trial log destination (one JSON line).
    #[arg(long)]
    log: Option<PathBuf>,
    /// Record wall time in the trial log; off by default so reruns match.
    #[arg(long)]
    timings: bool,
}

pub fn enumerate(args: EnumerateArgs) -> Result<()> {
    let (formula, map) = load_formula_with_map(&args.input, args.var_map)?;
    let started = Instant::now();
    let solutions = sat_enumerate(&formula)?;
    let log = TrialLog {
        representation: "3sat-enumerate".into(),
        n: None,
        d: formula.var_count() as u64,
        seed: None,
        trials: 1u64 << formula.var_count(),
        outcome: if solutions.is_empty() { Outcome::Exhausted } else { Outcome::Found },
        table_entries: 0,
        millis: args.timings.then(|| started.elapsed().as_millis() as u64),
    };
    let mut doc = SolutionDoc::from_log(&log);
    doc.solution_count = Some(solutions.len() as u64);
    if let Some(first) = solutions.first() {
        if let Some(map) = &map {
            doc.witness = Some(decode_sat_solution(map, first)?.indices());
        }
        doc.assignment = Some(first.values().to_vec());
    }
    emit(&doc, &log, args.output.as_ref(), args.log.as_ref())
}

pub enum SubsetSolver {
    Brute,
    Mitm,
}

#[derive(Args)]
pub struct SubsetSumArgs {
    /// Subset sum JSON.
    input: PathBuf,
    /// Decode map (default: sidecar decodemap.json next to the input).
    #[arg(long)]
    decode_map: Option<PathBuf>,
    /// Variable map, for decoding all the way back to a witness subset.
    #[arg(long)]
    var_map: Option<PathBuf>,
    /// Output file (stdout when omitted).
    #[arg(short, long)]
    output: Option<PathBuf>,
    /// Trial log destination (one JSON line).
    #[arg(long)]
    log: Option<PathBuf>,
    /// Record wall time in the trial log; off by default so reruns match.
    #[arg(long)]
    timings: bool,
}

pub fn subset_sum(args: SubsetSumArgs, solver: SubsetSolver) -> Result<()> {
    let instance = io::load_subset_sum(&args.input)?;
    let decode_map = match io::resolve_map(args.decode_map, &args.input, "decodemap.json") {
        Some(path) => {
            let map = io::load_decode_map(&path)?;
            eprintln!("using decode map {}", path.display());
            Some(map)
        }
        None => None,
    };
    let var_map = args.var_map.as_deref().map(io::load_var_map).transpose()?;
    let started = Instant::now();
    let (found, mut log) = match solver {
        SubsetSolver::Brute => brute_force_subset_sum(&instance)?,
        SubsetSolver::Mitm => mitm_subset_sum(&instance)?,
    };
    log.millis = args.timings.then(|| started.elapsed().as_millis() as u64);
    let mut doc = SolutionDoc::from_log(&log);
    if let Some(chosen) = &found {
        doc.chosen_items = Some(
            instance
                .items()
                .iter()
                .zip(chosen)
                .filter(|(_, &c)| c)
                .map(|(item, _)| item.label().to_string())
                .collect(),
        );
        if let Some(map) = &decode_map {
            let assignment = decode_subset_sum_solution(map, chosen)?;
            if let Some(vm) = &var_map {
                doc.witness = Some(decode_sat_solution(vm, &assignment)?.indices());
            }
            doc.assignment = Some(assignment.values().to_vec());
        }
    }
    emit(&doc, &log, args.output.as_ref(), args.log.as_ref())
}
