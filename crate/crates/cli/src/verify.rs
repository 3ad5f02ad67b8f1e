//! Invariant re-checks across any combination of written artifacts.
//!
//! Prints one `ok`/`FAIL` line per check and exits nonzero if any failed.

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Result};
use clap::Args;
use pmviol_core::instance::DEFAULT_EXHAUSTIVE_LIMIT;
use pmviol_core::sat_encode::encode_sat;
use pmviol_core::subset_sum::encode_subset_sum;

use crate::io;

#[derive(Args)]
pub struct VerifyArgs {
    /// Instance JSON.
    #[arg(long)]
    instance: Option<PathBuf>,
    /// DIMACS file.
    #[arg(long)]
    cnf: Option<PathBuf>,
    /// Variable map JSON.
    #[arg(long)]
    var_map: Option<PathBuf>,
    /// Subset sum JSON.
    #[arg(long)]
    subset_sum: Option<PathBuf>,
    /// Decode map JSON.
    #[arg(long)]
    decode_map: Option<PathBuf>,
    /// Largest dimension the exhaustive uniqueness check will accept.
    #[arg(long, default_value_t = DEFAULT_EXHAUSTIVE_LIMIT)]
    limit: usize,
}

#[derive(Default)]
struct Checklist {
    passed: u32,
    failed: u32,
}

impl Checklist {
    fn record(&mut self, label: &str, outcome: Result<(), String>) {
        match outcome {
            Ok(()) => {
                println!("ok - {label}");
                self.passed += 1;
            }
            Err(why) => {
                println!("FAIL - {label}: {why}");
                self.failed += 1;
            }
        }
    }

    fn claim(&mut self, label: &str, holds: bool, why: &str) {
        self.record(label, holds.then_some(()).ok_or_else(|| why.to_string()));
    }
}

fn load<T>(
    list: &mut Checklist,
    label: &str,
    path: Option<&PathBuf>,
    loader: impl FnOnce(&std::path::Path) -> Result<T>,
) -> Option<T> {
    let path = path?;
    match loader(path) {
        Ok(value) => {
            list.record(label, Ok(()));
            Some(value)
        }
        Err(e) => {
            list.record(label, Err(format!("{e:#}")));
            None
        }
    }
}

pub fn run(args: VerifyArgs) -> Result<ExitCode> {
    if args.instance.is_none()
        && args.cnf.is_none()
        && args.var_map.is_none()
        && args.subset_sum.is_none()
        && args.decode_map.is_none()
    {
        bail!("nothing to verify; pass at least one artifact");
    }
    let mut list = Checklist::default();

    let instance = load(&mut list, "instance parses", args.instance.as_ref(), |p| {
        io::load_instance(p)
    });
    let cnf = load(&mut list, "formula parses", args.cnf.as_ref(), |p| {
        io::load_cnf(p)
    });
    let var_map = load(&mut list, "variable map parses", args.var_map.as_ref(), |p| {
        io::load_var_map(p)
    });
    let subset_sum = load(&mut list, "subset sum parses", args.subset_sum.as_ref(), |p| {
        io::load_subset_sum(p)
    });
    let decode_map = load(&mut list, "decode map parses", args.decode_map.as_ref(), |p| {
        io::load_decode_map(p)
    });

    if let Some(inst) = &instance {
        match inst.verify_unique_violation(args.limit) {
            Ok(found) => match inst.witness() {
                Some(planted) => list.claim(
                    "planted witness is the unique violating subset",
                    found == planted,
                    &format!("search found {:?} instead", found.indices()),
                ),
                None => list.record("exactly one violating subset exists", Ok(())),
            },
            Err(e) => {
                let label = if inst.witness().is_some() {
                    "planted witness is the unique violating subset"
                } else {
                    "exactly one violating subset exists"
                };
                list.record(label, Err(e.to_string()));
            }
        }
    }

    if let Some(cnf) = &cnf {
        list.claim(
            "formula has no tautological clauses",
            !cnf.clauses().iter().any(|c| c.is_tautology()),
            "at least one clause contains complementary literals",
        );
        if let Some(inst) = &instance {
            if inst.witness().is_some() {
                match encode_sat(inst) {
                    Ok((expected, _)) => list.claim(
                        "formula matches the instance encoding",
                        &expected == cnf,
                        "re-encoding the instance gives a different formula",
                    ),
                    Err(e) => list.record("formula matches the instance encoding", Err(e.to_string())),
                }
            } else {
                eprintln!("instance is redacted; skipping the re-encoding comparison");
            }
        }
    }

    if let Some(map) = &var_map {
        list.record(
            "variable map partitions its range",
            map.validate().map_err(|e| e.to_string()),
        );
        if let Some(cnf) = &cnf {
            list.claim(
                "variable map covers the formula",
                map.var_count() == cnf.var_count(),
                &format!("map lists {} variables, formula has {}", map.var_count(), cnf.var_count()),
            );
        }
        if let Some(inst) = &instance {
            list.claim(
                "variable map dimension matches the instance",
                map.n() == inst.n(),
                &format!("map is for dimension {}, instance has {}", map.n(), inst.n()),
            );
        }
    }

    if let Some(ss) = &subset_sum {
        list.claim(
            "digit columns cannot carry",
            ss.is_carry_free(),
            &format!("a column sums to {}", ss.max_column_sum()),
        );
        if let Some(cnf) = &cnf {
            match encode_subset_sum(cnf) {
                Ok((expected, _)) => list.claim(
                    "subset sum matches the formula encoding",
                    &expected == ss,
                    "re-encoding the formula gives a different instance",
                ),
                Err(e) => list.record("subset sum matches the formula encoding", Err(e.to_string())),
            }
        }
    }

    if let Some(map) = &decode_map {
        list.record(
            "decode map slots are consistent",
            map.validate().map_err(|e| e.to_string()),
        );
        if let Some(ss) = &subset_sum {
            let labels_align = map.item_count() == ss.item_count()
                && map
                    .roles()
                    .iter()
                    .zip(ss.items())
                    .all(|(role, item)| *role == item.label());
            list.claim(
                "decode map labels the items in order",
                labels_align,
                "item labels and map roles disagree",
            );
        }
        if let Some(cnf) = &cnf {
            list.claim(
                "decode map dimensions match the formula",
                map.var_count() == cnf.var_count() && map.clause_count() == cnf.clause_count(),
                &format!(
                    "map covers {} variables and {} clauses, formula has {} and {}",
                    map.var_count(),
                    map.clause_count(),
                    cnf.var_count(),
                    cnf.clause_count()
                ),
            );
        }
    }

    if list.failed == 0 {
        eprintln!("all {} checks passed", list.passed);
        Ok(ExitCode::SUCCESS)
    } else {
        eprintln!("{} of {} checks failed", list.failed, list.passed + list.failed);
        Ok(ExitCode::FAILURE)
    }
}
