//! File loading and output routing.
//!
//! The primary artifact of a command goes to `-o` when given, otherwise
//! to stdout; everything chatty goes to stderr so redirected output
//! stays machine-readable.

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use pmviol_core::cnf::CnfFormula;
use pmviol_core::instance::PMatrixInstance;
use pmviol_core::sat_encode::VarMap;
use pmviol_core::subset_sum::{DecodeMap, SubsetSumInstance};

pub fn write_text(text: &str, output: Option<&PathBuf>) -> Result<()> {
    match output {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

pub fn load_instance(path: &Path) -> Result<PMatrixInstance> {
    PMatrixInstance::from_json(&read(path)?)
        .with_context(|| format!("parsing instance {}", path.display()))
}

pub fn load_cnf(path: &Path) -> Result<CnfFormula> {
    CnfFormula::from_dimacs(&read(path)?)
        .with_context(|| format!("parsing DIMACS {}", path.display()))
}

pub fn load_subset_sum(path: &Path) -> Result<SubsetSumInstance> {
    SubsetSumInstance::from_json(&read(path)?)
        .with_context(|| format!("parsing subset sum instance {}", path.display()))
}

pub fn load_var_map(path: &Path) -> Result<VarMap> {
    VarMap::from_json(&read(path)?)
        .with_context(|| format!("parsing variable map {}", path.display()))
}

pub fn load_decode_map(path: &Path) -> Result<DecodeMap> {
    DecodeMap::from_json(&read(path)?)
        .with_context(|| format!("parsing decode map {}", path.display()))
}

/// Companion file next to `input`, e.g. `out.cnf` -> `out.varmap.json`.
pub fn sidecar_path(input: &Path, suffix: &str) -> PathBuf {
    input.with_extension(suffix)
}

/// An explicitly named map wins; otherwise a sidecar is picked up when
/// it exists on disk.
pub fn resolve_map(explicit: Option<PathBuf>, input: &Path, suffix: &str) -> Option<PathBuf> {
    if explicit.is_some() {
        return explicit;
    }
    let candidate = sidecar_path(input, suffix);
    candidate.exists().then_some(candidate)
}
