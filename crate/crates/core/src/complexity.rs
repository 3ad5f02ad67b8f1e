//! Closed-form trial counts for each representation of one search.
//!
//! Starting from `2^N` direct subset queries, the table states what the
//! best published exponential-time algorithms would spend after each
//! encoding step, together with the blowup relative to direct search.
//! The exponents are per unit of search dimension: trials grow as
//! `2^(c·d)` with `d` the dimension the representation exposes.

use serde::Serialize;

use crate::expansion::{STAGE_DIRECT, STAGE_SAT, STAGE_SUBSET_SUM};
use crate::table::Table;

/// Randomized 3-SAT search exponent (per CNF variable).
pub const SAT_PPSZ_TIME: f64 = 0.386;
/// Classic random Subset Sum time exponent (per digit).
pub const SS_HGJ_TIME: f64 = 0.311;
/// Classic random Subset Sum space exponent.
pub const SS_HGJ_SPACE: f64 = 0.256;
/// Improved representation-technique time exponent.
pub const SS_BBSS_TIME: f64 = 0.24;
/// Improved representation-technique space exponent.
pub const SS_BBSS_SPACE: f64 = 0.222;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RatioRow {
    pub representation: &'static str,
    pub algorithm: &'static str,
    #[serde(rename = "d")]
    pub dimension: u64,
    pub trials: f64,
    /// Trials relative to the `2^N` direct sweep.
    pub ratio: f64,
    /// Expected table memory, where the algorithm is not constant-space.
    pub space: Option<f64>,
}

/// The four-row comparison table for dimension `n`.
pub fn trial_ratio_table(n: u64) -> Vec<RatioRow> {
    let direct = pow2(n as f64);
    let row = |representation,
               algorithm,
               dimension: u64,
               time_exp: f64,
               space_exp: Option<f64>| {
        let trials = pow2(time_exp * dimension as f64);
        RatioRow {
            representation,
            algorithm,
            dimension,
            trials,
            ratio: trials / direct,
            space: space_exp.map(|c| pow2(c * dimension as f64)),
        }
    };
    vec![
        row(STAGE_DIRECT, "exhaustive", n, 1.0, None),
        row(STAGE_SAT, "ppsz", 3 * n, SAT_PPSZ_TIME, None),
        row(
            STAGE_SUBSET_SUM,
            "hgj",
            8 * n,
            SS_HGJ_TIME,
            Some(SS_HGJ_SPACE),
        ),
        row(
            STAGE_SUBSET_SUM,
            "bbss",
            8 * n,
            SS_BBSS_TIME,
            Some(SS_BBSS_SPACE),
        ),
    ]
}

pub fn ratio_table(rows: &[RatioRow]) -> Table {
    let mut table = Table::new(&["representation", "algorithm", "d", "trials", "ratio", "space"]);
    for r in rows {
        table.push_row(vec![
            r.representation.to_string(),
            r.algorithm.to_string(),
            r.dimension.to_string(),
            fmt_count(r.trials),
            fmt_ratio(r.ratio),
            r.space.map(fmt_count).unwrap_or_default(),
        ]);
    }
    table
}

pub fn rows_to_json(rows: &[RatioRow]) -> String {
    let mut out = serde_json::to_string_pretty(rows).expect("rows serialize");
    out.push('\n');
    out
}

fn pow2(exp: f64) -> f64 {
    2f64.powf(exp)
}

/// Counts print as integers up to 999, then as three significant figures
/// in scientific notation.
pub fn fmt_count(x: f64) -> String {
    if x < 1000.0 {
        format!("{}", x.round() as u64)
    } else {
        let exp = x.log10().floor();
        let mantissa = x / 10f64.powf(exp);
        format!("{:.1}e{}", mantissa, exp as i64)
    }
}

/// Ratios keep one decimal below 10 and round to integers above.
pub fn fmt_ratio(x: f64) -> String {
    if x < 10.0 {
        format!("{x:.1}")
    } else {
        format!("{}", x.round() as u64)
    }
}
