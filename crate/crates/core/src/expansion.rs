//! Dimension growth across the representation pipeline.
//!
//! The search parameter starts at `N` (matrix dimension), grows to `3N`
//! CNF variables, and to `8N` digit positions in the Subset Sum stage.
//! The nominal report states those closed forms; the measured report
//! re-derives them from an actual encoding run.

use serde::Serialize;

use crate::error::Result;
use crate::instance::PMatrixInstance;
use crate::sat_encode::encode_sat;
use crate::subset_sum::encode_subset_sum;
use crate::table::Table;

pub const STAGE_DIRECT: &str = "direct";
pub const STAGE_SAT: &str = "3sat";
pub const STAGE_SUBSET_SUM: &str = "subset-sum";

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ExpansionMode {
    Nominal,
    Measured,
}

impl std::fmt::Display for ExpansionMode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ExpansionMode::Nominal => write!(f, "nominal"),
            ExpansionMode::Measured => write!(f, "measured"),
        }
    }
}

/// One pipeline stage: `added` auxiliary dimensions on top of `N`,
/// their ratio to `N`, and the resulting search dimension `d`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExpansionRow {
    pub stage: &'static str,
    pub added: u64,
    pub ratio: f64,
    pub dimension: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExpansionReport {
    pub n: u64,
    pub mode: ExpansionMode,
    pub rows: Vec<ExpansionRow>,
    /// Clause count of the encoded formula, recorded in measured mode.
    pub measured_clauses: Option<u64>,
}

impl ExpansionReport {
    pub fn to_table(&self) -> Table {
        let mut table = Table::new(&["stage", "M", "ratio", "d", "mode"]);
        for row in &self.rows {
            table.push_row(vec![
                row.stage.to_string(),
                row.added.to_string(),
                format!("{:.1}", row.ratio),
                row.dimension.to_string(),
                self.mode.to_string(),
            ]);
        }
        table
    }

    pub fn to_json(&self) -> String {
        let mut out = serde_json::to_string_pretty(self).expect("report serializes");
        out.push('\n');
        out
    }
}

fn row(stage: &'static str, n: u64, dimension: u64) -> ExpansionRow {
    let added = dimension - n;
    ExpansionRow {
        stage,
        added,
        ratio: added as f64 / n as f64,
        dimension,
    }
}

/// The closed-form growth table for dimension `n`.
pub fn expansion_nominal(n: u64) -> ExpansionReport {
    ExpansionReport {
        n,
        mode: ExpansionMode::Nominal,
        rows: vec![
            row(STAGE_DIRECT, n, n),
            row(STAGE_SAT, n, 3 * n),
            row(STAGE_SUBSET_SUM, n, 8 * n),
        ],
        measured_clauses: None,
    }
}

/// Growth measured on a concrete instance by running both encoders.
pub fn expansion_measured(instance: &PMatrixInstance) -> Result<ExpansionReport> {
    let n = instance.n() as u64;
    let (cnf, _) = encode_sat(instance)?;
    let (ss, _) = encode_subset_sum(&cnf)?;
    Ok(ExpansionReport {
        n,
        mode: ExpansionMode::Measured,
        rows: vec![
            row(STAGE_DIRECT, n, n),
            row(STAGE_SAT, n, cnf.var_count() as u64),
            row(STAGE_SUBSET_SUM, n, ss.digit_count() as u64),
        ],
        measured_clauses: Some(cnf.clause_count() as u64),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::generate_unique_violation;

    #[test]
    fn nominal_rows_for_six() {
        let report = expansion_nominal(6);
        let got: Vec<(u64, f64, u64)> = report
            .rows
            .iter()
            .map(|r| (r.added, r.ratio, r.dimension))
            .collect();
        assert_eq!(got, vec![(0, 0.0, 6), (12, 2.0, 18), (42, 7.0, 48)]);
    }

    #[test]
    fn measured_agrees_with_nominal() {
        for n in [1u64, 3, 6] {
            let inst = generate_unique_violation(n as usize, 1, 0, 20).unwrap();
            let measured = expansion_measured(&inst).unwrap();
            let nominal = expansion_nominal(n);
            assert_eq!(measured.rows, nominal.rows);
            assert_eq!(measured.measured_clauses, Some(5 * n));
        }
    }

    #[test]
    fn table_and_json_rendering() {
        let report = expansion_nominal(6);
        let csv = report.to_table().to_csv();
        assert!(csv.starts_with("stage,M,ratio,d,mode\n"));
        assert!(csv.contains("direct,0,0.0,6,nominal\n"));
        assert!(csv.contains("3sat,12,2.0,18,nominal\n"));
        assert!(csv.contains("subset-sum,42,7.0,48,nominal\n"));

        let json = report.to_json();
        assert!(json.contains("\"mode\": \"nominal\""));
        assert!(json.contains("\"dimension\": 48"));
    }
}
