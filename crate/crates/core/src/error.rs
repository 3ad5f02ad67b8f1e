use crate::mask::SubsetMask;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("subset has width {subset} but the instance has dimension {dimension}")]
    DimensionMismatch { subset: usize, dimension: usize },

    #[error("dimension {n} exceeds the exhaustive verification limit {limit}")]
    ExhaustiveLimit { n: usize, limit: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("expected exactly one non-positive principal minor, found {count}{}", fmt_violations(.examples))]
    UniquenessViolation {
        count: usize,
        /// First few offending subsets (all of them when there are at most eight).
        examples: Vec<SubsetMask>,
    },

    #[error("instance witness is redacted; this operation needs the solution-aware construction")]
    MissingWitness,

    #[error("clause {index} is tautological (contains a variable and its negation); the digit encoding is unsound for it")]
    TautologicalClause { index: usize },

    #[error("{what} has size {size}, above the limit {limit}{}", fmt_hint(.hint))]
    SizeLimit {
        what: &'static str,
        size: usize,
        limit: usize,
        hint: Option<&'static str>,
    },

    #[error("decode failed: {0}")]
    Decode(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("search exhausted every subset without a positive oracle answer; the instance has no violation")]
    SearchExhausted,
}

fn fmt_violations(examples: &[SubsetMask]) -> String {
    if examples.is_empty() {
        return String::new();
    }
    let list: Vec<String> = examples.iter().map(|m| m.to_string()).collect();
    format!(" (at {})", list.join(", "))
}

fn fmt_hint(hint: &Option<&'static str>) -> String {
    match hint {
        Some(h) => format!("; {h}"),
        None => String::new(),
    }
}
