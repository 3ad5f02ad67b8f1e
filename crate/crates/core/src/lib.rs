//! Unique-witness P-matrix violation search and its classical NP encodings.
//!
//! The library builds around a single hidden-witness search problem: a
//! rank-one perturbed P-matrix `B + u·vᵀ` whose principal minors are all
//! positive except at exactly one index subset. From that instance it
//! derives a 3-CNF encoding and a digit-vector Subset Sum encoding, solves
//! each representation with matching decode maps, and measures how much
//! information each kind of query exposes about the hidden subset.
//!
//! All minor-sign decisions run over exact scaled-integer arithmetic; no
//! floating point touches the oracle path. The elimination and entropy
//! kernels are generic over their scalar via `num-traits`, with the
//! concrete types pinned by the [`Int`], [`Rat`], and [`Real`] aliases
//! below.

pub mod cnf;
pub mod complexity;
pub mod error;
pub mod expansion;
pub mod instance;
pub mod mask;
pub mod matrix;
pub mod metrics;
pub mod sat_encode;
pub mod scalar;
pub mod seeds;
pub mod solvers;
pub mod subset_sum;
pub mod table;

/// Exact integer scalar used for fraction-free minor evaluation.
pub type Int = num_bigint::BigInt;
/// Exact rational scalar used for matrix entries and minor values.
pub type Rat = num_rational::Ratio<Int>;
/// Floating-point scalar used for information metrics and report math.
pub type Real = f64;

pub use error::{Error, Result};
pub use instance::{MinorValue, PMatrixInstance, SearchOrder, DEFAULT_EXHAUSTIVE_LIMIT};
pub use mask::SubsetMask;
pub use matrix::SquareMatrix;
