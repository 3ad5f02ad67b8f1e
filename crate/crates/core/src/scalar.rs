//! Scalar trait aliases bounding the generic numeric kernels.

use num_traits::{Float, FromPrimitive, Num, Signed};
use std::fmt::Debug;

/// Scalar admissible in exact fraction-free elimination.
///
/// The algorithm only ever divides when the quotient is exact, so any
/// integral domain works: `BigInt`, fixed-width signed integers (at the
/// caller's overflow risk), or rationals.
pub trait ExactScalar: Num + Signed + Clone + Debug {}

impl<T> ExactScalar for T where T: Num + Signed + Clone + Debug {}

/// Floating-point scalar for entropy and closed-form complexity math.
pub trait RealScalar: Float + FromPrimitive + Debug {}

impl<T> RealScalar for T where T: Float + FromPrimitive + Debug {}
