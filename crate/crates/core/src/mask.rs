//! Index subsets of `{0..n-1}` as fixed-width bit masks.

use crate::error::{Error, Result};
use std::fmt;

/// A subset of the instance's index set, carried with its bit width.
///
/// The width always equals the dimension of the object the mask indexes
/// into; operations on instances reject masks of the wrong width. The
/// empty mask denotes the empty subset, whose principal minor is 1 by
/// convention.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct SubsetMask {
    bits: u64,
    n: usize,
}

impl SubsetMask {
    /// Largest supported width; enumeration uses `1 << n` internally.
    pub const MAX_WIDTH: usize = 63;

    pub fn new(bits: u64, n: usize) -> Result<Self> {
        if n > Self::MAX_WIDTH {
            return Err(Error::InvalidParameter(format!(
                "mask width {n} exceeds the supported maximum {}",
                Self::MAX_WIDTH
            )));
        }
        if bits >= (1u64 << n) {
            return Err(Error::InvalidParameter(format!(
                "mask bits {bits:#b} do not fit in width {n}"
            )));
        }
        Ok(Self { bits, n })
    }

    pub fn empty(n: usize) -> Self {
        Self { bits: 0, n }
    }

    pub fn full(n: usize) -> Self {
        assert!(n <= Self::MAX_WIDTH);
        Self {
            bits: (1u64 << n) - 1,
            n,
        }
    }

    pub fn from_indices(indices: &[usize], n: usize) -> Result<Self> {
        let mut bits = 0u64;
        for &i in indices {
            if i >= n {
                return Err(Error::InvalidParameter(format!(
                    "index {i} out of range for dimension {n}"
                )));
            }
            bits |= 1 << i;
        }
        Self::new(bits, n)
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn width(&self) -> usize {
        self.n
    }

    pub fn contains(&self, index: usize) -> bool {
        index < self.n && (self.bits >> index) & 1 == 1
    }

    /// Number of selected indices.
    pub fn len(&self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.bits == 0
    }

    pub fn complement(&self) -> Self {
        Self {
            bits: !self.bits & ((1u64 << self.n) - 1),
            n: self.n,
        }
    }

    /// Selected indices in increasing order.
    pub fn indices(&self) -> Vec<usize> {
        (0..self.n).filter(|&i| self.contains(i)).collect()
    }

    /// All `2^n` masks of width `n` by increasing integer value of the bits.
    pub fn all(n: usize) -> impl Iterator<Item = SubsetMask> {
        assert!(n <= Self::MAX_WIDTH);
        (0..1u64 << n).map(move |bits| SubsetMask { bits, n })
    }

    /// Relabel indices: the result selects `p` iff `self` selects `perm[p]`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.n);
        let mut bits = 0u64;
        for (p, &orig) in perm.iter().enumerate() {
            if self.contains(orig) {
                bits |= 1 << p;
            }
        }
        Self { bits, n: self.n }
    }
}

impl fmt::Display for SubsetMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list: Vec<String> = self.indices().iter().map(|i| i.to_string()).collect();
        write!(f, "{{{}}}", list.join(","))
    }
}
