//! Rank-one perturbed matrices with a hidden violating subset.
//!
//! An instance is `A = B + u v^T` with `B`, `u`, `v` rational. The planted
//! generator keeps `B = I`, `v = 1` and chooses `u` so that exactly one
//! principal minor of `A` is non-positive; that subset is the witness.
//! All minor arithmetic is exact: entries are cleared to integers by a
//! common scale and determinants run through fraction-free elimination.

use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::seq::SliceRandom;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::mask::SubsetMask;
use crate::matrix::{det_bareiss, SquareMatrix};
use crate::seeds::{self, stage_rng};
use crate::{Int, Rat};

/// Default cap on `n` for operations that enumerate all `2^n` subsets.
pub const DEFAULT_EXHAUSTIVE_LIMIT: usize = 20;

/// Hard cap for direct search; the permutation table alone is 2^n entries.
const MAX_DIRECT_SEARCH_WIDTH: usize = 24;

/// Exact value of one principal minor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinorValue(Rat);

impl MinorValue {
    pub fn value(&self) -> &Rat {
        &self.0
    }

    pub fn into_value(self) -> Rat {
        self.0
    }

    /// A subset violates the P-property when its minor is not strictly positive.
    pub fn is_violation(&self) -> bool {
        !self.0.is_positive()
    }
}

impl std::fmt::Display for MinorValue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Subset enumeration order for [`PMatrixInstance::direct_search`].
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum SearchOrder {
    /// Masks in increasing bit-pattern order.
    Lexicographic,
    /// A uniformly random permutation of all masks.
    UniformRandom,
}

#[derive(Clone, Debug)]
pub struct PMatrixInstance {
    n: usize,
    base: SquareMatrix<Rat>,
    u: Vec<Rat>,
    v: Vec<Rat>,
    witness: Option<SubsetMask>,
    k: usize,
    seed: u64,
    scale: Int,
    /// `scale * (base + u v^T)`, cached for exact integer elimination.
    scaled: SquareMatrix<Int>,
}

impl PMatrixInstance {
    /// Builds an instance from explicit parts, computing the entry scale.
    pub fn new(
        base: SquareMatrix<Rat>,
        u: Vec<Rat>,
        v: Vec<Rat>,
        witness: Option<SubsetMask>,
    ) -> Result<Self> {
        let n = base.n();
        if n == 0 || n > SubsetMask::MAX_WIDTH {
            return Err(Error::InvalidParameter(format!(
                "dimension {n} outside 1..={}",
                SubsetMask::MAX_WIDTH
            )));
        }
        if u.len() != n || v.len() != n {
            return Err(Error::InvalidParameter(format!(
                "perturbation vectors must have length {n} (got {} and {})",
                u.len(),
                v.len()
            )));
        }
        if let Some(w) = witness {
            if w.width() != n {
                return Err(Error::DimensionMismatch {
                    subset: w.width(),
                    dimension: n,
                });
            }
        }
        let perturbed = perturbed_matrix(&base, &u, &v);
        let scale = common_scale(&perturbed);
        let scaled = scale_to_integers(&perturbed, &scale);
        let k = witness.map_or(0, |w| w.len());
        Ok(Self {
            n,
            base,
            u,
            v,
            witness,
            k,
            seed: 0,
            scale,
            scaled,
        })
    }

    /// The closed-form planted profile: `B = I`, `v = 1`, and
    /// `u_i = -(2k+1)/(2k^2)` on the witness, `2` elsewhere.
    ///
    /// By the determinant lemma every principal minor is `1 + sum_{i in S} u_i`,
    /// so the witness sums to `-1/(2k)` and every other subset stays positive.
    pub fn product_profile(n: usize, witness: SubsetMask) -> Result<Self> {
        if witness.width() != n {
            return Err(Error::DimensionMismatch {
                subset: witness.width(),
                dimension: n,
            });
        }
        let k = witness.len();
        if k == 0 {
            return Err(Error::InvalidParameter(
                "witness subset must be nonempty".into(),
            ));
        }
        let k_int = Int::from(k as u64);
        let inside = Rat::new(
            -(Int::from(2) * &k_int + Int::one()),
            Int::from(2) * &k_int * &k_int,
        );
        let outside = Rat::from_integer(Int::from(2));
        let u: Vec<Rat> = (0..n)
            .map(|i| {
                if witness.contains(i) {
                    inside.clone()
                } else {
                    outside.clone()
                }
            })
            .collect();
        let v = vec![Rat::one(); n];
        let mut inst = Self::new(SquareMatrix::identity(n), u, v, Some(witness))?;
        inst.k = k;
        Ok(inst)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn base(&self) -> &SquareMatrix<Rat> {
        &self.base
    }

    pub fn u(&self) -> &[Rat] {
        &self.u
    }

    pub fn v(&self) -> &[Rat] {
        &self.v
    }

    pub fn witness(&self) -> Option<SubsetMask> {
        self.witness
    }

    pub fn scale(&self) -> &Int {
        &self.scale
    }

    /// The full perturbed matrix `B + u v^T`.
    pub fn perturbed(&self) -> SquareMatrix<Rat> {
        perturbed_matrix(&self.base, &self.u, &self.v)
    }

    /// A copy with the witness removed, as written to disk for solvers.
    pub fn redacted(&self) -> Self {
        let mut inst = self.clone();
        inst.witness = None;
        inst
    }

    fn scaled_minor_det(&self, subset: SubsetMask) -> Result<Int> {
        if subset.width() != self.n {
            return Err(Error::DimensionMismatch {
                subset: subset.width(),
                dimension: self.n,
            });
        }
        Ok(det_bareiss(&self.scaled.principal_submatrix(subset)))
    }

    /// Exact principal minor `det(A_S)`; the empty subset gives 1.
    pub fn principal_minor(&self, subset: SubsetMask) -> Result<MinorValue> {
        let det = self.scaled_minor_det(subset)?;
        let denom = num_traits::pow(self.scale.clone(), subset.len());
        Ok(MinorValue(Rat::new(det, denom)))
    }

    /// Whether `det(A_S) <= 0`, i.e. whether `subset` breaks the P-property.
    pub fn oracle_query_sign(&self, subset: SubsetMask) -> Result<bool> {
        Ok(!self.scaled_minor_det(subset)?.is_positive())
    }

    /// Whether `guess` is exactly the hidden witness.
    ///
    /// On a redacted instance this falls back to the sign query, which
    /// agrees whenever the instance has a unique violating subset.
    pub fn oracle_query_equality(&self, guess: SubsetMask) -> Result<bool> {
        if guess.width() != self.n {
            return Err(Error::DimensionMismatch {
                subset: guess.width(),
                dimension: self.n,
            });
        }
        match self.witness {
            Some(w) => Ok(guess == w),
            None => self.oracle_query_sign(guess),
        }
    }

    /// Exhaustively checks that exactly one subset violates the P-property
    /// and returns it. Subsets are swept in parallel.
    pub fn verify_unique_violation(&self, limit: usize) -> Result<SubsetMask> {
        if self.n > limit {
            return Err(Error::ExhaustiveLimit { n: self.n, limit });
        }
        let total = 1u64 << self.n;
        let mut violations: Vec<SubsetMask> = (1..total)
            .into_par_iter()
            .filter_map(|bits| {
                let mask = SubsetMask::new(bits, self.n).expect("bits below 2^n");
                if det_bareiss(&self.scaled.principal_submatrix(mask)).is_positive() {
                    None
                } else {
                    Some(mask)
                }
            })
            .collect();
        violations.sort();
        match violations.len() {
            1 => Ok(violations[0]),
            count => Err(Error::UniquenessViolation {
                count,
                examples: violations.into_iter().take(8).collect(),
            }),
        }
    }

    /// Queries subsets one by one until the sign oracle fires.
    ///
    /// Returns the found subset and the number of queries spent (counting
    /// from 1). The random order shuffles all `2^n` masks with the
    /// dedicated search stream, so equal seeds replay equal query orders.
    pub fn direct_search(&self, order: SearchOrder, seed: u64) -> Result<(SubsetMask, u64)> {
        if self.n > MAX_DIRECT_SEARCH_WIDTH {
            return Err(Error::SizeLimit {
                what: "direct search dimension",
                size: self.n,
                limit: MAX_DIRECT_SEARCH_WIDTH,
                hint: Some("reduce the instance and use a structured solver"),
            });
        }
        let total = 1u64 << self.n;
        let mut queries = 0u64;
        let try_mask = |bits: u64, queries: &mut u64| -> Result<Option<SubsetMask>> {
            let mask = SubsetMask::new(bits, self.n).expect("bits below 2^n");
            *queries += 1;
            if self.oracle_query_sign(mask)? {
                Ok(Some(mask))
            } else {
                Ok(None)
            }
        };
        match order {
            SearchOrder::Lexicographic => {
                for bits in 0..total {
                    if let Some(mask) = try_mask(bits, &mut queries)? {
                        return Ok((mask, queries));
                    }
                }
            }
            SearchOrder::UniformRandom => {
                let mut perm: Vec<u64> = (0..total).collect();
                perm.shuffle(&mut stage_rng(seed, seeds::stream::DIRECT_SEARCH));
                for bits in perm {
                    if let Some(mask) = try_mask(bits, &mut queries)? {
                        return Ok((mask, queries));
                    }
                }
            }
        }
        Err(Error::SearchExhausted)
    }

    pub fn to_json(&self) -> String {
        let doc = InstanceDoc {
            version: FORMAT_VERSION,
            n: self.n,
            k: self.k,
            seed: self.seed,
            base: self.base.entries().map(rat_to_string).collect(),
            u: self.u.iter().map(rat_to_string).collect(),
            v: self.v.iter().map(rat_to_string).collect(),
            witness: self.witness.map(|w| w.indices()),
            scale: self.scale.to_string(),
        };
        let mut out = serde_json::to_string_pretty(&doc).expect("instance doc serializes");
        out.push('\n');
        out
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: InstanceDoc =
            serde_json::from_str(text).map_err(|e| Error::Parse(format!("instance: {e}")))?;
        if doc.version != FORMAT_VERSION {
            return Err(Error::Parse(format!(
                "unsupported instance version {} (expected {FORMAT_VERSION})",
                doc.version
            )));
        }
        let n = doc.n;
        if n == 0 || n > SubsetMask::MAX_WIDTH {
            return Err(Error::Parse(format!("dimension {n} out of range")));
        }
        if doc.base.len() != n * n {
            return Err(Error::Parse(format!(
                "base has {} entries, expected {}",
                doc.base.len(),
                n * n
            )));
        }
        if doc.u.len() != n || doc.v.len() != n {
            return Err(Error::Parse("perturbation vector length mismatch".into()));
        }
        let entries = doc
            .base
            .iter()
            .map(|s| rat_from_str(s))
            .collect::<Result<Vec<Rat>>>()?;
        let base = SquareMatrix::from_fn(n, |i, j| entries[i * n + j].clone());
        let u = doc.u.iter().map(|s| rat_from_str(s)).collect::<Result<Vec<Rat>>>()?;
        let v = doc.v.iter().map(|s| rat_from_str(s)).collect::<Result<Vec<Rat>>>()?;
        let witness = match doc.witness {
            Some(indices) => Some(
                SubsetMask::from_indices(&indices, n)
                    .map_err(|e| Error::Parse(format!("witness: {e}")))?,
            ),
            None => None,
        };
        let scale: Int = doc
            .scale
            .parse()
            .map_err(|_| Error::Parse(format!("bad scale {:?}", doc.scale)))?;
        if !scale.is_positive() {
            return Err(Error::Parse("scale must be positive".into()));
        }
        let mut inst = Self::new(base, u, v, witness)?;
        if inst.scale != scale {
            // Accept any declared scale that clears the denominators.
            if (&scale % &inst.scale).is_zero() {
                let ratio = &scale / &inst.scale;
                inst.scaled = inst.scaled.map(|x| x * &ratio);
                inst.scale = scale;
            } else {
                return Err(Error::Parse(format!(
                    "scale {scale} does not clear the entry denominators (need a multiple of {})",
                    inst.scale
                )));
            }
        }
        inst.k = doc.k;
        inst.seed = doc.seed;
        Ok(inst)
    }
}

/// Generates a planted instance: the witness is a uniformly random size-`k`
/// subset drawn from the seed's witness stream, and the result is verified
/// to have exactly that subset as its unique violation.
pub fn generate_unique_violation(
    n: usize,
    k: usize,
    seed: u64,
    limit: usize,
) -> Result<PMatrixInstance> {
    if n == 0 || n > SubsetMask::MAX_WIDTH {
        return Err(Error::InvalidParameter(format!(
            "dimension {n} outside 1..={}",
            SubsetMask::MAX_WIDTH
        )));
    }
    if n > limit {
        return Err(Error::ExhaustiveLimit { n, limit });
    }
    if k == 0 || k > n {
        return Err(Error::InvalidParameter(format!(
            "witness size {k} outside 1..={n}"
        )));
    }
    let mut rng = stage_rng(seed, seeds::stream::WITNESS);
    let picked: Vec<usize> = rand::seq::index::sample(&mut rng, n, k).into_vec();
    let witness = SubsetMask::from_indices(&picked, n)?;
    let mut inst = PMatrixInstance::product_profile(n, witness)?;
    inst.seed = seed;
    let found = inst.verify_unique_violation(limit)?;
    debug_assert_eq!(found, witness);
    Ok(inst)
}

/// Checks every nonempty principal minor of `matrix` for positivity.
pub fn is_p_matrix(matrix: &SquareMatrix<Rat>, limit: usize) -> Result<bool> {
    let n = matrix.n();
    if n > limit {
        return Err(Error::ExhaustiveLimit { n, limit });
    }
    if n == 0 || n > SubsetMask::MAX_WIDTH {
        return Err(Error::InvalidParameter(format!(
            "dimension {n} outside 1..={}",
            SubsetMask::MAX_WIDTH
        )));
    }
    let scale = common_scale(matrix);
    let scaled = scale_to_integers(matrix, &scale);
    let total = 1u64 << n;
    Ok((1..total).into_par_iter().all(|bits| {
        let mask = SubsetMask::new(bits, n).expect("bits below 2^n");
        det_bareiss(&scaled.principal_submatrix(mask)).is_positive()
    }))
}

const FORMAT_VERSION: u32 = 1;

#[derive(Serialize, Deserialize)]
struct InstanceDoc {
    version: u32,
    n: usize,
    k: usize,
    seed: u64,
    base: Vec<String>,
    u: Vec<String>,
    v: Vec<String>,
    witness: Option<Vec<usize>>,
    scale: String,
}

fn perturbed_matrix(base: &SquareMatrix<Rat>, u: &[Rat], v: &[Rat]) -> SquareMatrix<Rat> {
    SquareMatrix::from_fn(base.n(), |i, j| {
        base.get(i, j).clone() + u[i].clone() * v[j].clone()
    })
}

fn common_scale(matrix: &SquareMatrix<Rat>) -> Int {
    matrix.entries().fold(Int::one(), |acc, e| acc.lcm(e.denom()))
}

fn scale_to_integers(matrix: &SquareMatrix<Rat>, scale: &Int) -> SquareMatrix<Int> {
    SquareMatrix::from_fn(matrix.n(), |i, j| {
        let e = matrix.get(i, j);
        e.numer() * (scale / e.denom())
    })
}

fn rat_to_string(r: &Rat) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

fn rat_from_str(s: &str) -> Result<Rat> {
    let (num, den) = match s.split_once('/') {
        Some((p, q)) => (p, q),
        None => (s, "1"),
    };
    let p: Int = num
        .trim()
        .parse()
        .map_err(|_| Error::Parse(format!("bad rational {s:?}")))?;
    let q: Int = den
        .trim()
        .parse()
        .map_err(|_| Error::Parse(format!("bad rational {s:?}")))?;
    if q.is_zero() {
        return Err(Error::Parse(format!("zero denominator in {s:?}")));
    }
    Ok(Rat::new(p, q))
}
