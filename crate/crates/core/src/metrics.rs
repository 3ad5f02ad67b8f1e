//! How much information each oracle query can reveal about the witness.
//!
//! An equality query is a Bernoulli observation with success probability
//! `1/support`, so its mutual information with the witness is the binary
//! entropy of that probability. A failed sign query merely removes one
//! subset from the running; `eliminative_information` tracks how slowly
//! that closes the entropy gap.

use num_integer::binomial;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::instance::{generate_unique_violation, DEFAULT_EXHAUSTIVE_LIMIT};
use crate::mask::SubsetMask;
use crate::scalar::RealScalar;
use crate::seeds::{self, stage_rng};
use crate::Real;

/// Distribution the witness is assumed drawn from.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum WitnessPrior {
    /// Uniform over all `2^n` subsets.
    AllSubsets,
    /// Uniform over the `C(n, k)` subsets of size `k`.
    SizeK { k: usize },
}

impl WitnessPrior {
    pub fn support_size(&self, n: usize) -> Result<u128> {
        if n == 0 || n > SubsetMask::MAX_WIDTH {
            return Err(Error::InvalidParameter(format!(
                "dimension {n} outside 1..={}",
                SubsetMask::MAX_WIDTH
            )));
        }
        match *self {
            WitnessPrior::AllSubsets => Ok(1u128 << n),
            WitnessPrior::SizeK { k } => {
                if k == 0 || k > n {
                    return Err(Error::InvalidParameter(format!(
                        "witness size {k} outside 1..={n}"
                    )));
                }
                Ok(binomial(n as u128, k as u128))
            }
        }
    }
}

/// `H_b(p)` in bits; zero outside the open unit interval.
pub fn binary_entropy<R: RealScalar>(p: R) -> R {
    let zero = R::zero();
    let one = R::one();
    if p <= zero || p >= one {
        return zero;
    }
    let q = one - p;
    -(p * p.log2()) - q * q.log2()
}

/// Entropy of the witness under the prior, in bits.
pub fn witness_entropy<R: RealScalar>(n: usize, prior: WitnessPrior) -> Result<R> {
    let support = prior.support_size(n)?;
    match prior {
        WitnessPrior::AllSubsets => {
            Ok(R::from_usize(n).expect("small dimension converts"))
        }
        WitnessPrior::SizeK { .. } => {
            Ok(R::from_u128(support).expect("support fits the scalar").log2())
        }
    }
}

/// Probability that one fresh equality guess hits the witness.
pub fn query_success_prob<R: RealScalar>(n: usize, prior: WitnessPrior) -> Result<R> {
    let support = prior.support_size(n)?;
    Ok(R::one() / R::from_u128(support).expect("support fits the scalar"))
}

/// Mutual information between the witness and one equality answer.
pub fn per_query_information<R: RealScalar>(success_prob: R) -> R {
    binary_entropy(success_prob)
}

/// Bits learned after `eliminated` distinct subsets were ruled out of a
/// uniform field of `2^n`.
pub fn eliminative_information<R: RealScalar>(n: usize, eliminated: u64) -> Result<R> {
    if n == 0 || n > SubsetMask::MAX_WIDTH {
        return Err(Error::InvalidParameter(format!(
            "dimension {n} outside 1..={}",
            SubsetMask::MAX_WIDTH
        )));
    }
    let total = 1u128 << n;
    if u128::from(eliminated) >= total {
        return Err(Error::InvalidParameter(format!(
            "cannot eliminate {eliminated} of {total} subsets"
        )));
    }
    let remaining = total - u128::from(eliminated);
    let n_bits = R::from_usize(n).expect("small dimension converts");
    Ok(n_bits - R::from_u128(remaining).expect("remaining fits the scalar").log2())
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AccessibilityProfile {
    pub n: usize,
    pub prior: WitnessPrior,
    pub witness_entropy_bits: Real,
    pub query_success_prob: Real,
    pub per_query_information_bits: Real,
    /// Information-theoretic floor on equality queries at this rate.
    pub queries_to_resolve: Real,
}

pub fn accessibility_profile(n: usize, prior: WitnessPrior) -> Result<AccessibilityProfile> {
    let entropy: Real = witness_entropy(n, prior)?;
    let p: Real = query_success_prob(n, prior)?;
    let info = per_query_information(p);
    let queries_to_resolve = if entropy == 0.0 { 0.0 } else { entropy / info };
    Ok(AccessibilityProfile {
        n,
        prior,
        witness_entropy_bits: entropy,
        query_success_prob: p,
        per_query_information_bits: info,
        queries_to_resolve,
    })
}

impl AccessibilityProfile {
    pub fn to_json(&self) -> String {
        let mut out = serde_json::to_string_pretty(self).expect("profile serializes");
        out.push('\n');
        out
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExperimentReport {
    pub n: usize,
    pub k: usize,
    pub prior: WitnessPrior,
    pub samples: u64,
    pub hits: u64,
    pub observed_rate: Real,
    pub expected_prob: Real,
    pub standard_error: Real,
    pub z_score: Real,
    pub within_three_sigma: bool,
}

impl ExperimentReport {
    pub fn to_json(&self) -> String {
        let mut out = serde_json::to_string_pretty(self).expect("report serializes");
        out.push('\n');
        out
    }
}

/// Draws `samples` fresh guesses from the prior against one planted
/// instance and compares the observed equality-hit rate with theory.
pub fn empirical_query_experiment(
    n: usize,
    k: usize,
    samples: u64,
    seed: u64,
    prior: WitnessPrior,
) -> Result<ExperimentReport> {
    if samples == 0 {
        return Err(Error::InvalidParameter("need at least one sample".into()));
    }
    if let WitnessPrior::SizeK { k: prior_k } = prior {
        if prior_k != k {
            return Err(Error::InvalidParameter(format!(
                "prior fixes size {prior_k} but the instance witness has size {k}"
            )));
        }
    }
    let instance = generate_unique_violation(n, k, seed, DEFAULT_EXHAUSTIVE_LIMIT)?;
    let expected_prob: Real = query_success_prob(n, prior)?;
    let mut rng = stage_rng(seed, seeds::stream::QUERY);
    let mut hits = 0u64;
    for _ in 0..samples {
        let guess = match prior {
            WitnessPrior::AllSubsets => {
                SubsetMask::new(rng.gen_range(0..1u64 << n), n).expect("bits below 2^n")
            }
            WitnessPrior::SizeK { k } => {
                let picked: Vec<usize> = rand::seq::index::sample(&mut rng, n, k).into_vec();
                SubsetMask::from_indices(&picked, n).expect("sampled indices are in range")
            }
        };
        if instance.oracle_query_equality(guess)? {
            hits += 1;
        }
    }
    let observed_rate = hits as Real / samples as Real;
    let standard_error = (expected_prob * (1.0 - expected_prob) / samples as Real).sqrt();
    let z_score = if standard_error == 0.0 {
        if observed_rate == expected_prob {
            0.0
        } else {
            Real::INFINITY
        }
    } else {
        (observed_rate - expected_prob) / standard_error
    };
    Ok(ExperimentReport {
        n,
        k,
        prior,
        samples,
        hits,
        observed_rate,
        expected_prob,
        standard_error,
        z_score,
        within_three_sigma: z_score.abs() <= 3.0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: Real, b: Real) {
        assert!((a - b).abs() <= 1e-15 * b.abs().max(1.0), "{a} vs {b}");
    }

    #[test]
    fn binary_entropy_landmarks() {
        assert_eq!(binary_entropy(0.0), 0.0);
        assert_eq!(binary_entropy(1.0), 0.0);
        assert_eq!(binary_entropy(0.5), 1.0);
        close(binary_entropy(1.0 / 64.0), 0.11611507530476972);
        close(binary_entropy(1.0 / 20.0), 0.28639695711595613);
        assert_eq!(binary_entropy(0.5f32), 1.0f32);
        close(binary_entropy(0.25), binary_entropy(0.75));
    }

    #[test]
    fn entropy_and_success_probability() {
        let all = WitnessPrior::AllSubsets;
        let size3 = WitnessPrior::SizeK { k: 3 };
        assert_eq!(witness_entropy::<Real>(6, all).unwrap(), 6.0);
        close(witness_entropy::<Real>(6, size3).unwrap(), 4.3219280948873623);
        close(
            witness_entropy::<Real>(12, WitnessPrior::SizeK { k: 5 }).unwrap(),
            9.6293566200796096,
        );
        assert_eq!(query_success_prob::<Real>(6, all).unwrap(), 1.0 / 64.0);
        assert_eq!(query_success_prob::<Real>(6, size3).unwrap(), 1.0 / 20.0);
        assert!(witness_entropy::<Real>(6, WitnessPrior::SizeK { k: 7 }).is_err());
        assert!(witness_entropy::<Real>(0, all).is_err());
    }

    #[test]
    fn elimination_progress() {
        assert_eq!(eliminative_information::<Real>(6, 0).unwrap(), 0.0);
        assert_eq!(eliminative_information::<Real>(6, 32).unwrap(), 1.0);
        assert_eq!(eliminative_information::<Real>(6, 63).unwrap(), 6.0);
        assert!(eliminative_information::<Real>(6, 64).is_err());
        // Early failures reveal almost nothing.
        let one_gone: Real = eliminative_information(20, 1).unwrap();
        assert!(one_gone > 0.0 && one_gone < 2e-6);
    }

    #[test]
    fn profile_for_the_headline_dimension() {
        let p = accessibility_profile(6, WitnessPrior::AllSubsets).unwrap();
        assert_eq!(p.witness_entropy_bits, 6.0);
        assert_eq!(p.query_success_prob, 0.015625);
        close(p.per_query_information_bits, 0.11611507530476972);
        close(p.queries_to_resolve, 51.672876964956286);
        let json = p.to_json();
        assert!(json.contains("\"kind\": \"all-subsets\""));

        let sized = accessibility_profile(6, WitnessPrior::SizeK { k: 3 }).unwrap();
        assert!(sized.to_json().contains("\"kind\": \"size-k\""));
        assert!(sized.witness_entropy_bits < 6.0);
    }

    #[test]
    fn experiment_is_deterministic_and_calibrated() {
        let a = empirical_query_experiment(4, 2, 4000, 11, WitnessPrior::AllSubsets).unwrap();
        let b = empirical_query_experiment(4, 2, 4000, 11, WitnessPrior::AllSubsets).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.expected_prob, 1.0 / 16.0);
        assert!(a.within_three_sigma, "z = {}", a.z_score);

        let sized = empirical_query_experiment(6, 3, 4000, 5, WitnessPrior::SizeK { k: 3 }).unwrap();
        assert_eq!(sized.expected_prob, 1.0 / 20.0);
        assert!(sized.within_three_sigma, "z = {}", sized.z_score);
    }

    #[test]
    fn experiment_rejects_mismatched_prior() {
        assert!(matches!(
            empirical_query_experiment(6, 3, 10, 0, WitnessPrior::SizeK { k: 2 }),
            Err(Error::InvalidParameter(_))
        ));
        assert!(empirical_query_experiment(6, 3, 0, 0, WitnessPrior::AllSubsets).is_err());
    }
}
