//! Subset Sum solvers: exhaustive scan and meet-in-the-middle, plus a
//! planted-instance generator for cross-checking them.
//!
//! Both solvers walk subsets in Gray-code order so the running sum
//! changes by one item per step; comparisons are exact big-integer
//! value equality, never digit heuristics.

use num_traits::{Signed, Zero};
use rand::Rng;

use super::{Outcome, TrialLog};
use crate::error::{Error, Result};
use crate::seeds::{self, stage_rng};
use crate::subset_sum::{digits_from_str, ItemLabel, SsItem, SubsetSumInstance};
use crate::Int;

pub const MAX_BRUTE_ITEMS: usize = 24;
pub const MAX_MITM_ITEMS: usize = 40;

fn selection_from_masks(low_mask: u64, low_len: usize, high_mask: u64, total: usize) -> Vec<bool> {
    (0..total)
        .map(|i| {
            if i < low_len {
                low_mask >> i & 1 == 1
            } else {
                high_mask >> (i - low_len) & 1 == 1
            }
        })
        .collect()
}

/// Walks all subsets of `values`, yielding `(gray_mask, sum)` per step.
fn gray_walk(values: &[Int], mut visit: impl FnMut(u64, &Int) -> bool) {
    let total = 1u64 << values.len();
    let mut gray = 0u64;
    let mut sum = Int::zero();
    for step in 0..total {
        if step > 0 {
            let bit = step.trailing_zeros();
            gray ^= 1 << bit;
            if gray >> bit & 1 == 1 {
                sum += &values[bit as usize];
            } else {
                sum -= &values[bit as usize];
            }
        }
        if visit(gray, &sum) {
            return;
        }
    }
}

/// First subset (in Gray-code order) whose values sum to the target.
pub fn brute_force_subset_sum(
    instance: &SubsetSumInstance,
) -> Result<(Option<Vec<bool>>, TrialLog)> {
    let items = instance.item_count();
    if items > MAX_BRUTE_ITEMS {
        return Err(Error::SizeLimit {
            what: "subset sum item count",
            size: items,
            limit: MAX_BRUTE_ITEMS,
            hint: Some("use the meet-in-the-middle solver"),
        });
    }
    let values: Vec<Int> = instance.items().iter().map(SsItem::value).collect();
    let target = instance.target_value();
    let mut log = TrialLog {
        representation: "subset-sum-brute".into(),
        n: None,
        d: instance.digit_count() as u64,
        seed: None,
        trials: 0,
        outcome: Outcome::Exhausted,
        table_entries: 0,
        millis: None,
    };
    let mut found = None;
    gray_walk(&values, |gray, sum| {
        log.trials += 1;
        if *sum == target {
            found = Some(selection_from_masks(gray, items, 0, items));
            true
        } else {
            false
        }
    });
    if found.is_some() {
        log.outcome = Outcome::Found;
    }
    Ok((found, log))
}

/// Meet-in-the-middle search: tabulate every subset sum of the larger
/// half, then probe each subset of the smaller half for its complement.
///
/// The table always holds exactly `2^ceil(items/2)` entries.
pub fn mitm_subset_sum(instance: &SubsetSumInstance) -> Result<(Option<Vec<bool>>, TrialLog)> {
    let items = instance.item_count();
    if items > MAX_MITM_ITEMS {
        return Err(Error::SizeLimit {
            what: "subset sum item count",
            size: items,
            limit: MAX_MITM_ITEMS,
            hint: Some("the half-table would not fit in memory; shrink the instance"),
        });
    }
    let values: Vec<Int> = instance.items().iter().map(SsItem::value).collect();
    let target = instance.target_value();
    let low_len = items / 2;
    let (low_values, high_values) = values.split_at(low_len);

    let mut table: Vec<(Int, u64)> = Vec::with_capacity(1usize << high_values.len());
    gray_walk(high_values, |gray, sum| {
        table.push((sum.clone(), gray));
        false
    });
    table.sort();

    let mut log = TrialLog {
        representation: "subset-sum-mitm".into(),
        n: None,
        d: instance.digit_count() as u64,
        seed: None,
        trials: 0,
        outcome: Outcome::Exhausted,
        table_entries: table.len() as u64,
        millis: None,
    };
    let mut found = None;
    gray_walk(low_values, |low_gray, low_sum| {
        log.trials += 1;
        let need = &target - low_sum;
        if need.is_negative() {
            return false;
        }
        let idx = table.partition_point(|(v, _)| v < &need);
        if let Some((v, high_gray)) = table.get(idx) {
            if *v == need {
                found = Some(selection_from_masks(low_gray, low_len, *high_gray, items));
                return true;
            }
        }
        false
    });
    if found.is_some() {
        log.outcome = Outcome::Found;
    }
    Ok((found, log))
}

/// Random instance with a known solution subset: digit vectors drawn
/// from {0,1,2}, each item chosen into the solution with probability
/// one half, target set to the chosen sum.
pub fn planted_instance(
    item_count: usize,
    digit_count: usize,
    seed: u64,
) -> Result<(SubsetSumInstance, Vec<bool>)> {
    if item_count > 63 {
        return Err(Error::InvalidParameter(format!(
            "planted item count {item_count} exceeds 63"
        )));
    }
    if digit_count == 0 {
        return Err(Error::InvalidParameter("need at least one digit".into()));
    }
    let mut rng = stage_rng(seed, seeds::stream::PLANTED);
    let mut items = Vec::with_capacity(item_count);
    for i in 0..item_count {
        let digits = loop {
            let candidate: Vec<u8> = (0..digit_count).map(|_| rng.gen_range(0..=2)).collect();
            if candidate.iter().any(|&d| d != 0) {
                break candidate;
            }
        };
        items.push(SsItem::new(ItemLabel::Plain(i as u32 + 1), digits));
    }
    let solution: Vec<bool> = (0..item_count).map(|_| rng.gen()).collect();
    let sum: Int = items
        .iter()
        .zip(&solution)
        .filter(|(_, &c)| c)
        .map(|(it, _)| it.value())
        .sum();
    let target = digits_from_str(&sum.to_string()).expect("decimal digits");
    let instance = SubsetSumInstance::new(digit_count, items, target)?;
    Ok((instance, solution))
}
