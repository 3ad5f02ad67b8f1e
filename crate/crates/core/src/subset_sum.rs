//! Digit-vector Subset Sum encoding of a 3-CNF formula.
//!
//! Every variable and every clause owns one decimal digit position, most
//! significant first: variable columns, then clause columns. Variable `i`
//! yields two items `t_i` and `f_i` marking its polarity choice and the
//! clauses that choice satisfies; each clause `j` yields slack items
//! `s1_j` and `s2_j` worth 1 and 2 in its column. The target asks for 1
//! in every variable column and 4 in every clause column. Column sums
//! never reach the base, so digit arithmetic cannot carry, and a clause
//! column can only reach 4 when at least one chosen literal satisfies
//! the clause.

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::cnf::{Assignment, CnfFormula, Var};
use crate::error::{Error, Result};
use crate::Int;

pub const BASE: u32 = 10;

/// Decimal digits, most significant first.
pub type Digits = Vec<u8>;

pub fn digits_value(digits: &[u8]) -> Int {
    digits
        .iter()
        .fold(Int::zero(), |acc, &d| acc * BASE + Int::from(d))
}

pub fn digits_to_string(digits: &[u8]) -> String {
    digits.iter().map(|d| char::from(b'0' + d)).collect()
}

pub fn digits_from_str(s: &str) -> Result<Digits> {
    s.chars()
        .map(|c| {
            c.to_digit(BASE)
                .map(|d| d as u8)
                .ok_or_else(|| Error::Parse(format!("bad digit {c:?}")))
        })
        .collect()
}

/// What one item stands for.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ItemLabel {
    /// Variable `v` set true.
    VarTrue(Var),
    /// Variable `v` set false.
    VarFalse(Var),
    /// Weight-1 slack for clause `j` (1-based).
    Slack1(u32),
    /// Weight-2 slack for clause `j` (1-based).
    Slack2(u32),
    /// Unstructured item in a planted instance.
    Plain(u32),
}

impl std::fmt::Display for ItemLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ItemLabel::VarTrue(v) => write!(f, "t{v}"),
            ItemLabel::VarFalse(v) => write!(f, "f{v}"),
            ItemLabel::Slack1(j) => write!(f, "s1_{j}"),
            ItemLabel::Slack2(j) => write!(f, "s2_{j}"),
            ItemLabel::Plain(i) => write!(f, "p{i}"),
        }
    }
}

impl std::str::FromStr for ItemLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("bad item label {s:?}"));
        let num = |t: &str| t.parse::<u32>().map_err(|_| bad());
        if let Some(rest) = s.strip_prefix("s1_") {
            return Ok(ItemLabel::Slack1(num(rest)?));
        }
        if let Some(rest) = s.strip_prefix("s2_") {
            return Ok(ItemLabel::Slack2(num(rest)?));
        }
        if s.len() < 2 || !s.is_char_boundary(1) {
            return Err(bad());
        }
        match s.split_at(1) {
            ("t", rest) => Ok(ItemLabel::VarTrue(num(rest)?)),
            ("f", rest) => Ok(ItemLabel::VarFalse(num(rest)?)),
            ("p", rest) => Ok(ItemLabel::Plain(num(rest)?)),
            _ => Err(bad()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SsItem {
    label: ItemLabel,
    digits: Digits,
}

impl SsItem {
    pub fn new(label: ItemLabel, digits: Digits) -> Self {
        Self { label, digits }
    }

    pub fn label(&self) -> ItemLabel {
        self.label
    }

    pub fn digits(&self) -> &[u8] {
        &self.digits
    }

    pub fn value(&self) -> Int {
        digits_value(&self.digits)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubsetSumInstance {
    digit_count: usize,
    items: Vec<SsItem>,
    target: Digits,
}

impl SubsetSumInstance {
    /// `target` may be longer than `digit_count`; item vectors may not.
    pub fn new(digit_count: usize, items: Vec<SsItem>, target: Digits) -> Result<Self> {
        for item in &items {
            if item.digits.len() != digit_count {
                return Err(Error::InvalidParameter(format!(
                    "item {} has {} digits, expected {digit_count}",
                    item.label,
                    item.digits.len()
                )));
            }
        }
        Ok(Self {
            digit_count,
            items,
            target,
        })
    }

    pub fn digit_count(&self) -> usize {
        self.digit_count
    }

    pub fn item_count(&self) -> usize {
        self.items.len()
    }

    pub fn items(&self) -> &[SsItem] {
        &self.items
    }

    pub fn target(&self) -> &[u8] {
        &self.target
    }

    pub fn target_value(&self) -> Int {
        digits_value(&self.target)
    }

    /// Largest per-column digit sum over all items; below the base means
    /// no addition of item subsets can ever carry.
    pub fn max_column_sum(&self) -> u32 {
        (0..self.digit_count)
            .map(|c| self.items.iter().map(|it| it.digits[c] as u32).sum())
            .max()
            .unwrap_or(0)
    }

    pub fn is_carry_free(&self) -> bool {
        self.max_column_sum() < BASE
    }

    /// Exact sum-of-values check for a selection flag per item.
    pub fn check_selection(&self, chosen: &[bool]) -> Result<bool> {
        if chosen.len() != self.items.len() {
            return Err(Error::InvalidParameter(format!(
                "selection covers {} items, instance has {}",
                chosen.len(),
                self.items.len()
            )));
        }
        let sum: Int = self
            .items
            .iter()
            .zip(chosen)
            .filter(|(_, &c)| c)
            .map(|(it, _)| it.value())
            .sum();
        Ok(sum == self.target_value())
    }

    pub fn to_json(&self) -> String {
        let doc = InstanceDoc {
            version: FORMAT_VERSION,
            digits: self.digit_count,
            base: BASE,
            items: self
                .items
                .iter()
                .map(|it| ItemDoc {
                    label: it.label.to_string(),
                    digits: digits_to_string(&it.digits),
                })
                .collect(),
            target: digits_to_string(&self.target),
        };
        let mut out = serde_json::to_string_pretty(&doc).expect("instance doc serializes");
        out.push('\n');
        out
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: InstanceDoc =
            serde_json::from_str(text).map_err(|e| Error::Parse(format!("subset sum: {e}")))?;
        if doc.version != FORMAT_VERSION {
            return Err(Error::Parse(format!(
                "unsupported subset sum version {}",
                doc.version
            )));
        }
        if doc.base != BASE {
            return Err(Error::Parse(format!("unsupported base {}", doc.base)));
        }
        let items = doc
            .items
            .iter()
            .map(|it| Ok(SsItem::new(it.label.parse()?, digits_from_str(&it.digits)?)))
            .collect::<Result<Vec<_>>>()?;
        let target = digits_from_str(&doc.target)?;
        Self::new(doc.digits, items, target)
    }
}

/// Maps item indices back to their SAT meaning.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecodeMap {
    var_count: Var,
    clause_count: usize,
    roles: Vec<ItemLabel>,
}

impl DecodeMap {
    pub fn var_count(&self) -> Var {
        self.var_count
    }

    pub fn clause_count(&self) -> usize {
        self.clause_count
    }

    pub fn roles(&self) -> &[ItemLabel] {
        &self.roles
    }

    pub fn item_count(&self) -> usize {
        self.roles.len()
    }

    pub fn validate(&self) -> Result<()> {
        let v = self.var_count as usize;
        let m = self.clause_count;
        if self.roles.len() != 2 * v + 2 * m {
            return Err(Error::Parse(format!(
                "decode map lists {} items, expected {}",
                self.roles.len(),
                2 * v + 2 * m
            )));
        }
        let mut seen = vec![false; self.roles.len()];
        for &role in &self.roles {
            let slot = match role {
                ItemLabel::VarTrue(i) if (1..=self.var_count).contains(&i) => 2 * (i as usize - 1),
                ItemLabel::VarFalse(i) if (1..=self.var_count).contains(&i) => {
                    2 * (i as usize - 1) + 1
                }
                ItemLabel::Slack1(j) if (1..=m as u32).contains(&j) => 2 * v + 2 * (j as usize - 1),
                ItemLabel::Slack2(j) if (1..=m as u32).contains(&j) => {
                    2 * v + 2 * (j as usize - 1) + 1
                }
                other => {
                    return Err(Error::Parse(format!(
                        "decode map role {other} out of range"
                    )))
                }
            };
            if seen[slot] {
                return Err(Error::Parse(format!("decode map repeats role {role}")));
            }
            seen[slot] = true;
        }
        Ok(())
    }

    pub fn to_json(&self) -> String {
        let doc = DecodeMapDoc {
            version: FORMAT_VERSION,
            var_count: self.var_count,
            clause_count: self.clause_count,
            items: self
                .roles
                .iter()
                .enumerate()
                .map(|(index, role)| RoleDoc {
                    index,
                    label: role.to_string(),
                })
                .collect(),
        };
        let mut out = serde_json::to_string_pretty(&doc).expect("decode map serializes");
        out.push('\n');
        out
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: DecodeMapDoc =
            serde_json::from_str(text).map_err(|e| Error::Parse(format!("decode map: {e}")))?;
        if doc.version != FORMAT_VERSION {
            return Err(Error::Parse(format!(
                "unsupported decode map version {}",
                doc.version
            )));
        }
        let mut roles = vec![None; doc.items.len()];
        for item in &doc.items {
            let slot = roles
                .get_mut(item.index)
                .ok_or_else(|| Error::Parse(format!("decode map index {} out of range", item.index)))?;
            if slot.is_some() {
                return Err(Error::Parse(format!(
                    "decode map index {} appears twice",
                    item.index
                )));
            }
            *slot = Some(item.label.parse::<ItemLabel>()?);
        }
        let roles: Vec<ItemLabel> = roles
            .into_iter()
            .collect::<Option<_>>()
            .ok_or_else(|| Error::Parse("decode map has index gaps".into()))?;
        let map = Self {
            var_count: doc.var_count,
            clause_count: doc.clause_count,
            roles,
        };
        map.validate()?;
        Ok(map)
    }
}

const FORMAT_VERSION: u32 = 1;

#[derive(Serialize, Deserialize)]
struct InstanceDoc {
    version: u32,
    digits: usize,
    base: u32,
    items: Vec<ItemDoc>,
    target: String,
}

#[derive(Serialize, Deserialize)]
struct ItemDoc {
    label: String,
    digits: String,
}

#[derive(Serialize, Deserialize)]
struct DecodeMapDoc {
    version: u32,
    var_count: Var,
    clause_count: usize,
    items: Vec<RoleDoc>,
}

#[derive(Serialize, Deserialize)]
struct RoleDoc {
    index: usize,
    label: String,
}

/// Encodes a width-3 formula as a digit-vector Subset Sum instance.
///
/// Tautological clauses are refused: a variable item would then satisfy
/// its clause twice and the slack accounting below breaks down.
pub fn encode_subset_sum(cnf: &CnfFormula) -> Result<(SubsetSumInstance, DecodeMap)> {
    for (idx, clause) in cnf.clauses().iter().enumerate() {
        if clause.is_tautology() {
            return Err(Error::TautologicalClause { index: idx });
        }
    }
    let v = cnf.var_count() as usize;
    let m = cnf.clause_count();
    let digit_count = v + m;
    let var_col = |i: Var| i as usize - 1;
    let clause_col = |j: usize| v + j;

    let mut items = Vec::with_capacity(2 * v + 2 * m);
    for i in 1..=cnf.var_count() {
        for positive in [true, false] {
            let mut digits = vec![0u8; digit_count];
            digits[var_col(i)] = 1;
            for (j, clause) in cnf.clauses().iter().enumerate() {
                let wanted = if positive { i as i32 } else { -(i as i32) };
                if clause.distinct_lits().any(|l| l == wanted) {
                    digits[clause_col(j)] = 1;
                }
            }
            let label = if positive {
                ItemLabel::VarTrue(i)
            } else {
                ItemLabel::VarFalse(i)
            };
            items.push(SsItem::new(label, digits));
        }
    }
    for j in 0..m {
        for (label, weight) in [
            (ItemLabel::Slack1(j as u32 + 1), 1u8),
            (ItemLabel::Slack2(j as u32 + 1), 2u8),
        ] {
            let mut digits = vec![0u8; digit_count];
            digits[clause_col(j)] = weight;
            items.push(SsItem::new(label, digits));
        }
    }

    let mut target = vec![1u8; v];
    target.extend(std::iter::repeat(4u8).take(m));

    let roles = items.iter().map(|it| it.label).collect();
    let instance = SubsetSumInstance::new(digit_count, items, target)?;
    debug_assert!(instance.is_carry_free());
    let map = DecodeMap {
        var_count: cnf.var_count(),
        clause_count: m,
        roles,
    };
    Ok((instance, map))
}

/// Reads a variable assignment off a selection of items.
///
/// Exactly one of `t_i`, `f_i` must be chosen for every variable.
pub fn decode_subset_sum_solution(map: &DecodeMap, chosen: &[bool]) -> Result<Assignment> {
    map.validate()?;
    if chosen.len() != map.item_count() {
        return Err(Error::Decode(format!(
            "selection covers {} items, decode map lists {}",
            chosen.len(),
            map.item_count()
        )));
    }
    let mut values: Vec<Option<bool>> = vec![None; map.var_count as usize];
    for (role, &picked) in map.roles.iter().zip(chosen) {
        if !picked {
            continue;
        }
        let (var, polarity) = match role {
            ItemLabel::VarTrue(i) => (*i, true),
            ItemLabel::VarFalse(i) => (*i, false),
            _ => continue,
        };
        let slot = &mut values[var as usize - 1];
        if slot.is_some() {
            return Err(Error::Decode(format!(
                "both polarity items chosen for variable {var}"
            )));
        }
        *slot = Some(polarity);
    }
    let values: Vec<bool> = values
        .into_iter()
        .enumerate()
        .map(|(i, v)| v.ok_or_else(|| Error::Decode(format!("variable {} undecided", i + 1))))
        .collect::<Result<_>>()?;
    Ok(Assignment::new(values))
}

/// The selection a satisfying assignment induces: its polarity items plus
/// the slack items that pad each clause column up to 4.
pub fn induced_selection(cnf: &CnfFormula, assignment: &Assignment) -> Result<Vec<bool>> {
    let v = cnf.var_count() as usize;
    let m = cnf.clause_count();
    if (assignment.var_count() as usize) != v {
        return Err(Error::InvalidParameter(format!(
            "assignment covers {} variables, formula has {v}",
            assignment.var_count()
        )));
    }
    let mut chosen = vec![false; 2 * v + 2 * m];
    for i in 0..v {
        let idx = if assignment.get(i as Var + 1) {
            2 * i
        } else {
            2 * i + 1
        };
        chosen[idx] = true;
    }
    for (j, clause) in cnf.clauses().iter().enumerate() {
        let satisfied = clause
            .distinct_lits()
            .filter(|&l| assignment.lit_true(l))
            .count();
        if satisfied == 0 {
            return Err(Error::InvalidParameter(format!(
                "assignment leaves clause {} unsatisfied",
                j + 1
            )));
        }
        let slack = 4 - satisfied.min(3);
        chosen[2 * v + 2 * j] = slack % 2 == 1;
        chosen[2 * v + 2 * j + 1] = slack >= 2;
    }
    Ok(chosen)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cnf::Clause;
    use crate::instance::{generate_unique_violation, PMatrixInstance};
    use crate::mask::SubsetMask;
    use crate::sat_encode::{canonical_solution, encode_sat};

    fn pipeline(n: usize, k: usize, seed: u64) -> (CnfFormula, SubsetSumInstance, DecodeMap) {
        let inst = generate_unique_violation(n, k, seed, 20).unwrap();
        let (cnf, _) = encode_sat(&inst).unwrap();
        let (ss, map) = encode_subset_sum(&cnf).unwrap();
        (cnf, ss, map)
    }

    #[test]
    fn one_dimensional_pipeline_exact_items() {
        let inst = PMatrixInstance::product_profile(
            1,
            SubsetMask::from_indices(&[0], 1).unwrap(),
        )
        .unwrap();
        let (cnf, _) = encode_sat(&inst).unwrap();
        let (ss, map) = encode_subset_sum(&cnf).unwrap();

        assert_eq!(ss.digit_count(), 8);
        assert_eq!(ss.item_count(), 16);
        assert_eq!(digits_to_string(ss.target()), "11144444");
        let rendered: Vec<(String, String)> = ss
            .items()
            .iter()
            .map(|it| (it.label().to_string(), digits_to_string(it.digits())))
            .collect();
        let expected_head = [
            ("t1", "10010000"),
            ("f1", "10001000"),
            ("t2", "01001100"),
            ("f2", "01010010"),
            ("t3", "00100011"),
            ("f3", "00100100"),
        ];
        for (i, (label, digits)) in expected_head.iter().enumerate() {
            assert_eq!(rendered[i], (label.to_string(), digits.to_string()));
        }
        for j in 0..5 {
            assert_eq!(rendered[6 + 2 * j].0, format!("s1_{}", j + 1));
            assert_eq!(rendered[6 + 2 * j + 1].0, format!("s2_{}", j + 1));
        }
        assert_eq!(map.var_count(), 3);
        assert_eq!(map.clause_count(), 5);
        map.validate().unwrap();
    }

    #[test]
    fn counts_and_carry_freeness_across_dimensions() {
        for n in 1..=6 {
            let (cnf, ss, _) = pipeline(n, 1 + n / 2, 17);
            assert_eq!(ss.digit_count(), cnf.var_count() as usize + cnf.clause_count());
            assert_eq!(
                ss.item_count(),
                2 * cnf.var_count() as usize + 2 * cnf.clause_count()
            );
            assert!(ss.is_carry_free());
            assert!(ss.max_column_sum() <= 6);
        }
    }

    #[test]
    fn induced_selection_hits_target() {
        let inst = generate_unique_violation(4, 2, 23, 20).unwrap();
        let (cnf, varmap) = encode_sat(&inst).unwrap();
        let (ss, map) = encode_subset_sum(&cnf).unwrap();
        let solution = canonical_solution(&varmap, inst.witness().unwrap());
        let chosen = induced_selection(&cnf, &solution).unwrap();
        assert!(ss.check_selection(&chosen).unwrap());

        let decoded = decode_subset_sum_solution(&map, &chosen).unwrap();
        assert_eq!(decoded, solution);
    }

    #[test]
    fn selection_with_wrong_sum_is_rejected() {
        let (cnf, ss, _) = pipeline(2, 1, 3);
        let solution_bits = (0..1u64 << cnf.var_count())
            .map(|bits| Assignment::from_bits(cnf.var_count(), bits))
            .find(|a| cnf.eval(a))
            .unwrap();
        let mut chosen = induced_selection(&cnf, &solution_bits).unwrap();
        assert!(ss.check_selection(&chosen).unwrap());
        let flip = chosen.iter().position(|&c| !c).unwrap();
        chosen[flip] = true;
        assert!(!ss.check_selection(&chosen).unwrap());
    }

    #[test]
    fn tautologies_are_refused() {
        let mut cnf = CnfFormula::new(2);
        cnf.push(Clause::new(&[1, -1, 2]).unwrap()).unwrap();
        assert!(matches!(
            encode_subset_sum(&cnf),
            Err(Error::TautologicalClause { index: 0 })
        ));
    }

    #[test]
    fn unsatisfying_assignment_has_no_induced_selection() {
        let (cnf, _, _) = pipeline(2, 2, 0);
        let all_false = Assignment::new(vec![false; cnf.var_count() as usize]);
        assert!(induced_selection(&cnf, &all_false).is_err());
    }

    #[test]
    fn decode_rejects_double_and_missing_polarity() {
        let (_, ss, map) = pipeline(1, 1, 0);
        let mut both = vec![false; ss.item_count()];
        both[0] = true;
        both[1] = true;
        assert!(matches!(
            decode_subset_sum_solution(&map, &both),
            Err(Error::Decode(_))
        ));
        let neither = vec![false; ss.item_count()];
        assert!(matches!(
            decode_subset_sum_solution(&map, &neither),
            Err(Error::Decode(_))
        ));
    }

    #[test]
    fn instance_json_round_trip() {
        let (_, ss, map) = pipeline(2, 1, 5);
        let text = ss.to_json();
        assert_eq!(SubsetSumInstance::from_json(&text).unwrap(), ss);
        let map_text = map.to_json();
        assert_eq!(DecodeMap::from_json(&map_text).unwrap(), map);

        assert!(SubsetSumInstance::from_json("{}").is_err());
        let wrong_base = text.replace("\"base\": 10", "\"base\": 2");
        assert!(SubsetSumInstance::from_json(&wrong_base).is_err());
    }

    #[test]
    fn label_string_forms() {
        for label in [
            ItemLabel::VarTrue(3),
            ItemLabel::VarFalse(12),
            ItemLabel::Slack1(7),
            ItemLabel::Slack2(1),
            ItemLabel::Plain(9),
        ] {
            let text = label.to_string();
            assert_eq!(text.parse::<ItemLabel>().unwrap(), label);
        }
        assert!("q7".parse::<ItemLabel>().is_err());
        assert!("t".parse::<ItemLabel>().is_err());
        assert!("s3_1".parse::<ItemLabel>().is_err());
    }

    #[test]
    fn digit_helpers() {
        assert_eq!(digits_value(&[1, 0, 4]), Int::from(104));
        assert_eq!(digits_to_string(&[0, 9, 2]), "092");
        assert_eq!(digits_from_str("092").unwrap(), vec![0, 9, 2]);
        assert!(digits_from_str("0a2").is_err());
    }
}
