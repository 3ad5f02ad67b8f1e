//! Solution-aware 3-CNF encoding of the hidden-subset search.
//!
//! For an instance of dimension `N` the formula uses `3N` variables:
//! selection variables `x_i = i`, match flags `a_i = N + i`, and chain
//! flags `b_i = 2N + i`, all 1-based. `a_i` is tied to the literal that
//! says position `i` agrees with the witness, `b_i` accumulates the
//! conjunction `a_1 ∧ … ∧ a_i`, and a final unit clause asserts `b_N`.
//! The result has `5N` clauses and exactly one satisfying assignment,
//! the one whose selection variables spell out the witness.

use serde::{Deserialize, Serialize};

use crate::cnf::{Assignment, Clause, CnfFormula, Lit, Var};
use crate::error::{Error, Result};
use crate::instance::PMatrixInstance;
use crate::mask::SubsetMask;

/// Variable layout of one encoded instance.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VarMap {
    version: u32,
    n: usize,
    witness_vars: Vec<Var>,
    aux_match: Vec<Var>,
    aux_chain: Vec<Var>,
}

const FORMAT_VERSION: u32 = 1;

impl VarMap {
    fn for_dimension(n: usize) -> Self {
        let n_var = n as Var;
        Self {
            version: FORMAT_VERSION,
            n,
            witness_vars: (1..=n_var).collect(),
            aux_match: (n_var + 1..=2 * n_var).collect(),
            aux_chain: (2 * n_var + 1..=3 * n_var).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn witness_vars(&self) -> &[Var] {
        &self.witness_vars
    }

    pub fn aux_match(&self) -> &[Var] {
        &self.aux_match
    }

    pub fn aux_chain(&self) -> &[Var] {
        &self.aux_chain
    }

    pub fn var_count(&self) -> Var {
        3 * self.n as Var
    }

    /// The three groups must partition `1..=3n`.
    pub fn validate(&self) -> Result<()> {
        if self.version != FORMAT_VERSION {
            return Err(Error::Parse(format!(
                "unsupported variable map version {}",
                self.version
            )));
        }
        let n = self.n;
        if self.witness_vars.len() != n || self.aux_match.len() != n || self.aux_chain.len() != n {
            return Err(Error::Parse(format!(
                "variable groups must each have {n} entries"
            )));
        }
        let mut seen = vec![false; 3 * n];
        for &v in self
            .witness_vars
            .iter()
            .chain(&self.aux_match)
            .chain(&self.aux_chain)
        {
            let idx = v as usize;
            if idx == 0 || idx > 3 * n {
                return Err(Error::Parse(format!("variable {v} outside 1..={}", 3 * n)));
            }
            if seen[idx - 1] {
                return Err(Error::Parse(format!("variable {v} appears twice")));
            }
            seen[idx - 1] = true;
        }
        Ok(())
    }

    pub fn to_json(&self) -> String {
        let mut out = serde_json::to_string_pretty(self).expect("variable map serializes");
        out.push('\n');
        out
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let map: VarMap =
            serde_json::from_str(text).map_err(|e| Error::Parse(format!("variable map: {e}")))?;
        map.validate()?;
        Ok(map)
    }
}

/// Encodes the instance's witness search as a 3-CNF formula.
///
/// Needs the witness, so it fails on redacted instances.
pub fn encode_sat(instance: &PMatrixInstance) -> Result<(CnfFormula, VarMap)> {
    let witness = instance.witness().ok_or(Error::MissingWitness)?;
    let n = instance.n();
    let map = VarMap::for_dimension(n);
    let mut formula = CnfFormula::new(map.var_count());

    let x = |i: usize| map.witness_vars[i - 1] as Lit;
    let a = |i: usize| map.aux_match[i - 1] as Lit;
    let b = |i: usize| map.aux_chain[i - 1] as Lit;
    // Literal meaning "position i agrees with the witness".
    let matches = |i: usize| if witness.contains(i - 1) { x(i) } else { -x(i) };

    for i in 1..=n {
        formula.push(Clause::new(&[-a(i), matches(i)])?)?;
        formula.push(Clause::new(&[a(i), -matches(i)])?)?;
    }
    formula.push(Clause::new(&[-b(1), a(1)])?)?;
    formula.push(Clause::new(&[b(1), -a(1)])?)?;
    for i in 2..=n {
        formula.push(Clause::new(&[-b(i), b(i - 1)])?)?;
        formula.push(Clause::new(&[-b(i), a(i)])?)?;
        formula.push(Clause::new(&[b(i), -b(i - 1), -a(i)])?)?;
    }
    formula.push(Clause::new(&[b(n)])?)?;

    debug_assert_eq!(formula.clause_count(), 5 * n);
    Ok((formula, map))
}

/// Reads the witness subset off a satisfying assignment.
pub fn decode_sat_solution(map: &VarMap, assignment: &Assignment) -> Result<SubsetMask> {
    map.validate()?;
    if (assignment.var_count() as usize) < 3 * map.n {
        return Err(Error::Decode(format!(
            "assignment covers {} variables, need {}",
            assignment.var_count(),
            3 * map.n
        )));
    }
    let indices: Vec<usize> = map
        .witness_vars
        .iter()
        .enumerate()
        .filter(|(_, &v)| assignment.get(v))
        .map(|(i, _)| i)
        .collect();
    SubsetMask::from_indices(&indices, map.n)
        .map_err(|e| Error::Decode(format!("decoded subset: {e}")))
}

/// The intended satisfying assignment: selections spell the witness and
/// every auxiliary flag holds.
pub fn canonical_solution(map: &VarMap, witness: SubsetMask) -> Assignment {
    let mut values = vec![true; 3 * map.n];
    for (i, &v) in map.witness_vars.iter().enumerate() {
        values[(v - 1) as usize] = witness.contains(i);
    }
    Assignment::new(values)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::generate_unique_violation;

    fn instance(n: usize, k: usize, seed: u64) -> PMatrixInstance {
        generate_unique_violation(n, k, seed, 20).unwrap()
    }

    #[test]
    fn one_dimensional_formula_exact_text() {
        let inst = PMatrixInstance::product_profile(
            1,
            SubsetMask::from_indices(&[0], 1).unwrap(),
        )
        .unwrap();
        let (formula, map) = encode_sat(&inst).unwrap();
        assert_eq!(
            formula.to_dimacs(),
            "p cnf 3 5\n-2 1 1 0\n2 -1 -1 0\n-3 2 2 0\n3 -2 -2 0\n3 3 3 0\n"
        );
        assert_eq!(map.witness_vars(), &[1]);
        assert_eq!(map.aux_match(), &[2]);
        assert_eq!(map.aux_chain(), &[3]);
    }

    #[test]
    fn counts_match_dimension() {
        for n in 1..=6 {
            let inst = instance(n, (n + 1) / 2, 3);
            let (formula, map) = encode_sat(&inst).unwrap();
            assert_eq!(formula.var_count(), 3 * n as Var);
            assert_eq!(formula.clause_count(), 5 * n);
            assert_eq!(map.var_count(), 3 * n as Var);
            map.validate().unwrap();
        }
    }

    #[test]
    fn unique_satisfying_assignment_spells_witness() {
        let inst = instance(3, 2, 41);
        let witness = inst.witness().unwrap();
        let (formula, map) = encode_sat(&inst).unwrap();

        let mut solutions = Vec::new();
        for bits in 0..1u64 << formula.var_count() {
            let a = Assignment::from_bits(formula.var_count(), bits);
            if formula.eval(&a) {
                solutions.push(a);
            }
        }
        assert_eq!(solutions.len(), 1);
        assert_eq!(decode_sat_solution(&map, &solutions[0]).unwrap(), witness);
        assert_eq!(solutions[0], canonical_solution(&map, witness));
    }

    #[test]
    fn canonical_solution_satisfies_larger_formulas() {
        for (n, k, seed) in [(5, 1, 0), (6, 3, 1), (8, 8, 2)] {
            let inst = instance(n, k, seed);
            let (formula, map) = encode_sat(&inst).unwrap();
            let a = canonical_solution(&map, inst.witness().unwrap());
            assert!(formula.eval(&a));
            assert_eq!(
                decode_sat_solution(&map, &a).unwrap(),
                inst.witness().unwrap()
            );
        }
    }

    #[test]
    fn redacted_instances_cannot_be_encoded() {
        let inst = instance(4, 2, 7).redacted();
        assert!(matches!(encode_sat(&inst), Err(Error::MissingWitness)));
    }

    #[test]
    fn varmap_json_round_trip_and_validation() {
        let (_, map) = encode_sat(&instance(4, 2, 9)).unwrap();
        let text = map.to_json();
        assert_eq!(VarMap::from_json(&text).unwrap(), map);

        let broken = text.replace("\"n\": 4", "\"n\": 5");
        assert!(VarMap::from_json(&broken).is_err());

        let duplicated = text.replacen("5", "6", 1);
        assert!(VarMap::from_json(&duplicated).is_err());
    }

    #[test]
    fn decode_requires_enough_variables() {
        let (_, map) = encode_sat(&instance(3, 1, 2)).unwrap();
        let short = Assignment::new(vec![true; 5]);
        assert!(matches!(
            decode_sat_solution(&map, &short),
            Err(Error::Decode(_))
        ));
    }
}
