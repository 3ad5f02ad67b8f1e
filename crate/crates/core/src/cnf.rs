//! Width-3 CNF formulas with DIMACS input and output.
//!
//! Clauses are stored as exactly three literals; narrower clauses are
//! padded by repeating their last literal, so consumers that care about
//! the literal set must go through [`Clause::distinct_lits`].

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// 1-based variable index.
pub type Var = u32;

/// Nonzero literal; the sign carries the polarity, DIMACS style.
pub type Lit = i32;

pub fn lit_var(lit: Lit) -> Var {
    lit.unsigned_abs()
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Clause([Lit; 3]);

impl Clause {
    /// Builds a width-3 clause from 1 to 3 literals, padding by repetition.
    pub fn new(lits: &[Lit]) -> Result<Self> {
        if lits.is_empty() || lits.len() > 3 {
            return Err(Error::InvalidParameter(format!(
                "clause must carry 1 to 3 literals, got {}",
                lits.len()
            )));
        }
        if lits.iter().any(|&l| l == 0) {
            return Err(Error::InvalidParameter("literal 0 is reserved".into()));
        }
        let last = *lits.last().expect("nonempty");
        let mut padded = [last; 3];
        padded[..lits.len()].copy_from_slice(lits);
        Ok(Self(padded))
    }

    pub fn lits(&self) -> &[Lit; 3] {
        &self.0
    }

    /// The literal set, without the padding repeats.
    pub fn distinct_lits(&self) -> impl Iterator<Item = Lit> + '_ {
        self.0
            .iter()
            .enumerate()
            .filter(|(i, l)| !self.0[..*i].contains(l))
            .map(|(_, &l)| l)
    }

    pub fn is_tautology(&self) -> bool {
        self.0.iter().any(|&l| self.0.contains(&-l))
    }

    pub fn max_var(&self) -> Var {
        self.0.iter().map(|&l| lit_var(l)).max().expect("width 3")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CnfFormula {
    var_count: Var,
    clauses: Vec<Clause>,
}

impl CnfFormula {
    pub fn new(var_count: Var) -> Self {
        Self {
            var_count,
            clauses: Vec::new(),
        }
    }

    pub fn push(&mut self, clause: Clause) -> Result<()> {
        if clause.max_var() > self.var_count {
            return Err(Error::InvalidParameter(format!(
                "clause references variable {} beyond the declared {}",
                clause.max_var(),
                self.var_count
            )));
        }
        self.clauses.push(clause);
        Ok(())
    }

    pub fn var_count(&self) -> Var {
        self.var_count
    }

    pub fn clause_count(&self) -> usize {
        self.clauses.len()
    }

    pub fn clauses(&self) -> &[Clause] {
        &self.clauses
    }

    pub fn eval(&self, assignment: &Assignment) -> bool {
        self.clauses
            .iter()
            .all(|c| c.lits().iter().any(|&l| assignment.lit_true(l)))
    }

    pub fn to_dimacs(&self) -> String {
        let mut out = format!("p cnf {} {}\n", self.var_count, self.clauses.len());
        for c in &self.clauses {
            let [a, b, d] = *c.lits();
            out.push_str(&format!("{a} {b} {d} 0\n"));
        }
        out
    }

    pub fn from_dimacs(text: &str) -> Result<Self> {
        let mut header: Option<(Var, usize)> = None;
        let mut clauses = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('c') {
                continue;
            }
            if line.starts_with('p') {
                if header.is_some() {
                    return Err(Error::Parse("duplicate DIMACS header".into()));
                }
                let fields: Vec<&str> = line.split_whitespace().collect();
                if fields.len() != 4 || fields[1] != "cnf" {
                    return Err(Error::Parse(format!("bad header at line {}", lineno + 1)));
                }
                let vars = fields[2]
                    .parse::<Var>()
                    .map_err(|_| Error::Parse(format!("bad var count {:?}", fields[2])))?;
                let count = fields[3]
                    .parse::<usize>()
                    .map_err(|_| Error::Parse(format!("bad clause count {:?}", fields[3])))?;
                header = Some((vars, count));
                continue;
            }
            let mut lits = Vec::new();
            let mut terminated = false;
            for tok in line.split_whitespace() {
                let lit = tok
                    .parse::<Lit>()
                    .map_err(|_| Error::Parse(format!("bad literal {tok:?} at line {}", lineno + 1)))?;
                if lit == 0 {
                    terminated = true;
                    break;
                }
                lits.push(lit);
            }
            if !terminated {
                return Err(Error::Parse(format!(
                    "clause at line {} is not 0-terminated",
                    lineno + 1
                )));
            }
            clauses.push(Clause::new(&lits).map_err(|e| Error::Parse(e.to_string()))?);
        }
        let (var_count, declared) =
            header.ok_or_else(|| Error::Parse("missing DIMACS header".into()))?;
        if clauses.len() != declared {
            return Err(Error::Parse(format!(
                "header declares {declared} clauses, found {}",
                clauses.len()
            )));
        }
        let mut formula = CnfFormula::new(var_count);
        for c in clauses {
            formula.push(c).map_err(|e| Error::Parse(e.to_string()))?;
        }
        Ok(formula)
    }
}

/// Total assignment over variables `1..=var_count`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Assignment {
    values: Vec<bool>,
}

impl Assignment {
    pub fn new(values: Vec<bool>) -> Self {
        Self { values }
    }

    /// Assignment from the low `var_count` bits of `bits`; bit `i` is
    /// variable `i + 1`.
    pub fn from_bits(var_count: Var, bits: u64) -> Self {
        Self {
            values: (0..var_count).map(|i| (bits >> i) & 1 == 1).collect(),
        }
    }

    pub fn var_count(&self) -> Var {
        self.values.len() as Var
    }

    pub fn get(&self, var: Var) -> bool {
        self.values[(var - 1) as usize]
    }

    pub fn lit_true(&self, lit: Lit) -> bool {
        self.get(lit_var(lit)) == (lit > 0)
    }

    pub fn values(&self) -> &[bool] {
        &self.values
    }
}

/// Partial assignment used by propagation and randomized search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartialAssignment {
    values: Vec<Option<bool>>,
}

impl PartialAssignment {
    pub fn empty(var_count: Var) -> Self {
        Self {
            values: vec![None; var_count as usize],
        }
    }

    pub fn var_count(&self) -> Var {
        self.values.len() as Var
    }

    pub fn get(&self, var: Var) -> Option<bool> {
        self.values[(var - 1) as usize]
    }

    pub fn set(&mut self, var: Var, value: bool) {
        self.values[(var - 1) as usize] = Some(value);
    }

    /// The literal's truth value under the partial assignment, if decided.
    pub fn lit_value(&self, lit: Lit) -> Option<bool> {
        self.get(lit_var(lit)).map(|v| v == (lit > 0))
    }

    pub fn is_total(&self) -> bool {
        self.values.iter().all(|v| v.is_some())
    }

    pub fn assigned_count(&self) -> usize {
        self.values.iter().filter(|v| v.is_some()).count()
    }

    pub fn into_total(self) -> Option<Assignment> {
        let values: Option<Vec<bool>> = self.values.into_iter().collect();
        values.map(Assignment::new)
    }
}
