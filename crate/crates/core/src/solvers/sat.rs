//! SAT solvers: exhaustive enumeration, set-wise unit propagation, and a
//! permutation-guided randomized search in the PPSZ style.

use rand::seq::SliceRandom;
use rand::Rng;

use super::{Outcome, TrialLog};
use crate::cnf::{lit_var, Assignment, CnfFormula, Lit, PartialAssignment, Var};
use crate::error::{Error, Result};
use crate::seeds::{self, stage_rng};

/// Enumeration walks all `2^v` assignments, so cap the variable count.
pub const MAX_ENUMERATION_VARS: Var = 22;

/// All satisfying assignments, in increasing bit-pattern order.
pub fn sat_enumerate(cnf: &CnfFormula) -> Result<Vec<Assignment>> {
    let v = cnf.var_count();
    if v > MAX_ENUMERATION_VARS {
        return Err(Error::SizeLimit {
            what: "CNF variable count",
            size: v as usize,
            limit: MAX_ENUMERATION_VARS as usize,
            hint: Some("use the randomized solver for larger formulas"),
        });
    }
    Ok((0..1u64 << v)
        .map(|bits| Assignment::from_bits(v, bits))
        .filter(|a| cnf.eval(a))
        .collect())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Propagation {
    /// No unit clause left; carries the extended partial assignment.
    Fixpoint(PartialAssignment),
    /// Some clause has every distinct literal false.
    Conflict { clause: usize },
}

/// Runs unit propagation to fixpoint, treating each clause as its literal
/// set so padding repeats do not mask unit clauses.
pub fn unit_propagate(cnf: &CnfFormula, start: &PartialAssignment) -> Propagation {
    let mut partial = start.clone();
    loop {
        let mut changed = false;
        for (idx, clause) in cnf.clauses().iter().enumerate() {
            let mut satisfied = false;
            let mut pending: Option<Lit> = None;
            let mut pending_count = 0usize;
            for lit in clause.distinct_lits() {
                match partial.lit_value(lit) {
                    Some(true) => {
                        satisfied = true;
                        break;
                    }
                    Some(false) => {}
                    None => {
                        pending.get_or_insert(lit);
                        pending_count += 1;
                    }
                }
            }
            if satisfied {
                continue;
            }
            match pending_count {
                0 => return Propagation::Conflict { clause: idx },
                1 => {
                    let lit = pending.expect("counted one pending literal");
                    partial.set(lit_var(lit), lit > 0);
                    changed = true;
                }
                _ => {}
            }
        }
        if !changed {
            return Propagation::Fixpoint(partial);
        }
    }
}

/// One randomized trial: visit variables in a random order, propagate
/// before every decision, and guess a uniform bit only when the variable
/// is still open. Returns a verified satisfying assignment on success.
pub fn ppsz_trial(cnf: &CnfFormula, rng: &mut impl Rng) -> Option<Assignment> {
    let v = cnf.var_count();
    let mut order: Vec<Var> = (1..=v).collect();
    order.shuffle(rng);
    let mut partial = PartialAssignment::empty(v);
    for &var in &order {
        partial = match unit_propagate(cnf, &partial) {
            Propagation::Fixpoint(p) => p,
            Propagation::Conflict { .. } => return None,
        };
        if partial.get(var).is_none() {
            partial.set(var, rng.gen());
        }
    }
    let total = partial.into_total().expect("every variable was visited");
    cnf.eval(&total).then_some(total)
}

/// Repeats [`ppsz_trial`] up to `max_trials` times on the seed's search
/// stream. The log records how many trials ran either way.
pub fn ppsz_solve(
    cnf: &CnfFormula,
    max_trials: u64,
    seed: u64,
) -> (Option<Assignment>, TrialLog) {
    let mut rng = stage_rng(seed, seeds::stream::PPSZ);
    let mut log = TrialLog {
        representation: "3sat-ppsz".into(),
        n: None,
        d: cnf.var_count() as u64,
        seed: Some(seed),
        trials: 0,
        outcome: Outcome::Exhausted,
        table_entries: 0,
        millis: None,
    };
    for trial in 1..=max_trials {
        log.trials = trial;
        if let Some(found) = ppsz_trial(cnf, &mut rng) {
            log.outcome = Outcome::Found;
            return (Some(found), log);
        }
    }
    (None, log)
}
