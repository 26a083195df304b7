//! Evaluation of terms, formulas, and sequents on finite algebras.
//!
//! Assignments enumerate in ascending element order with the last context
//! variable varying fastest, so a reported counterexample is the least
//! falsifying assignment in lexicographic order.

use std::collections::BTreeMap;

use rayon::iter::{IntoParallelIterator, ParallelIterator};

use crate::algebra::{AlgebraRef, Elem};
use crate::error::{Error, Result};
use crate::sequent::ast::{Coeff, Formula, Sequent, Term};

/// Cap on assignment count for sequent checks, |A|^(context length).
pub const DEFAULT_CHECK_BUDGET: u64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CheckOutcome {
    Holds,
    Counterexample {
        /// Values for the context variables, in context order.
        assignment: BTreeMap<String, Elem>,
        /// True when the succedent contains an indexed disjunction, whose
        /// failure on a finite algebra refutes only the instances up to the
        /// stated bound.
        bounded: bool,
    },
}

impl CheckOutcome {
    pub fn holds(&self) -> bool {
        matches!(self, CheckOutcome::Holds)
    }
}

fn resolve_coeff(k: &Coeff, idx: &BTreeMap<String, u64>) -> Result<u64> {
    match k {
        Coeff::Lit(v) => Ok(*v),
        Coeff::Idx(name) => idx
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnboundVar(format!("index variable {}", name))),
    }
}

pub fn eval_term(
    alg: &AlgebraRef,
    t: &Term,
    env: &BTreeMap<String, Elem>,
    idx: &BTreeMap<String, u64>,
) -> Result<Elem> {
    Ok(match t {
        Term::Zero => alg.zero()?,
        Term::One => alg.one()?,
        Term::Var(name) => env
            .get(name)
            .cloned()
            .ok_or_else(|| Error::UnboundVar(name.clone()))?,
        Term::Neg(a) => alg.neg(&eval_term(alg, a, env, idx)?)?,
        Term::Oplus(a, b) => {
            let a = eval_term(alg, a, env, idx)?;
            let b = eval_term(alg, b, env, idx)?;
            alg.oplus(&a, &b)?
        }
        Term::Odot(a, b) => {
            let a = eval_term(alg, a, env, idx)?;
            let b = eval_term(alg, b, env, idx)?;
            alg.odot(&a, &b)?
        }
        Term::Ominus(a, b) => {
            let a = eval_term(alg, a, env, idx)?;
            let b = eval_term(alg, b, env, idx)?;
            alg.ominus(&a, &b)?
        }
        Term::Join(a, b) => {
            let a = eval_term(alg, a, env, idx)?;
            let b = eval_term(alg, b, env, idx)?;
            alg.join(&a, &b)?
        }
        Term::Meet(a, b) => {
            let a = eval_term(alg, a, env, idx)?;
            let b = eval_term(alg, b, env, idx)?;
            alg.meet(&a, &b)?
        }
        Term::Dist(a, b) => {
            let a = eval_term(alg, a, env, idx)?;
            let b = eval_term(alg, b, env, idx)?;
            alg.dist(&a, &b)?
        }
        Term::Scalar(k, a) => {
            let k = resolve_coeff(k, idx)?;
            let a = eval_term(alg, a, env, idx)?;
            alg.scalar(k, &a)?
        }
        Term::Power(a, k) => {
            let k = resolve_coeff(k, idx)?;
            let a = eval_term(alg, a, env, idx)?;
            alg.power(&a, k)?
        }
    })
}

pub fn eval_formula(
    alg: &AlgebraRef,
    f: &Formula,
    env: &BTreeMap<String, Elem>,
    idx: &BTreeMap<String, u64>,
) -> Result<bool> {
    Ok(match f {
        Formula::Truth => true,
        Formula::Falsity => false,
        Formula::Eq(a, b) => eval_term(alg, a, env, idx)? == eval_term(alg, b, env, idx)?,
        Formula::Leq(a, b) => {
            let a = eval_term(alg, a, env, idx)?;
            let b = eval_term(alg, b, env, idx)?;
            alg.leq(&a, &b)?
        }
        Formula::Conj(parts) => {
            for p in parts {
                if !eval_formula(alg, p, env, idx)? {
                    return Ok(false);
                }
            }
            true
        }
        Formula::Disj(parts) => {
            for p in parts {
                if eval_formula(alg, p, env, idx)? {
                    return Ok(true);
                }
            }
            false
        }
        Formula::Exists(vars, body) => {
            let universe: Vec<Elem> = alg.enumerate()?;
            let mut env = env.clone();
            exists_scan(alg, vars, body, &mut env, idx, &universe)?
        }
        Formula::IndexedDisj { var, bound, body } => {
            let mut idx = idx.clone();
            for v in 0..=*bound {
                idx.insert(var.clone(), v);
                if eval_formula(alg, body, env, &idx)? {
                    return Ok(true);
                }
            }
            false
        }
    })
}

fn exists_scan(
    alg: &AlgebraRef,
    vars: &[String],
    body: &Formula,
    env: &mut BTreeMap<String, Elem>,
    idx: &BTreeMap<String, u64>,
    universe: &[Elem],
) -> Result<bool> {
    match vars.split_first() {
        None => eval_formula(alg, body, env, idx),
        Some((v, rest)) => {
            for e in universe {
                let prev = env.insert(v.clone(), e.clone());
                let found = exists_scan(alg, rest, body, env, idx, universe)?;
                match prev {
                    Some(p) => {
                        env.insert(v.clone(), p);
                    }
                    None => {
                        env.remove(v);
                    }
                }
                if found {
                    return Ok(true);
                }
            }
            Ok(false)
        }
    }
}

/// Assignment spaces at least this large are split across worker threads.
const PARALLEL_CUTOFF: u64 = 4096;

/// Checks a sequent on every assignment of the context variables, in
/// ascending order with the last variable fastest. Returns the least
/// counterexample if one exists within the budget. Large assignment spaces
/// are partitioned across workers; the merge keeps the globally least
/// failing index, so the outcome does not depend on scheduling.
pub fn check_sequent(alg: &AlgebraRef, seq: &Sequent, budget: Option<u64>) -> Result<CheckOutcome> {
    let universe = alg.enumerate()?;
    let budget = budget.unwrap_or(DEFAULT_CHECK_BUDGET);
    let n = universe.len() as u64;
    let vars = seq.context.len() as u32;
    let total = n
        .checked_pow(vars)
        .ok_or_else(|| Error::BudgetExceeded("assignment count overflows u64".into()))?;
    if total > budget {
        return Err(Error::BudgetExceeded(format!(
            "{} assignments exceed the budget of {}",
            total, budget
        )));
    }
    let bounded = seq.succedent.contains_indexed_disj();
    // Index digits in base n, most significant digit first in context order.
    let test_index = |i: u64| -> Option<Result<BTreeMap<String, Elem>>> {
        let mut rem = i;
        let mut env = BTreeMap::new();
        for v in seq.context.iter().rev() {
            let c = (rem % n) as usize;
            rem /= n;
            env.insert(v.clone(), universe[c].clone());
        }
        let idx = BTreeMap::new();
        match eval_formula(alg, &seq.antecedent, &env, &idx) {
            Err(e) => return Some(Err(e)),
            Ok(false) => return None,
            Ok(true) => {}
        }
        match eval_formula(alg, &seq.succedent, &env, &idx) {
            Err(e) => Some(Err(e)),
            Ok(true) => None,
            Ok(false) => Some(Ok(env)),
        }
    };
    let first = if total >= PARALLEL_CUTOFF {
        (0..total).into_par_iter().find_map_first(test_index)
    } else {
        (0..total).find_map(test_index)
    };
    match first {
        None => Ok(CheckOutcome::Holds),
        Some(Err(e)) => Err(e),
        Some(Ok(assignment)) => Ok(CheckOutcome::Counterexample {
            assignment,
            bounded,
        }),
    }
}

/// All elements satisfying a one-variable formula, in ascending order.
pub fn solutions(alg: &AlgebraRef, f: &Formula, var: &str) -> Result<Vec<Elem>> {
    let mut free = std::collections::BTreeSet::new();
    f.free_vars(&mut free);
    for v in &free {
        if v != var {
            return Err(Error::UnboundVar(format!(
                "formula mentions {} besides {}",
                v, var
            )));
        }
    }
    let idx = BTreeMap::new();
    let mut out = Vec::new();
    for e in alg.enumerate()? {
        let mut env = BTreeMap::new();
        env.insert(var.to_string(), e.clone());
        if eval_formula(alg, f, &env, &idx)? {
            out.push(e);
        }
    }
    Ok(out)
}
