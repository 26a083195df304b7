//! Proper subvarieties of MV-algebras in the Komori classification.
//!
//! A variety is presented by a pair of finite sets of positive ranks: the
//! first lists finite chains, the second lists the infinite rank-j chains
//! built over the lexicographic integer plane. Membership of a finite
//! algebra is decided by evaluating the defining equations exhaustively.

use std::collections::BTreeSet;
use std::fmt;

use num_integer::Integer;

use crate::algebra::{AlgebraRef, Elem};
use crate::error::{Error, Result};
use crate::radical;
use crate::sequent::ast::Term;
use crate::sequent::eval::eval_term;

/// Presentation (I, J) of a variety: I ranks of finite chains, J ranks of
/// infinite chains with radical. I ∪ J must be nonempty, all ranks >= 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KomoriPair {
    pub finite: BTreeSet<u64>,
    pub lex: BTreeSet<u64>,
}

impl fmt::Display for KomoriPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |s: &BTreeSet<u64>| {
            s.iter()
                .map(|v| v.to_string())
                .collect::<Vec<_>>()
                .join(",")
        };
        write!(f, "I=[{}];J=[{}]", list(&self.finite), list(&self.lex))
    }
}

impl KomoriPair {
    pub fn new(
        finite: impl IntoIterator<Item = u64>,
        lex: impl IntoIterator<Item = u64>,
    ) -> Result<KomoriPair> {
        let finite: BTreeSet<u64> = finite.into_iter().collect();
        let lex: BTreeSet<u64> = lex.into_iter().collect();
        if finite.is_empty() && lex.is_empty() {
            return Err(Error::Invalid("a variety pair needs at least one rank".into()));
        }
        if finite.iter().chain(&lex).any(|&r| r == 0) {
            return Err(Error::Invalid("ranks in a variety pair must be >= 1".into()));
        }
        Ok(KomoriPair { finite, lex })
    }

    fn union(&self) -> impl Iterator<Item = u64> + '_ {
        self.finite.iter().chain(&self.lex).copied()
    }

    /// lcm of all ranks in the pair.
    pub fn invariant(&self) -> u64 {
        self.union().fold(1u64, |acc, r| acc.lcm(&r))
    }

    /// Largest rank in the pair.
    pub fn max_rank(&self) -> u64 {
        self.union().max().expect("pair is nonempty")
    }

    /// Divisors of i that divide no rank in J.
    pub fn delta(&self, i: u64) -> BTreeSet<u64> {
        divisors(i)
            .into_iter()
            .filter(|d| !self.lex.iter().any(|j| j % d == 0))
            .collect()
    }

    /// Union of delta over I: the orders at which the variety admits no
    /// infinitesimals.
    pub fn rigid_ranks(&self) -> BTreeSet<u64> {
        let mut out = BTreeSet::new();
        for &i in &self.finite {
            out.extend(self.delta(i));
        }
        out
    }

    /// Divisors of some rank in I.
    pub fn finite_divisors(&self) -> BTreeSet<u64> {
        self.finite.iter().flat_map(|&i| divisors(i)).collect()
    }

    /// Divisors of some rank in J.
    pub fn lex_divisors(&self) -> BTreeSet<u64> {
        self.lex.iter().flat_map(|&j| divisors(j)).collect()
    }

    /// Removes ranks whose generator is already in the variety of another:
    /// i in I goes when it divides another rank of I ∪ J, j in J when it
    /// divides another rank of J. A single simultaneous pass reaches the
    /// fixpoint because divisibility chains end at kept maximal ranks.
    pub fn reduce(&self) -> KomoriPair {
        let finite: BTreeSet<u64> = self
            .finite
            .iter()
            .copied()
            .filter(|&i| {
                let dominated_in_finite = self.finite.iter().any(|&k| k != i && k % i == 0);
                let dominated_in_lex = self.lex.iter().any(|&j| j % i == 0);
                !dominated_in_finite && !dominated_in_lex
            })
            .collect();
        let lex: BTreeSet<u64> = self
            .lex
            .iter()
            .copied()
            .filter(|&j| !self.lex.iter().any(|&k| k != j && k % j == 0))
            .collect();
        KomoriPair { finite, lex }
    }
}

/// Divisors of k in ascending order, k >= 1.
pub fn divisors(k: u64) -> Vec<u64> {
    let mut out: Vec<u64> = (1..=k).filter(|d| k.is_multiple_of(*d)).collect();
    out.sort_unstable();
    out
}

/// A defining equation in the single variable x.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Equation {
    pub name: String,
    pub lhs: Term,
    pub rhs: Term,
}

impl fmt::Display for Equation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {} = {}", self.name, self.lhs, self.rhs)
    }
}

impl Equation {
    /// Least element violating the equation, if any. Elements ascend.
    pub fn first_violation(&self, alg: &AlgebraRef) -> Result<Option<Elem>> {
        let idx = std::collections::BTreeMap::new();
        for e in alg.enumerate()? {
            let mut env = std::collections::BTreeMap::new();
            env.insert("x".to_string(), e.clone());
            let l = eval_term(alg, &self.lhs, &env, &idx)?;
            let r = eval_term(alg, &self.rhs, &env, &idx)?;
            if l != r {
                return Ok(Some(e));
            }
        }
        Ok(None)
    }
}

fn x() -> Term {
    Term::var("x")
}

/// Defining equations of the variety, in a fixed order: the degree equation
/// at the largest rank m, then one equation per p in (1, m) dividing no rank,
/// then one per order in rigid_ranks, then the degree equation at the lcm
/// when it differs from m.
pub fn dnl_equations(pair: &KomoriPair) -> Vec<Equation> {
    let m = pair.max_rank();
    let n = pair.invariant();
    let mut out = Vec::new();
    out.push(degree_equation(m, format!("a1(m={})", m)));
    for p in 2..m {
        if pair.union().all(|r| r % p != 0) {
            // (p x^(p-1))^(m+1) = (m+1) x^p
            let lhs = Term::Power(
                Box::new(Term::scalar(p, x().power(p - 1))),
                crate::sequent::ast::Coeff::Lit(m + 1),
            );
            let rhs = Term::scalar(m + 1, x().power(p));
            out.push(Equation {
                name: format!("a2(p={})", p),
                lhs,
                rhs,
            });
        }
    }
    for q in pair.rigid_ranks() {
        // (m+1) x^q = (m+2) x^q
        out.push(Equation {
            name: format!("a3(q={})", q),
            lhs: Term::scalar(m + 1, x().power(q)),
            rhs: Term::scalar(m + 2, x().power(q)),
        });
    }
    if n != m {
        out.push(degree_equation(n, format!("a1(n={})", n)));
    }
    out
}

/// ((k+1) x^k)^2 = 2 x^(k+1), the equation bounding the rank by k.
fn degree_equation(k: u64, name: String) -> Equation {
    let lhs = Term::scalar(k + 1, x().power(k)).squared();
    let rhs = Term::scalar(2, x().power(k + 1));
    Equation { name, lhs, rhs }
}

/// First equation of the pair's presentation that fails on the algebra,
/// together with its least violating element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub equation: Equation,
    pub witness: Elem,
}

/// Decides membership of a finite algebra in the variety by exhaustive
/// evaluation of the defining equations. None means member.
pub fn is_member_finite(alg: &AlgebraRef, pair: &KomoriPair) -> Result<Option<Violation>> {
    for eq in dnl_equations(pair) {
        if let Some(witness) = eq.first_violation(alg)? {
            return Ok(Some(Violation {
                equation: eq,
                witness,
            }));
        }
    }
    Ok(None)
}

/// Membership test for local algebras, finite or lexicographic: the rank
/// must divide a rank of the pair, and an algebra whose rank is covered
/// only by I must be simple, since those orders admit no radical.
pub fn is_local_member(alg: &AlgebraRef, pair: &KomoriPair) -> Result<bool> {
    let r = radical::rank(alg)?;
    let in_lex = pair.lex_divisors().contains(&r);
    let in_finite = pair.finite_divisors().contains(&r);
    if !in_lex && !in_finite {
        return Ok(false);
    }
    if in_lex {
        return Ok(true);
    }
    radical::is_simple(alg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::AlgebraRef;
    use crate::lgroup::{LGroup, LGroupElem};
    use num_bigint::BigInt;

    fn pair(i: &[u64], j: &[u64]) -> KomoriPair {
        KomoriPair::new(i.iter().copied(), j.iter().copied()).unwrap()
    }

    #[test]
    fn invariant_and_max() {
        let p = pair(&[2, 3], &[4]);
        assert_eq!(p.invariant(), 12);
        assert_eq!(p.max_rank(), 4);
        let q = pair(&[6], &[]);
        assert_eq!(q.invariant(), 6);
        assert_eq!(q.max_rank(), 6);
    }

    #[test]
    fn validation() {
        assert!(KomoriPair::new([], []).is_err());
        assert!(KomoriPair::new([0], [1]).is_err());
        assert!(KomoriPair::new([], [1]).is_ok());
    }

    #[test]
    fn divisor_sets() {
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(divisors(1), vec![1]);
        // Divisors of 6 that divide no rank in J = {2}: drops 1 and 2.
        let p = pair(&[6], &[2]);
        assert_eq!(p.delta(6), BTreeSet::from([3, 6]));
        // Empty J keeps every divisor.
        let q = pair(&[6], &[]);
        assert_eq!(q.delta(6), BTreeSet::from([1, 2, 3, 6]));
        assert_eq!(q.rigid_ranks(), BTreeSet::from([1, 2, 3, 6]));
    }

    #[test]
    fn reduction() {
        let p = pair(&[2, 4], &[3]).reduce();
        assert_eq!(p, pair(&[4], &[3]));
        let q = pair(&[3], &[3]).reduce();
        assert_eq!(q, KomoriPair::new([], [3]).unwrap());
        let r = KomoriPair::new([], [2, 4]).unwrap().reduce();
        assert_eq!(r, KomoriPair::new([], [4]).unwrap());
        // Reduction is idempotent.
        assert_eq!(p.reduce(), p);
        let chain = pair(&[2, 4, 8], &[]).reduce();
        assert_eq!(chain, pair(&[8], &[]));
    }

    #[test]
    fn equation_inventory_for_single_finite_rank() {
        // I = {6}: p ranges over {4, 5}, rigid orders are all divisors of 6,
        // and the lcm equals the max so no second degree equation appears.
        let eqs = dnl_equations(&pair(&[6], &[]));
        let names: Vec<&str> = eqs.iter().map(|e| e.name.as_str()).collect();
        assert_eq!(
            names,
            vec![
                "a1(m=6)",
                "a2(p=4)",
                "a2(p=5)",
                "a3(q=1)",
                "a3(q=2)",
                "a3(q=3)",
                "a3(q=6)"
            ]
        );
        // J = {6}: same degree and p equations, no rigid orders.
        let eqs_j = dnl_equations(&KomoriPair::new([], [6]).unwrap());
        let names_j: Vec<&str> = eqs_j.iter().map(|e| e.name.as_str()).collect();
        assert_eq!(names_j, vec!["a1(m=6)", "a2(p=4)", "a2(p=5)"]);
        // Mixed pair with lcm above max.
        let eqs_mix = dnl_equations(&pair(&[2, 3], &[]));
        assert!(eqs_mix.iter().any(|e| e.name == "a1(n=6)"));
        assert!(eqs_mix.iter().any(|e| e.name == "a1(m=3)"));
    }

    #[test]
    fn chain_membership_matches_divisibility() {
        let v6 = pair(&[6], &[]);
        for k in 1..=8 {
            let member = is_member_finite(&AlgebraRef::chain(k), &v6).unwrap();
            let expect = 6 % k == 0;
            assert_eq!(member.is_none(), expect, "chain {} vs I=[6]", k);
        }
        let v6j = KomoriPair::new([], [6]).unwrap();
        for k in 1..=8 {
            let member = is_member_finite(&AlgebraRef::chain(k), &v6j).unwrap();
            let expect = 6 % k == 0;
            assert_eq!(member.is_none(), expect, "chain {} vs J=[6]", k);
        }
    }

    #[test]
    fn first_violation_is_frozen() {
        // S4 against V(S6): the degree equation passes, the p=4 equation
        // fails first, at x=3 where (4 x^3)^7 = 1 but 7 x^4 = 0.
        let v6 = pair(&[6], &[]);
        let viol = is_member_finite(&AlgebraRef::chain(4), &v6)
            .unwrap()
            .expect("S4 is not a member");
        assert_eq!(viol.equation.name, "a2(p=4)");
        assert_eq!(viol.witness, Elem::Num(3));
    }

    #[test]
    fn products_of_members_are_members() {
        let v6 = pair(&[6], &[]);
        let p = AlgebraRef::product(vec![
            AlgebraRef::chain(2),
            AlgebraRef::chain(3),
            AlgebraRef::chain(6),
        ]);
        assert!(is_member_finite(&p, &v6).unwrap().is_none());
        let q = AlgebraRef::product(vec![AlgebraRef::chain(2), AlgebraRef::chain(4)]);
        assert!(is_member_finite(&q, &v6).unwrap().is_some());
    }

    #[test]
    fn local_membership_uses_rank_and_rigidity() {
        let chang = AlgebraRef::lex(1, LGroup::IntLex(1), LGroupElem::new(vec![BigInt::from(0)]))
            .unwrap();
        // Rank 1 with radical: needs 1 to divide a rank in J.
        assert!(is_local_member(&chang, &KomoriPair::new([], [1]).unwrap()).unwrap());
        assert!(is_local_member(&chang, &KomoriPair::new([], [3]).unwrap()).unwrap());
        assert!(!is_local_member(&chang, &pair(&[1], &[])).unwrap());
        // The simple chain of rank 1 is a member either way.
        assert!(is_local_member(&AlgebraRef::chain(1), &pair(&[1], &[])).unwrap());
        assert!(is_local_member(&AlgebraRef::chain(2), &pair(&[6], &[])).unwrap());
        assert!(!is_local_member(&AlgebraRef::chain(4), &pair(&[6], &[])).unwrap());
        // Not local at all.
        let p = AlgebraRef::product(vec![AlgebraRef::chain(2), AlgebraRef::chain(2)]);
        assert!(matches!(
            is_local_member(&p, &pair(&[6], &[])),
            Err(Error::NotLocal(_))
        ));
    }

    #[test]
    fn equations_print_readably() {
        let eqs = dnl_equations(&pair(&[2], &[]));
        assert_eq!(eqs[0].to_string(), "a1(m=2): (3*x^2)^2 = 2*x^3");
    }
}
