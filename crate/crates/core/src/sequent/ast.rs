//! Terms, formulas, and sequents over the MV signature, plus the printer.
//!
//! The only primitive operations are ⊕ and ¬; everything else is kept as an
//! AST node for readable printing and is expanded by the evaluator through
//! the derived-operation definitions. Infinitary disjunctions carry an
//! explicit finite bound and a named index variable; the index may appear
//! as a scalar coefficient or exponent inside the body.

use std::collections::BTreeSet;
use std::fmt;

/// Scalar coefficient: a literal or a bound index variable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Coeff {
    Lit(u64),
    Idx(String),
}

impl fmt::Display for Coeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coeff::Lit(k) => write!(f, "{}", k),
            Coeff::Idx(v) => write!(f, "{}", v),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Term {
    Zero,
    One,
    Var(String),
    Neg(Box<Term>),
    Oplus(Box<Term>, Box<Term>),
    Odot(Box<Term>, Box<Term>),
    Ominus(Box<Term>, Box<Term>),
    /// sup(x, y)
    Join(Box<Term>, Box<Term>),
    /// inf(x, y)
    Meet(Box<Term>, Box<Term>),
    /// Chang distance d(x, y)
    Dist(Box<Term>, Box<Term>),
    Scalar(Coeff, Box<Term>),
    Power(Box<Term>, Coeff),
}

impl Term {
    pub fn var(name: &str) -> Term {
        Term::Var(name.into())
    }

    // Named after the grammar keyword, not the arithmetic negation trait.
    #[allow(clippy::should_implement_trait)]
    pub fn neg(self) -> Term {
        Term::Neg(Box::new(self))
    }

    pub fn oplus(self, other: Term) -> Term {
        Term::Oplus(Box::new(self), Box::new(other))
    }

    pub fn odot(self, other: Term) -> Term {
        Term::Odot(Box::new(self), Box::new(other))
    }

    pub fn ominus(self, other: Term) -> Term {
        Term::Ominus(Box::new(self), Box::new(other))
    }

    pub fn join(self, other: Term) -> Term {
        Term::Join(Box::new(self), Box::new(other))
    }

    pub fn meet(self, other: Term) -> Term {
        Term::Meet(Box::new(self), Box::new(other))
    }

    pub fn dist(self, other: Term) -> Term {
        Term::Dist(Box::new(self), Box::new(other))
    }

    pub fn scalar(k: u64, t: Term) -> Term {
        Term::Scalar(Coeff::Lit(k), Box::new(t))
    }

    pub fn scalar_idx(v: &str, t: Term) -> Term {
        Term::Scalar(Coeff::Idx(v.into()), Box::new(t))
    }

    pub fn power(self, k: u64) -> Term {
        Term::Power(Box::new(self), Coeff::Lit(k))
    }

    /// Square of the term, the ⊙-power appearing in the radical equation.
    pub fn squared(self) -> Term {
        self.power(2)
    }

    pub fn free_vars(&self, out: &mut BTreeSet<String>) {
        match self {
            Term::Zero | Term::One => {}
            Term::Var(v) => {
                out.insert(v.clone());
            }
            Term::Neg(t) => t.free_vars(out),
            Term::Oplus(a, b)
            | Term::Odot(a, b)
            | Term::Ominus(a, b)
            | Term::Join(a, b)
            | Term::Meet(a, b)
            | Term::Dist(a, b) => {
                a.free_vars(out);
                b.free_vars(out);
            }
            Term::Scalar(_, t) => t.free_vars(out),
            Term::Power(t, _) => t.free_vars(out),
        }
    }

    fn prec(&self) -> u8 {
        match self {
            Term::Zero
            | Term::One
            | Term::Var(_)
            | Term::Join(..)
            | Term::Meet(..)
            | Term::Dist(..) => 6,
            Term::Power(..) => 5,
            Term::Scalar(..) => 4,
            Term::Neg(..) => 3,
            Term::Odot(..) => 2,
            Term::Oplus(..) | Term::Ominus(..) => 1,
        }
    }

    fn fmt_prec(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        let p = self.prec();
        if p < min {
            write!(f, "(")?;
        }
        match self {
            Term::Zero => write!(f, "0")?,
            Term::One => write!(f, "1")?,
            Term::Var(v) => write!(f, "{}", v)?,
            Term::Neg(t) => {
                write!(f, "neg ")?;
                t.fmt_prec(f, 3)?;
            }
            Term::Oplus(a, b) => {
                a.fmt_prec(f, 1)?;
                write!(f, " + ")?;
                b.fmt_prec(f, 2)?;
            }
            Term::Ominus(a, b) => {
                a.fmt_prec(f, 1)?;
                write!(f, " - ")?;
                b.fmt_prec(f, 2)?;
            }
            Term::Odot(a, b) => {
                a.fmt_prec(f, 2)?;
                write!(f, " . ")?;
                b.fmt_prec(f, 3)?;
            }
            Term::Scalar(k, t) => {
                write!(f, "{}*", k)?;
                t.fmt_prec(f, 5)?;
            }
            Term::Power(t, k) => {
                t.fmt_prec(f, 6)?;
                write!(f, "^{}", k)?;
            }
            Term::Join(a, b) => {
                write!(f, "sup(")?;
                a.fmt_prec(f, 0)?;
                write!(f, ", ")?;
                b.fmt_prec(f, 0)?;
                write!(f, ")")?;
            }
            Term::Meet(a, b) => {
                write!(f, "inf(")?;
                a.fmt_prec(f, 0)?;
                write!(f, ", ")?;
                b.fmt_prec(f, 0)?;
                write!(f, ")")?;
            }
            Term::Dist(a, b) => {
                write!(f, "d(")?;
                a.fmt_prec(f, 0)?;
                write!(f, ", ")?;
                b.fmt_prec(f, 0)?;
                write!(f, ")")?;
            }
        }
        if p < min {
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_prec(f, 0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Formula {
    Truth,
    Falsity,
    Eq(Term, Term),
    Leq(Term, Term),
    Conj(Vec<Formula>),
    Disj(Vec<Formula>),
    Exists(Vec<String>, Box<Formula>),
    IndexedDisj {
        var: String,
        bound: u64,
        body: Box<Formula>,
    },
}

impl Formula {
    pub fn eq(a: Term, b: Term) -> Formula {
        Formula::Eq(a, b)
    }

    pub fn leq(a: Term, b: Term) -> Formula {
        Formula::Leq(a, b)
    }

    /// Conjunction, flattening the trivial cases.
    pub fn conj(mut parts: Vec<Formula>) -> Formula {
        parts.retain(|p| *p != Formula::Truth);
        match parts.len() {
            0 => Formula::Truth,
            1 => parts.pop().unwrap(),
            _ => Formula::Conj(parts),
        }
    }

    /// Disjunction, flattening the trivial cases.
    pub fn disj(mut parts: Vec<Formula>) -> Formula {
        parts.retain(|p| *p != Formula::Falsity);
        match parts.len() {
            0 => Formula::Falsity,
            1 => parts.pop().unwrap(),
            _ => Formula::Disj(parts),
        }
    }

    /// Term variables not bound by an exists.
    pub fn free_vars(&self, out: &mut BTreeSet<String>) {
        match self {
            Formula::Truth | Formula::Falsity => {}
            Formula::Eq(a, b) | Formula::Leq(a, b) => {
                a.free_vars(out);
                b.free_vars(out);
            }
            Formula::Conj(ps) | Formula::Disj(ps) => {
                for p in ps {
                    p.free_vars(out);
                }
            }
            Formula::Exists(vars, body) => {
                let mut inner = BTreeSet::new();
                body.free_vars(&mut inner);
                for v in vars {
                    inner.remove(v);
                }
                out.extend(inner);
            }
            Formula::IndexedDisj { body, .. } => body.free_vars(out),
        }
    }

    pub fn contains_indexed_disj(&self) -> bool {
        match self {
            Formula::Truth | Formula::Falsity | Formula::Eq(..) | Formula::Leq(..) => false,
            Formula::Conj(ps) | Formula::Disj(ps) => ps.iter().any(|p| p.contains_indexed_disj()),
            Formula::Exists(_, body) => body.contains_indexed_disj(),
            Formula::IndexedDisj { .. } => true,
        }
    }

    fn prec(&self) -> u8 {
        match self {
            Formula::Truth | Formula::Falsity | Formula::Eq(..) | Formula::Leq(..) => 3,
            Formula::Conj(_) => 2,
            Formula::Disj(_) => 1,
            Formula::Exists(..) | Formula::IndexedDisj { .. } => 0,
        }
    }

    fn fmt_prec(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        let p = self.prec();
        if p < min {
            write!(f, "(")?;
        }
        match self {
            Formula::Truth => write!(f, "true")?,
            Formula::Falsity => write!(f, "false")?,
            Formula::Eq(a, b) => write!(f, "{} = {}", a, b)?,
            Formula::Leq(a, b) => write!(f, "{} <= {}", a, b)?,
            Formula::Conj(ps) => {
                for (i, q) in ps.iter().enumerate() {
                    if i > 0 {
                        write!(f, " & ")?;
                    }
                    q.fmt_prec(f, 3)?;
                }
            }
            Formula::Disj(ps) => {
                for (i, q) in ps.iter().enumerate() {
                    if i > 0 {
                        write!(f, " | ")?;
                    }
                    q.fmt_prec(f, 2)?;
                }
            }
            Formula::Exists(vars, body) => {
                write!(f, "exists")?;
                for v in vars {
                    write!(f, " {}", v)?;
                }
                write!(f, " . ")?;
                body.fmt_prec(f, 0)?;
            }
            Formula::IndexedDisj { var, bound, body } => {
                write!(f, "OR[{} <= {}] ", var, bound)?;
                body.fmt_prec(f, 0)?;
            }
        }
        if p < min {
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_prec(f, 0)
    }
}

/// A geometric sequent: context variables, antecedent, succedent. Free
/// variables of both formulas must be listed in the context.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sequent {
    pub context: Vec<String>,
    pub antecedent: Formula,
    pub succedent: Formula,
}

impl Sequent {
    pub fn new(context: Vec<String>, antecedent: Formula, succedent: Formula) -> Sequent {
        Sequent {
            context,
            antecedent,
            succedent,
        }
    }

    pub fn free_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.antecedent.free_vars(&mut out);
        self.succedent.free_vars(&mut out);
        out
    }
}

impl fmt::Display for Sequent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "forall")?;
        for v in &self.context {
            write!(f, " {}", v)?;
        }
        write!(f, " : {} |- {}", self.antecedent, self.succedent)
    }
}
