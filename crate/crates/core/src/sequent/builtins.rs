//! Catalog of built-in sequent schemes, instantiated by name and parameters.
//!
//! Names follow the literature on local MV-algebras in Komori varieties:
//! `sigma` and `rho` are the locality axiom and its class-partition
//! refinement at the variety invariant n, `nt` is nontriviality, `loc` and
//! `simple` are the bounded finite-order axioms, the `rad-lemma` family
//! collects the radical arithmetic lemmas, the `compat` pair states class
//! compatibility with oplus and neg, `dnl` lists the defining equations of
//! a Komori pair, `divisibility` expands (m-1)x = neg x into its multiple
//! identities, `phi` is the chain presentation formula, and `finite-chain`
//! is the bounded axiom forcing every element onto a chain generator.

use crate::error::{Error, Result};
use crate::finclass::alpha_formula;
use crate::komori::{dnl_equations, KomoriPair};
use crate::sequent::ast::{Formula, Sequent, Term};

/// Instantiation parameters; each scheme reads the subset it needs.
#[derive(Debug, Clone, Default)]
pub struct Params {
    pub n: Option<u64>,
    pub k: Option<u64>,
    pub m: Option<u64>,
    pub d: Option<u64>,
    pub b: Option<u64>,
    pub bound: Option<u64>,
    pub pair: Option<KomoriPair>,
}

/// A sequent labeled with its scheme name and parameters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NamedSequent {
    pub name: String,
    pub sequent: Sequent,
}

/// An instantiated builtin. Every scheme yields sequents except `phi`,
/// which is a one-variable formula meant for solution scanning.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Builtin {
    Sequents(Vec<NamedSequent>),
    Formula {
        name: String,
        var: String,
        formula: Formula,
    },
}

/// Scheme names with the parameters they require. Bounded schemes take
/// `bound`; a failure under a bound is evidence, not refutation.
pub fn catalog() -> Vec<(&'static str, &'static str)> {
    vec![
        ("sigma", "n"),
        ("rho", "n"),
        ("nt", ""),
        ("loc", "bound"),
        ("simple", "bound"),
        ("rad-lemma-i", "n, k"),
        ("rad-lemma-ii", "n"),
        ("rad-lemma-iii", "n, k"),
        ("rad-lemma-iv", "n, k"),
        ("rad-lemma-v", "n, k"),
        ("rad-lemma-vi", "n"),
        ("rad-lemma-vii", "n"),
        ("rad-lemma-viii", "n"),
        ("rad-lemma-ix", "n"),
        ("prop-i", "n, k"),
        ("prop-ii", "n"),
        ("compat-oplus", "n, d, b"),
        ("compat-neg", "n, d"),
        ("dnl", "pair"),
        ("divisibility", "m, optional k"),
        ("phi", "n"),
        ("finite-chain", "bound"),
    ]
}

fn x() -> Term {
    Term::var("x")
}

fn y() -> Term {
    Term::var("y")
}

/// ((n+1) t)^2 = 0, membership of t in the radical at invariant n.
fn in_radical(t: Term, n: u64) -> Formula {
    Formula::eq(Term::scalar(n + 1, t).squared(), Term::Zero)
}

fn nt_sequent() -> NamedSequent {
    NamedSequent {
        name: "nt".to_string(),
        sequent: Sequent::new(
            Vec::new(),
            Formula::eq(Term::Zero, Term::One),
            Formula::Falsity,
        ),
    }
}

fn req(v: Option<u64>, param: &str, name: &str) -> Result<u64> {
    v.ok_or_else(|| Error::Invalid(format!("builtin {} needs parameter {}", name, param)))
}

fn req_pos(v: Option<u64>, param: &str, name: &str) -> Result<u64> {
    let v = req(v, param, name)?;
    if v == 0 {
        return Err(Error::Invalid(format!(
            "builtin {} needs {} >= 1",
            name, param
        )));
    }
    Ok(v)
}

fn one_sequent(name: String, sequent: Sequent) -> Result<Builtin> {
    Ok(Builtin::Sequents(vec![NamedSequent { name, sequent }]))
}

/// Instantiates a scheme from the catalog. The unicode spellings of sigma,
/// rho and phi are accepted as aliases.
pub fn builtin(name: &str, p: &Params) -> Result<Builtin> {
    let canon = match name {
        "\u{3c3}" => "sigma",
        "\u{3c1}" => "rho",
        "\u{3c6}" => "phi",
        other => other,
    };
    match canon {
        "sigma" => {
            let n = req_pos(p.n, "n", canon)?;
            one_sequent(
                format!("sigma(n={})", n),
                Sequent::new(
                    vec!["x".to_string()],
                    Formula::Truth,
                    Formula::disj(vec![
                        in_radical(x(), n),
                        Formula::eq(Term::scalar(n + 1, x()), Term::One),
                    ]),
                ),
            )
        }
        "rho" => {
            let n = req_pos(p.n, "n", canon)?;
            let mut parts = Vec::with_capacity(n as usize + 1);
            for d in 0..=n {
                parts.push(alpha_formula(&x(), d, n)?);
            }
            one_sequent(
                format!("rho(n={})", n),
                Sequent::new(vec!["x".to_string()], Formula::Truth, Formula::disj(parts)),
            )
        }
        "nt" => Ok(Builtin::Sequents(vec![nt_sequent()])),
        "loc" => {
            let bound = req_pos(p.bound, "bound", canon)?;
            let body = Formula::disj(vec![
                Formula::eq(Term::scalar_idx("k", x()), Term::One),
                Formula::eq(Term::scalar_idx("k", x().neg()), Term::One),
            ]);
            let ord_axiom = Sequent::new(
                vec!["x".to_string()],
                Formula::Truth,
                Formula::IndexedDisj {
                    var: "k".to_string(),
                    bound,
                    body: Box::new(body),
                },
            );
            Ok(Builtin::Sequents(vec![
                NamedSequent {
                    name: format!("loc-ord(B={})", bound),
                    sequent: ord_axiom,
                },
                nt_sequent(),
            ]))
        }
        "simple" => {
            let bound = req_pos(p.bound, "bound", canon)?;
            let succ = Formula::disj(vec![
                Formula::eq(x(), Term::Zero),
                Formula::IndexedDisj {
                    var: "n".to_string(),
                    bound,
                    body: Box::new(Formula::eq(Term::scalar_idx("n", x()), Term::One)),
                },
            ]);
            one_sequent(
                format!("simple(B={})", bound),
                Sequent::new(vec!["x".to_string()], Formula::Truth, succ),
            )
        }
        "rad-lemma-i" => {
            let n = req_pos(p.n, "n", canon)?;
            let k = req(p.k, "k", canon)?;
            one_sequent(
                format!("rad-lemma-i(n={},k={})", n, k),
                Sequent::new(
                    vec!["x".to_string()],
                    Formula::eq(Term::scalar(k, x()), Term::One),
                    Formula::eq(Term::scalar(n + 1, x()), Term::One),
                ),
            )
        }
        "rad-lemma-ii" => {
            let n = req_pos(p.n, "n", canon)?;
            one_sequent(
                format!("rad-lemma-ii(n={})", n),
                Sequent::new(
                    vec!["x".to_string(), "y".to_string()],
                    Formula::conj(vec![in_radical(x(), n), Formula::leq(y(), x())]),
                    in_radical(y(), n),
                ),
            )
        }
        "rad-lemma-iii" | "prop-i" => {
            let n = req_pos(p.n, "n", canon)?;
            let k = req(p.k, "k", canon)?;
            one_sequent(
                format!("{}(n={},k={})", canon, n, k),
                Sequent::new(
                    vec!["x".to_string()],
                    in_radical(x(), n),
                    in_radical(Term::scalar(k, x()), n),
                ),
            )
        }
        "rad-lemma-iv" => {
            let n = req_pos(p.n, "n", canon)?;
            let k = req(p.k, "k", canon)?;
            one_sequent(
                format!("rad-lemma-iv(n={},k={})", n, k),
                Sequent::new(
                    vec!["x".to_string()],
                    in_radical(x(), n),
                    Formula::eq(Term::scalar(k, x()).squared(), Term::Zero),
                ),
            )
        }
        "rad-lemma-v" => {
            let n = req_pos(p.n, "n", canon)?;
            let k = req(p.k, "k", canon)?;
            one_sequent(
                format!("rad-lemma-v(n={},k={})", n, k),
                Sequent::new(
                    vec!["x".to_string()],
                    in_radical(x(), n),
                    Formula::leq(Term::scalar(k, x()), x().neg()),
                ),
            )
        }
        "rad-lemma-vi" => {
            let n = req_pos(p.n, "n", canon)?;
            one_sequent(
                format!("rad-lemma-vi(n={})", n),
                Sequent::new(
                    vec!["x".to_string(), "y".to_string()],
                    Formula::conj(vec![in_radical(x(), n), in_radical(y(), n)]),
                    in_radical(x().join(y()), n),
                ),
            )
        }
        "rad-lemma-vii" => {
            let n = req_pos(p.n, "n", canon)?;
            one_sequent(
                format!("rad-lemma-vii(n={})", n),
                Sequent::new(
                    vec!["x".to_string(), "y".to_string()],
                    Formula::conj(vec![in_radical(x(), n), in_radical(y(), n)]),
                    in_radical(x().oplus(y()), n),
                ),
            )
        }
        "rad-lemma-viii" => {
            let n = req_pos(p.n, "n", canon)?;
            one_sequent(
                format!("rad-lemma-viii(n={})", n),
                Sequent::new(
                    vec!["x".to_string()],
                    Formula::leq(Term::scalar(n + 1, x()), x().neg()),
                    in_radical(x(), n),
                ),
            )
        }
        "rad-lemma-ix" => {
            let n = req_pos(p.n, "n", canon)?;
            one_sequent(
                format!("rad-lemma-ix(n={})", n),
                Sequent::new(
                    vec!["x".to_string()],
                    in_radical(x().neg(), n),
                    Formula::eq(Term::scalar(2, x()), Term::One),
                ),
            )
        }
        "prop-ii" => {
            let n = req_pos(p.n, "n", canon)?;
            let sq = Term::scalar(n + 1, x()).squared();
            one_sequent(
                format!("prop-ii(n={})", n),
                Sequent::new(
                    vec!["x".to_string()],
                    Formula::Truth,
                    Formula::eq(sq.clone().oplus(sq.clone()), sq),
                ),
            )
        }
        "compat-oplus" => {
            let n = req_pos(p.n, "n", canon)?;
            let d = req(p.d, "d", canon)?;
            let b = req(p.b, "b", canon)?;
            let ante = Formula::conj(vec![
                alpha_formula(&x(), d, n)?,
                alpha_formula(&y(), b, n)?,
            ]);
            // d + b truncates at n, the sum of the classes in the chain S_n.
            let succ = alpha_formula(&x().oplus(y()), (d + b).min(n), n)?;
            one_sequent(
                format!("compat-oplus(n={},d={},b={})", n, d, b),
                Sequent::new(vec!["x".to_string(), "y".to_string()], ante, succ),
            )
        }
        "compat-neg" => {
            let n = req_pos(p.n, "n", canon)?;
            let d = req(p.d, "d", canon)?;
            let ante = alpha_formula(&x(), d, n)?;
            let succ = alpha_formula(&x().neg(), n - d, n)?;
            one_sequent(
                format!("compat-neg(n={},d={})", n, d),
                Sequent::new(vec!["x".to_string()], ante, succ),
            )
        }
        "dnl" => {
            let pair = p
                .pair
                .as_ref()
                .ok_or_else(|| Error::Invalid("builtin dnl needs parameter pair".to_string()))?;
            let seqs = dnl_equations(pair)
                .into_iter()
                .map(|eq| NamedSequent {
                    name: eq.name,
                    sequent: Sequent::new(
                        vec!["x".to_string()],
                        Formula::Truth,
                        Formula::eq(eq.lhs, eq.rhs),
                    ),
                })
                .collect();
            Ok(Builtin::Sequents(seqs))
        }
        "divisibility" => {
            let m = req_pos(p.m, "m", canon)?;
            if let Some(k) = p.k {
                if k > m {
                    return Err(Error::Invalid(format!(
                        "builtin divisibility needs k <= m, got k={} m={}",
                        k, m
                    )));
                }
            }
            let ante = Formula::eq(Term::scalar(m - 1, x()), x().neg());
            let ks: Vec<u64> = match p.k {
                Some(k) => vec![k],
                None => (0..=m).collect(),
            };
            let seqs = ks
                .into_iter()
                .map(|k| NamedSequent {
                    name: format!("divisibility(m={},k={})", m, k),
                    sequent: Sequent::new(
                        vec!["x".to_string()],
                        ante.clone(),
                        Formula::eq(Term::scalar(k, x()).neg(), Term::scalar(m - k, x())),
                    ),
                })
                .collect();
            Ok(Builtin::Sequents(seqs))
        }
        "phi" => {
            let n = req_pos(p.n, "n", canon)?;
            Ok(Builtin::Formula {
                name: format!("phi(n={})", n),
                var: "x".to_string(),
                formula: Formula::eq(Term::scalar(n - 1, x()), x().neg()),
            })
        }
        "finite-chain" => {
            let bound = req_pos(p.bound, "bound", canon)?;
            let mut parts = Vec::with_capacity(bound as usize);
            for k in 1..=bound {
                let z = || Term::var("z");
                let presents = Formula::eq(Term::scalar(k - 1, z()), z().neg());
                // Multiples t z for t > k repeat k z, so t <= k is exhaustive.
                let multiples = Formula::IndexedDisj {
                    var: "t".to_string(),
                    bound: k,
                    body: Box::new(Formula::eq(x(), Term::scalar_idx("t", z()))),
                };
                parts.push(Formula::Exists(
                    vec!["z".to_string()],
                    Box::new(Formula::conj(vec![presents, multiples])),
                ));
            }
            one_sequent(
                format!("finite-AlgebraRef::chain(B={})", bound),
                Sequent::new(vec!["x".to_string()], Formula::Truth, Formula::disj(parts)),
            )
        }
        _ => Err(Error::UnknownBuiltin(name.to_string())),
    }
}
