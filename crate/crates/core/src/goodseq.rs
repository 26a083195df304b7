//! Good sequences and the Bézout data used by the classifier.
//!
//! A good sequence over an algebra is a finite vector (a_1, ..., a_k) with
//! a_i ⊕ a_{i+1} = a_i; it encodes the group element Σ a_i of the enveloping
//! unital ℓ-group. Sums and differences of good sequences are computed by
//! the classical convolution formulas. The same formulas, run over the term
//! signature instead of an algebra, produce the syntactic components used in
//! classifier formulas, so the two paths can be cross-checked.

use std::fmt;

use num_integer::Integer;

use crate::algebra::{AlgebraRef, Elem};
use crate::error::{Error, Result};
use crate::sequent::ast::Term;

/// The unique representation d = xi·a − chi·b with 1 <= xi <= b/d and
/// 0 <= chi < a/d, where d = gcd(a, b).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BezoutTriple {
    pub d: u64,
    pub xi: u64,
    pub chi: u64,
}

/// Normalized extended gcd of a, b >= 1. For a <= b, xi is strictly larger
/// than chi; chi = 0 forces xi = 1 and d = a, which happens exactly when a
/// divides b.
pub fn bezout(a: u64, b: u64) -> Result<BezoutTriple> {
    if a == 0 || b == 0 {
        return Err(Error::Invalid("bezout needs positive arguments".into()));
    }
    let ext = (a as i128).extended_gcd(&(b as i128));
    let d = ext.gcd as u64;
    let modulus = (b / d) as i128;
    let mut xi = ext.x.rem_euclid(modulus);
    if xi == 0 {
        xi = modulus;
    }
    let xi = xi as u64;
    // chi is determined: chi·b = xi·a − d.
    let chi = (xi as u128 * a as u128 - d as u128) / b as u128;
    let t = BezoutTriple {
        d,
        xi,
        chi: chi as u64,
    };
    debug_assert_eq!(
        t.xi as u128 * a as u128,
        t.d as u128 + t.chi as u128 * b as u128
    );
    debug_assert!(t.xi <= b / d && t.chi < a / d);
    Ok(t)
}

/// The operations the convolution formulas need, abstracted so they run both
/// on algebra elements and on syntactic terms.
pub trait GsOps {
    type Val: Clone;
    fn zero(&self) -> Result<Self::Val>;
    fn one(&self) -> Result<Self::Val>;
    fn oplus(&self, a: &Self::Val, b: &Self::Val) -> Result<Self::Val>;
    fn odot(&self, a: &Self::Val, b: &Self::Val) -> Result<Self::Val>;
    fn neg(&self, a: &Self::Val) -> Result<Self::Val>;
}

impl GsOps for AlgebraRef {
    type Val = Elem;
    fn zero(&self) -> Result<Elem> {
        AlgebraRef::zero(self)
    }
    fn one(&self) -> Result<Elem> {
        AlgebraRef::one(self)
    }
    fn oplus(&self, a: &Elem, b: &Elem) -> Result<Elem> {
        AlgebraRef::oplus(self, a, b)
    }
    fn odot(&self, a: &Elem, b: &Elem) -> Result<Elem> {
        AlgebraRef::odot(self, a, b)
    }
    fn neg(&self, a: &Elem) -> Result<Elem> {
        AlgebraRef::neg(self, a)
    }
}

/// Runs the convolution formulas over the term signature.
pub struct TermOps;

impl GsOps for TermOps {
    type Val = Term;
    fn zero(&self) -> Result<Term> {
        Ok(Term::Zero)
    }
    fn one(&self) -> Result<Term> {
        Ok(Term::One)
    }
    fn oplus(&self, a: &Term, b: &Term) -> Result<Term> {
        Ok(a.clone().oplus(b.clone()))
    }
    fn odot(&self, a: &Term, b: &Term) -> Result<Term> {
        Ok(a.clone().odot(b.clone()))
    }
    fn neg(&self, a: &Term) -> Result<Term> {
        Ok(a.clone().neg())
    }
}

/// Sum of two component vectors: c_i = ⊕_{j=0..i} a_{i−j} ⊙ b_j with the
/// convention a_0 = b_0 = 1 and entries beyond the end equal to 0. The
/// result has len(a) + len(b) components and is not trimmed.
pub fn raw_sum<O: GsOps>(ops: &O, a: &[O::Val], b: &[O::Val]) -> Result<Vec<O::Val>> {
    let la = a.len();
    let lb = b.len();
    let mut out = Vec::with_capacity(la + lb);
    for i in 1..=(la + lb) {
        // j = 0 contributes a_i and j = i contributes b_i; out-of-range
        // indices contribute 0 and are skipped.
        let mut acc: Option<O::Val> = None;
        for j in 0..=i {
            let ai = i - j;
            let term = if ai == 0 {
                if j > lb {
                    continue;
                }
                b[j - 1].clone()
            } else if j == 0 {
                if ai > la {
                    continue;
                }
                a[ai - 1].clone()
            } else {
                if ai > la || j > lb {
                    continue;
                }
                ops.odot(&a[ai - 1], &b[j - 1])?
            };
            acc = Some(match acc {
                None => term,
                Some(s) => ops.oplus(&s, &term)?,
            });
        }
        match acc {
            Some(v) => out.push(v),
            None => unreachable!("every index up to la + lb has a summand"),
        }
    }
    Ok(out)
}

/// Reversed componentwise negation of a vector padded to its own length:
/// the sequence representing len·u − Σ a_i.
pub fn raw_complement<O: GsOps>(ops: &O, a: &[O::Val]) -> Result<Vec<O::Val>> {
    let mut out = Vec::with_capacity(a.len());
    for x in a.iter().rev() {
        out.push(ops.neg(x)?);
    }
    Ok(out)
}

/// Components of k·(x), built by iterated convolution: exactly k components,
/// not trimmed. k = 0 gives the empty vector.
pub fn scalar_components<O: GsOps>(ops: &O, x: &O::Val, k: u64) -> Result<Vec<O::Val>> {
    let mut acc: Vec<O::Val> = Vec::new();
    let single = [x.clone()];
    for _ in 0..k {
        acc = raw_sum(ops, &acc, &single)?;
    }
    Ok(acc)
}

/// First component of b − (chi ones), where b has xi components: the sum of
/// b with the complement of the padded ones vector, sliced past the pad.
/// Meaningful only under the guard b_i = 1 for i <= chi; it is total as a
/// construction either way.
pub fn sub_ones_first_component<O: GsOps>(ops: &O, b: &[O::Val], chi: u64) -> Result<O::Val> {
    let r = b.len();
    debug_assert!(chi as usize <= r);
    // Complement of (1,...,1, 0,...,0) with chi ones padded to length r.
    let mut astar = Vec::with_capacity(r);
    for _ in 0..(r - chi as usize) {
        astar.push(ops.one()?);
    }
    for _ in 0..chi {
        astar.push(ops.zero()?);
    }
    let s = raw_sum(ops, b, &astar)?;
    Ok(s[r].clone())
}

/// A validated good sequence: entries live in the algebra, consecutive
/// entries satisfy a_i ⊕ a_{i+1} = a_i, and trailing zeros are trimmed, so
/// the zero element is the empty sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GoodSequence {
    algebra: AlgebraRef,
    entries: Vec<Elem>,
}

impl fmt::Display for GoodSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, e) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", e)?;
        }
        write!(f, ")")
    }
}

impl GoodSequence {
    pub fn new(algebra: &AlgebraRef, entries: Vec<Elem>) -> Result<GoodSequence> {
        let zero = algebra.zero()?;
        for e in &entries {
            algebra.check_member(e)?;
        }
        for w in entries.windows(2) {
            let glued = algebra.oplus(&w[0], &w[1])?;
            if glued != w[0] {
                return Err(Error::Invalid(format!(
                    "not a good sequence: {} + {} = {} differs from {}",
                    w[0], w[1], glued, w[0]
                )));
            }
        }
        let mut entries = entries;
        while entries.last() == Some(&zero) {
            entries.pop();
        }
        Ok(GoodSequence {
            algebra: algebra.clone(),
            entries,
        })
    }

    pub fn zero(algebra: &AlgebraRef) -> GoodSequence {
        GoodSequence {
            algebra: algebra.clone(),
            entries: Vec::new(),
        }
    }

    pub fn from_elem(algebra: &AlgebraRef, x: &Elem) -> Result<GoodSequence> {
        GoodSequence::new(algebra, vec![x.clone()])
    }

    pub fn algebra(&self) -> &AlgebraRef {
        &self.algebra
    }

    pub fn entries(&self) -> &[Elem] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// First component, or 0 for the empty sequence.
    pub fn first(&self) -> Result<Elem> {
        match self.entries.first() {
            Some(e) => Ok(e.clone()),
            None => self.algebra.zero(),
        }
    }

    fn same_algebra(&self, other: &GoodSequence) -> Result<()> {
        if self.algebra != other.algebra {
            return Err(Error::Mismatch(
                "good sequences over different algebras".into(),
            ));
        }
        Ok(())
    }

    /// The group order: a <= b iff every component of a is below the
    /// matching component of b.
    pub fn leq(&self, other: &GoodSequence) -> Result<bool> {
        self.same_algebra(other)?;
        let zero = self.algebra.zero()?;
        let r = self.len().max(other.len());
        for i in 1..=r {
            let a = self.entries.get(i - 1).unwrap_or(&zero);
            let b = other.entries.get(i - 1).unwrap_or(&zero);
            if !self.algebra.leq(a, b)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Sum of good sequences.
pub fn gs_sum(a: &GoodSequence, b: &GoodSequence) -> Result<GoodSequence> {
    a.same_algebra(b)?;
    let raw = raw_sum(&a.algebra, &a.entries, &b.entries)?;
    GoodSequence::new(&a.algebra, raw)
}

/// k-fold sum of a good sequence with itself.
pub fn gs_scalar(k: u64, a: &GoodSequence) -> Result<GoodSequence> {
    let mut acc = GoodSequence::zero(&a.algebra);
    for _ in 0..k {
        acc = gs_sum(&acc, a)?;
    }
    Ok(acc)
}

/// Difference a − b for b <= a: pad both to a common length r, add the
/// complement of b, and drop the first r components, which the order
/// premise forces to 1. The result is verified by adding b back.
pub fn gs_sub(a: &GoodSequence, b: &GoodSequence) -> Result<GoodSequence> {
    a.same_algebra(b)?;
    if !b.leq(a)? {
        return Err(Error::NotSubtractable(format!(
            "{} is not below {}",
            b, a
        )));
    }
    let alg = &a.algebra;
    let zero = alg.zero()?;
    let one = alg.one()?;
    let r = a.len().max(b.len());
    let mut a_pad = a.entries.clone();
    a_pad.resize(r, zero.clone());
    let mut b_pad = b.entries.clone();
    b_pad.resize(r, zero.clone());
    let bstar = raw_complement(alg, &b_pad)?;
    let s = raw_sum(alg, &a_pad, &bstar)?;
    for (i, c) in s.iter().take(r).enumerate() {
        if *c != one {
            return Err(Error::Anomaly(format!(
                "subtraction pad component {} is {} rather than 1",
                i + 1,
                c
            )));
        }
    }
    let diff = GoodSequence::new(alg, s[r..].to_vec())?;
    let back = gs_sum(&diff, b)?;
    if back != *a {
        return Err(Error::Anomaly(format!(
            "subtraction check failed: ({}) + ({}) = {}, wanted {}",
            diff, b, back, a
        )));
    }
    Ok(diff)
}
