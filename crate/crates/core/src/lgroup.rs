//! Lattice-ordered abelian groups over integer coordinates.
//!
//! Three shapes are supported: the trivial group, ℤ^r with the
//! lexicographic order, and ℤ^r with the pointwise order. Coordinates are
//! arbitrary-precision so scalar towers never overflow.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};

/// Group descriptor. `IntLex(r)` is totally ordered; `IntPointwise(r)` is
/// ordered coordinatewise and is a lattice but not a chain for r >= 2.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum LGroup {
    Trivial,
    IntLex(usize),
    IntPointwise(usize),
}

/// An element of one of the groups above: a coordinate vector whose length
/// must equal the group dimension (zero for `Trivial`).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LGroupElem {
    pub coords: Vec<BigInt>,
}

impl LGroupElem {
    pub fn new(coords: Vec<BigInt>) -> Self {
        LGroupElem { coords }
    }

    pub fn from_i64(coords: &[i64]) -> Self {
        LGroupElem {
            coords: coords.iter().map(|&c| BigInt::from(c)).collect(),
        }
    }
}

impl fmt::Display for LGroupElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", c)?;
        }
        write!(f, ")")
    }
}

impl LGroup {
    pub fn dims(&self) -> usize {
        match self {
            LGroup::Trivial => 0,
            LGroup::IntLex(r) | LGroup::IntPointwise(r) => *r,
        }
    }

    pub fn is_trivial(&self) -> bool {
        matches!(self, LGroup::Trivial)
    }

    pub fn zero(&self) -> LGroupElem {
        LGroupElem {
            coords: vec![BigInt::zero(); self.dims()],
        }
    }

    pub fn contains(&self, x: &LGroupElem) -> bool {
        x.coords.len() == self.dims()
    }

    fn check(&self, x: &LGroupElem) -> Result<()> {
        if self.contains(x) {
            Ok(())
        } else {
            Err(Error::Mismatch(format!(
                "group element has {} coordinates, group has {}",
                x.coords.len(),
                self.dims()
            )))
        }
    }

    pub fn add(&self, x: &LGroupElem, y: &LGroupElem) -> Result<LGroupElem> {
        self.check(x)?;
        self.check(y)?;
        Ok(LGroupElem {
            coords: x
                .coords
                .iter()
                .zip(&y.coords)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn neg(&self, x: &LGroupElem) -> Result<LGroupElem> {
        self.check(x)?;
        Ok(LGroupElem {
            coords: x.coords.iter().map(|a| -a).collect(),
        })
    }

    pub fn sub(&self, x: &LGroupElem, y: &LGroupElem) -> Result<LGroupElem> {
        self.add(x, &self.neg(y)?)
    }

    pub fn scale(&self, k: &BigInt, x: &LGroupElem) -> Result<LGroupElem> {
        self.check(x)?;
        Ok(LGroupElem {
            coords: x.coords.iter().map(|a| a * k).collect(),
        })
    }

    /// Partial order of the group. `IntLex` is a total order, so this never
    /// returns `None` for it; `IntPointwise` compares coordinatewise.
    pub fn partial_cmp(&self, x: &LGroupElem, y: &LGroupElem) -> Result<Option<Ordering>> {
        self.check(x)?;
        self.check(y)?;
        match self {
            LGroup::Trivial => Ok(Some(Ordering::Equal)),
            LGroup::IntLex(_) => Ok(Some(x.coords.cmp(&y.coords))),
            LGroup::IntPointwise(_) => {
                let mut le = true;
                let mut ge = true;
                for (a, b) in x.coords.iter().zip(&y.coords) {
                    match a.cmp(b) {
                        Ordering::Less => ge = false,
                        Ordering::Greater => le = false,
                        Ordering::Equal => {}
                    }
                }
                Ok(match (le, ge) {
                    (true, true) => Some(Ordering::Equal),
                    (true, false) => Some(Ordering::Less),
                    (false, true) => Some(Ordering::Greater),
                    (false, false) => None,
                })
            }
        }
    }

    pub fn leq(&self, x: &LGroupElem, y: &LGroupElem) -> Result<bool> {
        Ok(matches!(
            self.partial_cmp(x, y)?,
            Some(Ordering::Less) | Some(Ordering::Equal)
        ))
    }

    pub fn inf(&self, x: &LGroupElem, y: &LGroupElem) -> Result<LGroupElem> {
        self.check(x)?;
        self.check(y)?;
        match self {
            LGroup::Trivial => Ok(self.zero()),
            LGroup::IntLex(_) => Ok(if x.coords <= y.coords { x.clone() } else { y.clone() }),
            LGroup::IntPointwise(_) => Ok(LGroupElem {
                coords: x
                    .coords
                    .iter()
                    .zip(&y.coords)
                    .map(|(a, b)| a.min(b).clone())
                    .collect(),
            }),
        }
    }

    pub fn sup(&self, x: &LGroupElem, y: &LGroupElem) -> Result<LGroupElem> {
        self.check(x)?;
        self.check(y)?;
        match self {
            LGroup::Trivial => Ok(self.zero()),
            LGroup::IntLex(_) => Ok(if x.coords >= y.coords { x.clone() } else { y.clone() }),
            LGroup::IntPointwise(_) => Ok(LGroupElem {
                coords: x
                    .coords
                    .iter()
                    .zip(&y.coords)
                    .map(|(a, b)| a.max(b).clone())
                    .collect(),
            }),
        }
    }

    pub fn is_nonneg(&self, x: &LGroupElem) -> Result<bool> {
        self.leq(&self.zero(), x)
    }

    /// True when x is positive in at least one coordinate and negative in
    /// none, i.e. strictly above zero for the pointwise order; for the lex
    /// order, strictly above zero lexicographically.
    pub fn is_strictly_pos(&self, x: &LGroupElem) -> Result<bool> {
        Ok(self.partial_cmp(&self.zero(), x)? == Some(Ordering::Less))
    }
}

/// Convenience for tests and builders.
pub fn bigints(vals: &[i64]) -> Vec<BigInt> {
    vals.iter().map(|&v| BigInt::from(v)).collect()
}

/// Absolute value sum, used by samplers to keep generated elements small.
pub fn coord_norm(x: &LGroupElem) -> BigInt {
    x.coords.iter().map(|c| c.abs()).sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lex_order_is_total_and_lexicographic() {
        let g = LGroup::IntLex(2);
        let a = LGroupElem::from_i64(&[0, 100]);
        let b = LGroupElem::from_i64(&[1, -100]);
        assert_eq!(g.partial_cmp(&a, &b).unwrap(), Some(Ordering::Less));
        assert_eq!(g.inf(&a, &b).unwrap(), a);
        assert_eq!(g.sup(&a, &b).unwrap(), b);
    }

    #[test]
    fn pointwise_order_is_partial() {
        let g = LGroup::IntPointwise(2);
        let a = LGroupElem::from_i64(&[0, 1]);
        let b = LGroupElem::from_i64(&[1, 0]);
        assert_eq!(g.partial_cmp(&a, &b).unwrap(), None);
        assert_eq!(g.inf(&a, &b).unwrap(), LGroupElem::from_i64(&[0, 0]));
        assert_eq!(g.sup(&a, &b).unwrap(), LGroupElem::from_i64(&[1, 1]));
    }

    #[test]
    fn group_arithmetic() {
        let g = LGroup::IntLex(2);
        let a = LGroupElem::from_i64(&[2, -3]);
        let b = LGroupElem::from_i64(&[1, 5]);
        assert_eq!(g.add(&a, &b).unwrap(), LGroupElem::from_i64(&[3, 2]));
        assert_eq!(g.sub(&a, &b).unwrap(), LGroupElem::from_i64(&[1, -8]));
        assert_eq!(
            g.scale(&BigInt::from(-2), &a).unwrap(),
            LGroupElem::from_i64(&[-4, 6])
        );
    }

    #[test]
    fn dimension_mismatch_is_rejected() {
        let g = LGroup::IntLex(2);
        let a = LGroupElem::from_i64(&[1]);
        assert!(g.add(&a, &a).is_err());
    }

    #[test]
    fn inf_of_nonnegatives_is_nonneg() {
        let g = LGroup::IntPointwise(3);
        let a = LGroupElem::from_i64(&[0, 2, 1]);
        let b = LGroupElem::from_i64(&[3, 0, 1]);
        let m = g.inf(&a, &b).unwrap();
        assert!(g.is_nonneg(&m).unwrap());
    }
}
