//! Exact-arithmetic kernel for MV-algebras that live in proper subvarieties
//! of the variety of all MV-algebras: chains, lexicographic unit intervals
//! over ℤ ×_lex G, finite products, quotients, and the analyses that matter
//! for them (radicals, rank, locality, variety membership, rank-class
//! classification, direct-product decomposition, the divisor-ideal triple
//! correspondence, and a brute-force sequent checker on finite models).
//!
//! Everything is computed over arbitrary-precision integers; no floating
//! point appears anywhere in the crate.

pub mod algebra;
pub mod error;
pub mod finclass;
pub mod goodseq;
pub mod komori;
pub mod lgroup;
pub mod morita;
pub mod radical;
pub mod sequent;

pub use algebra::{AlgebraRef, Elem, ExplicitTable};
pub use error::{Error, Result};
pub use lgroup::{LGroup, LGroupElem};
