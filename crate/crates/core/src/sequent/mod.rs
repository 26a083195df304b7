//! Geometric sequents over the MV-algebra signature: syntax, parsing,
//! evaluation on finite algebras, and a catalog of built-in sequent schemes.

pub mod ast;
pub mod builtins;
pub mod eval;
pub mod parser;

pub use ast::{Coeff, Formula, Sequent, Term};
pub use builtins::{builtin, catalog, Builtin, NamedSequent, Params};
pub use eval::{check_sequent, eval_formula, eval_term, solutions, CheckOutcome};
pub use parser::{parse_formula, parse_sequent, parse_term};
