//! First-order logic over finite strings with Lindström (groupoidal)
//! quantifiers, and the machinery around it: CYK and groupoid word problems,
//! finite automata with aperiodicity tests, letter-to-letter transducers
//! compiled from FO-translations, Nivat decompositions, and small-scale
//! checkers for bounded strings and semilinear length sets.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod alphabet;
pub mod arithmetic;
pub mod automata;
pub mod corpus;
pub mod error;
pub mod formula;
pub mod grammar;
pub mod groupoid;
pub mod language;
pub mod nivat;
pub mod oracle;
pub mod parse;
pub mod relativize;
pub mod semantics;
pub mod transducer;
pub mod witnesses;

pub use alphabet::{Alphabet, Word};
pub use error::Error;
pub use formula::{Formula, Lindstrom, Term};
pub use grammar::{CfgBuilder, Grammar, Symbol};
pub use groupoid::{Groupoid, WordProblem};
pub use language::{LanguageRef, NamedLanguage};
pub use parse::{parse_formula, parse_formula_with, LanguageEnv, ParseError};
pub use semantics::{eval, transform, Assignment, TransformSpec};
