//! Finite automata without ε-moves, subset construction, minimization,
//! products, and transition monoids with the aperiodicity test.

mod dfa;
mod monoid;
mod nfa;

pub use dfa::{product, BoolOp, Dfa};
pub use monoid::{definition_check_aperiodic, is_aperiodic, is_aperiodic_nfa, TransitionMonoid, MONOID_LIMIT};
pub use nfa::{subset_construction, Nfa};

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

pub(crate) fn default_names(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("q{i}")).collect()
}
