//! Small-scale checks around bounded strings, unary profiles of FO(+)
//! formulas, semilinear length sets and the `ww` language.

pub mod bounded;
pub mod squares;
pub mod tphi;
pub mod ww;

pub use bounded::{bits, bitwise, check_lemma_lm, lm_bounded, min_blocks, render_bits, BitOp, Factorization};
pub use squares::{squares_witness_report, LengthFit, SquaresReport};
pub use tphi::{check_tphi_bounded, search_bounds, t_phi, BoundSearch, Profiler};
pub use ww::{co_ww_grammar, is_ww, ww_witness};
