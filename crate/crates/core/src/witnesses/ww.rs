//! Words of the form `ww` and a grammar for their complement.

use alloc::format;
use alloc::vec;

use crate::alphabet::{Alphabet, Word};
use crate::error::Error;
use crate::grammar::{CfgBuilder, Grammar, Symbol};

pub fn is_ww(w: &[usize]) -> bool {
    let n = w.len();
    n % 2 == 0 && w[..n / 2] == w[n / 2..]
}

/// Nonempty words over `sigma` that are not of the form `ww`: odd-length
/// words, and words `xy` with `|x|, |y|` odd whose middle letters differ.
pub fn co_ww_grammar(sigma: &Alphabet) -> Result<Grammar, Error> {
    let mut b = CfgBuilder::new("S").terminals(sigma.clone());
    for &c in sigma.symbols() {
        b.rule("X", vec![Symbol::T(c)]);
        let centred = format!("C{c}");
        b.rule(&centred, vec![Symbol::T(c)]);
        b.rule(&centred, vec![Symbol::n("X"), Symbol::N(centred.clone()), Symbol::n("X")]);
    }
    for &c in sigma.symbols() {
        for &d in sigma.symbols() {
            if c != d {
                b.rule("S", vec![Symbol::N(format!("C{c}")), Symbol::N(format!("C{d}"))]);
            }
        }
    }
    b.rule_str("S", "O");
    b.rule_str("O", "X").rule_str("O", "X X O");
    b.build()
}

/// `(w is ww, w is in the complement grammar)`.
pub fn ww_witness(w: &Word) -> Result<(bool, bool), Error> {
    let g = co_ww_grammar(w.alphabet())?;
    Ok((is_ww(w.letters()), !w.is_empty() && g.member(w)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ab() -> Alphabet {
        Alphabet::parse("(a,b)").unwrap()
    }

    #[test]
    fn examples() {
        let w = |s: &str| Word::parse(s, &ab()).unwrap();
        assert_eq!(ww_witness(&w("abab")).unwrap(), (true, false));
        assert_eq!(ww_witness(&w("abba")).unwrap(), (false, true));
        assert_eq!(ww_witness(&w("aba")).unwrap(), (false, true));
    }

    #[test]
    fn complementary_up_to_eight() {
        let g = co_ww_grammar(&ab()).unwrap();
        for w in ab().words_up_to(8) {
            assert_ne!(is_ww(&w), g.accepts(&w), "{w:?}");
        }
    }
}
