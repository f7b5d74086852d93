//! Nivat decompositions `A = h(L(D) ∩ g⁻¹(B))` of sentences `Q_B x [φ̄(x)]`
//! with pure first-order bodies.
//!
//! `D` is the compiled transducer of the body tuple read as an acceptor over
//! pairs `⟨input, output⟩`; `h` and `g` project a pair to its two halves.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use fixedbitset::FixedBitSet;

use crate::alphabet::{Alphabet, Word};
use crate::automata::{is_aperiodic_nfa, Nfa};
use crate::error::Error;
use crate::formula::Formula;
use crate::language::LanguageRef;
use crate::semantics::{eval, Assignment, TransformSpec};
use crate::transducer::{compile_transform, CompileOptions};

#[derive(Debug, Clone)]
pub struct Decomposition {
    /// Letters of the sentence's words.
    pub input: Alphabet,
    /// Letters of `B`.
    pub target: Alphabet,
    /// Pair `⟨a, b⟩` is letter `a * |target| + b`.
    pub pairs: Alphabet,
    pub d: Nfa,
    pub h: Vec<usize>,
    pub g: Vec<usize>,
    pub language: LanguageRef,
}

impl Decomposition {
    pub fn pair(&self, a: usize, b: usize) -> usize {
        a * self.target.len() + b
    }

    /// `⟨a,b⟩` written with the two alphabets' symbols.
    pub fn pair_label(&self, p: usize) -> String {
        format!("<{},{}>", self.input.symbol(self.h[p]), self.target.symbol(self.g[p]))
    }

    pub fn is_star_free(&self) -> Result<bool, Error> {
        is_aperiodic_nfa(&self.d)
    }

    /// Is `w` in `h(L(D) ∩ g⁻¹(B))`? Candidate images are enumerated letter by
    /// letter, pruned by the state set of `D`.
    pub fn accepts(&self, w: &[usize]) -> bool {
        let mut start = FixedBitSet::with_capacity(self.d.state_count());
        for &q in self.d.initial() {
            start.insert(q);
        }
        let mut image = Vec::with_capacity(w.len());
        self.search(w, &start, &mut image)
    }

    fn search(&self, w: &[usize], states: &FixedBitSet, image: &mut Vec<usize>) -> bool {
        let i = image.len();
        if i == w.len() {
            return states.ones().any(|q| self.d.is_final(q)) && self.language.contains(image);
        }
        for b in 0..self.target.len() {
            let next = self.d.step_set(states, self.pair(w[i], b));
            if next.is_clear() {
                continue;
            }
            image.push(b);
            let found = self.search(w, &next, image);
            image.pop();
            if found {
                return true;
            }
        }
        false
    }
}

/// Decomposes a sentence `Q_B x [φ_1; ...; φ_{s-1}]` over `sigma`.
pub fn nivat_decompose(sentence: &Formula, sigma: &Alphabet) -> Result<Decomposition, Error> {
    let Formula::Lindstrom(q) = sentence else {
        return Err(Error::Unsupported(format!("`{sentence}` is not a Lindström quantifier")));
    };
    if q.vars.len() != 1 {
        return Err(Error::Unsupported(format!("quantifier binds {} variables, expected one", q.vars.len())));
    }
    let spec = TransformSpec::of_lindstrom(q)?;
    let compiled = compile_transform(&spec, sigma, &CompileOptions::default())?;
    let nft = compiled.nft;
    let target = spec.target.clone();
    let pairs = Alphabet::generated(sigma.len() * target.len());
    let mut d = Nfa::with_names(pairs.clone(), nft.names().to_vec());
    d.set_initial(nft.initial())?;
    for q in 0..nft.state_count() {
        d.set_final(q, nft.is_final(q))?;
    }
    for (from, a, b, to) in nft.transitions() {
        d.add_transition(from, a * target.len() + b, to)?;
    }
    let h = (0..pairs.len()).map(|p| p / target.len()).collect();
    let g = (0..pairs.len()).map(|p| p % target.len()).collect();
    Ok(Decomposition { input: sigma.clone(), target, pairs, d, h, g, language: q.language.clone() })
}

/// Compares the sentence with its decomposition on every word of length
/// `1..=max_len`.
pub fn check_decomposition(d: &Decomposition, sentence: &Formula, max_len: usize) -> Result<bool, Error> {
    let empty = Assignment::new();
    for w in d.input.words_up_to(max_len) {
        let word = Word::new(d.input.clone(), w.clone())?;
        if eval(sentence, &word, &empty)? != d.accepts(&w) {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_formula;

    fn ab() -> Alphabet {
        Alphabet::parse("(a,b)").unwrap()
    }

    #[test]
    fn majority_of_a() {
        let s = parse_formula("Q[Maj] x. P_a(x)", &ab()).unwrap();
        let d = nivat_decompose(&s, &ab()).unwrap();
        assert!(check_decomposition(&d, &s, 6).unwrap());
        assert!(d.is_star_free().unwrap());
        for w in ab().words_up_to(6) {
            let a = w.iter().filter(|&&c| c == 0).count();
            assert_eq!(d.accepts(&w), 2 * a > w.len());
        }
        for p in 0..d.pairs.len() {
            assert_eq!(d.pair(d.h[p], d.g[p]), p);
        }
        assert_eq!(d.pair_label(d.pair(1, 0)), "<b,1>");
    }

    #[test]
    fn constant_body() {
        let s = parse_formula("Q[Maj] x. false", &ab()).unwrap();
        let d = nivat_decompose(&s, &ab()).unwrap();
        assert!(check_decomposition(&d, &s, 5).unwrap());
        assert!(ab().words_up_to(5).all(|w| !d.accepts(&w)));
    }

    #[test]
    fn dropping_a_final_state_breaks_it() {
        let s = parse_formula("Q[Maj] x. P_a(x)", &ab()).unwrap();
        let mut d = nivat_decompose(&s, &ab()).unwrap();
        let q = (0..d.d.state_count()).find(|&q| d.d.is_final(q)).unwrap();
        d.d.set_final(q, false).unwrap();
        assert!(!check_decomposition(&d, &s, 6).unwrap());
        assert!(check_decomposition(&d, &s, 0).unwrap());
    }

    #[test]
    fn rejects_binary_quantifier() {
        let s = parse_formula("Q[Maj](x, y)[x < y]", &ab()).unwrap();
        assert!(matches!(nivat_decompose(&s, &ab()), Err(Error::Unsupported(_))));
    }
}
