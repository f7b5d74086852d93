//! Languages that can back a Lindström quantifier.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::alphabet::{Alphabet, Word};
use crate::error::Error;
use crate::grammar::Grammar;
use crate::groupoid::WordProblem;

/// Built-in recognizers, addressed by name from formulas.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum NamedLanguage {
    /// Words over `(1,0)` with strictly more `1`s than `0`s.
    Majority,
    /// One-sided Dyck language with `t` bracket types, without the empty word.
    Dyck(usize),
    /// Words over `(0,1,#)` with as many `0`s as `1`s.
    EqualZeroOne,
    /// `0^(i-1) a 1* b 0^(i-1) c 1*` over `(a,b,c,0,1)`.
    AdditionHelper,
}

const DYCK_PAIRS: [(char, char); 4] = [('(', ')'), ('[', ']'), ('{', '}'), ('<', '>')];

/// Largest bracket count for which built-in Dyck alphabets exist.
pub const MAX_DYCK_TYPES: usize = DYCK_PAIRS.len() + 26;

/// Opening and closing symbol of bracket type `i` (0-based).
pub fn dyck_pair(i: usize) -> (char, char) {
    if i < DYCK_PAIRS.len() {
        DYCK_PAIRS[i]
    } else {
        let c = (b'a' + (i - DYCK_PAIRS.len()) as u8) as char;
        (c, c.to_ascii_uppercase())
    }
}

/// The alphabet `(o1, c1, o2, c2, ...)` of the Dyck language with `t` types.
pub fn dyck_alphabet(t: usize) -> Alphabet {
    Alphabet::new((0..t).flat_map(|i| {
        let (o, c) = dyck_pair(i);
        [o, c]
    }))
    .expect("bracket symbols are distinct")
}

impl NamedLanguage {
    pub fn name(&self) -> String {
        match self {
            NamedLanguage::Majority => "Maj".to_string(),
            NamedLanguage::Dyck(t) => format!("Dyck{t}"),
            NamedLanguage::EqualZeroOne => "Eq01".to_string(),
            NamedLanguage::AdditionHelper => "Add".to_string(),
        }
    }

    pub fn from_name(name: &str) -> Option<NamedLanguage> {
        match name {
            "Maj" | "Majority" => Some(NamedLanguage::Majority),
            "Eq01" | "EqualZeroOne" => Some(NamedLanguage::EqualZeroOne),
            "Add" | "AdditionHelper" => Some(NamedLanguage::AdditionHelper),
            _ => {
                let digits = name
                    .strip_prefix("Dyck")?
                    .trim_start_matches('(')
                    .trim_end_matches(')');
                let t: usize = digits.parse().ok()?;
                (1..=MAX_DYCK_TYPES).contains(&t).then_some(NamedLanguage::Dyck(t))
            }
        }
    }

    pub fn alphabet(&self) -> Alphabet {
        let symbols: &[char] = match self {
            NamedLanguage::Majority => &['1', '0'],
            NamedLanguage::EqualZeroOne => &['0', '1', '#'],
            NamedLanguage::AdditionHelper => &['a', 'b', 'c', '0', '1'],
            NamedLanguage::Dyck(t) => return dyck_alphabet(*t),
        };
        Alphabet::new(symbols.iter().copied()).expect("built-in alphabets are valid")
    }

    /// Membership of a word given as indices into [`NamedLanguage::alphabet`].
    pub fn contains(&self, w: &[usize]) -> bool {
        match self {
            NamedLanguage::Majority => {
                let ones = w.iter().filter(|&&l| l == 0).count();
                2 * ones > w.len()
            }
            NamedLanguage::EqualZeroOne => {
                let zeros = w.iter().filter(|&&l| l == 0).count();
                let ones = w.iter().filter(|&&l| l == 1).count();
                zeros == ones
            }
            NamedLanguage::Dyck(_) => {
                if w.is_empty() {
                    return false;
                }
                let mut stack = Vec::new();
                for &l in w {
                    if l % 2 == 0 {
                        stack.push(l / 2);
                    } else if stack.pop() != Some(l / 2) {
                        return false;
                    }
                }
                stack.is_empty()
            }
            NamedLanguage::AdditionHelper => addition_helper_contains(w),
        }
    }
}

// Letters of the addition helper alphabet.
const A: usize = 0;
const B: usize = 1;
const C: usize = 2;
const ZERO: usize = 3;
const ONE: usize = 4;

fn addition_helper_contains(w: &[usize]) -> bool {
    let run = |from: usize, letter: usize| w[from..].iter().take_while(|&&l| l == letter).count();
    let mut i = 0;
    let lead = run(i, ZERO);
    i += lead;
    if w.get(i) != Some(&A) {
        return false;
    }
    i += 1;
    i += run(i, ONE);
    if w.get(i) != Some(&B) {
        return false;
    }
    i += 1;
    let mid = run(i, ZERO);
    if mid != lead {
        return false;
    }
    i += mid;
    if w.get(i) != Some(&C) {
        return false;
    }
    i += 1;
    i += run(i, ONE);
    i == w.len()
}

/// The language argument of a Lindström quantifier.
#[derive(Debug, Clone, PartialEq)]
pub enum LanguageRef {
    /// A context-free language, optionally paired with a grammar for its
    /// complement (relative to the non-empty words over the same alphabet).
    Grammar {
        name: String,
        grammar: Arc<Grammar>,
        complement: Option<Arc<Grammar>>,
    },
    /// A groupoid word problem `W(S, G)`.
    Groupoid { name: String, problem: Arc<WordProblem> },
    Named(NamedLanguage),
}

impl LanguageRef {
    pub fn named(lang: NamedLanguage) -> LanguageRef {
        LanguageRef::Named(lang)
    }

    pub fn grammar(name: &str, grammar: Grammar, complement: Option<Grammar>) -> LanguageRef {
        LanguageRef::Grammar {
            name: name.to_string(),
            grammar: Arc::new(grammar),
            complement: complement.map(Arc::new),
        }
    }

    pub fn groupoid(name: &str, problem: WordProblem) -> LanguageRef {
        LanguageRef::Groupoid { name: name.to_string(), problem: Arc::new(problem) }
    }

    pub fn name(&self) -> String {
        match self {
            LanguageRef::Grammar { name, .. } | LanguageRef::Groupoid { name, .. } => name.clone(),
            LanguageRef::Named(n) => n.name(),
        }
    }

    pub fn alphabet(&self) -> Alphabet {
        match self {
            LanguageRef::Grammar { grammar, .. } => grammar.terminals().clone(),
            LanguageRef::Groupoid { problem, .. } => problem.groupoid().elements().clone(),
            LanguageRef::Named(n) => n.alphabet(),
        }
    }

    /// Membership on raw letter indices of [`LanguageRef::alphabet`].
    ///
    /// With debug assertions on, a grammar paired with a complement grammar is
    /// checked to reject exactly the words the complement accepts.
    pub fn contains(&self, w: &[usize]) -> bool {
        match self {
            LanguageRef::Grammar { grammar, complement, .. } => {
                let inside = grammar.accepts(w);
                if cfg!(debug_assertions) {
                    if let Some(co) = complement {
                        if !w.is_empty() {
                            debug_assert_ne!(
                                inside,
                                co.accepts(w),
                                "grammar and complement grammar disagree on a word of length {}",
                                w.len()
                            );
                        }
                    }
                }
                inside
            }
            LanguageRef::Groupoid { problem, .. } => problem.accepts(w),
            LanguageRef::Named(n) => n.contains(w),
        }
    }

    /// Membership of a word, checking that it is over the language's alphabet.
    pub fn member(&self, w: &Word) -> Result<bool, Error> {
        let alphabet = self.alphabet();
        if w.alphabet() != &alphabet {
            return Err(Error::AlphabetMismatch {
                expected: format!("{alphabet}"),
                found: format!("{}", w.alphabet()),
            });
        }
        Ok(self.contains(w.letters()))
    }
}

/// `language_member` from the module contract.
pub fn language_member(language: &LanguageRef, w: &Word) -> Result<bool, Error> {
    language.member(w)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn word(lang: NamedLanguage, text: &str) -> Word {
        Word::parse(text, &lang.alphabet()).unwrap()
    }

    #[test]
    fn majority_tie_is_not_majority() {
        let maj = LanguageRef::named(NamedLanguage::Majority);
        assert!(!maj.member(&word(NamedLanguage::Majority, "10")).unwrap());
        assert!(maj.member(&word(NamedLanguage::Majority, "110")).unwrap());
    }

    #[test]
    fn equal_zero_one_ignores_padding() {
        let l = LanguageRef::named(NamedLanguage::EqualZeroOne);
        assert!(l.member(&word(NamedLanguage::EqualZeroOne, "0#1")).unwrap());
        assert!(!l.member(&word(NamedLanguage::EqualZeroOne, "0##")).unwrap());
        assert!(l.member(&word(NamedLanguage::EqualZeroOne, "###")).unwrap());
    }

    #[test]
    fn dyck_matching() {
        let d2 = LanguageRef::named(NamedLanguage::Dyck(2));
        assert!(d2.member(&word(NamedLanguage::Dyck(2), "[()]")).unwrap());
        assert!(!d2.member(&word(NamedLanguage::Dyck(2), "[(])")).unwrap());
        assert!(!NamedLanguage::Dyck(1).contains(&[]));
    }

    #[test]
    fn addition_helper_shape() {
        let l = NamedLanguage::AdditionHelper;
        // i = 2, j = 4, k = 6
        assert!(l.contains(word(l, "0a1b0c").letters()));
        assert!(!l.contains(word(l, "0a1b00c").letters()));
        assert!(l.contains(word(l, "ab c".replace(' ', "").as_str()).letters()));
        assert!(!l.contains(word(l, "ba c".replace(' ', "").as_str()).letters()));
    }

    #[test]
    fn rejects_foreign_alphabet() {
        let maj = LanguageRef::named(NamedLanguage::Majority);
        let w = Word::parse("ab", &Alphabet::parse("(a,b)").unwrap()).unwrap();
        assert!(matches!(maj.member(&w), Err(Error::AlphabetMismatch { .. })));
    }

    #[test]
    fn registry_names_round_trip() {
        for lang in [
            NamedLanguage::Majority,
            NamedLanguage::EqualZeroOne,
            NamedLanguage::AdditionHelper,
            NamedLanguage::Dyck(1),
            NamedLanguage::Dyck(7),
        ] {
            assert_eq!(NamedLanguage::from_name(&lang.name()), Some(lang));
        }
        assert_eq!(NamedLanguage::from_name("Dyck(2)"), Some(NamedLanguage::Dyck(2)));
        assert_eq!(NamedLanguage::from_name("Dyck0"), None);
    }
}
