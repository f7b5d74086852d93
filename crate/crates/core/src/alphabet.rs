//! Ordered alphabets and words over them.
//!
//! An [`Alphabet`] is an ordered sequence of distinct `char` symbols. The
//! listing order matters: Lindström quantifiers pick the letter of the
//! transformed word by walking the target alphabet in this order.

use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use crate::error::Error;

/// An ordered, non-empty sequence of distinct symbols.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Alphabet(Arc<[char]>);

impl Alphabet {
    pub fn new<I: IntoIterator<Item = char>>(symbols: I) -> Result<Self, Error> {
        let symbols: Vec<char> = symbols.into_iter().collect();
        if symbols.is_empty() {
            return Err(Error::EmptyAlphabet);
        }
        for (i, c) in symbols.iter().enumerate() {
            if symbols[..i].contains(c) {
                return Err(Error::DuplicateSymbol(*c));
            }
        }
        Ok(Alphabet(symbols.into()))
    }

    /// Parses the inline form `(a,b,c)`. Whitespace around symbols is ignored.
    pub fn parse(text: &str) -> Result<Self, Error> {
        let inner = text
            .trim()
            .strip_prefix('(')
            .and_then(|t| t.strip_suffix(')'))
            .ok_or_else(|| Error::Malformed(alloc::format!("alphabet `{text}` must look like (a,b)")))?;
        let mut symbols = Vec::new();
        for part in inner.split(',') {
            let mut chars = part.trim().chars();
            match (chars.next(), chars.next()) {
                (Some(c), None) => symbols.push(c),
                _ => {
                    return Err(Error::Malformed(alloc::format!(
                        "alphabet entry `{}` is not a single symbol",
                        part.trim()
                    )))
                }
            }
        }
        Alphabet::new(symbols)
    }

    /// `n` distinct symbols: `a..z`, `A..Z`, `0..9`, then Latin Extended code points.
    pub fn generated(n: usize) -> Self {
        let base = ('a'..='z').chain('A'..='Z').chain('0'..='9');
        let symbols: Vec<char> = base
            .chain((0x100u32..).filter_map(char::from_u32))
            .take(n.max(1))
            .collect();
        Alphabet(symbols.into())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn symbols(&self) -> &[char] {
        &self.0
    }

    pub fn symbol(&self, index: usize) -> char {
        self.0[index]
    }

    pub fn index_of(&self, symbol: char) -> Option<usize> {
        self.0.iter().position(|&c| c == symbol)
    }

    pub fn contains(&self, symbol: char) -> bool {
        self.index_of(symbol).is_some()
    }

    /// A copy of this alphabet with `symbol` appended.
    pub fn with_symbol(&self, symbol: char) -> Result<Self, Error> {
        Alphabet::new(self.0.iter().copied().chain(core::iter::once(symbol)))
    }

    /// Every word of length exactly `len`, in lexicographic order of indices.
    pub fn words_of_length(&self, len: usize) -> WordsOfLength {
        WordsOfLength { radix: self.len(), current: Some(alloc::vec![0; len]) }
    }

    /// Every word of length `1..=max_len`, shortest first.
    pub fn words_up_to(&self, max_len: usize) -> impl Iterator<Item = Vec<usize>> + '_ {
        (1..=max_len).flat_map(move |len| self.words_of_length(len))
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str(")")
    }
}

impl fmt::Debug for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Alphabet{self}")
    }
}

/// Odometer over index vectors of a fixed length.
pub struct WordsOfLength {
    radix: usize,
    current: Option<Vec<usize>>,
}

impl Iterator for WordsOfLength {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let word = self.current.take()?;
        let mut next = word.clone();
        let mut i = next.len();
        loop {
            if i == 0 {
                break;
            }
            i -= 1;
            next[i] += 1;
            if next[i] < self.radix {
                self.current = Some(next);
                break;
            }
            next[i] = 0;
        }
        Some(word)
    }
}

/// A finite word; positions are 1-based in formulas, 0-based in `letters`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word {
    alphabet: Alphabet,
    letters: Vec<usize>,
}

impl Word {
    pub fn new(alphabet: Alphabet, letters: Vec<usize>) -> Result<Self, Error> {
        if let Some(&bad) = letters.iter().find(|&&l| l >= alphabet.len()) {
            return Err(Error::LetterOutOfRange { index: bad, size: alphabet.len() });
        }
        Ok(Word { alphabet, letters })
    }

    /// Reads one symbol per `char` of `text`.
    pub fn parse(text: &str, alphabet: &Alphabet) -> Result<Self, Error> {
        let letters = text
            .chars()
            .map(|c| alphabet.index_of(c).ok_or(Error::UnknownSymbol(c)))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Word { alphabet: alphabet.clone(), letters })
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn letters(&self) -> &[usize] {
        &self.letters
    }

    pub fn into_letters(self) -> Vec<usize> {
        self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// The symbol at 1-based position `pos`.
    pub fn at(&self, pos: usize) -> char {
        self.alphabet.symbol(self.letters[pos - 1])
    }

    pub fn to_text(&self) -> String {
        self.letters.iter().map(|&l| self.alphabet.symbol(l)).collect()
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &l in &self.letters {
            write!(f, "{}", self.alphabet.symbol(l))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word(\"{self}\" over {})", self.alphabet)
    }
}

/// Renders raw letter indices through an alphabet.
pub fn render(alphabet: &Alphabet, letters: &[usize]) -> String {
    letters.iter().map(|&l| alphabet.symbol(l)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_duplicates_and_empty() {
        assert_eq!(Alphabet::new(['a', 'a']), Err(Error::DuplicateSymbol('a')));
        assert_eq!(Alphabet::new([]), Err(Error::EmptyAlphabet));
    }

    #[test]
    fn parses_inline_form() {
        let sigma = Alphabet::parse("(a, b,#)").unwrap();
        assert_eq!(sigma.symbols(), &['a', 'b', '#']);
        assert_eq!(alloc::format!("{sigma}"), "(a,b,#)");
        assert!(Alphabet::parse("a,b").is_err());
        assert!(Alphabet::parse("(ab,c)").is_err());
    }

    #[test]
    fn enumerates_words() {
        let sigma = Alphabet::parse("(0,1)").unwrap();
        let words: Vec<_> = sigma.words_of_length(2).collect();
        assert_eq!(words, alloc::vec![alloc::vec![0, 0], alloc::vec![0, 1], alloc::vec![1, 0], alloc::vec![1, 1]]);
        assert_eq!(sigma.words_up_to(3).count(), 2 + 4 + 8);
        assert_eq!(sigma.words_of_length(0).count(), 1);
    }

    #[test]
    fn word_positions_are_one_based() {
        let sigma = Alphabet::parse("(a,b)").unwrap();
        let w = Word::parse("ab", &sigma).unwrap();
        assert_eq!(w.at(1), 'a');
        assert_eq!(w.at(2), 'b');
        assert_eq!(Word::parse("ac", &sigma), Err(Error::UnknownSymbol('c')));
    }

    #[test]
    fn generated_alphabets_are_distinct() {
        let big = Alphabet::generated(300);
        assert_eq!(big.len(), 300);
        assert!(Alphabet::new(big.symbols().iter().copied()).is_ok());
    }
}
