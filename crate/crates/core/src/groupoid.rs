//! Finite groupoids and their word problems.
//!
//! A groupoid is a finite set with a total binary operation and no laws.
//! Its word problem `W(S, G)` holds the words over `G` that multiply out to
//! an element of `S` under at least one bracketing.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use fixedbitset::FixedBitSet;

use crate::alphabet::{Alphabet, Word};
use crate::error::Error;
use crate::grammar::{CfgBuilder, Grammar, Symbol};

/// Most nonterminals accepted by [`cfg_to_groupoid`].
pub const MAX_POWERSET_NONTERMINALS: usize = 10;

#[derive(Clone, PartialEq, Eq)]
pub struct Groupoid {
    elements: Alphabet,
    table: Vec<usize>,
}

impl Groupoid {
    /// `rows[x][y]` is the index of `x · y`.
    pub fn new(elements: Alphabet, rows: Vec<Vec<usize>>) -> Result<Self, Error> {
        let n = elements.len();
        if rows.len() != n || rows.iter().any(|r| r.len() != n) {
            return Err(Error::Malformed(format!("multiplication table must be {n}x{n}")));
        }
        let table: Vec<usize> = rows.into_iter().flatten().collect();
        if let Some(&bad) = table.iter().find(|&&e| e >= n) {
            return Err(Error::UnknownElement(bad));
        }
        Ok(Groupoid { elements, table })
    }

    pub fn elements(&self) -> &Alphabet {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.table[x * self.len() + y]
    }

    /// Every element obtainable from `w` under some bracketing, by interval DP.
    pub fn all_products(&self, w: &[usize]) -> Result<BTreeSet<usize>, Error> {
        if w.is_empty() {
            return Err(Error::EmptyWord);
        }
        if let Some(&bad) = w.iter().find(|&&e| e >= self.len()) {
            return Err(Error::UnknownElement(bad));
        }
        Ok(self.products_bits(w).ones().collect())
    }

    fn products_bits(&self, w: &[usize]) -> FixedBitSet {
        let n = w.len();
        let g = self.len();
        // cell[i][len - 1] = products of w[i..i + len]
        let mut cell: Vec<Vec<FixedBitSet>> = vec![Vec::with_capacity(n); n];
        for (i, &e) in w.iter().enumerate() {
            let mut s = FixedBitSet::with_capacity(g);
            s.insert(e);
            cell[i].push(s);
        }
        for len in 2..=n {
            for i in 0..=n - len {
                let mut s = FixedBitSet::with_capacity(g);
                for split in 1..len {
                    let left = &cell[i][split - 1];
                    let right = &cell[i + split][len - split - 1];
                    for x in left.ones() {
                        for y in right.ones() {
                            s.insert(self.mul(x, y));
                        }
                    }
                }
                cell[i].push(s);
            }
        }
        cell[0].pop().expect("non-empty word")
    }
}

impl fmt::Debug for Groupoid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Groupoid {{ elements: {}, table: {:?} }}", self.elements, self.table)
    }
}

/// `W(S, G)` for a groupoid `G` and accepting set `S`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WordProblem {
    groupoid: Groupoid,
    accepting: FixedBitSet,
}

impl WordProblem {
    pub fn new(groupoid: Groupoid, accepting: impl IntoIterator<Item = usize>) -> Result<Self, Error> {
        let mut set = FixedBitSet::with_capacity(groupoid.len());
        for e in accepting {
            if e >= groupoid.len() {
                return Err(Error::UnknownElement(e));
            }
            set.insert(e);
        }
        Ok(WordProblem { groupoid, accepting: set })
    }

    pub fn groupoid(&self) -> &Groupoid {
        &self.groupoid
    }

    pub fn accepting(&self) -> impl Iterator<Item = usize> + '_ {
        self.accepting.ones()
    }

    pub fn is_accepting(&self, e: usize) -> bool {
        self.accepting.contains(e)
    }

    /// Raw-index membership; ε and out-of-range letters are rejected.
    pub fn accepts(&self, w: &[usize]) -> bool {
        if w.is_empty() || w.iter().any(|&e| e >= self.groupoid.len()) {
            return false;
        }
        !self.groupoid.products_bits(w).is_disjoint(&self.accepting)
    }

    pub fn member(&self, w: &Word) -> Result<bool, Error> {
        if w.alphabet() != self.groupoid.elements() {
            return Err(Error::AlphabetMismatch {
                expected: format!("{}", self.groupoid.elements()),
                found: format!("{}", w.alphabet()),
            });
        }
        if w.is_empty() {
            return Err(Error::EmptyWord);
        }
        Ok(self.accepts(w.letters()))
    }
}

impl fmt::Display for WordProblem {
    /// Line-oriented text: `elements:`, one table row per element, `accepting:`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let g = &self.groupoid;
        let sym = |i: usize| g.elements.symbol(i);
        f.write_str("elements:")?;
        for i in 0..g.len() {
            write!(f, " {}", sym(i))?;
        }
        f.write_str("\n")?;
        for x in 0..g.len() {
            for y in 0..g.len() {
                if y > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{}", sym(g.mul(x, y)))?;
            }
            f.write_str("\n")?;
        }
        f.write_str("accepting:")?;
        for e in self.accepting.ones() {
            write!(f, " {}", sym(e))?;
        }
        f.write_str("\n")
    }
}

/// A word problem equivalent to a grammar, plus the letter embedding.
#[derive(Debug, Clone)]
pub struct GroupoidEmbedding {
    pub problem: WordProblem,
    /// Groupoid element for each terminal index of the grammar.
    pub letters: Vec<usize>,
    /// Nonterminal subset (bitmask) behind each element.
    pub subsets: Vec<u32>,
}

impl GroupoidEmbedding {
    pub fn embed(&self, w: &Word) -> Word {
        let letters = w.letters().iter().map(|&l| self.letters[l]).collect();
        Word::new(self.problem.groupoid().elements().clone(), letters).expect("embedding targets elements")
    }
}

/// Power-set construction: elements are the sets of nonterminals generated
/// from the letter images `{A : A -> a}` under
/// `S · T = {A : A -> B C, B ∈ S, C ∈ T}`. The empty set is an ordinary,
/// never-accepting element. Accepting elements contain the start symbol.
pub fn cfg_to_groupoid(g: &Grammar) -> Result<GroupoidEmbedding, Error> {
    let nts = g.nonterminals().len();
    if nts > MAX_POWERSET_NONTERMINALS {
        return Err(Error::TooLarge { what: "nonterminal count for the power-set groupoid", limit: MAX_POWERSET_NONTERMINALS });
    }
    let mul = |s: u32, t: u32| -> u32 {
        g.binary_rules()
            .iter()
            .filter(|&&(_, b, c)| s & (1 << b) != 0 && t & (1 << c) != 0)
            .fold(0, |acc, &(a, _, _)| acc | (1 << a))
    };
    let mut index: BTreeMap<u32, usize> = BTreeMap::new();
    let mut subsets: Vec<u32> = Vec::new();
    let mut intern = |s: u32, subsets: &mut Vec<u32>| -> usize {
        *index.entry(s).or_insert_with(|| {
            subsets.push(s);
            subsets.len() - 1
        })
    };
    let mut letters = Vec::with_capacity(g.terminals().len());
    for t in 0..g.terminals().len() {
        let image = g
            .terminal_rules()
            .iter()
            .filter(|&&(_, a)| a == t)
            .fold(0u32, |acc, &(nt, _)| acc | (1 << nt));
        letters.push(intern(image, &mut subsets));
    }
    // Close under the product; recompute the square until no element is new.
    let mut table: Vec<Vec<usize>> = Vec::new();
    while table.len() < subsets.len() {
        let size = subsets.len();
        let mut square = vec![vec![0usize; size]; size];
        for (x, row) in square.iter_mut().enumerate() {
            for (y, cell) in row.iter_mut().enumerate() {
                *cell = intern(mul(subsets[x], subsets[y]), &mut subsets);
            }
        }
        table = square;
    }
    let n = subsets.len();
    let elements = Alphabet::generated(n);
    let groupoid = Groupoid::new(elements, table)?;
    let start_bit = 1u32 << g.start();
    let accepting = (0..n).filter(|&e| subsets[e] & start_bit != 0);
    Ok(GroupoidEmbedding { problem: WordProblem::new(groupoid, accepting)?, letters, subsets })
}

/// One nonterminal `N_g` per element, `N_g -> N_x N_y` whenever `x · y = g`,
/// `N_g -> g`, and a start symbol deriving every accepting `N_g`.
pub fn groupoid_to_cfg(wp: &WordProblem) -> Result<Grammar, Error> {
    let g = wp.groupoid();
    let name = |e: usize| alloc::format!("N_{}", g.elements().symbol(e));
    let mut b = CfgBuilder::new("S").terminals(g.elements().clone());
    for e in wp.accepting() {
        b.rule("S", vec![Symbol::N(name(e))]);
    }
    for x in 0..g.len() {
        b.rule(&name(x), vec![Symbol::T(g.elements().symbol(x))]);
        for y in 0..g.len() {
            b.rule(&name(g.mul(x, y)), vec![Symbol::N(name(x)), Symbol::N(name(y))]);
        }
    }
    b.build()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grammar::dyck_grammar;

    fn example() -> Groupoid {
        // a·a = b, a·b = a, b·a = a, b·b = b
        Groupoid::new(Alphabet::parse("(a,b)").unwrap(), vec![vec![1, 0], vec![0, 1]]).unwrap()
    }

    #[test]
    fn products_of_short_words() {
        let g = example();
        assert_eq!(g.all_products(&[0]).unwrap(), [0].into());
        assert_eq!(g.all_products(&[0, 0]).unwrap(), [1].into());
        assert_eq!(g.all_products(&[0, 0, 0]).unwrap(), [0].into());
        assert_eq!(g.all_products(&[2]), Err(Error::UnknownElement(2)));
    }

    #[test]
    fn accepting_sets() {
        let wp = WordProblem::new(example(), [1]).unwrap();
        assert!(wp.accepts(&[0, 0]));
        assert!(!wp.accepts(&[0, 0, 0]));
        let none = WordProblem::new(example(), []).unwrap();
        let all = WordProblem::new(example(), [0, 1]).unwrap();
        for w in example().elements().words_up_to(4) {
            assert!(!none.accepts(&w));
            assert!(all.accepts(&w));
        }
    }

    #[test]
    fn dyck_through_powerset() {
        let g = dyck_grammar(1).unwrap();
        let emb = cfg_to_groupoid(&g).unwrap();
        let w = Word::parse("()", g.terminals()).unwrap();
        assert!(emb.problem.member(&emb.embed(&w)).unwrap());
        let w = Word::parse(")(", g.terminals()).unwrap();
        assert!(!emb.problem.member(&emb.embed(&w)).unwrap());
    }

    #[test]
    fn empty_accepting_set_gives_empty_grammar() {
        let wp = WordProblem::new(example(), []).unwrap();
        assert!(groupoid_to_cfg(&wp).unwrap().is_empty_language());
    }

    #[test]
    fn singleton_groupoid_accepts_everything() {
        let g = Groupoid::new(Alphabet::parse("(e)").unwrap(), vec![vec![0]]).unwrap();
        let wp = WordProblem::new(g, [0]).unwrap();
        let cfg = groupoid_to_cfg(&wp).unwrap();
        for n in 1..6 {
            assert!(cfg.accepts(&vec![0; n]));
        }
    }
}
