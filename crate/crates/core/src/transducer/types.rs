//! Rank-k types of words and the finite monoid they form under
//! concatenation.
//!
//! A type is computed as a Hintikka tree: the atomic type of the pebbled
//! tuple (letters at each point and the order between points) together with
//! the set of types obtained by pebbling one more position. Two words get the
//! same rank-k key exactly when the duplicator wins the k-round game on them.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::alphabet::{Alphabet, Word};
use crate::error::Error;

/// Largest rank accepted by the type machinery.
pub const MAX_RANK: usize = 3;

/// Default cap on the number of elements of a type monoid.
pub const DEFAULT_TYPE_BUDGET: usize = 20_000;

/// Which built-in constants take part in atomic types.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, PartialOrd, Ord, Hash)]
pub enum Vocabulary {
    /// Order, equality, letters, and the constants `min` and `max`.
    #[default]
    WithEndpoints,
    /// Order, equality and letters only.
    OrderOnly,
}

const EMPTY_WORD: u16 = u16::MAX;

/// Canonical rank-k key as an explicit tree.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TypeKey {
    atoms: Vec<u16>,
    children: Vec<TypeKey>,
}

impl TypeKey {
    /// Depth of the tree, which is the rank it was computed at.
    pub fn depth(&self) -> usize {
        self.children.iter().map(|c| c.depth() + 1).max().unwrap_or(0)
    }
}

/// Equality compares rank and key; representatives are ignored.
#[derive(Debug, Clone)]
pub struct RankType {
    pub rank: usize,
    pub key: TypeKey,
    /// A shortest word with this type among those enumerated so far; for a
    /// standalone computation, the word itself.
    pub representative: Vec<usize>,
}

impl PartialEq for RankType {
    fn eq(&self, other: &Self) -> bool {
        self.rank == other.rank && self.key == other.key
    }
}

impl Eq for RankType {}

fn check_rank(k: usize) -> Result<(), Error> {
    if k > MAX_RANK {
        return Err(Error::RankCap { requested: k, cap: MAX_RANK });
    }
    Ok(())
}

/// Atomic type of the pebbled points (constants first when present).
fn atomic(w: &[usize], tuple: &[usize], vocab: Vocabulary) -> Vec<u16> {
    if w.is_empty() {
        return vec![EMPTY_WORD];
    }
    let mut points: Vec<usize> = Vec::with_capacity(tuple.len() + 2);
    if vocab == Vocabulary::WithEndpoints {
        points.push(1);
        points.push(w.len());
    }
    points.extend_from_slice(tuple);
    let mut atoms = Vec::with_capacity(points.len() * (points.len() + 1) / 2);
    for (i, &p) in points.iter().enumerate() {
        atoms.push(w[p - 1] as u16);
        for &q in &points[i + 1..] {
            atoms.push(match p.cmp(&q) {
                Ordering::Less => 0,
                Ordering::Equal => 1,
                Ordering::Greater => 2,
            });
        }
    }
    atoms
}

fn hintikka<T: Ord + Clone>(
    w: &[usize],
    tuple: &mut Vec<usize>,
    depth: usize,
    vocab: Vocabulary,
    make: &mut dyn FnMut(Vec<u16>, Vec<T>) -> T,
) -> T {
    let atoms = atomic(w, tuple, vocab);
    let mut children = Vec::new();
    if depth > 0 {
        for p in 1..=w.len() {
            tuple.push(p);
            children.push(hintikka(w, tuple, depth - 1, vocab, make));
            tuple.pop();
        }
        children.sort_unstable();
        children.dedup();
    }
    make(atoms, children)
}

/// Rank-k key of `w` as an explicit tree.
pub fn type_key(w: &[usize], k: usize, vocab: Vocabulary) -> Result<TypeKey, Error> {
    check_rank(k)?;
    Ok(hintikka(w, &mut Vec::new(), k, vocab, &mut |atoms, children| TypeKey { atoms, children }))
}

/// Rank-k type of `w` over the default vocabulary.
pub fn rank_type(w: &Word, k: usize) -> Result<RankType, Error> {
    let key = type_key(w.letters(), k, Vocabulary::default())?;
    Ok(RankType { rank: k, key, representative: w.letters().to_vec() })
}

/// Hash-consing table: equal subtrees get equal ids.
#[derive(Debug, Clone, Default)]
struct Interner {
    ids: BTreeMap<(Vec<u16>, Vec<u32>), u32>,
    nodes: Vec<(Vec<u16>, Vec<u32>)>,
}

impl Interner {
    fn id(&mut self, w: &[usize], k: usize, vocab: Vocabulary) -> u32 {
        hintikka(w, &mut Vec::new(), k, vocab, &mut |atoms, children| {
            let node = (atoms, children);
            if let Some(&id) = self.ids.get(&node) {
                return id;
            }
            let id = self.nodes.len() as u32;
            self.nodes.push(node.clone());
            self.ids.insert(node, id);
            id
        })
    }

    fn expand(&self, id: u32) -> TypeKey {
        let (atoms, children) = &self.nodes[id as usize];
        let mut children: Vec<TypeKey> = children.iter().map(|&c| self.expand(c)).collect();
        children.sort_unstable();
        TypeKey { atoms: atoms.clone(), children }
    }
}

/// The rank-k types over an alphabet with their concatenation table.
///
/// Element 0 is the type of the empty word and is the unit. Representatives
/// are shortest words (ties broken lexicographically).
#[derive(Debug, Clone)]
pub struct TypeMonoid {
    rank: usize,
    vocab: Vocabulary,
    alphabet: Alphabet,
    ids: Vec<u32>,
    representatives: Vec<Vec<usize>>,
    letter_types: Vec<usize>,
    table: Vec<usize>,
    interner: Interner,
}

impl TypeMonoid {
    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn vocabulary(&self) -> Vocabulary {
        self.vocab
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn unit(&self) -> usize {
        0
    }

    pub fn letter_type(&self, letter: usize) -> usize {
        self.letter_types[letter]
    }

    pub fn representative(&self, t: usize) -> &[usize] {
        &self.representatives[t]
    }

    pub fn key(&self, t: usize) -> TypeKey {
        self.interner.expand(self.ids[t])
    }

    pub fn element(&self, t: usize) -> RankType {
        RankType { rank: self.rank, key: self.key(t), representative: self.representatives[t].clone() }
    }

    pub fn concat(&self, x: usize, y: usize) -> usize {
        self.table[x * self.len() + y]
    }

    /// Type of `w`, read off the table one letter at a time.
    pub fn type_of(&self, w: &[usize]) -> usize {
        w.iter().fold(self.unit(), |t, &a| self.concat(t, self.letter_types[a]))
    }
}

pub fn build_type_monoid(sigma: &Alphabet, k: usize) -> Result<TypeMonoid, Error> {
    build_type_monoid_with(sigma, k, Vocabulary::default(), DEFAULT_TYPE_BUDGET)
}

/// Breadth-first closure from the empty word under appending letters. The
/// type of `uv` is read by appending the letters of `v` one at a time to the
/// type of `u`, which is sound because types are compatible with
/// concatenation.
pub fn build_type_monoid_with(
    sigma: &Alphabet,
    k: usize,
    vocab: Vocabulary,
    budget: usize,
) -> Result<TypeMonoid, Error> {
    check_rank(k)?;
    let mut interner = Interner::default();
    let mut by_id: BTreeMap<u32, usize> = BTreeMap::new();
    let mut ids = vec![interner.id(&[], k, vocab)];
    by_id.insert(ids[0], 0);
    let mut representatives: Vec<Vec<usize>> = vec![Vec::new()];
    let mut i = 0;
    while i < representatives.len() {
        for a in 0..sigma.len() {
            let mut word = representatives[i].clone();
            word.push(a);
            let id = interner.id(&word, k, vocab);
            if by_id.contains_key(&id) {
                continue;
            }
            if ids.len() >= budget {
                return Err(Error::TypeBudget(budget));
            }
            by_id.insert(id, ids.len());
            ids.push(id);
            representatives.push(word);
        }
        i += 1;
    }
    let letter_types: Vec<usize> = (0..sigma.len()).map(|a| by_id[&interner.id(&[a], k, vocab)]).collect();
    let n = ids.len();
    // Appending a letter to a representative: every such word was typed
    // during the closure.
    let mut right = Vec::with_capacity(n * sigma.len());
    for rep in &representatives {
        for a in 0..sigma.len() {
            let mut word = rep.clone();
            word.push(a);
            right.push(by_id[&interner.id(&word, k, vocab)]);
        }
    }
    let mut table = Vec::with_capacity(n * n);
    for x in 0..n {
        for rep in &representatives {
            table.push(rep.iter().fold(x, |t, &a| right[t * sigma.len() + a]));
        }
    }
    Ok(TypeMonoid { rank: k, vocab, alphabet: sigma.clone(), ids, representatives, letter_types, table, interner })
}
