use alloc::collections::{BTreeMap, VecDeque};
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use fixedbitset::FixedBitSet;

use super::{default_names, Dfa};
use crate::alphabet::Alphabet;
use crate::error::Error;

/// Nondeterministic automaton; `succ[q][a]` lists the `a`-successors of `q`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Nfa {
    alphabet: Alphabet,
    names: Vec<String>,
    succ: Vec<Vec<Vec<usize>>>,
    initial: Vec<usize>,
    finals: Vec<bool>,
}

impl Nfa {
    pub fn new(alphabet: Alphabet, states: usize) -> Self {
        let s = alphabet.len();
        Nfa {
            alphabet,
            names: default_names(states),
            succ: vec![vec![Vec::new(); s]; states],
            initial: Vec::new(),
            finals: vec![false; states],
        }
    }

    pub fn with_names(alphabet: Alphabet, names: Vec<String>) -> Self {
        let mut nfa = Nfa::new(alphabet, names.len());
        nfa.names = names;
        nfa
    }

    fn check_state(&self, q: usize) -> Result<(), Error> {
        if q < self.names.len() {
            Ok(())
        } else {
            Err(Error::Malformed(alloc::format!("state {q} out of range")))
        }
    }

    pub fn add_transition(&mut self, from: usize, letter: usize, to: usize) -> Result<(), Error> {
        self.check_state(from)?;
        self.check_state(to)?;
        if letter >= self.alphabet.len() {
            return Err(Error::LetterOutOfRange { index: letter, size: self.alphabet.len() });
        }
        let list = &mut self.succ[from][letter];
        if let Err(pos) = list.binary_search(&to) {
            list.insert(pos, to);
        }
        Ok(())
    }

    pub fn set_initial(&mut self, q: usize) -> Result<(), Error> {
        self.check_state(q)?;
        if !self.initial.contains(&q) {
            self.initial.push(q);
            self.initial.sort_unstable();
        }
        Ok(())
    }

    pub fn set_final(&mut self, q: usize, is_final: bool) -> Result<(), Error> {
        self.check_state(q)?;
        self.finals[q] = is_final;
        Ok(())
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn state_count(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn initial(&self) -> &[usize] {
        &self.initial
    }

    pub fn is_final(&self, q: usize) -> bool {
        self.finals[q]
    }

    pub fn successors(&self, q: usize, letter: usize) -> &[usize] {
        &self.succ[q][letter]
    }

    pub fn transition_count(&self) -> usize {
        self.succ.iter().flatten().map(Vec::len).sum()
    }

    /// Every `(from, letter, to)` triple.
    pub fn transitions(&self) -> impl Iterator<Item = (usize, usize, usize)> + '_ {
        self.succ.iter().enumerate().flat_map(|(q, row)| {
            row.iter().enumerate().flat_map(move |(a, succ)| succ.iter().map(move |&r| (q, a, r)))
        })
    }

    /// States reached from `from` by reading `w`.
    pub fn step_set(&self, from: &FixedBitSet, letter: usize) -> FixedBitSet {
        let mut next = FixedBitSet::with_capacity(self.state_count());
        for q in from.ones() {
            for &r in &self.succ[q][letter] {
                next.insert(r);
            }
        }
        next
    }

    pub fn accepts(&self, w: &[usize]) -> bool {
        let mut current = FixedBitSet::with_capacity(self.state_count());
        for &q in &self.initial {
            current.insert(q);
        }
        for &a in w {
            current = self.step_set(&current, a);
        }
        current.ones().any(|q| self.finals[q])
    }
}

impl fmt::Display for Nfa {
    /// Line-oriented text: `alphabet:`, `states:`, `initial:`, `final:`, `trans:` lines.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "alphabet: {}", self.alphabet)?;
        writeln!(f, "states: {}", self.names.join(" "))?;
        let initial: Vec<&str> = self.initial.iter().map(|&q| self.names[q].as_str()).collect();
        writeln!(f, "initial: {}", initial.join(" "))?;
        let finals: Vec<&str> = (0..self.state_count())
            .filter(|&q| self.finals[q])
            .map(|q| self.names[q].as_str())
            .collect();
        writeln!(f, "final: {}", finals.join(" "))?;
        for (q, a, r) in self.transitions() {
            writeln!(f, "trans: {} {} {}", self.names[q], self.alphabet.symbol(a), self.names[r])?;
        }
        Ok(())
    }
}

/// Reachable-subset DFA. The empty subset appears as a dead state when it
/// is reachable.
pub fn subset_construction(a: &Nfa) -> Dfa {
    let s = a.alphabet.len();
    let mut start = FixedBitSet::with_capacity(a.state_count());
    for &q in &a.initial {
        start.insert(q);
    }
    let mut index: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
    let mut subsets: Vec<FixedBitSet> = Vec::new();
    let mut delta: Vec<usize> = Vec::new();
    let key = |set: &FixedBitSet| set.ones().collect::<Vec<_>>();
    index.insert(key(&start), 0);
    subsets.push(start);
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        if delta.len() < (i + 1) * s {
            delta.resize((i + 1) * s, 0);
        }
        for letter in 0..s {
            let next = a.step_set(&subsets[i], letter);
            let k = key(&next);
            let j = match index.get(&k) {
                Some(&j) => j,
                None => {
                    let j = subsets.len();
                    index.insert(k, j);
                    subsets.push(next);
                    queue.push_back(j);
                    j
                }
            };
            delta[i * s + letter] = j;
        }
    }
    delta.resize(subsets.len() * s, 0);
    let finals = subsets.iter().map(|set| set.ones().any(|q| a.finals[q])).collect();
    let names = subsets
        .iter()
        .map(|set| {
            let members: Vec<&str> = set.ones().map(|q| a.names[q].as_str()).collect();
            alloc::format!("{{{}}}", members.join(","))
        })
        .collect();
    Dfa::from_parts(a.alphabet.clone(), names, delta, 0, finals)
}
