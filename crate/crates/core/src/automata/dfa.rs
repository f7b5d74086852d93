use alloc::collections::{BTreeMap, VecDeque};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use super::{default_names, Nfa};
use crate::alphabet::Alphabet;
use crate::error::Error;

/// Complete deterministic automaton; `delta[q * |Σ| + a]` is the successor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dfa {
    alphabet: Alphabet,
    names: Vec<String>,
    delta: Vec<usize>,
    initial: usize,
    finals: Vec<bool>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoolOp {
    And,
    Or,
    Diff,
}

impl Dfa {
    pub(crate) fn from_parts(
        alphabet: Alphabet,
        names: Vec<String>,
        delta: Vec<usize>,
        initial: usize,
        finals: Vec<bool>,
    ) -> Self {
        Dfa { alphabet, names, delta, initial, finals }
    }

    /// Builds a DFA from a transition function over `states` states.
    pub fn from_fn(
        alphabet: Alphabet,
        states: usize,
        initial: usize,
        finals: &[usize],
        step: impl Fn(usize, usize) -> usize,
    ) -> Result<Self, Error> {
        let s = alphabet.len();
        let mut delta = Vec::with_capacity(states * s);
        for q in 0..states {
            for a in 0..s {
                let r = step(q, a);
                if r >= states {
                    return Err(Error::Malformed(format!("transition target {r} out of range")));
                }
                delta.push(r);
            }
        }
        if initial >= states {
            return Err(Error::Malformed(format!("initial state {initial} out of range")));
        }
        let mut fin = vec![false; states];
        for &q in finals {
            *fin.get_mut(q).ok_or_else(|| Error::Malformed(format!("final state {q} out of range")))? = true;
        }
        Ok(Dfa { alphabet, names: default_names(states), delta, initial, finals: fin })
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn state_count(&self) -> usize {
        self.finals.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    pub fn is_final(&self, q: usize) -> bool {
        self.finals[q]
    }

    pub fn step(&self, q: usize, letter: usize) -> usize {
        self.delta[q * self.alphabet.len() + letter]
    }

    pub fn run_from(&self, q: usize, w: &[usize]) -> usize {
        w.iter().fold(q, |q, &a| self.step(q, a))
    }

    pub fn accepts(&self, w: &[usize]) -> bool {
        self.finals[self.run_from(self.initial, w)]
    }

    pub fn complement(&self) -> Dfa {
        let mut d = self.clone();
        for f in d.finals.iter_mut() {
            *f = !*f;
        }
        d
    }

    fn reachable(&self) -> Vec<bool> {
        let mut seen = vec![false; self.state_count()];
        seen[self.initial] = true;
        let mut queue = VecDeque::from([self.initial]);
        while let Some(q) = queue.pop_front() {
            for a in 0..self.alphabet.len() {
                let r = self.step(q, a);
                if !seen[r] {
                    seen[r] = true;
                    queue.push_back(r);
                }
            }
        }
        seen
    }

    /// True when no word (ε included) is accepted.
    pub fn is_empty(&self) -> bool {
        self.reachable().iter().zip(&self.finals).all(|(&r, &f)| !(r && f))
    }

    /// A shortest accepted word, if any.
    pub fn shortest_accepted(&self) -> Option<Vec<usize>> {
        let mut parent: Vec<Option<(usize, usize)>> = vec![None; self.state_count()];
        let mut seen = vec![false; self.state_count()];
        seen[self.initial] = true;
        let mut queue = VecDeque::from([self.initial]);
        while let Some(q) = queue.pop_front() {
            if self.finals[q] {
                let mut word = Vec::new();
                let mut at = q;
                while let Some((p, a)) = parent[at] {
                    word.push(a);
                    at = p;
                }
                word.reverse();
                return Some(word);
            }
            for a in 0..self.alphabet.len() {
                let r = self.step(q, a);
                if !seen[r] {
                    seen[r] = true;
                    parent[r] = Some((q, a));
                    queue.push_back(r);
                }
            }
        }
        None
    }

    /// Minimal complete DFA: unreachable states dropped, then Moore refinement.
    pub fn minimize(&self) -> Dfa {
        let s = self.alphabet.len();
        let reachable = self.reachable();
        let live: Vec<usize> = (0..self.state_count()).filter(|&q| reachable[q]).collect();
        let mut class: Vec<usize> = vec![usize::MAX; self.state_count()];
        for &q in &live {
            class[q] = usize::from(self.finals[q]);
        }
        let mut count = {
            let mut seen: Vec<usize> = live.iter().map(|&q| class[q]).collect();
            seen.sort_unstable();
            seen.dedup();
            seen.len()
        };
        loop {
            let mut signature_ix: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
            let mut next = vec![usize::MAX; self.state_count()];
            for &q in &live {
                let mut sig = Vec::with_capacity(s + 1);
                sig.push(class[q]);
                sig.extend((0..s).map(|a| class[self.step(q, a)]));
                let fresh = signature_ix.len();
                next[q] = *signature_ix.entry(sig).or_insert(fresh);
            }
            let new_count = signature_ix.len();
            class = next;
            if new_count == count {
                break;
            }
            count = new_count;
        }
        // Renumber classes in BFS order from the initial state.
        let mut order: Vec<usize> = vec![usize::MAX; count];
        let mut reps: Vec<usize> = Vec::with_capacity(count);
        order[class[self.initial]] = 0;
        reps.push(self.initial);
        let mut i = 0;
        while i < reps.len() {
            let q = reps[i];
            for a in 0..s {
                let c = class[self.step(q, a)];
                if order[c] == usize::MAX {
                    order[c] = reps.len();
                    reps.push(self.step(q, a));
                }
            }
            i += 1;
        }
        let mut delta = Vec::with_capacity(reps.len() * s);
        for &q in &reps {
            for a in 0..s {
                delta.push(order[class[self.step(q, a)]]);
            }
        }
        let finals = reps.iter().map(|&q| self.finals[q]).collect();
        let names = reps.iter().map(|&q| self.names[q].clone()).collect();
        Dfa { alphabet: self.alphabet.clone(), names, delta, initial: 0, finals }
    }

    pub fn to_nfa(&self) -> Nfa {
        let mut n = Nfa::with_names(self.alphabet.clone(), self.names.clone());
        n.set_initial(self.initial).expect("valid state");
        for q in 0..self.state_count() {
            n.set_final(q, self.finals[q]).expect("valid state");
            for a in 0..self.alphabet.len() {
                n.add_transition(q, a, self.step(q, a)).expect("valid transition");
            }
        }
        n
    }
}

impl fmt::Display for Dfa {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_nfa())
    }
}

/// Reachable part of the product automaton for `L(a) op L(b)`.
pub fn product(a: &Dfa, b: &Dfa, op: BoolOp) -> Result<Dfa, Error> {
    if a.alphabet != b.alphabet {
        return Err(Error::AlphabetMismatch {
            expected: format!("{}", a.alphabet),
            found: format!("{}", b.alphabet),
        });
    }
    let s = a.alphabet.len();
    let mut index: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    let mut pairs = vec![(a.initial, b.initial)];
    index.insert((a.initial, b.initial), 0);
    let mut delta = Vec::new();
    let mut i = 0;
    while i < pairs.len() {
        let (p, q) = pairs[i];
        for letter in 0..s {
            let next = (a.step(p, letter), b.step(q, letter));
            let j = *index.entry(next).or_insert_with(|| {
                pairs.push(next);
                pairs.len() - 1
            });
            delta.push(j);
        }
        i += 1;
    }
    let finals = pairs
        .iter()
        .map(|&(p, q)| match op {
            BoolOp::And => a.finals[p] && b.finals[q],
            BoolOp::Or => a.finals[p] || b.finals[q],
            BoolOp::Diff => a.finals[p] && !b.finals[q],
        })
        .collect();
    let names = pairs.iter().map(|&(p, q)| format!("({},{})", a.names[p], b.names[q])).collect();
    Ok(Dfa { alphabet: a.alphabet.clone(), names, delta, initial: 0, finals })
}
