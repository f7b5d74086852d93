use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::alphabet::{Alphabet, Word};
use crate::automata::{is_aperiodic_nfa, subset_construction, Nfa};
use crate::error::Error;

/// Letter-to-letter nondeterministic transducer with a single initial state.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Nft {
    input: Alphabet,
    output: Alphabet,
    names: Vec<String>,
    /// `succ[q][a]` holds `(output letter, target)` pairs, sorted.
    succ: Vec<Vec<Vec<(usize, usize)>>>,
    initial: usize,
    finals: Vec<bool>,
}

impl Nft {
    pub fn new(input: Alphabet, output: Alphabet, states: usize) -> Self {
        let names = (0..states).map(|i| format!("q{i}")).collect();
        Nft::with_names(input, output, names)
    }

    pub fn with_names(input: Alphabet, output: Alphabet, names: Vec<String>) -> Self {
        let s = input.len();
        let n = names.len();
        Nft { input, output, names, succ: vec![vec![Vec::new(); s]; n], initial: 0, finals: vec![false; n] }
    }

    fn check_state(&self, q: usize) -> Result<(), Error> {
        if q < self.names.len() {
            Ok(())
        } else {
            Err(Error::Malformed(format!("state {q} out of range")))
        }
    }

    pub fn add_transition(&mut self, from: usize, a: usize, b: usize, to: usize) -> Result<(), Error> {
        self.check_state(from)?;
        self.check_state(to)?;
        if a >= self.input.len() {
            return Err(Error::LetterOutOfRange { index: a, size: self.input.len() });
        }
        if b >= self.output.len() {
            return Err(Error::LetterOutOfRange { index: b, size: self.output.len() });
        }
        let list = &mut self.succ[from][a];
        if let Err(pos) = list.binary_search(&(b, to)) {
            list.insert(pos, (b, to));
        }
        Ok(())
    }

    pub fn set_initial(&mut self, q: usize) -> Result<(), Error> {
        self.check_state(q)?;
        self.initial = q;
        Ok(())
    }

    pub fn set_final(&mut self, q: usize, is_final: bool) -> Result<(), Error> {
        self.check_state(q)?;
        self.finals[q] = is_final;
        Ok(())
    }

    pub fn input(&self) -> &Alphabet {
        &self.input
    }

    pub fn output(&self) -> &Alphabet {
        &self.output
    }

    pub fn state_count(&self) -> usize {
        self.names.len()
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

    pub fn moves(&self, q: usize, a: usize) -> &[(usize, usize)] {
        &self.succ[q][a]
    }

    /// Every `(from, input, output, to)` quadruple.
    pub fn transitions(&self) -> impl Iterator<Item = (usize, usize, usize, usize)> + '_ {
        self.succ.iter().enumerate().flat_map(|(q, row)| {
            row.iter().enumerate().flat_map(move |(a, moves)| moves.iter().map(move |&(b, r)| (q, a, b, r)))
        })
    }

    pub fn transition_count(&self) -> usize {
        self.succ.iter().flatten().map(Vec::len).sum()
    }

    /// All outputs of accepting runs on `w`, as raw output indices.
    pub fn run_outputs_raw(&self, w: &[usize]) -> BTreeSet<Vec<usize>> {
        let n = w.len();
        let states = self.state_count();
        // live[i][q]: from q, the suffix w[i..] can be read into a final state.
        let mut live = vec![vec![false; states]; n + 1];
        live[n].clone_from(&self.finals);
        for i in (0..n).rev() {
            for q in 0..states {
                live[i][q] = self.succ[q][w[i]].iter().any(|&(_, r)| live[i + 1][r]);
            }
        }
        let mut frontier: BTreeSet<(usize, Vec<usize>)> = BTreeSet::new();
        if live[0][self.initial] {
            frontier.insert((self.initial, Vec::new()));
        }
        for i in 0..n {
            let mut next = BTreeSet::new();
            for (q, out) in &frontier {
                for &(b, r) in &self.succ[*q][w[i]] {
                    if live[i + 1][r] {
                        let mut o = out.clone();
                        o.push(b);
                        next.insert((r, o));
                    }
                }
            }
            frontier = next;
        }
        frontier.into_iter().map(|(_, out)| out).collect()
    }

    pub fn run_outputs(&self, w: &Word) -> Result<BTreeSet<Word>, Error> {
        if w.alphabet() != &self.input {
            return Err(Error::AlphabetMismatch { expected: format!("{}", self.input), found: format!("{}", w.alphabet()) });
        }
        self.run_outputs_raw(w.letters())
            .into_iter()
            .map(|out| Word::new(self.output.clone(), out))
            .collect()
    }

    /// The automaton obtained by forgetting outputs.
    pub fn input_projection(&self) -> Nfa {
        let mut n = Nfa::with_names(self.input.clone(), self.names.clone());
        n.set_initial(self.initial).expect("valid state");
        for q in 0..self.state_count() {
            n.set_final(q, self.finals[q]).expect("valid state");
        }
        for (q, a, _, r) in self.transitions() {
            n.add_transition(q, a, r).expect("valid transition");
        }
        n
    }

    /// Every nonempty input has at least one accepting run.
    pub fn is_total(&self) -> bool {
        let d = subset_construction(&self.input_projection());
        let s = d.alphabet().len();
        let mut seen = vec![false; d.state_count()];
        let mut queue: VecDeque<usize> = (0..s).map(|a| d.step(d.initial(), a)).collect();
        for &q in &queue {
            seen[q] = true;
        }
        while let Some(q) = queue.pop_front() {
            if !d.is_final(q) {
                return false;
            }
            for a in 0..s {
                let r = d.step(q, a);
                if !seen[r] {
                    seen[r] = true;
                    queue.push_back(r);
                }
            }
        }
        true
    }

    /// No input has two accepting runs with different outputs.
    pub fn has_unique_outputs(&self) -> bool {
        let start = (self.initial, self.initial, false);
        let mut seen = BTreeSet::from([start]);
        let mut queue = VecDeque::from([start]);
        while let Some((p, q, diverged)) = queue.pop_front() {
            if diverged && self.finals[p] && self.finals[q] {
                return false;
            }
            for a in 0..self.input.len() {
                for &(b1, p2) in &self.succ[p][a] {
                    for &(b2, q2) in &self.succ[q][a] {
                        let next = (p2, q2, diverged || b1 != b2);
                        if seen.insert(next) {
                            queue.push_back(next);
                        }
                    }
                }
            }
        }
        true
    }

    /// Exactly one output for every nonempty input.
    pub fn is_single_valued(&self) -> bool {
        self.is_total() && self.has_unique_outputs()
    }

    pub fn is_aperiodic(&self) -> Result<bool, Error> {
        is_aperiodic_nfa(&self.input_projection())
    }

    /// Drops states that are not reachable from the initial state or cannot
    /// reach a final state. The initial state is always kept.
    pub fn trim(&self) -> Nft {
        let n = self.state_count();
        let mut forward = vec![false; n];
        forward[self.initial] = true;
        let mut queue = VecDeque::from([self.initial]);
        while let Some(q) = queue.pop_front() {
            for (_, r) in self.succ[q].iter().flatten() {
                if !forward[*r] {
                    forward[*r] = true;
                    queue.push_back(*r);
                }
            }
        }
        let mut preds: Vec<Vec<usize>> = vec![Vec::new(); n];
        for (q, _, _, r) in self.transitions() {
            preds[r].push(q);
        }
        let mut backward = self.finals.clone();
        let mut queue: VecDeque<usize> = (0..n).filter(|&q| self.finals[q]).collect();
        while let Some(r) = queue.pop_front() {
            for &q in &preds[r] {
                if !backward[q] {
                    backward[q] = true;
                    queue.push_back(q);
                }
            }
        }
        let keep: Vec<usize> = (0..n).filter(|&q| q == self.initial || (forward[q] && backward[q])).collect();
        let renumber: BTreeMap<usize, usize> = keep.iter().enumerate().map(|(i, &q)| (q, i)).collect();
        let names = keep.iter().map(|&q| self.names[q].clone()).collect();
        let mut out = Nft::with_names(self.input.clone(), self.output.clone(), names);
        out.initial = renumber[&self.initial];
        for (&q, &i) in &renumber {
            out.finals[i] = self.finals[q];
        }
        for (q, a, b, r) in self.transitions() {
            if let (Some(&i), Some(&j)) = (renumber.get(&q), renumber.get(&r)) {
                out.succ[i][a].push((b, j));
            }
        }
        out
    }

    /// Quotient by the coarsest forward bisimulation over `input/output`
    /// labels. Each state keeps its set of outputs on every input, so the
    /// relation computed by the machine is unchanged.
    pub fn reduce(&self) -> Nft {
        let n = self.state_count();
        let mut class: Vec<usize> = self.finals.iter().map(|&f| usize::from(f)).collect();
        let mut count = 0;
        loop {
            let mut ids: BTreeMap<(usize, Vec<(usize, usize, usize)>), usize> = BTreeMap::new();
            let mut next = vec![0; n];
            for q in 0..n {
                let mut sig: Vec<(usize, usize, usize)> = Vec::new();
                for (a, moves) in self.succ[q].iter().enumerate() {
                    sig.extend(moves.iter().map(|&(b, r)| (a, b, class[r])));
                }
                sig.sort_unstable();
                sig.dedup();
                let fresh = ids.len();
                next[q] = *ids.entry((class[q], sig)).or_insert(fresh);
            }
            class = next;
            if ids.len() == count {
                break;
            }
            count = ids.len();
        }
        // Number classes by first occurrence, starting from the initial state.
        let mut order = vec![usize::MAX; count];
        let mut names = Vec::with_capacity(count);
        let mut reps = Vec::with_capacity(count);
        for q in core::iter::once(self.initial).chain(0..n) {
            if order[class[q]] == usize::MAX {
                order[class[q]] = reps.len();
                reps.push(q);
                names.push(self.names[q].clone());
            }
        }
        let mut out = Nft::with_names(self.input.clone(), self.output.clone(), names);
        for (i, &q) in reps.iter().enumerate() {
            out.finals[i] = self.finals[q];
            for (a, moves) in self.succ[q].iter().enumerate() {
                for &(b, r) in moves {
                    out.add_transition(i, a, b, order[class[r]]).expect("valid transition");
                }
            }
        }
        out
    }
}

impl fmt::Display for Nft {
    /// Automaton text format with an `output:` line and `trans: q a/b r` lines.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "alphabet: {}", self.input)?;
        writeln!(f, "output: {}", self.output)?;
        writeln!(f, "states: {}", self.names.join(" "))?;
        writeln!(f, "initial: {}", self.names[self.initial])?;
        let finals: Vec<&str> =
            (0..self.state_count()).filter(|&q| self.finals[q]).map(|q| self.names[q].as_str()).collect();
        writeln!(f, "final: {}", finals.join(" "))?;
        for (q, a, b, r) in self.transitions() {
            writeln!(
                f,
                "trans: {} {}/{} {}",
                self.names[q],
                self.input.symbol(a),
                self.output.symbol(b),
                self.names[r]
            )?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ab() -> Alphabet {
        Alphabet::parse("(a,b)").unwrap()
    }

    fn copy() -> Nft {
        let mut m = Nft::new(ab(), ab(), 1);
        m.set_final(0, true).unwrap();
        m.add_transition(0, 0, 0, 0).unwrap();
        m.add_transition(0, 1, 1, 0).unwrap();
        m
    }

    fn guess() -> Nft {
        let bits = Alphabet::parse("(0,1)").unwrap();
        let mut m = Nft::new(ab(), bits, 1);
        m.set_final(0, true).unwrap();
        for a in 0..2 {
            for b in 0..2 {
                m.add_transition(0, a, b, 0).unwrap();
            }
        }
        m
    }

    #[test]
    fn copy_machine() {
        let m = copy();
        let w = Word::parse("ab", &ab()).unwrap();
        let outs = m.run_outputs(&w).unwrap();
        assert_eq!(outs.len(), 1);
        assert_eq!(outs.iter().next().unwrap().to_text(), "ab");
        assert!(m.is_single_valued());
        assert!(m.is_aperiodic().unwrap());
    }

    #[test]
    fn free_guess_machine() {
        let m = guess();
        for len in 1..=6 {
            assert_eq!(m.run_outputs_raw(&vec![0; len]).len(), 1 << len);
        }
        assert!(m.is_total());
        assert!(!m.is_single_valued());
    }

    #[test]
    fn parity_projection_is_not_aperiodic() {
        let a = Alphabet::parse("(a)").unwrap();
        let mut m = Nft::new(a.clone(), a, 2);
        m.set_final(0, true).unwrap();
        m.add_transition(0, 0, 0, 1).unwrap();
        m.add_transition(1, 0, 0, 0).unwrap();
        assert!(!m.is_aperiodic().unwrap());
        assert!(!m.is_total());
    }

    #[test]
    fn reduce_merges_copies() {
        // Two interchangeable copies of the copy machine.
        let mut m = Nft::new(ab(), ab(), 2);
        for q in 0..2 {
            m.set_final(q, true).unwrap();
            m.add_transition(q, 0, 0, 1 - q).unwrap();
            m.add_transition(q, 1, 1, q).unwrap();
        }
        let r = m.reduce();
        assert_eq!(r.state_count(), 1);
        for w in ab().words_up_to(5) {
            assert_eq!(r.run_outputs_raw(&w), m.run_outputs_raw(&w));
        }
    }

    #[test]
    fn trim_keeps_language() {
        let mut m = copy();
        let mut bigger = Nft::new(ab(), ab(), 3);
        for (q, a, b, r) in m.transitions() {
            bigger.add_transition(q, a, b, r).unwrap();
        }
        bigger.set_final(0, true).unwrap();
        bigger.add_transition(2, 0, 1, 0).unwrap();
        bigger.add_transition(0, 1, 0, 1).unwrap();
        let t = bigger.trim();
        assert_eq!(t.state_count(), 1);
        m.set_initial(0).unwrap();
        assert_eq!(t, m);
    }
}
