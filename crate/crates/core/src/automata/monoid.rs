use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use super::{subset_construction, Dfa, Nfa};
use crate::error::Error;

/// Largest transition monoid the closure will build.
pub const MONOID_LIMIT: usize = 200_000;

/// Transformations of the state set induced by nonempty words, plus the
/// identity at index 0. `f[q]` is the state reached from `q`.
#[derive(Debug, Clone)]
pub struct TransitionMonoid {
    elements: Vec<Vec<usize>>,
    index: BTreeMap<Vec<usize>, usize>,
    generators: Vec<usize>,
}

impl TransitionMonoid {
    pub fn new(d: &Dfa) -> Result<Self, Error> {
        let states = d.state_count();
        let letters = d.alphabet().len();
        let identity: Vec<usize> = (0..states).collect();
        let mut m = TransitionMonoid { elements: Vec::new(), index: BTreeMap::new(), generators: Vec::new() };
        m.insert(identity);
        for a in 0..letters {
            let g: Vec<usize> = (0..states).map(|q| d.step(q, a)).collect();
            let ix = m.insert(g);
            m.generators.push(ix);
        }
        let mut i = 0;
        while i < m.elements.len() {
            for a in 0..letters {
                let next: Vec<usize> = m.elements[i].iter().map(|&q| d.step(q, a)).collect();
                m.insert(next);
                if m.elements.len() > MONOID_LIMIT {
                    return Err(Error::TooLarge { what: "transition monoid", limit: MONOID_LIMIT });
                }
            }
            i += 1;
        }
        Ok(m)
    }

    fn insert(&mut self, f: Vec<usize>) -> usize {
        if let Some(&i) = self.index.get(&f) {
            return i;
        }
        let i = self.elements.len();
        self.index.insert(f.clone(), i);
        self.elements.push(f);
        i
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn element(&self, i: usize) -> &[usize] {
        &self.elements[i]
    }

    pub fn elements(&self) -> &[Vec<usize>] {
        &self.elements
    }

    pub fn generator(&self, letter: usize) -> usize {
        self.generators[letter]
    }

    /// Index of `f` followed by `g`.
    pub fn compose(&self, f: usize, g: usize) -> usize {
        let h: Vec<usize> = self.elements[f].iter().map(|&q| self.elements[g][q]).collect();
        self.index[&h]
    }

    pub fn element_of_word(&self, w: &[usize]) -> usize {
        w.iter().fold(self.identity(), |e, &a| self.compose(e, self.generators[a]))
    }

    /// Smallest `i ≥ 1` with `e^i = e^(i+1)`, if any.
    pub fn stabilization_index(&self, e: usize) -> Option<usize> {
        let mut seen = BTreeMap::new();
        let mut power = e;
        for i in 1.. {
            let next = self.compose(power, e);
            if next == power {
                return Some(i);
            }
            if seen.insert(power, i).is_some() {
                return None;
            }
            power = next;
        }
        unreachable!()
    }

    /// Every element is eventually idempotent with period one.
    pub fn is_aperiodic(&self) -> bool {
        (0..self.len()).all(|e| self.stabilization_index(e).is_some())
    }
}

pub fn is_aperiodic(d: &Dfa) -> Result<bool, Error> {
    Ok(TransitionMonoid::new(d)?.is_aperiodic())
}

/// Aperiodicity of the reachable-subset DFA of `n`.
pub fn is_aperiodic_nfa(n: &Nfa) -> Result<bool, Error> {
    is_aperiodic(&subset_construction(n))
}

/// Checks `δ(s, w^n) = δ(s, w^(n+1))` for every state `s` and every word
/// `1 ≤ |w| ≤ max_len`, with `n = |Q|!` capped at 720 (never below `|Q|`).
pub fn definition_check_aperiodic(d: &Dfa, max_len: usize) -> bool {
    let states = d.state_count();
    let factorial = (1..=states).try_fold(1usize, |acc, i| acc.checked_mul(i).filter(|&v| v <= 720));
    let n = factorial.unwrap_or(720).max(states);
    d.alphabet().words_up_to(max_len).all(|w| {
        (0..states).all(|s| {
            let mut q = s;
            for _ in 0..n {
                q = d.run_from(q, &w);
            }
            q == d.run_from(q, &w)
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alphabet::Alphabet;

    fn unary() -> Alphabet {
        Alphabet::parse("(a)").unwrap()
    }

    fn parity() -> Dfa {
        Dfa::from_fn(unary(), 2, 0, &[0], |q, _| 1 - q).unwrap()
    }

    #[test]
    fn parity_has_order_two_element() {
        let m = TransitionMonoid::new(&parity()).unwrap();
        assert_eq!(m.len(), 2);
        let a = m.generator(0);
        assert_ne!(a, m.identity());
        assert_eq!(m.compose(a, a), m.identity());
        assert!(!is_aperiodic(&parity()).unwrap());
        assert!(!definition_check_aperiodic(&parity(), 1));
    }

    #[test]
    fn one_state_monoid_is_trivial() {
        let d = Dfa::from_fn(unary(), 1, 0, &[0], |_, _| 0).unwrap();
        let m = TransitionMonoid::new(&d).unwrap();
        assert_eq!(m.len(), 1);
        assert!(m.is_aperiodic());
        assert!(definition_check_aperiodic(&d, 4));
    }

    #[test]
    fn contains_ab_is_aperiodic() {
        let sigma = Alphabet::parse("(a,b)").unwrap();
        // 0: nothing yet, 1: just read a, 2: seen ab.
        let d = Dfa::from_fn(sigma, 3, 0, &[2], |q, c| match (q, c) {
            (2, _) => 2,
            (_, 0) => 1,
            (1, 1) => 2,
            _ => 0,
        })
        .unwrap();
        assert!(is_aperiodic(&d).unwrap());
        assert!(definition_check_aperiodic(&d, 4));
    }

    #[test]
    fn word_elements_match_simulation() {
        let sigma = Alphabet::parse("(a,b)").unwrap();
        let d = Dfa::from_fn(sigma.clone(), 3, 0, &[1], |q, c| (q + c + 1) % 3).unwrap();
        let m = TransitionMonoid::new(&d).unwrap();
        for w in sigma.words_up_to(6) {
            let e = m.element_of_word(&w);
            for q in 0..3 {
                assert_eq!(m.element(e)[q], d.run_from(q, &w));
            }
        }
    }
}
