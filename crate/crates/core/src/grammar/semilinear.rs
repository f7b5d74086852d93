use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use fixedbitset::FixedBitSet;

use super::Grammar;
use crate::error::Error;

/// `{ base + Σ c_i p_i : c_i ≥ 0 }`; no periods means the singleton `{base}`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct LinearSet {
    pub base: usize,
    pub periods: Vec<usize>,
}

impl LinearSet {
    pub fn contains(&self, n: usize) -> bool {
        if n < self.base {
            return false;
        }
        let mut reachable = vec![false; n - self.base + 1];
        reachable[0] = true;
        for i in 0..reachable.len() {
            if reachable[i] {
                for &p in self.periods.iter().filter(|&&p| p > 0) {
                    if i + p < reachable.len() {
                        reachable[i + p] = true;
                    }
                }
            }
        }
        reachable[n - self.base]
    }
}

impl fmt::Display for LinearSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.base)?;
        for p in &self.periods {
            write!(f, "+{p}N")?;
        }
        Ok(())
    }
}

/// A finite union of linear sets.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct LinearSetUnion {
    pub components: Vec<LinearSet>,
}

impl LinearSetUnion {
    pub fn contains(&self, n: usize) -> bool {
        self.components.iter().any(|c| c.contains(n))
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }
}

impl fmt::Display for LinearSetUnion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.components.is_empty() {
            return f.write_str("{}");
        }
        for (i, c) in self.components.iter().enumerate() {
            if i > 0 {
                f.write_str(" | ")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

/// `{ n ≤ max : 0^n ∈ L(g) }` for a grammar over a one-letter alphabet.
pub fn length_set(g: &Grammar, max: usize) -> Result<BTreeSet<usize>, Error> {
    if g.terminals().len() != 1 {
        return Err(Error::NonUnaryGrammar(g.terminals().len()));
    }
    // derives[len] = nonterminals deriving the unary word of that length;
    // every factor of a unary word of a given length is the same word.
    let width = g.nonterminals().len();
    let mut derives: Vec<FixedBitSet> = vec![FixedBitSet::with_capacity(width); max + 1];
    for &(a, _) in g.terminal_rules() {
        if max >= 1 {
            derives[1].insert(a);
        }
    }
    for len in 2..=max {
        let mut cell = FixedBitSet::with_capacity(width);
        for split in 1..len {
            for &(a, b, c) in g.binary_rules() {
                if derives[split].contains(b) && derives[len - split].contains(c) {
                    cell.insert(a);
                }
            }
        }
        derives[len] = cell;
    }
    Ok((1..=max).filter(|&n| derives[n].contains(g.start())).collect())
}

/// Most components a fit may use.
pub const MAX_FIT_COMPONENTS: usize = 8;

/// Searches for a union of at most [`MAX_FIT_COMPONENTS`] progressions that
/// agrees with `s` on `[0, max]`, with bases at most `max / 2` and a single
/// period `p ≤ max / 4` shared by all infinite components. Every member
/// above `max / 2` must lie on an infinite component. Among fits the one
/// with fewest components wins, ties going to the smaller period.
pub fn semilinear_fit(s: &BTreeSet<usize>, max: usize) -> Option<LinearSetUnion> {
    let within = |n: usize| n <= max && s.contains(&n);
    let half = max / 2;
    let mut best: Option<LinearSetUnion> = None;
    let mut consider = |candidate: LinearSetUnion| {
        if candidate.components.len() <= MAX_FIT_COMPONENTS
            && best.as_ref().map_or(true, |b| candidate.components.len() < b.components.len())
        {
            best = Some(candidate);
        }
    };

    // Finite sets living in the lower half.
    if s.iter().all(|&n| n <= half) {
        consider(LinearSetUnion {
            components: s.iter().map(|&n| LinearSet { base: n, periods: Vec::new() }).collect(),
        });
    }

    'period: for p in 1..=max / 4 {
        let mut components = Vec::new();
        for r in 0..p {
            let top = r + (max - r) / p * p;
            let mut base = None;
            let mut n = top;
            while within(n) {
                base = Some(n);
                if n < p {
                    break;
                }
                n -= p;
            }
            let tail_start = match base {
                Some(b) if b <= half => {
                    components.push(LinearSet { base: b, periods: vec![p] });
                    b
                }
                _ => max + 1,
            };
            for m in (r..tail_start).step_by(p).filter(|&m| within(m)) {
                if m > half {
                    continue 'period;
                }
                components.push(LinearSet { base: m, periods: Vec::new() });
            }
        }
        components.sort();
        consider(LinearSetUnion { components });
    }
    best
}
