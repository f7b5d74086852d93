//! ε-free context-free grammars in Chomsky normal form.
//!
//! Grammars are always normalized on construction: [`CfgBuilder::build`]
//! accepts arbitrary rules (including ε-rules and unit rules), converts them
//! to CNF and drops unproductive and unreachable nonterminals. If the start
//! symbol derives ε, that word is dropped from the language.

mod constructions;
mod cyk;
mod merge;
mod semilinear;
mod text;

pub use constructions::{
    dyck_grammar, exists_merge, exists_merge_complement, pad_language, substitution_language,
    GrammarPair,
};
pub use merge::{merge_exists_formula, MERGE_PAD_CANDIDATES};
pub use semilinear::{length_set, semilinear_fit, LinearSet, LinearSetUnion};
pub use text::parse_grammar;

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::alphabet::{Alphabet, Word};
use crate::error::Error;

/// A right-hand-side symbol as written by a grammar author.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Symbol {
    T(char),
    N(String),
}

impl Symbol {
    pub fn t(c: char) -> Symbol {
        Symbol::T(c)
    }

    pub fn n(name: &str) -> Symbol {
        Symbol::N(name.to_string())
    }
}

/// A grammar in Chomsky normal form: rules `A -> B C` and `A -> a`.
#[derive(Clone, PartialEq, Eq)]
pub struct Grammar {
    terminals: Alphabet,
    nonterminals: Vec<String>,
    start: usize,
    binary: Vec<(usize, usize, usize)>,
    lexical: Vec<(usize, usize)>,
    // CYK indices: by_left[B] = [(C, A)] for A -> B C; by_terminal[a] = [A].
    by_left: Vec<Vec<(usize, usize)>>,
    by_terminal: Vec<Vec<usize>>,
}

impl Grammar {
    pub fn terminals(&self) -> &Alphabet {
        &self.terminals
    }

    pub fn nonterminals(&self) -> &[String] {
        &self.nonterminals
    }

    pub fn start(&self) -> usize {
        self.start
    }

    pub fn start_name(&self) -> &str {
        &self.nonterminals[self.start]
    }

    /// Rules `A -> B C` as nonterminal indices.
    pub fn binary_rules(&self) -> &[(usize, usize, usize)] {
        &self.binary
    }

    /// Rules `A -> a` as (nonterminal, terminal) indices.
    pub fn terminal_rules(&self) -> &[(usize, usize)] {
        &self.lexical
    }

    pub fn rule_count(&self) -> usize {
        self.binary.len() + self.lexical.len()
    }

    /// True when the language is empty.
    pub fn is_empty_language(&self) -> bool {
        self.lexical.is_empty()
    }

    /// CYK membership for `w` over [`Grammar::terminals`].
    pub fn member(&self, w: &Word) -> Result<bool, Error> {
        if w.alphabet() != &self.terminals {
            return Err(Error::AlphabetMismatch {
                expected: format!("{}", self.terminals),
                found: format!("{}", w.alphabet()),
            });
        }
        Ok(self.accepts(w.letters()))
    }

    /// Raw-index CYK; ε is never accepted.
    pub fn accepts(&self, w: &[usize]) -> bool {
        cyk::recognize(self, w)
    }

    fn from_cnf(
        terminals: Alphabet,
        nonterminals: Vec<String>,
        start: usize,
        binary: BTreeSet<(usize, usize, usize)>,
        lexical: BTreeSet<(usize, usize)>,
    ) -> Grammar {
        let mut by_left = vec![Vec::new(); nonterminals.len()];
        for &(a, b, c) in &binary {
            by_left[b].push((c, a));
        }
        let mut by_terminal = vec![Vec::new(); terminals.len()];
        for &(a, t) in &lexical {
            by_terminal[t].push(a);
        }
        Grammar {
            terminals,
            nonterminals,
            start,
            binary: binary.into_iter().collect(),
            lexical: lexical.into_iter().collect(),
            by_left,
            by_terminal,
        }
    }

    /// The grammar with the start symbol renamed and every other
    /// nonterminal prefixed, for embedding into a larger builder.
    pub fn rules_as_symbols(&self, prefix: &str) -> Vec<(String, Vec<Symbol>)> {
        let name = |i: usize| format!("{prefix}{}", self.nonterminals[i]);
        let mut out = Vec::with_capacity(self.rule_count());
        for &(a, b, c) in &self.binary {
            out.push((name(a), vec![Symbol::N(name(b)), Symbol::N(name(c))]));
        }
        for &(a, t) in &self.lexical {
            out.push((name(a), vec![Symbol::T(self.terminals.symbol(t))]));
        }
        out
    }
}

impl fmt::Display for Grammar {
    /// Line-oriented text: `start: S`, then one rule per line.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "terminals: {}", self.terminals)?;
        writeln!(f, "start: {}", self.start_name())?;
        for &(a, b, c) in &self.binary {
            writeln!(f, "{} -> {} {}", self.nonterminals[a], self.nonterminals[b], self.nonterminals[c])?;
        }
        for &(a, t) in &self.lexical {
            writeln!(f, "{} -> '{}'", self.nonterminals[a], self.terminals.symbol(t))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Grammar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Grammar {{ start: {}, {} nonterminals, {} rules over {} }}",
            self.start_name(),
            self.nonterminals.len(),
            self.rule_count(),
            self.terminals
        )
    }
}

/// Collects arbitrary context-free rules and normalizes them to CNF.
#[derive(Debug, Clone)]
pub struct CfgBuilder {
    terminals: Option<Alphabet>,
    start: String,
    rules: Vec<(String, Vec<Symbol>)>,
}

// Largest number of nullable occurrences expanded in a single rule.
const MAX_NULLABLE_PER_RULE: usize = 12;

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Sym {
    T(usize),
    N(usize),
}

impl CfgBuilder {
    pub fn new(start: &str) -> Self {
        CfgBuilder { terminals: None, start: start.to_string(), rules: Vec::new() }
    }

    /// Fixes the terminal alphabet (and its order). Without it, terminals
    /// are ordered by first appearance.
    pub fn terminals(mut self, alphabet: Alphabet) -> Self {
        self.terminals = Some(alphabet);
        self
    }

    pub fn rule(&mut self, lhs: &str, rhs: Vec<Symbol>) -> &mut Self {
        self.rules.push((lhs.to_string(), rhs));
        self
    }

    /// Shorthand: whitespace-separated nonterminal names and quoted
    /// terminals, e.g. `"A 'a' B"`. An empty string is an ε-rule.
    pub fn rule_str(&mut self, lhs: &str, rhs: &str) -> &mut Self {
        let symbols = rhs
            .split_whitespace()
            .map(|tok| {
                let mut chars = tok.chars();
                match (chars.next(), chars.next(), chars.next(), chars.next()) {
                    (Some('\''), Some(c), Some('\''), None) => Symbol::T(c),
                    _ => Symbol::N(tok.to_string()),
                }
            })
            .collect();
        self.rule(lhs, symbols)
    }

    /// Copies every rule of `g` with nonterminals prefixed by `prefix`.
    /// Returns the name of the copied start symbol.
    pub fn import(&mut self, g: &Grammar, prefix: &str) -> String {
        self.rules.extend(g.rules_as_symbols(prefix));
        format!("{prefix}{}", g.start_name())
    }

    pub fn build(&self) -> Result<Grammar, Error> {
        // Index symbols.
        let mut names: Vec<String> = vec![self.start.clone()];
        let mut name_ix: BTreeMap<String, usize> = BTreeMap::new();
        name_ix.insert(self.start.clone(), 0);
        let mut term_order: Vec<char> = Vec::new();
        for (lhs, rhs) in &self.rules {
            for s in core::iter::once(Symbol::N(lhs.clone())).chain(rhs.iter().cloned()) {
                match s {
                    Symbol::N(n) => {
                        if !name_ix.contains_key(&n) {
                            name_ix.insert(n.clone(), names.len());
                            names.push(n);
                        }
                    }
                    Symbol::T(c) => {
                        if !term_order.contains(&c) {
                            term_order.push(c);
                        }
                    }
                }
            }
        }
        let terminals = match &self.terminals {
            Some(a) => {
                if let Some(&c) = term_order.iter().find(|c| !a.contains(**c)) {
                    return Err(Error::UnknownSymbol(c));
                }
                a.clone()
            }
            None => Alphabet::new(term_order)?,
        };
        let mut rules: BTreeSet<(usize, Vec<Sym>)> = BTreeSet::new();
        for (lhs, rhs) in &self.rules {
            let body = rhs
                .iter()
                .map(|s| match s {
                    Symbol::N(n) => Sym::N(name_ix[n]),
                    Symbol::T(c) => Sym::T(terminals.index_of(*c).expect("checked above")),
                })
                .collect();
            rules.insert((name_ix[lhs], body));
        }
        normalize(terminals, names, rules)
    }
}

fn normalize(
    terminals: Alphabet,
    mut names: Vec<String>,
    rules: BTreeSet<(usize, Vec<Sym>)>,
) -> Result<Grammar, Error> {
    let n = names.len();

    // Nullable nonterminals.
    let mut nullable = vec![false; n];
    loop {
        let mut changed = false;
        for (a, rhs) in &rules {
            if !nullable[*a] && rhs.iter().all(|s| matches!(s, Sym::N(b) if nullable[*b])) {
                nullable[*a] = true;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }

    // ε-elimination: every way of dropping nullable occurrences.
    let mut no_eps: BTreeSet<(usize, Vec<Sym>)> = BTreeSet::new();
    for (a, rhs) in &rules {
        let optional: Vec<usize> = (0..rhs.len())
            .filter(|&i| matches!(rhs[i], Sym::N(b) if nullable[b]))
            .collect();
        if optional.len() > MAX_NULLABLE_PER_RULE {
            return Err(Error::TooLarge { what: "nullable occurrences in one rule", limit: MAX_NULLABLE_PER_RULE });
        }
        for mask in 0u32..(1u32 << optional.len()) {
            let body: Vec<Sym> = rhs
                .iter()
                .enumerate()
                .filter(|(i, _)| match optional.iter().position(|o| o == i) {
                    Some(bit) => mask & (1 << bit) == 0,
                    None => true,
                })
                .map(|(_, s)| *s)
                .collect();
            if !body.is_empty() && !(body.len() == 1 && body[0] == Sym::N(*a)) {
                no_eps.insert((*a, body));
            }
        }
    }

    // Unit elimination.
    let mut unit_succ = vec![Vec::new(); n];
    for (a, rhs) in &no_eps {
        if let [Sym::N(b)] = rhs.as_slice() {
            unit_succ[*a].push(*b);
        }
    }
    let mut proper: BTreeSet<(usize, Vec<Sym>)> = BTreeSet::new();
    let mut by_lhs: Vec<Vec<&Vec<Sym>>> = vec![Vec::new(); n];
    for (a, rhs) in &no_eps {
        if !matches!(rhs.as_slice(), [Sym::N(_)]) {
            by_lhs[*a].push(rhs);
        }
    }
    for a in 0..n {
        let mut seen = vec![false; n];
        let mut queue = VecDeque::from([a]);
        seen[a] = true;
        while let Some(b) = queue.pop_front() {
            for rhs in &by_lhs[b] {
                proper.insert((a, (*rhs).clone()));
            }
            for &c in &unit_succ[b] {
                if !seen[c] {
                    seen[c] = true;
                    queue.push_back(c);
                }
            }
        }
    }

    // Productive, then reachable.
    let mut productive = vec![false; n];
    loop {
        let mut changed = false;
        for (a, rhs) in &proper {
            if !productive[*a]
                && rhs.iter().all(|s| match s {
                    Sym::T(_) => true,
                    Sym::N(b) => productive[*b],
                })
            {
                productive[*a] = true;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    let proper: Vec<(usize, Vec<Sym>)> = proper
        .into_iter()
        .filter(|(a, rhs)| productive[*a] && rhs.iter().all(|s| matches!(s, Sym::T(_)) || matches!(s, Sym::N(b) if productive[*b])))
        .collect();
    let mut reachable = vec![false; n];
    reachable[0] = true;
    let mut stack = vec![0usize];
    while let Some(a) = stack.pop() {
        for (lhs, rhs) in &proper {
            if *lhs == a {
                for s in rhs {
                    if let Sym::N(b) = s {
                        if !reachable[*b] {
                            reachable[*b] = true;
                            stack.push(*b);
                        }
                    }
                }
            }
        }
    }
    let proper: Vec<(usize, Vec<Sym>)> = proper.into_iter().filter(|(a, _)| reachable[*a]).collect();

    // Renumber surviving nonterminals, start first.
    let mut keep: Vec<usize> = vec![0];
    keep.extend((1..n).filter(|&a| reachable[a] && productive[a]));
    let mut remap = vec![usize::MAX; n];
    for (new, &old) in keep.iter().enumerate() {
        remap[old] = new;
    }
    let mut out_names: Vec<String> = keep.iter().map(|&i| core::mem::take(&mut names[i])).collect();
    let mut taken: BTreeSet<String> = out_names.iter().cloned().collect();
    let mut fresh = |base: String, out_names: &mut Vec<String>| -> usize {
        let mut candidate = base.clone();
        let mut k = 1;
        while taken.contains(&candidate) {
            candidate = format!("{base}{k}");
            k += 1;
        }
        taken.insert(candidate.clone());
        out_names.push(candidate);
        out_names.len() - 1
    };

    let mut binary: BTreeSet<(usize, usize, usize)> = BTreeSet::new();
    let mut lexical: BTreeSet<(usize, usize)> = BTreeSet::new();
    let mut term_nt: BTreeMap<usize, usize> = BTreeMap::new();
    let mut tail_nt: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
    for (a, rhs) in proper {
        let a = remap[a];
        if let [Sym::T(t)] = rhs.as_slice() {
            lexical.insert((a, *t));
            continue;
        }
        let mut body: Vec<usize> = Vec::with_capacity(rhs.len());
        for s in rhs {
            body.push(match s {
                Sym::N(b) => remap[b],
                Sym::T(t) => *term_nt.entry(t).or_insert_with(|| {
                    let ix = fresh(format!("T_{}", terminals.symbol(t)), &mut out_names);
                    lexical.insert((ix, t));
                    ix
                }),
            });
        }
        // A -> X1 X2 ... Xk  ==>  A -> X1 [X2..Xk], shared tails.
        let mut lhs = a;
        let mut rest = body.as_slice();
        while rest.len() > 2 {
            let tail = rest[1..].to_vec();
            let next = match tail_nt.get(&tail) {
                Some(&ix) => {
                    binary.insert((lhs, rest[0], ix));
                    lhs = usize::MAX;
                    ix
                }
                None => {
                    let ix = fresh(format!("{}_", out_names[a]), &mut out_names);
                    tail_nt.insert(tail, ix);
                    binary.insert((lhs, rest[0], ix));
                    lhs = ix;
                    ix
                }
            };
            if lhs == usize::MAX {
                let _ = next;
                break;
            }
            rest = &rest[1..];
        }
        if lhs != usize::MAX {
            binary.insert((lhs, rest[0], rest[1]));
        }
    }
    Ok(Grammar::from_cnf(terminals, out_names, 0, binary, lexical))
}
