//! Brute-force reference procedures. Each one recomputes a quantity that the
//! rest of the crate obtains by a faster or more structured route, and is
//! used only to cross-check it.

use alloc::boxed::Box;
use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use crate::grammar::{Grammar, GrammarPair};
use crate::groupoid::Groupoid;
use crate::transducer::Vocabulary;

/// A full bracketing of a product of `len` leaves.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Bracketing {
    Leaf(usize),
    Node(Box<Bracketing>, Box<Bracketing>),
}

impl Bracketing {
    pub fn eval(&self, g: &Groupoid, w: &[usize]) -> usize {
        match self {
            Bracketing::Leaf(i) => w[*i],
            Bracketing::Node(l, r) => g.mul(l.eval(g, w), r.eval(g, w)),
        }
    }
}

/// Every bracketing of leaves `from..to`; there are Catalan(to - from - 1).
pub fn bracketings(from: usize, to: usize) -> Vec<Bracketing> {
    if to - from == 1 {
        return vec![Bracketing::Leaf(from)];
    }
    let mut out = Vec::new();
    for mid in from + 1..to {
        let left = bracketings(from, mid);
        let right = bracketings(mid, to);
        for l in &left {
            for r in &right {
                out.push(Bracketing::Node(Box::new(l.clone()), Box::new(r.clone())));
            }
        }
    }
    out
}

/// Values of `w` under every bracketing, each evaluated separately.
pub fn bracketing_products(g: &Groupoid, w: &[usize]) -> BTreeSet<usize> {
    if w.is_empty() {
        return BTreeSet::new();
    }
    bracketings(0, w.len()).iter().map(|b| b.eval(g, w)).collect()
}

/// Searches leftmost derivations of `w` from the start symbol.
pub fn derivable(g: &Grammar, w: &[usize]) -> bool {
    fn go(g: &Grammar, w: &[usize], pos: usize, pending: &mut Vec<usize>) -> bool {
        let Some(a) = pending.pop() else {
            return pos == w.len();
        };
        let mut found = false;
        if pos < w.len() && g.terminal_rules().contains(&(a, w[pos])) {
            found = go(g, w, pos + 1, pending);
        }
        // Every pending nonterminal yields at least one letter.
        if !found && pending.len() + 2 <= w.len() - pos.min(w.len()) {
            for &(lhs, b, c) in g.binary_rules() {
                if lhs == a {
                    pending.push(c);
                    pending.push(b);
                    found = go(g, w, pos, pending);
                    pending.pop();
                    pending.pop();
                    if found {
                        break;
                    }
                }
            }
        }
        pending.push(a);
        found
    }
    !w.is_empty() && go(g, w, 0, &mut vec![g.start()])
}

/// Dyck membership over `(o1, c1, o2, c2, ...)` by erasing adjacent matched
/// pairs until none remain.
pub fn dyck_by_erasure(w: &[usize]) -> bool {
    if w.is_empty() {
        return false;
    }
    let mut cur = w.to_vec();
    loop {
        let at = cur.windows(2).position(|p| p[0] % 2 == 0 && p[1] == p[0] + 1);
        match at {
            Some(i) => {
                cur.drain(i..i + 2);
            }
            None => return cur.is_empty(),
        }
    }
}

/// Splits `w` on `pad` and asks whether some non-empty block is in `l1`.
pub fn merge_by_splitting(w: &[char], pad: char, l1: impl Fn(&[char]) -> bool) -> bool {
    w.split(|&c| c == pad).any(|block| !block.is_empty() && l1(block))
}

/// Erases every `pad` and asks `l` about the rest.
pub fn pad_erased(w: &[char], pad: char, l: impl Fn(&[char]) -> bool) -> bool {
    let rest: Vec<char> = w.iter().copied().filter(|&c| c != pad).collect();
    !rest.is_empty() && l(&rest)
}

enum Piece<'a> {
    In(&'a Grammar),
    Pad,
    PadStar,
    AnyStar,
}

fn grammar_holds(g: &Grammar, w: &[char]) -> bool {
    let letters: Option<Vec<usize>> = w.iter().map(|&c| g.terminals().index_of(c)).collect();
    letters.is_some_and(|l| !l.is_empty() && g.accepts(&l))
}

fn matches(pattern: &[Piece], w: &[char]) -> bool {
    let Some((first, rest)) = pattern.split_first() else {
        return w.is_empty();
    };
    match first {
        Piece::Pad => w.first() == Some(&'\u{0}') && matches(rest, &w[1..]),
        Piece::PadStar => (0..=w.len())
            .take_while(|&i| w[..i].iter().all(|&c| c == '\u{0}'))
            .any(|i| matches(rest, &w[i..])),
        Piece::AnyStar => (0..=w.len()).any(|i| matches(rest, &w[i..])),
        Piece::In(g) => (1..=w.len()).any(|i| grammar_holds(g, &w[..i]) && matches(rest, &w[i..])),
    }
}

/// Membership in `h(L(outer))` for the substitution of
/// `grammar::substitution_language`, by cutting `w` before each `sep`,
/// matching every piece against the image pattern of each outer letter, and
/// asking `outer` about the resulting letter sequence.
pub fn substitution_by_blocks(w: &[char], outer: &Grammar, parts: &[GrammarPair], pad: char, sep: char) -> bool {
    let s = outer.terminals().len();
    // Pads become NUL so that pattern pieces need not carry the pad symbol.
    let w: Vec<char> = w.iter().map(|&c| if c == pad { '\u{0}' } else { c }).collect();
    let patterns: Vec<Vec<Piece>> = (0..s)
        .map(|i| {
            let mut p = Vec::new();
            for part in &parts[..i] {
                p.push(Piece::In(&part.complement));
                p.push(Piece::PadStar);
            }
            if i + 1 < s {
                p.push(Piece::In(&parts[i].grammar));
                p.push(Piece::Pad);
                p.push(Piece::AnyStar);
            }
            p
        })
        .collect();
    fn go(w: &[char], sep: char, patterns: &[Vec<Piece>], outer: &Grammar, word: &mut Vec<usize>) -> bool {
        if w.is_empty() {
            return !word.is_empty() && outer.accepts(word);
        }
        if w[0] != sep {
            return false;
        }
        let cuts = (1..=w.len()).filter(|&j| j == w.len() || w[j] == sep);
        for j in cuts {
            for (letter, p) in patterns.iter().enumerate() {
                if matches(p, &w[1..j]) {
                    word.push(letter);
                    let ok = go(&w[j..], sep, patterns, outer, word);
                    word.pop();
                    if ok {
                        return true;
                    }
                }
            }
        }
        false
    }
    go(&w, sep, &patterns, outer, &mut Vec::new())
}

/// Duplicator wins the `k`-round Ehrenfeucht–Fraïssé game on `u` and `v` in
/// the signature of order and letters, plus the constants `min` and `max`
/// under [`Vocabulary::WithEndpoints`].
pub fn ef_equivalent(u: &[usize], v: &[usize], k: usize, vocab: Vocabulary) -> bool {
    if u.is_empty() || v.is_empty() {
        return u.is_empty() && v.is_empty();
    }
    let mut pu = Vec::new();
    let mut pv = Vec::new();
    if vocab == Vocabulary::WithEndpoints {
        pu.extend([0, u.len() - 1]);
        pv.extend([0, v.len() - 1]);
    }
    game(u, v, &mut pu, &mut pv, k)
}

fn partial_iso(u: &[usize], v: &[usize], pu: &[usize], pv: &[usize]) -> bool {
    pu.iter().zip(pv).enumerate().all(|(i, (&a, &b))| {
        u[a] == v[b] && pu[..i].iter().zip(&pv[..i]).all(|(&c, &d)| a.cmp(&c) == b.cmp(&d))
    })
}

fn game(u: &[usize], v: &[usize], pu: &mut Vec<usize>, pv: &mut Vec<usize>, k: usize) -> bool {
    if !partial_iso(u, v, pu, pv) {
        return false;
    }
    if k == 0 {
        return true;
    }
    // Spoiler moves in `u`, then in `v`; Duplicator needs an answer to each.
    for side in 0..2 {
        let (spoil, dup) = if side == 0 { (u.len(), v.len()) } else { (v.len(), u.len()) };
        for i in 0..spoil {
            let answered = (0..dup).any(|j| {
                let (a, b) = if side == 0 { (i, j) } else { (j, i) };
                pu.push(a);
                pv.push(b);
                let win = game(u, v, pu, pv, k - 1);
                pu.pop();
                pv.pop();
                win
            });
            if !answered {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalan_counts() {
        let counts: Vec<usize> = (1..=6).map(|n| bracketings(0, n).len()).collect();
        assert_eq!(counts, [1, 1, 2, 5, 14, 42]);
    }

    #[test]
    fn erasure_dyck() {
        assert!(dyck_by_erasure(&[0, 2, 3, 1]));
        assert!(!dyck_by_erasure(&[0, 3]));
        assert!(!dyck_by_erasure(&[]));
    }

    #[test]
    fn derivations_of_anbn() {
        let g = crate::grammar::parse_grammar("S -> 'a' S 'b' | 'a' 'b'").unwrap();
        assert!(derivable(&g, &[0, 0, 1, 1]));
        assert!(!derivable(&g, &[0, 1, 0, 1]));
        assert!(!derivable(&g, &[]));
    }

    #[test]
    fn ef_small_cases() {
        let with = Vocabulary::WithEndpoints;
        assert!(!ef_equivalent(&[0, 1], &[1, 0], 1, with));
        assert!(ef_equivalent(&[0, 1], &[1, 0], 1, Vocabulary::OrderOnly));
        assert!(!ef_equivalent(&[0], &[0, 0], 0, with));
        assert!(ef_equivalent(&[0], &[0, 0], 0, Vocabulary::OrderOnly));
        assert!(ef_equivalent(&[0; 4], &[0; 5], 2, Vocabulary::OrderOnly));
        assert!(!ef_equivalent(&[0; 2], &[0; 3], 1, with));
    }

    #[test]
    fn splitting_and_erasing() {
        let is_a = |w: &[char]| w == ['a'];
        assert!(merge_by_splitting(&['b', '#', 'a', '#'], '#', is_a));
        assert!(!merge_by_splitting(&['b', '#'], '#', is_a));
        assert!(pad_erased(&['#', 'a', '#'], '#', is_a));
    }
}
