//! `(l, m)`-bounded bit strings: members of `u_1* ⋯ u_l*` with every
//! `|u_i| ≤ m`.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::Error;

/// Parses a string of `0` and `1` characters.
pub fn bits(text: &str) -> Result<Vec<bool>, Error> {
    text.chars()
        .map(|c| match c {
            '0' => Ok(false),
            '1' => Ok(true),
            _ => Err(Error::Malformed(format!("`{c}` is not a bit"))),
        })
        .collect()
}

pub fn render_bits(w: &[bool]) -> String {
    w.iter().map(|&b| if b { '1' } else { '0' }).collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Factorization {
    /// `(unit, repetitions)`, in order.
    pub blocks: Vec<(Vec<bool>, usize)>,
    pub l: usize,
    pub m: usize,
}

impl Factorization {
    pub fn expand(&self) -> Vec<bool> {
        let mut out = Vec::new();
        for (unit, count) in &self.blocks {
            for _ in 0..*count {
                out.extend_from_slice(unit);
            }
        }
        out
    }
}

impl fmt::Display for Factorization {
    /// Blocks as `(unit)^count`, e.g. `(0)^2 (1)^2 (0)^1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> =
            self.blocks.iter().map(|(u, c)| format!("({})^{}", render_bits(u), c)).collect();
        if parts.is_empty() {
            write!(f, "ε")
        } else {
            write!(f, "{}", parts.join(" "))
        }
    }
}

/// Fewest blocks `u^r` (`1 ≤ |u| ≤ m`, `r ≥ 1`) that concatenate to `w`,
/// with the factorization attaining it. Empty `w` takes no blocks.
pub fn min_blocks(w: &[bool], m: usize) -> Option<(usize, Vec<(Vec<bool>, usize)>)> {
    let n = w.len();
    if m == 0 {
        return if n == 0 { Some((0, Vec::new())) } else { None };
    }
    // best[i]: fewest blocks covering w[..i]; back[i]: (start, unit length).
    let mut best = vec![usize::MAX; n + 1];
    let mut back = vec![(0, 0); n + 1];
    best[0] = 0;
    for i in 1..=n {
        for p in 1..=m.min(i) {
            // Extend a period-p block ending at i leftwards one unit at a time.
            let mut j = i - p;
            loop {
                if best[j] != usize::MAX && best[j] + 1 < best[i] {
                    best[i] = best[j] + 1;
                    back[i] = (j, p);
                }
                if j < p || w[j - p..j] != w[j..j + p] {
                    break;
                }
                j -= p;
            }
        }
    }
    let mut blocks = Vec::new();
    let mut i = n;
    while i > 0 {
        let (j, p) = back[i];
        blocks.push((w[j..j + p].to_vec(), (i - j) / p));
        i = j;
    }
    blocks.reverse();
    Some((best[n], blocks))
}

/// A factorization witnessing that `w` is `(l, m)`-bounded, if there is one.
pub fn lm_bounded(w: &[bool], l: usize, m: usize) -> Option<Factorization> {
    let (count, blocks) = min_blocks(w, m)?;
    (count <= l).then_some(Factorization { blocks, l, m })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BitOp {
    Not,
    And,
    Or,
}

/// Pointwise `op`. `Not` reads only `u`.
pub fn bitwise(op: BitOp, u: &[bool], w: &[bool]) -> Result<Vec<bool>, Error> {
    if op == BitOp::Not {
        return Ok(u.iter().map(|&b| !b).collect());
    }
    if u.len() != w.len() {
        return Err(Error::LengthMismatch { left: u.len(), right: w.len() });
    }
    Ok(u.iter()
        .zip(w)
        .map(|(&a, &b)| if op == BitOp::And { a && b } else { a || b })
        .collect())
}

/// Given `u` `(l, m)`-bounded and `w` `(l2, m2)`-bounded, checks that their
/// pointwise `and` and `or` are `(5(l + l2), m·m2)`-bounded.
pub fn check_lemma_lm(u: &[bool], l: usize, m: usize, w: &[bool], l2: usize, m2: usize) -> Result<bool, Error> {
    if lm_bounded(u, l, m).is_none() {
        return Err(Error::NotBounded { l, m });
    }
    if lm_bounded(w, l2, m2).is_none() {
        return Err(Error::NotBounded { l: l2, m: m2 });
    }
    let (bl, bm) = (5 * (l + l2), m * m2);
    for op in [BitOp::And, BitOp::Or] {
        if lm_bounded(&bitwise(op, u, w)?, bl, bm).is_none() {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn show(w: &str, l: usize, m: usize) -> Option<String> {
        lm_bounded(&bits(w).unwrap(), l, m).map(|f| alloc::string::ToString::to_string(&f))
    }

    #[test]
    fn examples() {
        assert_eq!(show("000111", 2, 1).as_deref(), Some("(0)^3 (1)^3"));
        assert_eq!(show("010101", 1, 2).as_deref(), Some("(01)^3"));
        assert_eq!(show("00110", 3, 1).as_deref(), Some("(0)^2 (1)^2 (0)^1"));
        assert_eq!(show("00110", 2, 1), None);
        assert_eq!(show("", 0, 1).as_deref(), Some("ε"));
    }

    #[test]
    fn factorization_expands_back() {
        let w = bits("0110110111").unwrap();
        let f = lm_bounded(&w, 4, 3).unwrap();
        assert_eq!(f.expand(), w);
        assert!(f.blocks.iter().all(|(u, _)| u.len() <= 3));
    }

    #[test]
    fn bitwise_ops() {
        let u = bits("110").unwrap();
        let w = bits("011").unwrap();
        assert_eq!(render_bits(&bitwise(BitOp::Not, &bits("010").unwrap(), &[]).unwrap()), "101");
        assert_eq!(render_bits(&bitwise(BitOp::And, &u, &w).unwrap()), "010");
        let not_u = bitwise(BitOp::Not, &u, &[]).unwrap();
        assert!(bitwise(BitOp::Or, &u, &not_u).unwrap().iter().all(|&b| b));
        assert_eq!(bitwise(BitOp::And, &u, &[true]), Err(Error::LengthMismatch { left: 3, right: 1 }));
    }

    #[test]
    fn lemma_example() {
        let u = bits("000000").unwrap();
        let w = bits("010101").unwrap();
        assert_eq!(check_lemma_lm(&u, 1, 1, &w, 1, 2), Ok(true));
        assert_eq!(check_lemma_lm(&w, 1, 1, &u, 1, 1), Err(Error::NotBounded { l: 1, m: 1 }));
    }
}
