//! Line-oriented grammar text, the format written by `Display for Grammar`.
//!
//! ```text
//! # comment
//! terminals: (a,b)
//! start: S
//! S -> A B | 'a' | ε
//! ```
//!
//! Lines starting with `#` and holding no `->` are comments.
//! `terminals:` and `start:` are optional; the start symbol defaults to the
//! first left-hand side. An empty alternative or `ε` is an ε-rule.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use super::{CfgBuilder, Grammar, Symbol};
use crate::alphabet::Alphabet;
use crate::error::Error;

fn symbol(tok: &str) -> Symbol {
    let mut chars = tok.chars();
    match (chars.next(), chars.next(), chars.next(), chars.next()) {
        (Some('\''), Some(c), Some('\''), None) => Symbol::T(c),
        _ => Symbol::N(tok.to_string()),
    }
}

pub fn parse_grammar(text: &str) -> Result<Grammar, Error> {
    let mut terminals = None;
    let mut start: Option<String> = None;
    let mut rules: Vec<(String, Vec<Symbol>)> = Vec::new();
    for (no, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || (line.starts_with('#') && !line.contains("->")) {
            continue;
        }
        let bad = |what: &str| Error::Malformed(format!("line {}: {what}", no + 1));
        if let Some(rest) = line.strip_prefix("terminals:") {
            terminals = Some(Alphabet::parse(rest.trim())?);
        } else if let Some(rest) = line.strip_prefix("start:") {
            let name = rest.trim();
            if name.is_empty() || name.contains(char::is_whitespace) {
                return Err(bad("expected one start symbol"));
            }
            start = Some(name.to_string());
        } else {
            let (lhs, rhs) = line.split_once("->").ok_or_else(|| bad("expected `A -> ...`"))?;
            let lhs = lhs.trim();
            if lhs.is_empty() || lhs.contains(char::is_whitespace) || lhs.starts_with('\'') {
                return Err(bad("left-hand side must be one nonterminal"));
            }
            for alt in rhs.split('|') {
                let body =
                    alt.split_whitespace().filter(|t| *t != "ε" && *t != "eps").map(symbol).collect();
                rules.push((lhs.to_string(), body));
            }
        }
    }
    let start = start
        .or_else(|| rules.first().map(|(l, _)| l.clone()))
        .ok_or_else(|| Error::Malformed("grammar has no rules".to_string()))?;
    let mut b = CfgBuilder::new(&start);
    if let Some(t) = terminals {
        b = b.terminals(t);
    }
    for (lhs, rhs) in rules {
        b.rule(&lhs, rhs);
    }
    b.build()
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    #[test]
    fn alternatives_and_epsilon() {
        let g = parse_grammar("# balanced\nS -> '(' S ')' S | ε\n").unwrap();
        let a = g.terminals().clone();
        let w = |s: &str| crate::alphabet::Word::parse(s, &a).unwrap();
        assert!(g.member(&w("(())()")).unwrap());
        assert!(!g.member(&w("(()")).unwrap());
    }

    #[test]
    fn display_round_trips() {
        let g = parse_grammar("terminals: (a,b)\nstart: S\nS -> 'a' S 'b' | 'a' 'b'").unwrap();
        let back = parse_grammar(&g.to_string()).unwrap();
        assert_eq!(back, g);
    }

    #[test]
    fn malformed_lines() {
        assert!(matches!(parse_grammar("S 'a'"), Err(Error::Malformed(_))));
        assert!(matches!(parse_grammar(""), Err(Error::Malformed(_))));
        assert!(matches!(parse_grammar("terminals: (a)\nS -> 'b'"), Err(Error::UnknownSymbol('b'))));
    }
}
