use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use super::{CfgBuilder, Grammar, Symbol};
use crate::alphabet::Alphabet;
use crate::error::Error;
use crate::language::{dyck_pair, MAX_DYCK_TYPES};

/// A context-free language together with a grammar for its complement in Σ⁺.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrammarPair {
    pub grammar: Grammar,
    pub complement: Grammar,
}

/// The ε-free one-sided Dyck language with `t` bracket types, over
/// [`crate::language::dyck_alphabet`].
pub fn dyck_grammar(t: usize) -> Result<Grammar, Error> {
    if t == 0 || t > MAX_DYCK_TYPES {
        return Err(Error::TooLarge { what: "Dyck bracket types (1 and up)", limit: MAX_DYCK_TYPES });
    }
    let mut b = CfgBuilder::new("S").terminals(crate::language::dyck_alphabet(t));
    b.rule_str("S", "S S");
    for i in 0..t {
        let (o, c) = dyck_pair(i);
        b.rule("S", alloc::vec![Symbol::T(o), Symbol::T(c)]);
        b.rule("S", alloc::vec![Symbol::T(o), Symbol::n("S"), Symbol::T(c)]);
    }
    b.build()
}

fn merge_alphabet(inner: &Alphabet, pad: char) -> Result<Alphabet, Error> {
    if inner.contains(pad) {
        return Err(Error::SymbolClash(pad));
    }
    Alphabet::new(core::iter::once(pad).chain(inner.symbols().iter().copied()))
}

fn any_word(b: &mut CfgBuilder, name: &str, alphabet: &Alphabet) {
    for &c in alphabet.symbols() {
        b.rule(name, alloc::vec![Symbol::T(c)]);
        b.rule(name, alloc::vec![Symbol::T(c), Symbol::n(name)]);
    }
}

/// Words over `(pad, a_1, ..., a_k)` in which some maximal pad-free factor
/// lies in `L(g1)`. Pads may lead, trail, or be missing at either end.
pub fn exists_merge(g1: &Grammar, pad: char) -> Result<Grammar, Error> {
    let sigma = merge_alphabet(g1.terminals(), pad)?;
    let mut b = CfgBuilder::new("M").terminals(sigma.clone());
    let l = b.import(g1, "L.");
    for rhs in [
        alloc::vec![Symbol::N(l.clone())],
        alloc::vec![Symbol::n("P"), Symbol::N(l.clone())],
        alloc::vec![Symbol::N(l.clone()), Symbol::n("F")],
        alloc::vec![Symbol::n("P"), Symbol::N(l.clone()), Symbol::n("F")],
    ] {
        b.rule("M", rhs);
    }
    b.rule("P", alloc::vec![Symbol::T(pad)]);
    b.rule("P", alloc::vec![Symbol::n("U"), Symbol::T(pad)]);
    b.rule("F", alloc::vec![Symbol::T(pad)]);
    b.rule("F", alloc::vec![Symbol::T(pad), Symbol::n("U")]);
    any_word(&mut b, "U", &sigma);
    b.build()
}

/// Complement of [`exists_merge`] in Σ⁺: every maximal pad-free factor lies
/// in `L(co_g1)`, which must be the complement of the merged language.
pub fn exists_merge_complement(co_g1: &Grammar, pad: char) -> Result<Grammar, Error> {
    let sigma = merge_alphabet(co_g1.terminals(), pad)?;
    let mut b = CfgBuilder::new("Z").terminals(sigma);
    let r = b.import(co_g1, "R.");
    b.rule_str("Z", "T").rule_str("Z", "Y").rule_str("Z", "T Y");
    b.rule("Y", alloc::vec![Symbol::N(r.clone())]);
    b.rule("Y", alloc::vec![Symbol::N(r.clone()), Symbol::n("T")]);
    b.rule("Y", alloc::vec![Symbol::N(r), Symbol::n("T"), Symbol::n("Y")]);
    b.rule("T", alloc::vec![Symbol::T(pad)]);
    b.rule("T", alloc::vec![Symbol::T(pad), Symbol::n("T")]);
    b.build()
}

/// Inserts arbitrarily many `pad` symbols anywhere into words of `L(g)`.
/// The result is over `g`'s terminals with `pad` appended.
pub fn pad_language(g: &Grammar, pad: char) -> Result<Grammar, Error> {
    let sigma = g.terminals().with_symbol(pad).map_err(|_| Error::SymbolClash(pad))?;
    let mut b = CfgBuilder::new("S'").terminals(sigma);
    let name = |i: usize| format!("^{}", g.nonterminals()[i]);
    for &(a, l, r) in g.binary_rules() {
        b.rule(&name(a), alloc::vec![Symbol::N(name(l)), Symbol::N(name(r))]);
        b.rule(&name(a), alloc::vec![Symbol::N(name(l)), Symbol::n("#"), Symbol::N(name(r))]);
    }
    for &(a, t) in g.terminal_rules() {
        b.rule(&name(a), alloc::vec![Symbol::T(g.terminals().symbol(t))]);
    }
    let s = name(g.start());
    b.rule("S'", alloc::vec![Symbol::N(s.clone())]);
    b.rule("S'", alloc::vec![Symbol::n("#"), Symbol::N(s.clone())]);
    b.rule("S'", alloc::vec![Symbol::N(s.clone()), Symbol::n("#")]);
    b.rule("S'", alloc::vec![Symbol::n("#"), Symbol::N(s), Symbol::n("#")]);
    b.rule("#", alloc::vec![Symbol::T(pad)]);
    b.rule("#", alloc::vec![Symbol::T(pad), Symbol::n("#")]);
    b.build()
}

/// `h(L(outer))` for the substitution
///
/// ```text
/// h(a_i) = $ co(L_1) #* ... #* co(L_{i-1}) #* L_i # B*     (i < s)
/// h(a_s) = $ co(L_1) #* ... #* co(L_{s-1}) #*
/// ```
///
/// where `outer` is over `(a_1, ..., a_s)`, `parts` holds the `s - 1` pairs
/// `(L_i, co(L_i))` over one shared inner alphabet, and `B` is the whole
/// output alphabet: outer letters, remaining inner letters, `pad`, `sep`.
pub fn substitution_language(
    outer: &Grammar,
    parts: &[GrammarPair],
    pad: char,
    sep: char,
) -> Result<Grammar, Error> {
    let s = outer.terminals().len();
    if parts.len() + 1 != s {
        return Err(Error::Malformed(format!(
            "substitution over {s} outer letters needs {} part languages, got {}",
            s - 1,
            parts.len()
        )));
    }
    let inner = match parts.first() {
        Some(p) => p.grammar.terminals().clone(),
        None => outer.terminals().clone(),
    };
    for p in parts {
        for g in [&p.grammar, &p.complement] {
            if g.terminals() != &inner {
                return Err(Error::AlphabetMismatch {
                    expected: format!("{inner}"),
                    found: format!("{}", g.terminals()),
                });
            }
        }
    }
    let mut symbols: Vec<char> = outer.terminals().symbols().to_vec();
    symbols.extend(inner.symbols().iter().filter(|c| !outer.terminals().contains(**c)));
    for c in [pad, sep] {
        if symbols.contains(&c) {
            return Err(Error::SymbolClash(c));
        }
        symbols.push(c);
    }
    if pad == sep {
        return Err(Error::SymbolClash(pad));
    }
    let sigma = Alphabet::new(symbols)?;

    let mut b = CfgBuilder::new("S'").terminals(sigma.clone());
    let images: Vec<String> = (0..s).map(|i| format!("H{}", i + 1)).collect();
    // Outer rules with each terminal `a_i` replaced by the image nonterminal `H_i`.
    for (lhs, rhs) in outer.rules_as_symbols("O.") {
        let rhs = rhs
            .into_iter()
            .map(|sym| match sym {
                Symbol::T(c) => Symbol::N(images[outer.terminals().index_of(c).expect("outer letter")].clone()),
                n => n,
            })
            .collect();
        b.rule(&lhs, rhs);
    }
    b.rule("S'", alloc::vec![Symbol::N(format!("O.{}", outer.start_name()))]);
    // Pad runs and B* are nullable helpers; normalization removes the ε-rules.
    b.rule_str("#*", "");
    b.rule("#*", alloc::vec![Symbol::T(pad), Symbol::n("#*")]);
    b.rule_str("B*", "");
    for &c in sigma.symbols() {
        b.rule("B*", alloc::vec![Symbol::T(c), Symbol::n("B*")]);
    }
    let mut yes = Vec::with_capacity(parts.len());
    let mut no = Vec::with_capacity(parts.len());
    for (i, p) in parts.iter().enumerate() {
        yes.push(b.import(&p.grammar, &format!("L{}.", i + 1)));
        no.push(b.import(&p.complement, &format!("C{}.", i + 1)));
    }
    for (i, image) in images.iter().enumerate() {
        let mut rhs = alloc::vec![Symbol::T(sep)];
        for co in &no[..i] {
            rhs.push(Symbol::N(co.clone()));
            rhs.push(Symbol::n("#*"));
        }
        if i + 1 < s {
            rhs.push(Symbol::N(yes[i].clone()));
            rhs.push(Symbol::T(pad));
            rhs.push(Symbol::n("B*"));
        }
        b.rule(image, rhs);
    }
    b.build()
}
