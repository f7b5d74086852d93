//! FO-translations to letter-to-letter transducers.
//!
//! States are pairs of rank-k types: the type of the prefix already read and
//! a guessed type of the remaining suffix. Reading `σ` moves from `(Φ₁, Φ₂)`
//! to `(Φ₁·σ, Φ₂')` whenever `Φ₂ = σ·Φ₂'`; the output letter is the one the
//! bodies select at the position of `σ` in `u σ v`, where `u` and `v` are the
//! stored representatives of `Φ₁` and `Φ₂'`. A run accepts when the suffix
//! guess has shrunk to the type of the empty word. The trimmed machine is
//! then reduced by bisimulation.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use super::nft::Nft;
use super::types::{build_type_monoid_with, TypeMonoid, Vocabulary, DEFAULT_TYPE_BUDGET, MAX_RANK};
use crate::alphabet::Alphabet;
use crate::error::Error;
use crate::formula::Formula;
use crate::semantics::{CompiledTransform, TransformSpec};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CompileOptions {
    /// Cap on type-monoid elements.
    pub budget: usize,
    /// Words up to this length are checked against the evaluator after
    /// construction; 0 skips the check.
    pub verify_len: usize,
}

impl Default for CompileOptions {
    fn default() -> Self {
        CompileOptions { budget: DEFAULT_TYPE_BUDGET, verify_len: 6 }
    }
}

#[derive(Debug, Clone)]
pub struct CompiledTranslation {
    pub nft: Nft,
    /// Rank of the types the machine was built from.
    pub rank: usize,
    pub type_count: usize,
}

/// Compiles `φ(x)` into a transducer writing the first letter of `gamma`
/// where `φ` holds and the second elsewhere.
pub fn compile_fo_translation(phi: &Formula, sigma: &Alphabet, gamma: &Alphabet) -> Result<Nft, Error> {
    if gamma.len() != 2 {
        return Err(Error::BodyCount { language: format!("{gamma}"), expected: gamma.len() - 1, found: 1 });
    }
    let free = phi.free_vars();
    let var = match free.len() {
        0 => String::from("x"),
        1 => free.into_iter().next().unwrap(),
        _ => return Err(Error::Unsupported(format!("`{phi}` has more than one free variable"))),
    };
    let spec = TransformSpec::new(vec![phi.clone()], &[var.as_str()], gamma.clone())?;
    Ok(compile_transform(&spec, sigma, &CompileOptions::default())?.nft)
}

/// Compiles a unary transformation with pure-FO bodies. If the machine built
/// from rank-k types fails verification, rank k+1 is tried (up to the cap).
pub fn compile_transform(
    spec: &TransformSpec,
    sigma: &Alphabet,
    opts: &CompileOptions,
) -> Result<CompiledTranslation, Error> {
    if spec.vars.len() != 1 {
        return Err(Error::Unsupported(format!("FO-translations bind one variable, found {}", spec.vars.len())));
    }
    if let Some(v) = spec.outer_vars().into_iter().next() {
        return Err(Error::Unsupported(format!("free variable `{v}` besides the position variable")));
    }
    if let Some(b) = spec.bodies.iter().find(|b| !b.is_pure_fo()) {
        return Err(Error::Unsupported(format!("`{b}` is not a pure first-order formula")));
    }
    let base = spec.bodies.iter().map(Formula::quantifier_rank).max().unwrap_or(0);
    if base > MAX_RANK {
        return Err(Error::RankCap { requested: base, cap: MAX_RANK });
    }
    let compiled = spec.compile(sigma)?;
    for k in base..=MAX_RANK {
        let monoid = build_type_monoid_with(sigma, k, Vocabulary::WithEndpoints, opts.budget)?;
        let nft = build(&monoid, &compiled, spec.target.clone());
        if verify(&nft, &compiled, opts.verify_len)? {
            return Ok(CompiledTranslation { nft, rank: k, type_count: monoid.len() });
        }
    }
    Err(Error::Malformed(format!("no machine up to rank {MAX_RANK} reproduces the translation")))
}

fn build(monoid: &TypeMonoid, bodies: &CompiledTransform, gamma: Alphabet) -> Nft {
    let sigma = monoid.alphabet().clone();
    let n = monoid.len();
    // preimage[σ][t]: suffix types t' with σ·t' = t.
    let mut preimage = vec![vec![Vec::new(); n]; sigma.len()];
    for (a, row) in preimage.iter_mut().enumerate() {
        for t in 0..n {
            row[monoid.concat(monoid.letter_type(a), t)].push(t);
        }
    }
    let select = |prefix: usize, a: usize, suffix: usize| {
        let u = monoid.representative(prefix);
        let mut word = u.to_vec();
        word.push(a);
        word.extend_from_slice(monoid.representative(suffix));
        bodies.letter_at(&word, &[u.len() + 1])
    };

    // State 0 is the initial state; pairs get indices as they are discovered.
    let mut index: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    let mut edges: Vec<(usize, usize, usize, usize)> = Vec::new();
    let mut intern = |pair: (usize, usize), pairs: &mut Vec<(usize, usize)>| {
        *index.entry(pair).or_insert_with(|| {
            pairs.push(pair);
            pairs.len()
        })
    };
    for a in 0..sigma.len() {
        for t in 0..n {
            let target = intern((monoid.letter_type(a), t), &mut pairs);
            edges.push((0, a, select(monoid.unit(), a, t), target));
        }
    }
    let mut i = 0;
    while i < pairs.len() {
        let (prefix, suffix) = pairs[i];
        for (a, row) in preimage.iter().enumerate() {
            let next_prefix = monoid.concat(prefix, monoid.letter_type(a));
            for &t in &row[suffix] {
                let target = intern((next_prefix, t), &mut pairs);
                edges.push((i + 1, a, select(prefix, a, t), target));
            }
        }
        i += 1;
    }
    let mut names = vec![String::from("q0")];
    names.extend(pairs.iter().map(|(p, s)| format!("t{p}_{s}")));
    let mut nft = Nft::with_names(sigma, gamma, names);
    for (q, a, b, r) in edges {
        nft.add_transition(q, a, b, r).expect("valid transition");
    }
    for (j, &(_, suffix)) in pairs.iter().enumerate() {
        if suffix == monoid.unit() {
            nft.set_final(j + 1, true).expect("valid state");
        }
    }
    nft.trim().reduce()
}

fn verify(nft: &Nft, bodies: &CompiledTransform, max_len: usize) -> Result<bool, Error> {
    if max_len == 0 {
        return Ok(true);
    }
    if !nft.is_single_valued() || !nft.is_aperiodic()? {
        return Ok(false);
    }
    for len in 1..=max_len {
        for w in nft.input().words_of_length(len) {
            let outs = nft.run_outputs_raw(&w);
            if outs.len() != 1 || outs.first() != Some(&bodies.apply_raw(&w)) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_formula;

    fn ab() -> Alphabet {
        Alphabet::parse("(a,b)").unwrap()
    }

    fn outputs(nft: &Nft, w: &[usize]) -> Vec<String> {
        nft.run_outputs_raw(w).iter().map(|o| crate::alphabet::render(nft.output(), o)).collect()
    }

    #[test]
    fn last_letter_everywhere() {
        let phi = parse_formula("P_a(max)", &ab()).unwrap();
        let m = compile_fo_translation(&phi, &ab(), &ab()).unwrap();
        assert_eq!(outputs(&m, &[1, 0]), ["aa"]);
        assert_eq!(outputs(&m, &[0, 0, 1]), ["bbb"]);
        assert!(m.is_single_valued());
    }

    #[test]
    fn letter_test_is_a_copy() {
        let phi = parse_formula("P_a(x)", &ab()).unwrap();
        let m = compile_fo_translation(&phi, &ab(), &ab()).unwrap();
        for w in ab().words_up_to(5) {
            assert_eq!(m.run_outputs_raw(&w).into_iter().collect::<Vec<_>>(), [w]);
        }
    }

    #[test]
    fn rejects_non_fo_bodies() {
        let phi = parse_formula("Ey. BIT(x, y)", &ab()).unwrap();
        let bits = Alphabet::parse("(1,0)").unwrap();
        assert!(matches!(compile_fo_translation(&phi, &ab(), &bits), Err(Error::Unsupported(_))));
    }

    #[test]
    fn three_letter_target() {
        let three = Alphabet::parse("(x,y,z)").unwrap();
        let bodies = vec![
            parse_formula("x = min", &ab()).unwrap(),
            parse_formula("Ey. (x < y & P_b(y))", &ab()).unwrap(),
        ];
        let spec = TransformSpec::new(bodies, &["x"], three).unwrap();
        let c = compile_transform(&spec, &ab(), &CompileOptions::default()).unwrap();
        assert_eq!(outputs(&c.nft, &[0, 0, 1, 0]), ["xyzz"]);
    }
}
