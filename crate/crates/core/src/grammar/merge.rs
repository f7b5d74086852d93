use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use super::{exists_merge, exists_merge_complement};
use crate::error::Error;
use crate::formula::{fresh_var, Formula, Lindstrom, Term};
use crate::language::LanguageRef;

/// Pad symbols tried in order by [`merge_exists_formula`].
pub const MERGE_PAD_CANDIDATES: [char; 6] = ['#', '%', '&', '@', '!', '~'];

/// Rewrites `∃x Q_L1 ȳ [ξ_1; ...]` into `Q_L2 (x, z, ȳ) [z > min; z = min ∧ ξ_1; ...]`
/// where `L2` is [`exists_merge`] of `L1` with the pad listed first, so the
/// first body selects the pad letter.
pub fn merge_exists_formula(f: &Formula) -> Result<Formula, Error> {
    let Formula::Exists(x, body) = f else {
        return Err(Error::Unsupported(format!("expected `Ex. Q[..]`, got `{f}`")));
    };
    let Formula::Lindstrom(q) = body.as_ref() else {
        return Err(Error::Unsupported(format!("expected a Lindström quantifier under `E{x}.`")));
    };
    let LanguageRef::Grammar { name, grammar, complement } = &q.language else {
        return Err(Error::MissingComplement);
    };
    let complement = complement.as_ref().ok_or(Error::MissingComplement)?;
    let pad = MERGE_PAD_CANDIDATES
        .iter()
        .copied()
        .find(|c| !grammar.terminals().contains(*c))
        .ok_or(Error::SymbolClash(MERGE_PAD_CANDIDATES[0]))?;
    let merged = exists_merge(grammar, pad)?;
    let co_merged = exists_merge_complement(complement, pad)?;

    let taken = f.all_vars();
    let z = fresh_var("z", |v| taken.contains(v) || v == x);
    let mut vars: Vec<String> = Vec::with_capacity(q.vars.len() + 2);
    vars.push(x.clone());
    vars.push(z.clone());
    vars.extend(q.vars.iter().cloned());
    let zt = Term::Var(z);
    let mut bodies = Vec::with_capacity(q.bodies.len() + 1);
    bodies.push(Formula::Lt(Term::Min, zt.clone()));
    for xi in &q.bodies {
        bodies.push(Formula::and(alloc::vec![Formula::Eq(zt.clone(), Term::Min), xi.clone()]));
    }
    Ok(Formula::Lindstrom(alloc::boxed::Box::new(Lindstrom {
        language: LanguageRef::grammar(&format!("E{name}"), merged, Some(co_merged)),
        vars,
        bodies,
    })))
}
