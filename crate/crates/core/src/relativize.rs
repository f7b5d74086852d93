//! Restricting a sentence to the positions on one side of a pivot variable.

use alloc::boxed::Box;
use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec;

use crate::error::Error;
use crate::formula::{fresh_var, Formula, Term};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    /// Positions strictly before the pivot.
    Less,
    /// Positions strictly after the pivot.
    Greater,
}

/// Rewrites `f` so that, with `pivot = i`, it says on the whole word what
/// `f` says on the factor strictly before (or after) position `i`.
///
/// Quantifiers are bounded by the pivot. The endpoint constant that moves
/// (`max` for [`Side::Less`], `min` for [`Side::Greater`]) is replaced,
/// atom by atom, by a bounded existential naming the new endpoint. Each such
/// atom costs two extra quantifier levels.
pub fn relativize(f: &Formula, pivot: &str, side: Side) -> Result<Formula, Error> {
    if f.bound_vars().contains(pivot) {
        return Err(Error::BoundPivot(pivot.into()));
    }
    let mut taken: BTreeSet<String> = f.all_vars();
    taken.insert(pivot.into());
    let endpoint = fresh_var("e", |v| taken.contains(v));
    taken.insert(endpoint.clone());
    let witness = fresh_var("u", |v| taken.contains(v));
    let r = Relativizer { pivot: Term::var(pivot), side, endpoint, witness };
    r.walk(f)
}

struct Relativizer {
    pivot: Term,
    side: Side,
    endpoint: String,
    witness: String,
}

impl Relativizer {
    /// `t` lies on the chosen side of the pivot.
    fn inside(&self, t: Term) -> Formula {
        match self.side {
            Side::Less => Formula::Lt(t, self.pivot.clone()),
            Side::Greater => Formula::Lt(self.pivot.clone(), t),
        }
    }

    fn moved_constant(&self) -> Term {
        match self.side {
            Side::Less => Term::Max,
            Side::Greater => Term::Min,
        }
    }

    fn walk(&self, f: &Formula) -> Result<Formula, Error> {
        Ok(match f {
            Formula::True | Formula::False => f.clone(),
            Formula::Letter(..) | Formula::Eq(..) | Formula::Lt(..) => self.atom(f),
            Formula::Bit(..) | Formula::Plus(..) => {
                if self.side == Side::Greater {
                    return Err(Error::Unsupported(format!(
                        "arithmetic atom `{f}` is not invariant under shifting to a suffix"
                    )));
                }
                self.atom(f)
            }
            Formula::Not(g) => Formula::not(self.walk(g)?),
            Formula::And(gs) => Formula::And(gs.iter().map(|g| self.walk(g)).collect::<Result<_, _>>()?),
            Formula::Or(gs) => Formula::Or(gs.iter().map(|g| self.walk(g)).collect::<Result<_, _>>()?),
            Formula::Exists(v, g) => {
                Formula::exists(v, Formula::and(vec![self.inside(Term::var(v)), self.walk(g)?]))
            }
            Formula::Forall(v, g) => {
                Formula::forall(v, Formula::implies(self.inside(Term::var(v)), self.walk(g)?))
            }
            Formula::Lindstrom(_) => {
                return Err(Error::Unsupported("relativizing a Lindström quantifier".into()));
            }
        })
    }

    fn atom(&self, f: &Formula) -> Formula {
        let c = self.moved_constant();
        let mentions = match f {
            Formula::Letter(_, t) => *t == c,
            Formula::Eq(a, b) | Formula::Lt(a, b) | Formula::Bit(a, b) => *a == c || *b == c,
            Formula::Plus(a, b, s) => *a == c || *b == c || *s == c,
            _ => false,
        };
        if !mentions {
            return f.clone();
        }
        let e = Term::var(&self.endpoint);
        let sub = |t: &Term| if *t == c { e.clone() } else { t.clone() };
        let replaced = match f {
            Formula::Letter(a, t) => Formula::Letter(*a, sub(t)),
            Formula::Eq(a, b) => Formula::Eq(sub(a), sub(b)),
            Formula::Lt(a, b) => Formula::Lt(sub(a), sub(b)),
            Formula::Bit(a, b) => Formula::Bit(sub(a), sub(b)),
            Formula::Plus(a, b, s) => Formula::Plus(sub(a), sub(b), sub(s)),
            _ => unreachable!(),
        };
        // e is the extreme position on the chosen side: every other inside
        // position u lies between e and the pivot.
        let u = Term::var(&self.witness);
        let extreme = match self.side {
            Side::Less => Formula::le(u.clone(), e.clone()),
            Side::Greater => Formula::le(e.clone(), u.clone()),
        };
        Formula::Exists(
            self.endpoint.clone(),
            Box::new(Formula::and(vec![
                self.inside(e.clone()),
                Formula::forall(&self.witness, Formula::implies(self.inside(u), extreme)),
                replaced,
            ])),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alphabet::{Alphabet, Word};
    use crate::parse::parse_formula;
    use crate::semantics::{assignment, eval, Assignment};

    fn ab() -> Alphabet {
        Alphabet::parse("(a,b)").unwrap()
    }

    #[test]
    fn exists_is_bounded() {
        let f = parse_formula("Ex. P_a(x)", &ab()).unwrap();
        let r = relativize(&f, "y", Side::Less).unwrap();
        assert_eq!(r, parse_formula("Ex. (x < y & P_a(x))", &ab()).unwrap());
    }

    #[test]
    fn min_of_suffix() {
        let f = parse_formula("P_a(min)", &ab()).unwrap();
        let r = relativize(&f, "y", Side::Greater).unwrap();
        let expected = parse_formula("Ee. (y < e & (Au. (y < u -> e <= u)) & P_a(e))", &ab()).unwrap();
        assert_eq!(r, expected);
        assert_eq!(r.quantifier_rank(), f.quantifier_rank() + 2);
    }

    #[test]
    fn rejects_bound_pivot() {
        let f = parse_formula("Ey. P_a(y)", &ab()).unwrap();
        assert_eq!(relativize(&f, "y", Side::Less), Err(Error::BoundPivot("y".into())));
    }

    #[test]
    fn prefix_semantics_small() {
        let f = parse_formula("Ex. (P_b(x) & Ay. (y < x -> P_a(y))) & P_b(max)", &ab()).unwrap();
        let r = relativize(&f, "p", Side::Less).unwrap();
        for w in ab().words_up_to(5) {
            for i in 2..=w.len() {
                let u = Word::new(ab(), w[..i - 1].to_vec()).unwrap();
                let whole = Word::new(ab(), w.clone()).unwrap();
                assert_eq!(
                    eval(&f, &u, &Assignment::new()).unwrap(),
                    eval(&r, &whole, &assignment([("p", i)])).unwrap()
                );
            }
        }
    }
}
