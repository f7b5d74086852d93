//! Multiplication and addition of positions expressed with Lindström
//! quantifiers over the built-in `Eq01` and `Add` languages.

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::formula::{fresh_var, Formula, Term};
use crate::language::{LanguageRef, NamedLanguage};

fn v(name: &str) -> Term {
    Term::var(name)
}

fn fresh_names(params: &[&str], bases: &[&str]) -> Vec<String> {
    let mut taken: BTreeSet<String> = params.iter().map(|p| String::from(*p)).collect();
    bases
        .iter()
        .map(|b| {
            let name = fresh_var(b, |c| taken.contains(c));
            taken.insert(name.clone());
            name
        })
        .collect()
}

/// The two bodies `[z = min ∧ x ≤ a ∧ y ≤ b ; z = y = max ∧ x ≤ c]` over the
/// tuple `(x, y, z)`: the `n^3`-letter image has `a·b` zeros and `c` ones.
pub fn multiplication_bodies(a: &str, b: &str, c: &str) -> (Vec<String>, Vec<Formula>) {
    let names = fresh_names(&[a, b, c], &["x", "y", "z"]);
    let (x, y, z) = (v(&names[0]), v(&names[1]), v(&names[2]));
    let zeros = Formula::and(vec![
        Formula::Eq(z.clone(), Term::Min),
        Formula::le(x.clone(), v(a)),
        Formula::le(y.clone(), v(b)),
    ]);
    let ones = Formula::and(vec![
        Formula::Eq(z.clone(), y.clone()),
        Formula::Eq(y, Term::Max),
        Formula::le(x, v(c)),
    ]);
    (names, vec![zeros, ones])
}

/// `a · b = c`, as `Q[Eq01](x, y, z)` over [`multiplication_bodies`].
///
/// Both bodies carry an extra `min < max` conjunct. On a one-letter word
/// `z = min` and `z = max` coincide, so the unguarded zero-body would also
/// claim the single tuple and the image `0` would wrongly reject `1 · 1 = 1`.
pub fn multiplication_formula(a: &str, b: &str, c: &str) -> Formula {
    let (names, bodies) = multiplication_bodies(a, b, c);
    let guard = Formula::Lt(Term::Min, Term::Max);
    let bodies = bodies.into_iter().map(|f| Formula::and(vec![guard.clone(), f])).collect();
    let vars: Vec<&str> = names.iter().map(String::as_str).collect();
    Formula::lindstrom(LanguageRef::named(NamedLanguage::EqualZeroOne), &vars, bodies)
}

/// `Q[Add] x. [x = i; x = j; x = k; x < i ∨ (j < x ∧ x < k)]`, which reads
/// `i + j = k` whenever `i < j`.
pub fn addition_quantifier(i: &str, j: &str, k: &str) -> Formula {
    let x = fresh_names(&[i, j, k], &["x"]).remove(0);
    let xt = v(&x);
    let bodies = vec![
        Formula::Eq(xt.clone(), v(i)),
        Formula::Eq(xt.clone(), v(j)),
        Formula::Eq(xt.clone(), v(k)),
        Formula::or(vec![
            Formula::Lt(xt.clone(), v(i)),
            Formula::and(vec![Formula::Lt(v(j), xt.clone()), Formula::Lt(xt, v(k))]),
        ]),
    ];
    Formula::lindstrom(LanguageRef::named(NamedLanguage::AdditionHelper), &[x.as_str()], bodies)
}

/// `q` is the position right after `p`.
pub fn successor(p: &str, q: &str, scratch: &str) -> Formula {
    Formula::and(vec![
        Formula::Lt(v(p), v(q)),
        Formula::not(Formula::exists(
            scratch,
            Formula::and(vec![Formula::Lt(v(p), v(scratch)), Formula::Lt(v(scratch), v(q))]),
        )),
    ])
}

/// `i + j = k` for all orderings of `i` and `j`. The helper language needs
/// `i < j`; equal summands are rewritten as `(i - 1) + (i + 1)`, with
/// `1 + 1 = 2` handled directly.
pub fn addition_formula(i: &str, j: &str, k: &str) -> Formula {
    let names = fresh_names(&[i, j, k], &["p", "q", "r", "t"]);
    let (p, q, r, two) = (&names[0], &names[1], &names[2], &names[3]);
    let equal_case = Formula::and(vec![
        Formula::Eq(v(i), v(j)),
        Formula::or(vec![
            Formula::and(vec![
                Formula::Eq(v(i), Term::Min),
                Formula::exists(two, Formula::and(vec![successor_of_min(two, r), Formula::Eq(v(k), v(two))])),
            ]),
            Formula::exists(
                p,
                Formula::exists(
                    q,
                    Formula::and(vec![
                        successor(p, i, r),
                        successor(i, q, r),
                        addition_quantifier(p, q, k),
                    ]),
                ),
            ),
        ]),
    ]);
    Formula::or(vec![
        Formula::and(vec![Formula::Lt(v(i), v(j)), addition_quantifier(i, j, k)]),
        Formula::and(vec![Formula::Lt(v(j), v(i)), addition_quantifier(j, i, k)]),
        equal_case,
    ])
}

fn successor_of_min(t: &str, scratch: &str) -> Formula {
    Formula::and(vec![
        Formula::Lt(Term::Min, v(t)),
        Formula::not(Formula::exists(
            scratch,
            Formula::and(vec![Formula::Lt(Term::Min, v(scratch)), Formula::Lt(v(scratch), v(t))]),
        )),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alphabet::{Alphabet, Word};
    use crate::semantics::{assignment, eval, transform, TransformSpec};

    fn unary(n: usize) -> Word {
        Word::new(Alphabet::parse("(a)").unwrap(), vec![0; n]).unwrap()
    }

    #[test]
    fn raw_bodies_image_counts() {
        let (names, bodies) = multiplication_bodies("a", "b", "c");
        let vars: Vec<&str> = names.iter().map(String::as_str).collect();
        let spec = TransformSpec::new(bodies, &vars, NamedLanguage::EqualZeroOne.alphabet()).unwrap();
        let image = transform(&spec, &unary(3), &assignment([("a", 1), ("b", 1), ("c", 1)])).unwrap();
        let text = image.to_text();
        assert_eq!(text.len(), 27);
        assert_eq!(text.matches('0').count(), 1);
        assert_eq!(text.matches('1').count(), 1);
    }

    #[test]
    fn product_examples() {
        let f = multiplication_formula("a", "b", "c");
        let w = unary(6);
        assert!(eval(&f, &w, &assignment([("a", 2), ("b", 3), ("c", 6)])).unwrap());
        assert!(!eval(&f, &w, &assignment([("a", 2), ("b", 3), ("c", 5)])).unwrap());
        assert!(eval(&f, &unary(1), &assignment([("a", 1), ("b", 1), ("c", 1)])).unwrap());
    }

    #[test]
    fn sums_small() {
        let f = addition_formula("i", "j", "k");
        for n in 1..=5 {
            for i in 1..=n {
                for j in 1..=n {
                    for k in 1..=n {
                        let a = assignment([("i", i), ("j", j), ("k", k)]);
                        assert_eq!(eval(&f, &unary(n), &a).unwrap(), i + j == k, "{i}+{j}={k} n={n}");
                    }
                }
            }
        }
    }
}
