//! Formula syntax trees and structural utilities.

use alloc::boxed::Box;
use alloc::collections::BTreeSet;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::language::LanguageRef;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Term {
    Var(String),
    Min,
    Max,
}

impl Term {
    pub fn var(name: &str) -> Term {
        Term::Var(name.to_string())
    }

    pub fn as_var(&self) -> Option<&str> {
        match self {
            Term::Var(v) => Some(v),
            _ => None,
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(v) => f.write_str(v),
            Term::Min => f.write_str("min"),
            Term::Max => f.write_str("max"),
        }
    }
}

/// `Q_L (x1..xk) [φ1; ...; φ(s-1)]`: the word whose i-th letter is chosen by
/// the first body true at the i-th tuple (lexical order) must belong to `L`.
#[derive(Debug, Clone, PartialEq)]
pub struct Lindstrom {
    pub language: LanguageRef,
    pub vars: Vec<String>,
    pub bodies: Vec<Formula>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Formula {
    True,
    False,
    /// `P_a(t)`
    Letter(char, Term),
    Eq(Term, Term),
    Lt(Term, Term),
    /// `BIT(x, y)`: bit `x` of `y`, bit 1 being the least significant.
    Bit(Term, Term),
    /// `x + y = z` over positions.
    Plus(Term, Term, Term),
    Not(Box<Formula>),
    And(Vec<Formula>),
    Or(Vec<Formula>),
    Exists(String, Box<Formula>),
    Forall(String, Box<Formula>),
    Lindstrom(Box<Lindstrom>),
}

impl Formula {
    pub fn letter(symbol: char, t: Term) -> Formula {
        Formula::Letter(symbol, t)
    }

    pub fn not(f: Formula) -> Formula {
        Formula::Not(Box::new(f))
    }

    pub fn and(parts: Vec<Formula>) -> Formula {
        match parts.len() {
            0 => Formula::True,
            1 => parts.into_iter().next().unwrap(),
            _ => Formula::And(parts),
        }
    }

    pub fn or(parts: Vec<Formula>) -> Formula {
        match parts.len() {
            0 => Formula::False,
            1 => parts.into_iter().next().unwrap(),
            _ => Formula::Or(parts),
        }
    }

    pub fn implies(a: Formula, b: Formula) -> Formula {
        Formula::Or(vec![Formula::not(a), b])
    }

    /// `a <= b`, spelled with the primitive relations.
    pub fn le(a: Term, b: Term) -> Formula {
        Formula::Or(vec![Formula::Lt(a.clone(), b.clone()), Formula::Eq(a, b)])
    }

    pub fn exists(var: &str, body: Formula) -> Formula {
        Formula::Exists(var.to_string(), Box::new(body))
    }

    pub fn forall(var: &str, body: Formula) -> Formula {
        Formula::Forall(var.to_string(), Box::new(body))
    }

    pub fn lindstrom(language: LanguageRef, vars: &[&str], bodies: Vec<Formula>) -> Formula {
        Formula::Lindstrom(Box::new(Lindstrom {
            language,
            vars: vars.iter().map(|v| v.to_string()).collect(),
            bodies,
        }))
    }

    /// Nesting depth of quantifiers. A Lindström quantifier over a k-tuple
    /// contributes k.
    pub fn quantifier_rank(&self) -> usize {
        match self {
            Formula::True
            | Formula::False
            | Formula::Letter(..)
            | Formula::Eq(..)
            | Formula::Lt(..)
            | Formula::Bit(..)
            | Formula::Plus(..) => 0,
            Formula::Not(f) => f.quantifier_rank(),
            Formula::And(fs) | Formula::Or(fs) => {
                fs.iter().map(Formula::quantifier_rank).max().unwrap_or(0)
            }
            Formula::Exists(_, f) | Formula::Forall(_, f) => 1 + f.quantifier_rank(),
            Formula::Lindstrom(q) => {
                q.vars.len() + q.bodies.iter().map(Formula::quantifier_rank).max().unwrap_or(0)
            }
        }
    }

    pub fn free_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        let mut bound = Vec::new();
        self.collect_free(&mut bound, &mut out);
        out
    }

    fn collect_free(&self, bound: &mut Vec<String>, out: &mut BTreeSet<String>) {
        let mut term = |t: &Term, bound: &Vec<String>| {
            if let Term::Var(v) = t {
                if !bound.contains(v) {
                    out.insert(v.clone());
                }
            }
        };
        match self {
            Formula::True | Formula::False => {}
            Formula::Letter(_, t) => term(t, bound),
            Formula::Eq(a, b) | Formula::Lt(a, b) | Formula::Bit(a, b) => {
                term(a, bound);
                term(b, bound);
            }
            Formula::Plus(a, b, c) => {
                term(a, bound);
                term(b, bound);
                term(c, bound);
            }
            Formula::Not(f) => f.collect_free(bound, out),
            Formula::And(fs) | Formula::Or(fs) => {
                for f in fs {
                    f.collect_free(bound, out);
                }
            }
            Formula::Exists(v, f) | Formula::Forall(v, f) => {
                bound.push(v.clone());
                f.collect_free(bound, out);
                bound.pop();
            }
            Formula::Lindstrom(q) => {
                let depth = bound.len();
                bound.extend(q.vars.iter().cloned());
                for f in &q.bodies {
                    f.collect_free(bound, out);
                }
                bound.truncate(depth);
            }
        }
    }

    /// Every variable name occurring anywhere, bound or free.
    pub fn all_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.visit(&mut |f| {
            let mut add = |t: &Term| {
                if let Term::Var(v) = t {
                    out.insert(v.clone());
                }
            };
            match f {
                Formula::Letter(_, t) => add(t),
                Formula::Eq(a, b) | Formula::Lt(a, b) | Formula::Bit(a, b) => {
                    add(a);
                    add(b);
                }
                Formula::Plus(a, b, c) => {
                    add(a);
                    add(b);
                    add(c);
                }
                Formula::Exists(v, _) | Formula::Forall(v, _) => {
                    out.insert(v.clone());
                }
                Formula::Lindstrom(q) => out.extend(q.vars.iter().cloned()),
                _ => {}
            }
        });
        out
    }

    /// Names bound by some quantifier in the formula.
    pub fn bound_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.visit(&mut |f| match f {
            Formula::Exists(v, _) | Formula::Forall(v, _) => {
                out.insert(v.clone());
            }
            Formula::Lindstrom(q) => out.extend(q.vars.iter().cloned()),
            _ => {}
        });
        out
    }

    /// Pre-order traversal.
    pub fn visit<'a>(&'a self, f: &mut dyn FnMut(&'a Formula)) {
        f(self);
        match self {
            Formula::Not(g) | Formula::Exists(_, g) | Formula::Forall(_, g) => g.visit(f),
            Formula::And(gs) | Formula::Or(gs) => {
                for g in gs {
                    g.visit(f);
                }
            }
            Formula::Lindstrom(q) => {
                for g in &q.bodies {
                    g.visit(f);
                }
            }
            _ => {}
        }
    }

    /// True when the formula uses only order, letters, constants and FO
    /// quantifiers (no Lindström, BIT or addition).
    pub fn is_pure_fo(&self) -> bool {
        let mut pure = true;
        self.visit(&mut |f| {
            if matches!(f, Formula::Lindstrom(_) | Formula::Bit(..) | Formula::Plus(..)) {
                pure = false;
            }
        });
        pure
    }

    pub fn contains_lindstrom(&self) -> bool {
        let mut found = false;
        self.visit(&mut |f| found |= matches!(f, Formula::Lindstrom(_)));
        found
    }

    /// Letter symbols mentioned by `P_a` atoms.
    pub fn letters(&self) -> BTreeSet<char> {
        let mut out = BTreeSet::new();
        self.visit(&mut |f| {
            if let Formula::Letter(c, _) = f {
                out.insert(*c);
            }
        });
        out
    }
}

// Printer. The output is the surface syntax accepted by `parse`.

/// `base` if `taken` rejects it, else the first of `base1`, `base2`, ...
/// that it accepts.
pub fn fresh_var(base: &str, taken: impl Fn(&str) -> bool) -> String {
    if !taken(base) {
        return base.to_string();
    }
    (1..)
        .map(|i| alloc::format!("{base}{i}"))
        .find(|v| !taken(v))
        .expect("unbounded supply of names")
}

fn is_atomic(f: &Formula) -> bool {
    !matches!(
        f,
        Formula::Exists(..) | Formula::Forall(..) | Formula::Lindstrom(_) | Formula::Not(_)
    )
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::True => f.write_str("true"),
            Formula::False => f.write_str("false"),
            Formula::Letter(c, t) => write!(f, "P_{c}({t})"),
            Formula::Eq(a, b) => write!(f, "{a} = {b}"),
            Formula::Lt(a, b) => write!(f, "{a} < {b}"),
            Formula::Bit(a, b) => write!(f, "BIT({a}, {b})"),
            Formula::Plus(a, b, c) => write!(f, "{a} + {b} = {c}"),
            Formula::Not(g) => match **g {
                Formula::Not(_) => write!(f, "~{g}"),
                Formula::Eq(..) | Formula::Lt(..) | Formula::Plus(..) => write!(f, "~({g})"),
                _ if is_atomic(g) => write!(f, "~{g}"),
                _ => write!(f, "~({g})"),
            },
            Formula::And(gs) | Formula::Or(gs) => {
                let op = if matches!(self, Formula::And(_)) { " & " } else { " | " };
                f.write_str("(")?;
                for (i, g) in gs.iter().enumerate() {
                    if i > 0 {
                        f.write_str(op)?;
                    }
                    if matches!(g, Formula::Exists(..) | Formula::Forall(..) | Formula::Lindstrom(_)) {
                        write!(f, "({g})")?;
                    } else {
                        write!(f, "{g}")?;
                    }
                }
                f.write_str(")")
            }
            Formula::Exists(v, g) => write!(f, "E{v}. {g}"),
            Formula::Forall(v, g) => write!(f, "A{v}. {g}"),
            Formula::Lindstrom(q) => {
                write!(f, "Q[{}]", q.language.name())?;
                if q.vars.len() == 1 && q.bodies.len() == 1 {
                    write!(f, " {}. {}", q.vars[0], q.bodies[0])
                } else {
                    f.write_str("(")?;
                    for (i, v) in q.vars.iter().enumerate() {
                        if i > 0 {
                            f.write_str(", ")?;
                        }
                        f.write_str(v)?;
                    }
                    f.write_str(")[")?;
                    for (i, g) in q.bodies.iter().enumerate() {
                        if i > 0 {
                            f.write_str("; ")?;
                        }
                        write!(f, "{g}")?;
                    }
                    f.write_str("]")
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::language::NamedLanguage;

    fn x() -> Term {
        Term::var("x")
    }

    #[test]
    fn rank_examples() {
        assert_eq!(Formula::letter('a', Term::Min).quantifier_rank(), 0);
        let f = Formula::exists("x", Formula::forall("y", Formula::Lt(x(), Term::var("y"))));
        assert_eq!(f.quantifier_rank(), 2);
        let g = Formula::exists(
            "x",
            Formula::exists(
                "y",
                Formula::exists("z", Formula::Plus(x(), Term::var("y"), Term::var("z"))),
            ),
        );
        assert_eq!(g.quantifier_rank(), 3);
        let q = Formula::lindstrom(
            LanguageRef::named(NamedLanguage::EqualZeroOne),
            &["x", "y", "z"],
            vec![Formula::True, Formula::False],
        );
        assert_eq!(q.quantifier_rank(), 3);
    }

    #[test]
    fn free_variable_examples() {
        let px = Formula::letter('a', x());
        assert_eq!(px.free_vars().into_iter().collect::<Vec<_>>(), vec!["x".to_string()]);
        assert!(Formula::exists("x", px).free_vars().is_empty());
        let body = Formula::And(vec![
            Formula::Lt(x(), Term::var("y")),
            Formula::Eq(Term::var("y"), Term::var("z")),
        ]);
        let q = Formula::lindstrom(LanguageRef::named(NamedLanguage::Majority), &["x", "y"], vec![body]);
        assert_eq!(q.free_vars().into_iter().collect::<Vec<_>>(), vec!["z".to_string()]);
    }

    #[test]
    fn prints_surface_syntax() {
        let f = Formula::exists("x", Formula::letter('a', x()));
        assert_eq!(alloc::format!("{f}"), "Ex. P_a(x)");
        let q = Formula::lindstrom(
            LanguageRef::named(NamedLanguage::Majority),
            &["x"],
            vec![Formula::letter('1', x())],
        );
        assert_eq!(alloc::format!("{q}"), "Q[Maj] x. P_1(x)");
    }
}
