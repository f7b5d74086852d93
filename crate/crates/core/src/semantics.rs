//! Truth of formulas on words and the transformations defined by
//! Lindström quantifier bodies.
//!
//! Formulas are compiled once into a tree with numbered variable slots and
//! then evaluated by plain recursive enumeration: `n` witnesses per
//! first-order quantifier and `n^k` tuples per Lindström quantifier.

use alloc::boxed::Box;
use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use crate::alphabet::{Alphabet, Word};
use crate::error::Error;
use crate::formula::{Formula, Lindstrom, Term};
use crate::language::LanguageRef;

/// Variable name to 1-based position.
pub type Assignment = BTreeMap<String, usize>;

/// Builds an [`Assignment`] from `(name, position)` pairs.
pub fn assignment<'a>(pairs: impl IntoIterator<Item = (&'a str, usize)>) -> Assignment {
    pairs.into_iter().map(|(v, p)| (v.to_string(), p)).collect()
}

#[derive(Debug, Clone, Copy)]
enum T {
    Slot(usize),
    Min,
    Max,
}

#[derive(Debug, Clone)]
enum Node {
    Const(bool),
    // letter index in the word alphabet
    Letter(usize, T),
    Eq(T, T),
    Lt(T, T),
    Bit(T, T),
    Plus(T, T, T),
    Not(Box<Node>),
    And(Vec<Node>),
    Or(Vec<Node>),
    Exists(usize, Box<Node>),
    Forall(usize, Box<Node>),
    Lindstrom { language: LanguageRef, slots: Vec<usize>, bodies: Vec<Node> },
}

/// A formula compiled against an input alphabet.
#[derive(Debug, Clone)]
pub struct Compiled {
    node: Node,
    slots: Vec<String>,
    free: Vec<usize>,
}

struct Builder<'a> {
    sigma: &'a Alphabet,
    slots: Vec<String>,
}

impl Builder<'_> {
    fn slot(&mut self, name: &str) -> usize {
        match self.slots.iter().position(|s| s == name) {
            Some(i) => i,
            None => {
                self.slots.push(name.to_string());
                self.slots.len() - 1
            }
        }
    }

    fn term(&mut self, t: &Term) -> T {
        match t {
            Term::Var(v) => T::Slot(self.slot(v)),
            Term::Min => T::Min,
            Term::Max => T::Max,
        }
    }

    fn node(&mut self, f: &Formula) -> Result<Node, Error> {
        Ok(match f {
            Formula::True => Node::Const(true),
            Formula::False => Node::Const(false),
            Formula::Letter(c, t) => {
                let letter = self.sigma.index_of(*c).ok_or(Error::UnknownSymbol(*c))?;
                Node::Letter(letter, self.term(t))
            }
            Formula::Eq(a, b) => Node::Eq(self.term(a), self.term(b)),
            Formula::Lt(a, b) => Node::Lt(self.term(a), self.term(b)),
            Formula::Bit(a, b) => Node::Bit(self.term(a), self.term(b)),
            Formula::Plus(a, b, c) => Node::Plus(self.term(a), self.term(b), self.term(c)),
            Formula::Not(g) => Node::Not(Box::new(self.node(g)?)),
            Formula::And(gs) => Node::And(gs.iter().map(|g| self.node(g)).collect::<Result<_, _>>()?),
            Formula::Or(gs) => Node::Or(gs.iter().map(|g| self.node(g)).collect::<Result<_, _>>()?),
            Formula::Exists(v, g) => Node::Exists(self.slot(v), Box::new(self.node(g)?)),
            Formula::Forall(v, g) => Node::Forall(self.slot(v), Box::new(self.node(g)?)),
            Formula::Lindstrom(q) => {
                check_arity(q)?;
                let slots = q.vars.iter().map(|v| self.slot(v)).collect();
                let bodies = q.bodies.iter().map(|g| self.node(g)).collect::<Result<_, _>>()?;
                Node::Lindstrom { language: q.language.clone(), slots, bodies }
            }
        })
    }
}

fn check_arity(q: &Lindstrom) -> Result<(), Error> {
    if q.vars.is_empty() {
        return Err(Error::EmptyTuple);
    }
    let expected = q.language.alphabet().len() - 1;
    if q.bodies.len() != expected {
        return Err(Error::BodyCount { language: q.language.name(), expected, found: q.bodies.len() });
    }
    Ok(())
}

fn value(t: T, n: usize, values: &[usize]) -> usize {
    match t {
        T::Slot(i) => values[i],
        T::Min => 1,
        T::Max => n,
    }
}

fn holds(node: &Node, w: &[usize], values: &mut [usize]) -> bool {
    let n = w.len();
    match node {
        Node::Const(b) => *b,
        Node::Letter(a, t) => w[value(*t, n, values) - 1] == *a,
        Node::Eq(a, b) => value(*a, n, values) == value(*b, n, values),
        Node::Lt(a, b) => value(*a, n, values) < value(*b, n, values),
        Node::Bit(a, b) => {
            let bit = value(*a, n, values);
            let y = value(*b, n, values);
            bit >= 1 && bit <= usize::BITS as usize && (y >> (bit - 1)) & 1 == 1
        }
        Node::Plus(a, b, c) => value(*a, n, values) + value(*b, n, values) == value(*c, n, values),
        Node::Not(g) => !holds(g, w, values),
        Node::And(gs) => gs.iter().all(|g| holds(g, w, values)),
        Node::Or(gs) => gs.iter().any(|g| holds(g, w, values)),
        Node::Exists(slot, g) | Node::Forall(slot, g) => {
            let want = matches!(node, Node::Exists(..));
            let saved = values[*slot];
            let mut result = !want;
            for p in 1..=n {
                values[*slot] = p;
                if holds(g, w, values) == want {
                    result = want;
                    break;
                }
            }
            values[*slot] = saved;
            result
        }
        Node::Lindstrom { language, slots, bodies } => {
            let mut image = Vec::with_capacity(n.pow(slots.len() as u32));
            image_into(bodies, slots, w, values, &mut image);
            language.contains(&image)
        }
    }
}

/// Appends the letters chosen at every tuple in lexical order (first slot
/// most significant): the index of the first true body, else `bodies.len()`.
fn image_into(bodies: &[Node], slots: &[usize], w: &[usize], values: &mut [usize], out: &mut Vec<usize>) {
    let n = w.len();
    let saved: Vec<usize> = slots.iter().map(|&s| values[s]).collect();
    for &s in slots {
        values[s] = 1;
    }
    'tuples: loop {
        let letter = bodies.iter().position(|b| holds(b, w, values)).unwrap_or(bodies.len());
        out.push(letter);
        for &s in slots.iter().rev() {
            if values[s] < n {
                values[s] += 1;
                continue 'tuples;
            }
            values[s] = 1;
        }
        break;
    }
    for (&s, v) in slots.iter().zip(saved) {
        values[s] = v;
    }
}

impl Compiled {
    pub fn new(f: &Formula, sigma: &Alphabet) -> Result<Self, Error> {
        let mut b = Builder { sigma, slots: Vec::new() };
        let node = b.node(f)?;
        let free = f.free_vars().iter().map(|v| b.slot(v)).collect();
        Ok(Compiled { node, slots: b.slots, free })
    }

    pub fn slot_count(&self) -> usize {
        self.slots.len()
    }

    pub fn slot(&self, name: &str) -> Option<usize> {
        self.slots.iter().position(|s| s == name)
    }

    /// Evaluation on raw letters with slot values given directly. Every free
    /// variable's slot must hold a position in `1..=w.len()`.
    pub fn holds_raw(&self, w: &[usize], values: &mut [usize]) -> bool {
        holds(&self.node, w, values)
    }

    /// Slot values for an assignment, validated against the word length.
    pub fn slot_values(&self, n: usize, a: &Assignment) -> Result<Vec<usize>, Error> {
        if n == 0 {
            return Err(Error::EmptyWord);
        }
        let mut values = vec![0; self.slots.len()];
        for &slot in &self.free {
            let name = &self.slots[slot];
            let pos = *a.get(name).ok_or_else(|| Error::UnassignedVariable(name.clone()))?;
            if pos == 0 || pos > n {
                return Err(Error::PositionOutOfRange { var: name.clone(), pos, len: n });
            }
            values[slot] = pos;
        }
        Ok(values)
    }

    pub fn eval(&self, w: &Word, a: &Assignment) -> Result<bool, Error> {
        let mut values = self.slot_values(w.len(), a)?;
        Ok(self.holds_raw(w.letters(), &mut values))
    }
}

/// Truth of `f` on `w` under `a`.
pub fn eval(f: &Formula, w: &Word, a: &Assignment) -> Result<bool, Error> {
    Compiled::new(f, w.alphabet())?.eval(w, a)
}

/// Bodies, bound tuple and target alphabet of a quantifier-defined transformation.
#[derive(Debug, Clone, PartialEq)]
pub struct TransformSpec {
    pub bodies: Vec<Formula>,
    pub vars: Vec<String>,
    pub target: Alphabet,
}

impl TransformSpec {
    pub fn new(bodies: Vec<Formula>, vars: &[&str], target: Alphabet) -> Result<Self, Error> {
        if vars.is_empty() {
            return Err(Error::EmptyTuple);
        }
        if bodies.len() + 1 != target.len() {
            return Err(Error::BodyCount {
                language: alloc::format!("{target}"),
                expected: target.len() - 1,
                found: bodies.len(),
            });
        }
        Ok(TransformSpec { bodies, vars: vars.iter().map(|v| v.to_string()).collect(), target })
    }

    /// The transformation a Lindström quantifier applies before the membership test.
    pub fn of_lindstrom(q: &Lindstrom) -> Result<Self, Error> {
        check_arity(q)?;
        Ok(TransformSpec { bodies: q.bodies.clone(), vars: q.vars.clone(), target: q.language.alphabet() })
    }

    /// Free variables of the bodies outside the bound tuple.
    pub fn outer_vars(&self) -> alloc::collections::BTreeSet<String> {
        let mut out = alloc::collections::BTreeSet::new();
        for b in &self.bodies {
            out.extend(b.free_vars().into_iter().filter(|v| !self.vars.contains(v)));
        }
        out
    }

    pub fn compile(&self, sigma: &Alphabet) -> Result<CompiledTransform, Error> {
        let mut b = Builder { sigma, slots: Vec::new() };
        let tuple: Vec<usize> = self.vars.iter().map(|v| b.slot(v)).collect();
        let bodies = self.bodies.iter().map(|f| b.node(f)).collect::<Result<_, _>>()?;
        let outer = self.outer_vars().iter().map(|v| b.slot(v)).collect();
        Ok(CompiledTransform { bodies, tuple, slots: b.slots, outer, target: self.target.clone() })
    }
}

/// A [`TransformSpec`] compiled against an input alphabet.
#[derive(Debug, Clone)]
pub struct CompiledTransform {
    bodies: Vec<Node>,
    tuple: Vec<usize>,
    slots: Vec<String>,
    outer: Vec<usize>,
    target: Alphabet,
}

impl CompiledTransform {
    pub fn target(&self) -> &Alphabet {
        &self.target
    }

    /// Image of `w` with no outer variables, as raw target indices.
    pub fn apply_raw(&self, w: &[usize]) -> Vec<usize> {
        let mut values = vec![0; self.slots.len()];
        let mut out = Vec::with_capacity(w.len().pow(self.tuple.len() as u32));
        image_into(&self.bodies, &self.tuple, w, &mut values, &mut out);
        out
    }

    /// Letter chosen at a single tuple of positions.
    pub fn letter_at(&self, w: &[usize], tuple: &[usize]) -> usize {
        let mut values = vec![0; self.slots.len()];
        for (&s, &p) in self.tuple.iter().zip(tuple) {
            values[s] = p;
        }
        self.bodies.iter().position(|b| holds(b, w, &mut values)).unwrap_or(self.bodies.len())
    }

    pub fn apply(&self, w: &Word, outer: &Assignment) -> Result<Word, Error> {
        let n = w.len();
        if n == 0 {
            return Err(Error::EmptyWord);
        }
        let mut values = vec![0; self.slots.len()];
        for &slot in &self.outer {
            let name = &self.slots[slot];
            let pos = *outer.get(name).ok_or_else(|| Error::UnassignedVariable(name.clone()))?;
            if pos == 0 || pos > n {
                return Err(Error::PositionOutOfRange { var: name.clone(), pos, len: n });
            }
            values[slot] = pos;
        }
        let mut out = Vec::with_capacity(n.pow(self.tuple.len() as u32));
        image_into(&self.bodies, &self.tuple, w.letters(), &mut values, &mut out);
        Word::new(self.target.clone(), out)
    }
}

/// The word of length `n^k` over `spec.target` defined by `spec` on `w`.
pub fn transform(spec: &TransformSpec, w: &Word, outer: &Assignment) -> Result<Word, Error> {
    spec.compile(w.alphabet())?.apply(w, outer)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_formula;

    fn word(text: &str, sigma: &str) -> Word {
        Word::parse(text, &Alphabet::parse(sigma).unwrap()).unwrap()
    }

    #[test]
    fn exists_letter() {
        let w = word("ba", "(a,b)");
        let f = parse_formula("Ex. P_a(x)", w.alphabet()).unwrap();
        assert!(eval(&f, &w, &Assignment::new()).unwrap());
    }

    #[test]
    fn majority_on_110() {
        let w = word("110", "(0,1)");
        let f = parse_formula("Q[Maj] x. P_1(x)", w.alphabet()).unwrap();
        assert!(eval(&f, &w, &Assignment::new()).unwrap());
        let w = word("100", "(0,1)");
        assert!(!eval(&f, &w, &Assignment::new()).unwrap());
    }

    #[test]
    fn bit_is_lsb_first() {
        // 6 = 0b110: bits 2 and 3 set.
        let w = word("aaaaaa", "(a)");
        let f = parse_formula("BIT(x, y)", w.alphabet()).unwrap();
        let truth: Vec<bool> = (1..=6)
            .map(|x| eval(&f, &w, &assignment([("x", x), ("y", 6)])).unwrap())
            .collect();
        assert_eq!(truth, [false, true, true, false, false, false]);
    }

    #[test]
    fn errors() {
        let sigma = Alphabet::parse("(a,b)").unwrap();
        let f = parse_formula("P_a(x)", &sigma).unwrap();
        let w = Word::parse("ab", &sigma).unwrap();
        assert_eq!(eval(&f, &w, &Assignment::new()), Err(Error::UnassignedVariable("x".into())));
        assert_eq!(
            eval(&f, &w, &assignment([("x", 3)])),
            Err(Error::PositionOutOfRange { var: "x".into(), pos: 3, len: 2 })
        );
        let empty = Word::parse("", &sigma).unwrap();
        assert_eq!(eval(&Formula::True, &empty, &Assignment::new()), Err(Error::EmptyWord));
    }

    #[test]
    fn transform_examples() {
        let sigma = Alphabet::parse("(a,b)").unwrap();
        let target = Alphabet::parse("(1,0)").unwrap();
        let spec = TransformSpec::new(vec![parse_formula("P_b(x)", &sigma).unwrap()], &["x"], target.clone()).unwrap();
        let out = transform(&spec, &Word::parse("ab", &sigma).unwrap(), &Assignment::new()).unwrap();
        assert_eq!(out.to_text(), "01");
        let spec = TransformSpec::new(vec![Formula::False], &["x"], target).unwrap();
        let out = transform(&spec, &Word::parse("aa", &sigma).unwrap(), &Assignment::new()).unwrap();
        assert_eq!(out.to_text(), "00");
    }

    #[test]
    fn tuples_are_lexical_first_var_most_significant() {
        let sigma = Alphabet::parse("(a)").unwrap();
        let target = Alphabet::parse("(1,0)").unwrap();
        let spec = TransformSpec::new(vec![parse_formula("x = min", &sigma).unwrap()], &["x", "y"], target).unwrap();
        let out = transform(&spec, &Word::parse("aa", &sigma).unwrap(), &Assignment::new()).unwrap();
        assert_eq!(out.to_text(), "1100");
    }

    #[test]
    fn outer_variable_is_fixed() {
        let sigma = Alphabet::parse("(a)").unwrap();
        let f = parse_formula("Q[Maj] x. x < z", &sigma).unwrap();
        let w = Word::parse("aaaa", &sigma).unwrap();
        assert!(!eval(&f, &w, &assignment([("z", 3)])).unwrap());
        assert!(eval(&f, &w, &assignment([("z", 4)])).unwrap());
    }
}
