//! Bundled fixtures: grammars, formulas and groupoids shared by the test
//! suites, the acceptance runner and the command-line tool.

use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use crate::alphabet::Alphabet;
use crate::grammar::{dyck_grammar, parse_grammar, Grammar};
use crate::groupoid::{Groupoid, WordProblem};
use crate::language::LanguageRef;
use crate::parse::LanguageEnv;
use crate::witnesses::co_ww_grammar;

fn g(text: &str) -> Grammar {
    parse_grammar(text).expect("bundled grammar is valid")
}

fn named(items: &[(&str, &str)]) -> Vec<(String, Grammar)> {
    items.iter().map(|(n, t)| (n.to_string(), g(t))).collect()
}

/// Unary grammars over `(0)`.
pub fn unary_grammars() -> Vec<(String, Grammar)> {
    named(&[
        ("odd", "S -> '0' | '0' '0' S"),
        ("positive", "S -> '0' | S S"),
        ("multiple-of-3", "S -> '0' '0' '0' | S S"),
        ("three-or-2k+3", "S -> '0' '0' '0' | '0' '0' S"),
        ("two-or-at-least-5", "S -> '0' '0' | F\nF -> '0' '0' '0' '0' '0' | '0' F"),
        ("1mod3-or-even", "S -> A | B\nA -> '0' | '0' '0' '0' A\nB -> '0' '0' | '0' '0' B"),
        ("at-least-4", "S -> '0' '0' '0' '0' | '0' S"),
        ("one-to-three", "S -> '0' | '0' '0' | '0' '0' '0'"),
        ("at-least-2", "S -> '0' '0' | S '0'"),
        ("even", "S -> '0' '0' | S S"),
        ("5k+2", "S -> '0' '0' | '0' '0' '0' '0' '0' S"),
        ("4k+1-or-6k", "S -> A | B\nA -> '0' | '0' '0' '0' '0' A\nB -> '0' '0' '0' '0' '0' '0' | B B"),
    ])
}

/// An FO(+) formula over `(0)` in the position variable `x`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PlusFormula {
    pub text: &'static str,
    pub params: &'static [&'static str],
}

/// Rank ≤ 2 formulas with at most two parameters.
pub fn plus_formulas() -> Vec<PlusFormula> {
    let f = |text, params| PlusFormula { text, params };
    vec![
        f("x = min", &[]),
        f("Ez. z + z = x", &[]),
        f("x + y = z", &["y", "z"]),
        f("x < y", &["y"]),
        f("y < x & x < z", &["y", "z"]),
        f("Ez. x + z = y", &["y"]),
        f("Ez. z + y = x", &["y"]),
        f("Ez. (z + z = x & y < z)", &["y"]),
        f("Ez. (z + z = max & x < z)", &[]),
        f("Ez. Eu. (z + z = u & u + z = x)", &[]),
        f("x + x = y", &["y"]),
        f("Ez. (x + z = max & z + z = y)", &["y"]),
        f("Ez. (x + y = z) & ~(x = max)", &["y"]),
    ]
}

/// Bodies `φ(x)` over `(a,b)` compiled to transducers with target `(1,0)`.
pub fn translation_formulas() -> Vec<&'static str> {
    vec![
        "P_a(x)",
        "P_b(x)",
        "P_a(max)",
        "x = min",
        "x = max",
        "P_b(min)",
        "true",
        "false",
        "Ey. (y < x & P_b(y))",
        "Ey. (x < y & P_a(y))",
        "Ay. (y < x -> P_a(y))",
        "Ay. (x < y -> P_b(y))",
        "Ey. (y < x & P_a(y) & Az. (y < z -> x <= z))",
        "Ey. (x < y & P_b(y) & Az. (x < z -> y <= z))",
        "P_a(x) & Ay. (y < x -> P_b(y))",
        "P_b(x) & Ay. (x < y -> P_a(y))",
        "P_a(x) <-> P_a(max)",
        "Ey. Ez. (y < z & z < x & P_a(y) & P_a(z))",
        "Ey. (y != x & P_a(y))",
        "Ay. (P_a(y) -> y <= x)",
        "P_a(min) & P_b(max)",
        "Ey. (x < y & Az. (z <= x | y <= z))",
    ]
}

const MAJORITY: &str = "terminals: (1,0)
S -> E '1' E | E '1' S
E -> ε | '1' E '0' E | '0' E '1' E";

const NOT_MAJORITY: &str = "terminals: (1,0)
S -> E | N
N -> E '0' E | E '0' N
E -> ε | '1' E '0' E | '0' E '1' E";

const PALINDROME: &str = "terminals: (1,0)
S -> '1' | '0' | '1' '1' | '0' '0' | '1' S '1' | '0' S '0'";

const NOT_PALINDROME: &str = "terminals: (1,0)
S -> '1' X '0' | '0' X '1' | '1' S '1' | '0' S '0'
X -> ε | '1' X | '0' X";

const BALANCED: &str = "terminals: (1,0)
E -> ε | '1' E '0' E | '0' E '1' E";

const UNBALANCED: &str = "terminals: (1,0)
S -> M | N
M -> E '1' E | E '1' M
N -> E '0' E | E '0' N
E -> ε | '1' E '0' E | '0' E '1' E";

const ENDS_1: &str = "terminals: (1,0)\nS -> X '1'\nX -> ε | '1' X | '0' X";
const ENDS_0: &str = "terminals: (1,0)\nS -> X '0'\nX -> ε | '1' X | '0' X";
const HAS_11: &str = "terminals: (1,0)\nS -> X '1' '1' X\nX -> ε | '1' X | '0' X";
const NO_11: &str = "terminals: (1,0)\nS -> ε | '1' | '0' S | '1' '0' S";

/// Grammar-backed languages over `(1,0)` with complements, addressable as
/// `Q[Major]`, `Q[Pal]`, `Q[Bal]`, `Q[End1]`, `Q[Has11]` and the `Co...`
/// names for the complements.
pub fn language_env() -> LanguageEnv {
    let mut env = LanguageEnv::new();
    for (name, co_name, yes, no) in [
        ("Major", "CoMajor", MAJORITY, NOT_MAJORITY),
        ("Pal", "CoPal", PALINDROME, NOT_PALINDROME),
        ("Bal", "CoBal", BALANCED, UNBALANCED),
        ("End1", "End0", ENDS_1, ENDS_0),
        ("Has11", "No11", HAS_11, NO_11),
    ] {
        let (yes, no) = (g(yes), g(no));
        env.insert(name, LanguageRef::grammar(name, yes.clone(), Some(no.clone())));
        env.insert(co_name, LanguageRef::grammar(co_name, no, Some(yes)));
    }
    env
}

/// Sentences `Q_B x [...]` over `(a,b)` for decomposition, parsed with
/// [`language_env`].
pub fn nivat_sentences() -> Vec<&'static str> {
    vec![
        "Q[Maj] x. P_a(x)",
        "Q[Maj] x. x = min",
        "Q[Maj] x. Ey. (y < x & P_b(y))",
        "Q[Maj] x. (P_a(x) <-> P_a(max))",
        "Q[Dyck1] x. P_a(x)",
        "Q[Dyck1] x. ~(x = max)",
        "Q[Dyck2](x)[x = min; x = max; P_a(x)]",
        "Q[Eq01](x)[P_a(x) & x != max; P_b(x)]",
        "Q[Add](x)[x = min; P_a(x); x = max; P_b(x)]",
        "Q[Pal] x. P_a(x)",
        "Q[Pal] x. Ey. (y < x & P_a(y))",
        "Q[CoMajor] x. P_b(x)",
    ]
}

/// `Ex. Q_L y. ξ` over `(a,b)` with `L` carrying a complement grammar.
pub fn merge_instances() -> Vec<&'static str> {
    vec![
        "Ex. Q[Major] y. (P_a(y) & x <= y)",
        "Ex. Q[Pal] y. (P_a(y) | y = x)",
        "Ex. Q[Bal] y. (y < x & P_a(y))",
        "Ex. Q[End1] y. (P_b(y) & y != x)",
        "Ex. Q[Has11] y. (y = x | P_a(y))",
        "Ex. Q[Major] y. x < y",
    ]
}

/// Grammars small enough for the power-set groupoid construction.
pub fn roundtrip_grammars() -> Vec<(String, Grammar)> {
    let ab = Alphabet::parse("(a,b)").expect("valid alphabet");
    let mut out = vec![
        ("dyck1".to_string(), dyck_grammar(1).expect("Dyck grammar")),
        ("dyck2".to_string(), dyck_grammar(2).expect("Dyck grammar")),
    ];
    out.extend(named(&[
        ("has-11", HAS_11),
        ("palindromes", PALINDROME),
        ("non-palindromes", NOT_PALINDROME),
        ("balanced", BALANCED),
        ("anbn", "S -> 'a' 'b' | 'a' S 'b'"),
        ("contains-aa", "S -> X 'a' 'a' X\nX -> ε | 'a' X | 'b' X"),
        ("ends-1", ENDS_1),
        ("unary-odd", "S -> '0' | '0' '0' S"),
    ]));
    out.push(("non-squares".to_string(), co_ww_grammar(&ab).expect("co-ww grammar")));
    out
}

/// Small groupoid word problems: the cyclic groups of order 2 and 3, a
/// left-zero band and a three-element non-associative table.
pub fn groupoid_fixtures() -> Vec<(String, WordProblem)> {
    let mk = |name: &str, elems: &str, rows: Vec<Vec<usize>>, acc: Vec<usize>| {
        let gr = Groupoid::new(Alphabet::parse(elems).expect("valid alphabet"), rows).expect("valid table");
        (name.to_string(), WordProblem::new(gr, acc).expect("valid accepting set"))
    };
    vec![
        mk("z2", "(a,b)", vec![vec![1, 0], vec![0, 1]], vec![0]),
        mk("z3", "(0,1,2)", vec![vec![0, 1, 2], vec![1, 2, 0], vec![2, 0, 1]], vec![0]),
        mk("left-zero", "(a,b)", vec![vec![0, 0], vec![1, 1]], vec![1]),
        mk("rock-paper", "(r,p,s)", vec![vec![0, 1, 0], vec![1, 1, 2], vec![0, 2, 2]], vec![0, 2]),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_formula_with;
    use crate::witnesses::tphi::unary_alphabet;

    #[test]
    fn everything_parses() {
        assert!(unary_grammars().len() >= 10);
        assert!(unary_grammars().iter().all(|(_, g)| g.terminals().len() == 1));
        let env = language_env();
        let ab = Alphabet::parse("(a,b)").unwrap();
        for text in translation_formulas().into_iter().chain(nivat_sentences()).chain(merge_instances()) {
            parse_formula_with(text, Some(&ab), &env).unwrap();
        }
        for f in plus_formulas() {
            parse_formula_with(f.text, Some(&unary_alphabet()), &env).unwrap();
        }
        assert_eq!(groupoid_fixtures().len(), 4);
    }

    #[test]
    fn complements_are_complements() {
        let env = language_env();
        let one_zero = Alphabet::parse("(1,0)").unwrap();
        for name in ["Major", "Pal", "Bal", "End1", "Has11"] {
            let LanguageRef::Grammar { grammar, complement, .. } = env.get(name).unwrap() else {
                panic!("{name} is grammar-backed");
            };
            let complement = complement.unwrap();
            for w in one_zero.words_up_to(8) {
                assert_ne!(grammar.accepts(&w), complement.accepts(&w), "{name} {w:?}");
            }
        }
    }
}
