use proptest::prelude::*;

use strlogic_core::automata::{product, subset_construction, BoolOp, Dfa, Nfa};
use strlogic_core::grammar::CfgBuilder;
use strlogic_core::oracle::derivable;
use strlogic_core::transducer::{build_type_monoid, type_key, Vocabulary};
use strlogic_core::witnesses::{bitwise, check_lemma_lm, lm_bounded, min_blocks, BitOp};
use strlogic_core::{eval, parse_formula, Alphabet, Formula, Symbol, Term, Word};

fn ab() -> Alphabet {
    Alphabet::parse("(a,b)").unwrap()
}

fn term() -> impl Strategy<Value = Term> {
    prop_oneof![
        Just(Term::Min),
        Just(Term::Max),
        prop::sample::select(vec!["x", "y", "z"]).prop_map(Term::var),
    ]
}

fn atom() -> impl Strategy<Value = Formula> {
    prop_oneof![
        Just(Formula::True),
        Just(Formula::False),
        (prop::sample::select(vec!['a', 'b']), term()).prop_map(|(c, t)| Formula::Letter(c, t)),
        (term(), term()).prop_map(|(a, b)| Formula::Eq(a, b)),
        (term(), term()).prop_map(|(a, b)| Formula::Lt(a, b)),
        (term(), term()).prop_map(|(a, b)| Formula::Bit(a, b)),
        (term(), term(), term()).prop_map(|(a, b, c)| Formula::Plus(a, b, c)),
    ]
}

fn formula() -> impl Strategy<Value = Formula> {
    atom().prop_recursive(4, 24, 3, |inner| {
        let var = prop::sample::select(vec!["x", "y", "z"]);
        prop_oneof![
            inner.clone().prop_map(Formula::not),
            prop::collection::vec(inner.clone(), 2..=3).prop_map(Formula::And),
            prop::collection::vec(inner.clone(), 2..=3).prop_map(Formula::Or),
            (var.clone(), inner.clone()).prop_map(|(v, f)| Formula::exists(v, f)),
            (var, inner).prop_map(|(v, f)| Formula::forall(v, f)),
        ]
    })
}

// Gives every binder a name of its own, so no quantifier shadows another.
fn distinct_binders(f: &Formula, next: &mut usize, scope: &[(String, String)]) -> Formula {
    let rename_term = |t: &Term| match t.as_var() {
        Some(v) => match scope.iter().rev().find(|(old, _)| old == v) {
            Some((_, new)) => Term::var(new),
            None => t.clone(),
        },
        None => t.clone(),
    };
    let rec = |g: &Formula, next: &mut usize| distinct_binders(g, next, scope);
    match f {
        Formula::True | Formula::False => f.clone(),
        Formula::Letter(c, t) => Formula::Letter(*c, rename_term(t)),
        Formula::Eq(a, b) => Formula::Eq(rename_term(a), rename_term(b)),
        Formula::Lt(a, b) => Formula::Lt(rename_term(a), rename_term(b)),
        Formula::Bit(a, b) => Formula::Bit(rename_term(a), rename_term(b)),
        Formula::Plus(a, b, c) => Formula::Plus(rename_term(a), rename_term(b), rename_term(c)),
        Formula::Not(g) => Formula::not(rec(g, next)),
        Formula::And(gs) => Formula::And(gs.iter().map(|g| rec(g, next)).collect()),
        Formula::Or(gs) => Formula::Or(gs.iter().map(|g| rec(g, next)).collect()),
        Formula::Exists(v, g) | Formula::Forall(v, g) => {
            *next += 1;
            let fresh = format!("v{next}");
            let mut inner = scope.to_vec();
            inner.push((v.clone(), fresh.clone()));
            let body = distinct_binders(g, next, &inner);
            if matches!(f, Formula::Exists(..)) {
                Formula::exists(&fresh, body)
            } else {
                Formula::forall(&fresh, body)
            }
        }
        Formula::Lindstrom(_) => f.clone(),
    }
}

fn bounded_string(max_blocks: usize, max_unit: usize) -> impl Strategy<Value = Vec<bool>> {
    let block = (prop::collection::vec(any::<bool>(), 1..=max_unit), 0usize..6);
    prop::collection::vec(block, 1..=max_blocks).prop_map(|blocks| {
        let mut out = Vec::new();
        for (unit, reps) in blocks {
            for _ in 0..reps {
                out.extend_from_slice(&unit);
            }
        }
        out
    })
}

fn random_dfa() -> impl Strategy<Value = Dfa> {
    (1usize..=4)
        .prop_flat_map(|n| {
            (Just(n), prop::collection::vec(0..n, 2 * n), prop::collection::vec(any::<bool>(), n))
        })
        .prop_map(|(n, delta, finals)| {
            let finals: Vec<usize> = (0..n).filter(|&q| finals[q]).collect();
            Dfa::from_fn(ab(), n, 0, &finals, |q, a| delta[2 * q + a]).unwrap()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn print_then_parse_is_identity(f in formula()) {
        let f = distinct_binders(&f, &mut 0, &[]);
        let back = parse_formula(&f.to_string(), &ab()).unwrap();
        prop_assert_eq!(back, f);
    }

    #[test]
    fn bounded_closure_under_and_or(u in bounded_string(2, 2), w in bounded_string(2, 2)) {
        let n = u.len().min(w.len());
        let (u, w) = (&u[..n], &w[..n]);
        // Truncation may add a block; measure what each string actually needs.
        for m in 1..=2 {
            for m2 in 1..=2 {
                let (Some((l, _)), Some((l2, _))) = (min_blocks(u, m), min_blocks(w, m2)) else { continue };
                prop_assert_eq!(check_lemma_lm(u, l, m, w, l2, m2), Ok(true));
            }
        }
    }

    #[test]
    fn complement_keeps_bounds(u in bounded_string(3, 3), m in 1usize..=3) {
        let (l, _) = min_blocks(&u, m).unwrap();
        let not_u = bitwise(BitOp::Not, &u, &[]).unwrap();
        prop_assert!(lm_bounded(&not_u, l, m).is_some());
    }

    #[test]
    fn minimization_preserves_language(d in random_dfa()) {
        let m = d.minimize();
        prop_assert!(m.state_count() <= d.state_count());
        for w in ab().words_up_to(8) {
            prop_assert_eq!(m.accepts(&w), d.accepts(&w));
        }
        prop_assert_eq!(m.minimize().state_count(), m.state_count());
    }

    #[test]
    fn products_follow_membership(x in random_dfa(), y in random_dfa()) {
        for (op, f) in [(BoolOp::And, (|a, b| a && b) as fn(bool, bool) -> bool), (BoolOp::Or, |a, b| a || b), (BoolOp::Diff, |a, b| a && !b)] {
            let p = product(&x, &y, op).unwrap();
            for w in ab().words_up_to(8) {
                prop_assert_eq!(p.accepts(&w), f(x.accepts(&w), y.accepts(&w)));
            }
        }
    }

    #[test]
    fn subset_construction_preserves_language(
        edges in prop::collection::vec((0usize..4, 0usize..2, 0usize..4), 0..12),
        finals in prop::collection::vec(any::<bool>(), 4),
    ) {
        let mut nfa = Nfa::new(ab(), 4);
        for (q, a, r) in edges {
            nfa.add_transition(q, a, r).unwrap();
        }
        nfa.set_initial(0).unwrap();
        for (q, &f) in finals.iter().enumerate() {
            nfa.set_final(q, f).unwrap();
        }
        let d = subset_construction(&nfa);
        for w in ab().words_up_to(7) {
            prop_assert_eq!(d.accepts(&w), nfa.accepts(&w));
        }
    }

    #[test]
    fn cyk_matches_derivations_on_random_grammars(
        rules in prop::collection::vec((0usize..3, prop::collection::vec(0usize..5, 1..=3)), 1..8),
    ) {
        // Symbols 0..3 are nonterminals A, B, C; 3 and 4 are the letters a, b.
        let mut b = CfgBuilder::new("A").terminals(ab());
        for (lhs, rhs) in &rules {
            let rhs = rhs
                .iter()
                .map(|&s| if s < 3 { Symbol::N(["A", "B", "C"][s].into()) } else { Symbol::T(['a', 'b'][s - 3]) })
                .collect();
            b.rule(["A", "B", "C"][*lhs], rhs);
        }
        let g = b.build().unwrap();
        for w in ab().words_up_to(6) {
            prop_assert_eq!(g.accepts(&w), derivable(&g, &w));
        }
    }

    #[test]
    fn types_of_concatenations(u in prop::collection::vec(0usize..2, 0..7), v in prop::collection::vec(0usize..2, 0..7), k in 0usize..=2) {
        let monoid = build_type_monoid(&ab(), k).unwrap();
        let uv: Vec<usize> = u.iter().chain(&v).copied().collect();
        let t = monoid.concat(monoid.type_of(&u), monoid.type_of(&v));
        prop_assert_eq!(monoid.key(t), type_key(&uv, k, Vocabulary::WithEndpoints).unwrap());
    }
}

#[test]
fn complement_keeps_bounds_exhaustively() {
    for n in 0..=12usize {
        for code in 0u32..(1 << n) {
            let u: Vec<bool> = (0..n).map(|i| code >> i & 1 == 1).collect();
            let not_u = bitwise(BitOp::Not, &u, &[]).unwrap();
            for m in 1..=3 {
                let (l, _) = min_blocks(&u, m).unwrap();
                assert!(lm_bounded(&not_u, l, m).is_some(), "{u:?} m={m}");
            }
        }
    }
}

#[test]
fn majority_counts_positions() {
    let bodies = [
        "P_a(x)",
        "P_b(x)",
        "x = min",
        "x = max",
        "true",
        "false",
        "Ey. (y < x & P_b(y))",
        "Ay. (x < y -> P_a(y))",
        "P_a(x) | P_a(max)",
        "BIT(x, max)",
    ];
    let sigma = ab();
    for body in bodies {
        let phi = parse_formula(body, &sigma).unwrap();
        let q = parse_formula(&format!("Q[Maj] x. ({body})"), &sigma).unwrap();
        for w in sigma.words_up_to(8) {
            let word = Word::new(sigma.clone(), w).unwrap();
            let n = word.len();
            let count = (1..=n)
                .filter(|&i| eval(&phi, &word, &strlogic_core::semantics::assignment([("x", i)])).unwrap())
                .count();
            assert_eq!(eval(&q, &word, &Default::default()).unwrap(), 2 * count > n, "{body} on {word}");
        }
    }
}
