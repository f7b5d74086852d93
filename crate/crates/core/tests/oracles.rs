//! Implementations checked against the brute-force procedures in `oracle`.

use strlogic_core::corpus;
use strlogic_core::grammar::{
    dyck_grammar, exists_merge, pad_language, parse_grammar, substitution_language, Grammar, GrammarPair,
};
use strlogic_core::groupoid::{cfg_to_groupoid, groupoid_to_cfg};
use strlogic_core::language::NamedLanguage;
use strlogic_core::oracle::{
    bracketing_products, derivable, dyck_by_erasure, ef_equivalent, merge_by_splitting, pad_erased,
    substitution_by_blocks,
};
use strlogic_core::transducer::{type_key, Vocabulary};
use strlogic_core::{Alphabet, Word};

fn chars(g: &Grammar, w: &[usize]) -> Vec<char> {
    w.iter().map(|&l| g.terminals().symbol(l)).collect()
}

fn letters(g: &Grammar, w: &[char]) -> Vec<usize> {
    w.iter().map(|&c| g.terminals().index_of(c).unwrap()).collect()
}

#[test]
fn groupoid_products_match_bracketings() {
    for (name, wp) in corpus::groupoid_fixtures() {
        let g = wp.groupoid();
        for w in g.elements().words_up_to(6) {
            assert_eq!(g.all_products(&w).unwrap(), bracketing_products(g, &w), "{name} {w:?}");
        }
    }
}

#[test]
fn two_element_example_products() {
    let (_, wp) = corpus::groupoid_fixtures().remove(0);
    let g = wp.groupoid();
    assert_eq!(g.all_products(&[0, 0]).unwrap().into_iter().collect::<Vec<_>>(), [1]);
    assert_eq!(g.all_products(&[0, 0, 0]).unwrap().into_iter().collect::<Vec<_>>(), [0]);
}

#[test]
fn cyk_matches_derivations() {
    let mut grammars = corpus::unary_grammars();
    grammars.extend(corpus::roundtrip_grammars());
    let a = parse_grammar("S -> 'a'").unwrap();
    grammars.push(("merge-a".into(), exists_merge(&a, '#').unwrap()));
    grammars.push(("pad-anbn".into(), pad_language(&parse_grammar("S -> 'a' 'b' | 'a' S 'b'").unwrap(), '#').unwrap()));
    for (name, g) in &grammars {
        for w in g.terminals().words_up_to(6) {
            assert_eq!(g.accepts(&w), derivable(g, &w), "{name} {w:?}");
        }
    }
}

#[test]
fn dyck_grammar_and_recognizer_match_erasure() {
    for t in 1..=2 {
        let g = dyck_grammar(t).unwrap();
        let lang = NamedLanguage::Dyck(t);
        for w in g.terminals().words_up_to(8) {
            let expected = dyck_by_erasure(&w);
            assert_eq!(lang.contains(&w), expected, "{w:?}");
            assert_eq!(g.accepts(&w), expected, "{w:?}");
        }
    }
}

#[test]
fn dyck2_examples() {
    let lang = NamedLanguage::Dyck(2);
    let w = |s: &str| Word::parse(s, &lang.alphabet()).unwrap();
    assert!(lang.contains(w("[()]").letters()));
    assert!(!lang.contains(w("[(])").letters()));
}

#[test]
fn exists_merge_matches_splitting() {
    let single_a = parse_grammar("terminals: (a,b)\nS -> 'a'").unwrap();
    let pal = parse_grammar("S -> 'a' | 'b' | 'a' S 'a' | 'b' S 'b' | 'a' 'a' | 'b' 'b'").unwrap();
    for g1 in [&single_a, &pal] {
        let merged = exists_merge(g1, '#').unwrap();
        for w in merged.terminals().words_up_to(6) {
            let text = chars(&merged, &w);
            let expected = merge_by_splitting(&text, '#', |block| g1.accepts(&letters(g1, block)));
            assert_eq!(merged.accepts(&w), expected, "{}", text.iter().collect::<String>());
        }
    }
    let merged = exists_merge(&single_a, '#').unwrap();
    let member = |s: &str| merged.member(&Word::parse(s, merged.terminals()).unwrap()).unwrap();
    assert!(member("a#"));
    assert!(member("b#a#"));
    assert!(!member("b#"));
}

#[test]
fn padding_matches_erasure() {
    let g = parse_grammar("S -> 'a' S 'b' | 'a' 'b'").unwrap();
    let padded = pad_language(&g, '#').unwrap();
    for w in padded.terminals().words_up_to(7) {
        let text = chars(&padded, &w);
        let expected = pad_erased(&text, '#', |rest| g.accepts(&letters(&g, rest)));
        assert_eq!(padded.accepts(&w), expected, "{}", text.iter().collect::<String>());
    }
}

#[test]
fn substitution_matches_block_matching() {
    let outer = parse_grammar("terminals: (a,b)\nS -> 'a' | 'a' S | 'b' S").unwrap();
    let part = GrammarPair {
        grammar: parse_grammar("S -> '1'").unwrap(),
        complement: parse_grammar("S -> '1' '1' | '1' S").unwrap(),
    };
    let parts = [part];
    let image = substitution_language(&outer, &parts, '#', '$').unwrap();
    let sep = image.terminals().index_of('$').unwrap();
    for w in image.terminals().words_up_to(8) {
        let text = chars(&image, &w);
        let expected = substitution_by_blocks(&text, &outer, &parts, '#', '$');
        assert_eq!(image.accepts(&w), expected, "{}", text.iter().collect::<String>());
        if image.accepts(&w) {
            assert_eq!(w[0], sep);
        }
    }
}

#[test]
fn powerset_groupoid_preserves_membership() {
    for (name, g) in corpus::roundtrip_grammars() {
        let emb = cfg_to_groupoid(&g).unwrap();
        for w in g.terminals().words_up_to(6) {
            let word = Word::new(g.terminals().clone(), w.clone()).unwrap();
            assert_eq!(emb.problem.member(&emb.embed(&word)).unwrap(), g.accepts(&w), "{name} {w:?}");
        }
    }
    let dyck = dyck_grammar(1).unwrap();
    let emb = cfg_to_groupoid(&dyck).unwrap();
    let w = Word::parse("()", dyck.terminals()).unwrap();
    assert!(emb.problem.member(&emb.embed(&w)).unwrap());
}

#[test]
fn groupoid_grammar_round_trip() {
    for (name, wp) in corpus::groupoid_fixtures() {
        let g = groupoid_to_cfg(&wp).unwrap();
        for w in wp.groupoid().elements().words_up_to(6) {
            assert_eq!(g.accepts(&w), wp.accepts(&w), "{name} {w:?}");
        }
    }
}

#[test]
fn rank_types_match_ef_games() {
    let ab = Alphabet::parse("(a,b)").unwrap();
    let words: Vec<Vec<usize>> = ab.words_up_to(4).collect();
    for vocab in [Vocabulary::WithEndpoints, Vocabulary::OrderOnly] {
        for k in 0..=2 {
            let keys: Vec<_> = words.iter().map(|w| type_key(w, k, vocab).unwrap()).collect();
            for (i, u) in words.iter().enumerate() {
                for (j, v) in words.iter().enumerate().skip(i) {
                    assert_eq!(keys[i] == keys[j], ef_equivalent(u, v, k, vocab), "{vocab:?} k={k} {u:?} {v:?}");
                }
            }
        }
    }
}

#[test]
fn unary_rank_one_classes() {
    // Which a^n (n ≤ 8) share a rank-1 type with a^m, per the game.
    let a = |n: usize| vec![0; n];
    for vocab in [Vocabulary::WithEndpoints, Vocabulary::OrderOnly] {
        for n in 1..=8 {
            for m in 1..=8 {
                let same = type_key(&a(n), 1, vocab).unwrap() == type_key(&a(m), 1, vocab).unwrap();
                assert_eq!(same, ef_equivalent(&a(n), &a(m), 1, vocab), "{vocab:?} {n} {m}");
            }
        }
    }
    // With endpoints, a^3 onwards share a type; order alone merges from a^1.
    let class = |vocab| (1..=8).filter(|&n| ef_equivalent(&a(n), &a(8), 1, vocab)).collect::<Vec<_>>();
    assert_eq!(class(Vocabulary::WithEndpoints), [3, 4, 5, 6, 7, 8]);
    assert_eq!(class(Vocabulary::OrderOnly), [1, 2, 3, 4, 5, 6, 7, 8]);
}
