use std::collections::BTreeSet;

use pgroup_core::word::{
    cyclically_minimal, enumerate_words, enumerate_words_with, parse_presentation, parse_word_list, WordFilter,
};
use pgroup_core::{FreeWord, Presentation, RelatorExpr};
use proptest::prelude::*;

fn names(k: usize) -> Vec<String> {
    ["a", "b", "c", "d"][..k].iter().map(|s| s.to_string()).collect()
}

/// Every positive word of length at most `c`, filtered by checking all
/// rotations and all subwords explicitly.
fn brute_enumeration(k: u32, c: usize, p: usize, skip_powers: bool) -> BTreeSet<Vec<u32>> {
    let mut out = BTreeSet::new();
    let mut layer: Vec<Vec<u32>> = vec![vec![]];
    for _ in 0..c {
        layer = layer
            .iter()
            .flat_map(|w| (0..k).map(move |x| [w.clone(), vec![x]].concat()))
            .collect();
        for w in &layer {
            let n = w.len();
            let rotations: Vec<Vec<u32>> = (0..n).map(|r| [&w[r..], &w[..r]].concat()).collect();
            let least = rotations.iter().all(|r| w <= r);
            let forbidden = w.windows(p).any(|s| s.iter().all(|&x| x == s[0]));
            let power = (1..n).any(|d| n % d == 0 && w.chunks(d).all(|ch| ch == &w[..d]));
            if least && !forbidden && !(skip_powers && power) {
                out.insert(w.clone());
            }
        }
    }
    out
}

fn letters(words: &[FreeWord]) -> BTreeSet<Vec<u32>> {
    words.iter().map(|w| w.letters().unwrap()).collect()
}

#[test]
fn enumeration_matches_brute_force() {
    for k in 1..=3 {
        for c in 1..=6 {
            for p in [2, 3, 5] {
                let list = enumerate_words(k, c, p);
                assert_eq!(list.len(), letters(&list).len());
                assert_eq!(letters(&list), brute_enumeration(k, c, p as usize, true), "{k} {c} {p}");
                let stated = enumerate_words_with(k, c, p, WordFilter::stated_rules());
                assert_eq!(letters(&stated), brute_enumeration(k, c, p as usize, false));
            }
        }
    }
}

#[test]
fn no_two_enumerated_words_are_rotations() {
    for k in 1..=3 {
        for c in 1..=6 {
            let list = enumerate_words_with(k, c, 5, WordFilter::stated_rules());
            let mut seen = BTreeSet::new();
            for w in &list {
                let w = w.letters().unwrap();
                let least = (0..w.len()).map(|r| [&w[r..], &w[..r]].concat()).min().unwrap();
                assert!(seen.insert(least), "two rotations of {w:?}");
            }
        }
    }
}

#[test]
fn enumeration_order_is_length_then_lexicographic() {
    let list = enumerate_words(3, 6, 5);
    let keys: Vec<(usize, Vec<u32>)> = list.iter().map(|w| (w.length(), w.letters().unwrap())).collect();
    assert!(keys.windows(2).all(|w| w[0] < w[1]));
}

#[test]
fn small_enumerations() {
    let render = |ws: Vec<FreeWord>, k| ws.iter().map(|w| w.render(&names(k))).collect::<Vec<_>>();
    let one = enumerate_words_with(1, 3, 5, WordFilter::stated_rules());
    assert_eq!(render(one, 1), ["a", "a^2", "a^3"]);
    let two = enumerate_words_with(2, 2, 5, WordFilter::stated_rules());
    assert_eq!(render(two, 2), ["a", "b", "a^2", "a*b", "b^2"]);
    let six = enumerate_words(2, 6, 5);
    assert!(six.contains(&FreeWord::from_letters(&[0, 0, 0, 0, 1, 1])));
    assert!(!six.contains(&FreeWord::from_letters(&[0, 0, 0, 0, 0, 1])));
    assert!(cyclically_minimal(&FreeWord::from_letters(&[0, 1, 0, 1])).unwrap());
    assert!(!cyclically_minimal(&FreeWord::from_letters(&[1, 0])).unwrap());
}

#[test]
fn relator_words_of_r25_are_enumerated() {
    let text = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/../../data/r25_u.words")).unwrap();
    let u = parse_word_list(&text, &names(2)).unwrap();
    assert_eq!(u.len(), 31);
    let all: BTreeSet<FreeWord> = enumerate_words(2, 12, 5).into_iter().collect();
    for w in &u {
        assert!(all.contains(w), "{}", w.render(&names(2)));
    }
    let pres = parse_presentation(
        &std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/../../data/r25.pres")).unwrap(),
    )
    .unwrap();
    let powers: Vec<FreeWord> = pres.relators().iter().map(|r| r.flatten()).collect();
    let expected: Vec<FreeWord> = u.iter().map(|w| w.pow(5)).collect();
    assert_eq!(powers, expected);
}

fn expr(k: u32) -> impl Strategy<Value = RelatorExpr> {
    let leaf = (0..k).prop_map(RelatorExpr::gen);
    leaf.prop_recursive(4, 24, 3, |inner| {
        prop_oneof![
            prop::collection::vec(inner.clone(), 1..4).prop_map(RelatorExpr::product),
            inner.clone().prop_map(RelatorExpr::inverse),
            (inner.clone(), -6i64..7).prop_map(|(x, e)| RelatorExpr::power(x, e)),
            (inner.clone(), inner).prop_map(|(x, y)| RelatorExpr::commutator(x, y)),
        ]
    })
}

fn free_word(k: u32) -> impl Strategy<Value = FreeWord> {
    prop::collection::vec((0..k, -4i32..5), 0..8).prop_map(FreeWord::from_syllables)
}

proptest! {
    #[test]
    fn render_then_parse_preserves_presentations(rels in prop::collection::vec(expr(3), 0..4)) {
        let pres = Presentation::new(names(3), rels).unwrap();
        let once = parse_presentation(&pres.render()).unwrap();
        let twice = parse_presentation(&once.render()).unwrap();
        prop_assert_eq!(&once, &twice);
        prop_assert_eq!(once.render(), twice.render());
        for (a, b) in pres.relators().iter().zip(once.relators()) {
            prop_assert_eq!(a.flatten(), b.flatten());
        }
    }

    #[test]
    fn flatten_is_a_homomorphism(x in expr(3), y in expr(3)) {
        let xy = RelatorExpr::product(vec![x.clone(), y.clone()]);
        prop_assert_eq!(xy.flatten(), x.flatten().mul(&y.flatten()));
        let inv = RelatorExpr::inverse(x.clone());
        prop_assert!(inv.flatten().mul(&x.flatten()).is_identity());
    }

    #[test]
    fn free_words_are_freely_reduced(w in free_word(3), v in free_word(3)) {
        for s in [&w, &v, &w.mul(&v)] {
            prop_assert!(s.syllables().windows(2).all(|p| p[0].0 != p[1].0));
            prop_assert!(s.syllables().iter().all(|&(_, e)| e != 0));
        }
        prop_assert_eq!(w.mul(&v).inverse(), v.inverse().mul(&w.inverse()));
        prop_assert_eq!(w.pow(3), w.mul(&w).mul(&w));
    }

    #[test]
    fn word_lists_round_trip(ws in prop::collection::vec(free_word(3), 0..6)) {
        let ws: Vec<FreeWord> = ws.into_iter().filter(|w| !w.is_identity()).collect();
        let text = pgroup_core::word::render_word_list(&ws, &names(3));
        prop_assert_eq!(parse_word_list(&text, &names(3)).unwrap(), ws);
    }
}

#[test]
fn grammar_examples() {
    let p = parse_presentation("gens a,b,c,d; rel [b,a]*[c,d];").unwrap();
    assert_eq!(p.rank(), 4);
    let b = RelatorExpr::gen;
    assert_eq!(
        p.relators(),
        &[RelatorExpr::product(vec![
            RelatorExpr::commutator(b(1), b(0)),
            RelatorExpr::commutator(b(2), b(3)),
        ])]
    );
    let err = parse_presentation("gens a;\nrel a*;").unwrap_err().to_string();
    assert!(err.contains("2:"), "{err}");
    assert!(parse_presentation("gens a; rel b;").is_err());
    assert!(parse_presentation("gens a,a;").is_err());
}
