mod common;

use common::{naive_eval, random_graph, random_permutation, random_sentence, rng};
use doublejump::logic::{check, parse, Formula};
use proptest::prelude::*;

#[test]
fn checker_agrees_with_naive_evaluator() {
    let mut r = rng(2024);
    let mut disagreements = Vec::new();
    let mut truth_counts = [0usize; 2];
    for case in 0..200 {
        let n = 1 + case % 8;
        let g = random_graph(&mut r, n, 0.4);
        let s = random_sentence(&mut r, 3, if n <= 6 { 2 } else { 1 });
        assert!(s.quantifier_rank() <= 3);
        let fast = check(&g, &s).unwrap();
        truth_counts[fast as usize] += 1;
        if fast != naive_eval(&g, &s) {
            disagreements.push(format!("{:?} :: {s}", g.edges()));
        }
    }
    assert!(disagreements.is_empty(), "{disagreements:#?}");
    assert!(
        truth_counts[0] > 20 && truth_counts[1] > 20,
        "degenerate battery {truth_counts:?}"
    );
}

#[test]
fn checker_agrees_on_set_heavy_sentences() {
    let mut r = rng(99);
    for _ in 0..150 {
        let g = random_graph(&mut r, 5, 0.5);
        let s = random_sentence(&mut r, 3, 3);
        assert_eq!(
            check(&g, &s).unwrap(),
            naive_eval(&g, &s),
            "{:?} :: {s}",
            g.edges()
        );
    }
}

#[test]
fn first_order_truth_is_isomorphism_invariant() {
    let mut r = rng(5);
    for _ in 0..200 {
        let n = 2 + (r.random_range(0..12usize));
        let g = random_graph(&mut r, n, 0.3);
        let s = random_sentence(&mut r, 3, 0);
        let perm = random_permutation(&mut r, n);
        assert_eq!(
            check(&g, &s).unwrap(),
            check(&g.relabel(&perm), &s).unwrap(),
            "{s}"
        );
    }
}

use rand::Rng;

proptest! {
    #[test]
    fn serialize_then_parse_is_identity(seed in any::<u64>(), rank in 0usize..5, sets in 0usize..3) {
        let mut r = rng(seed);
        let s = random_sentence(&mut r, rank, sets);
        let text = s.to_string();
        let back = parse(&text).unwrap();
        prop_assert_eq!(&back, &s);
        prop_assert_eq!(back.to_string(), text);
    }

    #[test]
    fn parse_ignores_whitespace_layout(seed in any::<u64>()) {
        let mut r = rng(seed);
        let s = random_sentence(&mut r, 3, 1);
        let text = s.to_string();
        let spaced = text.replace(' ', "  \n ").replace('(', "( ");
        prop_assert_eq!(parse(&spaced).unwrap(), s);
    }
}

#[test]
fn quantifier_rank_examples() {
    assert_eq!(parse("forall x. x = x").unwrap().quantifier_rank(), 1);
    assert_eq!(Formula::eq("x", "y").quantifier_rank(), 0);
    let s = parse("forall x. forall y. exists z. exists w. x~z & z~w & w~y").unwrap();
    assert_eq!(s.quantifier_rank(), 4);
}
