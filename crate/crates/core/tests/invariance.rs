//! Link invariance of the homology, on small random braids.

use braidhom_core::coxeter::{BraidWord, Letter};
use braidhom_core::invariants::{markov_trace_value, x_invariant, y_invariant, XSeries};
use braidhom_core::homfly::homfly_oracle;
use braidhom_core::{Engine, Tables};
use proptest::prelude::*;

const D: i64 = 5;

fn word(rank: usize, max_len: usize) -> impl Strategy<Value = BraidWord> {
    prop::collection::vec((0..rank, prop::bool::ANY), 0..=max_len)
        .prop_map(|v| BraidWord::new(v.into_iter().map(|(g, p)| Letter::new(g, if p { 1 } else { -1 })).collect()))
}

fn x(e: &Engine, b: &BraidWord) -> XSeries {
    x_invariant(e, b, D).unwrap()
}

#[test]
fn closed_form_values() {
    let a1 = Engine::type_a(2).unwrap();
    // the Hopf link and its mirror are different
    assert_ne!(x(&a1, &"1 1".parse().unwrap()).series, x(&a1, &"-1 -1".parse().unwrap()).series);
    // the trefoil has three generators in homological degree zero
    let t = a1.table(&"1 1 1".parse().unwrap(), D).unwrap();
    assert_eq!(t.total(), 3);
}

#[test]
fn y_reproduces_the_polynomial() {
    let a1 = Engine::type_a(2).unwrap();
    for b in ["1 1", "1 1 1", "-1 -1 -1", "1 1 1 1"] {
        let b: BraidWord = b.parse().unwrap();
        let y = y_invariant(&a1, &b, 8).unwrap();
        assert_eq!(y.series, homfly_oracle(&b, 2, 100_000).unwrap().expand(16), "{b}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10))]

    #[test]
    fn coefficients_are_nonnegative(b in word(2, 4)) {
        let e = Engine::type_a(3).unwrap();
        prop_assert!(x(&e, &b).series.terms().all(|(_, c)| *c > 0));
    }

    #[test]
    fn rotation(b in word(2, 4), k in 0usize..4) {
        let e = Engine::type_a(3).unwrap();
        prop_assert_eq!(x(&e, &b), x(&e, &b.rotate(k)));
    }

    #[test]
    fn free_reduction(b in word(2, 2), bp in word(2, 2), g in 0usize..2, s in prop::bool::ANY) {
        let e = Engine::type_a(3).unwrap();
        let l = Letter::new(g, if s { 1 } else { -1 });
        let padded = b.concat(&BraidWord::new(vec![l, l.inverse()])).concat(&bp);
        prop_assert_eq!(x(&e, &padded), x(&e, &b.concat(&bp)));
        prop_assert_eq!(padded.free_reduce(), b.concat(&bp).free_reduce());
    }

    #[test]
    fn braid_relation(b in word(2, 2), bp in word(2, 1)) {
        let e = Engine::type_a(3).unwrap();
        let lhs = b.concat(&"1 2 1".parse().unwrap()).concat(&bp);
        let rhs = b.concat(&"2 1 2".parse().unwrap()).concat(&bp);
        prop_assert_eq!(x(&e, &lhs), x(&e, &rhs));
    }

    #[test]
    fn stabilization(b in word(1, 4), s in prop::bool::ANY) {
        let small = Engine::type_a(2).unwrap();
        let big = Engine::type_a(3).unwrap();
        let sign = if s { 1 } else { -1 };
        prop_assert_eq!(x(&small, &b), x(&big, &b.stabilize(1, sign)));
    }

    #[test]
    fn trace_is_conjugation_invariant_in_b2(b in word(2, 2), bp in word(2, 2)) {
        let e = Engine::from_tag("B2").unwrap();
        let lhs = markov_trace_value(&e, &b.concat(&bp), 4).unwrap();
        let rhs = markov_trace_value(&e, &bp.concat(&b), 4).unwrap();
        prop_assert_eq!(lhs, rhs);
    }
}
