use std::cmp::Ordering;

use proptest::prelude::*;
use radix_automata::dfa::words_up_to;
use radix_automata::minimal::{swap_trichotomy, Swap};
use radix_automata::oracle::{oracle_x, Oracle};
use radix_automata::successor::{
    length_preserving_successor_transducer, pad_automaton, padded_length_gap, PADDING_SYMBOL,
};
use radix_automata::thin::{bgeq_ufa, x_dfa};
use radix_automata::{radix_cmp, Dfa, Error, Letter, Nfa, OrderedAlphabet, ProductMode};

fn dfa_with(max_states: usize, max_letters: usize) -> impl Strategy<Value = Dfa> {
    (1..=max_states, 1..=max_letters).prop_flat_map(|(n, k)| {
        (
            prop::collection::vec(0..n, n * k),
            prop::collection::vec(any::<bool>(), n),
        )
            .prop_map(move |(delta, acc)| {
                Dfa::from_fn(
                    OrderedAlphabet::digits(k),
                    n,
                    0,
                    |q| acc[q],
                    |q, a| delta[q * k + a],
                )
            })
    })
}

fn dfa() -> impl Strategy<Value = Dfa> {
    dfa_with(5, 3)
}

fn nfa() -> impl Strategy<Value = Nfa> {
    (1..=5usize, 1..=2usize).prop_flat_map(|(n, k)| {
        (
            prop::collection::vec((0..n, 0..k, 0..n), 0..=2 * n * k),
            prop::collection::vec(any::<bool>(), n),
        )
            .prop_map(move |(moves, acc)| {
                let accepting = (0..n).filter(|&q| acc[q]);
                Nfa::new(OrderedAlphabet::digits(k), n, 0, accepting, moves).unwrap()
            })
    })
}

fn word(k: usize, max_len: usize) -> impl Strategy<Value = Vec<Letter>> {
    prop::collection::vec(0..k, 0..=max_len)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn radix_order_is_length_then_lexicographic(
        u in word(3, 6), v in word(3, 6), w in word(3, 6)
    ) {
        let uv = radix_cmp(&u, &v);
        prop_assert_eq!(uv, u.len().cmp(&v.len()).then_with(|| u.cmp(&v)));
        prop_assert_eq!(uv.reverse(), radix_cmp(&v, &u));
        prop_assert_eq!(uv == Ordering::Equal, u == v);
        if uv != Ordering::Greater && radix_cmp(&v, &w) != Ordering::Greater {
            prop_assert_ne!(radix_cmp(&u, &w), Ordering::Greater);
        }
    }

    #[test]
    fn trace_has_one_state_per_prefix(d in dfa(), w in word(3, 10)) {
        let w: Vec<Letter> = w.into_iter().filter(|&a| a < d.alphabet().len()).collect();
        for q in 0..d.state_count() {
            let t = d.trace(q, &w);
            prop_assert_eq!(t.len(), w.len() + 1);
            prop_assert_eq!(t.states()[0], q);
            prop_assert_eq!(t.last(), d.run_from(q, &w));
        }
    }

    #[test]
    fn minimize_keeps_the_language(d in dfa()) {
        let m = d.minimize();
        prop_assert!(m.state_count() <= d.state_count());
        prop_assert_eq!(m.minimize().state_count(), m.state_count());
        for w in words_up_to(d.alphabet().len(), 6) {
            prop_assert_eq!(m.accepts(&w), d.accepts(&w));
        }
    }

    #[test]
    fn unambiguity_matches_run_counts(n in nfa()) {
        match n.ambiguity_witness() {
            Some(w) => prop_assert!(n.accepting_run_count(&w) >= 2),
            None => {
                for w in words_up_to(n.alphabet().len(), 10) {
                    prop_assert!(n.accepting_run_count(&w) <= 1);
                }
            }
        }
        prop_assert_eq!(n.is_unambiguous(), n.ambiguity_witness().is_none());
    }

    #[test]
    fn product_is_pointwise(a in dfa_with(4, 2), b in dfa_with(4, 2)) {
        match (a.product(&b, ProductMode::Intersection), a.product(&b, ProductMode::Union)) {
            (Ok(i), Ok(u)) => {
                for w in words_up_to(a.alphabet().len(), 6) {
                    prop_assert_eq!(i.accepts(&w), a.accepts(&w) && b.accepts(&w));
                    prop_assert_eq!(u.accepts(&w), a.accepts(&w) || b.accepts(&w));
                }
            }
            (Err(Error::AlphabetMismatch), Err(Error::AlphabetMismatch)) => {
                prop_assert_ne!(a.alphabet(), b.alphabet());
            }
            other => prop_assert!(false, "unexpected {:?}", other),
        }
    }

    #[test]
    fn swap_trichotomy_orders_the_three_words(
        x in word(3, 3), y in word(3, 4), z in word(3, 3), uv in prop::collection::vec((0..3usize, 0..3usize), 0..4)
    ) {
        let (u, v): (Vec<Letter>, Vec<Letter>) = uv.into_iter().unzip();
        let cat = |parts: &[&[Letter]]| parts.concat();
        let first = cat(&[&x, &u, &u, &y, &z]);
        let middle = cat(&[&x, &u, &y, &v, &z]);
        let third = cat(&[&x, &y, &v, &v, &z]);
        let expected = match first.cmp(&middle) {
            Ordering::Less => Swap::FirstSmaller,
            Ordering::Greater => Swap::ThirdSmaller,
            Ordering::Equal => Swap::AllEqual,
        };
        prop_assert_eq!(swap_trichotomy(&x, &u, &y, &v, &z).unwrap(), expected);
        // The middle word always lies between the other two.
        let lo = first.clone().min(third.clone());
        let hi = first.max(third);
        prop_assert!(lo <= middle && middle <= hi);
    }

    #[test]
    fn x_holds_exactly_the_missing_lengths(d in dfa(), seed in word(3, 30)) {
        let x = x_dfa(&d);
        let k = d.alphabet().len();
        for (len, missing) in oracle_x(&d, 30).into_iter().enumerate() {
            let w: Vec<Letter> = seed.iter().map(|&a| a % k).chain(std::iter::repeat(0)).take(len).collect();
            prop_assert_eq!(x.accepts(&w), missing, "length {}", len);
        }
    }

    #[test]
    fn successor_domain_and_bgeq_partition_words(d in dfa_with(4, 2)) {
        let lp = length_preserving_successor_transducer(&d);
        let b = bgeq_ufa(&d);
        let mut o = Oracle::new(&d);
        for w in words_up_to(d.alphabet().len(), 7) {
            let mapped = lp.apply(&w).unwrap().is_some();
            prop_assert_ne!(mapped, b.accepts(&w), "{:?}", w);
            prop_assert_eq!(mapped, o.least_above(&w).is_some());
        }
    }

    #[test]
    fn padding_closes_the_length_gap(d in dfa(), u in word(3, 8)) {
        let u: Vec<Letter> = u.into_iter().filter(|&a| a < d.alphabet().len()).collect();
        let padded = pad_automaton(&d, PADDING_SYMBOL).unwrap();
        match padded_length_gap(&padded, &u) {
            Ok(gap) => {
                prop_assert!(gap.within_bound);
                prop_assert!(gap.padded_matches);
                prop_assert!(d.accepts(&gap.successor));
            }
            Err(Error::Maximal) => {}
            Err(e) => prop_assert!(false, "{}", e),
        }
    }
}
