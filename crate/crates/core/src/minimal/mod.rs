//! Smallest and largest words of each length: `S(L)` and `B(L)`.

mod cover;
mod cover_dfa;
mod factor;
mod lasso;

use std::collections::HashMap;

use crate::dfa::{Dfa, State};

pub use cover::{
    are_cycle_disjoint, cycle_states, is_cycle_disjoint_cover, resolve_overlap, simplify_tuples,
    uncovered_length, CoverBounds, Resolution, TupleCover, Which,
};
pub use cover_dfa::{build_cover_dfa, counter_threshold};
pub use factor::{
    extract_pump, factorize, pump_n, swap_trichotomy, FactorPart, Factorization, Pump, Swap,
};
pub use lasso::{LassoNfa, LassoTriple};

/// How to build the automaton for `S(L)`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum SmallestStrategy {
    /// Tuple cover followed by the counter/activity product.
    #[default]
    Cover,
    /// Subset tracking of the states reached by smaller words.
    Naive,
}

/// `S(L)` by pairing the current state with the set of states reached by
/// strictly smaller words of the same length. A word is smallest iff it is
/// accepted and none of those states accepts.
pub fn smallest_words_dfa_naive(dfa: &Dfa) -> Dfa {
    let n = dfa.state_count();
    let k = dfa.alphabet().len();
    let words = n.div_ceil(64).max(1);
    type Key = (State, Vec<u64>);
    let start: Key = (dfa.initial(), vec![0; words]);
    let mut index: HashMap<Key, State> = HashMap::from([(start.clone(), 0)]);
    let mut keys = vec![start];
    let mut delta: Vec<Vec<State>> = Vec::new();
    let mut i = 0;
    while i < keys.len() {
        let (q, set) = keys[i].clone();
        let mut image = vec![0u64; words];
        for p in (0..n).filter(|&p| set[p / 64] >> (p % 64) & 1 == 1) {
            for a in 0..k {
                let t = dfa.next(p, a);
                image[t / 64] |= 1 << (t % 64);
            }
        }
        let mut row = Vec::with_capacity(k);
        let mut smaller = image;
        for a in 0..k {
            let key = (dfa.next(q, a), smaller.clone());
            let id = *index.entry(key.clone()).or_insert_with(|| {
                keys.push(key);
                keys.len() - 1
            });
            row.push(id);
            let t = dfa.next(q, a);
            smaller[t / 64] |= 1 << (t % 64);
        }
        delta.push(row);
        i += 1;
    }
    let accepting: Vec<State> = (0..keys.len())
        .filter(|&s| {
            let (q, set) = &keys[s];
            dfa.is_accepting(*q)
                && !(0..n).any(|p| set[p / 64] >> (p % 64) & 1 == 1 && dfa.is_accepting(p))
        })
        .collect();
    Dfa::new(dfa.alphabet().clone(), 0, accepting, delta).expect("construction is complete")
}

/// Minimal DFA for `S(L(dfa))` built from a tuple cover of the minimized
/// input.
pub fn smallest_words_dfa(dfa: &Dfa) -> Dfa {
    smallest_words_dfa_with(dfa, SmallestStrategy::Cover)
}

pub fn smallest_words_dfa_with(dfa: &Dfa, strategy: SmallestStrategy) -> Dfa {
    let min = dfa.minimize();
    match strategy {
        SmallestStrategy::Naive => smallest_words_dfa_naive(&min).minimize(),
        SmallestStrategy::Cover => {
            let cover = simplify_tuples(&min.padded_to(3));
            build_cover_dfa(&cover)
                .expect("simplified covers are valid")
                .minimize()
        }
    }
}

/// Minimal DFA for `B(L(dfa))`: smallest words under the reversed order.
pub fn largest_words_dfa(dfa: &Dfa) -> Dfa {
    largest_words_dfa_with(dfa, SmallestStrategy::Cover)
}

pub fn largest_words_dfa_with(dfa: &Dfa, strategy: SmallestStrategy) -> Dfa {
    let reversed = dfa
        .reorder(&dfa.alphabet().reversed())
        .expect("same symbols");
    smallest_words_dfa_with(&reversed, strategy)
        .reorder(dfa.alphabet())
        .expect("same symbols")
        .minimize()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alphabet::OrderedAlphabet;
    use crate::dfa::words_up_to;

    fn bin() -> OrderedAlphabet {
        OrderedAlphabet::digits(2)
    }

    fn zeros(len: usize) -> Vec<usize> {
        vec![0; len]
    }

    #[test]
    fn smallest_of_everything_is_zero_star() {
        let all = Dfa::universal(bin());
        for strategy in [SmallestStrategy::Naive, SmallestStrategy::Cover] {
            let s = smallest_words_dfa_with(&all, strategy);
            for w in words_up_to(2, 8) {
                assert_eq!(s.accepts(&w), w == zeros(w.len()));
            }
        }
    }

    #[test]
    fn smallest_of_one_then_anything() {
        let d = Dfa::new(bin(), 0, [1], vec![vec![2, 1], vec![1, 1], vec![2, 2]]).unwrap();
        for strategy in [SmallestStrategy::Naive, SmallestStrategy::Cover] {
            let s = smallest_words_dfa_with(&d, strategy);
            for w in words_up_to(2, 8) {
                let expected = !w.is_empty() && w[0] == 1 && w[1..].iter().all(|&a| a == 0);
                assert_eq!(s.accepts(&w), expected, "{w:?}");
            }
        }
    }

    #[test]
    fn empty_language() {
        let s = smallest_words_dfa(&Dfa::empty(bin()));
        assert!(s.is_empty());
        assert_eq!(s.state_count(), 1);
    }

    #[test]
    fn largest_of_everything_is_one_star() {
        let b = largest_words_dfa(&Dfa::universal(bin()));
        for w in words_up_to(2, 8) {
            assert_eq!(b.accepts(&w), w.iter().all(|&a| a == 1));
        }
    }
}
