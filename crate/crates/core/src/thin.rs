//! Thin languages, their comparison automata `L≤` and `L≥`, the length
//! complement `X(L)` and the recognizer for `B≥(L)`.

use std::collections::{HashMap, HashSet, VecDeque};

use crate::alphabet::Letter;
use crate::dfa::{Dfa, State};
use crate::error::{Error, Result};
use crate::minimal::{largest_words_dfa_with, SmallestStrategy};
use crate::nfa::Nfa;

/// Whether `L(dfa)` has at most one word of each length: explores pairs of
/// runs on equal-length words and looks for two different accepted words.
pub fn is_thin(dfa: &Dfa) -> bool {
    thinness_witness(dfa).is_none()
}

/// Two distinct accepted words of the same length, if any.
pub fn thinness_witness(dfa: &Dfa) -> Option<(Vec<Letter>, Vec<Letter>)> {
    type Node = (State, State, bool);
    let live = dfa.live_states();
    let start: Node = (dfa.initial(), dfa.initial(), false);
    let mut parent: HashMap<Node, Option<(Node, Letter, Letter)>> = HashMap::from([(start, None)]);
    let mut queue = VecDeque::from([start]);
    while let Some(node @ (p, q, differ)) = queue.pop_front() {
        if differ && dfa.is_accepting(p) && dfa.is_accepting(q) {
            let (mut u, mut v) = (Vec::new(), Vec::new());
            let mut cur = node;
            while let Some((prev, a, b)) = parent[&cur] {
                u.push(a);
                v.push(b);
                cur = prev;
            }
            u.reverse();
            v.reverse();
            return Some((u, v));
        }
        for a in dfa.alphabet().letters() {
            for b in dfa.alphabet().letters() {
                // Before the words differ, ordered pairs suffice.
                if !differ && a > b {
                    continue;
                }
                let next = (dfa.next(p, a), dfa.next(q, b), differ || a != b);
                if !live[next.0] || !live[next.1] {
                    continue;
                }
                if let std::collections::hash_map::Entry::Vacant(e) = parent.entry(next) {
                    e.insert(Some((node, a, b)));
                    queue.push_back(next);
                }
            }
        }
    }
    None
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Side {
    Below,
    Above,
}

/// State `(q, f)` is numbered `2q + f`.
fn comparison_ufa(dfa: &Dfa, side: Side) -> Result<Nfa> {
    if !is_thin(dfa) {
        return Err(Error::NotThin);
    }
    let n = dfa.state_count();
    let k = dfa.alphabet().len();
    let mut transitions = Vec::new();
    for q in 0..n {
        for a in 0..k {
            transitions.push((2 * q, a, 2 * dfa.next(q, a)));
            for b in 0..k {
                let branch = match side {
                    Side::Below => a < b,
                    Side::Above => a > b,
                };
                if branch {
                    transitions.push((2 * q, a, 2 * dfa.next(q, b) + 1));
                }
                transitions.push((2 * q + 1, a, 2 * dfa.next(q, b) + 1));
            }
        }
    }
    let accepting = dfa.accepting_states().flat_map(|q| [2 * q, 2 * q + 1]);
    Nfa::new(
        dfa.alphabet().clone(),
        2 * n,
        2 * dfa.initial(),
        accepting,
        transitions,
    )
}

/// UFA with `2n` states for `{v : ∃u ∈ L, |u| = |v|, v ≤ u}`.
pub fn thin_leq_ufa(dfa: &Dfa) -> Result<Nfa> {
    comparison_ufa(dfa, Side::Below)
}

/// UFA with `2n` states for `{v : ∃u ∈ L, |u| = |v|, v ≥ u}`.
pub fn thin_geq_ufa(dfa: &Dfa) -> Result<Nfa> {
    comparison_ufa(dfa, Side::Above)
}

/// DFA for the words whose length is not the length of any word of `L`.
///
/// All letters act alike once labels are forgotten, so the subset
/// construction of the unary projection is a single sequence of state sets
/// `S_0, S_1, …` that becomes periodic; each distinct set is one state.
pub fn x_dfa(dfa: &Dfa) -> Dfa {
    let n = dfa.state_count();
    let mut seen: HashMap<Vec<State>, usize> = HashMap::new();
    let mut sets: Vec<Vec<State>> = Vec::new();
    let mut cur = vec![dfa.initial()];
    let back = loop {
        if let Some(&i) = seen.get(&cur) {
            break i;
        }
        seen.insert(cur.clone(), sets.len());
        sets.push(cur.clone());
        let mut next: Vec<State> = cur
            .iter()
            .flat_map(|&q| dfa.alphabet().letters().map(move |a| dfa.next(q, a)))
            .collect::<HashSet<_>>()
            .into_iter()
            .collect();
        next.sort_unstable();
        debug_assert!(next.len() <= n);
        cur = next;
    };
    let m = sets.len();
    Dfa::from_fn(
        dfa.alphabet().clone(),
        m,
        0,
        |i| sets[i].iter().all(|&q| !dfa.is_accepting(q)),
        |i, _| if i + 1 < m { i + 1 } else { back },
    )
}

/// UFA for `B≥(L)`: the `L≥` automaton of `B(L)` for lengths that occur in
/// `L`, united with `X(L)` for the others.
pub fn bgeq_ufa(dfa: &Dfa) -> Nfa {
    bgeq_ufa_with(dfa, SmallestStrategy::Cover)
}

pub fn bgeq_ufa_with(dfa: &Dfa, strategy: SmallestStrategy) -> Nfa {
    let largest = largest_words_dfa_with(dfa, strategy);
    thin_geq_ufa(&largest)
        .expect("largest words form a thin language")
        .union(&x_dfa(dfa).to_nfa())
        .expect("same alphabet")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alphabet::OrderedAlphabet;
    use crate::dfa::words_up_to;

    fn bin() -> OrderedAlphabet {
        OrderedAlphabet::digits(2)
    }

    /// (10)*
    fn ten_star() -> Dfa {
        Dfa::new(bin(), 0, [0], vec![vec![2, 1], vec![0, 2], vec![2, 2]]).unwrap()
    }

    #[test]
    fn thinness() {
        assert!(is_thin(&ten_star()));
        assert!(!is_thin(&Dfa::universal(bin())));
        let (u, v) = thinness_witness(&Dfa::universal(bin())).unwrap();
        assert_eq!(u.len(), v.len());
        assert_ne!(u, v);
    }

    #[test]
    fn comparison_examples() {
        let leq = thin_leq_ufa(&ten_star()).unwrap();
        assert_eq!(leq.state_count(), 6);
        assert!(leq.accepts(&[0, 1]));
        assert!(!leq.accepts(&[1, 1]));
        assert!(leq.accepts(&[]));
        assert!(leq.is_unambiguous());
        let geq = thin_geq_ufa(&ten_star()).unwrap();
        assert!(geq.accepts(&[1, 1]));
        assert!(!geq.accepts(&[0, 1]));
        assert!(geq.accepts(&[]));
        assert!(geq.is_unambiguous());
        assert!(matches!(
            thin_leq_ufa(&Dfa::universal(bin())),
            Err(Error::NotThin)
        ));
    }

    #[test]
    fn length_complement() {
        let a = OrderedAlphabet::new(["a"]).unwrap();
        let even = Dfa::from_fn(a.clone(), 2, 0, |q| q == 0, |q, _| 1 - q);
        let x = x_dfa(&even);
        for len in 0..10 {
            assert_eq!(x.accepts(&vec![0; len]), len % 2 == 1);
        }
        let none = x_dfa(&Dfa::empty(a));
        assert!(none.accepts(&[0, 0, 0]));
    }

    #[test]
    fn bgeq_of_everything_is_one_star() {
        let b = bgeq_ufa(&Dfa::universal(bin()));
        assert!(b.is_unambiguous());
        for w in words_up_to(2, 6) {
            assert_eq!(b.accepts(&w), w.iter().all(|&a| a == 1), "{w:?}");
        }
        let e = bgeq_ufa(&Dfa::empty(bin()));
        for w in words_up_to(2, 4) {
            assert!(e.accepts(&w));
        }
    }
}
