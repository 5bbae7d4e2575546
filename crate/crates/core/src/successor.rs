//! Successor transducers: the length-preserving core, padding, and
//! enumeration of a language in radix order.

use std::collections::{HashMap, VecDeque};

use crate::alphabet::{Letter, OrderedAlphabet};
use crate::dfa::{Dfa, State};
use crate::error::{Error, Result};
use crate::minimal::{smallest_words_dfa_with, SmallestStrategy};
use crate::nfa::Nfa;
use crate::thin::{bgeq_ufa_with, x_dfa};
use crate::transducer::{Transducer, Transition};
use crate::words;

pub use crate::words::minimal_word;

/// Symbol used for padding when the alphabet does not already contain it.
pub const PADDING_SYMBOL: &str = "⋄";

/// DFA for `⋄* L` where `⋄` is a new minimum letter.
#[derive(Clone, Debug)]
pub struct PaddedDfa {
    dfa: Dfa,
    original_states: usize,
}

impl PaddedDfa {
    pub fn dfa(&self) -> &Dfa {
        &self.dfa
    }

    /// The padding letter; always the minimum.
    pub fn padding(&self) -> Letter {
        0
    }

    pub fn original_states(&self) -> usize {
        self.original_states
    }

    /// Letter of the original alphabet as a letter of the padded one.
    pub fn lift(&self, w: &[Letter]) -> Vec<Letter> {
        w.iter().map(|&a| a + 1).collect()
    }
}

/// Adds a new initial state with a `⋄` self-loop whose other transitions
/// mirror the old initial state, and a sink for `⋄` read anywhere else.
/// States `0..n` keep their ids; `n` is the new initial state, `n + 1` the
/// sink.
pub fn pad_automaton(dfa: &Dfa, symbol: &str) -> Result<PaddedDfa> {
    let alphabet = dfa.alphabet().with_minimum(symbol)?;
    let n = dfa.state_count();
    let (start, sink) = (n, n + 1);
    let padded = Dfa::from_fn(
        alphabet,
        n + 2,
        start,
        |q| match q {
            _ if q == start => dfa.is_accepting(dfa.initial()),
            _ if q == sink => false,
            _ => dfa.is_accepting(q),
        },
        |q, a| match (q, a) {
            (_, 0) if q == start => start,
            (_, 0) => sink,
            _ if q == sink => sink,
            _ if q == start => dfa.next(dfa.initial(), a - 1),
            _ => dfa.next(q, a - 1),
        },
    );
    Ok(PaddedDfa {
        dfa: padded,
        original_states: n,
    })
}

/// Outcome of checking the padding bound for one word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LengthGap {
    /// Successor of `u` in the unpadded language, over the original letters.
    pub successor: Vec<Letter>,
    /// `|u| ≤ |v| ≤ |u| + n` with `n` the padded state count.
    pub within_bound: bool,
    /// `⋄^{n+|u|-|v|} v` is the padded successor of `⋄^n u`.
    pub padded_matches: bool,
}

/// Checks that padding `u` with `n` symbols turns its successor into a word
/// of the same length.
pub fn padded_length_gap(padded: &PaddedDfa, u: &[Letter]) -> Result<LengthGap> {
    let n = padded.dfa.state_count();
    let lifted = padded.lift(u);
    // Words over Γ only: the padded DFA restricted to its non-padding letters
    // behaves exactly like the original from the new initial state.
    let unpadded = Dfa::from_fn(
        OrderedAlphabet::new(padded.dfa.alphabet().symbols()[1..].iter().cloned())?,
        n,
        padded.dfa.initial(),
        |q| padded.dfa.is_accepting(q),
        |q, a| padded.dfa.next(q, a + 1),
    );
    let v = words::successor(&unpadded, u).ok_or(Error::Maximal)?;
    let within_bound = u.len() <= v.len() && v.len() <= u.len() + n;
    let padded_matches = within_bound && {
        let mut input = vec![padded.padding(); n];
        input.extend(&lifted);
        let mut expected = vec![padded.padding(); n + u.len() - v.len()];
        expected.extend(padded.lift(&v));
        words::successor(&padded.dfa, &input) == Some(expected)
    };
    Ok(LengthGap {
        successor: v,
        within_bound,
        padded_matches,
    })
}

/// Transducer that maps every L-length-preserving word to its successor and
/// has no accepting run on any other word.
pub fn length_preserving_successor_transducer(dfa: &Dfa) -> Transducer {
    length_preserving_successor_transducer_with(dfa, SmallestStrategy::default())
}

pub fn length_preserving_successor_transducer_with(
    dfa: &Dfa,
    strategy: SmallestStrategy,
) -> Transducer {
    let mut core = Core::new(dfa, strategy);
    explore(
        dfa.alphabet(),
        dfa.alphabet(),
        Node::Copy(dfa.initial()),
        |node| {
            core.moves(node)
                .into_iter()
                .map(|(a, b, t)| (Some(a), Some(b), t))
                .collect()
        },
        core_accepts,
    )
}

/// Transducer mapping every word that is not maximal in `L(dfa)` to its
/// successor; maximal words have no accepting run.
pub fn successor_transducer(dfa: &Dfa) -> Transducer {
    successor_transducer_with(dfa, SmallestStrategy::default())
}

pub fn successor_transducer_with(dfa: &Dfa, strategy: SmallestStrategy) -> Transducer {
    let mut symbol = PADDING_SYMBOL.to_string();
    while dfa.alphabet().letter(&symbol).is_some() {
        symbol.push_str(PADDING_SYMBOL);
    }
    let padded = pad_automaton(dfa, &symbol).expect("symbol is fresh");
    let pad = padded.padding();
    let full = padded.original_states() + 1;
    let mut core = Core::new(padded.dfa(), strategy);
    let unpad = |a: Letter| (a != pad).then(|| a - 1);
    // Input counter: the number of padding letters read, which must reach
    // exactly `n + 1` before the first letter of the original alphabet.
    explore(
        dfa.alphabet(),
        dfa.alphabet(),
        (Node::Copy(padded.dfa().initial()), 0usize),
        |(node, c)| {
            core.moves(node)
                .into_iter()
                .filter_map(|(a, b, t)| {
                    let c2 = match (a == pad, *c < full) {
                        (true, true) => c + 1,
                        (false, false) => *c,
                        _ => return None,
                    };
                    Some((unpad(a), unpad(b), (t, c2)))
                })
                .collect()
        },
        |(node, c)| *c == full && core_accepts(node),
    )
}

/// The first `count` words of `L(dfa)` in radix order.
pub fn enumerate(dfa: &Dfa, count: usize) -> Vec<Vec<Letter>> {
    Enumeration::new(dfa).take(count).collect()
}

/// Radix-order enumeration driven by the successor transducer.
pub struct Enumeration {
    transducer: Option<Transducer>,
    next: Option<Vec<Letter>>,
}

impl Enumeration {
    pub fn new(dfa: &Dfa) -> Self {
        let next = minimal_word(dfa);
        Self {
            transducer: next.is_some().then(|| successor_transducer(dfa)),
            next,
        }
    }
}

impl Iterator for Enumeration {
    type Item = Vec<Letter>;

    fn next(&mut self) -> Option<Vec<Letter>> {
        let current = self.next.take()?;
        let t = self
            .transducer
            .as_ref()
            .expect("built for nonempty languages");
        self.next = t
            .apply(&current)
            .expect("successor transducers are unambiguous");
        Some(current)
    }
}

/// Breadth-first construction of a transducer from a successor function,
/// followed by trimming.
fn explore<N: Clone + Eq + std::hash::Hash>(
    input: &OrderedAlphabet,
    output: &OrderedAlphabet,
    start: N,
    mut moves: impl FnMut(&N) -> Vec<(Option<Letter>, Option<Letter>, N)>,
    mut accepts: impl FnMut(&N) -> bool,
) -> Transducer {
    let mut index: HashMap<N, State> = HashMap::from([(start.clone(), 0)]);
    let mut nodes = vec![start];
    let mut transitions = Vec::new();
    let mut accepting = Vec::new();
    let mut i = 0;
    while i < nodes.len() {
        let node = nodes[i].clone();
        if accepts(&node) {
            accepting.push(i);
        }
        for (a, b, target) in moves(&node) {
            let to = *index.entry(target.clone()).or_insert_with(|| {
                nodes.push(target);
                nodes.len() - 1
            });
            transitions.push(Transition {
                from: i,
                input: a,
                output: b,
                to,
            });
        }
        i += 1;
    }
    Transducer::new(
        input.clone(),
        output.clone(),
        nodes.len(),
        0,
        accepting,
        transitions,
    )
    .expect("construction is valid")
    .trim()
}

/// State of the length-preserving core: copying, or after the branch.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum Node {
    Copy(State),
    Tail(Tail),
}

/// Components after the branch. `b` runs the `B≥` automaton of
/// `b_seed` on the input, `s` the `S` automaton of `s_seed` on the output,
/// and each `(seed, x)` an `X` automaton on the input.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct Tail {
    b_seed: State,
    b: State,
    s_seed: State,
    s: State,
    xs: Vec<(State, State)>,
    accepting: bool,
}

fn core_accepts(node: &Node) -> bool {
    matches!(node, Node::Tail(t) if t.accepting)
}

struct Part<M> {
    machine: M,
    live: Vec<bool>,
}

struct Core<'a> {
    dfa: &'a Dfa,
    strategy: SmallestStrategy,
    s: Vec<Option<Part<Dfa>>>,
    b: Vec<Option<Part<Nfa>>>,
    x: Vec<Option<Part<Dfa>>>,
}

impl<'a> Core<'a> {
    fn new(dfa: &'a Dfa, strategy: SmallestStrategy) -> Self {
        let n = dfa.state_count();
        Self {
            dfa,
            strategy,
            s: (0..n).map(|_| None).collect(),
            b: (0..n).map(|_| None).collect(),
            x: (0..n).map(|_| None).collect(),
        }
    }

    fn ensure(&mut self, seed: State) {
        if self.s[seed].is_some() {
            return;
        }
        let from = self.dfa.with_initial(seed);
        let s = smallest_words_dfa_with(&from, self.strategy);
        let b = bgeq_ufa_with(&from, self.strategy);
        let x = x_dfa(&from);
        self.s[seed] = Some(Part {
            live: s.live_states(),
            machine: s,
        });
        self.b[seed] = Some(Part {
            live: nfa_live_states(&b),
            machine: b,
        });
        self.x[seed] = Some(Part {
            live: x.live_states(),
            machine: x,
        });
    }

    fn s_part(&self, seed: State) -> &Part<Dfa> {
        self.s[seed].as_ref().expect("ensured")
    }

    fn b_part(&self, seed: State) -> &Part<Nfa> {
        self.b[seed].as_ref().expect("ensured")
    }

    fn x_part(&self, seed: State) -> &Part<Dfa> {
        self.x[seed].as_ref().expect("ensured")
    }

    /// Builds a tail node, or `None` if some component can no longer accept.
    fn tail(
        &self,
        b_seed: State,
        b: State,
        s_seed: State,
        s: State,
        xs: Vec<(State, State)>,
    ) -> Option<Node> {
        let (bp, sp) = (self.b_part(b_seed), self.s_part(s_seed));
        if !bp.live[b] || !sp.live[s] || xs.iter().any(|&(seed, x)| !self.x_part(seed).live[x]) {
            return None;
        }
        let accepting = bp.machine.is_accepting(b)
            && sp.machine.is_accepting(s)
            && xs
                .iter()
                .all(|&(seed, x)| self.x_part(seed).machine.is_accepting(x));
        Some(Node::Tail(Tail {
            b_seed,
            b,
            s_seed,
            s,
            xs,
            accepting,
        }))
    }

    /// Moves `(input, output, target)`.
    fn moves(&mut self, node: &Node) -> Vec<(Letter, Letter, Node)> {
        let k = self.dfa.alphabet().len();
        let mut out = Vec::new();
        match node {
            Node::Copy(q) => {
                let q = *q;
                for a in 0..k {
                    out.push((a, a, Node::Copy(self.dfa.next(q, a))));
                    for b in a + 1..k {
                        let (qa, qb) = (self.dfa.next(q, a), self.dfa.next(q, b));
                        let mut seeds: Vec<State> =
                            (a + 1..b).map(|c| self.dfa.next(q, c)).collect();
                        seeds.sort_unstable();
                        seeds.dedup();
                        for &p in seeds.iter().chain([&qa, &qb]) {
                            self.ensure(p);
                        }
                        let xs = seeds
                            .iter()
                            .map(|&p| (p, self.x_part(p).machine.initial()))
                            .collect();
                        let b_init = self.b_part(qa).machine.initial();
                        let s_init = self.s_part(qb).machine.initial();
                        if let Some(t) = self.tail(qa, b_init, qb, s_init, xs) {
                            out.push((a, b, t));
                        }
                    }
                }
            }
            Node::Tail(t) => {
                for d in 0..k {
                    let xs: Vec<(State, State)> =
                        t.xs.iter()
                            .map(|&(seed, x)| (seed, self.x_part(seed).machine.next(x, d)))
                            .collect();
                    let bs = self.b_part(t.b_seed).machine.successors(t.b, d).to_vec();
                    for e in 0..k {
                        let s = self.s_part(t.s_seed).machine.next(t.s, e);
                        for &b in &bs {
                            if let Some(next) = self.tail(t.b_seed, b, t.s_seed, s, xs.clone()) {
                                out.push((d, e, next));
                            }
                        }
                    }
                }
            }
        }
        out
    }
}

/// States of `nfa` from which an accepting state is reachable.
fn nfa_live_states(nfa: &Nfa) -> Vec<bool> {
    let n = nfa.state_count();
    let mut incoming = vec![Vec::new(); n];
    for (p, _, q) in nfa.transitions() {
        incoming[q].push(p);
    }
    let mut live: Vec<bool> = (0..n).map(|q| nfa.is_accepting(q)).collect();
    let mut queue: VecDeque<State> = (0..n).filter(|&q| live[q]).collect();
    while let Some(q) = queue.pop_front() {
        for &p in &incoming[q] {
            if !live[p] {
                live[p] = true;
                queue.push_back(p);
            }
        }
    }
    live
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dfa::words_up_to;

    fn bin() -> OrderedAlphabet {
        OrderedAlphabet::digits(2)
    }

    fn even_length() -> Dfa {
        Dfa::from_fn(bin(), 2, 0, |q| q == 0, |q, _| 1 - q)
    }

    #[test]
    fn padding_shape() {
        let p = pad_automaton(&Dfa::universal(bin()), PADDING_SYMBOL).unwrap();
        let d = p.dfa();
        assert_eq!(d.state_count(), 3);
        assert!(d.accepts(&[0, 0, 1, 2]));
        assert!(!d.accepts(&[1, 0]));
        assert!(matches!(
            pad_automaton(&Dfa::universal(bin()), "1"),
            Err(Error::SymbolCollision(_))
        ));
    }

    #[test]
    fn length_gap_for_everything() {
        let p = pad_automaton(&Dfa::universal(bin()), PADDING_SYMBOL).unwrap();
        let gap = padded_length_gap(&p, &[1]).unwrap();
        assert_eq!(gap.successor, vec![0, 0]);
        assert!(gap.within_bound && gap.padded_matches);
        let single = Dfa::new(bin(), 0, [1], vec![vec![1, 2], vec![2, 2], vec![2, 2]]).unwrap();
        let p = pad_automaton(&single, PADDING_SYMBOL).unwrap();
        assert!(matches!(padded_length_gap(&p, &[0]), Err(Error::Maximal)));
    }

    #[test]
    fn length_preserving_core_on_everything() {
        let t = length_preserving_successor_transducer(&Dfa::universal(bin()));
        assert_eq!(t.apply(&[0, 1]).unwrap(), Some(vec![1, 0]));
        assert_eq!(t.apply(&[1, 1]).unwrap(), None);
        assert_eq!(t.apply(&[]).unwrap(), None);
        assert!(t.is_unambiguous());
    }

    #[test]
    fn full_transducer_examples() {
        let t = successor_transducer(&Dfa::universal(bin()));
        assert_eq!(t.apply(&[1, 1]).unwrap(), Some(vec![0, 0, 0]));
        assert_eq!(t.apply(&[]).unwrap(), Some(vec![0]));
        assert!(t.is_unambiguous());
        let e = successor_transducer(&even_length());
        assert_eq!(e.apply(&[0, 1]).unwrap(), Some(vec![1, 0]));
        assert_eq!(e.apply(&[1, 1]).unwrap(), Some(vec![0, 0, 0, 0]));
        let single = Dfa::new(bin(), 0, [1], vec![vec![1, 2], vec![2, 2], vec![2, 2]]).unwrap();
        let s = successor_transducer(&single);
        assert_eq!(s.apply(&[0]).unwrap(), None);
        assert_eq!(s.apply(&[]).unwrap(), Some(vec![0]));
    }

    #[test]
    fn successor_matches_search_on_small_inputs() {
        let e = even_length();
        let t = successor_transducer(&e);
        for w in words_up_to(2, 6) {
            assert_eq!(t.apply(&w).unwrap(), words::successor(&e, &w), "{w:?}");
        }
    }

    #[test]
    fn enumeration() {
        let words = enumerate(&Dfa::universal(bin()), 5);
        assert_eq!(
            words,
            vec![vec![], vec![0], vec![1], vec![0, 0], vec![0, 1]]
        );
        assert!(enumerate(&Dfa::empty(bin()), 3).is_empty());
    }
}
