//! Nondeterministic automata without epsilon moves, with exact run counting
//! and an ambiguity decision procedure.

use std::collections::{HashMap, HashSet, VecDeque};

use crate::alphabet::{Letter, OrderedAlphabet, Word};
use crate::dfa::{Dfa, State};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Nfa {
    alphabet: OrderedAlphabet,
    initial: State,
    accepting: Vec<bool>,
    /// `delta[q][a]`: sorted, deduplicated successor list.
    delta: Vec<Vec<Vec<State>>>,
}

impl Nfa {
    pub fn new(
        alphabet: OrderedAlphabet,
        states: usize,
        initial: State,
        accepting: impl IntoIterator<Item = State>,
        transitions: impl IntoIterator<Item = (State, Letter, State)>,
    ) -> Result<Self> {
        if states == 0 {
            return Err(Error::NoStates);
        }
        let check = |q: State| {
            if q < states {
                Ok(())
            } else {
                Err(Error::StateOutOfRange {
                    state: q,
                    count: states,
                })
            }
        };
        check(initial)?;
        let mut acc = vec![false; states];
        for q in accepting {
            check(q)?;
            acc[q] = true;
        }
        let k = alphabet.len();
        let mut delta = vec![vec![Vec::new(); k]; states];
        for (p, a, q) in transitions {
            check(p)?;
            check(q)?;
            if a >= k {
                return Err(Error::UnknownSymbol(format!("#{a}")));
            }
            delta[p][a].push(q);
        }
        Ok(Self::from_parts(alphabet, initial, acc, delta))
    }

    pub(crate) fn from_parts(
        alphabet: OrderedAlphabet,
        initial: State,
        accepting: Vec<bool>,
        mut delta: Vec<Vec<Vec<State>>>,
    ) -> Self {
        for row in &mut delta {
            for targets in row.iter_mut() {
                targets.sort_unstable();
                targets.dedup();
            }
        }
        Self {
            alphabet,
            initial,
            accepting,
            delta,
        }
    }

    pub fn alphabet(&self) -> &OrderedAlphabet {
        &self.alphabet
    }

    pub fn state_count(&self) -> usize {
        self.accepting.len()
    }

    pub fn initial(&self) -> State {
        self.initial
    }

    pub fn is_accepting(&self, q: State) -> bool {
        self.accepting[q]
    }

    pub fn successors(&self, q: State, a: Letter) -> &[State] {
        &self.delta[q][a]
    }

    pub fn transitions(&self) -> impl Iterator<Item = (State, Letter, State)> + '_ {
        self.delta.iter().enumerate().flat_map(|(p, row)| {
            row.iter()
                .enumerate()
                .flat_map(move |(a, ts)| ts.iter().map(move |&q| (p, a, q)))
        })
    }

    pub fn accepts(&self, w: &[Letter]) -> bool {
        let mut cur = vec![false; self.state_count()];
        cur[self.initial] = true;
        for &a in w {
            let mut nxt = vec![false; self.state_count()];
            for q in (0..self.state_count()).filter(|&q| cur[q]) {
                for &t in &self.delta[q][a] {
                    nxt[t] = true;
                }
            }
            cur = nxt;
        }
        (0..self.state_count()).any(|q| cur[q] && self.accepting[q])
    }

    pub fn accepts_word(&self, w: &Word) -> Result<bool> {
        if w.alphabet() != &self.alphabet {
            return Err(Error::AlphabetMismatch);
        }
        Ok(self.accepts(w.letters()))
    }

    /// Number of distinct accepting runs on `w` (saturating at `u128::MAX`).
    pub fn accepting_run_count(&self, w: &[Letter]) -> u128 {
        let n = self.state_count();
        let mut cur = vec![0u128; n];
        cur[self.initial] = 1;
        for &a in w {
            let mut nxt = vec![0u128; n];
            for (q, &c) in cur.iter().enumerate() {
                if c == 0 {
                    continue;
                }
                for &t in &self.delta[q][a] {
                    nxt[t] = nxt[t].saturating_add(c);
                }
            }
            cur = nxt;
        }
        (0..n)
            .filter(|&q| self.accepting[q])
            .fold(0u128, |acc, q| acc.saturating_add(cur[q]))
    }

    /// Decides unambiguity with the squaring construction: explore pairs of
    /// runs over the same input, remembering whether they have already
    /// visited different states. The automaton is ambiguous iff a pair of
    /// accepting states is reachable after the runs diverged.
    pub fn is_unambiguous(&self) -> bool {
        self.ambiguity_witness().is_none()
    }

    /// A word with two distinct accepting runs, if one exists.
    pub fn ambiguity_witness(&self) -> Option<Vec<Letter>> {
        type Node = (State, State, bool);
        let start: Node = (self.initial, self.initial, false);
        let mut parent: HashMap<Node, Option<(Node, Letter)>> = HashMap::new();
        parent.insert(start, None);
        let mut queue = VecDeque::from([start]);
        while let Some(node @ (p, q, diverged)) = queue.pop_front() {
            if diverged && self.accepting[p] && self.accepting[q] {
                let mut word = Vec::new();
                let mut cur = node;
                while let Some((prev, a)) = parent[&cur] {
                    word.push(a);
                    cur = prev;
                }
                word.reverse();
                return Some(word);
            }
            for a in self.alphabet.letters() {
                for &p2 in &self.delta[p][a] {
                    for &q2 in &self.delta[q][a] {
                        // Before divergence p == q, so ordered pairs suffice.
                        if !diverged && p2 > q2 {
                            continue;
                        }
                        let next = (p2, q2, diverged || p2 != q2);
                        if let std::collections::hash_map::Entry::Vacant(e) = parent.entry(next) {
                            e.insert(Some((node, a)));
                            queue.push_back(next);
                        }
                    }
                }
            }
        }
        None
    }

    /// Subset construction restricted to reachable subsets.
    pub fn determinize(&self) -> Dfa {
        let k = self.alphabet.len();
        let start = vec![self.initial];
        let mut index: HashMap<Vec<State>, usize> = HashMap::from([(start.clone(), 0)]);
        let mut sets = vec![start];
        let mut delta: Vec<Vec<State>> = Vec::new();
        let mut i = 0;
        while i < sets.len() {
            let mut row = Vec::with_capacity(k);
            for a in 0..k {
                let mut t: Vec<State> = sets[i]
                    .iter()
                    .flat_map(|&q| self.delta[q][a].iter().copied())
                    .collect::<HashSet<_>>()
                    .into_iter()
                    .collect();
                t.sort_unstable();
                let id = match index.get(&t) {
                    Some(&id) => id,
                    None => {
                        index.insert(t.clone(), sets.len());
                        sets.push(t);
                        sets.len() - 1
                    }
                };
                row.push(id);
            }
            delta.push(row);
            i += 1;
        }
        let accepting: Vec<State> = sets
            .iter()
            .enumerate()
            .filter(|(_, s)| s.iter().any(|&q| self.accepting[q]))
            .map(|(i, _)| i)
            .collect();
        Dfa::new(self.alphabet.clone(), 0, accepting, delta)
            .expect("subset construction is complete")
    }

    /// Disjoint union of two automata under a fresh initial state that copies
    /// both initial states' outgoing transitions.
    pub fn union(&self, other: &Nfa) -> Result<Nfa> {
        if self.alphabet != other.alphabet {
            return Err(Error::AlphabetMismatch);
        }
        let k = self.alphabet.len();
        let off = 1 + self.state_count();
        let mut delta = Vec::with_capacity(off + other.state_count());
        let mut init_row = vec![Vec::new(); k];
        for (a, row) in init_row.iter_mut().enumerate() {
            row.extend(self.delta[self.initial][a].iter().map(|&q| q + 1));
            row.extend(other.delta[other.initial][a].iter().map(|&q| q + off));
        }
        delta.push(init_row);
        for row in &self.delta {
            delta.push(
                row.iter()
                    .map(|ts| ts.iter().map(|&q| q + 1).collect())
                    .collect(),
            );
        }
        for row in &other.delta {
            delta.push(
                row.iter()
                    .map(|ts| ts.iter().map(|&q| q + off).collect())
                    .collect(),
            );
        }
        let mut accepting = vec![self.accepting[self.initial] || other.accepting[other.initial]];
        accepting.extend(&self.accepting);
        accepting.extend(&other.accepting);
        Ok(Nfa::from_parts(self.alphabet.clone(), 0, accepting, delta))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dfa::tests::{ab, ab_star};
    use crate::dfa::words_up_to;

    /// Two parallel accepting paths for "a".
    fn two_paths() -> Nfa {
        Nfa::new(ab(), 3, 0, [1, 2], [(0, 0, 1), (0, 0, 2)]).unwrap()
    }

    #[test]
    fn dfa_is_unambiguous() {
        assert!(ab_star().to_nfa().is_unambiguous());
        assert!(Dfa::universal(ab()).to_nfa().is_unambiguous());
    }

    #[test]
    fn parallel_paths_are_ambiguous() {
        let n = two_paths();
        assert!(!n.is_unambiguous());
        assert_eq!(n.ambiguity_witness(), Some(vec![0]));
        assert_eq!(n.accepting_run_count(&[0]), 2);
    }

    #[test]
    fn run_counts_on_dfa() {
        let d = ab_star().to_nfa();
        assert_eq!(d.accepting_run_count(&[0, 1]), 1);
        assert_eq!(d.accepting_run_count(&[0]), 0);
    }

    #[test]
    fn late_divergence_detected() {
        // a(a|a)b: divergence after the first letter, reconvergence before the end.
        let n = Nfa::new(
            ab(),
            5,
            0,
            [4],
            [(0, 0, 1), (1, 0, 2), (1, 0, 3), (2, 1, 4), (3, 1, 4)],
        )
        .unwrap();
        assert!(!n.is_unambiguous());
        assert_eq!(n.accepting_run_count(&[0, 0, 1]), 2);
    }

    #[test]
    fn determinize_and_union() {
        let n = two_paths();
        let d = n.determinize();
        for w in words_up_to(2, 5) {
            assert_eq!(d.accepts(&w), n.accepts(&w));
        }
        let u = ab_star().to_nfa().union(&two_paths()).unwrap();
        for w in words_up_to(2, 6) {
            assert_eq!(u.accepts(&w), ab_star().accepts(&w) || w == [0]);
        }
    }
}
