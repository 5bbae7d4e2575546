//! Complete deterministic finite automata.

use std::collections::HashMap;

use crate::alphabet::{Letter, OrderedAlphabet, Word};
use crate::error::{Error, Result};
use crate::nfa::Nfa;

pub type State = usize;

/// The states visited when reading a word: `(q, q.a1, ..., q.a1...an)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StateSequence(pub Vec<State>);

impl StateSequence {
    pub fn states(&self) -> &[State] {
        &self.0
    }

    pub fn last(&self) -> State {
        *self
            .0
            .last()
            .expect("a trace always has at least one state")
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ProductMode {
    Intersection,
    Union,
}

/// A complete DFA with dense state ids `0..n`.
///
/// The transition table is stored row-major: `delta[q * k + a]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dfa {
    alphabet: OrderedAlphabet,
    initial: State,
    accepting: Vec<bool>,
    delta: Vec<State>,
}

impl Dfa {
    /// Builds a DFA from a per-state transition table `delta[q][a]`.
    pub fn new(
        alphabet: OrderedAlphabet,
        initial: State,
        accepting: impl IntoIterator<Item = State>,
        delta: Vec<Vec<State>>,
    ) -> Result<Self> {
        let n = delta.len();
        if n == 0 {
            return Err(Error::NoStates);
        }
        let k = alphabet.len();
        check_state(initial, n)?;
        let mut acc = vec![false; n];
        for q in accepting {
            check_state(q, n)?;
            acc[q] = true;
        }
        let mut flat = Vec::with_capacity(n * k);
        for (q, row) in delta.iter().enumerate() {
            if row.len() != k {
                let symbol = alphabet
                    .symbols()
                    .get(row.len())
                    .cloned()
                    .unwrap_or_else(|| "?".into());
                return Err(Error::IncompleteDfa { state: q, symbol });
            }
            for &t in row {
                check_state(t, n)?;
                flat.push(t);
            }
        }
        Ok(Self {
            alphabet,
            initial,
            accepting: acc,
            delta: flat,
        })
    }

    /// Builds a DFA from closures. Intended for generated automata whose
    /// state ids are known to be in range.
    pub fn from_fn(
        alphabet: OrderedAlphabet,
        states: usize,
        initial: State,
        is_accepting: impl Fn(State) -> bool,
        next: impl Fn(State, Letter) -> State,
    ) -> Self {
        assert!(states > 0 && initial < states);
        let k = alphabet.len();
        let mut delta = Vec::with_capacity(states * k);
        for q in 0..states {
            for a in 0..k {
                let t = next(q, a);
                assert!(t < states, "transition target out of range");
                delta.push(t);
            }
        }
        Self {
            alphabet,
            initial,
            accepting: (0..states).map(is_accepting).collect(),
            delta,
        }
    }

    /// One-state DFA accepting nothing.
    pub fn empty(alphabet: OrderedAlphabet) -> Self {
        Self::from_fn(alphabet, 1, 0, |_| false, |_, _| 0)
    }

    /// One-state DFA accepting every word.
    pub fn universal(alphabet: OrderedAlphabet) -> Self {
        Self::from_fn(alphabet, 1, 0, |_| true, |_, _| 0)
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

    pub fn accepting_states(&self) -> impl Iterator<Item = State> + '_ {
        self.accepting
            .iter()
            .enumerate()
            .filter_map(|(q, &f)| f.then_some(q))
    }

    #[inline]
    pub fn next(&self, q: State, a: Letter) -> State {
        self.delta[q * self.alphabet.len() + a]
    }

    pub fn run_from(&self, q: State, w: &[Letter]) -> State {
        w.iter().fold(q, |q, &a| self.next(q, a))
    }

    pub fn run(&self, w: &[Letter]) -> State {
        self.run_from(self.initial, w)
    }

    pub fn accepts(&self, w: &[Letter]) -> bool {
        self.accepting[self.run(w)]
    }

    pub fn accepts_word(&self, w: &Word) -> Result<bool> {
        if w.alphabet() != &self.alphabet {
            return Err(Error::AlphabetMismatch);
        }
        Ok(self.accepts(w.letters()))
    }

    /// `tr(q, w)`: every state visited while reading `w` from `q`.
    pub fn trace(&self, q: State, w: &[Letter]) -> StateSequence {
        let mut states = Vec::with_capacity(w.len() + 1);
        states.push(q);
        let mut cur = q;
        for &a in w {
            cur = self.next(cur, a);
            states.push(cur);
        }
        StateSequence(states)
    }

    /// Same automaton with a different initial state.
    pub fn with_initial(&self, q: State) -> Self {
        assert!(q < self.state_count());
        Self {
            initial: q,
            ..self.clone()
        }
    }

    /// Adds self-looping, rejecting, unreachable states until there are at
    /// least `n` states.
    pub fn padded_to(&self, n: usize) -> Self {
        let extra = n.saturating_sub(self.state_count());
        if extra == 0 {
            return self.clone();
        }
        let old = self.state_count();
        Self::from_fn(
            self.alphabet.clone(),
            old + extra,
            self.initial,
            |q| q < old && self.accepting[q],
            |q, a| if q < old { self.next(q, a) } else { q },
        )
    }

    pub fn complement(&self) -> Self {
        Self {
            accepting: self.accepting.iter().map(|f| !f).collect(),
            ..self.clone()
        }
    }

    /// Reachable product automaton for intersection or union.
    pub fn product(&self, other: &Dfa, mode: ProductMode) -> Result<Dfa> {
        if self.alphabet != other.alphabet {
            return Err(Error::AlphabetMismatch);
        }
        let k = self.alphabet.len();
        let mut index: HashMap<(State, State), State> = HashMap::new();
        let mut pairs = vec![(self.initial, other.initial)];
        index.insert(pairs[0], 0);
        let mut delta = Vec::new();
        let mut i = 0;
        while i < pairs.len() {
            let (p, q) = pairs[i];
            for a in 0..k {
                let succ = (self.next(p, a), other.next(q, a));
                let id = *index.entry(succ).or_insert_with(|| {
                    pairs.push(succ);
                    pairs.len() - 1
                });
                delta.push(id);
            }
            i += 1;
        }
        let accepting = pairs
            .iter()
            .map(|&(p, q)| match mode {
                ProductMode::Intersection => self.accepting[p] && other.accepting[q],
                ProductMode::Union => self.accepting[p] || other.accepting[q],
            })
            .collect();
        Ok(Dfa {
            alphabet: self.alphabet.clone(),
            initial: 0,
            accepting,
            delta,
        })
    }

    /// States reachable from the initial state, in BFS order (letters in
    /// alphabet order).
    pub fn reachable_states(&self) -> Vec<State> {
        let n = self.state_count();
        let mut seen = vec![false; n];
        let mut order = vec![self.initial];
        seen[self.initial] = true;
        let mut i = 0;
        while i < order.len() {
            let q = order[i];
            for a in self.alphabet.letters() {
                let t = self.next(q, a);
                if !seen[t] {
                    seen[t] = true;
                    order.push(t);
                }
            }
            i += 1;
        }
        order
    }

    /// `live[q]` iff some accepting state is reachable from `q`.
    pub fn live_states(&self) -> Vec<bool> {
        let n = self.state_count();
        let k = self.alphabet.len();
        let mut rev: Vec<Vec<State>> = vec![Vec::new(); n];
        for q in 0..n {
            for a in 0..k {
                rev[self.next(q, a)].push(q);
            }
        }
        let mut live = self.accepting.clone();
        let mut stack: Vec<State> = self.accepting_states().collect();
        while let Some(q) = stack.pop() {
            for &p in &rev[q] {
                if !live[p] {
                    live[p] = true;
                    stack.push(p);
                }
            }
        }
        live
    }

    pub fn is_empty(&self) -> bool {
        self.reachable_states().iter().all(|&q| !self.accepting[q])
    }

    /// Minimal complete DFA, renumbered canonically (BFS from the initial
    /// state, letters in order), so two minimal DFAs for the same language
    /// are structurally equal.
    pub fn minimize(&self) -> Dfa {
        let k = self.alphabet.len();
        let reach = self.reachable_states();
        let mut local = vec![usize::MAX; self.state_count()];
        for (i, &q) in reach.iter().enumerate() {
            local[q] = i;
        }
        let m = reach.len();
        let succ = |i: usize, a: Letter| local[self.next(reach[i], a)];

        // Moore refinement: split classes by (class, successor classes).
        let mut class: Vec<usize> = reach
            .iter()
            .map(|&q| usize::from(self.accepting[q]))
            .collect();
        let mut count = class.iter().copied().max().map_or(0, |c| c + 1);
        if count == 2 && !class.contains(&0) {
            class.iter_mut().for_each(|c| *c = 0);
            count = 1;
        }
        loop {
            let mut ids: HashMap<Vec<usize>, usize> = HashMap::new();
            let mut next_class = vec![0; m];
            for i in 0..m {
                let mut sig = Vec::with_capacity(k + 1);
                sig.push(class[i]);
                sig.extend((0..k).map(|a| class[succ(i, a)]));
                let fresh = ids.len();
                next_class[i] = *ids.entry(sig).or_insert(fresh);
            }
            let new_count = ids.len();
            class = next_class;
            if new_count == count {
                break;
            }
            count = new_count;
        }

        // Canonical numbering of classes by BFS.
        let mut rep = vec![usize::MAX; count];
        for i in (0..m).rev() {
            rep[class[i]] = i;
        }
        let mut number = vec![usize::MAX; count];
        let mut order = vec![class[0]];
        number[class[0]] = 0;
        let mut j = 0;
        while j < order.len() {
            let c = order[j];
            for a in 0..k {
                let t = class[succ(rep[c], a)];
                if number[t] == usize::MAX {
                    number[t] = order.len();
                    order.push(t);
                }
            }
            j += 1;
        }
        let mut delta = Vec::with_capacity(count * k);
        for &c in &order {
            for a in 0..k {
                delta.push(number[class[succ(rep[c], a)]]);
            }
        }
        Dfa {
            alphabet: self.alphabet.clone(),
            initial: 0,
            accepting: order
                .iter()
                .map(|&c| self.accepting[reach[rep[c]]])
                .collect(),
            delta,
        }
    }

    /// Exact language equality (via canonical minimal DFAs).
    pub fn same_language(&self, other: &Dfa) -> bool {
        self.alphabet == other.alphabet && self.minimize() == other.minimize()
    }

    /// The same transition structure over a permutation of the alphabet:
    /// `alphabet` must contain exactly the same symbols in some order.
    pub fn reorder(&self, alphabet: &OrderedAlphabet) -> Result<Dfa> {
        if alphabet.len() != self.alphabet.len() {
            return Err(Error::AlphabetMismatch);
        }
        let map: Vec<Letter> = alphabet
            .symbols()
            .iter()
            .map(|s| self.alphabet.letter(s).ok_or(Error::AlphabetMismatch))
            .collect::<Result<_>>()?;
        Ok(Dfa::from_fn(
            alphabet.clone(),
            self.state_count(),
            self.initial,
            |q| self.accepting[q],
            |q, a| self.next(q, map[a]),
        ))
    }

    /// Lengths `0..=max_len` at which the language has a word.
    pub fn length_profile(&self, max_len: usize) -> Vec<bool> {
        let n = self.state_count();
        let mut cur = vec![false; n];
        cur[self.initial] = true;
        let mut out = Vec::with_capacity(max_len + 1);
        for _ in 0..=max_len {
            out.push((0..n).any(|q| cur[q] && self.accepting[q]));
            let mut nxt = vec![false; n];
            for q in (0..n).filter(|&q| cur[q]) {
                for a in self.alphabet.letters() {
                    nxt[self.next(q, a)] = true;
                }
            }
            cur = nxt;
        }
        out
    }

    pub fn to_nfa(&self) -> Nfa {
        let k = self.alphabet.len();
        let delta = (0..self.state_count())
            .map(|q| (0..k).map(|a| vec![self.next(q, a)]).collect())
            .collect();
        Nfa::from_parts(
            self.alphabet.clone(),
            self.initial,
            self.accepting.clone(),
            delta,
        )
    }
}

fn check_state(q: State, n: usize) -> Result<()> {
    if q < n {
        Ok(())
    } else {
        Err(Error::StateOutOfRange { state: q, count: n })
    }
}

/// All words over `k` letters of length exactly `len`, in lexicographic order.
pub fn words_of_length(k: usize, len: usize) -> impl Iterator<Item = Vec<Letter>> {
    let total = k.checked_pow(len as u32).unwrap_or(usize::MAX);
    let total = if k == 0 && len > 0 { 0 } else { total };
    (0..total).map(move |mut idx| {
        let mut w = vec![0; len];
        for pos in (0..len).rev() {
            w[pos] = idx % k;
            idx /= k;
        }
        w
    })
}

/// All words of length `0..=max_len` in radix order.
pub fn words_up_to(k: usize, max_len: usize) -> impl Iterator<Item = Vec<Letter>> {
    (0..=max_len).flat_map(move |len| words_of_length(k, len))
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;

    pub fn ab() -> OrderedAlphabet {
        OrderedAlphabet::new(["a", "b"]).unwrap()
    }

    /// (ab)* with an explicit sink: 0 -a-> 1 -b-> 0, everything else -> 2.
    pub fn ab_star() -> Dfa {
        Dfa::new(ab(), 0, [0], vec![vec![1, 2], vec![2, 0], vec![2, 2]]).unwrap()
    }

    fn unary_mod(m: usize) -> Dfa {
        let a = OrderedAlphabet::new(["a"]).unwrap();
        Dfa::from_fn(a, m, 0, |q| q == 0, move |q, _| (q + 1) % m)
    }

    #[test]
    fn acceptance_examples() {
        let all = Dfa::universal(ab());
        assert!(all.accepts(&[0, 1, 1]));
        let d = ab_star();
        assert!(d.accepts(&[0, 1]));
        assert!(!d.accepts(&[0]));
        assert!(d.accepts(&[]));
    }

    #[test]
    fn trace_examples() {
        let d = ab_star();
        assert_eq!(d.trace(0, &[]).states(), &[0]);
        assert_eq!(d.trace(0, &[0, 1]).states(), &[0, 1, 0]);
        let one = Dfa::universal(ab());
        assert_eq!(one.trace(0, &[0, 0]).states(), &[0, 0, 0]);
    }

    #[test]
    fn product_examples() {
        let d = ab_star();
        let all = Dfa::universal(ab());
        let none = Dfa::empty(ab());
        let inter = all.product(&d, ProductMode::Intersection).unwrap();
        assert!(inter.same_language(&d));
        let uni = none.product(&d, ProductMode::Union).unwrap();
        assert!(uni.same_language(&d));

        let six = unary_mod(2)
            .product(&unary_mod(3), ProductMode::Intersection)
            .unwrap();
        for len in 0..=12 {
            assert_eq!(six.accepts(&vec![0; len]), len % 6 == 0, "length {len}");
        }
    }

    #[test]
    fn product_rejects_alphabet_mismatch() {
        let d = ab_star();
        let other = Dfa::universal(OrderedAlphabet::digits(2));
        assert!(matches!(
            d.product(&other, ProductMode::Union),
            Err(Error::AlphabetMismatch)
        ));
    }

    #[test]
    fn minimize_merges_equivalent_states() {
        let one = Dfa::universal(ab());
        assert_eq!(one.minimize(), one);

        // 0 -a-> 1, 0 -b-> 2; 1 and 2 are equivalent accepting sinks.
        let redundant =
            Dfa::new(ab(), 0, [1, 2], vec![vec![1, 2], vec![1, 1], vec![2, 2]]).unwrap();
        let min = redundant.minimize();
        assert_eq!(min.state_count(), redundant.state_count() - 1);
        for w in words_up_to(2, 8) {
            assert_eq!(min.accepts(&w), redundant.accepts(&w));
        }
    }

    #[test]
    fn minimize_drops_unreachable_and_keeps_sink() {
        let d = ab_star().padded_to(6);
        let min = d.minimize();
        assert_eq!(min.state_count(), 3);
        assert!(min.same_language(&ab_star()));
        assert_eq!(Dfa::empty(ab()).minimize().state_count(), 1);
    }

    #[test]
    fn reorder_keeps_language() {
        let d = ab_star();
        let rev = d.reorder(&ab().reversed()).unwrap();
        let a = rev.alphabet().letter("a").unwrap();
        let b = rev.alphabet().letter("b").unwrap();
        assert!(rev.accepts(&[a, b, a, b]));
        assert!(!rev.accepts(&[b, a]));
    }

    #[test]
    fn word_enumeration_is_radix_ordered() {
        let all: Vec<_> = words_up_to(2, 2).collect();
        assert_eq!(
            all,
            vec![
                vec![],
                vec![0],
                vec![1],
                vec![0, 0],
                vec![0, 1],
                vec![1, 0],
                vec![1, 1]
            ]
        );
    }
}
