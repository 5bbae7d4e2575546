//! Letter-to-letter transducers with epsilon-input and epsilon-output moves.
//!
//! A run reads the input left to right. Between two letters (and at both
//! ends) it may take any number of epsilon-input transitions. Epsilon-input
//! cycles that emit output are rejected at construction, so every input has
//! finitely many distinct outputs. Output-free epsilon cycles are allowed but
//! produce infinitely many runs, which [`Transducer::apply`] reports as
//! ambiguity.

use std::collections::{HashMap, VecDeque};

use crate::alphabet::{Letter, OrderedAlphabet};
use crate::dfa::State;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Transition {
    pub from: State,
    /// `None` is the empty input.
    pub input: Option<Letter>,
    /// `None` is the empty output.
    pub output: Option<Letter>,
    pub to: State,
}

#[derive(Clone, Debug)]
pub struct Transducer {
    input_alphabet: OrderedAlphabet,
    output_alphabet: OrderedAlphabet,
    initial: State,
    accepting: Vec<bool>,
    transitions: Vec<Transition>,
    outgoing: Vec<Vec<usize>>,
    /// Topological rank of each state's epsilon-SCC.
    eps_rank: Vec<usize>,
    /// Whether each state's epsilon-SCC contains a cycle.
    eps_cyclic: Vec<bool>,
}

/// Number of runs reaching a configuration, and their output when unique.
#[derive(Clone, Debug, Default)]
struct Cell {
    count: u128,
    output: Option<Vec<Letter>>,
}

impl Cell {
    fn single(output: Vec<Letter>) -> Self {
        Self {
            count: 1,
            output: Some(output),
        }
    }

    fn absorb(&mut self, other: Cell) {
        let count = self.count.saturating_add(other.count);
        self.output = match (self.count, other.count) {
            (0, 1) => other.output,
            (1, 0) => self.output.take(),
            _ => None,
        };
        self.count = count;
    }

    fn extended(&self, out: Option<Letter>) -> Cell {
        let output = self.output.as_ref().map(|o| {
            let mut o = o.clone();
            o.extend(out);
            o
        });
        Cell {
            count: self.count,
            output,
        }
    }
}

/// Result of running a transducer on one input.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RunOutcome {
    Rejected,
    Unique(Vec<Letter>),
    /// Two or more accepting runs (`u128::MAX` stands for infinitely many).
    Ambiguous(u128),
}

impl Transducer {
    pub fn new(
        input_alphabet: OrderedAlphabet,
        output_alphabet: OrderedAlphabet,
        states: usize,
        initial: State,
        accepting: impl IntoIterator<Item = State>,
        transitions: impl IntoIterator<Item = Transition>,
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
        let mut ts: Vec<Transition> = transitions.into_iter().collect();
        for t in &ts {
            check(t.from)?;
            check(t.to)?;
            if t.input.is_some_and(|a| a >= input_alphabet.len())
                || t.output.is_some_and(|b| b >= output_alphabet.len())
            {
                return Err(Error::Format("transition letter out of range".into()));
            }
        }
        ts.sort_unstable();
        ts.dedup();
        let mut outgoing = vec![Vec::new(); states];
        for (i, t) in ts.iter().enumerate() {
            outgoing[t.from].push(i);
        }
        let (comp, rank, cyclic) = epsilon_components(states, &ts, &outgoing);
        for t in &ts {
            if t.input.is_none() && t.output.is_some() && comp[t.from] == comp[t.to] {
                return Err(Error::OutputEpsilonCycle(t.from));
            }
        }
        let eps_rank = comp.iter().map(|&c| rank[c]).collect();
        let eps_cyclic = comp.iter().map(|&c| cyclic[c]).collect();
        Ok(Self {
            input_alphabet,
            output_alphabet,
            initial,
            accepting: acc,
            transitions: ts,
            outgoing,
            eps_rank,
            eps_cyclic,
        })
    }

    pub fn input_alphabet(&self) -> &OrderedAlphabet {
        &self.input_alphabet
    }

    pub fn output_alphabet(&self) -> &OrderedAlphabet {
        &self.output_alphabet
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

    pub fn transitions(&self) -> &[Transition] {
        &self.transitions
    }

    fn out(&self, q: State) -> impl Iterator<Item = &Transition> + '_ {
        self.outgoing[q].iter().map(move |&i| &self.transitions[i])
    }

    fn initial_layer(&self) -> HashMap<State, Cell> {
        let mut layer = HashMap::from([(self.initial, Cell::single(Vec::new()))]);
        self.close(&mut layer);
        layer
    }

    fn step(&self, layer: &HashMap<State, Cell>, a: Letter) -> HashMap<State, Cell> {
        let mut next: HashMap<State, Cell> = HashMap::new();
        for (&q, cell) in layer {
            for t in self.out(q).filter(|t| t.input == Some(a)) {
                next.entry(t.to)
                    .or_default()
                    .absorb(cell.extended(t.output));
            }
        }
        self.close(&mut next);
        next
    }

    /// Epsilon closure, propagating run counts in topological order of the
    /// epsilon-SCC graph.
    fn close(&self, layer: &mut HashMap<State, Cell>) {
        if layer
            .keys()
            .all(|&q| !self.out(q).any(|t| t.input.is_none()))
        {
            return;
        }
        let mut seen: Vec<State> = layer.keys().copied().collect();
        let mut marked: std::collections::HashSet<State> = seen.iter().copied().collect();
        let mut i = 0;
        while i < seen.len() {
            let q = seen[i];
            for t in self.out(q).filter(|t| t.input.is_none()) {
                if marked.insert(t.to) {
                    seen.push(t.to);
                }
            }
            i += 1;
        }
        seen.sort_by_key(|&q| (self.eps_rank[q], q));
        let mut start = 0;
        while start < seen.len() {
            let rank = self.eps_rank[seen[start]];
            let end = start
                + seen[start..]
                    .iter()
                    .take_while(|&&q| self.eps_rank[q] == rank)
                    .count();
            let group = &seen[start..end];
            if self.eps_cyclic[group[0]]
                && group
                    .iter()
                    .any(|q| layer.get(q).is_some_and(|c| c.count > 0))
            {
                for &q in group {
                    layer.insert(
                        q,
                        Cell {
                            count: u128::MAX,
                            output: None,
                        },
                    );
                }
            }
            for &q in group {
                let Some(cell) = layer.get(&q).cloned() else {
                    continue;
                };
                if cell.count == 0 {
                    continue;
                }
                for t in self.out(q).filter(|t| t.input.is_none()) {
                    if self.eps_rank[t.to] == rank {
                        continue;
                    }
                    layer
                        .entry(t.to)
                        .or_default()
                        .absorb(cell.extended(t.output));
                }
            }
            start = end;
        }
    }

    fn outcome(&self, layer: &HashMap<State, Cell>) -> RunOutcome {
        let mut total = Cell::default();
        for (&q, cell) in layer {
            if self.accepting[q] {
                total.absorb(cell.clone());
            }
        }
        match total.count {
            0 => RunOutcome::Rejected,
            1 => RunOutcome::Unique(total.output.expect("single run has an output")),
            n => RunOutcome::Ambiguous(n),
        }
    }

    pub fn run(&self, w: &[Letter]) -> RunOutcome {
        let mut layer = self.initial_layer();
        for &a in w {
            if layer.is_empty() {
                break;
            }
            layer = self.step(&layer, a);
        }
        self.outcome(&layer)
    }

    /// Output of the unique accepting run on `w`, `None` if there is no
    /// accepting run, and an error if there are several.
    pub fn apply(&self, w: &[Letter]) -> Result<Option<Vec<Letter>>> {
        match self.run(w) {
            RunOutcome::Rejected => Ok(None),
            RunOutcome::Unique(out) => Ok(Some(out)),
            RunOutcome::Ambiguous(n) => Err(Error::AmbiguousRun(if n == u128::MAX {
                "infinitely many".into()
            } else {
                n.to_string()
            })),
        }
    }

    pub fn accepting_run_count(&self, w: &[Letter]) -> u128 {
        match self.run(w) {
            RunOutcome::Rejected => 0,
            RunOutcome::Unique(_) => 1,
            RunOutcome::Ambiguous(n) => n,
        }
    }

    /// Runs every input of length `0..=max_len`, sharing work between inputs
    /// with a common prefix. Inputs are visited depth-first in lexicographic
    /// order.
    pub fn run_all(&self, max_len: usize, mut visit: impl FnMut(&[Letter], RunOutcome)) {
        let k = self.input_alphabet.len();
        let mut word = Vec::new();
        let root = self.initial_layer();
        self.run_all_rec(&root, &mut word, max_len, k, &mut visit);
    }

    fn run_all_rec(
        &self,
        layer: &HashMap<State, Cell>,
        word: &mut Vec<Letter>,
        max_len: usize,
        k: usize,
        visit: &mut impl FnMut(&[Letter], RunOutcome),
    ) {
        visit(word, self.outcome(layer));
        if word.len() == max_len {
            return;
        }
        for a in 0..k {
            let next = if layer.is_empty() {
                HashMap::new()
            } else {
                self.step(layer, a)
            };
            word.push(a);
            self.run_all_rec(&next, word, max_len, k, visit);
            word.pop();
        }
    }

    /// Restricts to states that are reachable and co-reachable. The initial
    /// state is always kept.
    pub fn trim(&self) -> Transducer {
        let n = self.state_count();
        let mut reach = vec![false; n];
        reach[self.initial] = true;
        let mut stack = vec![self.initial];
        while let Some(q) = stack.pop() {
            for t in self.out(q) {
                if !reach[t.to] {
                    reach[t.to] = true;
                    stack.push(t.to);
                }
            }
        }
        let mut incoming = vec![Vec::new(); n];
        for t in &self.transitions {
            incoming[t.to].push(t.from);
        }
        let mut live: Vec<bool> = self.accepting.clone();
        let mut stack: Vec<State> = (0..n).filter(|&q| live[q]).collect();
        while let Some(q) = stack.pop() {
            for &p in &incoming[q] {
                if !live[p] {
                    live[p] = true;
                    stack.push(p);
                }
            }
        }
        let keep: Vec<bool> = (0..n)
            .map(|q| q == self.initial || (reach[q] && live[q]))
            .collect();
        let mut id = vec![usize::MAX; n];
        let mut count = 0;
        for q in 0..n {
            if keep[q] {
                id[q] = count;
                count += 1;
            }
        }
        let transitions: Vec<Transition> = self
            .transitions
            .iter()
            .filter(|t| keep[t.from] && keep[t.to] && live[t.to] && reach[t.from])
            .map(|t| Transition {
                from: id[t.from],
                to: id[t.to],
                ..*t
            })
            .collect();
        let accepting: Vec<State> = (0..n)
            .filter(|&q| keep[q] && self.accepting[q] && reach[q])
            .map(|q| id[q])
            .collect();
        Transducer::new(
            self.input_alphabet.clone(),
            self.output_alphabet.clone(),
            count,
            id[self.initial],
            accepting,
            transitions,
        )
        .expect("trimming preserves validity")
    }

    pub fn is_unambiguous(&self) -> bool {
        self.ambiguity_witness().is_none()
    }

    /// An input with two distinct accepting runs, found by exploring pairs of
    /// runs over a common input.
    ///
    /// Pairs are tracked in three modes: `Same` (identical so far),
    /// `Pending` (the first run is still taking epsilon moves at a position
    /// where the second has finished its epsilon moves) and `Diverged`.
    pub fn ambiguity_witness(&self) -> Option<Vec<Letter>> {
        #[derive(Clone, Copy, PartialEq, Eq, Hash)]
        enum Mode {
            Same,
            Pending,
            Diverged,
        }
        type Node = (State, State, Mode);
        let start: Node = (self.initial, self.initial, Mode::Same);
        let mut parent: HashMap<Node, Option<(Node, Option<Letter>)>> = HashMap::new();
        parent.insert(start, None);
        let mut queue = VecDeque::from([start]);
        let push = |node: Node,
                    from: Node,
                    letter: Option<Letter>,
                    parent: &mut HashMap<Node, Option<(Node, Option<Letter>)>>,
                    queue: &mut VecDeque<Node>| {
            if let std::collections::hash_map::Entry::Vacant(e) = parent.entry(node) {
                e.insert(Some((from, letter)));
                queue.push_back(node);
            }
        };
        while let Some(node @ (p, q, mode)) = queue.pop_front() {
            if mode != Mode::Same && self.accepting[p] && self.accepting[q] {
                let mut word = Vec::new();
                let mut cur = node;
                while let Some((prev, a)) = parent[&cur] {
                    word.extend(a);
                    cur = prev;
                }
                word.reverse();
                return Some(word);
            }
            match mode {
                Mode::Same => {
                    let out: Vec<&Transition> = self.out(p).collect();
                    for (i, t) in out.iter().enumerate() {
                        push(
                            (t.to, t.to, Mode::Same),
                            node,
                            t.input,
                            &mut parent,
                            &mut queue,
                        );
                        if t.input.is_none() {
                            push(
                                (t.to, p, Mode::Pending),
                                node,
                                None,
                                &mut parent,
                                &mut queue,
                            );
                        }
                        for u in &out[i + 1..] {
                            if t.input == u.input {
                                push(
                                    (t.to, u.to, Mode::Diverged),
                                    node,
                                    t.input,
                                    &mut parent,
                                    &mut queue,
                                );
                            }
                        }
                    }
                }
                Mode::Pending | Mode::Diverged => {
                    for t in self.out(p).filter(|t| t.input.is_none()) {
                        push((t.to, q, mode), node, None, &mut parent, &mut queue);
                    }
                    if mode == Mode::Diverged {
                        for u in self.out(q).filter(|u| u.input.is_none()) {
                            push((p, u.to, mode), node, None, &mut parent, &mut queue);
                        }
                    }
                    for t in self.out(p).filter(|t| t.input.is_some()) {
                        for u in self.out(q).filter(|u| u.input == t.input) {
                            push(
                                (t.to, u.to, Mode::Diverged),
                                node,
                                t.input,
                                &mut parent,
                                &mut queue,
                            );
                        }
                    }
                }
            }
        }
        None
    }
}

/// Tarjan SCCs of the epsilon-input subgraph. Returns the component of each
/// state, a topological rank per component (sources first) and whether each
/// component contains a cycle.
fn epsilon_components(
    n: usize,
    ts: &[Transition],
    outgoing: &[Vec<usize>],
) -> (Vec<usize>, Vec<usize>, Vec<bool>) {
    let eps_succ = |q: State| {
        outgoing[q]
            .iter()
            .map(|&i| &ts[i])
            .filter(|t| t.input.is_none())
            .map(|t| t.to)
    };
    let mut index = vec![usize::MAX; n];
    let mut low = vec![0; n];
    let mut on_stack = vec![false; n];
    let mut stack = Vec::new();
    let mut comp = vec![usize::MAX; n];
    let mut comps = 0;
    let mut counter = 0;
    for root in 0..n {
        if index[root] != usize::MAX {
            continue;
        }
        let mut call: Vec<(State, Vec<State>, usize)> = Vec::new();
        index[root] = counter;
        low[root] = counter;
        counter += 1;
        stack.push(root);
        on_stack[root] = true;
        call.push((root, eps_succ(root).collect(), 0));
        while let Some((v, succ, pos)) = call.last_mut() {
            let v = *v;
            if *pos < succ.len() {
                let w = succ[*pos];
                *pos += 1;
                if index[w] == usize::MAX {
                    index[w] = counter;
                    low[w] = counter;
                    counter += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    call.push((w, eps_succ(w).collect(), 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
            } else {
                call.pop();
                if let Some((parent, _, _)) = call.last() {
                    low[*parent] = low[*parent].min(low[v]);
                }
                if low[v] == index[v] {
                    loop {
                        let w = stack.pop().expect("tarjan stack");
                        on_stack[w] = false;
                        comp[w] = comps;
                        if w == v {
                            break;
                        }
                    }
                    comps += 1;
                }
            }
        }
    }
    // Tarjan emits components in reverse topological order.
    let rank = (0..comps).map(|c| comps - 1 - c).collect();
    let mut size = vec![0usize; comps];
    for &c in &comp {
        size[c] += 1;
    }
    let mut cyclic: Vec<bool> = size.iter().map(|&s| s > 1).collect();
    for t in ts {
        if t.input.is_none() && t.from == t.to {
            cyclic[comp[t.from]] = true;
        }
    }
    (comp, rank, cyclic)
}
