//! Tuple covers: finite unions of lassos `x_i y_i* z_i` that contain every
//! smallest word of `L` and are contained in `L`.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet, VecDeque};

use serde::Serialize;

use crate::alphabet::{Letter, OrderedAlphabet};
use crate::dfa::{Dfa, State};
use crate::error::{Error, Result};
use crate::words::LengthTable;

use super::factor::{extract_pump, pump_n};
use super::lasso::{LassoNfa, LassoTriple};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TupleCover {
    alphabet: OrderedAlphabet,
    n: usize,
    triples: Vec<LassoTriple>,
}

/// The size bounds a cover is expected to meet.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CoverBounds {
    pub k_le_n4_plus_n3: bool,
    pub xz_le_n3_plus_n2: bool,
    pub y_sum_le_n: bool,
    pub shapes_distinct: bool,
}

impl CoverBounds {
    pub fn all(&self) -> bool {
        self.k_le_n4_plus_n3 && self.xz_le_n3_plus_n2 && self.y_sum_le_n && self.shapes_distinct
    }
}

impl TupleCover {
    pub fn new(alphabet: OrderedAlphabet, n: usize, triples: Vec<LassoTriple>) -> Self {
        Self {
            alphabet,
            n,
            triples,
        }
    }

    pub fn alphabet(&self) -> &OrderedAlphabet {
        &self.alphabet
    }

    /// The state count the bounds refer to.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn triples(&self) -> &[LassoTriple] {
        &self.triples
    }

    pub fn len(&self) -> usize {
        self.triples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.triples.is_empty()
    }

    pub fn contains(&self, w: &[Letter]) -> bool {
        self.triples.iter().any(|t| t.contains(w))
    }

    pub fn max_xz(&self) -> usize {
        self.triples
            .iter()
            .map(LassoTriple::xz_len)
            .max()
            .unwrap_or(0)
    }

    /// The distinct loop lengths, including 0 for word triples.
    pub fn y_lengths(&self) -> BTreeSet<usize> {
        self.triples.iter().map(|t| t.y.len()).collect()
    }

    pub fn bounds(&self) -> CoverBounds {
        let n = self.n;
        let shapes: HashSet<(usize, usize)> = self
            .triples
            .iter()
            .map(|t| (t.xz_len(), t.y.len()))
            .collect();
        CoverBounds {
            k_le_n4_plus_n3: self.len() <= n.pow(4) + n.pow(3),
            xz_le_n3_plus_n2: self.max_xz() <= n.pow(3) + n.pow(2),
            y_sum_le_n: self.y_lengths().iter().sum::<usize>() <= n,
            shapes_distinct: shapes.len() == self.len(),
        }
    }
}

/// States of `tr(q0.x, y)`, after checking `q0.x = q0.xy`.
pub fn cycle_states(dfa: &Dfa, t: &LassoTriple) -> Result<BTreeSet<State>> {
    let p = dfa.run(&t.x);
    let trace = dfa.trace(p, &t.y);
    if trace.last() != p {
        return Err(Error::LoopCondition);
    }
    Ok(trace.states().iter().copied().collect())
}

pub fn are_cycle_disjoint(dfa: &Dfa, s: &LassoTriple, t: &LassoTriple) -> Result<bool> {
    let a = cycle_states(dfa, s)?;
    let b = cycle_states(dfa, t)?;
    Ok(a == b || a.is_disjoint(&b))
}

/// Whether every pair of triples in the cover is cycle-disjoint.
pub fn is_cycle_disjoint_cover(dfa: &Dfa, cover: &TupleCover) -> Result<bool> {
    let sets = cover
        .triples
        .iter()
        .map(|t| cycle_states(dfa, t))
        .collect::<Result<Vec<_>>>()?;
    Ok(sets
        .iter()
        .enumerate()
        .all(|(i, a)| sets[i + 1..].iter().all(|b| a == b || a.is_disjoint(b))))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Which {
    First,
    Second,
}

/// Outcome of resolving two overlapping lassos: the truncated one can be
/// replaced by the listed words without losing any smallest word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Resolution {
    pub truncated: Which,
    pub replacements: Vec<LassoTriple>,
}

/// Resolves two lassos whose cycles share some but not all states.
///
/// With `y = uv`, `y' = u'v'` split at the first common state, the rotation
/// powers `(vu)^|y'|` and `(v'u')^|y|` are compared. The lasso with the
/// larger power only has smallest words among its pumpings with exponent at
/// most the other loop's length. If one loop is empty, its lasso is a single
/// word and is returned unchanged as its own replacement.
pub fn resolve_overlap(dfa: &Dfa, s: &LassoTriple, t: &LassoTriple) -> Result<Resolution> {
    if are_cycle_disjoint(dfa, s, t)? {
        return Err(Error::CycleDisjoint);
    }
    let truncate = |which: Which, keep: &LassoTriple, other: &LassoTriple| Resolution {
        truncated: which,
        replacements: (0..=other.y.len())
            .map(|i| LassoTriple::word(keep.pumped(i)))
            .collect(),
    };
    if s.y.is_empty() {
        return Ok(Resolution {
            truncated: Which::First,
            replacements: vec![LassoTriple::word(s.pumped(0))],
        });
    }
    if t.y.is_empty() {
        return Ok(Resolution {
            truncated: Which::Second,
            replacements: vec![LassoTriple::word(t.pumped(0))],
        });
    }
    let trace_s = dfa.trace(dfa.run(&s.x), &s.y);
    let trace_t = dfa.trace(dfa.run(&t.x), &t.y);
    let (i, j) = (0..s.y.len())
        .flat_map(|i| (0..t.y.len()).map(move |j| (i, j)))
        .find(|&(i, j)| trace_s.states()[i] == trace_t.states()[j])
        .expect("overlapping cycles share a state");
    let power = |y: &[Letter], split: usize, times: usize| -> Vec<Letter> {
        let rot: Vec<Letter> = y[split..].iter().chain(&y[..split]).copied().collect();
        rot.iter()
            .copied()
            .cycle()
            .take(rot.len() * times)
            .collect()
    };
    let a = power(&s.y, i, t.y.len());
    let b = power(&t.y, j, s.y.len());
    match a.cmp(&b) {
        std::cmp::Ordering::Less => Ok(truncate(Which::Second, t, s)),
        std::cmp::Ordering::Greater => Ok(truncate(Which::First, s, t)),
        std::cmp::Ordering::Equal => Err(Error::CoverInvariant(
            "overlapping cycles with equal rotation powers".into(),
        )),
    }
}

/// Builds a tuple cover for `L(dfa)`.
///
/// Pumps of smallest words seed the cover. Lassos with the same `(|xz|, |y|)`
/// are reduced to the eventually smaller one, overlapping cycles are resolved
/// with [`resolve_overlap`], and the result is checked exactly against `L`:
/// while some word of `L` has no cover word of its length below it, the pump
/// of the smallest word of that length is added and the reduction repeats.
pub fn simplify_tuples(dfa: &Dfa) -> TupleCover {
    let n = pump_n(dfa);
    let mut s = Simplifier {
        dfa,
        table: LengthTable::new(dfa),
        smallest: HashMap::new(),
        pumped: BTreeSet::new(),
        words: BTreeMap::new(),
    };
    for m in 0..=n * n + n {
        s.add_smallest_of_length(m);
    }
    loop {
        s.eliminate();
        let triples = s.assemble();
        match uncovered_length(dfa, &triples) {
            None => return TupleCover::new(dfa.alphabet().clone(), n, triples),
            Some(m) => s.add_smallest_of_length(m),
        }
    }
}

struct Simplifier<'a> {
    dfa: &'a Dfa,
    table: LengthTable<'a>,
    smallest: HashMap<usize, Option<Vec<Letter>>>,
    pumped: BTreeSet<LassoTriple>,
    /// Single-word triples, at most one (the least) per length.
    words: BTreeMap<usize, Vec<Letter>>,
}

impl Simplifier<'_> {
    fn smallest(&mut self, m: usize) -> Option<Vec<Letter>> {
        if let Some(w) = self.smallest.get(&m) {
            return w.clone();
        }
        let w = self.table.least_of_length(m);
        self.smallest.insert(m, w.clone());
        w
    }

    fn add_smallest_of_length(&mut self, m: usize) {
        let Some(w) = self.smallest(m) else { return };
        let pump = extract_pump(self.dfa, &w).expect("smallest words have a pump");
        if pump.triple.y.is_empty() {
            self.add_word(w);
        } else {
            self.pumped.insert(pump.triple);
        }
    }

    fn add_word(&mut self, w: Vec<Letter>) {
        match self.words.get(&w.len()) {
            Some(old) if *old <= w => {}
            _ => {
                self.words.insert(w.len(), w);
            }
        }
    }

    fn eliminate(&mut self) {
        while self.eliminate_same_shape() || self.eliminate_overlap() {}
    }

    /// Two lassos with equal `|xz|` and `|y|`: beyond a threshold the order
    /// of their words of equal length no longer changes, so the eventually
    /// larger one only contributes its words below the threshold.
    fn eliminate_same_shape(&mut self) -> bool {
        let list: Vec<LassoTriple> = self.pumped.iter().cloned().collect();
        for (i, s) in list.iter().enumerate() {
            for t in &list[i + 1..] {
                if s.xz_len() != t.xz_len() || s.y.len() != t.y.len() {
                    continue;
                }
                let l = s.y.len();
                let threshold = (s.x.len().max(t.x.len()) + l).div_ceil(l) + 1;
                let m = s.xz_len() + threshold * l;
                let loser = if t.cmp_at(s, m).is_lt() { s } else { t };
                self.pumped.remove(loser);
                for e in 0..threshold {
                    self.add_word(loser.pumped(e));
                }
                return true;
            }
        }
        false
    }

    fn eliminate_overlap(&mut self) -> bool {
        let list: Vec<LassoTriple> = self.pumped.iter().cloned().collect();
        for (i, s) in list.iter().enumerate() {
            for t in &list[i + 1..] {
                if are_cycle_disjoint(self.dfa, s, t).expect("pumps satisfy the loop condition") {
                    continue;
                }
                let r = resolve_overlap(self.dfa, s, t).expect("cycles overlap");
                let loser = match r.truncated {
                    Which::First => s,
                    Which::Second => t,
                };
                self.pumped.remove(loser);
                for w in r.replacements {
                    self.add_word(w.pumped(0));
                }
                return true;
            }
        }
        false
    }

    /// Current cover: lassos first, then the smallest words not already in
    /// a lasso. A word is split at a state outside the other cycles if there
    /// is one; otherwise it is threaded through a lasso cycle it meets, with
    /// the loop rotated to start at the meeting state.
    fn assemble(&mut self) -> Vec<LassoTriple> {
        let mut triples: Vec<LassoTriple> = self.pumped.iter().cloned().collect();
        let lassos = triples.len();
        let cycles: Vec<BTreeSet<State>> = triples
            .iter()
            .map(|t| cycle_states(self.dfa, t).expect("pumps satisfy the loop condition"))
            .collect();
        let words: Vec<Vec<Letter>> = self.words.values().cloned().collect();
        for w in words {
            if self.smallest(w.len()).as_ref() != Some(&w) || triples.iter().any(|t| t.contains(&w))
            {
                continue;
            }
            let trace = self.dfa.trace(self.dfa.initial(), &w);
            let split = (0..=w.len()).rev().find(|&i| {
                let p = trace.states()[i];
                cycles.iter().all(|c| !c.contains(&p) || (c.len() == 1))
            });
            let triple = match split {
                Some(i) => LassoTriple::new(w[..i].to_vec(), Vec::new(), w[i..].to_vec()),
                None => self
                    .thread(&w, trace.states(), &triples[..lassos], &cycles)
                    .filter(|t| {
                        !triples
                            .iter()
                            .any(|o| o.xz_len() == t.xz_len() && o.y.len() == t.y.len())
                    })
                    .unwrap_or_else(|| LassoTriple::word(w.clone())),
            };
            triples.push(triple);
        }
        triples
    }

    /// `(w[..i], y', w[i..])` where `y'` is a rotation of a lasso loop whose
    /// cycle passes through the state reached after `w[..i]`.
    fn thread(
        &self,
        w: &[Letter],
        trace: &[State],
        lassos: &[LassoTriple],
        cycles: &[BTreeSet<State>],
    ) -> Option<LassoTriple> {
        (0..=w.len()).rev().find_map(|i| {
            let p = trace[i];
            let l = (0..lassos.len()).find(|&l| cycles[l].contains(&p))?;
            let t = &lassos[l];
            let hub = self.dfa.run(&t.x);
            let loop_trace = self.dfa.trace(hub, &t.y);
            let r = loop_trace.states().iter().position(|&q| q == p)?;
            let y = [&t.y[r..], &t.y[..r]].concat();
            Some(LassoTriple::new(w[..i].to_vec(), y, w[i..].to_vec()))
        })
    }
}

/// Length of a shortest word `w` of `L(dfa)` such that no cover word of
/// length `|w|` is `<= w`; `None` iff every smallest word of `L` is covered.
pub fn uncovered_length(dfa: &Dfa, triples: &[LassoTriple]) -> Option<usize> {
    // Items (lasso, position, strictly-greater-so-far).
    type Item = (u32, u32, bool);
    let nfas: Vec<LassoNfa> = triples.iter().map(LassoTriple::positions).collect();
    let live = dfa.live_states();
    if !live[dfa.initial()] {
        return None;
    }
    let start: Vec<Item> = (0..nfas.len() as u32).map(|i| (i, 0, false)).collect();
    let mut seen: HashSet<(State, Vec<Item>)> = HashSet::new();
    seen.insert((dfa.initial(), start.clone()));
    let mut queue = VecDeque::from([(dfa.initial(), start, 0usize)]);
    while let Some((q, set, depth)) = queue.pop_front() {
        if dfa.is_accepting(q)
            && !set
                .iter()
                .any(|&(i, p, _)| p as usize == nfas[i as usize].final_pos())
        {
            return Some(depth);
        }
        for a in dfa.alphabet().letters() {
            let q2 = dfa.next(q, a);
            if !live[q2] {
                continue;
            }
            let mut next: Vec<Item> = Vec::new();
            for &(i, p, gt) in &set {
                for &(c, p2) in nfas[i as usize].moves(p as usize) {
                    if gt || c < a {
                        next.push((i, p2 as u32, true));
                    } else if c == a {
                        next.push((i, p2 as u32, false));
                    }
                }
            }
            next.sort_unstable();
            next.dedup();
            // A greater-so-far item subsumes the equal-so-far item.
            let mut pruned: Vec<Item> = Vec::with_capacity(next.len());
            for item in next {
                if let Some(last) = pruned.last_mut() {
                    if (last.0, last.1) == (item.0, item.1) {
                        *last = item;
                        continue;
                    }
                }
                pruned.push(item);
            }
            if seen.insert((q2, pruned.clone())) {
                queue.push_back((q2, pruned, depth + 1));
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dfa::tests::ab;
    use crate::dfa::words_up_to;

    /// 3-cycle 0 -a-> 1 -a-> 2 -a-> 0, with `b` from 0 to 1 and elsewhere
    /// to a sink 3.
    fn triangle() -> Dfa {
        Dfa::new(
            ab(),
            0,
            [0],
            vec![vec![1, 1], vec![2, 3], vec![0, 3], vec![3, 3]],
        )
        .unwrap()
    }

    #[test]
    fn cycle_disjointness_examples() {
        let d = triangle();
        let s = LassoTriple::new(vec![], vec![0, 0, 0], vec![]);
        assert!(are_cycle_disjoint(&d, &s, &s).unwrap());
        let e1 = LassoTriple::word(vec![0]);
        let e2 = LassoTriple::word(vec![0, 0]);
        assert!(are_cycle_disjoint(&d, &e1, &e2).unwrap());
        // b a a: 0 -b-> 1 -a-> 2 -a-> 0 visits the same three states.
        let t = LassoTriple::new(vec![], vec![1, 0, 0], vec![]);
        assert!(are_cycle_disjoint(&d, &s, &t).unwrap());
        let bad = LassoTriple::new(vec![], vec![0], vec![]);
        assert!(matches!(cycle_states(&d, &bad), Err(Error::LoopCondition)));
    }

    #[test]
    fn partially_shared_cycles_are_not_disjoint() {
        // 0 -a-> 1 -a-> 0 and 1 -b-> 2 -b-> 1: cycles {0,1} and {1,2}.
        let d = Dfa::new(
            ab(),
            0,
            [0, 1, 2],
            vec![vec![1, 3], vec![0, 2], vec![3, 1], vec![3, 3]],
        )
        .unwrap();
        let s = LassoTriple::new(vec![], vec![0, 0], vec![]);
        let t = LassoTriple::new(vec![0], vec![1, 1], vec![]);
        assert!(!are_cycle_disjoint(&d, &s, &t).unwrap());
        let r = resolve_overlap(&d, &s, &t).unwrap();
        // Split at state 1: (a a)^2 rotated = "aaaa" versus (b b)^2 = "bbbb".
        assert_eq!(r.truncated, Which::Second);
        assert_eq!(r.replacements.len(), 3);
        assert!(r.replacements.iter().all(|w| w.y.is_empty()));
        assert!(matches!(
            resolve_overlap(&d, &s, &s),
            Err(Error::CycleDisjoint)
        ));
    }

    #[test]
    fn empty_language_gives_empty_cover() {
        let c = simplify_tuples(&Dfa::empty(ab()));
        assert!(c.is_empty());
    }

    #[test]
    fn universal_unary_cover() {
        let a = OrderedAlphabet::new(["a"]).unwrap();
        let d = Dfa::universal(a).padded_to(3);
        let c = simplify_tuples(&d);
        for len in 0..=20 {
            assert!(c.contains(&vec![0; len]));
        }
        assert!(c.bounds().all());
    }

    #[test]
    fn sandwich_on_small_dfa() {
        let d = triangle();
        let c = simplify_tuples(&d);
        let mut table = LengthTable::new(&d);
        for w in words_up_to(2, 10) {
            if c.contains(&w) {
                assert!(d.accepts(&w), "{w:?}");
            }
            if table.least_of_length(w.len()).as_deref() == Some(&w[..]) {
                assert!(c.contains(&w), "{w:?}");
            }
        }
        assert!(is_cycle_disjoint_cover(&d, &c).unwrap());
    }

    #[test]
    fn uncovered_length_finds_gaps() {
        let d = Dfa::universal(ab());
        assert_eq!(uncovered_length(&d, &[]), Some(0));
        let t = [LassoTriple::new(vec![], vec![0], vec![])];
        assert_eq!(uncovered_length(&d, &t), None);
        let t = [LassoTriple::new(vec![], vec![0, 0], vec![])];
        assert_eq!(uncovered_length(&d, &t), Some(1));
        // "b" is above every length-1 cover word "a": covered.
        let t = [
            LassoTriple::new(vec![], vec![1], vec![]),
            LassoTriple::word(vec![0]),
        ];
        assert_eq!(uncovered_length(&d, &t), Some(2));
    }
}
