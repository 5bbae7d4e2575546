//! Per-length word search in a DFA: least and greatest words of a given
//! length, the least word above a given word, and successors.

use crate::alphabet::Letter;
use crate::dfa::{Dfa, State};

/// `can(q, len)`: some word of length exactly `len` leads from `q` to an
/// accepting state. Rows are computed on demand.
#[derive(Clone, Debug)]
pub struct LengthTable<'a> {
    dfa: &'a Dfa,
    rows: Vec<Vec<bool>>,
}

impl<'a> LengthTable<'a> {
    pub fn new(dfa: &'a Dfa) -> Self {
        let first = (0..dfa.state_count())
            .map(|q| dfa.is_accepting(q))
            .collect();
        Self {
            dfa,
            rows: vec![first],
        }
    }

    pub fn dfa(&self) -> &'a Dfa {
        self.dfa
    }

    fn ensure(&mut self, len: usize) {
        while self.rows.len() <= len {
            let prev = self.rows.last().expect("row 0 exists");
            let row = (0..self.dfa.state_count())
                .map(|q| {
                    self.dfa
                        .alphabet()
                        .letters()
                        .any(|a| prev[self.dfa.next(q, a)])
                })
                .collect();
            self.rows.push(row);
        }
    }

    pub fn can(&mut self, q: State, len: usize) -> bool {
        self.ensure(len);
        self.rows[len][q]
    }

    /// Extends `prefix` (read from `q`) by the least or greatest completion
    /// of length `len` accepted from `q`.
    fn complete(
        &mut self,
        mut q: State,
        len: usize,
        prefix: &mut Vec<Letter>,
        least: bool,
    ) -> bool {
        if !self.can(q, len) {
            return false;
        }
        let k = self.dfa.alphabet().len();
        for rest in (0..len).rev() {
            let pick = (0..k)
                .map(|i| if least { i } else { k - 1 - i })
                .find(|&a| self.can(self.dfa.next(q, a), rest))
                .expect("table guarantees a continuation");
            prefix.push(pick);
            q = self.dfa.next(q, pick);
        }
        true
    }

    pub fn least_of_length(&mut self, len: usize) -> Option<Vec<Letter>> {
        let mut w = Vec::with_capacity(len);
        self.complete(self.dfa.initial(), len, &mut w, true)
            .then_some(w)
    }

    pub fn greatest_of_length(&mut self, len: usize) -> Option<Vec<Letter>> {
        let mut w = Vec::with_capacity(len);
        self.complete(self.dfa.initial(), len, &mut w, false)
            .then_some(w)
    }

    /// Least accepted word of length `|w|` that is strictly greater than `w`.
    pub fn least_above(&mut self, w: &[Letter]) -> Option<Vec<Letter>> {
        let trace = self.dfa.trace(self.dfa.initial(), w);
        let k = self.dfa.alphabet().len();
        for i in (0..w.len()).rev() {
            let p = trace.states()[i];
            let rest = w.len() - i - 1;
            for b in w[i] + 1..k {
                let t = self.dfa.next(p, b);
                if self.can(t, rest) {
                    let mut out = w[..i].to_vec();
                    out.push(b);
                    self.complete(t, rest, &mut out, true);
                    return Some(out);
                }
            }
        }
        None
    }

    /// The radix-order successor of `w`, looking at most `extra` letters
    /// beyond `|w|`.
    pub fn successor(&mut self, w: &[Letter], extra: usize) -> Option<Vec<Letter>> {
        self.least_above(w)
            .or_else(|| (w.len() + 1..=w.len() + extra).find_map(|len| self.least_of_length(len)))
    }
}

/// Length of the shortest accepted word, if any.
pub fn shortest_length(dfa: &Dfa) -> Option<usize> {
    let n = dfa.state_count();
    let mut dist = vec![usize::MAX; n];
    dist[dfa.initial()] = 0;
    let mut queue = std::collections::VecDeque::from([dfa.initial()]);
    while let Some(q) = queue.pop_front() {
        if dfa.is_accepting(q) {
            return Some(dist[q]);
        }
        for a in dfa.alphabet().letters() {
            let t = dfa.next(q, a);
            if dist[t] == usize::MAX {
                dist[t] = dist[q] + 1;
                queue.push_back(t);
            }
        }
    }
    None
}

/// The radix-least accepted word.
pub fn minimal_word(dfa: &Dfa) -> Option<Vec<Letter>> {
    let len = shortest_length(dfa)?;
    LengthTable::new(dfa).least_of_length(len)
}

/// Radix-order successor of `w` in `L(dfa)`. Words longer than
/// `|w| + state_count` need not be searched: a state that can still reach
/// acceptance does so within `state_count - 1` letters.
pub fn successor(dfa: &Dfa, w: &[Letter]) -> Option<Vec<Letter>> {
    LengthTable::new(dfa).successor(w, dfa.state_count())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alphabet::OrderedAlphabet;

    fn bin() -> OrderedAlphabet {
        OrderedAlphabet::digits(2)
    }

    #[test]
    fn universal_language() {
        let all = Dfa::universal(bin());
        let mut t = LengthTable::new(&all);
        assert_eq!(t.least_of_length(3), Some(vec![0, 0, 0]));
        assert_eq!(t.greatest_of_length(2), Some(vec![1, 1]));
        assert_eq!(t.least_above(&[0, 1]), Some(vec![1, 0]));
        assert_eq!(t.least_above(&[1, 1]), None);
        assert_eq!(successor(&all, &[1, 1]), Some(vec![0, 0, 0]));
        assert_eq!(minimal_word(&all), Some(vec![]));
    }

    #[test]
    fn empty_language() {
        let none = Dfa::empty(bin());
        assert_eq!(minimal_word(&none), None);
        assert_eq!(successor(&none, &[]), None);
    }

    #[test]
    fn starts_with_one() {
        // 1(0+1)*
        let d = Dfa::new(bin(), 0, [1], vec![vec![2, 1], vec![1, 1], vec![2, 2]]).unwrap();
        assert_eq!(minimal_word(&d), Some(vec![1]));
        assert_eq!(successor(&d, &[0]), Some(vec![1]));
        assert_eq!(successor(&d, &[1, 1]), Some(vec![1, 0, 0]));
    }
}
