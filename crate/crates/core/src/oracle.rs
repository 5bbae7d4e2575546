//! Brute-force reference answers computed straight from the definitions:
//! words of each length are visited in lexicographic order by depth-first
//! search, skipping only subtrees with no accepted completion.

use std::cmp::Ordering;

use crate::alphabet::Letter;
use crate::dfa::{Dfa, State};

/// Depth-first search over the accepted words of a fixed length.
pub struct Oracle<'a> {
    dfa: &'a Dfa,
    /// `completes[r][q]`: some word of length `r` leads from `q` to acceptance.
    completes: Vec<Vec<bool>>,
}

impl<'a> Oracle<'a> {
    pub fn new(dfa: &'a Dfa) -> Self {
        Self {
            dfa,
            completes: vec![(0..dfa.state_count())
                .map(|q| dfa.is_accepting(q))
                .collect()],
        }
    }

    fn completes(&mut self, q: State, r: usize) -> bool {
        while self.completes.len() <= r {
            let last = self.completes.last().expect("nonempty");
            let row = (0..self.dfa.state_count())
                .map(|p| (0..self.dfa.alphabet().len()).any(|a| last[self.dfa.next(p, a)]))
                .collect();
            self.completes.push(row);
        }
        self.completes[r][q]
    }

    /// Accepted words of length `len` in lexicographic order (or reverse
    /// lexicographic if `descending`), stopping when `visit` returns false.
    pub fn scan(&mut self, len: usize, descending: bool, mut visit: impl FnMut(&[Letter]) -> bool) {
        let mut word = Vec::with_capacity(len);
        self.scan_rec(self.dfa.initial(), len, descending, &mut word, &mut visit);
    }

    fn scan_rec(
        &mut self,
        q: State,
        len: usize,
        descending: bool,
        word: &mut Vec<Letter>,
        visit: &mut impl FnMut(&[Letter]) -> bool,
    ) -> bool {
        let rest = len - word.len();
        if !self.completes(q, rest) {
            return true;
        }
        if rest == 0 {
            return visit(word);
        }
        let k = self.dfa.alphabet().len();
        for i in 0..k {
            let a = if descending { k - 1 - i } else { i };
            word.push(a);
            let go_on = self.scan_rec(self.dfa.next(q, a), len, descending, word, visit);
            word.pop();
            if !go_on {
                return false;
            }
        }
        true
    }

    pub fn first_of_length(&mut self, len: usize, descending: bool) -> Option<Vec<Letter>> {
        let mut found = None;
        self.scan(len, descending, |w| {
            found = Some(w.to_vec());
            false
        });
        found
    }

    /// Least accepted word of length `|w|` strictly above `w`. Subtrees
    /// whose prefix is already below `w` are skipped.
    pub fn least_above(&mut self, w: &[Letter]) -> Option<Vec<Letter>> {
        let mut word = Vec::with_capacity(w.len());
        self.above_rec(self.dfa.initial(), w, true, &mut word)
            .then_some(word)
    }

    fn above_rec(&mut self, q: State, w: &[Letter], tight: bool, word: &mut Vec<Letter>) -> bool {
        let rest = w.len() - word.len();
        if !self.completes(q, rest) {
            return false;
        }
        if rest == 0 {
            return !tight;
        }
        let lo = if tight { w[word.len()] } else { 0 };
        for a in lo..self.dfa.alphabet().len() {
            word.push(a);
            let still = tight && a == w[word.len() - 1];
            if self.above_rec(self.dfa.next(q, a), w, still, word) {
                return true;
            }
            word.pop();
        }
        false
    }

    /// Whether `L` has a word of length `len`.
    pub fn has_length(&mut self, len: usize) -> bool {
        self.completes(self.dfa.initial(), len)
    }
}

/// For each length `0..=max_len` at which `L` is nonempty, its least word.
pub fn oracle_smallest(dfa: &Dfa, max_len: usize) -> Vec<Vec<Letter>> {
    oracle_smallest_table(dfa, max_len)
        .into_iter()
        .flatten()
        .collect()
}

/// Least word of each length `0..=max_len`, indexed by length.
pub fn oracle_smallest_table(dfa: &Dfa, max_len: usize) -> Vec<Option<Vec<Letter>>> {
    let mut o = Oracle::new(dfa);
    (0..=max_len)
        .map(|len| o.first_of_length(len, false))
        .collect()
}

/// Greatest word of each length `0..=max_len`, indexed by length.
pub fn oracle_largest_table(dfa: &Dfa, max_len: usize) -> Vec<Option<Vec<Letter>>> {
    let mut o = Oracle::new(dfa);
    (0..=max_len)
        .map(|len| o.first_of_length(len, true))
        .collect()
}

/// The least word of `L` above `w`, searching lengths `|w|..=|w|+n+1`.
pub fn oracle_successor(dfa: &Dfa, w: &[Letter]) -> Option<Vec<Letter>> {
    let mut o = Oracle::new(dfa);
    o.least_above(w).or_else(|| {
        (w.len() + 1..=w.len() + dfa.state_count() + 1)
            .find_map(|len| o.first_of_length(len, false))
    })
}

/// Whether the successor of `w` exists and has the same length.
pub fn oracle_length_preserving(dfa: &Dfa, w: &[Letter]) -> bool {
    Oracle::new(dfa).least_above(w).is_some()
}

/// For each length `0..=max_len`: true iff `L` has no word of that length.
pub fn oracle_x(dfa: &Dfa, max_len: usize) -> Vec<bool> {
    let mut o = Oracle::new(dfa);
    (0..=max_len).map(|len| !o.has_length(len)).collect()
}

/// Whether no word of `L` of length `|w|` is strictly greater than `w`.
pub fn oracle_bgeq(dfa: &Dfa, w: &[Letter]) -> bool {
    Oracle::new(dfa).least_above(w).is_none()
}

/// Whether some word of the thin language `L` of length `|v|` satisfies
/// `v ≤ u` (`Less`) or `v ≥ u` (`Greater`).
pub fn oracle_thin_compare(dfa: &Dfa, v: &[Letter], side: Ordering) -> bool {
    let mut found = false;
    Oracle::new(dfa).scan(v.len(), false, |u| {
        found = v.cmp(u) == side || v == u;
        !found
    });
    found
}

/// The first `count` words of `L` in radix order by scanning length after
/// length. Stops once `n` consecutive lengths past the last word are empty:
/// a longer word would pump down to one of those lengths.
pub fn oracle_enumerate(dfa: &Dfa, count: usize) -> Vec<Vec<Letter>> {
    let mut o = Oracle::new(dfa);
    let mut out = Vec::new();
    let mut last: Option<usize> = None;
    let n = dfa.state_count();
    let mut len = 0;
    while out.len() < count && len <= last.map_or(n, |l| l + n) {
        o.scan(len, false, |w| {
            out.push(w.to_vec());
            last = Some(len);
            out.len() < count
        });
        len += 1;
    }
    out
}
