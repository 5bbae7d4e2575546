//! Lasso languages `x y* z` and their linear position automata.

use std::cmp::Ordering;

use crate::alphabet::Letter;

/// The language `x y* z`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LassoTriple {
    pub x: Vec<Letter>,
    pub y: Vec<Letter>,
    pub z: Vec<Letter>,
}

impl LassoTriple {
    pub fn new(x: Vec<Letter>, y: Vec<Letter>, z: Vec<Letter>) -> Self {
        Self { x, y, z }
    }

    /// A single word as the triple `(w, ε, ε)`.
    pub fn word(w: Vec<Letter>) -> Self {
        Self::new(w, Vec::new(), Vec::new())
    }

    pub fn xz_len(&self) -> usize {
        self.x.len() + self.z.len()
    }

    pub fn pumped(&self, i: usize) -> Vec<Letter> {
        let mut w = self.x.clone();
        for _ in 0..i {
            w.extend_from_slice(&self.y);
        }
        w.extend_from_slice(&self.z);
        w
    }

    /// Whether the language has a word of length `m`.
    pub fn has_length(&self, m: usize) -> bool {
        let base = self.xz_len();
        if self.y.is_empty() {
            m == base
        } else {
            m >= base && (m - base).is_multiple_of(self.y.len())
        }
    }

    /// Letter `p` of the unique word of length `m`. Requires `has_length(m)`.
    pub fn letter_at(&self, m: usize, p: usize) -> Letter {
        if p < self.x.len() {
            self.x[p]
        } else if p >= m - self.z.len() {
            self.z[p - (m - self.z.len())]
        } else {
            self.y[(p - self.x.len()) % self.y.len()]
        }
    }

    pub fn word_of_length(&self, m: usize) -> Option<Vec<Letter>> {
        self.has_length(m)
            .then(|| (0..m).map(|p| self.letter_at(m, p)).collect())
    }

    /// Compares the words of length `m` of two lassos that both have one.
    pub fn cmp_at(&self, other: &LassoTriple, m: usize) -> Ordering {
        for p in 0..m {
            match self.letter_at(m, p).cmp(&other.letter_at(m, p)) {
                Ordering::Equal => continue,
                ord => return ord,
            }
        }
        Ordering::Equal
    }

    pub fn contains(&self, w: &[Letter]) -> bool {
        self.has_length(w.len())
            && w.iter()
                .enumerate()
                .all(|(p, &a)| self.letter_at(w.len(), p) == a)
    }

    pub fn positions(&self) -> LassoNfa {
        LassoNfa::new(self)
    }
}

/// Position automaton of a lasso: positions `0..=|x|` along `x` (the last
/// one is the hub where the loop starts), then the inner positions of `y`,
/// then the positions of `z`.
#[derive(Clone, Debug)]
pub struct LassoNfa {
    moves: Vec<Vec<(Letter, usize)>>,
    final_pos: usize,
}

impl LassoNfa {
    fn new(t: &LassoTriple) -> Self {
        let hub = t.x.len();
        let z_off = hub + t.y.len().saturating_sub(1);
        let count = z_off + t.z.len() + 1;
        let mut moves = vec![Vec::new(); count];
        for (p, &a) in t.x.iter().enumerate() {
            moves[p].push((a, p + 1));
        }
        for (j, &a) in t.y.iter().enumerate() {
            let from = if j == 0 { hub } else { hub + j };
            let to = if j + 1 == t.y.len() { hub } else { hub + j + 1 };
            moves[from].push((a, to));
        }
        for (j, &a) in t.z.iter().enumerate() {
            let from = if j == 0 { hub } else { z_off + j };
            moves[from].push((a, z_off + j + 1));
        }
        let final_pos = if t.z.is_empty() {
            hub
        } else {
            z_off + t.z.len()
        };
        Self { moves, final_pos }
    }

    pub fn len(&self) -> usize {
        self.moves.len()
    }

    pub fn is_empty(&self) -> bool {
        self.moves.is_empty()
    }

    pub fn moves(&self, pos: usize) -> &[(Letter, usize)] {
        &self.moves[pos]
    }

    pub fn final_pos(&self) -> usize {
        self.final_pos
    }

    pub fn accepts(&self, w: &[Letter]) -> bool {
        let mut cur = vec![0usize];
        for &a in w {
            let mut next: Vec<usize> = cur
                .iter()
                .flat_map(|&p| self.moves[p].iter())
                .filter(|&&(c, _)| c == a)
                .map(|&(_, t)| t)
                .collect();
            next.sort_unstable();
            next.dedup();
            cur = next;
        }
        cur.contains(&self.final_pos)
    }
}
