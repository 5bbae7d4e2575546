//! DFA for the smallest words of a tuple cover: a length counter times one
//! activity component per lasso.

use std::collections::HashMap;

use crate::dfa::{Dfa, State};
use crate::error::{Error, Result};
use crate::families::lcm;

use super::cover::TupleCover;
use super::lasso::{LassoNfa, LassoTriple};

/// Length beyond which the counter only keeps the residue modulo the lcm of
/// the loop lengths. Past it, which lassos have a word of a given length and
/// how those words compare depends only on the residue.
pub fn counter_threshold(cover: &TupleCover, period: usize) -> usize {
    let n = cover.n();
    let t = cover.triples();
    let max_x = t.iter().map(|t| t.x.len()).max().unwrap_or(0);
    let max_z = t.iter().map(|t| t.z.len()).max().unwrap_or(0);
    (n.pow(3) + n.pow(2))
        .max(cover.max_xz())
        .max(max_x + max_z + period)
}

/// Recognizes the smallest words of the union of the cover's lassos.
pub fn build_cover_dfa(cover: &TupleCover) -> Result<Dfa> {
    let triples = cover.triples();
    let period = lcm(triples.iter().map(|t| t.y.len()).filter(|&l| l > 0))
        .ok_or_else(|| Error::CoverInvariant("loop length lcm overflows".into()))?;
    let h = counter_threshold(cover, period);
    let top = h + period;
    let next_count = |c: usize| {
        if c <= h {
            c + 1
        } else {
            h + 1 + (c - h) % period
        }
    };
    let winners: Vec<Vec<bool>> = (0..=top).map(|m| winners_at(triples, m)).collect();
    let nfas: Vec<LassoNfa> = triples.iter().map(LassoTriple::positions).collect();

    type Key = (usize, Vec<(u32, u32)>);
    let k = cover.alphabet().len();
    let start: Key = (0, (0..triples.len() as u32).map(|i| (i, 0)).collect());
    let mut index: HashMap<Key, State> = HashMap::new();
    let mut keys: Vec<Key> = Vec::new();
    let mut delta: Vec<Vec<State>> = Vec::new();
    // State 0 is the sink reached once no lasso is active.
    let sink = 0;
    keys.push((usize::MAX, Vec::new()));
    delta.push(vec![sink; k]);
    let mut intern = |key: Key, keys: &mut Vec<Key>, delta: &mut Vec<Vec<State>>| -> State {
        if key.1.is_empty() {
            return sink;
        }
        *index.entry(key.clone()).or_insert_with(|| {
            keys.push(key);
            delta.push(Vec::new());
            keys.len() - 1
        })
    };
    let initial = intern(start, &mut keys, &mut delta);
    let mut i = 1;
    while i < keys.len() {
        let (c, set) = keys[i].clone();
        let c2 = next_count(c);
        let mut row = Vec::with_capacity(k);
        for a in 0..k {
            let mut next: Vec<(u32, u32)> = set
                .iter()
                .flat_map(|&(l, p)| {
                    nfas[l as usize]
                        .moves(p as usize)
                        .iter()
                        .filter(move |&&(b, _)| b == a)
                        .map(move |&(_, p2)| (l, p2 as u32))
                })
                .collect();
            next.sort_unstable();
            next.dedup();
            row.push(intern((c2, next), &mut keys, &mut delta));
        }
        delta[i] = row;
        i += 1;
    }
    let accepting: Vec<State> = (1..keys.len())
        .filter(|&s| {
            let (c, set) = &keys[s];
            set.iter().any(|&(l, p)| {
                p as usize == nfas[l as usize].final_pos() && winners[*c][l as usize]
            })
        })
        .collect();
    Dfa::new(cover.alphabet().clone(), initial, accepting, delta)
}

/// Lassos whose word of length `m` is the least cover word of that length.
fn winners_at(triples: &[LassoTriple], m: usize) -> Vec<bool> {
    let present: Vec<usize> = (0..triples.len())
        .filter(|&i| triples[i].has_length(m))
        .collect();
    let mut win = vec![false; triples.len()];
    let Some(&first) = present.first() else {
        return win;
    };
    let best = present.iter().skip(1).fold(first, |best, &i| {
        if triples[i].cmp_at(&triples[best], m).is_lt() {
            i
        } else {
            best
        }
    });
    for &i in &present {
        win[i] = triples[i].cmp_at(&triples[best], m).is_eq();
    }
    win
}
