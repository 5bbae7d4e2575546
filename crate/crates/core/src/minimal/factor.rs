//! The swap trichotomy, loop factorizations and pump extraction.

use std::cmp::Ordering;

use crate::alphabet::Letter;
use crate::dfa::Dfa;
use crate::error::{Error, Result};

use super::LassoTriple;

/// Which of `xuuyz`, `xuyvz`, `xyvvz` is smallest.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Swap {
    /// `xuuyz < xuyvz`.
    FirstSmaller,
    /// `xyvvz < xuyvz`.
    ThirdSmaller,
    /// All three words coincide.
    AllEqual,
}

/// Decides the trichotomy for `|u| = |v|` by comparing `uy` with `yv`.
pub fn swap_trichotomy(
    _x: &[Letter],
    u: &[Letter],
    y: &[Letter],
    v: &[Letter],
    _z: &[Letter],
) -> Result<Swap> {
    if u.len() != v.len() {
        return Err(Error::LengthMismatch(u.len(), v.len()));
    }
    let uy = u.iter().chain(y);
    let yv = y.iter().chain(v);
    Ok(match uy.cmp(yv) {
        Ordering::Less => Swap::FirstSmaller,
        Ordering::Greater => Swap::ThirdSmaller,
        Ordering::Equal => Swap::AllEqual,
    })
}

/// One factor `u v^exp`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorPart {
    pub u: Vec<Letter>,
    pub v: Vec<Letter>,
    pub exp: usize,
}

/// `w = u_1 v_1^{i_1} ... u_k v_k^{i_k}`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Factorization {
    pub parts: Vec<FactorPart>,
}

impl Factorization {
    pub fn concat(&self) -> Vec<Letter> {
        let mut w = Vec::new();
        for p in &self.parts {
            w.extend_from_slice(&p.u);
            for _ in 0..p.exp {
                w.extend_from_slice(&p.v);
            }
        }
        w
    }

    /// Offset of `u_j` and of the remainder after `u_j v_j^{i_j}`.
    pub fn offsets(&self, j: usize) -> (usize, usize) {
        let start: usize = self.parts[..j]
            .iter()
            .map(|p| p.u.len() + p.exp * p.v.len())
            .sum();
        let p = &self.parts[j];
        (start, start + p.u.len() + p.exp * p.v.len())
    }
}

/// Factorizes `w` by repeatedly cutting at the first repeated state of the
/// remaining trace.
pub fn factorize(dfa: &Dfa, w: &[Letter]) -> Factorization {
    let mut parts: Vec<FactorPart> = Vec::new();
    let mut q = dfa.initial();
    let mut rest = w;
    while !rest.is_empty() {
        let trace = dfa.trace(q, rest);
        let states = trace.states();
        let mut first_seen = vec![usize::MAX; dfa.state_count()];
        let mut cut = None;
        for (t, &s) in states.iter().enumerate() {
            if first_seen[s] != usize::MAX {
                cut = Some((first_seen[s], t));
                break;
            }
            first_seen[s] = t;
        }
        let Some((s, t)) = cut else {
            parts.push(FactorPart {
                u: rest.to_vec(),
                v: Vec::new(),
                exp: 1,
            });
            break;
        };
        let (u, v) = (&rest[..s], &rest[s..t]);
        q = states[t];
        rest = &rest[t..];
        match parts.last_mut() {
            Some(last) if u.is_empty() && last.v == v => last.exp += 1,
            _ => parts.push(FactorPart {
                u: u.to_vec(),
                v: v.to_vec(),
                exp: 1,
            }),
        }
    }
    Factorization { parts }
}

/// A pump `w = x y^exponent z`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pump {
    pub triple: LassoTriple,
    pub exponent: usize,
}

/// The `n` used by the pumping bounds: the state count, but at least 3.
pub fn pump_n(dfa: &Dfa) -> usize {
    dfa.state_count().max(3)
}

/// Extracts `w = x y^i z` with `q0.xy = q0.x` from the factorization of a
/// smallest word. Fails if the factorization has two loops of equal length
/// or two large exponents, which cannot happen for smallest words.
pub fn extract_pump(dfa: &Dfa, w: &[Letter]) -> Result<Pump> {
    let n = pump_n(dfa);
    let f = factorize(dfa, w);
    let mut lengths: Vec<usize> = f.parts.iter().map(|p| p.v.len()).collect();
    lengths.sort_unstable();
    if lengths.windows(2).any(|p| p[0] == p[1]) {
        return Err(Error::NotSmallest("two loops of equal length".into()));
    }
    let big: Vec<usize> = (0..f.parts.len()).filter(|&j| f.parts[j].exp > n).collect();
    match big[..] {
        [] => Ok(Pump {
            triple: LassoTriple::new(w.to_vec(), Vec::new(), Vec::new()),
            exponent: 0,
        }),
        [j] => {
            let (start, end) = f.offsets(j);
            let part = &f.parts[j];
            let x_end = start + part.u.len();
            Ok(Pump {
                triple: LassoTriple::new(w[..x_end].to_vec(), part.v.clone(), w[end..].to_vec()),
                exponent: part.exp,
            })
        }
        _ => Err(Error::NotSmallest("two exponents exceed n".into())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alphabet::OrderedAlphabet;
    use crate::dfa::tests::ab_star;

    fn unary() -> OrderedAlphabet {
        OrderedAlphabet::new(["a"]).unwrap()
    }

    #[test]
    fn swap_examples() {
        assert_eq!(
            swap_trichotomy(&[], &[0], &[], &[0], &[]).unwrap(),
            Swap::AllEqual
        );
        assert_eq!(
            swap_trichotomy(&[], &[0], &[], &[1], &[]).unwrap(),
            Swap::FirstSmaller
        );
        assert!(matches!(
            swap_trichotomy(&[], &[0], &[], &[0, 1], &[]),
            Err(Error::LengthMismatch(1, 2))
        ));
    }

    #[test]
    fn empty_word_has_no_parts() {
        assert!(factorize(&ab_star(), &[]).parts.is_empty());
    }

    #[test]
    fn unary_loop() {
        let d = Dfa::universal(unary());
        let f = factorize(&d, &[0, 0, 0]);
        assert_eq!(
            f.parts,
            vec![FactorPart {
                u: vec![],
                v: vec![0],
                exp: 3
            }]
        );
    }

    #[test]
    fn ab_loop() {
        let f = factorize(&ab_star(), &[0, 1, 0, 1, 0, 1]);
        assert_eq!(
            f.parts,
            vec![FactorPart {
                u: vec![],
                v: vec![0, 1],
                exp: 3
            }]
        );
    }

    #[test]
    fn pump_of_long_unary_word() {
        let d = Dfa::universal(unary()).padded_to(3);
        let p = extract_pump(&d, &[0; 10]).unwrap();
        assert_eq!(p.triple, LassoTriple::new(vec![], vec![0], vec![]));
        assert_eq!(p.exponent, 10);
    }

    #[test]
    fn small_exponents_give_trivial_pump() {
        let p = extract_pump(&ab_star(), &[0, 1, 0, 1]).unwrap();
        assert_eq!(p.triple, LassoTriple::new(vec![0, 1, 0, 1], vec![], vec![]));
        assert_eq!(p.exponent, 0);
    }

    #[test]
    fn equal_loop_lengths_rejected() {
        // Two self-loops of length 1 at different states: a^5 b^5 over a
        // DFA where a loops at 0 and b moves to a looping state 1.
        let ab = OrderedAlphabet::new(["a", "b"]).unwrap();
        let d = Dfa::new(ab, 0, [1], vec![vec![0, 1], vec![2, 1], vec![2, 2]]).unwrap();
        let w = [0, 0, 0, 0, 0, 1, 1, 1, 1, 1];
        assert!(matches!(extract_pump(&d, &w), Err(Error::NotSmallest(_))));
    }
}
