//! Oracle-equivalence suite for a single DFA: every construction is compared
//! with the brute-force answers on all words up to a length bound.

use std::cmp::Ordering;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::alphabet::Letter;
use crate::dfa::{words_up_to, Dfa};
use crate::minimal::{
    extract_pump, factorize, is_cycle_disjoint_cover, largest_words_dfa, simplify_tuples,
    smallest_words_dfa_with, Factorization, SmallestStrategy,
};
use crate::oracle::{
    oracle_bgeq, oracle_enumerate, oracle_largest_table, oracle_length_preserving,
    oracle_smallest_table, oracle_successor, oracle_thin_compare, oracle_x, Oracle,
};
use crate::successor::{
    enumerate, length_preserving_successor_transducer, pad_automaton, padded_length_gap,
    successor_transducer, PADDING_SYMBOL,
};
use crate::thin::{bgeq_ufa, is_thin, thin_geq_ufa, thin_leq_ufa, x_dfa};
use crate::transducer::{RunOutcome, Transducer};

type Outcome = std::result::Result<(), String>;
type Check<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

/// Named pass/fail results in a fixed order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckReport {
    pub results: Vec<(&'static str, Outcome)>,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.results.iter().all(|(_, r)| r.is_ok())
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (name, r) in &self.results {
            match r {
                Ok(()) => writeln!(f, "PASS {name}")?,
                Err(e) => writeln!(f, "FAIL {name}: {e}")?,
            }
        }
        Ok(())
    }
}

/// Runs every check. `seed` drives the sampled padding checks.
pub fn run_checks(dfa: &Dfa, max_len: usize, seed: u64) -> CheckReport {
    let render = |w: &[Letter]| format!("{:?}", dfa.alphabet().render(w, " "));
    let checks: Vec<Check<'_>> = vec![
        (
            "smallest-naive",
            Box::new(|| smallest_matches(dfa, SmallestStrategy::Naive, max_len, render)),
        ),
        (
            "smallest-cover",
            Box::new(|| smallest_matches(dfa, SmallestStrategy::Cover, max_len, render)),
        ),
        (
            "largest",
            Box::new(|| largest_matches(dfa, max_len, render)),
        ),
        ("thin-idempotent", Box::new(|| thin_idempotent(dfa))),
        (
            "factorization",
            Box::new(|| factorizations(dfa, max_len, render)),
        ),
        ("cover", Box::new(|| cover_sandwich(dfa, max_len, render))),
        ("thin-ufas", Box::new(|| thin_ufas(dfa, max_len, render))),
        ("x-and-bgeq", Box::new(|| x_and_bgeq(dfa, max_len, render))),
        (
            "length-preserving",
            Box::new(|| length_preserving(dfa, max_len, render)),
        ),
        (
            "successor",
            Box::new(|| full_successor(dfa, max_len, render)),
        ),
        ("padding", Box::new(|| padding(dfa, max_len, seed, render))),
        ("enumerate", Box::new(|| enumeration(dfa, render))),
    ];
    CheckReport {
        results: checks.into_iter().map(|(name, f)| (name, f())).collect(),
    }
}

/// Accepted words of each length of `dfa`, via the oracle's search.
fn words_of(dfa: &Dfa, len: usize) -> Vec<Vec<Letter>> {
    let mut out = Vec::new();
    Oracle::new(dfa).scan(len, false, |w| {
        out.push(w.to_vec());
        true
    });
    out
}

fn per_length(
    built: &Dfa,
    expected: &[Option<Vec<Letter>>],
    render: impl Fn(&[Letter]) -> String,
) -> Outcome {
    for (len, want) in expected.iter().enumerate() {
        let got = words_of(built, len);
        if got.as_slice() != want.as_slice() {
            let got: Vec<String> = got.iter().map(|w| render(w)).collect();
            return Err(format!(
                "length {len}: expected {:?}, built automaton accepts {got:?}",
                want.as_ref().map(|w| render(w))
            ));
        }
    }
    Ok(())
}

fn smallest_matches(
    dfa: &Dfa,
    strategy: SmallestStrategy,
    max_len: usize,
    render: impl Fn(&[Letter]) -> String,
) -> Outcome {
    let s = smallest_words_dfa_with(dfa, strategy);
    per_length(&s, &oracle_smallest_table(dfa, max_len), render)
}

fn largest_matches(dfa: &Dfa, max_len: usize, render: impl Fn(&[Letter]) -> String) -> Outcome {
    per_length(
        &largest_words_dfa(dfa),
        &oracle_largest_table(dfa, max_len),
        render,
    )
}

fn thin_idempotent(dfa: &Dfa) -> Outcome {
    let s = smallest_words_dfa_with(dfa, SmallestStrategy::Cover);
    let bound = 2 * s.state_count() + 4;
    if let Some(len) = (0..=bound).find(|&len| words_of(&s, len).len() > 1) {
        return Err(format!("two smallest words of length {len}"));
    }
    if !is_thin(&s) {
        return Err("thinness decision disagrees".into());
    }
    if !smallest_words_dfa_with(&s, SmallestStrategy::Cover).same_language(&s) {
        return Err("S(S(L)) differs from S(L)".into());
    }
    Ok(())
}

/// Violations of the factorization properties for `w`; the last two only
/// apply to smallest words.
pub fn factorization_violations(dfa: &Dfa, w: &[Letter], f: &Factorization) -> Vec<String> {
    let n = dfa.state_count();
    let mut bad = Vec::new();
    if f.concat() != w {
        bad.push("concatenation differs from the word".to_string());
    }
    let mut lengths = Vec::new();
    let mut big = 0;
    for (j, p) in f.parts.iter().enumerate() {
        let (start, end) = f.offsets(j);
        let hub = dfa.run(&w[..start + p.u.len()]);
        if dfa.run_from(hub, &p.v) != hub {
            bad.push(format!("part {j}: v does not loop"));
        }
        if p.u.len() + p.v.len() > n {
            bad.push(format!("part {j}: |uv| > {n}"));
        }
        if !p.v.is_empty() && w[end..].starts_with(&p.v) {
            bad.push(format!("part {j}: v is a prefix of the rest"));
        }
        lengths.push(p.v.len());
        big += usize::from(p.exp > n);
    }
    lengths.sort_unstable();
    if lengths.windows(2).any(|p| p[0] == p[1]) {
        bad.push("two loops of equal length".into());
    }
    if big > 1 {
        bad.push("two exponents exceed n".into());
    }
    bad
}

fn factorizations(dfa: &Dfa, max_len: usize, render: impl Fn(&[Letter]) -> String) -> Outcome {
    let d = dfa.padded_to(3);
    let n = d.state_count();
    for w in oracle_smallest_table(&d, max_len).into_iter().flatten() {
        let bad = factorization_violations(&d, &w, &factorize(&d, &w));
        if !bad.is_empty() {
            return Err(format!("{}: {}", render(&w), bad.join("; ")));
        }
        let pump = extract_pump(&d, &w).map_err(|e| format!("{}: {e}", render(&w)))?;
        let t = &pump.triple;
        if t.xz_len() > n.pow(3) || t.y.len() > n || t.pumped(pump.exponent) != w {
            return Err(format!("{}: pump out of bounds", render(&w)));
        }
        if let Some(j) = (0..=5).find(|&j| !d.accepts(&t.pumped(j))) {
            return Err(format!(
                "{}: pumped {j} times leaves the language",
                render(&w)
            ));
        }
    }
    Ok(())
}

fn cover_sandwich(dfa: &Dfa, max_len: usize, render: impl Fn(&[Letter]) -> String) -> Outcome {
    let d = dfa.minimize().padded_to(3);
    let cover = simplify_tuples(&d);
    let b = cover.bounds();
    if !b.all() {
        return Err(format!("bounds violated: {b:?}"));
    }
    if !is_cycle_disjoint_cover(&d, &cover).map_err(|e| e.to_string())? {
        return Err("triples are not pairwise cycle-disjoint".into());
    }
    for (len, s) in oracle_smallest_table(&d, max_len).into_iter().enumerate() {
        if let Some(s) = s.filter(|s| !cover.contains(s)) {
            return Err(format!("smallest word {} not covered", render(&s)));
        }
        for t in cover.triples() {
            if let Some(w) = t.word_of_length(len).filter(|w| !d.accepts(w)) {
                return Err(format!("cover word {} not in L", render(&w)));
            }
        }
    }
    Ok(())
}

fn thin_ufas(dfa: &Dfa, max_len: usize, render: impl Fn(&[Letter]) -> String) -> Outcome {
    let s = smallest_words_dfa_with(dfa, SmallestStrategy::Cover);
    let leq = thin_leq_ufa(&s).map_err(|e| e.to_string())?;
    let geq = thin_geq_ufa(&s).map_err(|e| e.to_string())?;
    for (name, u, side) in [
        ("L≤", &leq, Ordering::Less),
        ("L≥", &geq, Ordering::Greater),
    ] {
        if u.state_count() != 2 * s.state_count() {
            return Err(format!("{name} has {} states", u.state_count()));
        }
        if !u.is_unambiguous() {
            return Err(format!("{name} is ambiguous"));
        }
        let k = dfa.alphabet().len();
        if let Some(w) =
            words_up_to(k, max_len).find(|w| u.accepts(w) != oracle_thin_compare(&s, w, side))
        {
            return Err(format!("{name} disagrees on {}", render(&w)));
        }
    }
    Ok(())
}

fn x_and_bgeq(dfa: &Dfa, max_len: usize, render: impl Fn(&[Letter]) -> String) -> Outcome {
    let x = x_dfa(dfa);
    let lengths = oracle_x(dfa, max_len);
    let b = bgeq_ufa(dfa);
    if !b.is_unambiguous() {
        return Err("B≥ automaton is ambiguous".into());
    }
    for w in words_up_to(dfa.alphabet().len(), max_len) {
        if x.accepts(&w) != lengths[w.len()] {
            return Err(format!("X disagrees on {}", render(&w)));
        }
        if b.accepts(&w) != oracle_bgeq(dfa, &w) {
            return Err(format!("B≥ disagrees on {}", render(&w)));
        }
    }
    Ok(())
}

/// Compares every run outcome up to `max_len` with `expected`.
fn runs_match(
    t: &Transducer,
    max_len: usize,
    expected: impl Fn(&[Letter]) -> Option<Vec<Letter>>,
    render: impl Fn(&[Letter]) -> String,
) -> Outcome {
    if let Some(w) = t.ambiguity_witness() {
        return Err(format!("two accepting runs on {}", render(&w)));
    }
    let mut first = None;
    t.run_all(max_len, |w, out| {
        if first.is_some() {
            return;
        }
        let got = match out {
            RunOutcome::Rejected => None,
            RunOutcome::Unique(v) => Some(v),
            RunOutcome::Ambiguous(c) => {
                first = Some(format!("{c} accepting runs on {}", render(w)));
                return;
            }
        };
        let want = expected(w);
        if got != want {
            first = Some(format!(
                "on {}: expected {:?}, got {:?}",
                render(w),
                want.as_deref().map(&render),
                got.as_deref().map(&render)
            ));
        }
    });
    first.map_or(Ok(()), Err)
}

fn length_preserving(dfa: &Dfa, max_len: usize, render: impl Fn(&[Letter]) -> String) -> Outcome {
    let t = length_preserving_successor_transducer(dfa);
    runs_match(
        &t,
        max_len,
        |w| {
            oracle_length_preserving(dfa, w)
                .then(|| oracle_successor(dfa, w))
                .flatten()
        },
        render,
    )
}

fn full_successor(dfa: &Dfa, max_len: usize, render: impl Fn(&[Letter]) -> String) -> Outcome {
    let t = successor_transducer(dfa);
    runs_match(&t, max_len, |w| oracle_successor(dfa, w), render)
}

fn padding(dfa: &Dfa, max_len: usize, seed: u64, render: impl Fn(&[Letter]) -> String) -> Outcome {
    let padded = pad_automaton(dfa, PADDING_SYMBOL).map_err(|e| e.to_string())?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let k = dfa.alphabet().len();
    let mut tried = 0;
    for _ in 0..1000 {
        if tried == 50 {
            break;
        }
        let len = rng.gen_range(0..=max_len);
        let u: Vec<Letter> = (0..len).map(|_| rng.gen_range(0..k)).collect();
        if oracle_successor(dfa, &u).is_none() {
            continue;
        }
        tried += 1;
        let gap = padded_length_gap(&padded, &u).map_err(|e| format!("{}: {e}", render(&u)))?;
        if !gap.within_bound || !gap.padded_matches {
            return Err(format!("padding claim fails for {}", render(&u)));
        }
    }
    Ok(())
}

fn enumeration(dfa: &Dfa, render: impl Fn(&[Letter]) -> String) -> Outcome {
    let got = enumerate(dfa, 30);
    let want = oracle_enumerate(dfa, 30);
    match got.iter().zip(&want).position(|(a, b)| a != b) {
        Some(i) => Err(format!(
            "word {i}: expected {}, got {}",
            render(&want[i]),
            render(&got[i])
        )),
        None if got.len() != want.len() => {
            Err(format!("expected {} words, got {}", want.len(), got.len()))
        }
        None => Ok(()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alphabet::OrderedAlphabet;
    use crate::families::family_successor_lb;

    #[test]
    fn universal_passes() {
        let r = run_checks(&Dfa::universal(OrderedAlphabet::digits(2)), 6, 1);
        assert!(r.passed(), "{r}");
        assert_eq!(r.results.len(), 12);
    }

    #[test]
    fn family_passes_and_is_deterministic() {
        let d = family_successor_lb(2);
        let a = run_checks(&d, 5, 9);
        assert!(a.passed(), "{a}");
        assert_eq!(a.to_string(), run_checks(&d, 5, 9).to_string());
    }

    #[test]
    fn violations_are_reported() {
        let d = Dfa::universal(OrderedAlphabet::digits(2)).padded_to(3);
        let fake = Factorization {
            parts: vec![crate::minimal::FactorPart {
                u: vec![],
                v: vec![0],
                exp: 2,
            }],
        };
        let bad = factorization_violations(&d, &[0, 0], &fake);
        assert!(bad.is_empty(), "{bad:?}");
        let bad = factorization_violations(&d, &[0, 1], &fake);
        assert!(!bad.is_empty());
    }
}
