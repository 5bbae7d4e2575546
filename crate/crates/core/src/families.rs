//! Prime-period automata families and small number-theory helpers.

use crate::alphabet::OrderedAlphabet;
use crate::dfa::Dfa;

/// The first `k` primes and their product.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeList {
    pub primes: Vec<usize>,
    pub product: usize,
}

pub fn primes(k: usize) -> PrimeList {
    let mut primes = Vec::with_capacity(k);
    let mut c = 2;
    while primes.len() < k {
        if primes
            .iter()
            .take_while(|&&p| p * p <= c)
            .all(|&p| c % p != 0)
        {
            primes.push(c);
        }
        c += 1;
    }
    let product = primes.iter().product();
    PrimeList { primes, product }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Least common multiple; 1 for no arguments, `None` on overflow.
pub fn lcm(values: impl IntoIterator<Item = usize>) -> Option<usize> {
    values.into_iter().try_fold(1usize, |acc, v| {
        if v == 0 {
            return Some(acc);
        }
        (acc / gcd(acc, v)).checked_mul(v)
    })
}

/// Minimal DFA over `0 < 1` for
/// `1* ∪ ⋃_{1≤i≤k} 1^i 0^{k-i+1} {1, …, 1^{p_i-1}} (1^{p_i})*`.
pub fn family_smallest_lb(k: usize) -> Dfa {
    assert!(k >= 1);
    let ps = primes(k).primes;
    // Layout: A_c (c ones read, c = 0..=k+1, k+1 meaning "more than k"),
    // Z_{i,j} (j zeros read after 1^i), C_{i,r} (r ones read mod p_i), dead.
    let a_state = |c: usize| c;
    let z_base: Vec<usize> = (1..=k)
        .scan(k + 2, |next, i| {
            let base = *next;
            *next += k - i + 1;
            Some(base)
        })
        .collect();
    let c_start = k + 2 + k * (k + 1) / 2;
    let c_base: Vec<usize> = ps
        .iter()
        .scan(c_start, |next, &p| {
            let base = *next;
            *next += p;
            Some(base)
        })
        .collect();
    let dead = c_start + ps.iter().sum::<usize>();
    let states = dead + 1;

    let mut kind = vec![Kind::Dead; states];
    for c in 0..=k + 1 {
        kind[a_state(c)] = Kind::Ones(c);
    }
    for i in 1..=k {
        for j in 1..=k - i + 1 {
            kind[z_base[i - 1] + j - 1] = Kind::Zeros(i, j);
        }
        for r in 0..ps[i - 1] {
            kind[c_base[i - 1] + r] = Kind::Cycle(i, r);
        }
    }
    let next = |q: usize, a: usize| -> usize {
        match (kind[q], a) {
            (Kind::Ones(c), 1) => a_state((c + 1).min(k + 1)),
            (Kind::Ones(c), _) if (1..=k).contains(&c) => z_base[c - 1],
            (Kind::Zeros(i, j), 0) if j < k - i + 1 => z_base[i - 1] + j,
            (Kind::Zeros(i, j), 1) if j == k - i + 1 => c_base[i - 1] + 1 % ps[i - 1],
            (Kind::Cycle(i, r), 1) => c_base[i - 1] + (r + 1) % ps[i - 1],
            _ => dead,
        }
    };
    let accepting = |q: usize| match kind[q] {
        Kind::Ones(_) => true,
        Kind::Cycle(_, r) => r != 0,
        _ => false,
    };
    Dfa::from_fn(OrderedAlphabet::digits(2), states, 0, accepting, next).minimize()
}

#[derive(Clone, Copy, Debug)]
enum Kind {
    Ones(usize),
    Zeros(usize, usize),
    Cycle(usize, usize),
    Dead,
}

/// DFA over `1 < … < k < #` accepting `i #^j` with `p_i | j`: an initial
/// state 0, an error state 1 and states `(i, j)` for `j < p_i`.
pub fn family_successor_lb(k: usize) -> Dfa {
    assert!(k >= 1);
    let ps = primes(k).primes;
    let alphabet = OrderedAlphabet::new(
        (1..=k)
            .map(|i| i.to_string())
            .chain(std::iter::once("#".to_string())),
    )
    .expect("distinct symbols");
    let hash = k;
    let base: Vec<usize> = ps
        .iter()
        .scan(2, |next, &p| {
            let b = *next;
            *next += p;
            Some(b)
        })
        .collect();
    let states = 2 + ps.iter().sum::<usize>();
    let locate = |q: usize| -> (usize, usize) {
        let i = base.iter().rposition(|&b| b <= q).expect("cycle state");
        (i, q - base[i])
    };
    let next = |q: usize, a: usize| -> usize {
        match q {
            0 if a == hash => 1,
            0 => base[a],
            1 => 1,
            _ if a == hash => {
                let (i, j) = locate(q);
                base[i] + (j + 1) % ps[i]
            }
            _ => 1,
        }
    };
    Dfa::from_fn(alphabet, states, 0, |q| base.contains(&q), next)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_lists() {
        let p = primes(3);
        assert_eq!(p.primes, vec![2, 3, 5]);
        assert_eq!(p.product, 30);
    }

    #[test]
    fn lcm_examples() {
        assert_eq!(lcm([]), Some(1));
        assert_eq!(lcm([4, 6]), Some(12));
        assert_eq!(lcm([usize::MAX, usize::MAX - 1]), None);
    }

    #[test]
    fn successor_family_shape() {
        let d = family_successor_lb(2);
        assert_eq!(d.state_count(), 7);
        let w = |s: &str| d.alphabet().parse(s, None).unwrap();
        assert!(d.accepts_word(&w("1##")).unwrap());
        assert!(!d.accepts_word(&w("1#")).unwrap());
        assert!(!d.accepts_word(&w("#")).unwrap());
        assert_eq!(d.run(w("#").letters()), 1);
        assert_eq!(d.minimize().state_count(), 7);
    }

    #[test]
    fn smallest_family_small_cases() {
        let d = family_smallest_lb(2);
        let w = |s: &str| d.alphabet().parse(s, None).unwrap();
        assert!(d.accepts_word(&w("1001")).unwrap());
        assert!(d.accepts_word(&w("100111")).unwrap());
        assert!(!d.accepts_word(&w("10011")).unwrap());
        assert!(d.accepts_word(&w("1101")).unwrap());
        assert!(!d.accepts_word(&w("110111")).unwrap());
    }

    #[test]
    fn smallest_family_sizes() {
        for k in 2..=4 {
            let p = primes(k);
            let bound = k * k + p.primes.iter().sum::<usize>() + 2;
            assert!(
                family_smallest_lb(k).minimize().state_count() <= bound,
                "k = {k}"
            );
        }
        // k = 1 is one over.
        assert_eq!(family_smallest_lb(1).minimize().state_count(), 6);
    }
}
