//! Seeded random DFAs for sampling experiments.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::alphabet::OrderedAlphabet;
use crate::dfa::Dfa;

/// Sampler of complete DFAs with at most `max_states` states over alphabets
/// `{0, …, k-1}` with `1 ≤ k ≤ max_letters`.
#[derive(Clone, Debug)]
pub struct DfaSampler {
    rng: ChaCha8Rng,
    max_states: usize,
    max_letters: usize,
}

impl DfaSampler {
    pub fn new(seed: u64, max_states: usize, max_letters: usize) -> Self {
        assert!(max_states >= 1 && max_letters >= 1);
        Self {
            rng: ChaCha8Rng::seed_from_u64(seed),
            max_states,
            max_letters,
        }
    }

    pub fn sample(&mut self) -> Dfa {
        let n = self.rng.gen_range(1..=self.max_states);
        let k = self.rng.gen_range(1..=self.max_letters);
        self.sample_shape(n, k)
    }

    /// Uniform transitions; each state accepting with probability 1/2.
    pub fn sample_shape(&mut self, n: usize, k: usize) -> Dfa {
        let delta: Vec<Vec<usize>> = (0..n)
            .map(|_| (0..k).map(|_| self.rng.gen_range(0..n)).collect())
            .collect();
        let accepting: Vec<bool> = (0..n).map(|_| self.rng.gen_bool(0.5)).collect();
        Dfa::from_fn(
            OrderedAlphabet::digits(k),
            n,
            0,
            |q| accepting[q],
            |q, a| delta[q][a],
        )
    }
}

impl Iterator for DfaSampler {
    type Item = Dfa;

    fn next(&mut self) -> Option<Dfa> {
        Some(self.sample())
    }
}

/// The first `count` DFAs drawn from `seed`.
pub fn sample_dfas(seed: u64, count: usize, max_states: usize, max_letters: usize) -> Vec<Dfa> {
    DfaSampler::new(seed, max_states, max_letters)
        .take(count)
        .collect()
}
