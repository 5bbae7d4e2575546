//! Radix-order constructions on regular languages.

pub mod alphabet;
pub mod check;
pub mod dfa;
pub mod error;
pub mod families;
pub mod json;
pub mod measure;
pub mod minimal;
pub mod nfa;
pub mod oracle;
pub mod random;
pub mod successor;
pub mod thin;
pub mod transducer;
pub mod words;

pub use alphabet::{radix_cmp, radix_compare, Letter, OrderedAlphabet, Word};
pub use dfa::{Dfa, ProductMode, State, StateSequence};
pub use error::{Error, Result};
pub use minimal::{largest_words_dfa, smallest_words_dfa, SmallestStrategy};
pub use nfa::Nfa;
pub use transducer::{RunOutcome, Transducer, Transition};
