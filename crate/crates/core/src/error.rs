use thiserror::Error;

/// Errors produced by automaton construction, validation and the derived
/// constructions in this crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("alphabet symbols must be nonempty strings")]
    EmptySymbol,

    #[error("duplicate alphabet symbol `{0}`")]
    DuplicateSymbol(String),

    #[error("symbol `{0}` is not part of the alphabet")]
    UnknownSymbol(String),

    #[error("operands are over different alphabets")]
    AlphabetMismatch,

    #[error("state {state} out of range (automaton has {count} states)")]
    StateOutOfRange { state: usize, count: usize },

    #[error("automaton needs at least one state")]
    NoStates,

    #[error("DFA is not complete: no transition from state {state} on `{symbol}`")]
    IncompleteDfa { state: usize, symbol: String },

    #[error("DFA has two transitions from state {state} on `{symbol}`")]
    NondeterministicDfa { state: usize, symbol: String },

    #[error("transducer has an epsilon-input cycle through state {0} that produces output")]
    OutputEpsilonCycle(usize),

    #[error("transducer has {0} accepting runs on the input")]
    AmbiguousRun(String),

    #[error("language is not thin")]
    NotThin,

    #[error("word is not among the smallest words of the language: {0}")]
    NotSmallest(String),

    #[error("triple does not satisfy the loop condition q0.x = q0.xy")]
    LoopCondition,

    #[error("triples are cycle-disjoint")]
    CycleDisjoint,

    #[error("words must have equal length ({0} vs {1})")]
    LengthMismatch(usize, usize),

    #[error("padding symbol `{0}` already occurs in the alphabet")]
    SymbolCollision(String),

    #[error("word has no successor in the language")]
    Maximal,

    #[error("tuple cover violates an invariant: {0}")]
    CoverInvariant(String),

    #[error("malformed automaton file: {0}")]
    Format(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
