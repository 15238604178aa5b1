//! Finite automata: construction, determinization, reversal, minimization,
//! Boolean combinations, SCC analysis and state distances.

pub mod alphabet;
pub mod blockcode;
pub mod dfa;
pub mod distance;
pub mod format;
pub mod formula;
pub mod nfa;
pub mod ops;
pub mod partial;
pub mod scc;

pub type StateId = usize;

pub use alphabet::{ceil_log2, floor_log2, reversed, Alphabet, Symbol, Word};
pub use blockcode::{decode_tuple, encode_tuple};
pub use dfa::Dfa;
pub use distance::{distance, DistanceTable, StateDistance};
pub use format::{parse_any, parse_dfa, Automaton};
pub use formula::Formula;
pub use nfa::Nfa;
pub use ops::{
    combine, concat, determinize, determinize_with, equivalent, included, minimize, product,
    reverse, reverse_determinize, reverse_determinize_with, separating_word, trim_unreachable,
    BoolOp, DEFAULT_STATE_BUDGET,
};
pub use partial::PartialDfa;
pub use scc::{SccFlags, SccPartition};

impl Dfa {
    pub fn sccs(&self) -> SccPartition {
        SccPartition::compute(self.num_states(), self.finals(), |q| {
            (0..self.alphabet().len())
                .map(|s| (s, self.step(q, s)))
                .collect()
        })
    }
}

/// SCC partition of a complete DFA.
pub fn sccs(a: &Dfa) -> SccPartition {
    a.sccs()
}
