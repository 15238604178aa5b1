use std::sync::Mutex;

use super::psi::{psi_append, PsiAutomaton, PsiRanker};
use crate::automata::{minimize, Alphabet, Dfa, StateId};
use crate::error::{Error, Result};
use crate::streaming::algorithm::length_lex_code;
use crate::streaming::{Model, StreamToken, StreamingAlgorithm};

/// The space-optimal variable-size algorithm: the state is `ψ_L(window)`,
/// encoded by its position in length-lexicographic order, so that the space
/// at window bound `n` is `⌊log₂|ψ_L(Σ^{≤n})|⌋`.
#[derive(Debug)]
pub struct OptimalVariable {
    dfa: Dfa,
    ranker: Mutex<PsiRanker>,
}

/// Builds the optimal algorithm for `L(l)`; `l` is minimized first, so state
/// identifiers refer to the canonical minimal DFA.
pub fn optimal_variable_algorithm(l: &Dfa) -> Result<OptimalVariable> {
    let dfa = minimize(l);
    if dfa.num_states() == 1 {
        return Err(Error::TrivialLanguage);
    }
    let ranker = PsiRanker::new(&dfa)?;
    Ok(OptimalVariable {
        dfa,
        ranker: Mutex::new(ranker),
    })
}

impl OptimalVariable {
    pub fn minimal_dfa(&self) -> &Dfa {
        &self.dfa
    }
}

impl StreamingAlgorithm for OptimalVariable {
    type State = Vec<StateId>;

    fn model(&self) -> Model {
        Model::Variable
    }

    fn alphabet(&self) -> &Alphabet {
        self.dfa.alphabet()
    }

    fn initial(&self) -> Self::State {
        Vec::new()
    }

    fn step(&self, seq: &Self::State, token: StreamToken) -> Self::State {
        match token {
            StreamToken::Symbol(a) => psi_append(&self.dfa, seq, a),
            StreamToken::Pop => PsiAutomaton::pop(seq),
        }
    }

    fn accepts(&self, seq: &Self::State) -> bool {
        match seq.first() {
            Some(&c) => self.dfa.is_final(c),
            None => self.dfa.is_final(self.dfa.initial()),
        }
    }

    fn encode(&self, seq: &Self::State) -> Vec<bool> {
        let mut ranker = self.ranker.lock().unwrap_or_else(|e| e.into_inner());
        let index = ranker
            .index_of(seq)
            .expect("reachable states are ψ-sequences");
        length_lex_code(&index)
    }
}
