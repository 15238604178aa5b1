use super::alphabet::{Alphabet, Symbol};
use super::dfa::Dfa;
use super::scc::SccPartition;
use super::StateId;

/// Deterministic automaton whose transition function may be undefined.
/// Used by the decomposition pipeline, where trimmed automata matter.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartialDfa {
    alphabet: Alphabet,
    initial: StateId,
    delta: Vec<Option<StateId>>,
    finals: Vec<bool>,
}

impl PartialDfa {
    pub fn new(
        alphabet: Alphabet,
        initial: StateId,
        delta: Vec<Option<StateId>>,
        finals: Vec<bool>,
    ) -> Self {
        let n = finals.len();
        assert_eq!(delta.len(), n * alphabet.len());
        assert!(initial < n);
        assert!(delta.iter().flatten().all(|&q| q < n));
        PartialDfa {
            alphabet,
            initial,
            delta,
            finals,
        }
    }

    /// Restricts `dfa` to states that are reachable and co-reachable.
    /// Returns `None` for the empty language.
    pub fn trim(dfa: &Dfa) -> Option<PartialDfa> {
        let reach = dfa.reachable();
        let co = dfa.coreachable();
        if !co[dfa.initial()] {
            return None;
        }
        let keep: Vec<StateId> = dfa.states().filter(|&q| reach[q] && co[q]).collect();
        let mut new_id = vec![usize::MAX; dfa.num_states()];
        for (i, &q) in keep.iter().enumerate() {
            new_id[q] = i;
        }
        let k = dfa.alphabet().len();
        let mut delta = vec![None; keep.len() * k];
        for (i, &q) in keep.iter().enumerate() {
            for s in 0..k {
                let r = dfa.step(q, s);
                if new_id[r] != usize::MAX {
                    delta[i * k + s] = Some(new_id[r]);
                }
            }
        }
        let finals = keep.iter().map(|&q| dfa.is_final(q)).collect();
        Some(PartialDfa::new(
            dfa.alphabet().clone(),
            new_id[dfa.initial()],
            delta,
            finals,
        ))
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn num_states(&self) -> usize {
        self.finals.len()
    }

    pub fn initial(&self) -> StateId {
        self.initial
    }

    pub fn step(&self, q: StateId, s: Symbol) -> Option<StateId> {
        self.delta[q * self.alphabet.len() + s]
    }

    pub fn is_final(&self, q: StateId) -> bool {
        self.finals[q]
    }

    pub fn edges(&self, q: StateId) -> Vec<(Symbol, StateId)> {
        (0..self.alphabet.len())
            .filter_map(|s| self.step(q, s).map(|r| (s, r)))
            .collect()
    }

    pub fn accepts(&self, w: &[Symbol]) -> bool {
        let mut q = self.initial;
        for &s in w {
            match self.step(q, s) {
                Some(r) => q = r,
                None => return false,
            }
        }
        self.finals[q]
    }

    pub fn sccs(&self) -> SccPartition {
        SccPartition::compute(self.num_states(), &self.finals, |q| self.edges(q))
    }

    /// Completes the automaton with a rejecting sink.
    pub fn to_dfa(&self) -> Dfa {
        let n = self.num_states();
        let names = (0..n).map(|i| format!("q{i}")).collect();
        let transitions: Vec<_> = (0..n)
            .flat_map(|q| self.edges(q).into_iter().map(move |(s, r)| (q, s, r)))
            .collect();
        let finals: Vec<_> = (0..n).filter(|&q| self.finals[q]).collect();
        Dfa::from_transitions(
            self.alphabet.clone(),
            names,
            self.initial,
            transitions,
            finals,
        )
        .expect("partial DFA is well formed")
    }
}
