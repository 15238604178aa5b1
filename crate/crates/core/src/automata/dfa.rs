use std::collections::VecDeque;

use super::alphabet::{Alphabet, Symbol, Word};
use super::nfa::{fresh_name, Nfa};
use super::StateId;
use crate::error::{Error, Result};

/// Complete deterministic finite automaton. The transition table is total.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dfa {
    alphabet: Alphabet,
    names: Vec<String>,
    initial: StateId,
    // delta[q * |Σ| + s]
    delta: Vec<StateId>,
    finals: Vec<bool>,
}

impl Dfa {
    /// Builds a DFA from a total transition table indexed `q * |Σ| + s`.
    pub fn new(
        alphabet: Alphabet,
        names: Vec<String>,
        initial: StateId,
        delta: Vec<StateId>,
        finals: Vec<bool>,
    ) -> Result<Self> {
        let n = names.len();
        if n == 0 || initial >= n {
            return Err(Error::Invalid("missing initial state".into()));
        }
        if delta.len() != n * alphabet.len() || finals.len() != n {
            return Err(Error::Invalid(
                "transition table has the wrong shape".into(),
            ));
        }
        if delta.iter().any(|&q| q >= n) {
            return Err(Error::Invalid("transition target out of range".into()));
        }
        Ok(Dfa {
            alphabet,
            names,
            initial,
            delta,
            finals,
        })
    }

    /// Builds a DFA from a possibly partial transition list, adding a
    /// rejecting sink when some (state, symbol) pair has no transition.
    pub fn from_transitions(
        alphabet: Alphabet,
        mut names: Vec<String>,
        initial: StateId,
        transitions: impl IntoIterator<Item = (StateId, Symbol, StateId)>,
        finals: impl IntoIterator<Item = StateId>,
    ) -> Result<Self> {
        let n = names.len();
        let k = alphabet.len();
        let mut table: Vec<Option<StateId>> = vec![None; n * k];
        for (p, s, q) in transitions {
            if p >= n || q >= n || s >= k {
                return Err(Error::Invalid(format!(
                    "transition ({p}, {s}, {q}) out of range"
                )));
            }
            match table[p * k + s] {
                Some(old) if old != q => {
                    return Err(Error::Invalid(format!(
                        "state `{}` has two transitions on `{}`",
                        names[p],
                        alphabet.token(s)
                    )))
                }
                _ => table[p * k + s] = Some(q),
            }
        }
        let mut fin = vec![false; n];
        for q in finals {
            if q >= n {
                return Err(Error::Invalid(format!("final state {q} out of range")));
            }
            fin[q] = true;
        }
        let needs_sink = table.iter().any(Option::is_none);
        let sink = n;
        if needs_sink {
            names.push(fresh_name(&names, "sink"));
            fin.push(false);
        }
        let mut delta: Vec<StateId> = table.into_iter().map(|t| t.unwrap_or(sink)).collect();
        if needs_sink {
            delta.extend(std::iter::repeat_n(sink, k));
        }
        Dfa::new(alphabet, names, initial, delta, fin)
    }

    /// The one-state automaton for `∅` or `Σ*`.
    pub fn trivial(alphabet: Alphabet, accept_all: bool) -> Dfa {
        let k = alphabet.len();
        Dfa {
            alphabet,
            names: vec!["q0".into()],
            initial: 0,
            delta: vec![0; k],
            finals: vec![accept_all],
        }
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn num_states(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, q: StateId) -> &str {
        &self.names[q]
    }

    pub fn initial(&self) -> StateId {
        self.initial
    }

    #[inline]
    pub fn step(&self, q: StateId, s: Symbol) -> StateId {
        self.delta[q * self.alphabet.len() + s]
    }

    pub fn run(&self, q: StateId, w: &[Symbol]) -> StateId {
        w.iter().fold(q, |q, &s| self.step(q, s))
    }

    #[inline]
    pub fn is_final(&self, q: StateId) -> bool {
        self.finals[q]
    }

    pub fn finals(&self) -> &[bool] {
        &self.finals
    }

    pub fn accepts(&self, w: &[Symbol]) -> bool {
        self.is_final(self.run(self.initial, w))
    }

    pub fn states(&self) -> std::ops::Range<StateId> {
        0..self.num_states()
    }

    pub fn transitions(&self) -> impl Iterator<Item = (StateId, Symbol, StateId)> + '_ {
        let k = self.alphabet.len();
        self.delta
            .iter()
            .enumerate()
            .map(move |(i, &q)| (i / k, i % k, q))
    }

    /// Same automaton started in `q`.
    pub fn with_initial(&self, q: StateId) -> Dfa {
        Dfa {
            initial: q,
            ..self.clone()
        }
    }

    /// Same transition structure with a different final set.
    pub fn with_finals(&self, finals: Vec<bool>) -> Dfa {
        assert_eq!(finals.len(), self.num_states());
        Dfa {
            finals,
            ..self.clone()
        }
    }

    pub fn complement_finals(&self) -> Dfa {
        self.with_finals(self.finals.iter().map(|f| !f).collect())
    }

    pub fn reachable(&self) -> Vec<bool> {
        let mut seen = vec![false; self.num_states()];
        let mut queue = VecDeque::from([self.initial]);
        seen[self.initial] = true;
        while let Some(q) = queue.pop_front() {
            for s in 0..self.alphabet.len() {
                let r = self.step(q, s);
                if !seen[r] {
                    seen[r] = true;
                    queue.push_back(r);
                }
            }
        }
        seen
    }

    /// States from which a final state is reachable.
    pub fn coreachable(&self) -> Vec<bool> {
        let n = self.num_states();
        let mut preds = vec![Vec::new(); n];
        for (p, _, q) in self.transitions() {
            preds[q].push(p);
        }
        let mut seen = self.finals.clone();
        let mut stack: Vec<StateId> = (0..n).filter(|&q| seen[q]).collect();
        while let Some(q) = stack.pop() {
            for &p in &preds[q] {
                if !seen[p] {
                    seen[p] = true;
                    stack.push(p);
                }
            }
        }
        seen
    }

    pub fn is_empty_language(&self) -> bool {
        let reach = self.reachable();
        !self.states().any(|q| reach[q] && self.finals[q])
    }

    /// A shortest accepted word, ties broken by canonical symbol order.
    pub fn shortest_accepted(&self) -> Option<Word> {
        self.shortest_path_to(self.initial, |q| self.finals[q])
    }

    /// Shortest word leading from `from` to a state satisfying `target`.
    pub fn shortest_path_to(
        &self,
        from: StateId,
        target: impl Fn(StateId) -> bool,
    ) -> Option<Word> {
        let n = self.num_states();
        let mut parent: Vec<Option<(StateId, Symbol)>> = vec![None; n];
        let mut seen = vec![false; n];
        seen[from] = true;
        let mut queue = VecDeque::from([from]);
        while let Some(q) = queue.pop_front() {
            if target(q) {
                let mut w = Vec::new();
                let mut cur = q;
                while let Some((p, s)) = parent[cur] {
                    w.push(s);
                    cur = p;
                }
                w.reverse();
                return Some(w);
            }
            for s in 0..self.alphabet.len() {
                let r = self.step(q, s);
                if !seen[r] {
                    seen[r] = true;
                    parent[r] = Some((q, s));
                    queue.push_back(r);
                }
            }
        }
        None
    }

    pub fn to_nfa(&self) -> Nfa {
        Nfa::new(
            self.alphabet.clone(),
            self.names.clone(),
            [self.initial],
            self.transitions().collect::<Vec<_>>(),
            self.states()
                .filter(|&q| self.finals[q])
                .collect::<Vec<_>>(),
        )
        .expect("a DFA is a valid NFA")
    }

    /// Renames states `q0, q1, ...` in index order.
    pub fn with_generic_names(mut self) -> Dfa {
        self.names = (0..self.num_states()).map(|i| format!("q{i}")).collect();
        self
    }

    /// Structural isomorphism of the reachable parts, matching states by a
    /// simultaneous breadth-first walk from the initial states.
    pub fn isomorphic(&self, other: &Dfa) -> bool {
        if self.alphabet != other.alphabet {
            return false;
        }
        let mut fwd = vec![usize::MAX; self.num_states()];
        let mut bwd = vec![usize::MAX; other.num_states()];
        let mut queue = VecDeque::from([(self.initial, other.initial)]);
        fwd[self.initial] = other.initial;
        bwd[other.initial] = self.initial;
        while let Some((p, q)) = queue.pop_front() {
            if self.finals[p] != other.finals[q] {
                return false;
            }
            for s in 0..self.alphabet.len() {
                let (p2, q2) = (self.step(p, s), other.step(q, s));
                match (fwd[p2], bwd[q2]) {
                    (usize::MAX, usize::MAX) => {
                        fwd[p2] = q2;
                        bwd[q2] = p2;
                        queue.push_back((p2, q2));
                    }
                    (a, b) if a == q2 && b == p2 => {}
                    _ => return false,
                }
            }
        }
        true
    }
}
