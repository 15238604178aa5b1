use std::collections::BTreeSet;

use super::alphabet::{Alphabet, Symbol};
use super::StateId;
use crate::error::{Error, Result};

/// Nondeterministic finite automaton without ε-transitions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Nfa {
    alphabet: Alphabet,
    names: Vec<String>,
    initial: BTreeSet<StateId>,
    // delta[q][s] = sorted successor list
    delta: Vec<Vec<Vec<StateId>>>,
    finals: Vec<bool>,
}

impl Nfa {
    pub fn new(
        alphabet: Alphabet,
        names: Vec<String>,
        initial: impl IntoIterator<Item = StateId>,
        transitions: impl IntoIterator<Item = (StateId, Symbol, StateId)>,
        finals: impl IntoIterator<Item = StateId>,
    ) -> Result<Self> {
        let n = names.len();
        let mut seen = std::collections::HashSet::new();
        for name in &names {
            if !seen.insert(name.as_str()) {
                return Err(Error::Invalid(format!("duplicate state `{name}`")));
            }
        }
        let initial: BTreeSet<StateId> = initial.into_iter().collect();
        if initial.is_empty() {
            return Err(Error::Invalid("no initial state".into()));
        }
        let check = |q: StateId| {
            if q < n {
                Ok(q)
            } else {
                Err(Error::Invalid(format!("state index {q} out of range")))
            }
        };
        for &q in &initial {
            check(q)?;
        }
        let mut delta = vec![vec![Vec::new(); alphabet.len()]; n];
        for (p, s, q) in transitions {
            check(p)?;
            check(q)?;
            if s >= alphabet.len() {
                return Err(Error::Invalid(format!("symbol index {s} out of range")));
            }
            delta[p][s].push(q);
        }
        for row in &mut delta {
            for succ in row.iter_mut() {
                succ.sort_unstable();
                succ.dedup();
            }
        }
        let mut fin = vec![false; n];
        for q in finals {
            fin[check(q)?] = true;
        }
        Ok(Nfa {
            alphabet,
            names,
            initial,
            delta,
            finals: fin,
        })
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

    pub fn initial(&self) -> &BTreeSet<StateId> {
        &self.initial
    }

    pub fn is_final(&self, q: StateId) -> bool {
        self.finals[q]
    }

    pub fn finals(&self) -> impl Iterator<Item = StateId> + '_ {
        (0..self.num_states()).filter(|&q| self.finals[q])
    }

    pub fn successors(&self, q: StateId, s: Symbol) -> &[StateId] {
        &self.delta[q][s]
    }

    pub fn transitions(&self) -> impl Iterator<Item = (StateId, Symbol, StateId)> + '_ {
        self.delta.iter().enumerate().flat_map(|(p, row)| {
            row.iter()
                .enumerate()
                .flat_map(move |(s, succ)| succ.iter().map(move |&q| (p, s, q)))
        })
    }

    /// True iff at most one initial state and at most one successor per
    /// (state, symbol).
    pub fn is_deterministic(&self) -> bool {
        self.initial.len() == 1
            && self
                .delta
                .iter()
                .all(|row| row.iter().all(|s| s.len() <= 1))
    }

    pub fn step_set(&self, set: &BTreeSet<StateId>, s: Symbol) -> BTreeSet<StateId> {
        set.iter()
            .flat_map(|&q| self.delta[q][s].iter().copied())
            .collect()
    }

    pub fn accepts(&self, w: &[Symbol]) -> bool {
        let mut cur = self.initial.clone();
        for &s in w {
            cur = self.step_set(&cur, s);
            if cur.is_empty() {
                return false;
            }
        }
        cur.iter().any(|&q| self.finals[q])
    }

    /// Reverses every transition and swaps initial and final states. A
    /// reversed automaton with no final states gets no initial states either,
    /// which the type forbids, so a fresh isolated initial state is added in
    /// that case.
    pub fn reverse(&self) -> Nfa {
        let mut names = self.names.clone();
        let mut initial: Vec<StateId> = self.finals().collect();
        if initial.is_empty() {
            names.push(fresh_name(&names, "init"));
            initial.push(names.len() - 1);
        }
        let transitions: Vec<_> = self.transitions().map(|(p, s, q)| (q, s, p)).collect();
        Nfa::new(
            self.alphabet.clone(),
            names,
            initial,
            transitions,
            self.initial.iter().copied(),
        )
        .expect("reversal preserves validity")
    }
}

pub(crate) fn fresh_name(names: &[String], base: &str) -> String {
    let mut cand = base.to_string();
    let mut i = 0;
    while names.contains(&cand) {
        i += 1;
        cand = format!("{base}{i}");
    }
    cand
}
