use std::fmt;

use serde::{Deserialize, Serialize};

use super::dfa::Dfa;
use super::ops::minimize;
use super::StateId;
use crate::error::{Error, Result};

/// Least `k` such that every continuation of length `k` merges two states.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum StateDistance {
    Finite(usize),
    Infinite,
}

impl StateDistance {
    pub fn is_finite(self) -> bool {
        matches!(self, StateDistance::Finite(_))
    }

    pub fn finite(self) -> Option<usize> {
        match self {
            StateDistance::Finite(k) => Some(k),
            StateDistance::Infinite => None,
        }
    }
}

impl fmt::Display for StateDistance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StateDistance::Finite(k) => write!(f, "{k}"),
            StateDistance::Infinite => f.write_str("infinite"),
        }
    }
}

/// All pairwise distances of a minimal DFA, computed by the fixpoint
/// `C_0 = diagonal`, `C_{i+1} = {(p,q) : ∀s (δ(p,s), δ(q,s)) ∈ C_i}`.
#[derive(Clone, Debug)]
pub struct DistanceTable {
    n: usize,
    dist: Vec<Option<usize>>,
    rounds: usize,
}

impl DistanceTable {
    pub fn new(a: &Dfa) -> Result<Self> {
        if minimize(a).num_states() != a.num_states() {
            return Err(Error::NotMinimal);
        }
        Ok(Self::compute(a))
    }

    /// Same fixpoint without the minimality check. On non-minimal input the
    /// values are distances between states, not between residual languages.
    pub fn compute(a: &Dfa) -> Self {
        let n = a.num_states();
        let k = a.alphabet().len();
        let mut dist = vec![None; n * n];
        for q in 0..n {
            dist[q * n + q] = Some(0);
        }
        let mut round = 0;
        loop {
            round += 1;
            let mut added = Vec::new();
            for p in 0..n {
                for q in 0..n {
                    if dist[p * n + q].is_some() {
                        continue;
                    }
                    let all_in = (0..k).all(|s| dist[a.step(p, s) * n + a.step(q, s)].is_some());
                    if all_in {
                        added.push(p * n + q);
                    }
                }
            }
            if added.is_empty() {
                break;
            }
            for i in added {
                dist[i] = Some(round);
            }
        }
        DistanceTable {
            n,
            dist,
            rounds: round - 1,
        }
    }

    pub fn get(&self, p: StateId, q: StateId) -> StateDistance {
        match self.dist[p * self.n + q] {
            Some(k) => StateDistance::Finite(k),
            None => StateDistance::Infinite,
        }
    }

    /// Number of strictly growing fixpoint rounds.
    pub fn rounds(&self) -> usize {
        self.rounds
    }

    /// Maximum over all pairs.
    pub fn max(&self) -> StateDistance {
        let mut best = 0;
        for d in &self.dist {
            match d {
                Some(k) => best = best.max(*k),
                None => return StateDistance::Infinite,
            }
        }
        StateDistance::Finite(best)
    }
}

/// Distance between two states of a minimal DFA.
pub fn distance(a: &Dfa, p: StateId, q: StateId) -> Result<StateDistance> {
    Ok(DistanceTable::new(a)?.get(p, q))
}
