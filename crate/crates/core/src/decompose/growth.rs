use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::automata::{Dfa, PartialDfa, StateId, Symbol, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GrowthKind {
    Polynomial,
    Exponential,
}

/// A state reached by `prefix` carrying two cycles with different first
/// symbols.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwoCycleWitness {
    pub prefix: Word,
    pub cycle1: Word,
    pub cycle2: Word,
}

impl TwoCycleWitness {
    /// Replays the witness: both cycles return to the state reached by the
    /// prefix, they start with different symbols, and a final state remains
    /// reachable.
    pub fn verify(&self, l: &Dfa) -> bool {
        let q = l.run(l.initial(), &self.prefix);
        !self.cycle1.is_empty()
            && !self.cycle2.is_empty()
            && self.cycle1[0] != self.cycle2[0]
            && l.run(q, &self.cycle1) == q
            && l.run(q, &self.cycle2) == q
            && l.coreachable()[q]
    }
}

/// Growth class of `L(l)`. For polynomial growth the cycle word of every
/// state on a non-trivial cycle of the trimmed automaton is listed together
/// with an access word for that state.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GrowthClass {
    pub kind: GrowthKind,
    pub witness: Option<TwoCycleWitness>,
    /// `(access word, u_q)` pairs.
    pub cycle_words: Vec<(Word, Word)>,
    /// Largest number of non-trivial cycles on one chain of the condensation.
    /// No correctness contract.
    pub degree_hint: usize,
}

fn word_to(
    t: &PartialDfa,
    from: StateId,
    to: StateId,
    within: impl Fn(StateId) -> bool,
) -> Option<Word> {
    let n = t.num_states();
    let mut parent: Vec<Option<(StateId, Symbol)>> = vec![None; n];
    let mut seen = vec![false; n];
    seen[from] = true;
    let mut queue = std::collections::VecDeque::from([from]);
    while let Some(q) = queue.pop_front() {
        if q == to {
            let mut w = Vec::new();
            let mut cur = q;
            while let Some((p, s)) = parent[cur] {
                w.push(s);
                cur = p;
            }
            w.reverse();
            return Some(w);
        }
        for (s, r) in t.edges(q) {
            if within(r) && !seen[r] {
                seen[r] = true;
                parent[r] = Some((q, s));
                queue.push_back(r);
            }
        }
    }
    None
}

/// Polynomial iff every SCC of the trimmed automaton is a cycle, i.e. every
/// state has at most one symbol leading back into its component.
pub fn growth_class(l: &Dfa) -> GrowthClass {
    let Some(t) = PartialDfa::trim(l) else {
        return GrowthClass {
            kind: GrowthKind::Polynomial,
            witness: None,
            cycle_words: Vec::new(),
            degree_hint: 0,
        };
    };
    let sccs = t.sccs();
    let all = |_: StateId| true;
    for (ci, comp) in sccs.components.iter().enumerate() {
        let inside = |r: StateId| sccs.component_of[r] == ci;
        for &p in comp {
            let back: Vec<(Symbol, StateId)> =
                t.edges(p).into_iter().filter(|&(_, r)| inside(r)).collect();
            if back.len() >= 2 {
                let prefix =
                    word_to(&t, t.initial(), p, all).expect("trimmed states are reachable");
                let cycle = |(s, r): (Symbol, StateId)| {
                    let mut c = vec![s];
                    c.extend(word_to(&t, r, p, inside).expect("same component"));
                    c
                };
                let witness = TwoCycleWitness {
                    prefix,
                    cycle1: cycle(back[0]),
                    cycle2: cycle(back[1]),
                };
                return GrowthClass {
                    kind: GrowthKind::Exponential,
                    witness: Some(witness),
                    cycle_words: Vec::new(),
                    degree_hint: 0,
                };
            }
        }
    }
    let mut cycle_words = Vec::new();
    for (ci, comp) in sccs.components.iter().enumerate() {
        if sccs.flags[ci].is_trivial_cycle {
            continue;
        }
        for &q in comp {
            let access = word_to(&t, t.initial(), q, all).expect("reachable");
            let mut u = Vec::new();
            let mut cur = q;
            loop {
                let (s, r) = t
                    .edges(cur)
                    .into_iter()
                    .find(|&(_, r)| sccs.component_of[r] == ci)
                    .expect("non-trivial cycle");
                u.push(s);
                cur = r;
                if cur == q {
                    break;
                }
            }
            cycle_words.push((access, u));
        }
    }
    // longest chain counted in non-trivial components, sinks first
    let mut chain = vec![0usize; sccs.len()];
    for ci in 0..sccs.len() {
        let own = usize::from(!sccs.flags[ci].is_trivial_cycle);
        chain[ci] = own
            + sccs.condensation[ci]
                .iter()
                .map(|&cj| chain[cj])
                .max()
                .unwrap_or(0);
    }
    let degree_hint = chain[sccs.component_of[t.initial()]];
    GrowthClass {
        kind: GrowthKind::Polynomial,
        witness: None,
        cycle_words,
        degree_hint,
    }
}

/// `|{x ∈ L : |x| ≤ n}|` by dynamic programming over (state, length).
pub fn growth_count(l: &Dfa, n: usize) -> BigUint {
    let mut dist: Vec<BigUint> = vec![BigUint::zero(); l.num_states()];
    dist[l.initial()] = BigUint::one();
    let mut total = BigUint::zero();
    for len in 0..=n {
        for q in l.states() {
            if l.is_final(q) {
                total += &dist[q];
            }
        }
        if len == n {
            break;
        }
        let mut next = vec![BigUint::zero(); l.num_states()];
        for q in l.states() {
            if dist[q].is_zero() {
                continue;
            }
            for s in 0..l.alphabet().len() {
                next[l.step(q, s)] += &dist[q];
            }
        }
        dist = next;
    }
    total
}

/// Number of words of length exactly `len` leading from `from` to `to`.
pub fn count_paths(l: &Dfa, from: StateId, to: StateId, len: usize) -> BigUint {
    let mut dist: Vec<BigUint> = vec![BigUint::zero(); l.num_states()];
    dist[from] = BigUint::one();
    for _ in 0..len {
        let mut next = vec![BigUint::zero(); l.num_states()];
        for q in l.states() {
            if dist[q].is_zero() {
                continue;
            }
            for s in 0..l.alphabet().len() {
                next[l.step(q, s)] += &dist[q];
            }
        }
        dist = next;
    }
    dist[to].clone()
}
