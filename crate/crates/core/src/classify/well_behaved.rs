use std::collections::{HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::automata::{Dfa, SccPartition, StateId, Word};
use crate::error::{Error, Result};

/// Evidence that a DFA is not well-behaved: from the pivot `p`, two
/// equal-length words lead to a non-final `p0` and a final `p1` inside the
/// pivot's SCC, and both loops close with equal total length.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NonWellBehavedWitness {
    pub u: Word,
    pub u0: Word,
    pub v0: Word,
    pub u1: Word,
    pub v1: Word,
    pub p: StateId,
    pub p0: StateId,
    pub p1: StateId,
}

impl NonWellBehavedWitness {
    /// Replays the witness in `b`.
    pub fn verify(&self, b: &Dfa) -> Result<()> {
        let fail = |what: &str| Err(Error::Internal(format!("non-well-behaved witness: {what}")));
        if self.u0.len() != self.u1.len() || self.u0.is_empty() {
            return fail("|u0| = |u1| ≥ 1 violated");
        }
        if self.u0.len() + self.v0.len() != self.u1.len() + self.v1.len() {
            return fail("|u0 v0| = |u1 v1| violated");
        }
        if b.run(b.initial(), &self.u) != self.p {
            return fail("u does not reach p");
        }
        if b.run(self.p, &self.u0) != self.p0 || b.run(self.p0, &self.v0) != self.p {
            return fail("u0 v0 loop broken");
        }
        if b.run(self.p, &self.u1) != self.p1 || b.run(self.p1, &self.v1) != self.p {
            return fail("u1 v1 loop broken");
        }
        if b.is_final(self.p0) || !b.is_final(self.p1) {
            return fail("p0 must be non-final and p1 final");
        }
        Ok(())
    }

    /// Common loop length `c = |u0 v0|`.
    pub fn period(&self) -> usize {
        self.u0.len() + self.v0.len()
    }
}

/// Shortest word leading from `from` to `to` while staying inside the SCC.
fn path_within(b: &Dfa, sccs: &SccPartition, from: StateId, to: StateId) -> Option<Word> {
    let comp = sccs.component_of[from];
    let mut prev: HashMap<StateId, (StateId, usize)> = HashMap::new();
    let mut queue = VecDeque::from([from]);
    let mut seen = vec![false; b.num_states()];
    seen[from] = true;
    while let Some(q) = queue.pop_front() {
        if q == to {
            let mut w = Vec::new();
            let mut cur = q;
            while cur != from {
                let (p, s) = prev[&cur];
                w.push(s);
                cur = p;
            }
            w.reverse();
            return Some(w);
        }
        for s in 0..b.alphabet().len() {
            let r = b.step(q, s);
            if sccs.component_of[r] == comp && !seen[r] {
                seen[r] = true;
                prev.insert(r, (q, s));
                queue.push_back(r);
            }
        }
    }
    None
}

/// Synchronized search from `(q, q)` over pairs reachable by equal-length
/// words staying in `q`'s SCC. Returns the words to a (non-final, final) pair.
fn mixed_pair_from(
    b: &Dfa,
    sccs: &SccPartition,
    q: StateId,
) -> Option<(Word, Word, StateId, StateId)> {
    let comp = sccs.component_of[q];
    let k = b.alphabet().len();
    let mut prev: HashMap<(StateId, StateId), ((StateId, StateId), usize, usize)> = HashMap::new();
    let mut queue = VecDeque::from([(q, q)]);
    prev.insert((q, q), ((q, q), usize::MAX, usize::MAX));
    while let Some((x, y)) = queue.pop_front() {
        if b.is_final(x) != b.is_final(y) {
            let mut w0 = Vec::new();
            let mut w1 = Vec::new();
            let mut cur = (x, y);
            while cur != (q, q) {
                let (p, a, c) = prev[&cur];
                w0.push(a);
                w1.push(c);
                cur = p;
            }
            w0.reverse();
            w1.reverse();
            // orient so that the first word reaches the non-final state
            return Some(if b.is_final(x) {
                (w1, w0, y, x)
            } else {
                (w0, w1, x, y)
            });
        }
        for a in 0..k {
            let x2 = b.step(x, a);
            if sccs.component_of[x2] != comp {
                continue;
            }
            for c in 0..k {
                let y2 = b.step(y, c);
                if sccs.component_of[y2] != comp {
                    continue;
                }
                if let std::collections::hash_map::Entry::Vacant(e) = prev.entry((x2, y2)) {
                    e.insert(((x, y), a, c));
                    queue.push_back((x2, y2));
                }
            }
        }
    }
    None
}

fn repeat(w: &[usize], times: usize) -> Word {
    w.iter().copied().cycle().take(w.len() * times).collect()
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub(crate) fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

/// Decides well-behavedness of `b`: every reachable SCC must give the same
/// finality to all equal-length in-SCC continuations from any of its states.
/// A replay-verified witness is returned otherwise.
pub fn is_well_behaved(b: &Dfa) -> (bool, Option<NonWellBehavedWitness>) {
    match find_non_well_behaved(b) {
        Some(w) => (false, Some(w)),
        None => (true, None),
    }
}

pub fn find_non_well_behaved(b: &Dfa) -> Option<NonWellBehavedWitness> {
    let sccs = b.sccs();
    let reach = b.reachable();
    for q in b.states() {
        if !reach[q] {
            continue;
        }
        let flags = sccs.flags[sccs.component_of[q]];
        if flags.all_final || flags.all_nonfinal {
            continue;
        }
        let Some((u0, u1, p0, p1)) = mixed_pair_from(b, &sccs, q) else {
            continue;
        };
        let u = b
            .shortest_path_to(b.initial(), |r| r == q)
            .expect("q is reachable");
        let mut v0 = path_within(b, &sccs, p0, q).expect("same SCC");
        let mut v1 = path_within(b, &sccs, p1, q).expect("same SCC");
        let k = u0.len() + v0.len();
        let l = u1.len() + v1.len();
        let m = lcm(k, l);
        let loop0: Word = u0.iter().chain(&v0).copied().collect();
        let loop1: Word = u1.iter().chain(&v1).copied().collect();
        v0.extend(repeat(&loop0, m / k - 1));
        v1.extend(repeat(&loop1, m / l - 1));
        let w = NonWellBehavedWitness {
            u,
            u0,
            v0,
            u1,
            v1,
            p: q,
            p0,
            p1,
        };
        w.verify(b).expect("witness replays by construction");
        return Some(w);
    }
    None
}

/// The `2^j` words `u · u_{α1} v_{α1} ⋯ u_{αj} v_{αj}` for `α ∈ {0,1}^j` in
/// lexicographic order of `α`. They are words for the automaton carrying the
/// witness; their reversals are windows for the reversed language.
pub fn linear_witness_streams(w: &NonWellBehavedWitness, j: usize) -> Vec<Word> {
    let loop0: Word = w.u0.iter().chain(&w.v0).copied().collect();
    let loop1: Word = w.u1.iter().chain(&w.v1).copied().collect();
    (0..1usize << j)
        .map(|alpha| {
            let mut word = w.u.clone();
            for i in (0..j).rev() {
                word.extend(if (alpha >> i) & 1 == 1 {
                    &loop1
                } else {
                    &loop0
                });
            }
            word
        })
        .collect()
}
