use std::collections::{HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::automata::{minimize, reverse_determinize, reversed, Dfa, StateDistance, StateId, Word};
use crate::error::Result;

/// Number of positions `i` where exactly one of `a_i⋯a_n` and `a_{i+1}⋯a_n`
/// belongs to `L`, computed right to left.
pub fn alt_count(l: &Dfa, x: &[usize]) -> usize {
    let n = l.num_states();
    let mut f: Vec<StateId> = (0..n).collect();
    let mut prev = l.is_final(l.initial());
    let mut count = 0;
    for &a in x.iter().rev() {
        f = (0..n).map(|q| f[l.step(q, a)]).collect();
        let cur = l.is_final(f[l.initial()]);
        if cur != prev {
            count += 1;
        }
        prev = cur;
    }
    count
}

/// Supremum of `alt_count` over all words.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlternationReport {
    pub bound: StateDistance,
    /// For a finite bound: a word attaining it. For an infinite bound: the
    /// word `cycle^k · witness` has at least `k` alternations.
    pub witness: Word,
    pub cycle: Word,
}

impl AlternationReport {
    /// Replays the witness against `l`.
    pub fn verify(&self, l: &Dfa) -> bool {
        match self.bound {
            StateDistance::Finite(k) => alt_count(l, &self.witness) == k,
            StateDistance::Infinite => {
                let mut last = alt_count(l, &self.witness);
                let mut word = self.witness.clone();
                for _ in 0..3 {
                    word = self.cycle.iter().chain(&word).copied().collect();
                    let c = alt_count(l, &word);
                    if c <= last {
                        return false;
                    }
                    last = c;
                }
                true
            }
        }
    }
}

/// Works on the minimal DFA `B` of `L^R`: a run of `B` on `x^R` passes through
/// the memberships of the suffixes of `x`, so alternations are finality
/// toggles along runs. The bound is infinite iff a reachable SCC of `B` mixes
/// final and non-final states; otherwise it is the longest toggle path.
pub fn max_alternations(l: &Dfa) -> Result<AlternationReport> {
    let b = minimize(&reverse_determinize(&l.to_nfa())?);
    let sccs = b.sccs();
    let reach = b.reachable();
    let k = b.alphabet().len();

    for (ci, comp) in sccs.components.iter().enumerate() {
        let flags = sccs.flags[ci];
        if !reach[comp[0]] || flags.all_final || flags.all_nonfinal {
            continue;
        }
        // a toggle edge inside the component, closed into a cycle
        for &p in comp {
            for s in 0..k {
                let q = b.step(p, s);
                if sccs.component_of[q] == ci && b.is_final(p) != b.is_final(q) {
                    let back = path_in_component(&b, &sccs.component_of, q, p).expect("same SCC");
                    let prefix = b
                        .shortest_path_to(b.initial(), |r| r == p)
                        .expect("reachable");
                    let mut cycle = vec![s];
                    cycle.extend(back);
                    let report = AlternationReport {
                        bound: StateDistance::Infinite,
                        witness: reversed(&prefix),
                        cycle: reversed(&cycle),
                    };
                    return Ok(report);
                }
            }
        }
    }

    // components come in reverse topological order; walk them forwards
    let ncomp = sccs.len();
    let mut best: Vec<Option<usize>> = vec![None; ncomp];
    // (predecessor state, symbol, entry state) realizing best
    let mut via: Vec<Option<(StateId, usize, StateId)>> = vec![None; ncomp];
    let c0 = sccs.component_of[b.initial()];
    best[c0] = Some(0);
    for ci in (0..ncomp).rev() {
        let Some(val) = best[ci] else { continue };
        for &p in &sccs.components[ci] {
            for s in 0..k {
                let q = b.step(p, s);
                let cj = sccs.component_of[q];
                if cj == ci {
                    continue;
                }
                let cand = val + usize::from(b.is_final(p) != b.is_final(q));
                if best[cj].is_none_or(|old| cand > old) {
                    best[cj] = Some(cand);
                    via[cj] = Some((p, s, q));
                }
            }
        }
    }
    let (target, bound) = best
        .iter()
        .enumerate()
        .filter_map(|(i, v)| v.map(|v| (i, v)))
        .max_by_key(|&(i, v)| (v, std::cmp::Reverse(i)))
        .expect("initial component");
    // reconstruct a run of B through the chosen components
    let mut hops = Vec::new();
    let mut cur = target;
    while let Some((p, s, q)) = via[cur] {
        hops.push((p, s, q));
        cur = sccs.component_of[p];
    }
    hops.reverse();
    let mut word = Vec::new();
    let mut at = b.initial();
    for (p, s, q) in hops {
        word.extend(path_in_component(&b, &sccs.component_of, at, p).expect("same SCC"));
        word.push(s);
        at = q;
    }
    Ok(AlternationReport {
        bound: StateDistance::Finite(bound),
        witness: reversed(&word),
        cycle: Vec::new(),
    })
}

fn path_in_component(b: &Dfa, comp_of: &[usize], from: StateId, to: StateId) -> Option<Word> {
    let c = comp_of[from];
    let mut prev: HashMap<StateId, (StateId, usize)> = HashMap::new();
    let mut queue = VecDeque::from([from]);
    let mut seen = vec![false; b.num_states()];
    seen[from] = true;
    while let Some(q) = queue.pop_front() {
        if q == to {
            let mut w = Vec::new();
            let mut x = q;
            while x != from {
                let (p, s) = prev[&x];
                w.push(s);
                x = p;
            }
            w.reverse();
            return Some(w);
        }
        for s in 0..b.alphabet().len() {
            let r = b.step(q, s);
            if comp_of[r] == c && !seen[r] {
                seen[r] = true;
                prev.insert(r, (q, s));
                queue.push_back(r);
            }
        }
    }
    None
}
