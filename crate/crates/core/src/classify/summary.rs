use std::collections::{BTreeSet, HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::automata::{Dfa, SccPartition, StateId, Word};

/// Entry state of each visited SCC and the number of symbols read from that
/// entry until the next SCC is entered (or the run ends).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PathSummary {
    pub entries: Vec<(StateId, usize)>,
}

impl PathSummary {
    pub fn total_length(&self) -> usize {
        self.entries.iter().map(|e| e.1).sum()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

pub fn path_summary(b: &Dfa, start: StateId, w: &[usize]) -> PathSummary {
    path_summary_with(b, &b.sccs(), start, w)
}

pub fn path_summary_with(b: &Dfa, sccs: &SccPartition, start: StateId, w: &[usize]) -> PathSummary {
    let mut entries = vec![(start, 0)];
    let mut q = start;
    for &a in w {
        let r = b.step(q, a);
        entries.last_mut().expect("non-empty").1 += 1;
        if sccs.component_of[r] != sccs.component_of[q] {
            entries.push((r, 0));
        }
        q = r;
    }
    PathSummary { entries }
}

/// Finality at the end of a run with the given summary, read off any
/// in-SCC path of length `ℓ_k` from `p_k`. Meaningful for well-behaved DFAs,
/// where all such paths agree.
pub fn summary_final(b: &Dfa, sccs: &SccPartition, s: &PathSummary) -> Option<bool> {
    let &(p, len) = s.entries.last()?;
    let comp = sccs.component_of[p];
    let mut layer = BTreeSet::from([p]);
    for _ in 0..len {
        layer = layer
            .iter()
            .flat_map(|&q| (0..b.alphabet().len()).map(move |a| b.step(q, a)))
            .filter(|&r| sccs.component_of[r] == comp)
            .collect();
    }
    layer.first().map(|&q| b.is_final(q))
}

/// A set of at most `|Q| - 1` words separating every pair of distinct states
/// of the minimal DFA `l`. Greedy: repeatedly add a shortest word splitting
/// the least unsplit pair.
pub fn distinguishing_set(l: &Dfa) -> Vec<Word> {
    let n = l.num_states();
    let mut words: Vec<Word> = Vec::new();
    loop {
        let sig = |q: StateId, words: &[Word]| -> Vec<bool> {
            words.iter().map(|z| l.is_final(l.run(q, z))).collect()
        };
        let mut pending = None;
        'outer: for p in 0..n {
            for q in p + 1..n {
                if sig(p, &words) == sig(q, &words) {
                    pending = Some((p, q));
                    break 'outer;
                }
            }
        }
        let Some((p, q)) = pending else { return words };
        match shortest_separator(l, p, q) {
            Some(z) => words.push(z),
            // equivalent states: the input was not minimal
            None => return words,
        }
    }
}

fn shortest_separator(l: &Dfa, p: StateId, q: StateId) -> Option<Word> {
    let mut prev: HashMap<(StateId, StateId), ((StateId, StateId), usize)> = HashMap::new();
    let mut queue = VecDeque::from([(p, q)]);
    prev.insert((p, q), ((p, q), usize::MAX));
    while let Some((x, y)) = queue.pop_front() {
        if l.is_final(x) != l.is_final(y) {
            let mut w = Vec::new();
            let mut cur = (x, y);
            while cur != (p, q) {
                let (pr, s) = prev[&cur];
                w.push(s);
                cur = pr;
            }
            w.reverse();
            return Some(w);
        }
        for s in 0..l.alphabet().len() {
            let next = (l.step(x, s), l.step(y, s));
            if let std::collections::hash_map::Entry::Vacant(e) = prev.entry(next) {
                e.insert(((x, y), s));
                queue.push_back(next);
            }
        }
    }
    None
}
