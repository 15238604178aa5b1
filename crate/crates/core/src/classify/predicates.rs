use std::collections::{HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::automata::ops::included;
use crate::automata::{minimize, Dfa, DistanceTable, PartialDfa, StateDistance, StateId, Word};

/// Pairs reachable from `(q0, q0)` by pairs of equal-length words, with a
/// witness word pair for each.
pub fn synchronized_pairs(l: &Dfa) -> HashMap<(StateId, StateId), (Word, Word)> {
    let k = l.alphabet().len();
    let start = (l.initial(), l.initial());
    let mut prev: HashMap<(StateId, StateId), ((StateId, StateId), usize, usize)> = HashMap::new();
    let mut order = vec![start];
    let mut queue = VecDeque::from([start]);
    prev.insert(start, (start, usize::MAX, usize::MAX));
    while let Some((x, y)) = queue.pop_front() {
        for a in 0..k {
            for b in 0..k {
                let next = (l.step(x, a), l.step(y, b));
                if let std::collections::hash_map::Entry::Vacant(e) = prev.entry(next) {
                    e.insert(((x, y), a, b));
                    order.push(next);
                    queue.push_back(next);
                }
            }
        }
    }
    let mut out = HashMap::new();
    for pair in order {
        let (mut wx, mut wy) = (Vec::new(), Vec::new());
        let mut cur = pair;
        while cur != start {
            let (p, a, b) = prev[&cur];
            wx.push(a);
            wy.push(b);
            cur = p;
        }
        wx.reverse();
        wy.reverse();
        out.insert(pair, (wx, wy));
    }
    out
}

/// Evidence against constant fixed-size space: `|x| = |y|`, `|z| = |Q|` and
/// the minimal DFA reaches different states on `xz` and `yz`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstantWitness {
    pub x: Word,
    pub y: Word,
    pub z: Word,
}

/// Decides whether `L(l)` has constant fixed-size space: every pair of states
/// reachable by equal-length words must merge under all continuations of
/// length `|Q|`. `l` is minimized first.
pub fn is_constant_fixed(l: &Dfa) -> bool {
    constant_fixed_witness(l).is_none()
}

pub fn constant_fixed_witness(l: &Dfa) -> Option<ConstantWitness> {
    let m = minimize(l);
    let table = DistanceTable::compute(&m);
    let pairs = synchronized_pairs(&m);
    let mut bad: Vec<_> = pairs
        .iter()
        .filter(|(&(p, q), _)| !table.get(p, q).is_finite())
        .collect();
    bad.sort_by(|a, b| (a.1 .0.len(), &a.1 .0, &a.1 .1).cmp(&(b.1 .0.len(), &b.1 .0, &b.1 .1)));
    let (&(p, q), (x, y)) = bad.first()?;
    let z = diverging_word(&m, &table, p, q, m.num_states());
    debug_assert_ne!(m.run(p, &z), m.run(q, &z));
    Some(ConstantWitness {
        x: x.clone(),
        y: y.clone(),
        z,
    })
}

/// For a pair at infinite distance, a word of length `len` that keeps the
/// pair apart. Each step picks a symbol leading to another infinite pair.
fn diverging_word(
    m: &Dfa,
    table: &DistanceTable,
    mut p: StateId,
    mut q: StateId,
    len: usize,
) -> Word {
    let mut z = Vec::with_capacity(len);
    for _ in 0..len {
        let s = (0..m.alphabet().len())
            .find(|&s| !table.get(m.step(p, s), m.step(q, s)).is_finite())
            .expect("infinite distance propagates");
        z.push(s);
        p = m.step(p, s);
        q = m.step(q, s);
    }
    z
}

/// Least `k` such that `L` is `k`-suffix testable, or `Infinite`.
pub fn suffix_testable_k(l: &Dfa) -> StateDistance {
    DistanceTable::compute(&minimize(l)).max()
}

/// Membership depends only on the length.
pub fn is_length_language(l: &Dfa) -> bool {
    synchronized_pairs(l)
        .keys()
        .all(|&(p, q)| l.is_final(p) == l.is_final(q))
}

/// `Σ*L ⊆ L`, checked as `L ⊆ s⁻¹L` for every symbol `s`.
pub fn is_left_ideal(l: &Dfa) -> bool {
    (0..l.alphabet().len()).all(|s| {
        let quotient = l.with_initial(l.step(l.initial(), s));
        included(l, &quotient).expect("same alphabet")
    })
}

/// `LΣ* ⊆ L`: no reachable final state leads to a non-final one.
pub fn is_right_ideal(l: &Dfa) -> bool {
    let reach = l.reachable();
    l.states()
        .filter(|&q| reach[q] && l.is_final(q))
        .all(|q| (0..l.alphabet().len()).all(|s| l.is_final(l.step(q, s))))
}

pub fn is_finite_language(l: &Dfa) -> bool {
    match PartialDfa::trim(l) {
        None => true,
        Some(t) => t.sccs().flags.iter().all(|f| f.is_trivial_cycle),
    }
}

/// Every word of the language has length below `bound`.
pub fn max_word_length(l: &Dfa) -> Option<usize> {
    let t = PartialDfa::trim(l)?;
    let sccs = t.sccs();
    if !sccs.flags.iter().all(|f| f.is_trivial_cycle) {
        return None;
    }
    // longest path in the DAG; components come in reverse topological order
    let mut longest = vec![0usize; t.num_states()];
    for comp in &sccs.components {
        let q = comp[0];
        longest[q] = t
            .edges(q)
            .iter()
            .map(|&(_, r)| longest[r] + 1)
            .max()
            .unwrap_or(0);
    }
    Some(longest[t.initial()])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::Alphabet;

    fn ab() -> Alphabet {
        Alphabet::chars("ab").unwrap()
    }

    fn ends_a() -> Dfa {
        Dfa::new(
            ab(),
            vec!["n".into(), "y".into()],
            0,
            vec![1, 0, 1, 0],
            vec![false, true],
        )
        .unwrap()
    }

    fn even_len() -> Dfa {
        Dfa::new(
            ab(),
            vec!["e".into(), "o".into()],
            0,
            vec![1, 1, 0, 0],
            vec![true, false],
        )
        .unwrap()
    }

    fn even_a() -> Dfa {
        Dfa::new(
            ab(),
            vec!["e".into(), "o".into()],
            0,
            vec![1, 0, 0, 1],
            vec![true, false],
        )
        .unwrap()
    }

    #[test]
    fn constant_examples() {
        assert!(is_constant_fixed(&ends_a()));
        assert!(is_constant_fixed(&even_len()));
        let w = constant_fixed_witness(&even_a()).unwrap();
        let m = minimize(&even_a());
        assert_eq!(w.x.len(), w.y.len());
        assert_eq!(w.z.len(), m.num_states());
        let xz: Word = w.x.iter().chain(&w.z).copied().collect();
        let yz: Word = w.y.iter().chain(&w.z).copied().collect();
        assert_ne!(m.run(0, &xz), m.run(0, &yz));
    }

    #[test]
    fn suffix_testability() {
        assert_eq!(suffix_testable_k(&ends_a()), StateDistance::Finite(1));
        assert_eq!(suffix_testable_k(&even_len()), StateDistance::Infinite);
        assert_eq!(
            suffix_testable_k(&Dfa::trivial(ab(), true)),
            StateDistance::Finite(0)
        );
    }

    #[test]
    fn ideals_and_lengths() {
        assert!(is_length_language(&even_len()));
        assert!(!is_left_ideal(&even_len()));
        assert!(is_left_ideal(&ends_a()));
        assert!(!is_right_ideal(&ends_a()));
        let all = Dfa::trivial(ab(), true);
        assert!(is_length_language(&all) && is_left_ideal(&all) && is_right_ideal(&all));
        assert!(is_finite_language(&Dfa::trivial(ab(), false)));
        assert!(!is_finite_language(&ends_a()));
    }

    #[test]
    fn finite_lengths() {
        // {a, ab}
        let l = Dfa::from_transitions(
            ab(),
            vec!["0".into(), "1".into(), "2".into()],
            0,
            [(0, 0, 1), (1, 1, 2)],
            [1, 2],
        )
        .unwrap();
        assert!(is_finite_language(&l));
        assert_eq!(max_word_length(&l), Some(2));
        assert_eq!(max_word_length(&ends_a()), None);
    }
}
