use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};

use serde::{Deserialize, Serialize};

use super::well_behaved::NonWellBehavedWitness;
use crate::automata::{reversed, Dfa, StateId, Word};
use crate::error::{Error, Result};

/// `(u0, u1, w0, w1)` with `|u0| = |u1| ≥ 1`, `u_i` a suffix of `w_i` and
/// disjoint sets `Q(u0, w0, w1)`, `Q(u1, w0, w1)` in the minimal DFA.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CriticalTuple {
    pub u0: Word,
    pub u1: Word,
    pub w0: Word,
    pub w1: Word,
}

/// `Q(u, x0, x1)`: states reached by `u` followed by any product of `x0`, `x1`.
pub fn q_set(l: &Dfa, u: &[usize], x0: &[usize], x1: &[usize]) -> BTreeSet<StateId> {
    let start = l.run(l.initial(), u);
    let mut seen = BTreeSet::from([start]);
    let mut queue = VecDeque::from([start]);
    while let Some(q) = queue.pop_front() {
        for x in [x0, x1] {
            let r = l.run(q, x);
            if seen.insert(r) {
                queue.push_back(r);
            }
        }
    }
    seen
}

impl CriticalTuple {
    pub fn q_sets(&self, l: &Dfa) -> (BTreeSet<StateId>, BTreeSet<StateId>) {
        (
            q_set(l, &self.u0, &self.w0, &self.w1),
            q_set(l, &self.u1, &self.w0, &self.w1),
        )
    }

    /// Checks the defining conditions against the minimal DFA `l`.
    pub fn verify(&self, l: &Dfa) -> Result<()> {
        if self.u0.len() != self.u1.len() || self.u0.is_empty() {
            return Err(Error::Internal(
                "critical tuple needs |u0| = |u1| ≥ 1".into(),
            ));
        }
        if !self.w0.ends_with(&self.u0) || !self.w1.ends_with(&self.u1) {
            return Err(Error::Internal(
                "critical tuple needs u_i to be a suffix of w_i".into(),
            ));
        }
        let (a, b) = self.q_sets(l);
        if !a.is_disjoint(&b) {
            return Err(Error::Internal("critical tuple Q-sets intersect".into()));
        }
        Ok(())
    }
}

/// Converts a witness for a DFA recognizing `L^R` into a critical tuple for
/// the minimal DFA `l` of `L`: `(u0^R, u1^R, (u0 v0)^R, (u1 v1)^R)`.
pub fn critical_from_witness(l: &Dfa, w: &NonWellBehavedWitness) -> Result<CriticalTuple> {
    let cat = |a: &Word, b: &Word| -> Word { a.iter().chain(b).copied().collect() };
    let t = CriticalTuple {
        u0: reversed(&w.u0),
        u1: reversed(&w.u1),
        w0: reversed(&cat(&w.u0, &w.v0)),
        w1: reversed(&cat(&w.u1, &w.v1)),
    };
    t.verify(l)?;
    Ok(t)
}

/// Transition monoid of a DFA: element `f_w` maps `x` to `δ(x, w)`.
#[derive(Clone, Debug)]
pub struct TransitionMonoid {
    pub elements: Vec<Vec<StateId>>,
    /// A shortest word for each element, least in canonical order.
    pub words: Vec<Word>,
    index: HashMap<Vec<StateId>, usize>,
}

impl TransitionMonoid {
    pub fn new(l: &Dfa, budget: usize) -> Result<Self> {
        let n = l.num_states();
        let identity: Vec<StateId> = (0..n).collect();
        let mut m = TransitionMonoid {
            elements: vec![identity.clone()],
            words: vec![Vec::new()],
            index: HashMap::new(),
        };
        m.index.insert(identity, 0);
        let mut i = 0;
        while i < m.elements.len() {
            for a in 0..l.alphabet().len() {
                let g: Vec<StateId> = m.elements[i].iter().map(|&x| l.step(x, a)).collect();
                if !m.index.contains_key(&g) {
                    if m.elements.len() >= budget {
                        return Err(Error::Budget {
                            what: "transition monoid",
                            limit: budget,
                        });
                    }
                    let mut w = m.words[i].clone();
                    w.push(a);
                    m.index.insert(g.clone(), m.elements.len());
                    m.elements.push(g);
                    m.words.push(w);
                }
            }
            i += 1;
        }
        Ok(m)
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Element for "first `i`, then `j`".
    pub fn then(&self, i: usize, j: usize) -> usize {
        let f: Vec<StateId> = self.elements[i]
            .iter()
            .map(|&x| self.elements[j][x])
            .collect();
        self.index[&f]
    }

    pub fn index_of(&self, f: &[StateId]) -> Option<usize> {
        self.index.get(f).copied()
    }

    pub fn is_idempotent(&self, i: usize) -> bool {
        self.then(i, i) == i
    }

    /// Least `ω ≥ 1` with `f^ω` idempotent.
    pub fn idempotent_power(&self, i: usize) -> usize {
        let mut cur = i;
        let mut k = 1;
        while !self.is_idempotent(cur) {
            cur = self.then(cur, i);
            k += 1;
        }
        k
    }
}

/// Exhaustive search for a critical tuple of the minimal DFA `l` over the
/// transition monoid. `budget` bounds the number of generator pairs examined.
pub fn find_critical_tuple(
    l: &Dfa,
    monoid_budget: usize,
    budget: usize,
) -> Result<Option<CriticalTuple>> {
    let m = TransitionMonoid::new(l, monoid_budget)?;
    let k = l.alphabet().len();
    let gens: Vec<usize> = (0..k)
        .map(|a| {
            m.index_of(
                &(0..l.num_states())
                    .map(|x| l.step(x, a))
                    .collect::<Vec<_>>(),
            )
            .expect("generator")
        })
        .collect();
    // breadth-first over pairs (f_{u0}, f_{u1}) for equal-length nonempty words
    let mut pair_words: HashMap<(usize, usize), (Word, Word)> = HashMap::new();
    let mut queue: VecDeque<(usize, usize)> = VecDeque::new();
    for a in 0..k {
        for b in 0..k {
            let pair = (gens[a], gens[b]);
            if let std::collections::hash_map::Entry::Vacant(e) = pair_words.entry(pair) {
                e.insert((vec![a], vec![b]));
                queue.push_back(pair);
            }
        }
    }
    let mut order = Vec::new();
    while let Some((x, y)) = queue.pop_front() {
        order.push((x, y));
        for a in 0..k {
            for b in 0..k {
                let next = (m.then(x, gens[a]), m.then(y, gens[b]));
                if !pair_words.contains_key(&next) {
                    let (wx, wy) = &pair_words[&(x, y)];
                    let mut nx = wx.clone();
                    nx.push(a);
                    let mut ny = wy.clone();
                    ny.push(b);
                    pair_words.insert(next, (nx, ny));
                    queue.push_back(next);
                }
            }
        }
    }

    let q0 = l.initial();
    let mut examined = 0usize;
    let mut tried: HashSet<(StateId, StateId, usize, usize)> = HashSet::new();
    for &(x, y) in &order {
        let s0 = m.elements[x][q0];
        let s1 = m.elements[y][q0];
        if s0 == s1 {
            continue;
        }
        for y0 in 0..m.len() {
            let g0 = m.then(y0, x);
            for y1 in 0..m.len() {
                let g1 = m.then(y1, y);
                if !tried.insert((s0, s1, g0, g1)) {
                    continue;
                }
                examined += 1;
                if examined > budget {
                    return Err(Error::Budget {
                        what: "critical tuple search",
                        limit: budget,
                    });
                }
                if closures_disjoint(&m, s0, s1, g0, g1) {
                    let (u0, u1) = pair_words[&(x, y)].clone();
                    let w0: Word = m.words[y0].iter().chain(&u0).copied().collect();
                    let w1: Word = m.words[y1].iter().chain(&u1).copied().collect();
                    let t = CriticalTuple { u0, u1, w0, w1 };
                    t.verify(l)?;
                    return Ok(Some(t));
                }
            }
        }
    }
    Ok(None)
}

fn closures_disjoint(m: &TransitionMonoid, s0: StateId, s1: StateId, g0: usize, g1: usize) -> bool {
    let close = |s: StateId| {
        let mut seen = BTreeSet::from([s]);
        let mut queue = vec![s];
        while let Some(q) = queue.pop() {
            for g in [g0, g1] {
                let r = m.elements[g][q];
                if seen.insert(r) {
                    queue.push(r);
                }
            }
        }
        seen
    };
    close(s0).is_disjoint(&close(s1))
}

/// Rewrites a critical tuple so that both Q-sets have at most three
/// elements, using idempotent powers of the generator words.
pub fn normalize_critical(
    l: &Dfa,
    t: &CriticalTuple,
    monoid_budget: usize,
) -> Result<CriticalTuple> {
    let m = TransitionMonoid::new(l, monoid_budget)?;
    let elem = |w: &[usize]| -> usize {
        let f: Vec<StateId> = (0..l.num_states()).map(|x| l.run(x, w)).collect();
        m.index_of(&f).expect("every word is in the monoid")
    };
    let pow =
        |w: &[usize], k: usize| -> Word { w.iter().copied().cycle().take(w.len() * k).collect() };
    let e0 = pow(&t.w0, m.idempotent_power(elem(&t.w0)));
    let e1 = pow(&t.w1, m.idempotent_power(elem(&t.w1)));
    let prod: Word = e0.iter().chain(&e1).copied().collect();
    let g = pow(&prod, m.idempotent_power(elem(&prod)));
    let x0: Word = g.iter().chain(&e0).copied().collect();
    let x1 = g;
    let out = CriticalTuple {
        u0: t.u0.clone(),
        u1: t.u1.clone(),
        w0: x0,
        w1: x1,
    };
    out.verify(l)?;
    let (a, b) = out.q_sets(l);
    if a.len() > 3 || b.len() > 3 {
        return Err(Error::Internal(
            "normalized critical tuple has a Q-set above three".into(),
        ));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::{minimize, reverse_determinize, Alphabet};
    use crate::classify::well_behaved::is_well_behaved;

    fn ab() -> Alphabet {
        Alphabet::chars("ab").unwrap()
    }

    #[test]
    fn even_a_tuple() {
        let l = Dfa::new(
            ab(),
            vec!["e".into(), "o".into()],
            0,
            vec![1, 0, 0, 1],
            vec![true, false],
        )
        .unwrap();
        let w = is_well_behaved(&reverse_determinize(&l.to_nfa()).unwrap())
            .1
            .unwrap();
        let t = critical_from_witness(&l, &w).unwrap();
        assert_eq!(
            (
                ab().render(&t.u0),
                ab().render(&t.u1),
                ab().render(&t.w0),
                ab().render(&t.w1)
            ),
            ("a".into(), "b".into(), "aa".into(), "bb".into())
        );
        let (q0, q1) = t.q_sets(&l);
        assert_eq!(q0, BTreeSet::from([1]));
        assert_eq!(q1, BTreeSet::from([0]));
        let n = normalize_critical(&l, &t, 1 << 16).unwrap();
        n.verify(&l).unwrap();
    }

    #[test]
    fn starts_a_tuple() {
        let l = minimize(
            &Dfa::new(
                ab(),
                vec!["i".into(), "y".into(), "n".into()],
                0,
                vec![1, 2, 1, 1, 2, 2],
                vec![false, true, false],
            )
            .unwrap(),
        );
        let w = is_well_behaved(&reverse_determinize(&l.to_nfa()).unwrap())
            .1
            .unwrap();
        critical_from_witness(&l, &w).unwrap();
        assert!(find_critical_tuple(&l, 1 << 16, 1 << 20).unwrap().is_some());
    }

    #[test]
    fn none_for_log_languages() {
        let ends_a = Dfa::new(
            ab(),
            vec!["n".into(), "y".into()],
            0,
            vec![1, 0, 1, 0],
            vec![false, true],
        )
        .unwrap();
        assert!(find_critical_tuple(&ends_a, 1 << 16, 1 << 20)
            .unwrap()
            .is_none());
    }
}
