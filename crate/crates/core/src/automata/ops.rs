use std::collections::{BTreeSet, HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use super::alphabet::Word;
use super::dfa::Dfa;
use super::nfa::Nfa;
use super::StateId;
use crate::error::{Error, Result};

/// Default cap on the number of states produced by subset constructions.
pub const DEFAULT_STATE_BUDGET: usize = 1 << 20;

/// Subset construction restricted to reachable subsets.
pub fn determinize(a: &Nfa) -> Result<Dfa> {
    determinize_with(a, DEFAULT_STATE_BUDGET)
}

/// Subset construction with an explicit state budget. States are numbered in
/// breadth-first discovery order over the canonical symbol order.
pub fn determinize_with(a: &Nfa, budget: usize) -> Result<Dfa> {
    let k = a.alphabet().len();
    let start: BTreeSet<StateId> = a.initial().clone();
    let mut index: HashMap<BTreeSet<StateId>, StateId> = HashMap::new();
    let mut subsets = vec![start.clone()];
    index.insert(start, 0);
    let mut delta = Vec::new();
    let mut i = 0;
    while i < subsets.len() {
        for s in 0..k {
            let next = a.step_set(&subsets[i], s);
            let id = match index.get(&next) {
                Some(&id) => id,
                None => {
                    if subsets.len() >= budget {
                        return Err(Error::Budget {
                            what: "subset construction",
                            limit: budget,
                        });
                    }
                    let id = subsets.len();
                    index.insert(next.clone(), id);
                    subsets.push(next);
                    id
                }
            };
            delta.push(id);
        }
        i += 1;
    }
    let names = subsets.iter().map(|set| subset_name(a, set)).collect();
    let finals = subsets
        .iter()
        .map(|set| set.iter().any(|&q| a.is_final(q)))
        .collect();
    Dfa::new(a.alphabet().clone(), names, 0, delta, finals)
}

fn subset_name(a: &Nfa, set: &BTreeSet<StateId>) -> String {
    let inner: Vec<&str> = set.iter().map(|&q| a.name(q)).collect();
    format!("{{{}}}", inner.join(","))
}

pub fn reverse(a: &Nfa) -> Nfa {
    a.reverse()
}

/// `A^RD`: reversal followed by the subset construction.
pub fn reverse_determinize(a: &Nfa) -> Result<Dfa> {
    determinize(&a.reverse())
}

pub fn reverse_determinize_with(a: &Nfa, budget: usize) -> Result<Dfa> {
    determinize_with(&a.reverse(), budget)
}

/// Minimal DFA via Moore partition refinement on the reachable part, with
/// states renamed `q0, q1, ...` in breadth-first order.
pub fn minimize(a: &Dfa) -> Dfa {
    let k = a.alphabet().len();
    let reach = a.reachable();
    let live: Vec<StateId> = a.states().filter(|&q| reach[q]).collect();

    let mut class = vec![usize::MAX; a.num_states()];
    for &q in &live {
        class[q] = usize::from(a.is_final(q));
    }
    let mut count = {
        let mut seen = BTreeSet::new();
        for &q in &live {
            seen.insert(class[q]);
        }
        seen.len()
    };
    loop {
        let mut sig_ids: HashMap<Vec<usize>, usize> = HashMap::new();
        let mut next = vec![usize::MAX; a.num_states()];
        for &q in &live {
            let mut sig = Vec::with_capacity(k + 1);
            sig.push(class[q]);
            for s in 0..k {
                sig.push(class[a.step(q, s)]);
            }
            let fresh = sig_ids.len();
            next[q] = *sig_ids.entry(sig).or_insert(fresh);
        }
        let new_count = sig_ids.len();
        class = next;
        if new_count == count {
            break;
        }
        count = new_count;
    }

    // canonical renumbering of classes by BFS
    let mut order: HashMap<usize, StateId> = HashMap::new();
    let mut reps: Vec<StateId> = Vec::new();
    let mut queue = VecDeque::new();
    order.insert(class[a.initial()], 0);
    reps.push(a.initial());
    queue.push_back(a.initial());
    let mut delta = Vec::new();
    while let Some(q) = queue.pop_front() {
        for s in 0..k {
            let r = a.step(q, s);
            let c = class[r];
            let id = match order.get(&c) {
                Some(&id) => id,
                None => {
                    let id = reps.len();
                    order.insert(c, id);
                    reps.push(r);
                    queue.push_back(r);
                    id
                }
            };
            delta.push(id);
        }
    }
    let names = (0..reps.len()).map(|i| format!("q{i}")).collect();
    let finals = reps.iter().map(|&q| a.is_final(q)).collect();
    Dfa::new(a.alphabet().clone(), names, 0, delta, finals).expect("minimization preserves shape")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BoolOp {
    Union,
    Intersection,
    Difference,
    Complement,
}

/// Boolean combination via the product construction; the result is minimal.
/// `b` is ignored for `Complement` and required otherwise.
pub fn combine(op: BoolOp, a: &Dfa, b: Option<&Dfa>) -> Result<Dfa> {
    if op == BoolOp::Complement {
        return Ok(minimize(&a.complement_finals()));
    }
    let b = b.ok_or_else(|| Error::Precondition(format!("{op:?} needs two operands")))?;
    let f = match op {
        BoolOp::Union => |x: bool, y: bool| x || y,
        BoolOp::Intersection => |x: bool, y: bool| x && y,
        BoolOp::Difference => |x: bool, y: bool| x && !y,
        BoolOp::Complement => unreachable!(),
    };
    Ok(minimize(&product(a, b, f)?))
}

/// Reachable product automaton with acceptance given by `f`.
pub fn product(a: &Dfa, b: &Dfa, f: impl Fn(bool, bool) -> bool) -> Result<Dfa> {
    a.alphabet().check_same(b.alphabet())?;
    let k = a.alphabet().len();
    let mut index: HashMap<(StateId, StateId), StateId> = HashMap::new();
    let mut pairs = vec![(a.initial(), b.initial())];
    index.insert(pairs[0], 0);
    let mut delta = Vec::new();
    let mut i = 0;
    while i < pairs.len() {
        let (p, q) = pairs[i];
        for s in 0..k {
            let next = (a.step(p, s), b.step(q, s));
            let id = *index.entry(next).or_insert_with(|| {
                pairs.push(next);
                pairs.len() - 1
            });
            delta.push(id);
        }
        i += 1;
    }
    let names = pairs
        .iter()
        .map(|&(p, q)| format!("({},{})", a.name(p), b.name(q)))
        .collect();
    let finals = pairs
        .iter()
        .map(|&(p, q)| f(a.is_final(p), b.is_final(q)))
        .collect();
    Dfa::new(a.alphabet().clone(), names, 0, delta, finals)
}

/// Shortest word in the symmetric difference, ties broken by canonical symbol
/// order; `None` when the languages coincide.
pub fn separating_word(a: &Dfa, b: &Dfa) -> Result<Option<Word>> {
    let p = product(a, b, |x, y| x != y)?;
    Ok(p.shortest_accepted())
}

pub fn equivalent(a: &Dfa, b: &Dfa) -> Result<bool> {
    Ok(separating_word(a, b)?.is_none())
}

/// `L(a) ⊆ L(b)`.
pub fn included(a: &Dfa, b: &Dfa) -> Result<bool> {
    Ok(product(a, b, |x, y| x && !y)?.is_empty_language())
}

/// Concatenation `L(a)·L(b)` as an NFA.
pub fn concat(a: &Nfa, b: &Nfa) -> Result<Nfa> {
    a.alphabet().check_same(b.alphabet())?;
    let off = a.num_states();
    let mut names: Vec<String> = a.names().iter().map(|n| format!("L.{n}")).collect();
    names.extend(b.names().iter().map(|n| format!("R.{n}")));
    let mut trans: Vec<(StateId, usize, StateId)> = a.transitions().collect();
    trans.extend(b.transitions().map(|(p, s, q)| (p + off, s, q + off)));
    let b_accepts_eps = b.initial().iter().any(|&q| b.is_final(q));
    // a-final states inherit b's initial out-edges
    for f in a.finals() {
        for &i in b.initial() {
            for s in 0..a.alphabet().len() {
                for &q in b.successors(i, s) {
                    trans.push((f, s, q + off));
                }
            }
        }
    }
    let mut initial: Vec<StateId> = a.initial().iter().copied().collect();
    let a_accepts_eps = a.initial().iter().any(|&q| a.is_final(q));
    if a_accepts_eps {
        initial.extend(b.initial().iter().map(|&q| q + off));
    }
    let mut finals: Vec<StateId> = b.finals().map(|q| q + off).collect();
    if b_accepts_eps {
        finals.extend(a.finals());
    }
    Nfa::new(a.alphabet().clone(), names, initial, trans, finals)
}

/// Reachable states of the complete DFA as a language-preserving restriction.
pub fn trim_unreachable(a: &Dfa) -> Dfa {
    let reach = a.reachable();
    let keep: Vec<StateId> = a.states().filter(|&q| reach[q]).collect();
    let mut id = vec![usize::MAX; a.num_states()];
    for (i, &q) in keep.iter().enumerate() {
        id[q] = i;
    }
    let k = a.alphabet().len();
    let mut delta = Vec::with_capacity(keep.len() * k);
    for &q in &keep {
        for s in 0..k {
            delta.push(id[a.step(q, s)]);
        }
    }
    let names = keep.iter().map(|&q| a.name(q).to_string()).collect();
    let finals = keep.iter().map(|&q| a.is_final(q)).collect();
    Dfa::new(a.alphabet().clone(), names, id[a.initial()], delta, finals)
        .expect("restriction is valid")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::alphabet::Alphabet;

    fn ab() -> Alphabet {
        Alphabet::chars("ab").unwrap()
    }

    /// Σ*a: state 0 = last symbol not a, state 1 = last symbol a.
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

    /// aΣ*
    fn starts_a() -> Dfa {
        Dfa::new(
            ab(),
            vec!["i".into(), "y".into(), "n".into()],
            0,
            vec![1, 2, 1, 1, 2, 2],
            vec![false, true, false],
        )
        .unwrap()
    }

    #[test]
    fn guess_last_symbol_nfa_determinizes_to_two_states() {
        let nfa = Nfa::new(
            ab(),
            vec!["p".into(), "f".into()],
            [0],
            [(0, 0, 0), (0, 1, 0), (0, 0, 1)],
            [1],
        )
        .unwrap();
        let d = determinize(&nfa).unwrap();
        assert_eq!(d.num_states(), 2);
        for w in ab().words_up_to(6) {
            assert_eq!(d.accepts(&w), w.last() == Some(&0));
        }
    }

    #[test]
    fn reverse_of_starts_a_is_ends_a() {
        let r = reverse_determinize(&starts_a().to_nfa()).unwrap();
        assert!(equivalent(&r, &ends_a()).unwrap());
    }

    #[test]
    fn intersection_example() {
        let i = combine(BoolOp::Intersection, &ends_a(), Some(&starts_a())).unwrap();
        for w in ab().words_up_to(6) {
            let expect = !w.is_empty() && w[0] == 0 && *w.last().unwrap() == 0;
            assert_eq!(i.accepts(&w), expect);
        }
    }

    #[test]
    fn shortest_separator() {
        let w = separating_word(&ends_a(), &starts_a()).unwrap().unwrap();
        assert_eq!(w.len(), 2);
        assert_eq!(ab().render(&w), "ab");
    }

    #[test]
    fn budget_is_enforced() {
        let nfa = Nfa::new(
            ab(),
            vec!["p".into(), "f".into()],
            [0],
            [(0, 0, 0), (0, 1, 0), (0, 0, 1)],
            [1],
        )
        .unwrap();
        assert!(matches!(
            determinize_with(&nfa, 1),
            Err(Error::Budget { .. })
        ));
    }

    #[test]
    fn concat_matches_definition() {
        let c = concat(&ends_a().to_nfa(), &starts_a().to_nfa()).unwrap();
        let d = determinize(&c).unwrap();
        for w in ab().words_up_to(6) {
            let expect =
                (0..=w.len()).any(|i| ends_a().accepts(&w[..i]) && starts_a().accepts(&w[i..]));
            assert_eq!(d.accepts(&w), expect, "{w:?}");
        }
    }
}
