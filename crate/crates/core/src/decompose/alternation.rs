use std::collections::HashMap;

use crate::automata::{minimize, Dfa, Formula, StateDistance, StateId};
use crate::classify::max_alternations;
use crate::error::{Error, Result};

use super::certificate::{DecompositionCertificate, Leaf, LeafTag};
use super::lang::reversal;

/// `P_i = {x : alt_L(x) ≥ i}`. The minimal DFA of `L^R` reads `x^R` and
/// sees the membership of every suffix of `x`; a saturating counter tracks
/// the finality toggles.
pub fn alternation_ideal(l: &Dfa, i: usize) -> Result<Dfa> {
    let b = reversal(l)?;
    let k = b.alphabet().len();
    let mut index: HashMap<(StateId, usize), StateId> = HashMap::new();
    let mut states = vec![(b.initial(), 0usize)];
    index.insert(states[0], 0);
    let mut delta = Vec::new();
    let mut j = 0;
    while j < states.len() {
        let (q, c) = states[j];
        for s in 0..k {
            let r = b.step(q, s);
            let c2 = (c + usize::from(b.is_final(q) != b.is_final(r))).min(i);
            let next = (r, c2);
            let id = *index.entry(next).or_insert_with(|| {
                states.push(next);
                states.len() - 1
            });
            delta.push(id);
        }
        j += 1;
    }
    let finals = states.iter().map(|&(_, c)| c >= i).collect();
    let names = (0..states.len()).map(|n| format!("a{n}")).collect();
    let reversed_ideal = Dfa::new(b.alphabet().clone(), names, 0, delta, finals)?;
    reversal(&reversed_ideal)
}

/// `L` as a Boolean combination of the left ideals `P_1, …, P_k` where `k`
/// bounds the alternations: the union of `P_i \ P_{i+1}` over even `i` when
/// `ε ∈ L` and over odd `i` otherwise, with `P_0 = Σ*` and `P_{k+1} = ∅`.
pub fn alternation_decomposition(l: &Dfa) -> Result<DecompositionCertificate> {
    let m = minimize(l);
    let k = match max_alternations(&m)?.bound {
        StateDistance::Finite(k) => k,
        StateDistance::Infinite => {
            return Err(Error::Precondition("unbounded alternations".into()));
        }
    };
    let count = k.max(1);
    let leaves = (1..=count)
        .map(|i| Ok(Leaf::new(LeafTag::LeftIdeal, &alternation_ideal(&m, i)?)))
        .collect::<Result<Vec<_>>>()?;
    let p = |i: usize| Formula::leaf(i - 1);
    let parity = usize::from(!m.is_final(m.initial()));
    let mut terms = Vec::new();
    for i in (parity..=k).step_by(2) {
        let term = match (i, i < k) {
            (0, _) => Formula::not(p(1)),
            (_, true) => Formula::minus(p(i), p(i + 1)),
            (_, false) => p(i),
        };
        terms.push(term);
    }
    let formula = match terms.len() {
        0 => p(1),
        1 => terms.pop().expect("one term"),
        _ => Formula::Union(terms),
    };
    DecompositionCertificate::new(formula, leaves, &m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::Alphabet;
    use crate::classify::alt_count;
    use crate::families::gen_lk;

    #[test]
    fn universal_language() {
        let all = Dfa::trivial(Alphabet::chars("ab").unwrap(), true);
        let cert = alternation_decomposition(&all).unwrap();
        assert_eq!(cert.leaves().len(), 1);
        assert!(cert.leaves()[0].dfa.is_empty_language());
        assert_eq!(cert.formula(), &Formula::not(Formula::leaf(0)));
    }

    #[test]
    fn zero_plus_over_two_letters() {
        let d = Dfa::from_transitions(
            Alphabet::chars("01").unwrap(),
            vec!["i".into(), "z".into()],
            0,
            [(0, 0, 1), (1, 0, 1)],
            [1],
        )
        .unwrap();
        let cert = alternation_decomposition(&d).unwrap();
        assert_eq!(cert.leaves().len(), 2);
    }

    #[test]
    fn lk_leaf_bound() {
        let l1 = gen_lk(1);
        let cert = alternation_decomposition(&l1).unwrap();
        assert!(cert.leaves().len() <= 6);
        for (i, leaf) in cert.leaves().iter().enumerate() {
            for w in Alphabet::digits(1).words_up_to(6) {
                assert_eq!(leaf.dfa.accepts(&w), alt_count(&l1, &w) > i);
            }
        }
    }

    #[test]
    fn unbounded_alternations_are_rejected() {
        let ab = Alphabet::chars("ab").unwrap();
        let even = Dfa::from_transitions(
            ab,
            vec!["e".into(), "o".into()],
            0,
            [(0, 0, 1), (0, 1, 1), (1, 0, 0), (1, 1, 0)],
            [0],
        )
        .unwrap();
        assert!(matches!(
            alternation_decomposition(&even),
            Err(Error::Precondition(_))
        ));
    }
}
