use std::collections::HashMap;

use crate::automata::{minimize, Dfa, Formula, StateId};
use crate::classify::{classify_dfa, is_left_ideal, is_length_language, FixedClass};
use crate::error::{Error, Result};
use crate::exactspace::{psi_language_dfa, psi_mealy};
use crate::streaming::MealyMachine;

use super::certificate::{DecompositionCertificate, Leaf, LeafTag};
use super::growth::{growth_class, GrowthKind};
use super::lang::reversal;
use super::lca::{lca_to_boolean_combination, linear_cycle_decomposition, normalize_cycle_lengths};

/// `{w : τ_{q0}(w) ∈ L(x)}` for the left-to-right transduction of `m`.
pub fn preimage(m: &MealyMachine, x: &Dfa) -> Result<Dfa> {
    m.output().check_same(x.alphabet())?;
    let k = m.input().len();
    let mut index: HashMap<(StateId, StateId), StateId> = HashMap::new();
    let mut states = vec![(m.initial(), x.initial())];
    index.insert(states[0], 0);
    let mut delta = Vec::new();
    let mut i = 0;
    while i < states.len() {
        let (p, q) = states[i];
        for a in 0..k {
            let (p2, b) = m.step(p, a);
            let next = (p2, x.step(q, b));
            let id = *index.entry(next).or_insert_with(|| {
                states.push(next);
                states.len() - 1
            });
            delta.push(id);
        }
        i += 1;
    }
    let finals = states.iter().map(|&(_, q)| x.is_final(q)).collect();
    let names = (0..states.len()).map(|i| format!("t{i}")).collect();
    Ok(minimize(&Dfa::new(
        m.input().clone(),
        names,
        0,
        delta,
        finals,
    )?))
}

/// Writes a polynomial-growth language as a union of intersections of right
/// ideals, complemented right ideals and length languages.
pub fn polynomial_to_right_ideals(k: &Dfa) -> Result<(Formula, Vec<Leaf>)> {
    let mut leaves = Vec::new();
    let mut terms = Vec::new();
    for comp in linear_cycle_decomposition(k)? {
        for variant in normalize_cycle_lengths(&comp)? {
            let cert = lca_to_boolean_combination(&variant)?;
            let off = leaves.len();
            terms.push(shift(cert.formula(), off));
            leaves.extend(cert.leaves().iter().cloned());
        }
    }
    if leaves.is_empty() {
        leaves.push(Leaf::new(
            LeafTag::RightIdeal,
            &Dfa::trivial(k.alphabet().clone(), false),
        ));
        terms.push(Formula::leaf(0));
    }
    Ok((Formula::Union(terms), leaves))
}

fn shift(f: &Formula, off: usize) -> Formula {
    match f {
        Formula::Leaf(i) => Formula::Leaf(i + off),
        Formula::Union(fs) => Formula::Union(fs.iter().map(|g| shift(g, off)).collect()),
        Formula::Intersection(fs) => {
            Formula::Intersection(fs.iter().map(|g| shift(g, off)).collect())
        }
        Formula::Complement(g) => Formula::not(shift(g, off)),
    }
}

/// Boolean combination of left ideals and length languages for a language
/// in the logarithmic (or constant) class. The pipeline computes
/// `K = ψ_L(L)` over the class alphabet, decomposes `K^R` into right ideals
/// and length languages, and pulls every leaf back along the transducer.
pub fn log_class_decomposition(l: &Dfa) -> Result<DecompositionCertificate> {
    let m = minimize(l);
    if m.num_states() == 1 || is_length_language(&m) {
        return DecompositionCertificate::new(
            Formula::leaf(0),
            vec![Leaf::new(LeafTag::LengthLanguage, &m)],
            &m,
        );
    }
    if is_left_ideal(&m) {
        return DecompositionCertificate::new(
            Formula::leaf(0),
            vec![Leaf::new(LeafTag::LeftIdeal, &m)],
            &m,
        );
    }
    if classify_dfa(&m)?.class.fixed == FixedClass::Linear {
        return Err(Error::Precondition(
            "language is in the linear class".into(),
        ));
    }
    let k = psi_language_dfa(&m)?;
    let kr = reversal(&k)?;
    if growth_class(&kr).kind != GrowthKind::Polynomial {
        return Err(Error::Internal(
            "ψ-image of a logarithmic language has exponential growth".into(),
        ));
    }
    let (formula, leaves) = polynomial_to_right_ideals(&kr)?;
    let machine = psi_mealy(&m)?;
    // x ∈ L  ⇔  ψ(x) ∈ K  ⇔  τ(x^R) ∈ K^R
    let pulled = leaves
        .iter()
        .map(|leaf| {
            let tag = match leaf.tag {
                LeafTag::RightIdeal => LeafTag::LeftIdeal,
                LeafTag::LengthLanguage => LeafTag::LengthLanguage,
                other => return Err(Error::Internal(format!("unexpected leaf tag {other}"))),
            };
            Ok(Leaf::new(tag, &reversal(&preimage(&machine, &leaf.dfa)?)?))
        })
        .collect::<Result<Vec<_>>>()?;
    let (formula, pulled) = dedup_leaves(formula, pulled)?;
    DecompositionCertificate::new(formula, pulled, &m)
}

/// Merges leaves with equal languages and drops the duplicates.
fn dedup_leaves(formula: Formula, leaves: Vec<Leaf>) -> Result<(Formula, Vec<Leaf>)> {
    let mut kept: Vec<Leaf> = Vec::new();
    let mut map = Vec::with_capacity(leaves.len());
    for leaf in leaves {
        let found = kept
            .iter()
            .position(|k| k.tag == leaf.tag && k.dfa.isomorphic(&leaf.dfa));
        match found {
            Some(i) => map.push(i),
            None => {
                map.push(kept.len());
                kept.push(leaf);
            }
        }
    }
    Ok((remap(&formula, &map), kept))
}

fn remap(f: &Formula, map: &[usize]) -> Formula {
    match f {
        Formula::Leaf(i) => Formula::Leaf(map[*i]),
        Formula::Union(fs) => Formula::Union(fs.iter().map(|g| remap(g, map)).collect()),
        Formula::Intersection(fs) => {
            Formula::Intersection(fs.iter().map(|g| remap(g, map)).collect())
        }
        Formula::Complement(g) => Formula::not(remap(g, map)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::{combine, equivalent, Alphabet, BoolOp};

    fn agrees(cert: &DecompositionCertificate, l: &Dfa) -> bool {
        equivalent(&cert.evaluate().unwrap(), l).unwrap()
    }

    fn ab() -> Alphabet {
        Alphabet::chars("ab").unwrap()
    }

    fn contains_ab() -> Dfa {
        Dfa::from_transitions(
            ab(),
            vec!["0".into(), "1".into(), "2".into()],
            0,
            [
                (0, 0, 1),
                (0, 1, 0),
                (1, 0, 1),
                (1, 1, 2),
                (2, 0, 2),
                (2, 1, 2),
            ],
            [2],
        )
        .unwrap()
    }

    fn even_length() -> Dfa {
        Dfa::from_transitions(
            ab(),
            vec!["e".into(), "o".into()],
            0,
            [(0, 0, 1), (0, 1, 1), (1, 0, 0), (1, 1, 0)],
            [0],
        )
        .unwrap()
    }

    #[test]
    fn contains_ab_decomposes() {
        let cert = log_class_decomposition(&contains_ab()).unwrap();
        assert!(agrees(&cert, &contains_ab()));
        assert!(cert
            .leaves()
            .iter()
            .all(|l| matches!(l.tag, LeafTag::LeftIdeal | LeafTag::LengthLanguage)));
    }

    #[test]
    fn even_length_is_one_leaf() {
        let cert = log_class_decomposition(&even_length()).unwrap();
        assert_eq!(cert.leaves().len(), 1);
        assert_eq!(cert.leaves()[0].tag, LeafTag::LengthLanguage);
    }

    #[test]
    fn linear_input_is_rejected() {
        // aΣ*
        let d = Dfa::from_transitions(
            ab(),
            vec!["i".into(), "y".into()],
            0,
            [(0, 0, 1), (1, 0, 1), (1, 1, 1)],
            [1],
        )
        .unwrap();
        assert!(matches!(
            log_class_decomposition(&d),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn full_pipeline_on_non_shortcut_language() {
        // Σ*a ∪ even length: neither a left ideal nor a length language
        let ends_a = Dfa::from_transitions(
            ab(),
            vec!["n".into(), "y".into()],
            0,
            [(0, 0, 1), (0, 1, 0), (1, 0, 1), (1, 1, 0)],
            [1],
        )
        .unwrap();
        let l = combine(BoolOp::Union, &ends_a, Some(&even_length())).unwrap();
        let cert = log_class_decomposition(&l).unwrap();
        assert!(agrees(&cert, &l));
    }
}
