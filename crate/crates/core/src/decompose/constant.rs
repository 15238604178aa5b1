use std::collections::BTreeMap;

use crate::automata::{combine, minimize, BoolOp, Dfa, Formula, Word};
use crate::classify::{is_constant_fixed, is_length_language};
use crate::error::{Error, Result};
use crate::exactspace::psi::ENUMERATION_BUDGET;

use super::certificate::{DecompositionCertificate, Leaf, LeafTag};
use super::lang::{at_most_length, ends_with_any, pad_right};

/// Right quotients `Lz⁻¹` for all `z ∈ Σ^k`, grouped by quotient: each
/// entry maps the finality vector `q ↦ [δ(q, z) ∈ F]` to its suffixes.
fn quotients(m: &Dfa, k: usize) -> Result<BTreeMap<Vec<bool>, Vec<Word>>> {
    let total = m
        .alphabet()
        .len()
        .checked_pow(k as u32)
        .unwrap_or(usize::MAX);
    if total > ENUMERATION_BUDGET {
        return Err(Error::Budget {
            what: "suffixes of length k",
            limit: ENUMERATION_BUDGET,
        });
    }
    let mut out: BTreeMap<Vec<bool>, Vec<Word>> = BTreeMap::new();
    for z in m.alphabet().words_of_length(k) {
        let finals = m.states().map(|q| m.is_final(m.run(q, &z))).collect();
        out.entry(finals).or_default().push(z);
    }
    Ok(out)
}

/// Least `k ≤ |Q|` such that every right quotient by a word of length `k`
/// is a length language.
pub fn constant_k(l: &Dfa) -> Result<Option<usize>> {
    let m = minimize(l);
    for k in 0..=m.num_states() {
        if quotients(&m, k)?
            .keys()
            .all(|f| is_length_language(&m.with_finals(f.clone())))
        {
            return Ok(Some(k));
        }
    }
    Ok(None)
}

/// `L = (L ∩ Σ^{≤k−1}) ∪ ⋃_z ((Lz⁻¹)Σ^k ∩ Σ*z)` for the least suitable `k`,
/// with the suffixes `z` sharing a quotient merged into one leaf `Σ*Z`.
pub fn constant_decomposition(l: &Dfa) -> Result<DecompositionCertificate> {
    let m = minimize(l);
    if !is_constant_fixed(&m) {
        return Err(Error::Precondition(
            "language is not in the constant fixed-size class".into(),
        ));
    }
    let k = constant_k(&m)?.ok_or_else(|| {
        Error::Internal("no suffix length makes all quotients length languages".into())
    })?;
    if k == 0 {
        return DecompositionCertificate::new(
            Formula::leaf(0),
            vec![Leaf::new(LeafTag::LengthLanguage, &m)],
            &m,
        );
    }
    let alphabet = m.alphabet().clone();
    let short = combine(
        BoolOp::Intersection,
        &m,
        Some(&at_most_length(&alphabet, k - 1)),
    )?;
    let mut leaves = vec![Leaf::new(LeafTag::Finite, &short)];
    let mut terms = vec![Formula::leaf(0)];
    for (finals, zs) in quotients(&m, k)? {
        let quotient = m.with_finals(finals);
        if quotient.is_empty_language() {
            continue;
        }
        let i = leaves.len();
        leaves.push(Leaf::new(
            LeafTag::LengthLanguage,
            &pad_right(&quotient, k)?,
        ));
        leaves.push(Leaf::new(
            LeafTag::SuffixTestable(k),
            &ends_with_any(&alphabet, &zs)?,
        ));
        terms.push(Formula::Intersection(vec![
            Formula::leaf(i),
            Formula::leaf(i + 1),
        ]));
    }
    DecompositionCertificate::new(Formula::Union(terms), leaves, &m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::Alphabet;

    fn ab() -> Alphabet {
        Alphabet::chars("ab").unwrap()
    }

    #[test]
    fn ends_with_a() {
        let d = Dfa::from_transitions(
            ab(),
            vec!["n".into(), "y".into()],
            0,
            [(0, 0, 1), (0, 1, 0), (1, 0, 1), (1, 1, 0)],
            [1],
        )
        .unwrap();
        assert_eq!(constant_k(&d).unwrap(), Some(1));
        let cert = constant_decomposition(&d).unwrap();
        // finite part, and one nonempty quotient (Σ*) for z = a
        assert_eq!(cert.leaves().len(), 3);
    }

    #[test]
    fn even_length_is_degenerate() {
        let d = Dfa::from_transitions(
            ab(),
            vec!["e".into(), "o".into()],
            0,
            [(0, 0, 1), (0, 1, 1), (1, 0, 0), (1, 1, 0)],
            [0],
        )
        .unwrap();
        let cert = constant_decomposition(&d).unwrap();
        assert_eq!(cert.leaves().len(), 1);
        assert_eq!(cert.leaves()[0].tag, LeafTag::LengthLanguage);
    }

    #[test]
    fn non_constant_is_rejected() {
        let d = Dfa::from_transitions(
            ab(),
            vec!["i".into(), "y".into()],
            0,
            [(0, 0, 1), (1, 0, 1), (1, 1, 1)],
            [1],
        )
        .unwrap();
        assert!(matches!(
            constant_decomposition(&d),
            Err(Error::Precondition(_))
        ));
    }
}
