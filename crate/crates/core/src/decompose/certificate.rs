use serde::{Deserialize, Serialize};

use crate::automata::format::AutomatonJson;
use crate::automata::{
    equivalent, minimize, separating_word, Automaton, Dfa, Formula, StateDistance,
};
use crate::classify::{
    is_finite_language, is_left_ideal, is_length_language, is_right_ideal, suffix_testable_k,
};
use crate::error::{Error, Result};

/// Structural property claimed for a certificate leaf.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum LeafTag {
    LeftIdeal,
    RightIdeal,
    LengthLanguage,
    SuffixTestable(usize),
    Finite,
}

impl LeafTag {
    pub fn holds(self, d: &Dfa) -> bool {
        match self {
            LeafTag::LeftIdeal => is_left_ideal(d),
            LeafTag::RightIdeal => is_right_ideal(d),
            LeafTag::LengthLanguage => is_length_language(d),
            LeafTag::SuffixTestable(k) => suffix_testable_k(d) <= StateDistance::Finite(k),
            LeafTag::Finite => is_finite_language(d),
        }
    }
}

impl std::fmt::Display for LeafTag {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            LeafTag::LeftIdeal => f.write_str("left-ideal"),
            LeafTag::RightIdeal => f.write_str("right-ideal"),
            LeafTag::LengthLanguage => f.write_str("length-language"),
            LeafTag::SuffixTestable(k) => write!(f, "suffix-testable({k})"),
            LeafTag::Finite => f.write_str("finite"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Leaf {
    pub tag: LeafTag,
    pub dfa: Dfa,
}

impl Leaf {
    pub fn new(tag: LeafTag, dfa: &Dfa) -> Leaf {
        Leaf {
            tag,
            dfa: minimize(dfa),
        }
    }
}

/// A Boolean formula over tagged leaf automata, checked on construction to
/// denote the target language.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecompositionCertificate {
    formula: Formula,
    leaves: Vec<Leaf>,
    target: Dfa,
}

impl DecompositionCertificate {
    pub fn new(formula: Formula, leaves: Vec<Leaf>, target: &Dfa) -> Result<Self> {
        let cert = DecompositionCertificate {
            formula,
            leaves,
            target: minimize(target),
        };
        cert.verify()?;
        Ok(cert)
    }

    pub fn formula(&self) -> &Formula {
        &self.formula
    }

    pub fn leaves(&self) -> &[Leaf] {
        &self.leaves
    }

    pub fn target(&self) -> &Dfa {
        &self.target
    }

    /// Minimal DFA of the language the formula denotes.
    pub fn evaluate(&self) -> Result<Dfa> {
        let dfas: Vec<Dfa> = self.leaves.iter().map(|l| l.dfa.clone()).collect();
        Ok(minimize(&self.formula.to_dfa(&dfas)?))
    }

    /// Re-checks every leaf tag and the equivalence with the target.
    pub fn verify(&self) -> Result<()> {
        if self.leaves.is_empty() {
            return Err(Error::Internal("certificate without leaves".into()));
        }
        if self
            .formula
            .max_leaf()
            .is_some_and(|i| i >= self.leaves.len())
        {
            return Err(Error::Internal("formula refers to a missing leaf".into()));
        }
        for (i, leaf) in self.leaves.iter().enumerate() {
            self.target.alphabet().check_same(leaf.dfa.alphabet())?;
            if !leaf.tag.holds(&leaf.dfa) {
                return Err(Error::Internal(format!("leaf {i} is not {}", leaf.tag)));
            }
        }
        let eval = self.evaluate()?;
        if !equivalent(&eval, &self.target)? {
            let w = separating_word(&eval, &self.target)?.unwrap_or_default();
            return Err(Error::Internal(format!(
                "certificate differs from target on `{}`",
                self.target.alphabet().render(&w)
            )));
        }
        Ok(())
    }

    pub fn to_json(&self) -> CertificateJson {
        CertificateJson {
            formula: self.formula.clone(),
            leaves: self
                .leaves
                .iter()
                .map(|l| LeafJson {
                    tag: l.tag,
                    automaton: AutomatonJson::from_dfa(&l.dfa),
                })
                .collect(),
            target: AutomatonJson::from_dfa(&self.target),
        }
    }

    /// Rebuilds and re-verifies a serialized certificate.
    pub fn from_json(j: &CertificateJson) -> Result<Self> {
        let as_dfa = |a: &AutomatonJson| -> Result<Dfa> {
            match a.build()? {
                Automaton::Dfa(d) => Ok(d),
                Automaton::Nfa(_) => {
                    Err(Error::Invalid("certificate automata must be DFAs".into()))
                }
            }
        };
        let leaves = j
            .leaves
            .iter()
            .map(|l| {
                Ok(Leaf {
                    tag: l.tag,
                    dfa: as_dfa(&l.automaton)?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let cert = DecompositionCertificate {
            formula: j.formula.clone(),
            leaves,
            target: as_dfa(&j.target)?,
        };
        cert.verify()?;
        Ok(cert)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LeafJson {
    pub tag: LeafTag,
    #[serde(flatten)]
    pub automaton: AutomatonJson,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateJson {
    pub formula: Formula,
    pub leaves: Vec<LeafJson>,
    pub target: AutomatonJson,
}
