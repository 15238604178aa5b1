//! Growth analysis and constructive decompositions into Boolean
//! combinations of left ideals, right ideals, length languages, finite and
//! suffix-testable languages, each emitted as a self-checking certificate.

pub mod alternation;
pub mod certificate;
pub mod constant;
pub mod growth;
pub mod lang;
pub mod lca;
pub mod log_class;

pub use alternation::{alternation_decomposition, alternation_ideal};
pub use certificate::{CertificateJson, DecompositionCertificate, Leaf, LeafJson, LeafTag};
pub use constant::{constant_decomposition, constant_k};
pub use growth::{
    count_paths, growth_class, growth_count, GrowthClass, GrowthKind, TwoCycleWitness,
};
pub use lca::{
    lca_to_boolean_combination, linear_cycle_decomposition, normalize_cycle_lengths, CycleInfo,
    LinearCycleAutomaton, NORMALIZATION_BUDGET, PATH_DESCRIPTION_BUDGET,
};
pub use log_class::{log_class_decomposition, polynomial_to_right_ideals, preimage};

use serde::{Deserialize, Serialize};

/// Which decomposition to run.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DecompositionKind {
    Log,
    Constant,
    Alternation,
}

impl std::str::FromStr for DecompositionKind {
    type Err = crate::Error;

    fn from_str(s: &str) -> crate::Result<Self> {
        match s {
            "log" => Ok(DecompositionKind::Log),
            "constant" => Ok(DecompositionKind::Constant),
            "alternation" => Ok(DecompositionKind::Alternation),
            other => Err(crate::Error::Invalid(format!(
                "unknown decomposition kind `{other}`"
            ))),
        }
    }
}

pub fn decompose(
    l: &crate::automata::Dfa,
    kind: DecompositionKind,
) -> crate::Result<DecompositionCertificate> {
    match kind {
        DecompositionKind::Log => log_class_decomposition(l),
        DecompositionKind::Constant => constant_decomposition(l),
        DecompositionKind::Alternation => alternation_decomposition(l),
    }
}
