//! The space trichotomy with witnesses, constant-space and well-behavedness
//! tests, critical tuples, alternations, path summaries and the four
//! decision problems.

pub mod alternation;
pub mod critical;
pub mod predicates;
pub mod summary;
pub mod well_behaved;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

pub use alternation::{alt_count, max_alternations, AlternationReport};
pub use critical::{
    critical_from_witness, find_critical_tuple, normalize_critical, q_set, CriticalTuple,
    TransitionMonoid,
};
pub use predicates::{
    constant_fixed_witness, is_constant_fixed, is_finite_language, is_left_ideal,
    is_length_language, is_right_ideal, max_word_length, suffix_testable_k, synchronized_pairs,
    ConstantWitness,
};
pub use summary::{distinguishing_set, path_summary, summary_final, PathSummary};
pub use well_behaved::{is_well_behaved, linear_witness_streams, NonWellBehavedWitness};

use crate::automata::{
    determinize_with, minimize, reverse_determinize_with, Dfa, Nfa, DEFAULT_STATE_BUDGET,
};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FixedClass {
    Constant,
    Logarithmic,
    Linear,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VariableClass {
    TrivialConstant,
    Logarithmic,
    Linear,
}

/// Space class in both window models.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SpaceClass {
    pub fixed: FixedClass,
    pub variable: VariableClass,
}

impl SpaceClass {
    /// The consistency conditions between the two models.
    pub fn is_consistent(&self) -> bool {
        let const_ok = self.fixed != FixedClass::Constant || self.variable != VariableClass::Linear;
        let linear_ok =
            (self.fixed == FixedClass::Linear) == (self.variable == VariableClass::Linear);
        let trivial_ok =
            self.variable != VariableClass::TrivialConstant || self.fixed == FixedClass::Constant;
        const_ok && linear_ok && trivial_ok
    }
}

impl fmt::Display for FixedClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FixedClass::Constant => "constant",
            FixedClass::Logarithmic => "logarithmic",
            FixedClass::Linear => "linear",
        })
    }
}

impl fmt::Display for VariableClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            VariableClass::TrivialConstant => "trivial-constant",
            VariableClass::Logarithmic => "logarithmic",
            VariableClass::Linear => "linear",
        })
    }
}

/// Classification together with the evidence behind it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Classification {
    pub class: SpaceClass,
    /// The minimal DFA of the language.
    pub minimal: Dfa,
    /// `A^RD` of the minimal DFA; recognizes the reversal.
    pub reversed: Dfa,
    pub non_well_behaved: Option<NonWellBehavedWitness>,
    pub critical: Option<CriticalTuple>,
    pub not_constant: Option<ConstantWitness>,
}

pub fn classify_dfa(a: &Dfa) -> Result<Classification> {
    classify_dfa_with(a, DEFAULT_STATE_BUDGET)
}

pub fn classify_dfa_with(a: &Dfa, budget: usize) -> Result<Classification> {
    let minimal = minimize(a);
    let reversed = reverse_determinize_with(&minimal.to_nfa(), budget)?;
    if minimal.num_states() == 1 {
        return Ok(Classification {
            class: SpaceClass {
                fixed: FixedClass::Constant,
                variable: VariableClass::TrivialConstant,
            },
            minimal,
            reversed,
            non_well_behaved: None,
            critical: None,
            not_constant: None,
        });
    }
    let (wb, witness) = is_well_behaved(&reversed);
    let not_constant = constant_fixed_witness(&minimal);
    if !wb && not_constant.is_none() {
        return Err(Error::Internal(
            "constant fixed-size class but reversal not well-behaved".into(),
        ));
    }
    let critical = witness
        .as_ref()
        .map(|w| critical_from_witness(&minimal, w))
        .transpose()?;
    let class = if !wb {
        SpaceClass {
            fixed: FixedClass::Linear,
            variable: VariableClass::Linear,
        }
    } else if not_constant.is_none() {
        SpaceClass {
            fixed: FixedClass::Constant,
            variable: VariableClass::Logarithmic,
        }
    } else {
        SpaceClass {
            fixed: FixedClass::Logarithmic,
            variable: VariableClass::Logarithmic,
        }
    };
    Ok(Classification {
        class,
        minimal,
        reversed,
        non_well_behaved: witness,
        critical,
        not_constant,
    })
}

/// Classifies via determinization, and cross-checks the logarithmic/linear
/// split against `A^RD` of the NFA itself.
pub fn classify_nfa(a: &Nfa) -> Result<Classification> {
    classify_nfa_with(a, DEFAULT_STATE_BUDGET)
}

pub fn classify_nfa_with(a: &Nfa, budget: usize) -> Result<Classification> {
    let d = determinize_with(a, budget)?;
    let c = classify_dfa_with(&d, budget)?;
    if c.class.variable != VariableClass::TrivialConstant {
        let direct = is_well_behaved(&reverse_determinize_with(a, budget)?).0;
        if direct != (c.class.variable == VariableClass::Logarithmic) {
            return Err(Error::Internal(
                "NFA reversal and DFA reversal disagree on well-behavedness".into(),
            ));
        }
    }
    Ok(c)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Problem {
    Dfa1,
    Dfalog,
    Nfa1,
    Nfalog,
}

impl FromStr for Problem {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "dfa1" => Ok(Problem::Dfa1),
            "dfalog" => Ok(Problem::Dfalog),
            "nfa1" => Ok(Problem::Nfa1),
            "nfalog" => Ok(Problem::Nfalog),
            other => Err(Error::Invalid(format!("unknown problem `{other}`"))),
        }
    }
}

/// Answer to a decision problem with evidence for negative answers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decision {
    pub answer: bool,
    pub not_constant: Option<ConstantWitness>,
    pub non_well_behaved: Option<NonWellBehavedWitness>,
    pub critical: Option<CriticalTuple>,
    /// The automaton the witness words refer to.
    pub witness_automaton: Option<Dfa>,
}

/// `dfa1`/`nfa1`: constant fixed-size space; `dfalog`/`nfalog`: at most
/// logarithmic space. DFA problems require deterministic input.
pub fn decide(problem: Problem, a: &Nfa, budget: usize) -> Result<Decision> {
    let d = match problem {
        Problem::Dfa1 | Problem::Dfalog => {
            if !a.is_deterministic() {
                return Err(Error::Precondition(format!("{problem:?} expects a DFA")));
            }
            determinize_with(a, budget)?
        }
        Problem::Nfa1 | Problem::Nfalog => determinize_with(a, budget)?,
    };
    let minimal = minimize(&d);
    match problem {
        Problem::Dfa1 | Problem::Nfa1 => {
            let w = constant_fixed_witness(&minimal);
            Ok(Decision {
                answer: w.is_none(),
                witness_automaton: w.as_ref().map(|_| minimal.clone()),
                not_constant: w,
                non_well_behaved: None,
                critical: None,
            })
        }
        Problem::Dfalog | Problem::Nfalog => {
            let rd = reverse_determinize_with(a, budget)?;
            let (wb, witness) = is_well_behaved(&rd);
            let critical = witness
                .as_ref()
                .map(|w| critical_from_witness(&minimal, w))
                .transpose()?;
            Ok(Decision {
                answer: wb,
                witness_automaton: witness.as_ref().map(|_| rd.clone()),
                non_well_behaved: witness,
                critical,
                not_constant: None,
            })
        }
    }
}
