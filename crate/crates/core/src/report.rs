//! Serializable reports for the command-line front end, and replay checks for
//! the witnesses they carry. Words are written as arrays of alphabet tokens.

use serde::{Deserialize, Serialize};

use crate::automata::format::AutomatonJson;
use crate::automata::{Alphabet, Automaton, Dfa, Word};
use crate::classify::{
    Classification, ConstantWitness, CriticalTuple, FixedClass, NonWellBehavedWitness, Problem,
    VariableClass,
};
use crate::decompose::{CertificateJson, DecompositionCertificate, DecompositionKind};
use crate::error::{Error, Result};
use crate::exactspace::SpaceRow;
use crate::streaming::Model;

/// FNV-1a 64 of the raw input, as 16 hex digits.
pub fn digest(bytes: &[u8]) -> String {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for &b in bytes {
        h ^= u64::from(b);
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    format!("{h:016x}")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report<T> {
    pub command: String,
    pub args: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub input_digest: Option<String>,
    pub result: T,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u64>,
}

fn tokens(a: &Alphabet, w: &[usize]) -> Vec<String> {
    a.tokens_of(w)
}

fn word(a: &Alphabet, toks: &[String]) -> Result<Word> {
    toks.iter().map(|t| a.symbol(t)).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstantWitnessJson {
    pub x: Vec<String>,
    pub y: Vec<String>,
    pub z: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NonWellBehavedJson {
    pub u: Vec<String>,
    pub u0: Vec<String>,
    pub v0: Vec<String>,
    pub u1: Vec<String>,
    pub v1: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CriticalJson {
    pub u0: Vec<String>,
    pub u1: Vec<String>,
    pub w0: Vec<String>,
    pub w1: Vec<String>,
}

/// Witnesses against membership in the smaller classes. `not_constant` and
/// `critical` refer to the minimal DFA, `non_well_behaved` to the reversal
/// automaton.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessSet {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub not_constant: Option<ConstantWitnessJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub non_well_behaved: Option<NonWellBehavedJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub critical: Option<CriticalJson>,
}

impl WitnessSet {
    pub fn new(
        a: &Alphabet,
        not_constant: Option<&ConstantWitness>,
        non_well_behaved: Option<&NonWellBehavedWitness>,
        critical: Option<&CriticalTuple>,
    ) -> Self {
        WitnessSet {
            not_constant: not_constant.map(|w| ConstantWitnessJson {
                x: tokens(a, &w.x),
                y: tokens(a, &w.y),
                z: tokens(a, &w.z),
            }),
            non_well_behaved: non_well_behaved.map(|w| NonWellBehavedJson {
                u: tokens(a, &w.u),
                u0: tokens(a, &w.u0),
                v0: tokens(a, &w.v0),
                u1: tokens(a, &w.u1),
                v1: tokens(a, &w.v1),
            }),
            critical: critical.map(|t| CriticalJson {
                u0: tokens(a, &t.u0),
                u1: tokens(a, &t.u1),
                w0: tokens(a, &t.w0),
                w1: tokens(a, &t.w1),
            }),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.not_constant.is_none() && self.non_well_behaved.is_none() && self.critical.is_none()
    }

    /// Replays every witness present. `reversed` is required when a
    /// non-well-behaved witness is present.
    pub fn verify(&self, minimal: &Dfa, reversed: Option<&Dfa>) -> Result<()> {
        let a = minimal.alphabet();
        if let Some(w) = &self.not_constant {
            let (x, y, z) = (word(a, &w.x)?, word(a, &w.y)?, word(a, &w.z)?);
            verify_constant_witness(minimal, &ConstantWitness { x, y, z })?;
        }
        if let Some(w) = &self.non_well_behaved {
            let b = reversed.ok_or_else(|| Error::Invalid("missing reversal automaton".into()))?;
            let u = word(b.alphabet(), &w.u)?;
            let u0 = word(b.alphabet(), &w.u0)?;
            let u1 = word(b.alphabet(), &w.u1)?;
            let p = b.run(b.initial(), &u);
            let witness = NonWellBehavedWitness {
                p0: b.run(p, &u0),
                p1: b.run(p, &u1),
                p,
                u,
                u0,
                u1,
                v0: word(b.alphabet(), &w.v0)?,
                v1: word(b.alphabet(), &w.v1)?,
            };
            witness.verify(b)?;
        }
        if let Some(t) = &self.critical {
            let tuple = CriticalTuple {
                u0: word(a, &t.u0)?,
                u1: word(a, &t.u1)?,
                w0: word(a, &t.w0)?,
                w1: word(a, &t.w1)?,
            };
            tuple.verify(minimal)?;
        }
        Ok(())
    }
}

/// `|x| = |y|`, `|z| = |Q|` and `xz`, `yz` lead to different states of the
/// minimal DFA `m`.
pub fn verify_constant_witness(m: &Dfa, w: &ConstantWitness) -> Result<()> {
    if w.x.len() != w.y.len() || w.z.len() != m.num_states() {
        return Err(Error::Internal("constant witness has wrong lengths".into()));
    }
    let p = m.run(m.run(m.initial(), &w.x), &w.z);
    let q = m.run(m.run(m.initial(), &w.y), &w.z);
    if p == q {
        return Err(Error::Internal(
            "constant witness does not separate states".into(),
        ));
    }
    Ok(())
}

fn as_dfa(a: &AutomatonJson) -> Result<Dfa> {
    match a.build()? {
        Automaton::Dfa(d) => Ok(d),
        Automaton::Nfa(_) => Err(Error::Invalid("expected a DFA".into())),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassifyResult {
    pub fixed: FixedClass,
    pub variable: VariableClass,
    pub minimal_states: usize,
    pub minimal: AutomatonJson,
    pub reversed: AutomatonJson,
    pub witnesses: WitnessSet,
}

impl ClassifyResult {
    pub fn new(c: &Classification) -> Self {
        ClassifyResult {
            fixed: c.class.fixed,
            variable: c.class.variable,
            minimal_states: c.minimal.num_states(),
            minimal: AutomatonJson::from_dfa(&c.minimal),
            reversed: AutomatonJson::from_dfa(&c.reversed),
            witnesses: WitnessSet::new(
                c.minimal.alphabet(),
                c.not_constant.as_ref(),
                c.non_well_behaved.as_ref(),
                c.critical.as_ref(),
            ),
        }
    }

    pub fn verify(&self) -> Result<()> {
        self.witnesses
            .verify(&as_dfa(&self.minimal)?, Some(&as_dfa(&self.reversed)?))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecideResult {
    pub problem: Problem,
    pub answer: bool,
    /// Minimal DFA of the input language.
    pub minimal: AutomatonJson,
    /// Automaton the non-well-behaved witness runs in, when present.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness_automaton: Option<AutomatonJson>,
    pub witnesses: WitnessSet,
}

impl DecideResult {
    pub fn verify(&self) -> Result<()> {
        if self.answer != self.witnesses.is_empty() {
            return Err(Error::Internal("answer and witnesses disagree".into()));
        }
        let reversed = self.witness_automaton.as_ref().map(as_dfa).transpose()?;
        self.witnesses
            .verify(&as_dfa(&self.minimal)?, reversed.as_ref())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MeasureResult {
    pub rows: Vec<SpaceRow>,
}

impl MeasureResult {
    pub fn to_csv(&self) -> String {
        let cell = |v: Option<usize>| v.map(|x| x.to_string()).unwrap_or_default();
        let mut out = String::from("n,F,V,psi_count\n");
        for r in &self.rows {
            out.push_str(&format!(
                "{},{},{},{}\n",
                r.n,
                cell(r.f_bits),
                cell(r.v_bits),
                cell(r.psi_count)
            ));
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceStep {
    pub token: String,
    pub accept: bool,
    pub bits: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimulateResult {
    pub algo: String,
    pub model: Model,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub window: Option<usize>,
    pub trace: Vec<TraceStep>,
    pub final_window: Vec<String>,
    pub accept: bool,
    pub peak_bits: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mismatches: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecomposeResult {
    pub kind: DecompositionKind,
    pub leaves: usize,
    pub certificate: CertificateJson,
}

impl DecomposeResult {
    pub fn verify(&self) -> Result<()> {
        DecompositionCertificate::from_json(&self.certificate).map(|_| ())
    }
}

/// Re-verifies a certificate file or a report carrying witnesses or a
/// certificate; returns a short description of what was checked.
pub fn verify_document(src: &str) -> Result<String> {
    let value: serde_json::Value = serde_json::from_str(src).map_err(|e| Error::Parse {
        line: e.line(),
        message: e.to_string(),
    })?;
    let decode = |v: serde_json::Value| -> Result<Report<serde_json::Value>> {
        serde_json::from_value(v).map_err(|e| Error::Invalid(e.to_string()))
    };
    fn field<T: serde::de::DeserializeOwned>(v: serde_json::Value) -> Result<T> {
        serde_json::from_value(v).map_err(|e| Error::Invalid(e.to_string()))
    }
    if value.get("formula").is_some() {
        DecompositionCertificate::from_json(&field::<CertificateJson>(value)?)?;
        return Ok("certificate".into());
    }
    let report = decode(value)?;
    match report.command.as_str() {
        "classify" => field::<ClassifyResult>(report.result)?.verify()?,
        "decide" => field::<DecideResult>(report.result)?.verify()?,
        "decompose" => field::<DecomposeResult>(report.result)?.verify()?,
        other => {
            return Err(Error::Invalid(format!(
                "`{other}` reports carry nothing to verify"
            )))
        }
    }
    Ok(format!("{} report", report.command))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::classify_dfa;

    fn starts_with_a() -> Dfa {
        Dfa::from_transitions(
            Alphabet::chars("ab").unwrap(),
            vec!["i".into(), "y".into(), "n".into()],
            0,
            [
                (0, 0, 1),
                (0, 1, 2),
                (1, 0, 1),
                (1, 1, 1),
                (2, 0, 2),
                (2, 1, 2),
            ],
            [1],
        )
        .unwrap()
    }

    #[test]
    fn digest_is_stable() {
        assert_eq!(digest(b""), "cbf29ce484222325");
        assert_eq!(digest(b"a"), "af63dc4c8601ec8c");
    }

    #[test]
    fn classify_report_round_trips() {
        let c = classify_dfa(&starts_with_a()).unwrap();
        let r = Report {
            command: "classify".into(),
            args: vec![],
            input_digest: None,
            result: ClassifyResult::new(&c),
            notes: vec![],
            timing_ms: None,
        };
        assert!(!r.result.witnesses.is_empty());
        let json = serde_json::to_string(&r).unwrap();
        assert_eq!(verify_document(&json).unwrap(), "classify report");
    }

    #[test]
    fn tampered_witness_fails() {
        let c = classify_dfa(&starts_with_a()).unwrap();
        let mut res = ClassifyResult::new(&c);
        let w = res.witnesses.not_constant.as_mut().unwrap();
        w.y = w.x.clone();
        assert!(res.verify().is_err());
    }
}
