//! Text and JSON serialization of automata.
//!
//! ```text
//! type: dfa
//! alphabet: a b
//! states: q0 q1
//! initial: q0
//! final: q1
//! q0 a -> q1
//! ```

use std::collections::HashMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::alphabet::Alphabet;
use super::dfa::Dfa;
use super::nfa::Nfa;
use super::StateId;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AutomatonKind {
    Dfa,
    Nfa,
}

/// Either kind of automaton as read from a file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Automaton {
    Dfa(Dfa),
    Nfa(Nfa),
}

impl Automaton {
    pub fn alphabet(&self) -> &Alphabet {
        match self {
            Automaton::Dfa(d) => d.alphabet(),
            Automaton::Nfa(n) => n.alphabet(),
        }
    }

    pub fn to_nfa(&self) -> Nfa {
        match self {
            Automaton::Dfa(d) => d.to_nfa(),
            Automaton::Nfa(n) => n.clone(),
        }
    }

    pub fn to_json(&self) -> AutomatonJson {
        match self {
            Automaton::Dfa(d) => AutomatonJson::from_dfa(d),
            Automaton::Nfa(n) => AutomatonJson::from_nfa(n),
        }
    }

    pub fn to_text(&self) -> String {
        self.to_json().to_text()
    }
}

/// Field-for-field mirror of the text format.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AutomatonJson {
    #[serde(rename = "type")]
    pub kind: AutomatonKind,
    pub alphabet: Vec<String>,
    pub states: Vec<String>,
    pub initial: Vec<String>,
    #[serde(rename = "final")]
    pub finals: Vec<String>,
    pub transitions: Vec<(String, String, String)>,
}

impl AutomatonJson {
    pub fn from_dfa(d: &Dfa) -> Self {
        AutomatonJson {
            kind: AutomatonKind::Dfa,
            alphabet: d.alphabet().symbols().to_vec(),
            states: d.names().to_vec(),
            initial: vec![d.name(d.initial()).to_string()],
            finals: d
                .states()
                .filter(|&q| d.is_final(q))
                .map(|q| d.name(q).to_string())
                .collect(),
            transitions: d
                .transitions()
                .map(|(p, s, q)| {
                    (
                        d.name(p).to_string(),
                        d.alphabet().token(s).to_string(),
                        d.name(q).to_string(),
                    )
                })
                .collect(),
        }
    }

    pub fn from_nfa(n: &Nfa) -> Self {
        AutomatonJson {
            kind: AutomatonKind::Nfa,
            alphabet: n.alphabet().symbols().to_vec(),
            states: n.names().to_vec(),
            initial: n.initial().iter().map(|&q| n.name(q).to_string()).collect(),
            finals: n.finals().map(|q| n.name(q).to_string()).collect(),
            transitions: n
                .transitions()
                .map(|(p, s, q)| {
                    (
                        n.name(p).to_string(),
                        n.alphabet().token(s).to_string(),
                        n.name(q).to_string(),
                    )
                })
                .collect(),
        }
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let kind = match self.kind {
            AutomatonKind::Dfa => "dfa",
            AutomatonKind::Nfa => "nfa",
        };
        let _ = writeln!(out, "type: {kind}");
        let _ = writeln!(out, "alphabet: {}", self.alphabet.join(" "));
        let _ = writeln!(out, "states: {}", self.states.join(" "));
        let _ = writeln!(out, "initial: {}", self.initial.join(" "));
        let _ = writeln!(out, "final: {}", self.finals.join(" "));
        for (p, s, q) in &self.transitions {
            let _ = writeln!(out, "{p} {s} -> {q}");
        }
        out
    }

    pub fn build(&self) -> Result<Automaton> {
        build(self, &|_| 0)
    }
}

struct Lines {
    kind: Option<(AutomatonKind, usize)>,
    alphabet: Option<(Vec<String>, usize)>,
    states: Option<(Vec<String>, usize)>,
    initial: Option<(Vec<String>, usize)>,
    finals: Option<(Vec<String>, usize)>,
    transitions: Vec<((String, String, String), usize)>,
}

/// Parses the line-oriented text format. Errors carry 1-based line numbers.
pub fn parse_text(src: &str) -> Result<Automaton> {
    let mut l = Lines {
        kind: None,
        alphabet: None,
        states: None,
        initial: None,
        finals: None,
        transitions: Vec::new(),
    };
    for (i, raw) in src.lines().enumerate() {
        let line_no = i + 1;
        let line = match raw.find('#') {
            Some(pos) => &raw[..pos],
            None => raw,
        }
        .trim();
        if line.is_empty() {
            continue;
        }
        let err = |message: String| Error::Parse {
            line: line_no,
            message,
        };
        if let Some((lhs, rhs)) = line.split_once("->") {
            let left: Vec<&str> = lhs.split_whitespace().collect();
            let right: Vec<&str> = rhs.split_whitespace().collect();
            if left.len() != 2 || right.len() != 1 {
                return Err(err("expected `<state> <symbol> -> <state>`".into()));
            }
            l.transitions
                .push(((left[0].into(), left[1].into(), right[0].into()), line_no));
            continue;
        }
        let (key, value) = line
            .split_once(':')
            .ok_or_else(|| err(format!("unrecognized line `{line}`")))?;
        let items: Vec<String> = value.split_whitespace().map(str::to_string).collect();
        let slot = match key.trim() {
            "type" => {
                if l.kind.is_some() {
                    return Err(err("duplicate `type`".into()));
                }
                let kind = match items.as_slice() {
                    [t] if t == "dfa" => AutomatonKind::Dfa,
                    [t] if t == "nfa" => AutomatonKind::Nfa,
                    _ => return Err(err("type must be `dfa` or `nfa`".into())),
                };
                l.kind = Some((kind, line_no));
                continue;
            }
            "alphabet" => &mut l.alphabet,
            "states" => &mut l.states,
            "initial" => &mut l.initial,
            "final" => &mut l.finals,
            other => return Err(err(format!("unknown key `{other}`"))),
        };
        if slot.is_some() {
            return Err(err(format!("duplicate `{}`", key.trim())));
        }
        *slot = Some((items, line_no));
    }

    let missing = |what: &str| Error::Parse {
        line: src.lines().count().max(1),
        message: format!("missing `{what}`"),
    };
    let (kind, _) = l.kind.ok_or_else(|| missing("type"))?;
    let (alphabet, _) = l.alphabet.ok_or_else(|| missing("alphabet"))?;
    let (states, _) = l.states.ok_or_else(|| missing("states"))?;
    let (initial, init_line) = l.initial.ok_or_else(|| missing("initial"))?;
    let (finals, final_line) = l.finals.unwrap_or((Vec::new(), 0));
    let mut lines_of: HashMap<usize, usize> = HashMap::new();
    lines_of.insert(INITIAL_SLOT, init_line);
    lines_of.insert(FINAL_SLOT, final_line);
    let tlines: Vec<usize> = l.transitions.iter().map(|(_, n)| *n).collect();
    for (i, n) in tlines.iter().enumerate() {
        lines_of.insert(i, *n);
    }
    let json = AutomatonJson {
        kind,
        alphabet,
        states,
        initial,
        finals,
        transitions: l.transitions.into_iter().map(|(t, _)| t).collect(),
    };
    build(&json, &|slot| lines_of.get(&slot).copied().unwrap_or(0))
}

pub fn parse_json(src: &str) -> Result<Automaton> {
    let json: AutomatonJson = serde_json::from_str(src).map_err(|e| Error::Parse {
        line: e.line(),
        message: e.to_string(),
    })?;
    json.build()
}

/// Accepts either format, choosing JSON when the first non-blank character is `{`.
pub fn parse_any(src: &str) -> Result<Automaton> {
    if src.trim_start().starts_with('{') {
        parse_json(src)
    } else {
        parse_text(src)
    }
}

pub fn parse_dfa(src: &str) -> Result<Dfa> {
    match parse_any(src)? {
        Automaton::Dfa(d) => Ok(d),
        Automaton::Nfa(_) => Err(Error::Invalid("expected a DFA, found an NFA".into())),
    }
}

const INITIAL_SLOT: usize = usize::MAX - 1;
const FINAL_SLOT: usize = usize::MAX - 2;

fn build(j: &AutomatonJson, line_of: &dyn Fn(usize) -> usize) -> Result<Automaton> {
    let alphabet = Alphabet::new(j.alphabet.iter().cloned())?;
    let mut index: HashMap<&str, StateId> = HashMap::new();
    for (i, name) in j.states.iter().enumerate() {
        if index.insert(name.as_str(), i).is_some() {
            return Err(Error::Invalid(format!("duplicate state `{name}`")));
        }
    }
    let state = |name: &str, slot: usize| {
        index.get(name).copied().ok_or_else(|| Error::Parse {
            line: line_of(slot),
            message: format!("undeclared state `{name}`"),
        })
    };
    let initial = j
        .initial
        .iter()
        .map(|n| state(n, INITIAL_SLOT))
        .collect::<Result<Vec<_>>>()?;
    let finals = j
        .finals
        .iter()
        .map(|n| state(n, FINAL_SLOT))
        .collect::<Result<Vec<_>>>()?;
    let mut trans = Vec::with_capacity(j.transitions.len());
    for (i, (p, s, q)) in j.transitions.iter().enumerate() {
        let sym = alphabet.lookup(s).ok_or_else(|| Error::Parse {
            line: line_of(i),
            message: format!("unknown symbol `{s}`"),
        })?;
        trans.push((state(p, i)?, sym, state(q, i)?));
    }
    match j.kind {
        AutomatonKind::Dfa => {
            if initial.len() != 1 {
                return Err(Error::Parse {
                    line: line_of(INITIAL_SLOT),
                    message: "a DFA needs exactly one initial state".into(),
                });
            }
            let mut seen: HashMap<(StateId, usize), StateId> = HashMap::new();
            for (i, &(p, s, q)) in trans.iter().enumerate() {
                if let Some(&old) = seen.get(&(p, s)) {
                    if old != q {
                        return Err(Error::Parse {
                            line: line_of(i),
                            message: format!(
                                "state `{}` has two transitions on `{}`",
                                j.states[p], j.transitions[i].1
                            ),
                        });
                    }
                }
                seen.insert((p, s), q);
            }
            Ok(Automaton::Dfa(Dfa::from_transitions(
                alphabet,
                j.states.clone(),
                initial[0],
                trans,
                finals,
            )?))
        }
        AutomatonKind::Nfa => Ok(Automaton::Nfa(Nfa::new(
            alphabet,
            j.states.clone(),
            initial,
            trans,
            finals,
        )?)),
    }
}

pub fn dfa_to_text(d: &Dfa) -> String {
    AutomatonJson::from_dfa(d).to_text()
}

pub fn nfa_to_text(n: &Nfa) -> String {
    AutomatonJson::from_nfa(n).to_text()
}

#[cfg(test)]
mod tests {
    use super::*;

    const EVEN: &str = "# even length\ntype: dfa\nalphabet: a b\nstates: e o\ninitial: e\nfinal: e\ne a -> o\ne b -> o\no a -> e\no b -> e\n";

    #[test]
    fn text_round_trip() {
        let a = parse_text(EVEN).unwrap();
        let text = a.to_text();
        assert_eq!(parse_text(&text).unwrap(), a);
        let json = serde_json::to_string(&a.to_json()).unwrap();
        assert_eq!(parse_json(&json).unwrap(), a);
    }

    #[test]
    fn partial_dfa_gets_sink() {
        let src = "type: dfa\nalphabet: a b\nstates: p\ninitial: p\nfinal: p\np a -> p\n";
        let Automaton::Dfa(d) = parse_text(src).unwrap() else {
            panic!()
        };
        assert_eq!(d.num_states(), 2);
        assert_eq!(d.name(1), "sink");
    }

    #[test]
    fn errors_name_lines() {
        let src = "type: dfa\nalphabet: a b\nstates: p\ninitial: p\nfinal: p\np c -> p\n";
        assert!(matches!(parse_text(src), Err(Error::Parse { line: 6, .. })));
        let src = "type: dfa\nalphabet: a\nstates: p\ninitial: p\nbogus line\n";
        assert!(matches!(parse_text(src), Err(Error::Parse { line: 5, .. })));
        let src = "type: dfa\nalphabet: a\nstates: p\ninitial: p\np a -> p\np a -> x\n";
        assert!(matches!(parse_text(src), Err(Error::Parse { line: 6, .. })));
    }
}
