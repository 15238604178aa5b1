//! Generators for the example and gadget families: the max-tracking
//! languages `L_k`, the ruler words `Z_k`, the `ρ`/`σ` gadgets and seeded
//! random automata.

mod gadgets;
mod random;

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::automata::{concat, determinize, minimize, Alphabet, Automaton, Dfa, Nfa, Symbol, Word};
use crate::error::{Error, Result};

pub use gadgets::{
    gen_rho_const, gen_rho_log, gen_sigma, pad_final_loop, same_structure, GadgetAlphabet,
};
pub use random::{random_dfa, random_minimal_dfa, random_nfa};

/// Largest `k` accepted by [`gen_zk_dfa`].
pub const MAX_ZK: usize = 6;

/// Which family to generate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FamilySpec {
    Lk(usize),
    Zk(usize),
    RhoConst(Nfa),
    RhoLog(Nfa),
    Sigma(Nfa),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FamilyKind {
    Lk,
    Zk,
    Rho,
    RhoLog,
    Sigma,
}

impl std::str::FromStr for FamilyKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "lk" => Ok(FamilyKind::Lk),
            "zk" => Ok(FamilyKind::Zk),
            "rho" | "rho-const" => Ok(FamilyKind::Rho),
            "rho-log" => Ok(FamilyKind::RhoLog),
            "sigma" => Ok(FamilyKind::Sigma),
            other => Err(Error::Invalid(format!("unknown family `{other}`"))),
        }
    }
}

impl FamilySpec {
    pub fn kind(&self) -> FamilyKind {
        match self {
            FamilySpec::Lk(_) => FamilyKind::Lk,
            FamilySpec::Zk(_) => FamilyKind::Zk,
            FamilySpec::RhoConst(_) => FamilyKind::Rho,
            FamilySpec::RhoLog(_) => FamilyKind::RhoLog,
            FamilySpec::Sigma(_) => FamilyKind::Sigma,
        }
    }

    pub fn build(&self) -> Result<Automaton> {
        Ok(match self {
            FamilySpec::Lk(k) => Automaton::Dfa(gen_lk(*k)),
            FamilySpec::Zk(k) => Automaton::Dfa(gen_zk_dfa(*k)?),
            FamilySpec::RhoConst(a) => Automaton::Nfa(gen_rho_const(a)?),
            FamilySpec::RhoLog(a) => Automaton::Nfa(gen_rho_log(a)?),
            FamilySpec::Sigma(a) => Automaton::Nfa(gen_sigma(a)?),
        })
    }
}

/// DFA for `L_k` over `{0,…,k}` with `k+3` states: a non-final initial
/// state, one final state per running maximum and a rejecting sink.
pub fn gen_lk(k: usize) -> Dfa {
    let alphabet = Alphabet::digits(k);
    let m = k + 1;
    let init = 0;
    let max_state = |s: usize| 1 + s;
    let sink = k + 2;
    let mut names = vec!["init".to_string()];
    names.extend((0..=k).map(|s| format!("max{s}")));
    names.push("sink".into());
    let mut delta = vec![sink; (k + 3) * m];
    delta[init * m] = max_state(0);
    for s in 0..=k {
        for t in 0..=k {
            delta[max_state(s) * m + t] = if t == 0 || t < s {
                max_state(s)
            } else if t > s {
                max_state(t)
            } else {
                sink
            };
        }
    }
    let mut finals = vec![true; k + 3];
    finals[init] = false;
    finals[sink] = false;
    Dfa::new(alphabet, names, init, delta, finals).expect("well-formed table")
}

/// Direct membership test for `L_k`: nonempty, starts with 0, and every
/// symbol is 0 or differs from the maximum of the symbols before it.
pub fn lk_member(k: usize, w: &[Symbol]) -> bool {
    let Some(&first) = w.first() else {
        return false;
    };
    if first != 0 {
        return false;
    }
    let mut max = 0;
    for &a in &w[1..] {
        if a > k || (a != 0 && a == max) {
            return false;
        }
        max = max.max(a);
    }
    true
}

/// Recursive membership test following `L_k = L_{k-1} ∪ L_{k-1} k {0..k-1}*`.
pub fn lk_member_recursive(k: usize, w: &[Symbol]) -> bool {
    if k == 0 {
        return !w.is_empty() && w.iter().all(|&a| a == 0);
    }
    if lk_member_recursive(k - 1, w) {
        return true;
    }
    w.iter()
        .enumerate()
        .filter(|&(_, &a)| a == k)
        .any(|(i, _)| w[i + 1..].iter().all(|&a| a < k) && lk_member_recursive(k - 1, &w[..i]))
}

/// The sequence of positive symbols in every `Z_k` word:
/// `R_0 = ε`, `R_k = R_{k-1} k R_{k-1}`.
pub fn ruler(k: usize) -> Word {
    (1..=k).fold(Vec::new(), |r, j| {
        let mut next = r.clone();
        next.push(j);
        next.extend(r);
        next
    })
}

/// Direct membership test for `Z_k`.
pub fn zk_member(k: usize, w: &[Symbol]) -> bool {
    w.iter().copied().filter(|&a| a != 0).eq(ruler(k))
}

/// The `Z_k` word of length `n` whose positive symbols sit at `positions`
/// (strictly increasing, `2^k − 1` of them).
pub fn zk_word(k: usize, n: usize, positions: &[usize]) -> Result<Word> {
    let r = ruler(k);
    if positions.len() != r.len() || positions.windows(2).any(|p| p[0] >= p[1]) {
        return Err(Error::Precondition(format!(
            "need {} increasing positions",
            r.len()
        )));
    }
    if positions.last().is_some_and(|&p| p >= n) {
        return Err(Error::Precondition("position beyond word length".into()));
    }
    let mut w = vec![0; n];
    for (&p, &a) in positions.iter().zip(&r) {
        w[p] = a;
    }
    Ok(w)
}

/// All `Z_k` words of length `n`, in lexicographic order of positions.
/// There are `C(n, 2^k − 1)` of them.
pub fn zk_words_of_length(k: usize, n: usize) -> Vec<Word> {
    let r = (1usize << k) - 1;
    let mut out = Vec::new();
    let mut pos: Vec<usize> = (0..r).collect();
    if r > n {
        return out;
    }
    loop {
        out.push(zk_word(k, n, &pos).expect("valid positions"));
        let Some(i) = (0..r).rev().find(|&i| pos[i] < n - r + i) else {
            break;
        };
        pos[i] += 1;
        for j in i + 1..r {
            pos[j] = pos[j - 1] + 1;
        }
    }
    out
}

/// The first `count` members of `Z_k` in length-lexicographic order.
pub fn gen_zk_words(k: usize, count: usize) -> Vec<Word> {
    let mut out = Vec::new();
    let mut n = (1usize << k) - 1;
    while out.len() < count {
        let mut layer = zk_words_of_length(k, n);
        layer.sort();
        out.extend(layer.into_iter().take(count - out.len()));
        n += 1;
    }
    out
}

/// Minimal DFA for `Z_k` over `{0,…,k}`, built by concatenation
/// `Z_{k-1} · k · Z_{k-1}` and subset construction.
pub fn gen_zk_dfa(k: usize) -> Result<Dfa> {
    if k > MAX_ZK {
        return Err(Error::Budget {
            what: "Z_k parameter",
            limit: MAX_ZK,
        });
    }
    let alphabet = Alphabet::digits(k);
    let mut z = Nfa::new(alphabet.clone(), vec!["z".into()], [0], [(0, 0, 0)], [0])?;
    for j in 1..=k {
        let mid = Nfa::new(
            alphabet.clone(),
            vec!["s".into(), "t".into()],
            [0],
            [(0, j, 1)],
            [1],
        )?;
        let left = concat(&z, &mid)?;
        let nfa = concat(&left, &z)?;
        z = minimize(&determinize(&nfa)?).to_nfa();
    }
    Ok(minimize(&determinize(&z)?))
}

/// Number of trailing zeros to append after two distinct equal-length
/// `Z_k` words so that the fixed-size windows disagree on `L_k`: the length
/// of their common prefix.
pub fn zk_separating_padding(x: &[Symbol], y: &[Symbol]) -> Option<usize> {
    if x.len() != y.len() || x == y {
        return None;
    }
    Some(x.iter().zip(y).take_while(|(a, b)| a == b).count())
}

/// Words of `L` of length at most `n`, shortest first; used for small
/// exhaustive cross-checks.
pub fn enumerate_language(l: &Dfa, n: usize) -> Vec<Word> {
    let mut out = Vec::new();
    let mut queue = VecDeque::from([(l.initial(), Vec::new())]);
    while let Some((q, w)) = queue.pop_front() {
        if l.is_final(q) {
            out.push(w.clone());
        }
        if w.len() < n {
            for s in 0..l.alphabet().len() {
                let mut next = w.clone();
                next.push(s);
                queue.push_back((l.step(q, s), next));
            }
        }
    }
    out
}
