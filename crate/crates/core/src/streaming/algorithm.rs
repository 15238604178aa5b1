use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt::Debug;
use std::hash::Hash;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::window::{FixedWindowSpec, Model, StreamToken};
use crate::automata::{ceil_log2, Alphabet, Dfa, Symbol, Word};
use crate::error::{Error, Result};

/// A deterministic, possibly infinite-state streaming algorithm with an
/// explicit bit-string encoding of its states.
pub trait StreamingAlgorithm {
    type State: Clone + Eq + Hash + Debug;

    fn model(&self) -> Model;
    fn alphabet(&self) -> &Alphabet;
    fn initial(&self) -> Self::State;
    /// Fixed-size algorithms ignore Pop.
    fn step(&self, state: &Self::State, token: StreamToken) -> Self::State;
    fn accepts(&self, state: &Self::State) -> bool;
    /// Injective on reachable states.
    fn encode(&self, state: &Self::State) -> Vec<bool>;

    /// Common length of all encodings, when there is one. Products
    /// concatenate fixed-width codes instead of block-coding them.
    fn code_width(&self) -> Option<usize> {
        None
    }

    fn run(&self, stream: &[StreamToken]) -> Self::State {
        let mut s = self.initial();
        for &t in stream {
            s = self.step(&s, t);
        }
        s
    }

    fn accepts_stream(&self, stream: &[StreamToken]) -> bool {
        self.accepts(&self.run(stream))
    }
}

/// Object-safe stepping interface over any algorithm.
pub trait Simulation {
    fn model(&self) -> Model;
    fn push(&mut self, token: StreamToken);
    fn accepts(&self) -> bool;
    fn encoded(&self) -> Vec<bool>;
}

/// Owns an algorithm and its current state.
pub struct Runner<A: StreamingAlgorithm> {
    alg: A,
    state: A::State,
}

impl<A: StreamingAlgorithm> Runner<A> {
    pub fn new(alg: A) -> Self {
        let state = alg.initial();
        Runner { alg, state }
    }

    pub fn state(&self) -> &A::State {
        &self.state
    }
}

impl<A: StreamingAlgorithm> Simulation for Runner<A> {
    fn model(&self) -> Model {
        self.alg.model()
    }

    fn push(&mut self, token: StreamToken) {
        self.state = self.alg.step(&self.state, token);
    }

    fn accepts(&self) -> bool {
        self.alg.accepts(&self.state)
    }

    fn encoded(&self) -> Vec<bool> {
        self.alg.encode(&self.state)
    }
}

/// Writes `value` as a fixed-width big-endian bit string.
pub fn fixed_width_bits(value: usize, width: usize, out: &mut Vec<bool>) {
    for i in (0..width).rev() {
        out.push((value >> i) & 1 == 1);
    }
}

/// The `i`-th bit string in length-lexicographic order: ε, 0, 1, 00, ...
pub fn length_lex_code(i: &BigUint) -> Vec<bool> {
    let shifted = i + BigUint::one();
    let bits = shifted.to_str_radix(2);
    bits.chars().skip(1).map(|c| c == '1').collect()
}

pub fn length_lex_code_usize(i: usize) -> Vec<bool> {
    let shifted = i as u128 + 1;
    let width = 127 - shifted.leading_zeros() as usize;
    let mut out = Vec::with_capacity(width);
    for b in (0..width).rev() {
        out.push((shifted >> b) & 1 == 1);
    }
    out
}

/// The window DFA over `Σ^n` as a streaming algorithm: stores the window.
#[derive(Clone, Debug)]
pub struct TrivialFixed {
    dfa: Dfa,
    spec: FixedWindowSpec,
    width: usize,
}

pub fn trivial_fixed_algorithm(l: &Dfa, spec: FixedWindowSpec) -> TrivialFixed {
    TrivialFixed {
        dfa: l.clone(),
        spec,
        width: ceil_log2(l.alphabet().len()),
    }
}

impl StreamingAlgorithm for TrivialFixed {
    type State = Word;

    fn model(&self) -> Model {
        Model::Fixed
    }

    fn alphabet(&self) -> &Alphabet {
        self.dfa.alphabet()
    }

    fn initial(&self) -> Word {
        self.spec.initial_window()
    }

    fn step(&self, w: &Word, token: StreamToken) -> Word {
        match token {
            StreamToken::Pop => w.clone(),
            StreamToken::Symbol(_) if self.spec.n == 0 => Vec::new(),
            StreamToken::Symbol(s) => {
                let mut next = w[1..].to_vec();
                next.push(s);
                next
            }
        }
    }

    fn accepts(&self, w: &Word) -> bool {
        self.dfa.accepts(w)
    }

    fn encode(&self, w: &Word) -> Vec<bool> {
        let mut out = Vec::with_capacity(w.len() * self.width);
        for &s in w {
            fixed_width_bits(s, self.width, &mut out);
        }
        out
    }

    fn code_width(&self) -> Option<usize> {
        Some(self.spec.n * self.width)
    }
}

/// Stores the exact window; ground truth for every other algorithm.
#[derive(Clone, Debug)]
pub struct ReferenceVariable {
    dfa: Dfa,
}

pub fn reference_variable_algorithm(l: &Dfa) -> ReferenceVariable {
    ReferenceVariable { dfa: l.clone() }
}

impl StreamingAlgorithm for ReferenceVariable {
    type State = VecDeque<Symbol>;

    fn model(&self) -> Model {
        Model::Variable
    }

    fn alphabet(&self) -> &Alphabet {
        self.dfa.alphabet()
    }

    fn initial(&self) -> Self::State {
        VecDeque::new()
    }

    fn step(&self, w: &Self::State, token: StreamToken) -> Self::State {
        let mut next = w.clone();
        match token {
            StreamToken::Symbol(s) => next.push_back(s),
            StreamToken::Pop => {
                next.pop_front();
            }
        }
        next
    }

    fn accepts(&self, w: &Self::State) -> bool {
        let mut q = self.dfa.initial();
        for &s in w {
            q = self.dfa.step(q, s);
        }
        self.dfa.is_final(q)
    }

    /// Length-lexicographic rank of the window, written as the bit string of
    /// the same rank.
    fn encode(&self, w: &Self::State) -> Vec<bool> {
        let k = BigUint::from(self.dfa.alphabet().len());
        let mut shorter = BigUint::zero();
        let mut power = BigUint::one();
        for _ in 0..w.len() {
            shorter += &power;
            power *= &k;
        }
        let mut rank = BigUint::zero();
        for &s in w {
            rank = rank * &k + BigUint::from(s);
        }
        length_lex_code(&(shorter + rank))
    }
}

/// Space used per window bound `n = 0..=max_n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpaceProfile {
    pub model: Model,
    /// Maximum encoding length, indexed by `n`.
    pub bits: Vec<usize>,
    /// Number of distinct reachable states, indexed by `n`.
    pub states: Vec<usize>,
}

impl SpaceProfile {
    pub fn at(&self, n: usize) -> usize {
        self.bits[n]
    }
}

fn record_encoding<A: StreamingAlgorithm>(
    alg: &A,
    state: &A::State,
    seen: &mut HashMap<Vec<bool>, A::State>,
) -> Result<usize> {
    let code = alg.encode(state);
    let len = code.len();
    match seen.get(&code) {
        Some(other) if other != state => Err(Error::Internal(format!(
            "encoding {} shared by distinct states {other:?} and {state:?}",
            crate::automata::blockcode::render_bits(&code)
        ))),
        Some(_) => Ok(len),
        None => {
            seen.insert(code, state.clone());
            Ok(len)
        }
    }
}

/// Explores, for each bound `n`, the states reachable by streams whose
/// windows never exceed length `n`, and records the largest encoding.
pub fn variable_space_profile<A: StreamingAlgorithm>(
    alg: &A,
    max_n: usize,
    budget: usize,
) -> Result<SpaceProfile> {
    let k = alg.alphabet().len();
    let mut bits = Vec::with_capacity(max_n + 1);
    let mut states = Vec::with_capacity(max_n + 1);
    let mut seen_codes: HashMap<Vec<bool>, A::State> = HashMap::new();
    for n in 0..=max_n {
        let start = (alg.initial(), 0usize);
        let mut visited: HashSet<(A::State, usize)> = HashSet::new();
        let mut distinct: HashSet<A::State> = HashSet::new();
        let mut queue = VecDeque::new();
        visited.insert(start.clone());
        queue.push_back(start);
        let mut max_bits = 0;
        while let Some((s, len)) = queue.pop_front() {
            if distinct.insert(s.clone()) {
                max_bits = max_bits.max(record_encoding(alg, &s, &mut seen_codes)?);
                if distinct.len() > budget {
                    return Err(Error::Budget {
                        what: "streaming state exploration",
                        limit: budget,
                    });
                }
            }
            let mut succ = Vec::with_capacity(k + 1);
            if len < n {
                for a in 0..k {
                    succ.push((alg.step(&s, StreamToken::Symbol(a)), len + 1));
                }
            }
            succ.push((alg.step(&s, StreamToken::Pop), len.saturating_sub(1)));
            for next in succ {
                if visited.insert(next.clone()) {
                    queue.push_back(next);
                }
            }
        }
        bits.push(max_bits);
        states.push(distinct.len());
    }
    Ok(SpaceProfile {
        model: Model::Variable,
        bits,
        states,
    })
}

/// Fixed-size profile: one algorithm per `n`, explored under symbol input.
pub fn fixed_space_profile<A, F>(factory: F, max_n: usize, budget: usize) -> Result<SpaceProfile>
where
    A: StreamingAlgorithm,
    F: Fn(usize) -> Result<A>,
{
    let mut bits = Vec::with_capacity(max_n + 1);
    let mut states = Vec::with_capacity(max_n + 1);
    for n in 0..=max_n {
        let alg = factory(n)?;
        let k = alg.alphabet().len();
        let mut seen_codes = HashMap::new();
        let mut visited = HashSet::new();
        let mut queue = VecDeque::new();
        let start = alg.initial();
        visited.insert(start.clone());
        queue.push_back(start);
        let mut max_bits = 0;
        while let Some(s) = queue.pop_front() {
            max_bits = max_bits.max(record_encoding(&alg, &s, &mut seen_codes)?);
            if visited.len() > budget {
                return Err(Error::Budget {
                    what: "streaming state exploration",
                    limit: budget,
                });
            }
            for a in 0..k {
                let next = alg.step(&s, StreamToken::Symbol(a));
                if visited.insert(next.clone()) {
                    queue.push_back(next);
                }
            }
        }
        bits.push(max_bits);
        states.push(visited.len());
    }
    Ok(SpaceProfile {
        model: Model::Fixed,
        bits,
        states,
    })
}
