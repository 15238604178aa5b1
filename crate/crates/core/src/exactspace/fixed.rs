use std::collections::HashMap;

use crate::automata::{ceil_log2, floor_log2, minimize, Alphabet, Dfa, StateId, Symbol, Word};
use crate::error::{Error, Result};
use crate::streaming::algorithm::fixed_width_bits;
use crate::streaming::{FixedWindowSpec, Model, StreamToken, StreamingAlgorithm};

/// Cap on `|Σ|^n` for window-automaton constructions.
pub const WINDOW_BUDGET: usize = 1 << 20;

fn checked_pow(k: usize, n: usize, budget: usize) -> Result<usize> {
    let mut total: usize = 1;
    for _ in 0..n {
        total = total
            .checked_mul(k)
            .filter(|&t| t <= budget)
            .ok_or(Error::Budget {
                what: "window automaton |Σ|^n",
                limit: budget,
            })?;
    }
    Ok(total)
}

fn unrank(mut idx: usize, k: usize, n: usize) -> Word {
    let mut w = vec![0; n];
    for i in (0..n).rev() {
        w[i] = idx % k;
        idx /= k;
    }
    w
}

/// The DFA with state set `Σ^n`, initial state `pad^n` and transitions
/// `au → ub` on `b`; a state is final when its window is in `L`.
pub fn window_dfa(l: &Dfa, spec: FixedWindowSpec) -> Result<Dfa> {
    let k = l.alphabet().len();
    let n = spec.n;
    let size = checked_pow(k, n, WINDOW_BUDGET)?;
    let high = size / k.max(1);
    let mut delta = Vec::with_capacity(size * k);
    for u in 0..size {
        for b in 0..k {
            delta.push(if n == 0 { 0 } else { (u % high) * k + b });
        }
    }
    let finals = (0..size).map(|u| l.accepts(&unrank(u, k, n))).collect();
    let initial = (0..n).fold(0, |acc, _| acc * k + spec.pad);
    let names = (0..size).map(|u| format!("w{u}")).collect();
    Dfa::new(l.alphabet().clone(), names, initial, delta, finals)
}

/// Number of states of the minimal fixed-size window automaton.
pub fn minimal_window_states(l: &Dfa, spec: FixedWindowSpec) -> Result<usize> {
    Ok(minimize(&window_dfa(l, spec)?).num_states())
}

/// `F_L(n) = ⌊log₂ s⌋` where `s` is the size of the minimal window automaton.
pub fn exact_f(l: &Dfa, n: usize) -> Result<usize> {
    exact_f_with(l, FixedWindowSpec::new(n))
}

pub fn exact_f_with(l: &Dfa, spec: FixedWindowSpec) -> Result<usize> {
    Ok(floor_log2(minimal_window_states(l, spec)?))
}

/// Words of `L ∩ Σ^n` in lexicographic order.
pub fn words_of_length_in(l: &Dfa, n: usize, budget: usize) -> Result<Vec<Word>> {
    // depth-first in lexicographic order, pruning dead states
    let co = l.coreachable();
    let k = l.alphabet().len();
    let mut out = Vec::new();
    let mut stack: Vec<(StateId, Word)> = vec![(l.initial(), Vec::new())];
    while let Some((q, w)) = stack.pop() {
        if !co[q] {
            continue;
        }
        if w.len() == n {
            if l.is_final(q) {
                out.push(w);
                if out.len() > budget {
                    return Err(Error::Budget {
                        what: "L ∩ Σ^n enumeration",
                        limit: budget,
                    });
                }
            }
            continue;
        }
        for a in (0..k).rev() {
            let mut next = w.clone();
            next.push(a);
            stack.push((l.step(q, a), next));
        }
    }
    Ok(out)
}

/// Fixed-size algorithm using `O(log |L ∩ Σ^n| + log n)` bits: the state is
/// the longest suffix of the window that is a prefix of some member of
/// `L ∩ Σ^n`, stored as its length and the least index of such a member.
#[derive(Clone, Debug)]
pub struct SparseFixed {
    alphabet: Alphabet,
    spec: FixedWindowSpec,
    words: Vec<Word>,
    // prefix -> least member index having it
    prefixes: HashMap<Word, usize>,
    len_bits: usize,
    idx_bits: usize,
}

pub fn sparse_fixed_algorithm(l: &Dfa, spec: FixedWindowSpec) -> Result<SparseFixed> {
    sparse_fixed_algorithm_with(l, spec, WINDOW_BUDGET)
}

pub fn sparse_fixed_algorithm_with(
    l: &Dfa,
    spec: FixedWindowSpec,
    budget: usize,
) -> Result<SparseFixed> {
    let words = words_of_length_in(l, spec.n, budget)?;
    let mut prefixes = HashMap::new();
    for (j, w) in words.iter().enumerate() {
        for i in 0..=w.len() {
            prefixes.entry(w[..i].to_vec()).or_insert(j);
        }
    }
    let (len_bits, idx_bits) = if words.is_empty() {
        (0, 0)
    } else {
        (ceil_log2(spec.n + 1), ceil_log2(words.len()))
    };
    Ok(SparseFixed {
        alphabet: l.alphabet().clone(),
        spec,
        words,
        prefixes,
        len_bits,
        idx_bits,
    })
}

impl SparseFixed {
    pub fn members(&self) -> &[Word] {
        &self.words
    }

    /// Longest suffix of `w` (at most `n` symbols) that is a member prefix.
    fn longest(&self, w: &[Symbol]) -> (usize, usize) {
        let start = w.len().saturating_sub(self.spec.n);
        for i in start..=w.len() {
            if let Some(&j) = self.prefixes.get(&w[i..]) {
                let len = w.len() - i;
                return (len, if len == 0 { 0 } else { j });
            }
        }
        (0, 0)
    }

    pub fn state_bits(&self) -> usize {
        self.len_bits + self.idx_bits
    }
}

impl StreamingAlgorithm for SparseFixed {
    /// (length of the suffix, member index)
    type State = (usize, usize);

    fn model(&self) -> Model {
        Model::Fixed
    }

    fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    fn initial(&self) -> Self::State {
        if self.words.is_empty() {
            return (0, 0);
        }
        self.longest(&self.spec.initial_window())
    }

    fn step(&self, &(len, j): &Self::State, token: StreamToken) -> Self::State {
        let StreamToken::Symbol(a) = token else {
            return (len, j);
        };
        if self.words.is_empty() {
            return (0, 0);
        }
        let mut v = self.words[j][..len].to_vec();
        v.push(a);
        self.longest(&v)
    }

    fn accepts(&self, &(len, _): &Self::State) -> bool {
        !self.words.is_empty() && len == self.spec.n
    }

    fn encode(&self, &(len, j): &Self::State) -> Vec<bool> {
        let mut out = Vec::with_capacity(self.state_bits());
        fixed_width_bits(len, self.len_bits, &mut out);
        fixed_width_bits(j, self.idx_bits, &mut out);
        out
    }

    fn code_width(&self) -> Option<usize> {
        Some(self.state_bits())
    }
}

/// Constant-space fixed-size algorithm for languages where the window's
/// membership depends only on its last `|Q|` symbols.
#[derive(Clone, Debug)]
pub struct ConstantFixed {
    dfa: Dfa,
    spec: FixedWindowSpec,
    keep: usize,
    // state after the padding prefix pad^{n-|Q|}
    start: StateId,
    width: usize,
}

pub fn constant_fixed_algorithm(l: &Dfa, spec: FixedWindowSpec) -> Result<ConstantFixed> {
    let dfa = minimize(l);
    if !crate::classify::is_constant_fixed(&dfa) {
        return Err(Error::Precondition(
            "language is not in the constant fixed-size class".into(),
        ));
    }
    let keep = dfa.num_states();
    if spec.n < keep {
        return Err(Error::Precondition(format!(
            "window size {} is below the state count {keep}",
            spec.n
        )));
    }
    let start = dfa.run(dfa.initial(), &vec![spec.pad; spec.n - keep]);
    let width = ceil_log2(dfa.alphabet().len());
    Ok(ConstantFixed {
        dfa,
        spec,
        keep,
        start,
        width,
    })
}

impl StreamingAlgorithm for ConstantFixed {
    type State = Word;

    fn model(&self) -> Model {
        Model::Fixed
    }

    fn alphabet(&self) -> &Alphabet {
        self.dfa.alphabet()
    }

    fn initial(&self) -> Word {
        vec![self.spec.pad; self.keep]
    }

    fn step(&self, w: &Word, token: StreamToken) -> Word {
        match token {
            StreamToken::Pop => w.clone(),
            StreamToken::Symbol(a) => {
                let mut next = w[1..].to_vec();
                next.push(a);
                next
            }
        }
    }

    fn accepts(&self, w: &Word) -> bool {
        self.dfa.is_final(self.dfa.run(self.start, w))
    }

    fn encode(&self, w: &Word) -> Vec<bool> {
        let mut out = Vec::with_capacity(self.keep * self.width);
        for &s in w {
            fixed_width_bits(s, self.width, &mut out);
        }
        out
    }

    fn code_width(&self) -> Option<usize> {
        Some(self.keep * self.width)
    }
}
