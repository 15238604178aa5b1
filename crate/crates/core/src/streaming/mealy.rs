use super::algorithm::StreamingAlgorithm;
use super::window::{Model, StreamToken};
use crate::automata::{encode_tuple, reversed, Alphabet, Formula, StateId, Symbol, Word};
use crate::error::{Error, Result};

/// Length-preserving transducer with total transitions `(q, a) ↦ (p, b)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MealyMachine {
    input: Alphabet,
    output: Alphabet,
    initial: StateId,
    // delta[q * |Σ| + a]
    delta: Vec<(StateId, Symbol)>,
}

impl MealyMachine {
    pub fn new(
        input: Alphabet,
        output: Alphabet,
        initial: StateId,
        delta: Vec<(StateId, Symbol)>,
    ) -> Result<Self> {
        let k = input.len();
        if delta.is_empty() || !delta.len().is_multiple_of(k) {
            return Err(Error::Invalid(
                "Mealy transition table has the wrong shape".into(),
            ));
        }
        let n = delta.len() / k;
        if initial >= n || delta.iter().any(|&(q, b)| q >= n || b >= output.len()) {
            return Err(Error::Invalid("Mealy transition out of range".into()));
        }
        Ok(MealyMachine {
            input,
            output,
            initial,
            delta,
        })
    }

    pub fn identity(alphabet: &Alphabet) -> Self {
        let delta = (0..alphabet.len()).map(|a| (0, a)).collect();
        MealyMachine {
            input: alphabet.clone(),
            output: alphabet.clone(),
            initial: 0,
            delta,
        }
    }

    /// Stateless symbol-wise relabeling.
    pub fn relabel(input: &Alphabet, output: &Alphabet, map: &[Symbol]) -> Result<Self> {
        if map.len() != input.len() {
            return Err(Error::Invalid(
                "relabeling must map every input symbol".into(),
            ));
        }
        MealyMachine::new(
            input.clone(),
            output.clone(),
            0,
            map.iter().map(|&b| (0, b)).collect(),
        )
    }

    pub fn input(&self) -> &Alphabet {
        &self.input
    }

    pub fn output(&self) -> &Alphabet {
        &self.output
    }

    pub fn initial(&self) -> StateId {
        self.initial
    }

    pub fn num_states(&self) -> usize {
        self.delta.len() / self.input.len()
    }

    pub fn step(&self, q: StateId, a: Symbol) -> (StateId, Symbol) {
        self.delta[q * self.input.len() + a]
    }

    /// `τ_q(w)`: left-to-right output.
    pub fn transduce_from(&self, mut q: StateId, w: &[Symbol]) -> Word {
        let mut out = Vec::with_capacity(w.len());
        for &a in w {
            let (p, b) = self.step(q, a);
            out.push(b);
            q = p;
        }
        out
    }

    /// `τ^R_q(w) = (τ_q(w^R))^R`.
    pub fn left_transduce_from(&self, q: StateId, w: &[Symbol]) -> Word {
        reversed(&self.transduce_from(q, &reversed(w)))
    }
}

/// `τ^R_{q0}(w)` for the initial state.
pub fn left_transduce(m: &MealyMachine, w: &[Symbol]) -> Word {
    m.left_transduce_from(m.initial, w)
}

/// Block-code encoding of a tuple whose parts may be empty. All-empty
/// tuples encode as ε, tuples without empty parts use the plain block code,
/// and mixed tuples are prefixed by `0` and an emptiness mask.
pub fn encode_parts(parts: &[Vec<bool>]) -> Vec<bool> {
    if parts.iter().all(Vec::is_empty) {
        return Vec::new();
    }
    if parts.iter().all(|p| !p.is_empty()) {
        return encode_tuple(parts).expect("parts are non-empty");
    }
    let mut out = vec![false];
    out.extend(parts.iter().map(|p| !p.is_empty()));
    let nonempty: Vec<&Vec<bool>> = parts.iter().filter(|p| !p.is_empty()).collect();
    out.extend(encode_tuple(&nonempty).expect("parts are non-empty"));
    out
}

/// Streaming algorithm for `K` built from an algorithm for `L` and a Mealy
/// machine whose left transduction reduces `K` to `L`. The state holds the
/// component state on `τ^R_q(window)` for every Mealy state `q`.
#[derive(Clone, Debug)]
pub struct MealyReduction<A> {
    inner: A,
    machine: MealyMachine,
}

pub fn reduce_via_mealy<A: StreamingAlgorithm>(
    alg_for_l: A,
    m: MealyMachine,
) -> Result<MealyReduction<A>> {
    alg_for_l.alphabet().check_same(m.output())?;
    Ok(MealyReduction {
        inner: alg_for_l,
        machine: m,
    })
}

impl<A> MealyReduction<A> {
    pub fn machine(&self) -> &MealyMachine {
        &self.machine
    }

    pub fn inner(&self) -> &A {
        &self.inner
    }
}

impl<A: StreamingAlgorithm> StreamingAlgorithm for MealyReduction<A> {
    type State = Vec<A::State>;

    fn model(&self) -> Model {
        self.inner.model()
    }

    fn alphabet(&self) -> &Alphabet {
        self.machine.input()
    }

    fn initial(&self) -> Self::State {
        vec![self.inner.initial(); self.machine.num_states()]
    }

    fn step(&self, state: &Self::State, token: StreamToken) -> Self::State {
        match token {
            StreamToken::Symbol(a) => (0..state.len())
                .map(|q| {
                    let (p, b) = self.machine.step(q, a);
                    self.inner.step(&state[p], StreamToken::Symbol(b))
                })
                .collect(),
            StreamToken::Pop => state
                .iter()
                .map(|s| self.inner.step(s, StreamToken::Pop))
                .collect(),
        }
    }

    fn accepts(&self, state: &Self::State) -> bool {
        self.inner.accepts(&state[self.machine.initial()])
    }

    fn encode(&self, state: &Self::State) -> Vec<bool> {
        let parts: Vec<Vec<bool>> = state.iter().map(|s| self.inner.encode(s)).collect();
        match self.inner.code_width() {
            Some(_) => parts.concat(),
            None => encode_parts(&parts),
        }
    }

    fn code_width(&self) -> Option<usize> {
        self.inner
            .code_width()
            .map(|w| w * self.machine.num_states())
    }
}

/// Runs component algorithms side by side and evaluates a formula over their
/// outputs.
#[derive(Clone, Debug)]
pub struct BooleanProduct<A> {
    components: Vec<A>,
    formula: Formula,
}

impl<A: StreamingAlgorithm> BooleanProduct<A> {
    pub fn new(components: Vec<A>, formula: Formula) -> Result<Self> {
        let first = components
            .first()
            .ok_or_else(|| Error::Invalid("product without components".into()))?;
        for c in &components[1..] {
            first.alphabet().check_same(c.alphabet())?;
            if c.model() != first.model() {
                return Err(Error::Invalid(
                    "components use different window models".into(),
                ));
            }
        }
        if formula.max_leaf().is_some_and(|i| i >= components.len()) {
            return Err(Error::Invalid(
                "formula refers to a missing component".into(),
            ));
        }
        Ok(BooleanProduct {
            components,
            formula,
        })
    }

    pub fn components(&self) -> &[A] {
        &self.components
    }
}

impl<A: StreamingAlgorithm> StreamingAlgorithm for BooleanProduct<A> {
    type State = Vec<A::State>;

    fn model(&self) -> Model {
        self.components[0].model()
    }

    fn alphabet(&self) -> &Alphabet {
        self.components[0].alphabet()
    }

    fn initial(&self) -> Self::State {
        self.components
            .iter()
            .map(StreamingAlgorithm::initial)
            .collect()
    }

    fn step(&self, state: &Self::State, token: StreamToken) -> Self::State {
        self.components
            .iter()
            .zip(state)
            .map(|(c, s)| c.step(s, token))
            .collect()
    }

    fn accepts(&self, state: &Self::State) -> bool {
        let values: Vec<bool> = self
            .components
            .iter()
            .zip(state)
            .map(|(c, s)| c.accepts(s))
            .collect();
        self.formula.eval(&values)
    }

    fn encode(&self, state: &Self::State) -> Vec<bool> {
        let parts: Vec<Vec<bool>> = self
            .components
            .iter()
            .zip(state)
            .map(|(c, s)| c.encode(s))
            .collect();
        match self.code_width() {
            Some(_) => parts.concat(),
            None => encode_parts(&parts),
        }
    }

    fn code_width(&self) -> Option<usize> {
        self.components
            .iter()
            .map(StreamingAlgorithm::code_width)
            .sum()
    }
}
