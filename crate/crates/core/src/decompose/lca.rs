use std::collections::{BTreeMap, BTreeSet};

use crate::automata::{
    combine, equivalent, minimize, BoolOp, Dfa, Formula, PartialDfa, StateId, Symbol,
};
use crate::classify::well_behaved::lcm;
use crate::error::{Error, Result};

use super::certificate::{DecompositionCertificate, Leaf, LeafTag};
use super::growth::{growth_class, GrowthKind};
use super::lang::{length_dfa, right_ideal_closure};

/// Cap on the number of path descriptions.
pub const PATH_DESCRIPTION_BUDGET: usize = 10_000;
/// Cap on the number of variants produced by cycle-length normalization.
pub const NORMALIZATION_BUDGET: usize = 1_000;

/// A partial DFA whose components are cycles arranged in a chain with one
/// bridging transition between neighbours and a single final state in the
/// last component.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearCycleAutomaton {
    pda: PartialDfa,
    chain: Vec<Vec<StateId>>,
    final_state: StateId,
}

/// A non-trivial cycle read from its entry state.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleInfo {
    pub position: usize,
    pub states: Vec<StateId>,
    pub word: Vec<Symbol>,
}

impl LinearCycleAutomaton {
    /// Checks all defining conditions.
    pub fn new(pda: PartialDfa) -> Result<Self> {
        let n = pda.num_states();
        let bad = |m: &str| Err(Error::Invalid(format!("not a linear cycle automaton: {m}")));
        for p in 0..n {
            let targets: BTreeSet<StateId> = pda.edges(p).iter().map(|&(_, r)| r).collect();
            if targets.len() != pda.edges(p).len() {
                return bad("two symbols connect the same pair of states");
            }
        }
        let sccs = pda.sccs();
        if !sccs.flags.iter().all(|f| f.is_symbol_cycle) {
            return bad("a component is not a cycle");
        }
        let k = sccs.len();
        // topological order
        let chain: Vec<Vec<StateId>> = sccs.components.iter().rev().cloned().collect();
        let pos = |q: StateId| k - 1 - sccs.component_of[q];
        let mut bridges = vec![0usize; k];
        for p in 0..n {
            for (_, r) in pda.edges(p) {
                let (i, j) = (pos(p), pos(r));
                if i == j {
                    continue;
                }
                if j != i + 1 {
                    return bad("transition skips a component");
                }
                bridges[i] += 1;
            }
        }
        if bridges[..k - 1].iter().any(|&b| b != 1) {
            return bad("neighbouring components need exactly one bridge");
        }
        if pos(pda.initial()) != 0 {
            return bad("initial state outside the first component");
        }
        let finals: Vec<StateId> = (0..n).filter(|&q| pda.is_final(q)).collect();
        if finals.len() != 1 || pos(finals[0]) != k - 1 {
            return bad("need a single final state in the last component");
        }
        Ok(LinearCycleAutomaton {
            final_state: finals[0],
            pda,
            chain,
        })
    }

    pub fn automaton(&self) -> &PartialDfa {
        &self.pda
    }

    /// Components `C_1, …, C_k` in chain order.
    pub fn chain(&self) -> &[Vec<StateId>] {
        &self.chain
    }

    pub fn final_state(&self) -> StateId {
        self.final_state
    }

    pub fn to_dfa(&self) -> Dfa {
        self.pda.to_dfa()
    }

    /// State through which component `i` is entered.
    pub fn entry(&self, i: usize) -> StateId {
        if i == 0 {
            return self.pda.initial();
        }
        for &p in &self.chain[i - 1] {
            for (_, r) in self.pda.edges(p) {
                if self.chain[i].contains(&r) {
                    return r;
                }
            }
        }
        unreachable!("validated chain has a bridge into every later component")
    }

    /// The non-trivial cycles, each listed from its entry state.
    pub fn cycles(&self) -> Vec<CycleInfo> {
        let mut out = Vec::new();
        for (i, comp) in self.chain.iter().enumerate() {
            let start = self.entry(i);
            let inner = |q: StateId| {
                self.pda
                    .edges(q)
                    .into_iter()
                    .find(|&(_, r)| comp.contains(&r))
            };
            if inner(start).is_none() {
                continue;
            }
            let (mut states, mut word) = (vec![start], Vec::new());
            let mut cur = start;
            loop {
                let (s, r) = inner(cur).expect("cycle");
                word.push(s);
                if r == start {
                    break;
                }
                states.push(r);
                cur = r;
            }
            out.push(CycleInfo {
                position: i,
                states,
                word,
            });
        }
        out
    }

    pub fn cycle_lengths(&self) -> Vec<usize> {
        self.cycles().iter().map(|c| c.word.len()).collect()
    }
}

/// Builder for partial DFAs with appendable states.
struct Builder {
    edges: BTreeMap<(StateId, Symbol), StateId>,
    finals: Vec<bool>,
}

impl Builder {
    fn new(n: usize) -> Self {
        Builder {
            edges: BTreeMap::new(),
            finals: vec![false; n],
        }
    }

    fn fresh(&mut self) -> StateId {
        self.finals.push(false);
        self.finals.len() - 1
    }

    fn finish(self, alphabet: &crate::automata::Alphabet, initial: StateId) -> PartialDfa {
        let k = alphabet.len();
        let mut delta = vec![None; self.finals.len() * k];
        for ((p, s), q) in self.edges {
            delta[p * k + s] = Some(q);
        }
        PartialDfa::new(alphabet.clone(), initial, delta, self.finals)
    }
}

fn union_of(
    components: &[LinearCycleAutomaton],
    alphabet: &crate::automata::Alphabet,
) -> Result<Dfa> {
    let mut acc = Dfa::trivial(alphabet.clone(), false);
    for c in components {
        acc = combine(BoolOp::Union, &acc, Some(&c.to_dfa()))?;
    }
    Ok(minimize(&acc))
}

/// One linear cycle automaton per path description of the trimmed minimal
/// automaton. The union of their languages is checked against `L`.
pub fn linear_cycle_decomposition(l: &Dfa) -> Result<Vec<LinearCycleAutomaton>> {
    let m = minimize(l);
    if growth_class(&m).kind != GrowthKind::Polynomial {
        return Err(Error::Precondition(
            "linear cycle decomposition needs polynomial growth".into(),
        ));
    }
    let Some(t) = PartialDfa::trim(&m) else {
        return Ok(Vec::new());
    };
    let sccs = t.sccs();

    // each description: list of (component, entry) and bridges (q_i, a_i)
    struct Desc {
        comps: Vec<usize>,
        bridges: Vec<(StateId, Symbol, StateId)>,
        last: StateId,
    }
    let mut descs: Vec<Desc> = Vec::new();
    let mut stack: Vec<(Vec<usize>, Vec<(StateId, Symbol, StateId)>)> =
        vec![(vec![sccs.component_of[t.initial()]], Vec::new())];
    let mut visited = 0usize;
    while let Some((comps, bridges)) = stack.pop() {
        visited += 1;
        if visited > PATH_DESCRIPTION_BUDGET {
            return Err(Error::Budget {
                what: "path descriptions",
                limit: PATH_DESCRIPTION_BUDGET,
            });
        }
        let ci = *comps.last().expect("non-empty chain");
        for &q in &sccs.components[ci] {
            if t.is_final(q) {
                descs.push(Desc {
                    comps: comps.clone(),
                    bridges: bridges.clone(),
                    last: q,
                });
                if descs.len() > PATH_DESCRIPTION_BUDGET {
                    return Err(Error::Budget {
                        what: "path descriptions",
                        limit: PATH_DESCRIPTION_BUDGET,
                    });
                }
            }
        }
        for &q in sccs.components[ci].iter().rev() {
            for (s, r) in t.edges(q).into_iter().rev() {
                let cj = sccs.component_of[r];
                if cj != ci {
                    let mut c2 = comps.clone();
                    c2.push(cj);
                    let mut b2 = bridges.clone();
                    b2.push((q, s, r));
                    stack.push((c2, b2));
                }
            }
        }
    }

    let mut out = Vec::with_capacity(descs.len());
    for d in &descs {
        let states: Vec<StateId> = d
            .comps
            .iter()
            .flat_map(|&c| sccs.components[c].iter().copied())
            .collect();
        let id: BTreeMap<StateId, StateId> =
            states.iter().enumerate().map(|(i, &q)| (q, i)).collect();
        let mut b = Builder::new(states.len());
        for &c in &d.comps {
            for &q in &sccs.components[c] {
                for (s, r) in t.edges(q) {
                    if sccs.component_of[r] == c {
                        b.edges.insert((id[&q], s), id[&r]);
                    }
                }
            }
        }
        for &(q, s, r) in &d.bridges {
            b.edges.insert((id[&q], s), id[&r]);
        }
        b.finals[id[&d.last]] = true;
        out.push(LinearCycleAutomaton::new(
            b.finish(t.alphabet(), id[&t.initial()]),
        )?);
    }
    if !equivalent(&union_of(&out, m.alphabet())?, &m)? {
        return Err(Error::Internal(
            "linear cycle decomposition changed the language".into(),
        ));
    }
    Ok(out)
}

/// Replaces every non-trivial cycle of length `m_i` by a path of length
/// `d_i·m_i` followed by a cycle of length `m = lcm(m_1, …)`, over all
/// choices `0 ≤ d_i < m/m_i`. The union of the outputs is checked against
/// the input.
pub fn normalize_cycle_lengths(c: &LinearCycleAutomaton) -> Result<Vec<LinearCycleAutomaton>> {
    let cycles = c.cycles();
    let lens: Vec<usize> = cycles.iter().map(|x| x.word.len()).collect();
    if lens.windows(2).all(|w| w[0] == w[1]) {
        return Ok(vec![c.clone()]);
    }
    let m = lens.iter().fold(1, |acc, &x| lcm(acc, x));
    let radices: Vec<usize> = lens.iter().map(|&x| m / x).collect();
    let total = radices.iter().try_fold(1usize, |acc, &r| {
        acc.checked_mul(r).filter(|&v| v <= NORMALIZATION_BUDGET)
    });
    let Some(total) = total else {
        return Err(Error::Budget {
            what: "normalization variants",
            limit: NORMALIZATION_BUDGET,
        });
    };
    let pda = c.automaton();
    let n = pda.num_states();
    let mut out = Vec::with_capacity(total);
    for mut idx in 0..total {
        let mut choice = Vec::with_capacity(radices.len());
        for &r in &radices {
            choice.push(idx % r);
            idx /= r;
        }
        let mut b = Builder::new(n);
        for q in 0..n {
            b.finals[q] = pda.is_final(q);
            for (s, r) in pda.edges(q) {
                b.edges.insert((q, s), r);
            }
        }
        let mut initial = pda.initial();
        for (cy, &d) in cycles.iter().zip(&choice) {
            let mi = cy.word.len();
            let entry = cy.states[0];
            let last = *cy.states.last().expect("non-empty cycle");
            // unroll the cycle to length m
            let mut prev = last;
            for j in mi..m {
                let fresh = b.fresh();
                b.edges.insert((prev, cy.word[(j - 1) % mi]), fresh);
                prev = fresh;
            }
            b.edges.insert((prev, cy.word[(m - 1) % mi]), entry);
            // prefix path of length d·m_i
            if d > 0 {
                let plen = d * mi;
                let path: Vec<StateId> = (0..plen).map(|_| b.fresh()).collect();
                for j in 0..plen {
                    let next = if j + 1 < plen { path[j + 1] } else { entry };
                    b.edges.insert((path[j], cy.word[j % mi]), next);
                }
                if cy.position == 0 {
                    initial = path[0];
                } else {
                    let bridge = c.chain()[cy.position - 1]
                        .iter()
                        .flat_map(|&p| pda.edges(p).into_iter().map(move |(s, r)| (p, s, r)))
                        .find(|&(_, _, r)| r == entry)
                        .expect("bridge into cycle");
                    b.edges.insert((bridge.0, bridge.1), path[0]);
                }
            }
        }
        out.push(LinearCycleAutomaton::new(
            b.finish(pda.alphabet(), initial),
        )?);
    }
    if !equivalent(&union_of(&out, pda.alphabet())?, &minimize(&c.to_dfa()))? {
        return Err(Error::Internal(
            "cycle-length normalization changed the language".into(),
        ));
    }
    Ok(out)
}

/// For uniform cycle length `q`: `L = LΣ* ∩ ¬((Σ* \ Pref(L))Σ*) ∩ Σ^p(Σ^q)*`,
/// where `p` is the shortest accepted length. Without non-trivial cycles the
/// language is a single word and the length leaf is `Σ^p`.
pub fn lca_to_boolean_combination(c: &LinearCycleAutomaton) -> Result<DecompositionCertificate> {
    let lens = c.cycle_lengths();
    if lens.windows(2).any(|w| w[0] != w[1]) {
        return Err(Error::Precondition("cycle lengths are not uniform".into()));
    }
    let target = c.to_dfa();
    let alphabet = target.alphabet().clone();
    let p = target
        .shortest_accepted()
        .expect("linear cycle automata accept a word")
        .len();
    let closure = right_ideal_closure(&target)?;
    // the completion sink is the only non-original state
    let n = c.automaton().num_states();
    let dead = target.with_finals(target.states().map(|q| q >= n).collect());
    let length = length_dfa(&alphabet, p, lens.first().copied());
    let leaves = vec![
        Leaf::new(LeafTag::RightIdeal, &closure),
        Leaf::new(LeafTag::RightIdeal, &dead),
        Leaf::new(LeafTag::LengthLanguage, &length),
    ];
    let formula = Formula::Intersection(vec![
        Formula::leaf(0),
        Formula::not(Formula::leaf(1)),
        Formula::leaf(2),
    ]);
    DecompositionCertificate::new(formula, leaves, &target)
}
