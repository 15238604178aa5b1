use std::collections::{BTreeSet, HashMap, HashSet};

use num_bigint::BigUint;
use num_traits::Zero;

use crate::automata::{minimize, reverse_determinize_with, Alphabet, Dfa, Nfa, StateId, Symbol};
use crate::error::{Error, Result};
use crate::streaming::MealyMachine;

/// Cap on the number of words enumerated by brute-force ψ counting.
pub const ENUMERATION_BUDGET: usize = 1 << 22;
/// Cap on the size of the transition monoid.
pub const DEFAULT_MONOID_BUDGET: usize = 1 << 18;

/// `ψ_L(w)`: the state reached from the initial state by each suffix of `w`,
/// longest suffix first. One right-to-left pass over `w`.
pub fn psi(l: &Dfa, w: &[Symbol]) -> Vec<StateId> {
    let n = l.num_states();
    // f[x] = δ(x, v) for the suffix v read so far
    let mut f: Vec<StateId> = (0..n).collect();
    let mut out = vec![0; w.len()];
    for (i, &a) in w.iter().enumerate().rev() {
        f = (0..n).map(|x| f[l.step(x, a)]).collect();
        out[i] = f[l.initial()];
    }
    out
}

/// Appends `a` to the window whose ψ-sequence is `seq`.
pub fn psi_append(l: &Dfa, seq: &[StateId], a: Symbol) -> Vec<StateId> {
    let mut out: Vec<StateId> = seq.iter().map(|&c| l.step(c, a)).collect();
    out.push(l.step(l.initial(), a));
    out
}

/// ψ-sequences of all windows, grouped by length. Layer `k` holds
/// `ψ_L(Σ^k)` in lexicographic order.
#[derive(Clone, Debug)]
pub struct PsiAutomaton {
    dfa: Dfa,
    layers: Vec<Vec<Vec<StateId>>>,
}

impl PsiAutomaton {
    pub fn new(l: &Dfa) -> Self {
        PsiAutomaton {
            dfa: l.clone(),
            layers: vec![vec![Vec::new()]],
        }
    }

    /// Extends the closure under append transitions up to depth `n`.
    pub fn extend_to(&mut self, n: usize, budget: usize) -> Result<()> {
        let k = self.dfa.alphabet().len();
        while self.layers.len() <= n {
            let last = self.layers.last().expect("layer 0 exists");
            let mut next: BTreeSet<Vec<StateId>> = BTreeSet::new();
            for seq in last {
                for a in 0..k {
                    next.insert(psi_append(&self.dfa, seq, a));
                }
                if next.len() > budget {
                    return Err(Error::Budget {
                        what: "ψ closure layer",
                        limit: budget,
                    });
                }
            }
            self.layers.push(next.into_iter().collect());
        }
        Ok(())
    }

    pub fn depth(&self) -> usize {
        self.layers.len() - 1
    }

    pub fn layer(&self, k: usize) -> &[Vec<StateId>] {
        &self.layers[k]
    }

    /// `|ψ_L(Σ^{≤n})|` for the explored depth `n`.
    pub fn count_up_to(&self, n: usize) -> usize {
        self.layers[..=n].iter().map(Vec::len).sum()
    }

    /// Code index of a state: earlier layers first, lexicographic inside a
    /// layer.
    pub fn index_of(&self, seq: &[StateId]) -> Option<usize> {
        let k = seq.len();
        let layer = self.layers.get(k)?;
        let pos = layer.binary_search_by(|s| s.as_slice().cmp(seq)).ok()?;
        Some(self.count_up_to(k) - layer.len() + pos)
    }

    /// Pop transition: drop the first class.
    pub fn pop(seq: &[StateId]) -> Vec<StateId> {
        seq.get(1..).map(<[StateId]>::to_vec).unwrap_or_default()
    }

    pub fn accepts(&self, seq: &[StateId]) -> bool {
        match seq.first() {
            Some(&c) => self.dfa.is_final(c),
            None => self.dfa.is_final(self.dfa.initial()),
        }
    }
}

/// Counts `|ψ_L(Σ^{≤n})|` by enumerating every word of length at most `n`.
pub fn psi_image_count_enumerate(l: &Dfa, n: usize) -> Result<usize> {
    let k = l.alphabet().len();
    let mut total: usize = 0;
    let mut pow: usize = 1;
    for _ in 0..=n {
        total = total.saturating_add(pow);
        pow = pow.saturating_mul(k);
    }
    if total > ENUMERATION_BUDGET {
        return Err(Error::Budget {
            what: "ψ enumeration",
            limit: ENUMERATION_BUDGET,
        });
    }
    let mut seen: HashSet<Vec<StateId>> = HashSet::new();
    for w in l.alphabet().words_up_to(n) {
        seen.insert(psi(l, &w));
    }
    Ok(seen.len())
}

/// Counts `|ψ_L(Σ^{≤n})|` by breadth-first closure of the ψ automaton.
pub fn psi_image_count_closure(l: &Dfa, n: usize) -> Result<usize> {
    let mut auto = PsiAutomaton::new(l);
    auto.extend_to(n, ENUMERATION_BUDGET)?;
    Ok(auto.count_up_to(n))
}

/// `|ψ_L(Σ^{≤n})|`, computed by enumeration and by closure; the two must agree.
pub fn psi_image_count(l: &Dfa, n: usize) -> Result<usize> {
    let a = psi_image_count_enumerate(l, n)?;
    let b = psi_image_count_closure(l, n)?;
    if a != b {
        return Err(Error::Internal(format!(
            "ψ count mismatch at n = {n}: enumeration {a}, closure {b}"
        )));
    }
    Ok(a)
}

/// Synthetic alphabet `c0, c1, ...` naming the states of `l`.
pub fn class_alphabet(l: &Dfa) -> Alphabet {
    Alphabet::new((0..l.num_states()).map(|q| format!("c{q}"))).expect("class tokens are valid")
}

/// Mealy machine over the transition monoid of `l` whose left transduction
/// is `ψ_L`. Reading `a` in state `f` moves to `x ↦ f(δ(x, a))` and outputs
/// the image of the initial state.
pub fn psi_mealy(l: &Dfa) -> Result<MealyMachine> {
    psi_mealy_with(l, DEFAULT_MONOID_BUDGET).map(|(m, _)| m)
}

/// Also returns the monoid elements, indexed by Mealy state.
pub fn psi_mealy_with(l: &Dfa, budget: usize) -> Result<(MealyMachine, Vec<Vec<StateId>>)> {
    let n = l.num_states();
    let k = l.alphabet().len();
    let identity: Vec<StateId> = (0..n).collect();
    let mut index: HashMap<Vec<StateId>, StateId> = HashMap::new();
    let mut elems = vec![identity.clone()];
    index.insert(identity, 0);
    let mut delta = Vec::new();
    let mut i = 0;
    while i < elems.len() {
        for a in 0..k {
            let f = &elems[i];
            let g: Vec<StateId> = (0..n).map(|x| f[l.step(x, a)]).collect();
            let out = g[l.initial()];
            let id = match index.get(&g) {
                Some(&id) => id,
                None => {
                    if elems.len() >= budget {
                        return Err(Error::Budget {
                            what: "transition monoid",
                            limit: budget,
                        });
                    }
                    index.insert(g.clone(), elems.len());
                    elems.push(g);
                    elems.len() - 1
                }
            };
            delta.push((id, out));
        }
        i += 1;
    }
    let m = MealyMachine::new(l.alphabet().clone(), class_alphabet(l), 0, delta)?;
    Ok((m, elems))
}

/// NFA for the output language of `m` from its initial state.
pub fn mealy_image_nfa(m: &MealyMachine) -> Nfa {
    let n = m.num_states();
    let names: Vec<String> = (0..n).map(|q| format!("m{q}")).collect();
    let mut trans = Vec::new();
    for q in 0..n {
        for a in 0..m.input().len() {
            let (p, b) = m.step(q, a);
            trans.push((q, b, p));
        }
    }
    Nfa::new(m.output().clone(), names, [m.initial()], trans, 0..n)
        .expect("image NFA is well formed")
}

/// Minimal DFA over the class alphabet recognizing `ψ_L(Σ*)`.
pub fn psi_image_dfa(l: &Dfa) -> Result<Dfa> {
    let m = psi_mealy(l)?;
    Ok(minimize(&reverse_determinize_with(
        &mealy_image_nfa(&m),
        crate::automata::DEFAULT_STATE_BUDGET,
    )?))
}

/// Minimal DFA over the class alphabet recognizing `ψ_L(L)`: the image
/// sequences whose first class is final, plus ε when `ε ∈ L`.
pub fn psi_language_dfa(l: &Dfa) -> Result<Dfa> {
    let image = psi_image_dfa(l)?;
    let gamma = image.alphabet().clone();
    // words starting with a final class, or ε when q0 is final
    let k = gamma.len();
    let names = vec!["s".to_string(), "y".to_string(), "n".to_string()];
    let mut delta = vec![0; 3 * k];
    for c in 0..k {
        delta[c] = if l.is_final(c) { 1 } else { 2 };
        delta[k + c] = 1;
        delta[2 * k + c] = 2;
    }
    let first = Dfa::new(
        gamma,
        names,
        0,
        delta,
        vec![l.is_final(l.initial()), true, false],
    )?;
    crate::automata::combine(crate::automata::BoolOp::Intersection, &image, Some(&first))
}

/// Length-lexicographic ranking of ψ-sequences by path counting in the
/// image DFA. Counts are cached per length.
#[derive(Debug)]
pub struct PsiRanker {
    image: Dfa,
    // counts[len][q] = accepted words of length len from q
    counts: Vec<Vec<BigUint>>,
    // prefix[k] = |ψ(Σ^{<k})|
    prefix: Vec<BigUint>,
}

impl PsiRanker {
    pub fn new(l: &Dfa) -> Result<Self> {
        let image = psi_image_dfa(l)?;
        let counts = vec![image
            .states()
            .map(|q| BigUint::from(u8::from(image.is_final(q))))
            .collect()];
        Ok(PsiRanker {
            image,
            counts,
            prefix: vec![BigUint::zero()],
        })
    }

    pub fn image(&self) -> &Dfa {
        &self.image
    }

    fn ensure(&mut self, len: usize) {
        let k = self.image.alphabet().len();
        while self.counts.len() <= len {
            let prev = self.counts.last().expect("length 0 counted");
            let next: Vec<BigUint> = self
                .image
                .states()
                .map(|q| {
                    let mut acc = BigUint::zero();
                    for c in 0..k {
                        acc += &prev[self.image.step(q, c)];
                    }
                    acc
                })
                .collect();
            self.counts.push(next);
        }
        while self.prefix.len() <= len {
            let k = self.prefix.len() - 1;
            let next = &self.prefix[k] + &self.counts[k][self.image.initial()];
            self.prefix.push(next);
        }
    }

    /// `|ψ_L(Σ^k)|`.
    pub fn layer_size(&mut self, k: usize) -> BigUint {
        self.ensure(k);
        self.counts[k][self.image.initial()].clone()
    }

    /// `|ψ_L(Σ^{≤n})|`.
    pub fn count_up_to(&mut self, n: usize) -> BigUint {
        self.ensure(n + 1);
        self.prefix[n + 1].clone()
    }

    /// Position of `seq` in the global code order, or `None` when `seq` is
    /// not a ψ-sequence.
    pub fn index_of(&mut self, seq: &[StateId]) -> Option<BigUint> {
        let len = seq.len();
        self.ensure(len);
        let mut q = self.image.initial();
        let mut rank = self.prefix[len].clone();
        for (i, &c) in seq.iter().enumerate() {
            let rest = len - i - 1;
            for smaller in 0..c {
                rank += &self.counts[rest][self.image.step(q, smaller)];
            }
            q = self.image.step(q, c);
        }
        self.image.is_final(q).then_some(rank)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::streaming::left_transduce;

    fn ab() -> Alphabet {
        Alphabet::chars("ab").unwrap()
    }

    fn ends_a() -> Dfa {
        Dfa::new(
            ab(),
            vec!["n".into(), "y".into()],
            0,
            vec![1, 0, 1, 0],
            vec![false, true],
        )
        .unwrap()
    }

    fn starts_a() -> Dfa {
        minimize(
            &Dfa::new(
                ab(),
                vec!["i".into(), "y".into(), "n".into()],
                0,
                vec![1, 2, 1, 1, 2, 2],
                vec![false, true, false],
            )
            .unwrap(),
        )
    }

    #[test]
    fn psi_examples() {
        let l = ends_a();
        assert!(psi(&l, &[]).is_empty());
        assert_eq!(psi(&l, &[1, 0]), vec![1, 1]);
        assert_eq!(psi(&l, &[0, 1]), vec![0, 0]);
    }

    #[test]
    fn counts_agree() {
        assert_eq!(psi_image_count(&ends_a(), 3).unwrap(), 7);
        for l in [ends_a(), starts_a()] {
            let mut r = PsiRanker::new(&l).unwrap();
            for n in 0..7 {
                let c = psi_image_count(&l, n).unwrap();
                assert!(c > n);
                assert_eq!(r.count_up_to(n), BigUint::from(c));
            }
        }
    }

    #[test]
    fn ranker_matches_closure_order() {
        for l in [ends_a(), starts_a()] {
            let mut auto = PsiAutomaton::new(&l);
            auto.extend_to(6, 1 << 20).unwrap();
            let mut r = PsiRanker::new(&l).unwrap();
            for k in 0..=6 {
                for seq in auto.layer(k) {
                    let want = auto.index_of(seq).unwrap();
                    assert_eq!(r.index_of(seq), Some(BigUint::from(want)));
                }
            }
        }
        // mixed classes never occur for Σ*a: every suffix ends with the same symbol
        let mut r = PsiRanker::new(&ends_a()).unwrap();
        assert_eq!(r.index_of(&[0, 1]), None);
    }

    #[test]
    fn mealy_orientation() {
        for l in [ends_a(), starts_a()] {
            let m = psi_mealy(&l).unwrap();
            for w in l.alphabet().words_up_to(6) {
                assert_eq!(left_transduce(&m, &w), psi(&l, &w));
            }
        }
    }

    #[test]
    fn psi_language_is_a_reduction() {
        for l in [ends_a(), starts_a()] {
            let k = psi_language_dfa(&l).unwrap();
            for w in l.alphabet().words_up_to(6) {
                assert_eq!(l.accepts(&w), k.accepts(&psi(&l, &w)));
            }
        }
    }
}
