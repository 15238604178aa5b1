use std::collections::BTreeSet;

use crate::automata::{Alphabet, Nfa, StateId};
use crate::error::Result;

/// The payload alphabet `{a,b}` and the extended alphabet `{a,b,c}`.
pub struct GadgetAlphabet;

impl GadgetAlphabet {
    pub const A: usize = 0;
    pub const B: usize = 1;
    pub const C: usize = 2;

    pub fn payload() -> Alphabet {
        Alphabet::chars("ab").expect("valid tokens")
    }

    pub fn extended() -> Alphabet {
        Alphabet::chars("abc").expect("valid tokens")
    }
}

fn check_payload(a: &Nfa) -> Result<()> {
    GadgetAlphabet::payload().check_same(a.alphabet())
}

fn with_bar(a: &Nfa) -> (Vec<String>, StateId) {
    let mut names = a.names().to_vec();
    let bar = names.len();
    names.push(crate::automata::nfa::fresh_name(&names, "bar"));
    (names, bar)
}

/// `ρ(A)` over `{a,b}`: a new initial and only final state `q̄` with an
/// `a`-loop and a `b`-edge into it from every final state of `A`, so
/// `L(ρ(A)) = a* ∪ L(A)·b·a*`.
pub fn gen_rho_const(a: &Nfa) -> Result<Nfa> {
    check_payload(a)?;
    let (names, bar) = with_bar(a);
    let mut trans: Vec<_> = a.transitions().collect();
    trans.extend(a.finals().map(|q| (q, GadgetAlphabet::B, bar)));
    trans.push((bar, GadgetAlphabet::A, bar));
    let initial = a.initial().iter().copied().chain([bar]);
    Nfa::new(GadgetAlphabet::payload(), names, initial, trans, [bar])
}

/// `ρ(A)` over `{a,b,c}`: a new initial and only final state `q̄` with
/// `a`/`b`-loops, `c`-edges from every final state of `A` into `q̄` and from
/// `q̄` to every state of `A`.
pub fn gen_rho_log(a: &Nfa) -> Result<Nfa> {
    check_payload(a)?;
    let (names, bar) = with_bar(a);
    let mut trans: Vec<_> = a.transitions().collect();
    trans.extend(a.finals().map(|q| (q, GadgetAlphabet::C, bar)));
    trans.extend((0..a.num_states()).map(|q| (bar, GadgetAlphabet::C, q)));
    trans.push((bar, GadgetAlphabet::A, bar));
    trans.push((bar, GadgetAlphabet::B, bar));
    let initial = a.initial().iter().copied().chain([bar]);
    Nfa::new(GadgetAlphabet::extended(), names, initial, trans, [bar])
}

/// `σ(A)` over `{a,b,c}`: a new only-initial, final state `q̄` with
/// `a`/`b`-loops, `c`-edges from `q̄` to every initial state of `A` and from
/// every state of `A` back to `q̄`. Finals are `F ∪ {q̄}`.
pub fn gen_sigma(a: &Nfa) -> Result<Nfa> {
    check_payload(a)?;
    let (names, bar) = with_bar(a);
    let mut trans: Vec<_> = a.transitions().collect();
    trans.extend(a.initial().iter().map(|&q| (bar, GadgetAlphabet::C, q)));
    trans.extend((0..a.num_states()).map(|q| (q, GadgetAlphabet::C, bar)));
    trans.push((bar, GadgetAlphabet::A, bar));
    trans.push((bar, GadgetAlphabet::B, bar));
    let finals: Vec<StateId> = a.finals().chain([bar]).collect();
    Nfa::new(GadgetAlphabet::extended(), names, [bar], trans, finals)
}

/// Adds a final, non-initial state with `a`/`b`-loops. The language is
/// unchanged, and after reversal the new state is an initial state that is
/// never left, so the subset construction never reaches `∅`.
pub fn pad_final_loop(a: &Nfa) -> Result<Nfa> {
    check_payload(a)?;
    let (names, pad) = with_bar(a);
    let mut trans: Vec<_> = a.transitions().collect();
    trans.push((pad, GadgetAlphabet::A, pad));
    trans.push((pad, GadgetAlphabet::B, pad));
    let finals: Vec<StateId> = a.finals().chain([pad]).collect();
    Nfa::new(
        a.alphabet().clone(),
        names,
        a.initial().iter().copied(),
        trans,
        finals,
    )
}

/// Equality of two NFAs under the identity map on state indices: same
/// alphabet, state count, initial set, final set and transition set.
pub fn same_structure(x: &Nfa, y: &Nfa) -> bool {
    x.alphabet() == y.alphabet()
        && x.num_states() == y.num_states()
        && x.initial() == y.initial()
        && x.finals().eq(y.finals())
        && x.transitions().collect::<BTreeSet<_>>() == y.transitions().collect::<BTreeSet<_>>()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::{determinize, equivalent, reverse_determinize, Dfa};
    use crate::families::random_nfa;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn universal() -> Nfa {
        Nfa::new(
            GadgetAlphabet::payload(),
            vec!["u".into()],
            [0],
            [(0, 0, 0), (0, 1, 0)],
            [0],
        )
        .unwrap()
    }

    fn empty() -> Nfa {
        Nfa::new(GadgetAlphabet::payload(), vec!["e".into()], [0], [], []).unwrap()
    }

    fn rho_const_oracle(a: &Nfa, w: &[usize]) -> bool {
        let tail = w
            .iter()
            .rev()
            .take_while(|&&s| s == GadgetAlphabet::A)
            .count();
        if tail == w.len() {
            return true;
        }
        let cut = w.len() - tail - 1;
        w[cut] == GadgetAlphabet::B && a.accepts(&w[..cut])
    }

    #[test]
    fn rho_const_examples() {
        let d = determinize(&gen_rho_const(&universal()).unwrap()).unwrap();
        assert!(equivalent(&d, &Dfa::trivial(GadgetAlphabet::payload(), true)).unwrap());
        let d = determinize(&gen_rho_const(&empty()).unwrap()).unwrap();
        for w in GadgetAlphabet::payload().words_up_to(6) {
            assert_eq!(d.accepts(&w), w.iter().all(|&s| s == GadgetAlphabet::A));
        }
    }

    #[test]
    fn rho_const_language_on_random_payloads() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let a = random_nfa(&mut rng, &GadgetAlphabet::payload(), 3, 0.4);
            let r = gen_rho_const(&a).unwrap();
            for w in GadgetAlphabet::payload().words_up_to(7) {
                assert_eq!(r.accepts(&w), rho_const_oracle(&a, &w), "{w:?}");
            }
        }
    }

    #[test]
    fn reversal_identity() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let mut checked = 0;
        while checked < 20 {
            let a = random_nfa(&mut rng, &GadgetAlphabet::payload(), 3, 0.4);
            if a.finals().next().is_none() {
                continue;
            }
            let lhs = gen_rho_log(&a).unwrap().reverse();
            let rhs = gen_sigma(&a.reverse()).unwrap();
            assert!(same_structure(&lhs, &rhs));
            checked += 1;
        }
    }

    #[test]
    fn reversal_determinization_identity_after_padding() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for _ in 0..20 {
            let a =
                pad_final_loop(&random_nfa(&mut rng, &GadgetAlphabet::payload(), 3, 0.4)).unwrap();
            let lhs = reverse_determinize(&gen_rho_log(&a).unwrap()).unwrap();
            let ard = reverse_determinize(&a).unwrap();
            let rhs = determinize(&gen_sigma(&ard.to_nfa()).unwrap()).unwrap();
            assert!(lhs.isomorphic(&rhs));
        }
    }

    #[test]
    fn payload_alphabet_is_checked() {
        let other = Nfa::new(
            Alphabet::chars("xy").unwrap(),
            vec!["p".into()],
            [0],
            [],
            [0],
        )
        .unwrap();
        assert!(gen_rho_const(&other).is_err());
    }
}
