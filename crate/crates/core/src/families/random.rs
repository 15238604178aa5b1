use rand::Rng;

use crate::automata::{minimize, Alphabet, Dfa, Nfa};

/// Random NFA on `states` states: state 0 is initial, every other state is
/// initial with probability `density / 2`, each transition is present with
/// probability `density` and each state is final with probability 1/2.
pub fn random_nfa<R: Rng>(rng: &mut R, alphabet: &Alphabet, states: usize, density: f64) -> Nfa {
    let states = states.max(1);
    let names: Vec<String> = (0..states).map(|i| format!("q{i}")).collect();
    let mut initial = vec![0];
    initial.extend((1..states).filter(|_| rng.gen_bool(density / 2.0)));
    let mut trans = Vec::new();
    for p in 0..states {
        for s in 0..alphabet.len() {
            for q in 0..states {
                if rng.gen_bool(density) {
                    trans.push((p, s, q));
                }
            }
        }
    }
    let finals: Vec<usize> = (0..states).filter(|_| rng.gen_bool(0.5)).collect();
    Nfa::new(alphabet.clone(), names, initial, trans, finals).expect("indices in range")
}

/// Random complete DFA on `states` states with uniform targets and fair
/// coin finals; initial state 0.
pub fn random_dfa<R: Rng>(rng: &mut R, alphabet: &Alphabet, states: usize) -> Dfa {
    let states = states.max(1);
    let names = (0..states).map(|i| format!("q{i}")).collect();
    let delta = (0..states * alphabet.len())
        .map(|_| rng.gen_range(0..states))
        .collect();
    let finals = (0..states).map(|_| rng.gen_bool(0.5)).collect();
    Dfa::new(alphabet.clone(), names, 0, delta, finals).expect("table in range")
}

/// Random DFA whose minimization has exactly `states` states, returned in
/// minimized form. Draws until one is found.
pub fn random_minimal_dfa<R: Rng>(rng: &mut R, alphabet: &Alphabet, states: usize) -> Dfa {
    loop {
        let m = minimize(&random_dfa(rng, alphabet, states));
        if m.num_states() == states.max(1) {
            return m;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn seeded_generation_is_reproducible() {
        let ab = Alphabet::chars("ab").unwrap();
        let a = random_minimal_dfa(&mut ChaCha8Rng::seed_from_u64(0), &ab, 4);
        let b = random_minimal_dfa(&mut ChaCha8Rng::seed_from_u64(0), &ab, 4);
        assert_eq!(a, b);
        assert_eq!(a.num_states(), 4);
        let n1 = random_nfa(&mut ChaCha8Rng::seed_from_u64(3), &ab, 3, 0.3);
        let n2 = random_nfa(&mut ChaCha8Rng::seed_from_u64(3), &ab, 3, 0.3);
        assert_eq!(n1, n2);
    }
}
