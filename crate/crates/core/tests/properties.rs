use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use slidewin::automata::{
    decode_tuple, encode_tuple, minimize, reverse_determinize, reversed, Alphabet, Dfa, Symbol,
    DEFAULT_STATE_BUDGET,
};
use slidewin::classify::{classify_dfa, FixedClass, VariableClass};
use slidewin::decompose::{decompose, DecompositionCertificate, DecompositionKind};
use slidewin::exactspace::{exact_v, optimal_variable_algorithm, sparse_fixed_algorithm};
use slidewin::families::{
    gen_lk, lk_member, lk_member_recursive, random_dfa, zk_member, zk_separating_padding,
    zk_words_of_length,
};
use slidewin::report::ClassifyResult;
use slidewin::streaming::{
    last_n, reference_variable_algorithm, variable_space_profile, wnd, FixedWindowSpec,
    StreamToken, StreamingAlgorithm,
};

fn dfa(seed: u64, states: usize, sigma: &str) -> Dfa {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_dfa(&mut rng, &Alphabet::chars(sigma).unwrap(), states)
}

fn stream() -> impl Strategy<Value = Vec<StreamToken>> {
    prop::collection::vec(
        prop_oneof![3 => (0usize..2).prop_map(StreamToken::Symbol), 1 => Just(StreamToken::Pop)],
        0..40,
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn optimal_variable_matches_window(seed in any::<u64>(), states in 1usize..5, s in stream()) {
        let l = dfa(seed, states, "ab");
        prop_assume!(minimize(&l).num_states() > 1);
        let alg = optimal_variable_algorithm(&l).unwrap();
        let reference = reference_variable_algorithm(&l);
        let expected = l.accepts(&wnd(&s));
        prop_assert_eq!(alg.accepts_stream(&s), expected);
        prop_assert_eq!(reference.accepts_stream(&s), expected);
    }

    #[test]
    fn sparse_fixed_matches_last_n(seed in any::<u64>(), states in 1usize..5, n in 0usize..6, w in prop::collection::vec(0usize..2, 0..20)) {
        let l = dfa(seed, states, "ab");
        let spec = FixedWindowSpec::new(n);
        let alg = sparse_fixed_algorithm(&l, spec).unwrap();
        let s: Vec<StreamToken> = w.iter().map(|&a| StreamToken::Symbol(a)).collect();
        prop_assert_eq!(alg.accepts_stream(&s), l.accepts(&last_n(&w, spec)));
        let code = alg.encode(&alg.run(&s));
        prop_assert_eq!(Some(code.len()), alg.code_width());
    }

    #[test]
    fn variable_space_is_monotone(seed in any::<u64>(), states in 1usize..5) {
        let l = dfa(seed, states, "ab");
        let v: Vec<usize> = (0..=7).map(|n| exact_v(&l, n).unwrap()).collect();
        prop_assert!(v.windows(2).all(|p| p[0] <= p[1]), "{:?}", v);
        match optimal_variable_algorithm(&l) {
            Ok(alg) => {
                let profile = variable_space_profile(&alg, 7, DEFAULT_STATE_BUDGET).unwrap();
                for (n, &bits) in v.iter().enumerate().skip(1) {
                    prop_assert_eq!(profile.at(n), bits);
                }
            }
            Err(_) => prop_assert!(v.iter().all(|&b| b == 0)),
        }
    }

    #[test]
    fn classification_is_consistent_and_witnessed(seed in any::<u64>(), states in 1usize..6, three in any::<bool>()) {
        let l = dfa(seed, states, if three { "abc" } else { "ab" });
        let c = classify_dfa(&l).unwrap();
        prop_assert!(c.class.is_consistent(), "{:?}", c.class);
        prop_assert_eq!(c.not_constant.is_some(), c.class.fixed != FixedClass::Constant);
        prop_assert_eq!(c.class.variable == VariableClass::Linear, c.critical.is_some());
        prop_assert!(ClassifyResult::new(&c).verify().is_ok());
    }

    #[test]
    fn reversal_recognizes_mirror(seed in any::<u64>(), states in 1usize..5, w in prop::collection::vec(0usize..2, 0..12)) {
        let l = dfa(seed, states, "ab");
        let r = reverse_determinize(&l.to_nfa()).unwrap();
        prop_assert_eq!(r.accepts(&reversed(&w)), l.accepts(&w));
        let m = minimize(&l);
        prop_assert_eq!(m.accepts(&w), l.accepts(&w));
        prop_assert_eq!(minimize(&m).num_states(), m.num_states());
    }

    #[test]
    fn decompositions_round_trip(seed in any::<u64>(), states in 1usize..5) {
        let l = dfa(seed, states, "ab");
        let c = classify_dfa(&l).unwrap();
        let mut kinds = vec![DecompositionKind::Alternation];
        if c.class.fixed != FixedClass::Linear {
            kinds.push(DecompositionKind::Log);
        }
        if c.class.fixed == FixedClass::Constant {
            kinds.push(DecompositionKind::Constant);
        }
        for kind in kinds {
            let cert = match decompose(&l, kind) {
                Ok(cert) => cert,
                Err(slidewin::Error::Precondition(_)) if kind == DecompositionKind::Alternation => continue,
                Err(e) => return Err(TestCaseError::fail(format!("{kind:?}: {e}"))),
            };
            prop_assert!(cert.verify().is_ok());
            let back = DecompositionCertificate::from_json(&cert.to_json()).unwrap();
            prop_assert!(back.verify().is_ok());
            prop_assert_eq!(back.to_json(), cert.to_json());
        }
    }

    #[test]
    fn block_code_round_trips(parts in prop::collection::vec(prop::collection::vec(any::<bool>(), 1..6), 0..5)) {
        let bits = encode_tuple(&parts).unwrap();
        let total: usize = parts.iter().map(Vec::len).sum();
        prop_assert_eq!(bits.len(), 2 * total);
        prop_assert_eq!(decode_tuple(&bits).unwrap(), parts);
    }

    #[test]
    fn block_code_rejects_empty_parts(mut parts in prop::collection::vec(prop::collection::vec(any::<bool>(), 1..6), 1..5), i in any::<prop::sample::Index>()) {
        let j = i.index(parts.len());
        parts[j].clear();
        prop_assert!(encode_tuple(&parts).is_err());
    }

    #[test]
    fn lk_automaton_matches_definitions(k in 0usize..4, w in prop::collection::vec(0usize..4, 0..12)) {
        let w: Vec<Symbol> = w.into_iter().map(|a| a % (k + 1)).collect();
        let d = gen_lk(k);
        prop_assert_eq!(d.accepts(&w), lk_member(k, &w));
        prop_assert_eq!(lk_member(k, &w), lk_member_recursive(k, &w));
    }
}

#[test]
fn zk_words_are_pairwise_separated() {
    for k in 1..=2 {
        let r = (1usize << k) - 1;
        for n in r..=r + 4 {
            let words = zk_words_of_length(k, n);
            assert!(words.iter().all(|w| zk_member(k, w)));
            for (i, x) in words.iter().enumerate() {
                for y in &words[i + 1..] {
                    let p = zk_separating_padding(x, y).unwrap();
                    let spec = FixedWindowSpec::new(n);
                    let pad = |w: &Vec<Symbol>| {
                        let mut v = w.clone();
                        v.extend(std::iter::repeat_n(0, p));
                        lk_member(k, &last_n(&v, spec))
                    };
                    assert_ne!(pad(x), pad(y), "k={k} x={x:?} y={y:?}");
                }
            }
        }
    }
}
