use crate::automata::{
    concat, determinize, minimize, reverse_determinize, Alphabet, Dfa, Nfa, Word,
};
use crate::error::Result;

/// `Σ^p(Σ^q)*`, or exactly `Σ^p` when `q` is `None`.
pub fn length_dfa(alphabet: &Alphabet, p: usize, q: Option<usize>) -> Dfa {
    let k = alphabet.len();
    let (n, back) = match q {
        Some(q) => (p + q.max(1), p),
        None => (p + 2, p + 1),
    };
    let mut delta = Vec::with_capacity(n * k);
    for i in 0..n {
        let next = if i + 1 < n { i + 1 } else { back };
        let next = if q.is_none() && i >= p { p + 1 } else { next };
        delta.extend(std::iter::repeat_n(next, k));
    }
    let finals = (0..n).map(|i| i == p).collect();
    let names = (0..n).map(|i| format!("l{i}")).collect();
    minimize(&Dfa::new(alphabet.clone(), names, 0, delta, finals).expect("well-formed"))
}

/// `Σ^{≤m}`.
pub fn at_most_length(alphabet: &Alphabet, m: usize) -> Dfa {
    let k = alphabet.len();
    let n = m + 2;
    let delta = (0..n)
        .flat_map(|i| std::iter::repeat_n((i + 1).min(n - 1), k))
        .collect();
    let finals = (0..n).map(|i| i <= m).collect();
    let names = (0..n).map(|i| format!("l{i}")).collect();
    Dfa::new(alphabet.clone(), names, 0, delta, finals).expect("well-formed")
}

fn sigma_star(alphabet: &Alphabet) -> Nfa {
    Dfa::trivial(alphabet.clone(), true).to_nfa()
}

/// `LΣ*`.
pub fn right_ideal_closure(l: &Dfa) -> Result<Dfa> {
    Ok(minimize(&determinize(&concat(
        &l.to_nfa(),
        &sigma_star(l.alphabet()),
    )?)?))
}

/// `L·Σ^k`.
pub fn pad_right(l: &Dfa, k: usize) -> Result<Dfa> {
    let exact = length_dfa(l.alphabet(), k, None);
    Ok(minimize(&determinize(&concat(
        &l.to_nfa(),
        &exact.to_nfa(),
    )?)?))
}

/// `Σ*Z` for a finite set `Z`.
pub fn ends_with_any(alphabet: &Alphabet, zs: &[Word]) -> Result<Dfa> {
    let mut names = vec!["any".to_string()];
    let mut trans: Vec<(usize, usize, usize)> = (0..alphabet.len()).map(|s| (0, s, 0)).collect();
    let mut finals = Vec::new();
    for (zi, z) in zs.iter().enumerate() {
        let mut prev = 0;
        for (i, &s) in z.iter().enumerate() {
            names.push(format!("z{zi}.{i}"));
            let cur = names.len() - 1;
            trans.push((prev, s, cur));
            prev = cur;
        }
        finals.push(prev);
    }
    let nfa = Nfa::new(alphabet.clone(), names, [0], trans, finals)?;
    Ok(minimize(&determinize(&nfa)?))
}

/// Minimal DFA of the reversal.
pub fn reversal(l: &Dfa) -> Result<Dfa> {
    Ok(minimize(&reverse_determinize(&l.to_nfa())?))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn length_languages() {
        let ab = Alphabet::chars("ab").unwrap();
        let d = length_dfa(&ab, 1, Some(3));
        let e = length_dfa(&ab, 2, None);
        let f = at_most_length(&ab, 2);
        for w in ab.words_up_to(8) {
            assert_eq!(d.accepts(&w), w.len() % 3 == 1);
            assert_eq!(e.accepts(&w), w.len() == 2);
            assert_eq!(f.accepts(&w), w.len() <= 2);
        }
        let g = ends_with_any(&ab, &[vec![0, 1], vec![1, 1]]).unwrap();
        for w in ab.words_up_to(5) {
            assert_eq!(g.accepts(&w), w.len() >= 2 && w[w.len() - 1] == 1);
        }
    }
}
