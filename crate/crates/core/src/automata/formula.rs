use serde::{Deserialize, Serialize};

use super::dfa::Dfa;
use super::ops::{combine, BoolOp};
use crate::error::{Error, Result};

/// Boolean formula over indexed leaves.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", tag = "op", content = "args")]
pub enum Formula {
    Leaf(usize),
    Union(Vec<Formula>),
    Intersection(Vec<Formula>),
    Complement(Box<Formula>),
}

impl Formula {
    pub fn leaf(i: usize) -> Self {
        Formula::Leaf(i)
    }

    pub fn not(f: Formula) -> Self {
        Formula::Complement(Box::new(f))
    }

    /// `a \ b`
    pub fn minus(a: Formula, b: Formula) -> Self {
        Formula::Intersection(vec![a, Formula::not(b)])
    }

    pub fn eval(&self, leaves: &[bool]) -> bool {
        match self {
            Formula::Leaf(i) => leaves[*i],
            Formula::Union(fs) => fs.iter().any(|f| f.eval(leaves)),
            Formula::Intersection(fs) => fs.iter().all(|f| f.eval(leaves)),
            Formula::Complement(f) => !f.eval(leaves),
        }
    }

    pub fn max_leaf(&self) -> Option<usize> {
        match self {
            Formula::Leaf(i) => Some(*i),
            Formula::Union(fs) | Formula::Intersection(fs) => {
                fs.iter().filter_map(Formula::max_leaf).max()
            }
            Formula::Complement(f) => f.max_leaf(),
        }
    }

    /// Builds a minimal DFA for the formula over the leaf automata. Empty
    /// unions denote `∅`, empty intersections `Σ*`.
    pub fn to_dfa(&self, leaves: &[Dfa]) -> Result<Dfa> {
        let first = leaves
            .first()
            .ok_or_else(|| Error::Invalid("formula without leaves".into()))?;
        let alphabet = first.alphabet().clone();
        self.build(leaves, &alphabet)
    }

    fn build(&self, leaves: &[Dfa], alphabet: &super::alphabet::Alphabet) -> Result<Dfa> {
        match self {
            Formula::Leaf(i) => leaves
                .get(*i)
                .cloned()
                .ok_or_else(|| Error::Invalid(format!("formula refers to missing leaf {i}"))),
            Formula::Union(fs) => fold(fs, leaves, alphabet, BoolOp::Union, false),
            Formula::Intersection(fs) => fold(fs, leaves, alphabet, BoolOp::Intersection, true),
            Formula::Complement(f) => {
                combine(BoolOp::Complement, &f.build(leaves, alphabet)?, None)
            }
        }
    }
}

fn fold(
    fs: &[Formula],
    leaves: &[Dfa],
    alphabet: &super::alphabet::Alphabet,
    op: BoolOp,
    unit: bool,
) -> Result<Dfa> {
    let mut acc = Dfa::trivial(alphabet.clone(), unit);
    for f in fs {
        acc = combine(op, &acc, Some(&f.build(leaves, alphabet)?))?;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eval_and_serde() {
        let f = Formula::Union(vec![
            Formula::leaf(0),
            Formula::minus(Formula::leaf(1), Formula::leaf(2)),
        ]);
        assert!(f.eval(&[false, true, false]));
        assert!(!f.eval(&[false, true, true]));
        assert_eq!(f.max_leaf(), Some(2));
        let json = serde_json::to_string(&f).unwrap();
        let back: Formula = serde_json::from_str(&json).unwrap();
        assert_eq!(back, f);
    }
}
