use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};

/// Index of a symbol in its [`Alphabet`].
pub type Symbol = usize;

/// A word as a sequence of symbol indices.
pub type Word = Vec<Symbol>;

/// Ordered set of symbol tokens. The order is the canonical symbol order used
/// by every breadth-first construction in the crate.
#[derive(Clone)]
pub struct Alphabet {
    symbols: Vec<String>,
    index: HashMap<String, Symbol>,
}

impl Alphabet {
    pub fn new<I, S>(tokens: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut symbols = Vec::new();
        let mut index = HashMap::new();
        for tok in tokens {
            let tok = tok.into();
            if tok.is_empty() || tok.chars().any(char::is_whitespace) {
                return Err(Error::Invalid(format!("bad symbol token `{tok}`")));
            }
            if tok == "!" {
                return Err(Error::Invalid("`!` is reserved for the pop token".into()));
            }
            if index.insert(tok.clone(), symbols.len()).is_some() {
                return Err(Error::Invalid(format!("duplicate symbol `{tok}`")));
            }
            symbols.push(tok);
        }
        if symbols.is_empty() {
            return Err(Error::Invalid("empty alphabet".into()));
        }
        Ok(Alphabet { symbols, index })
    }

    /// Alphabet of single characters, e.g. `Alphabet::chars("ab")`.
    pub fn chars(s: &str) -> Result<Self> {
        Self::new(s.chars().map(String::from))
    }

    /// The alphabet `{0, 1, ..., k}` with decimal tokens.
    pub fn digits(k: usize) -> Self {
        Self::new((0..=k).map(|i| i.to_string())).expect("decimal tokens are valid")
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn symbols(&self) -> &[String] {
        &self.symbols
    }

    pub fn token(&self, s: Symbol) -> &str {
        &self.symbols[s]
    }

    pub fn lookup(&self, tok: &str) -> Option<Symbol> {
        self.index.get(tok).copied()
    }

    pub fn symbol(&self, tok: &str) -> Result<Symbol> {
        self.lookup(tok)
            .ok_or_else(|| Error::UnknownSymbol(tok.to_string()))
    }

    /// Parses a word. Whitespace-separated tokens are accepted; a string
    /// without whitespace is split into characters when every token is a
    /// single character.
    pub fn parse_word(&self, s: &str) -> Result<Word> {
        let s = s.trim();
        if s.is_empty() || s == "ε" {
            return Ok(Vec::new());
        }
        if s.contains(char::is_whitespace) || !self.single_char() {
            s.split_whitespace().map(|t| self.symbol(t)).collect()
        } else {
            s.chars().map(|c| self.symbol(&c.to_string())).collect()
        }
    }

    pub fn single_char(&self) -> bool {
        self.symbols.iter().all(|t| t.chars().count() == 1)
    }

    pub fn render(&self, w: &[Symbol]) -> String {
        if w.is_empty() {
            return "ε".to_string();
        }
        let sep = if self.single_char() { "" } else { " " };
        w.iter()
            .map(|&s| self.token(s))
            .collect::<Vec<_>>()
            .join(sep)
    }

    pub fn tokens_of(&self, w: &[Symbol]) -> Vec<String> {
        w.iter().map(|&s| self.token(s).to_string()).collect()
    }

    pub fn check_same(&self, other: &Alphabet) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::AlphabetMismatch {
                left: self.symbols.join(" "),
                right: other.symbols.join(" "),
            })
        }
    }

    /// Bits needed to store one symbol index: `ceil(log2 |Σ|)`.
    pub fn symbol_bits(&self) -> usize {
        ceil_log2(self.len())
    }

    /// All words of length exactly `n` in length-lexicographic order.
    pub fn words_of_length(&self, n: usize) -> WordsOfLength {
        WordsOfLength {
            k: self.len(),
            cur: Some(vec![0; n]),
        }
    }

    /// All words of length at most `n`, shortest first.
    pub fn words_up_to(&self, n: usize) -> impl Iterator<Item = Word> + '_ {
        (0..=n).flat_map(move |len| self.words_of_length(len))
    }
}

impl PartialEq for Alphabet {
    fn eq(&self, other: &Self) -> bool {
        self.symbols == other.symbols
    }
}

impl Eq for Alphabet {}

impl fmt::Debug for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Alphabet{:?}", self.symbols)
    }
}

pub struct WordsOfLength {
    k: usize,
    cur: Option<Word>,
}

impl Iterator for WordsOfLength {
    type Item = Word;

    fn next(&mut self) -> Option<Word> {
        let out = self.cur.take()?;
        let mut next = out.clone();
        let mut i = next.len();
        loop {
            if i == 0 {
                break;
            }
            i -= 1;
            next[i] += 1;
            if next[i] < self.k {
                self.cur = Some(next);
                break;
            }
            next[i] = 0;
        }
        Some(out)
    }
}

pub fn ceil_log2(x: usize) -> usize {
    if x <= 1 {
        0
    } else {
        (usize::BITS - (x - 1).leading_zeros()) as usize
    }
}

/// `floor(log2 x)`, with `floor_log2(0) = 0`.
pub fn floor_log2(x: usize) -> usize {
    if x <= 1 {
        0
    } else {
        (usize::BITS - 1 - x.leading_zeros()) as usize
    }
}

pub fn reversed(w: &[Symbol]) -> Word {
    w.iter().rev().copied().collect()
}
