use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::automata::{Alphabet, Symbol, Word};
use crate::error::{Error, Result};

/// Input token of the variable-size model.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum StreamToken {
    Symbol(Symbol),
    /// Expiration of the oldest symbol, written `!` in stream files.
    Pop,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Model {
    Fixed,
    Variable,
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Model::Fixed => "fixed",
            Model::Variable => "variable",
        })
    }
}

/// Window content after a variable-size stream. Popping an empty window
/// leaves it empty.
pub fn wnd(stream: &[StreamToken]) -> Word {
    let mut w: VecDeque<Symbol> = VecDeque::new();
    for t in stream {
        match *t {
            StreamToken::Symbol(s) => w.push_back(s),
            StreamToken::Pop => {
                w.pop_front();
            }
        }
    }
    w.into_iter().collect()
}

/// Window length and padding symbol of the fixed-size model.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FixedWindowSpec {
    pub n: usize,
    pub pad: Symbol,
}

impl FixedWindowSpec {
    /// Pads with the first alphabet symbol.
    pub fn new(n: usize) -> Self {
        FixedWindowSpec { n, pad: 0 }
    }

    pub fn with_pad(n: usize, pad: Symbol) -> Self {
        FixedWindowSpec { n, pad }
    }

    pub fn initial_window(&self) -> Word {
        vec![self.pad; self.n]
    }
}

/// The active window of the fixed-size model: the last `n` symbols of `w`,
/// left-padded when `w` is shorter.
pub fn last_n(w: &[Symbol], spec: FixedWindowSpec) -> Word {
    if w.len() >= spec.n {
        w[w.len() - spec.n..].to_vec()
    } else {
        let mut out = vec![spec.pad; spec.n - w.len()];
        out.extend_from_slice(w);
        out
    }
}

/// Parses whitespace-separated stream tokens; `!` is Pop. A token that is not
/// a symbol is split into characters when all symbols are single characters.
pub fn parse_stream(alphabet: &Alphabet, src: &str) -> Result<Vec<StreamToken>> {
    let mut out = Vec::new();
    for tok in src.split_whitespace() {
        if tok == "!" {
            out.push(StreamToken::Pop);
        } else if let Some(s) = alphabet.lookup(tok) {
            out.push(StreamToken::Symbol(s));
        } else if alphabet.single_char() {
            for c in tok.chars() {
                let c = c.to_string();
                if c == "!" {
                    out.push(StreamToken::Pop);
                } else {
                    out.push(StreamToken::Symbol(
                        alphabet.lookup(&c).ok_or(Error::UnknownSymbol(c))?,
                    ));
                }
            }
        } else {
            return Err(Error::UnknownSymbol(tok.to_string()));
        }
    }
    Ok(out)
}

pub fn render_stream(alphabet: &Alphabet, stream: &[StreamToken]) -> String {
    stream
        .iter()
        .map(|t| match t {
            StreamToken::Symbol(s) => alphabet.token(*s),
            StreamToken::Pop => "!",
        })
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn symbols(w: &[Symbol]) -> Vec<StreamToken> {
    w.iter().map(|&s| StreamToken::Symbol(s)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use StreamToken::*;

    #[test]
    fn wnd_clauses() {
        assert!(wnd(&[]).is_empty());
        assert_eq!(wnd(&[Symbol(0), Symbol(1), Pop]), vec![1]);
        assert!(wnd(&[Pop]).is_empty());
        assert_eq!(wnd(&[Pop, Symbol(1)]), vec![1]);
    }

    #[test]
    fn last_n_pads() {
        assert_eq!(last_n(&[0, 1, 2, 3], FixedWindowSpec::new(2)), vec![2, 3]);
        assert_eq!(
            last_n(&[0, 1], FixedWindowSpec::with_pad(4, 0)),
            vec![0, 0, 0, 1]
        );
        assert_eq!(last_n(&[], FixedWindowSpec::new(2)), vec![0, 0]);
    }

    #[test]
    fn stream_files() {
        let ab = Alphabet::chars("ab").unwrap();
        assert_eq!(
            parse_stream(&ab, "a b !").unwrap(),
            vec![Symbol(0), Symbol(1), Pop]
        );
        assert_eq!(
            parse_stream(&ab, "ab!").unwrap(),
            vec![Symbol(0), Symbol(1), Pop]
        );
        assert!(parse_stream(&ab, "c").is_err());
        let digits = Alphabet::digits(11);
        assert_eq!(
            parse_stream(&digits, "10 0 !").unwrap(),
            vec![Symbol(10), Symbol(0), Pop]
        );
    }
}
