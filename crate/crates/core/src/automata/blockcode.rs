use crate::error::{Error, Result};

/// Encodes a tuple of non-empty bit strings so that the concatenation is
/// uniquely decodable: the first bit `b` of each part becomes `1b`, every
/// other bit `b` becomes `0b`.
pub fn encode_tuple<P: AsRef<[bool]>>(parts: &[P]) -> Result<Vec<bool>> {
    let mut out = Vec::new();
    for (i, part) in parts.iter().enumerate() {
        let part = part.as_ref();
        if part.is_empty() {
            return Err(Error::EmptyPart(i));
        }
        for (j, &b) in part.iter().enumerate() {
            out.push(j == 0);
            out.push(b);
        }
    }
    Ok(out)
}

pub fn decode_tuple(bits: &[bool]) -> Result<Vec<Vec<bool>>> {
    if !bits.len().is_multiple_of(2) {
        return Err(Error::Invalid("block code has odd length".into()));
    }
    let mut parts: Vec<Vec<bool>> = Vec::new();
    for pair in bits.chunks(2) {
        if pair[0] {
            parts.push(vec![pair[1]]);
        } else {
            match parts.last_mut() {
                Some(p) => p.push(pair[1]),
                None => return Err(Error::Invalid("block code does not start a part".into())),
            }
        }
    }
    Ok(parts)
}

/// Parses a string of `0`/`1` characters.
pub fn parse_bits(s: &str) -> Result<Vec<bool>> {
    s.chars()
        .map(|c| match c {
            '0' => Ok(false),
            '1' => Ok(true),
            _ => Err(Error::Invalid(format!("`{c}` is not a bit"))),
        })
        .collect()
}

pub fn render_bits(bits: &[bool]) -> String {
    bits.iter().map(|&b| if b { '1' } else { '0' }).collect()
}
