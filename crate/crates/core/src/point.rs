//! Ultimately periodic points `stem · cycle^ω` of Cantor space.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Parses a bit string. The single letter `e` (or the empty string) denotes
/// the empty word.
pub fn parse_bits(text: &str) -> Result<Vec<u8>> {
    if text == "e" {
        return Ok(Vec::new());
    }
    text.chars()
        .map(|c| match c {
            '0' => Ok(0),
            '1' => Ok(1),
            other => Err(Error::Argument(format!("`{other}` is not a bit in `{text}`"))),
        })
        .collect()
}

/// Renders a bit string, writing `e` for the empty word.
pub fn format_bits(bits: &[u8]) -> String {
    if bits.is_empty() {
        "e".to_string()
    } else {
        bits.iter().map(|b| if *b == 0 { '0' } else { '1' }).collect()
    }
}

/// An ultimately periodic point in canonical form: the cycle is primitive
/// and the stem is as short as possible.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct UpPoint {
    stem: Vec<u8>,
    cycle: Vec<u8>,
}

impl UpPoint {
    pub fn new(stem: Vec<u8>, cycle: Vec<u8>) -> Result<Self> {
        if cycle.is_empty() {
            return Err(Error::Argument("the cycle of a periodic point must be nonempty".into()));
        }
        if stem.iter().chain(&cycle).any(|b| *b > 1) {
            return Err(Error::Argument("bit strings may only contain 0 and 1".into()));
        }
        let mut cycle = primitive_root(&cycle).to_vec();
        let mut stem = stem;
        while let (Some(&s), Some(&c)) = (stem.last(), cycle.last()) {
            if s != c {
                break;
            }
            stem.pop();
            cycle.rotate_right(1);
        }
        Ok(UpPoint { stem, cycle })
    }

    /// Parses `stem` and `cycle` given as bit strings (`e` for empty).
    pub fn parse(stem: &str, cycle: &str) -> Result<Self> {
        UpPoint::new(parse_bits(stem)?, parse_bits(cycle)?)
    }

    pub fn stem(&self) -> &[u8] {
        &self.stem
    }

    pub fn cycle(&self) -> &[u8] {
        &self.cycle
    }

    /// The `i`-th bit of the point.
    pub fn bit(&self, i: usize) -> u8 {
        if i < self.stem.len() {
            self.stem[i]
        } else {
            self.cycle[(i - self.stem.len()) % self.cycle.len()]
        }
    }

    /// The first `n` bits of the point.
    pub fn prefix(&self, n: usize) -> Vec<u8> {
        (0..n).map(|i| self.bit(i)).collect()
    }
}

fn primitive_root(word: &[u8]) -> &[u8] {
    let n = word.len();
    for d in 1..n {
        if n % d == 0 && (d..n).all(|i| word[i] == word[i - d]) {
            return &word[..d];
        }
    }
    word
}

impl fmt::Display for UpPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "pt({},{})", format_bits(&self.stem), format_bits(&self.cycle))
    }
}
