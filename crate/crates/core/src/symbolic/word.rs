use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::Zero;

use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[repr(u8)]
pub enum Symbol {
    Zero = 0,
    One = 1,
}

impl Symbol {
    pub fn from_bit(bit: u8) -> Result<Self> {
        match bit {
            0 => Ok(Symbol::Zero),
            1 => Ok(Symbol::One),
            b => Err(Error::Domain(format!("symbol must be 0 or 1, got {b}"))),
        }
    }

    /// Low bit of `value`.
    pub fn low_bit(value: u64) -> Self {
        if value & 1 == 1 {
            Symbol::One
        } else {
            Symbol::Zero
        }
    }

    pub fn bit(self) -> u8 {
        self as u8
    }

    pub fn flip(self) -> Self {
        match self {
            Symbol::Zero => Symbol::One,
            Symbol::One => Symbol::Zero,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Symbol::Zero => '0',
            Symbol::One => '1',
        }
    }
}

/// A finite binary block.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FiniteWord {
    symbols: Vec<Symbol>,
}

impl FiniteWord {
    pub fn new(symbols: Vec<Symbol>) -> Self {
        Self { symbols }
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn from_bits(bits: &[u8]) -> Result<Self> {
        bits.iter()
            .map(|&b| Symbol::from_bit(b))
            .collect::<Result<Vec<_>>>()
            .map(Self::new)
    }

    /// The `length` low bits of `value`, most significant first.
    pub fn from_value(value: u64, length: usize) -> Self {
        Self::new(
            (0..length)
                .rev()
                .map(|k| {
                    if k < 64 {
                        Symbol::low_bit(value >> k)
                    } else {
                        Symbol::Zero
                    }
                })
                .collect(),
        )
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.symbols
    }

    pub fn get(&self, i: usize) -> Option<Symbol> {
        self.symbols.get(i).copied()
    }

    pub fn push(&mut self, s: Symbol) {
        self.symbols.push(s);
    }

    pub fn concat(&self, other: &FiniteWord) -> FiniteWord {
        let mut symbols = self.symbols.clone();
        symbols.extend_from_slice(&other.symbols);
        Self::new(symbols)
    }

    pub fn suffix_from(&self, start: usize) -> FiniteWord {
        Self::new(self.symbols[start.min(self.len())..].to_vec())
    }

    pub fn prefix(&self, len: usize) -> FiniteWord {
        Self::new(self.symbols[..len.min(self.len())].to_vec())
    }

    /// Binary value, most significant symbol first.
    pub fn value(&self) -> BigUint {
        let mut v = BigUint::zero();
        for s in &self.symbols {
            v <<= 1u8;
            if *s == Symbol::One {
                v.set_bit(0, true);
            }
        }
        v
    }

    /// Binary value if the word fits in 64 bits.
    pub fn value_u64(&self) -> Option<u64> {
        if self.len() > 64 {
            return None;
        }
        Some(
            self.symbols
                .iter()
                .fold(0u64, |acc, s| (acc << 1) | s.bit() as u64),
        )
    }

    /// Every word of the given length in increasing binary order.
    pub fn all_of_length(length: usize) -> impl Iterator<Item = FiniteWord> {
        assert!(length < 64, "enumeration limited to lengths below 64");
        (0..1u64 << length).map(move |v| FiniteWord::from_value(v, length))
    }
}

impl fmt::Display for FiniteWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.symbols {
            write!(f, "{}", s.as_char())?;
        }
        Ok(())
    }
}

impl FromStr for FiniteWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .map(|c| match c {
                '0' => Ok(Symbol::Zero),
                '1' => Ok(Symbol::One),
                other => Err(Error::Parse(format!(
                    "invalid symbol {other:?} in word {s:?}"
                ))),
            })
            .collect::<Result<Vec<_>>>()
            .map(Self::new)
    }
}

impl FromIterator<Symbol> for FiniteWord {
    fn from_iter<I: IntoIterator<Item = Symbol>>(iter: I) -> Self {
        Self::new(iter.into_iter().collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display() {
        let w: FiniteWord = "0110".parse().unwrap();
        assert_eq!(w.len(), 4);
        assert_eq!(w.to_string(), "0110");
        assert_eq!(w.value_u64(), Some(6));
        assert!("012".parse::<FiniteWord>().is_err());
        assert!(FiniteWord::from_bits(&[0, 2]).is_err());
    }

    #[test]
    fn from_value_pads() {
        assert_eq!(FiniteWord::from_value(2, 3).to_string(), "010");
        assert_eq!(FiniteWord::from_value(0, 0), FiniteWord::empty());
        let all: Vec<String> = FiniteWord::all_of_length(2)
            .map(|w| w.to_string())
            .collect();
        assert_eq!(all, ["00", "01", "10", "11"]);
    }
}
