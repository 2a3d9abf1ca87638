use std::fmt;

use serde::{Serialize, Serializer};

/// Bit-exact sequence of bits.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Bitstring(Vec<bool>);

impl Bitstring {
    pub fn new() -> Self {
        Bitstring(Vec::new())
    }

    /// `value` written with exactly `width` bits, most significant first.
    pub fn from_uint(value: u64, width: u32) -> Self {
        debug_assert!(width >= 64 || value >> width == 0);
        Bitstring((0..width).rev().map(|i| (value >> i) & 1 == 1).collect())
    }

    /// Parses a run of `'0'`/`'1'` characters.
    pub fn parse(s: &str) -> Option<Self> {
        s.chars()
            .map(|c| match c {
                '0' => Some(false),
                '1' => Some(true),
                _ => None,
            })
            .collect::<Option<Vec<_>>>()
            .map(Bitstring)
    }

    /// Reads the bits as an unsigned integer, most significant first.
    pub fn to_uint(&self) -> u64 {
        self.0.iter().fold(0, |acc, &b| (acc << 1) | u64::from(b))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn bits(&self) -> &[bool] {
        &self.0
    }

    pub fn push(&mut self, bit: bool) {
        self.0.push(bit);
    }

    pub fn extend(&mut self, other: &Bitstring) {
        self.0.extend_from_slice(&other.0);
    }

    pub fn slice(&self, start: usize, end: usize) -> Bitstring {
        Bitstring(self.0[start..end].to_vec())
    }

    pub fn starts_with(&self, prefix: &Bitstring) -> bool {
        self.0.starts_with(&prefix.0)
    }

    /// Bitwise XOR; both operands must have equal length.
    pub fn xor(&self, other: &Bitstring) -> Bitstring {
        assert_eq!(self.len(), other.len(), "xor of unequal-length bitstrings");
        Bitstring(self.0.iter().zip(&other.0).map(|(a, b)| a ^ b).collect())
    }
}

impl From<Vec<bool>> for Bitstring {
    fn from(v: Vec<bool>) -> Self {
        Bitstring(v)
    }
}

impl FromIterator<bool> for Bitstring {
    fn from_iter<I: IntoIterator<Item = bool>>(iter: I) -> Self {
        Bitstring(iter.into_iter().collect())
    }
}

impl fmt::Display for Bitstring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.0 {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl Serialize for Bitstring {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}
