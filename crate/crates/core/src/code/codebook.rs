use std::cmp::Reverse;
use std::collections::BinaryHeap;

use num::{BigInt, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::Bitstring;
use crate::error::{Error, Result};
use crate::prob::{ceil_log2, check_marginal, Rational};

/// How auxiliary symbols are mapped to bits.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CodeMode {
    /// `ceil(log2 |A|)` bits for every symbol.
    #[default]
    Fixed,
    /// Canonical Huffman code under the symbol distribution.
    Entropy,
}

/// Prefix-free binary code for one alphabet. Symbols without a word (zero
/// probability under the design distribution) cannot be encoded.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Codebook {
    mode: CodeMode,
    words: Vec<Option<Bitstring>>,
}

impl Codebook {
    /// Builds a codebook from explicit words, without checking
    /// prefix-freeness.
    pub fn from_words(mode: CodeMode, words: Vec<Option<Bitstring>>) -> Self {
        Codebook { mode, words }
    }

    pub fn mode(&self) -> CodeMode {
        self.mode
    }

    pub fn alphabet_size(&self) -> usize {
        self.words.len()
    }

    pub fn word(&self, symbol: usize) -> Option<&Bitstring> {
        self.words.get(symbol).and_then(Option::as_ref)
    }

    pub fn words(&self) -> impl Iterator<Item = (usize, &Bitstring)> {
        self.words
            .iter()
            .enumerate()
            .filter_map(|(s, w)| w.as_ref().map(|w| (s, w)))
    }

    pub fn encode(&self, symbol: usize) -> Result<&Bitstring> {
        self.word(symbol).ok_or(Error::SymbolOutOfRange {
            symbol,
            size: self.words.len(),
        })
    }

    /// Reads one codeword starting at `pos`; returns the symbol and the
    /// position after it.
    pub fn decode_prefix(&self, bits: &[bool], pos: usize) -> Option<(usize, usize)> {
        let rest = bits.get(pos..)?;
        self.words()
            .find(|(_, w)| rest.starts_with(w.bits()))
            .map(|(s, w)| (s, pos + w.len()))
    }

    /// Decodes a bitstring holding exactly one codeword.
    pub fn decode_exact(&self, bits: &Bitstring) -> Result<usize> {
        match self.decode_prefix(bits.bits(), 0) {
            Some((s, end)) if end == bits.len() => Ok(s),
            Some(_) => Err(Error::Undecodable(format!("trailing bits after codeword in `{bits}`"))),
            None => Err(Error::Undecodable(format!("`{bits}` starts with no codeword"))),
        }
    }

    /// `sum_s P(s) len(word(s))`, exact.
    pub fn expected_length(&self, dist: &[Rational]) -> Result<Rational> {
        let mut total = Rational::zero();
        for (s, p) in dist.iter().enumerate() {
            if p.is_zero() {
                continue;
            }
            total += p * Rational::from_integer(self.encode(s)?.len().into());
        }
        Ok(total)
    }

    /// `sum 2^{-len}` over all words.
    pub fn kraft_sum(&self) -> Rational {
        self.words()
            .map(|(_, w)| Rational::new(1.into(), BigInt::from(2u32).pow(w.len() as u32)))
            .sum()
    }

    pub fn max_len(&self) -> usize {
        self.words().map(|(_, w)| w.len()).max().unwrap_or(0)
    }
}

/// Every symbol gets `ceil(log2 size)` bits: its index, most significant bit
/// first. A singleton alphabet gets the empty word.
pub fn fixed_length_codebook(size: usize) -> Result<Codebook> {
    if size == 0 {
        return Err(Error::Config("codebook alphabet must be non-empty".into()));
    }
    let width = ceil_log2(size as u128);
    if width > 64 {
        return Err(Error::Config(format!("alphabet of size {size} is too large")));
    }
    Ok(Codebook {
        mode: CodeMode::Fixed,
        words: (0..size)
            .map(|s| Some(Bitstring::from_uint(s as u64, width)))
            .collect(),
    })
}

/// Canonical Huffman code for `dist`.
///
/// Merges always take the two lightest subtrees, ties broken by the smallest
/// symbol index they contain. Words are then reassigned canonically: sorted
/// by (length, symbol), consecutive binary values. Zero-probability symbols
/// get no word; a single positive symbol gets the empty word.
pub fn entropy_codebook(dist: &[Rational]) -> Result<Codebook> {
    check_marginal(dist)?;
    let lengths = huffman_lengths(dist);
    let mut order: Vec<(usize, usize)> = lengths
        .iter()
        .enumerate()
        .filter_map(|(s, l)| l.map(|l| (l, s)))
        .collect();
    order.sort_unstable();

    let mut words = vec![None; dist.len()];
    let mut code: Vec<bool> = Vec::new();
    for (i, &(len, s)) in order.iter().enumerate() {
        if i > 0 {
            increment(&mut code);
        }
        code.resize(len, false);
        words[s] = Some(Bitstring::from(code.clone()));
    }
    Ok(Codebook {
        mode: CodeMode::Entropy,
        words,
    })
}

fn increment(code: &mut [bool]) {
    for b in code.iter_mut().rev() {
        if *b {
            *b = false;
        } else {
            *b = true;
            return;
        }
    }
    unreachable!("canonical code overflowed; lengths violate Kraft");
}

fn huffman_lengths(dist: &[Rational]) -> Vec<Option<usize>> {
    // Subtree: members, keyed by (weight, smallest member).
    let mut members: Vec<Vec<usize>> = Vec::new();
    let mut heap = BinaryHeap::new();
    for (s, p) in dist.iter().enumerate() {
        if p.is_positive() {
            heap.push(Reverse((p.clone(), s, members.len())));
            members.push(vec![s]);
        }
    }
    let mut lengths: Vec<Option<usize>> = dist
        .iter()
        .map(|p| p.is_positive().then_some(0))
        .collect();
    while heap.len() > 1 {
        let Reverse((wa, ka, a)) = heap.pop().expect("heap has two items");
        let Reverse((wb, kb, b)) = heap.pop().expect("heap has two items");
        let mut merged = std::mem::take(&mut members[a]);
        merged.append(&mut members[b]);
        for &s in &merged {
            *lengths[s].as_mut().expect("positive symbol") += 1;
        }
        heap.push(Reverse((wa + wb, ka.min(kb), members.len())));
        members.push(merged);
    }
    lengths
}

/// True iff no word is a proper prefix of another (equal words also fail).
pub fn verify_prefix_free(c: &Codebook) -> bool {
    let mut words: Vec<&Bitstring> = c.words().map(|(_, w)| w).collect();
    words.sort();
    words.windows(2).all(|w| !w[1].starts_with(w[0]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::prob::{entropy_bits, ratio, to_f64};

    fn words(c: &Codebook) -> Vec<String> {
        c.words().map(|(_, w)| w.to_string()).collect()
    }

    #[test]
    fn fixed_lengths() {
        assert!(fixed_length_codebook(4).unwrap().words().all(|(_, w)| w.len() == 2));
        assert!(fixed_length_codebook(5).unwrap().words().all(|(_, w)| w.len() == 3));
        let single = fixed_length_codebook(1).unwrap();
        assert_eq!(single.word(0).unwrap().len(), 0);
        assert_eq!(single.decode_exact(&Bitstring::new()).unwrap(), 0);
        assert!(fixed_length_codebook(0).is_err());
    }

    #[test]
    fn entropy_examples() {
        let c = entropy_codebook(&[ratio(1, 2), ratio(1, 2)]).unwrap();
        assert_eq!(words(&c), vec!["0", "1"]);

        let d = [ratio(1, 2), ratio(1, 4), ratio(1, 4)];
        let c = entropy_codebook(&d).unwrap();
        assert_eq!(c.expected_length(&d).unwrap(), ratio(3, 2));
        assert_eq!(words(&c), vec!["0", "10", "11"]);

        let c = entropy_codebook(&[ratio(0, 1), ratio(1, 1), ratio(0, 1)]).unwrap();
        assert_eq!(c.word(1).unwrap().len(), 0);
        assert!(c.word(0).is_none());
        assert!(c.encode(2).is_err());
    }

    #[test]
    fn entropy_code_for_designed_marginal() {
        let d = [ratio(1, 4), ratio(1, 4), ratio(1, 2)];
        let c = entropy_codebook(&d).unwrap();
        assert_eq!(c.expected_length(&d).unwrap(), ratio(3, 2));
        // Symbol 2 is heaviest and gets the single-bit word.
        assert_eq!(c.word(2).unwrap().len(), 1);
    }

    #[test]
    fn prefix_free_examples() {
        let ok = Codebook::from_words(
            CodeMode::Fixed,
            ["0", "10", "11"].iter().map(|s| Bitstring::parse(s)).collect(),
        );
        assert!(verify_prefix_free(&ok));
        let bad = Codebook::from_words(
            CodeMode::Fixed,
            ["0", "01"].iter().map(|s| Bitstring::parse(s)).collect(),
        );
        assert!(!verify_prefix_free(&bad));
    }

    #[test]
    fn decode_errors() {
        let c = fixed_length_codebook(3).unwrap();
        assert!(c.decode_exact(&Bitstring::parse("0").unwrap()).is_err());
        assert!(c.decode_exact(&Bitstring::parse("011").unwrap()).is_err());
        assert_eq!(c.decode_exact(&Bitstring::parse("10").unwrap()).unwrap(), 2);
        // "11" is not a word of a 3-symbol fixed code.
        assert!(c.decode_exact(&Bitstring::parse("11").unwrap()).is_err());
    }

    #[test]
    fn deterministic_for_equal_input() {
        let d = [ratio(1, 3), ratio(1, 3), ratio(1, 3)];
        assert_eq!(entropy_codebook(&d).unwrap(), entropy_codebook(&d).unwrap());
        let h = entropy_bits(&d);
        let l = to_f64(&entropy_codebook(&d).unwrap().expected_length(&d).unwrap());
        assert!(h <= l && l < h + 1.0);
    }
}
