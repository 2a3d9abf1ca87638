//! Exact finite probability distributions.
//!
//! Probabilities are arbitrary-precision rationals so that independence and
//! determinism can be certified by exact equality. Only information
//! measures (entropy, mutual information) are evaluated in `f64`, always in
//! bits.

mod dist_file;
mod joint;

pub use dist_file::{parse_dist, render_dist};
pub use joint::JointDist;

use num::{BigInt, BigRational, One, Signed, ToPrimitive};
use serde::Serialize;

use crate::error::{Error, Result};

/// Exact probability value. Always kept in lowest terms with a positive
/// denominator.
pub type Rational = BigRational;

/// Builds `num / den` as an exact rational.
///
/// Panics if `den == 0`.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// A named finite alphabet `{0, .., size-1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Alphabet {
    name: String,
    size: usize,
}

impl Alphabet {
    pub fn new(name: impl Into<String>, size: usize) -> Result<Self> {
        let name = name.into();
        if size == 0 {
            return Err(Error::InvalidDistribution(format!(
                "alphabet `{name}` must have at least one symbol"
            )));
        }
        if name.is_empty() || name.chars().any(char::is_whitespace) {
            return Err(Error::InvalidDistribution(format!(
                "alphabet name `{name}` must be non-empty and contain no whitespace"
            )));
        }
        Ok(Alphabet { name, size })
    }

    /// Alphabet of an `bits`-bit file: `2^bits` symbols.
    pub fn file(name: impl Into<String>, bits: u32) -> Result<Self> {
        let size = 1usize
            .checked_shl(bits)
            .filter(|_| bits < usize::BITS - 1)
            .ok_or_else(|| Error::Config(format!("file size of {bits} bits is too large")))?;
        Alphabet::new(name, size)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn check(&self, symbol: usize) -> Result<()> {
        if symbol < self.size {
            Ok(())
        } else {
            Err(Error::SymbolOutOfRange {
                symbol,
                size: self.size,
            })
        }
    }
}

/// Shannon entropy in bits of a list of probabilities. Zero entries are
/// skipped; the input is not required to be normalized.
pub fn entropy_bits<'a>(probs: impl IntoIterator<Item = &'a Rational>) -> f64 {
    probs
        .into_iter()
        .filter(|p| p.is_positive())
        .map(|p| {
            let p = to_f64(p);
            -p * p.log2()
        })
        .sum::<f64>()
        .max(0.0)
}

/// Validates a marginal: every entry is nonnegative and the sum is exactly 1.
pub fn check_marginal(probs: &[Rational]) -> Result<()> {
    if probs.is_empty() {
        return Err(Error::InvalidDistribution("empty marginal".into()));
    }
    if probs.iter().any(Signed::is_negative) {
        return Err(Error::InvalidDistribution("negative probability".into()));
    }
    let total: Rational = probs.iter().sum();
    if !total.is_one() {
        return Err(Error::InvalidDistribution(format!(
            "probabilities sum to {total}, not 1"
        )));
    }
    Ok(())
}

/// `ceil(log2(n))` for `n >= 1`, computed exactly.
pub fn ceil_log2(n: u128) -> u32 {
    assert!(n >= 1, "ceil_log2 of zero");
    if n == 1 {
        0
    } else {
        u128::BITS - (n - 1).leading_zeros()
    }
}

/// Rounds an entropy value up to an integer number of bits, absorbing
/// floating-point noise just above an integer.
pub fn ceil_bits(h: f64) -> u64 {
    const SLACK: f64 = 1e-9;
    (h - SLACK).ceil().max(0.0) as u64
}
