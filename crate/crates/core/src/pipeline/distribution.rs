use std::collections::BTreeMap;

use num::Zero;
use serde::Serialize;

use super::multipart::{ForcedCoupling, MultiPartCode};
use crate::code::{PadKey, Transcript};
use crate::error::{Error, Result};
use crate::prob::{to_f64, Alphabet, JointDist, Rational};

/// Exact joint of the delivered transcript `C`, the private symbol `X` and
/// the key `W`. `C` symbols index into [`transcripts`](Self::transcripts).
#[derive(Clone, Debug)]
pub struct TranscriptDistribution {
    transcripts: Vec<Transcript>,
    joint: JointDist,
}

impl TranscriptDistribution {
    /// Builds the table from weighted `(transcript, x, w)` observations.
    /// Weights must sum to 1.
    pub fn from_weighted(
        x_size: usize,
        key_size: usize,
        entries: impl IntoIterator<Item = (Transcript, usize, usize, Rational)>,
    ) -> Result<Self> {
        let mut index: BTreeMap<Transcript, usize> = BTreeMap::new();
        let mut rows = Vec::new();
        for (t, x, w, p) in entries {
            let next = index.len();
            let c = *index.entry(t).or_insert(next);
            rows.push((vec![c, x, w], p));
        }
        let mut transcripts = vec![Transcript::new(); index.len()];
        for (t, i) in index {
            transcripts[i] = t;
        }
        let vars = vec![
            Alphabet::new("C", transcripts.len().max(1))?,
            Alphabet::new("X", x_size)?,
            Alphabet::new("W", key_size)?,
        ];
        Ok(TranscriptDistribution {
            transcripts,
            joint: JointDist::new(vars, rows)?,
        })
    }

    /// Every transcript the code can emit, in order of first appearance.
    pub fn transcripts(&self) -> &[Transcript] {
        &self.transcripts
    }

    /// Joint over `(C, X, W)`.
    pub fn joint(&self) -> &JointDist {
        &self.joint
    }

    pub fn key_size(&self) -> usize {
        self.joint.vars()[2].size()
    }
}

/// Enumerates every `(x, files, auxiliaries, w)` outcome and runs the
/// encoder on each; the key is uniform and independent of everything else.
pub fn transcript_distribution(code: &MultiPartCode, limit: u128) -> Result<TranscriptDistribution> {
    let outcomes = code.outcomes(limit)?;
    let t = code.key_size();
    let needed = outcomes.len() as u128 * t as u128;
    if needed > limit {
        return Err(Error::LimitExceeded { needed, limit });
    }
    let w_prob = Rational::new(1.into(), t.into());
    let mut entries = Vec::with_capacity(needed as usize);
    for o in outcomes {
        for key in PadKey::all(t) {
            let tr = code.encode(o.x, &o.targets, key, &mut ForcedCoupling::new(o.aux.clone()))?;
            entries.push((tr, o.x, key.value(), &o.prob * &w_prob));
        }
    }
    TranscriptDistribution::from_weighted(code.private_size(), t, entries)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LeakageAudit {
    /// `P(c, x) = P(c) P(x)` holds exactly for every pair.
    pub exact_zero: bool,
    /// `I(C; X)` in bits.
    pub bits: f64,
}

pub fn leakage_audit(td: &TranscriptDistribution) -> Result<LeakageAudit> {
    let j = td.joint();
    Ok(LeakageAudit {
        exact_zero: j.exact_independent(&["C"], &["X"])?,
        bits: j.mutual_information(&["C"], &["X"])?.max(0.0),
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExpectedLength {
    /// `E[len(C) | W = w]`, exact.
    #[serde(skip)]
    pub per_key_exact: Vec<Rational>,
    pub per_key: Vec<f64>,
    pub max: f64,
    /// All per-key values are equal.
    pub key_invariant: bool,
}

pub fn expected_length(td: &TranscriptDistribution) -> ExpectedLength {
    let t = td.key_size();
    let mut mass = vec![Rational::zero(); t];
    let mut total = vec![Rational::zero(); t];
    for (tuple, p) in td.joint().iter() {
        let (c, w) = (tuple[0], tuple[2]);
        let len = Rational::from_integer(td.transcripts()[c].total_length().into());
        mass[w] += p;
        total[w] += p * len;
    }
    let per_key_exact: Vec<Rational> = total
        .into_iter()
        .zip(&mass)
        .map(|(s, m)| if m.is_zero() { s } else { s / m })
        .collect();
    let per_key: Vec<f64> = per_key_exact.iter().map(to_f64).collect();
    ExpectedLength {
        max: per_key.iter().copied().fold(0.0, f64::max),
        key_invariant: per_key_exact.windows(2).all(|w| w[0] == w[1]),
        per_key_exact,
        per_key,
    }
}
