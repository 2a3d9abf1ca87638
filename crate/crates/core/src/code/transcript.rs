//! Multi-slot transcripts and their packed binary form.
//!
//! Packed layout (all integers big-endian):
//!
//! ```text
//! magic   "SQPT"
//! version u8 = 1
//! count   u32                      number of slots
//! count x { kind u8, index u32, bits u32 }
//! payload ceil(total_bits / 8) bytes, bits MSB-first, final byte zero-padded
//! ```
//!
//! `kind` is 0 for the pad slot, 1 for a demand slot and 2 for a block slot.

use std::fmt;

use serde::Serialize;

use super::Bitstring;
use crate::error::{Error, Result};

const MAGIC: &[u8; 4] = b"SQPT";
const VERSION: u8 = 1;

/// Role of a transcript slot. Indices are zero-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(tag = "kind", content = "index", rename_all = "lowercase")]
pub enum SlotLabel {
    /// Fixed-length code of the padded private symbol.
    Pad,
    /// Auxiliary for the `i`-th demand.
    Demand(u32),
    /// Auxiliary for the `i`-th delivery block.
    Block(u32),
}

impl fmt::Display for SlotLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SlotLabel::Pad => f.write_str("pad"),
            SlotLabel::Demand(i) => write!(f, "C{}", i + 1),
            SlotLabel::Block(i) => write!(f, "B{}", i + 1),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Slot {
    pub label: SlotLabel,
    pub bits: Bitstring,
}

/// Delivered message: the pad slot followed by one slot per auxiliary.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Transcript {
    slots: Vec<Slot>,
}

impl Transcript {
    pub fn new() -> Self {
        Transcript::default()
    }

    pub fn push(&mut self, label: SlotLabel, bits: Bitstring) {
        self.slots.push(Slot { label, bits });
    }

    pub fn slots(&self) -> &[Slot] {
        &self.slots
    }

    pub fn total_length(&self) -> usize {
        self.slots.iter().map(|s| s.bits.len()).sum()
    }

    /// All slots concatenated, as sent on the link.
    pub fn concatenated(&self) -> Bitstring {
        let mut out = Bitstring::new();
        for s in &self.slots {
            out.extend(&s.bits);
        }
        out
    }

    pub fn to_packed(&self) -> Vec<u8> {
        let mut out = Vec::new();
        out.extend_from_slice(MAGIC);
        out.push(VERSION);
        out.extend_from_slice(&(self.slots.len() as u32).to_be_bytes());
        for s in &self.slots {
            let (kind, index) = match s.label {
                SlotLabel::Pad => (0u8, 0u32),
                SlotLabel::Demand(i) => (1, i),
                SlotLabel::Block(i) => (2, i),
            };
            out.push(kind);
            out.extend_from_slice(&index.to_be_bytes());
            out.extend_from_slice(&(s.bits.len() as u32).to_be_bytes());
        }
        let all = self.concatenated();
        for chunk in all.bits().chunks(8) {
            let byte = chunk
                .iter()
                .enumerate()
                .fold(0u8, |acc, (i, &b)| acc | (u8::from(b) << (7 - i)));
            out.push(byte);
        }
        out
    }

    pub fn from_packed(data: &[u8]) -> Result<Self> {
        let bad = |msg: &str| Error::Undecodable(format!("packed transcript: {msg}"));
        let mut r = Reader { data, pos: 0 };
        if r.take(4).ok_or_else(|| bad("truncated header"))? != MAGIC {
            return Err(bad("bad magic"));
        }
        if r.u8().ok_or_else(|| bad("truncated header"))? != VERSION {
            return Err(bad("unsupported version"));
        }
        let count = r.u32().ok_or_else(|| bad("truncated header"))?;
        let mut heads = Vec::new();
        for _ in 0..count {
            let kind = r.u8().ok_or_else(|| bad("truncated slot table"))?;
            let index = r.u32().ok_or_else(|| bad("truncated slot table"))?;
            let len = r.u32().ok_or_else(|| bad("truncated slot table"))? as usize;
            let label = match kind {
                0 => SlotLabel::Pad,
                1 => SlotLabel::Demand(index),
                2 => SlotLabel::Block(index),
                _ => return Err(bad("unknown slot kind")),
            };
            heads.push((label, len));
        }
        let total: usize = heads.iter().map(|(_, l)| l).sum();
        let payload = &data[r.pos..];
        if payload.len() != total.div_ceil(8) {
            return Err(bad("payload length does not match slot lengths"));
        }
        let bits: Vec<bool> = payload
            .iter()
            .flat_map(|b| (0..8).rev().map(move |i| (b >> i) & 1 == 1))
            .collect();
        if bits[total..].iter().any(|&b| b) {
            return Err(bad("nonzero padding bits"));
        }
        let mut t = Transcript::new();
        let mut pos = 0;
        for (label, len) in heads {
            t.push(label, Bitstring::from(bits[pos..pos + len].to_vec()));
            pos += len;
        }
        Ok(t)
    }
}

struct Reader<'a> {
    data: &'a [u8],
    pos: usize,
}

impl<'a> Reader<'a> {
    fn take(&mut self, n: usize) -> Option<&'a [u8]> {
        let s = self.data.get(self.pos..self.pos + n)?;
        self.pos += n;
        Some(s)
    }

    fn u8(&mut self) -> Option<u8> {
        self.take(1).map(|b| b[0])
    }

    fn u32(&mut self) -> Option<u32> {
        self.take(4).map(|b| u32::from_be_bytes([b[0], b[1], b[2], b[3]]))
    }
}

impl fmt::Display for Transcript {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, s) in self.slots.iter().enumerate() {
            if i > 0 {
                f.write_str(" | ")?;
            }
            write!(f, "{}:{}", s.label, s.bits)?;
        }
        Ok(())
    }
}
