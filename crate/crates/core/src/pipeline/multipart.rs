use num::Signed;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::code::{
    entropy_codebook, fixed_length_codebook, otp_decrypt, otp_encrypt, Bitstring, CodeMode,
    Codebook, PadKey, PaddedSecret, Slot, SlotLabel, Transcript,
};
use crate::error::{Error, Result};
use crate::frl::{OrderingPolicy, SequentialChain};
use crate::prob::{to_f64, JointDist, Rational};

/// Picks the realized auxiliary at each stage from its exact conditional.
pub trait CouplingSource {
    /// `options` lists `(u, P(u | ..))` with positive weights, ascending `u`.
    fn pick(&mut self, stage: usize, options: &[(usize, Rational)]) -> Result<usize>;
}

/// Seeded sampler. Draws are made in floating point; the chosen symbol is
/// always one with positive conditional mass.
#[derive(Clone, Debug)]
pub struct SeededCoupling {
    rng: ChaCha8Rng,
}

impl SeededCoupling {
    pub fn new(seed: u64) -> Self {
        SeededCoupling {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }
}

impl CouplingSource for SeededCoupling {
    fn pick(&mut self, _stage: usize, options: &[(usize, Rational)]) -> Result<usize> {
        let (last, _) = options
            .last()
            .ok_or_else(|| Error::Invariant("empty conditional".into()))?;
        let total: f64 = options.iter().map(|(_, p)| to_f64(p)).sum();
        let mut r = self.rng.random::<f64>() * total;
        for (u, p) in options {
            r -= to_f64(p);
            if r < 0.0 {
                return Ok(*u);
            }
        }
        Ok(*last)
    }
}

/// Replays a fixed auxiliary sequence; used to walk every outcome.
#[derive(Clone, Debug)]
pub struct ForcedCoupling {
    choices: Vec<usize>,
}

impl ForcedCoupling {
    pub fn new(choices: Vec<usize>) -> Self {
        ForcedCoupling { choices }
    }
}

impl CouplingSource for ForcedCoupling {
    fn pick(&mut self, stage: usize, options: &[(usize, Rational)]) -> Result<usize> {
        let u = *self
            .choices
            .get(stage)
            .ok_or_else(|| Error::Config(format!("no forced choice for stage {stage}")))?;
        if options.iter().any(|(v, p)| *v == u && p.is_positive()) {
            Ok(u)
        } else {
            Err(Error::Config(format!(
                "forced choice {u} has zero probability at stage {stage}"
            )))
        }
    }
}

/// One enumerated outcome: private symbol, target values, auxiliaries and
/// its exact probability.
#[derive(Clone, Debug, PartialEq)]
pub struct Outcome {
    pub x: usize,
    pub targets: Vec<usize>,
    pub aux: Vec<usize>,
    pub prob: Rational,
}

/// Pad slot plus one functional-representation slot per target.
///
/// Targets are variables of a source distribution that also holds the
/// private variable. Stage `i` only depends on targets `0..=i`.
#[derive(Clone, Debug)]
pub struct MultiPartCode {
    source: JointDist,
    private: String,
    targets: Vec<String>,
    target_pos: Vec<usize>,
    chain: SequentialChain,
    key_size: usize,
    pad_book: Codebook,
    books: Vec<Codebook>,
    mode: CodeMode,
    label: fn(u32) -> SlotLabel,
}

impl MultiPartCode {
    pub fn build(
        base: &JointDist,
        private: &str,
        targets: &[String],
        mode: CodeMode,
        key_size: usize,
        policy: &OrderingPolicy,
        label: fn(u32) -> SlotLabel,
    ) -> Result<Self> {
        let x_size = base.var(private)?.size();
        if key_size < x_size {
            return Err(Error::Config(format!(
                "key size {key_size} is smaller than the private alphabet ({x_size})"
            )));
        }
        let mut unique: Vec<&str> = Vec::new();
        let target_pos = targets
            .iter()
            .map(|t| match unique.iter().position(|u| u == t) {
                Some(i) => i + 1,
                None => {
                    unique.push(t);
                    unique.len()
                }
            })
            .collect();
        let mut names = vec![private];
        names.extend(&unique);
        let source = base.marginalize(&names)?;

        let mut chain = SequentialChain::new(&source, private)?;
        for t in targets {
            chain = chain.extend(&source, t, policy)?;
        }
        let books = chain
            .stages()
            .iter()
            .map(|s| match mode {
                CodeMode::Fixed => fixed_length_codebook(s.size()),
                CodeMode::Entropy => entropy_codebook(s.mechanism().p_u()),
            })
            .collect::<Result<_>>()?;
        Ok(MultiPartCode {
            source,
            private: private.to_string(),
            targets: targets.to_vec(),
            target_pos,
            chain,
            key_size,
            pad_book: fixed_length_codebook(key_size)?,
            books,
            mode,
            label,
        })
    }

    pub fn chain(&self) -> &SequentialChain {
        &self.chain
    }

    pub fn source(&self) -> &JointDist {
        &self.source
    }

    pub fn private(&self) -> &str {
        &self.private
    }

    pub fn targets(&self) -> &[String] {
        &self.targets
    }

    pub fn key_size(&self) -> usize {
        self.key_size
    }

    pub fn private_size(&self) -> usize {
        self.source.vars()[0].size()
    }

    pub fn mode(&self) -> CodeMode {
        self.mode
    }

    pub fn pad_codebook(&self) -> &Codebook {
        &self.pad_book
    }

    pub fn codebooks(&self) -> &[Codebook] {
        &self.books
    }

    /// Starts a sequential encoding session for private symbol `x`.
    pub fn encoder(&self, x: usize, key: PadKey) -> Result<SequentialEncoder<'_>> {
        if key.modulus() != self.key_size {
            return Err(Error::Config(format!(
                "key modulus {} does not match key size {}",
                key.modulus(),
                self.key_size
            )));
        }
        self.source.vars()[0].check(x)?;
        Ok(SequentialEncoder {
            code: self,
            x,
            key,
            emitted: Vec::new(),
        })
    }

    /// Encodes all targets in order.
    pub fn encode(
        &self,
        x: usize,
        targets: &[usize],
        key: PadKey,
        draws: &mut dyn CouplingSource,
    ) -> Result<Transcript> {
        if targets.len() != self.targets.len() {
            return Err(Error::Config(format!(
                "expected {} target values, got {}",
                self.targets.len(),
                targets.len()
            )));
        }
        let mut enc = self.encoder(x, key)?;
        let mut t = Transcript::new();
        let pad = enc.pad_slot()?;
        t.push(pad.label, pad.bits);
        for &y in targets {
            let s = enc.next_slot(y, draws)?;
            t.push(s.label, s.bits);
        }
        Ok(t)
    }

    /// Recovers `x` and every target value from a transcript and the key.
    pub fn decode(&self, t: &Transcript, key: PadKey) -> Result<(usize, Vec<usize>)> {
        let slots = t.slots();
        if slots.len() != self.books.len() + 1 {
            return Err(Error::Undecodable(format!(
                "expected {} slots, found {}",
                self.books.len() + 1,
                slots.len()
            )));
        }
        let x = self.decode_pad(&slots[0].bits, key)?;
        let mut aux = Vec::with_capacity(self.books.len());
        let mut out = Vec::with_capacity(self.books.len());
        for (i, (slot, book)) in slots[1..].iter().zip(&self.books).enumerate() {
            let u = book.decode_exact(&slot.bits)?;
            out.push(self.decode_stage(i, x, &aux, u)?);
            aux.push(u);
        }
        Ok((x, out))
    }

    /// Like [`decode`](Self::decode) but reads the slots back-to-back from
    /// the concatenated link bits, relying on prefix-freeness for framing.
    pub fn decode_stream(&self, bits: &Bitstring, key: PadKey) -> Result<(usize, Vec<usize>)> {
        let raw = bits.bits();
        let (xt, mut pos) = self
            .pad_book
            .decode_prefix(raw, 0)
            .ok_or_else(|| Error::Undecodable("no pad codeword at start of stream".into()))?;
        let x = self.unpad(xt, key)?;
        let mut aux = Vec::new();
        let mut out = Vec::new();
        for (i, book) in self.books.iter().enumerate() {
            let (u, next) = book
                .decode_prefix(raw, pos)
                .ok_or_else(|| Error::Undecodable(format!("no codeword for stage {} at bit {pos}", i + 1)))?;
            pos = next;
            out.push(self.decode_stage(i, x, &aux, u)?);
            aux.push(u);
        }
        if pos != raw.len() {
            return Err(Error::Undecodable(format!(
                "{} trailing bits after the last slot",
                raw.len() - pos
            )));
        }
        Ok((x, out))
    }

    fn decode_pad(&self, bits: &Bitstring, key: PadKey) -> Result<usize> {
        let xt = self.pad_book.decode_exact(bits)?;
        self.unpad(xt, key)
    }

    fn unpad(&self, xt: usize, key: PadKey) -> Result<usize> {
        let x = otp_decrypt(&PaddedSecret::new(xt, self.key_size)?, &key)?;
        if x >= self.private_size() {
            return Err(Error::Undecodable(format!(
                "pad decodes to {x}, outside the private alphabet"
            )));
        }
        Ok(x)
    }

    fn decode_stage(&self, i: usize, x: usize, aux: &[usize], u: usize) -> Result<usize> {
        self.chain.stages()[i].decode(x, aux, u).ok_or_else(|| {
            Error::Undecodable(format!(
                "stage {}: no value for x={x}, prior={aux:?}, u={u}",
                i + 1
            ))
        })
    }

    /// Every `(x, targets, aux)` outcome with its probability, computed as
    /// `P(x, targets) * prod_i P(u_i | x, u_<i, target_i)`.
    pub fn outcomes(&self, limit: u128) -> Result<Vec<Outcome>> {
        let mut out = Vec::new();
        for (t, p) in self.source.iter() {
            let x = t[0];
            let targets: Vec<usize> = self.target_pos.iter().map(|&i| t[i]).collect();
            for (aux, q) in self.aux_chains(x, &targets)? {
                out.push(Outcome {
                    x,
                    targets: targets.clone(),
                    aux,
                    prob: p * q,
                });
                if out.len() as u128 > limit {
                    return Err(Error::LimitExceeded {
                        needed: out.len() as u128,
                        limit,
                    });
                }
            }
        }
        Ok(out)
    }

    /// All auxiliary sequences reachable from `(x, targets)` with their
    /// conditional probabilities.
    pub fn aux_chains(&self, x: usize, targets: &[usize]) -> Result<Vec<(Vec<usize>, Rational)>> {
        let mut states: Vec<(Vec<usize>, Rational)> = vec![(Vec::new(), Rational::from_integer(1.into()))];
        for (i, stage) in self.chain.stages().iter().enumerate() {
            let mut next = Vec::new();
            for (aux, q) in &states {
                let options = stage.conditional(x, aux, targets[i]).ok_or_else(|| {
                    Error::Config(format!(
                        "x={x}, {}={} lies outside the support at stage {}",
                        self.targets[i],
                        targets[i],
                        i + 1
                    ))
                })?;
                for (u, r) in options {
                    let mut a = aux.clone();
                    a.push(*u);
                    next.push((a, q * r));
                }
            }
            states = next;
        }
        Ok(states)
    }

    /// Exact joint of the padded symbol and all auxiliaries, with a uniform
    /// key independent of everything else.
    pub fn pad_aux_distribution(&self, limit: u128) -> Result<JointDist> {
        use crate::prob::Alphabet;
        let mut vars = vec![Alphabet::new("Xt", self.key_size)?];
        for (i, s) in self.chain.stages().iter().enumerate() {
            vars.push(Alphabet::new(SequentialChain::aux_name(i), s.size())?);
        }
        let w_prob = Rational::new(1.into(), self.key_size.into());
        let mut entries = Vec::new();
        for o in self.outcomes(limit)? {
            for key in PadKey::all(self.key_size) {
                let xt = otp_encrypt(o.x, &key)?.value();
                let mut t = vec![xt];
                t.extend(&o.aux);
                entries.push((t, &o.prob * &w_prob));
            }
        }
        JointDist::new(vars, entries)
    }
}

/// Encoder state for one session. Stage `i` sees only the private symbol,
/// the key, the `i`-th target value and the messages already emitted.
pub struct SequentialEncoder<'a> {
    code: &'a MultiPartCode,
    x: usize,
    key: PadKey,
    emitted: Vec<Bitstring>,
}

impl SequentialEncoder<'_> {
    pub fn pad_slot(&self) -> Result<Slot> {
        let xt = otp_encrypt(self.x, &self.key)?;
        Ok(Slot {
            label: SlotLabel::Pad,
            bits: self.code.pad_book.encode(xt.value())?.clone(),
        })
    }

    /// Messages emitted so far, excluding the pad slot.
    pub fn public_cache(&self) -> &[Bitstring] {
        &self.emitted
    }

    /// Encodes the next target value.
    pub fn next_slot(&mut self, y: usize, draws: &mut dyn CouplingSource) -> Result<Slot> {
        let i = self.emitted.len();
        let stage = self.code.chain.stages().get(i).ok_or_else(|| {
            Error::Config(format!("code has only {} stages", self.code.books.len()))
        })?;
        let prior = self
            .emitted
            .iter()
            .zip(&self.code.books)
            .map(|(bits, book)| book.decode_exact(bits))
            .collect::<Result<Vec<_>>>()?;
        let options = stage.conditional(self.x, &prior, y).ok_or_else(|| {
            Error::Config(format!(
                "x={}, {}={y} lies outside the support at stage {}",
                self.x,
                stage.target(),
                i + 1
            ))
        })?;
        let u = draws.pick(i, options)?;
        let bits = self.code.books[i].encode(u)?.clone();
        self.emitted.push(bits.clone());
        Ok(Slot {
            label: (self.code.label)(i as u32),
            bits,
        })
    }
}
