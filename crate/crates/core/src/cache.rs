//! Coded caching with a private, buffer-limited delivery encoder.
//!
//! Placement splits each `F`-bit file into `C(K, p)` equal subfiles indexed
//! by the `p`-subsets of users (`p = KM/N`); user `k` caches every subfile
//! whose subset contains `k`. Delivery sends one XOR block per
//! `(p+1)`-subset `g`: the XOR over `j` in `g` of subfile `(d_j, g \ {j})`.
//! The block stream then goes through the multi-part private code one block
//! at a time, each emitted message also being appended to a public cache.

use std::collections::BTreeMap;
use std::fmt;

use itertools::Itertools;
use num::{BigUint, One, ToPrimitive};
use serde::Serialize;

use crate::bounds::upper_bound_cardinality_big;
use crate::code::{Bitstring, CodeMode, PadKey, SlotLabel, Transcript};
use crate::error::{Error, Result};
use crate::frl::OrderingPolicy;
use crate::pipeline::{
    CouplingSource, Database, ForcedCoupling, MultiPartCode, SequentialEncoder,
    TranscriptDistribution,
};
use crate::prob::{Alphabet, JointDist, Rational};

/// Largest block size, in bits, the private wrap will enumerate.
pub const MAX_BLOCK_BITS: u32 = 16;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CacheConfig {
    n: usize,
    k: usize,
    f: u32,
    #[serde(serialize_with = "ser_ratio")]
    m: Rational,
    p: usize,
}

fn ser_ratio<S: serde::Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(r)
}

fn binomial(n: usize, r: usize) -> usize {
    if r > n {
        0
    } else {
        num::integer::binomial(n, r)
    }
}

impl CacheConfig {
    /// `M` must be one of `N/K, 2N/K, .., N` and `F` must split evenly into
    /// `C(K, p)` subfiles.
    pub fn new(n: usize, k: usize, f: u32, m: Rational) -> Result<Self> {
        if n == 0 || k == 0 || f == 0 {
            return Err(Error::Config("N, K and F must be positive".into()));
        }
        let p = Rational::from_integer(k.into()) * &m / Rational::from_integer(n.into());
        if !p.is_integer() {
            return Err(Error::Config(format!(
                "KM/N = {p} is not an integer; M must be a multiple of N/K"
            )));
        }
        let p = p
            .to_integer()
            .to_usize()
            .filter(|p| (1..=k).contains(p))
            .ok_or_else(|| Error::Config(format!("M = {m} must lie in N/K..=N")))?;
        let parts = binomial(k, p);
        if (f as usize) % parts != 0 {
            return Err(Error::Config(format!(
                "F = {f} is not divisible by C({k}, {p}) = {parts}"
            )));
        }
        Ok(CacheConfig { n, k, f, m, p })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn f(&self) -> u32 {
        self.f
    }

    pub fn m(&self) -> &Rational {
        &self.m
    }

    /// `KM/N`.
    pub fn p(&self) -> usize {
        self.p
    }

    /// Number of delivery blocks, `C(K, p+1)`.
    pub fn q(&self) -> usize {
        binomial(self.k, self.p + 1)
    }

    /// Subfiles per file, `C(K, p)`.
    pub fn subfiles(&self) -> usize {
        binomial(self.k, self.p)
    }

    /// Bits per subfile and per block.
    pub fn block_bits(&self) -> u32 {
        self.f / self.subfiles() as u32
    }

    /// Bits held by each user cache.
    pub fn cache_bits(&self) -> usize {
        self.n * binomial(self.k - 1, self.p - 1) * self.block_bits() as usize
    }
}

/// `r`-subsets of `0..k`, colexicographic order.
pub fn subsets(k: usize, r: usize) -> Vec<Vec<usize>> {
    let mut all: Vec<Vec<usize>> = (0..k).combinations(r).collect();
    all.sort_by(|a, b| a.iter().rev().cmp(b.iter().rev()));
    all
}

fn subset_label(s: &[usize]) -> String {
    format!("{{{}}}", s.iter().map(|i| i + 1).join(","))
}

/// Subfile `(file, subset)`, zero-based.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct SubfileIndex {
    pub file: usize,
    pub subset: Vec<usize>,
}

impl fmt::Display for SubfileIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Y{},{}", self.file + 1, subset_label(&self.subset))
    }
}

/// Splits an `F`-bit file value, most significant bit first, into subfiles
/// in colex subset order.
pub fn split_file(cfg: &CacheConfig, value: usize) -> Vec<Bitstring> {
    let bits = Bitstring::from_uint(value as u64, cfg.f);
    let s = cfg.block_bits() as usize;
    (0..cfg.subfiles()).map(|j| bits.slice(j * s, (j + 1) * s)).collect()
}

fn join_file(parts: &[Bitstring]) -> usize {
    let mut all = Bitstring::new();
    for p in parts {
        all.extend(p);
    }
    all.to_uint() as usize
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UserCache {
    pub user: usize,
    pub entries: BTreeMap<SubfileIndex, Bitstring>,
}

impl UserCache {
    pub fn bits(&self) -> usize {
        self.entries.values().map(Bitstring::len).sum()
    }
}

fn check_files(cfg: &CacheConfig, files: &[usize]) -> Result<()> {
    if files.len() != cfg.n {
        return Err(Error::Config(format!("expected {} files, got {}", cfg.n, files.len())));
    }
    for &v in files {
        if cfg.f < 64 && (v as u64) >> cfg.f != 0 {
            return Err(Error::SymbolOutOfRange { symbol: v, size: 1 << cfg.f });
        }
    }
    Ok(())
}

pub fn placement(cfg: &CacheConfig, files: &[usize]) -> Result<Vec<UserCache>> {
    check_files(cfg, files)?;
    let omegas = subsets(cfg.k, cfg.p);
    let parts: Vec<Vec<Bitstring>> = files.iter().map(|&v| split_file(cfg, v)).collect();
    Ok((0..cfg.k)
        .map(|user| {
            let mut entries = BTreeMap::new();
            for (file, split) in parts.iter().enumerate() {
                for (omega, bits) in omegas.iter().zip(split) {
                    if omega.contains(&user) {
                        let idx = SubfileIndex { file, subset: omega.clone() };
                        entries.insert(idx, bits.clone());
                    }
                }
            }
            UserCache { user, entries }
        })
        .collect())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BlockStream {
    pub subsets: Vec<Vec<usize>>,
    pub blocks: Vec<Bitstring>,
}

fn check_demands(cfg: &CacheConfig, demands: &[usize]) -> Result<()> {
    if demands.len() != cfg.k {
        return Err(Error::Config(format!(
            "need one demand per user ({}), got {}",
            cfg.k,
            demands.len()
        )));
    }
    if let Some(&d) = demands.iter().find(|&&d| d >= cfg.n) {
        return Err(Error::Config(format!("demand {} exceeds the {} files", d + 1, cfg.n)));
    }
    Ok(())
}

/// One XOR block per `(p+1)`-subset of users; `demands[j]` is user `j`'s
/// file. Demands may repeat across users.
pub fn delivery_blocks(cfg: &CacheConfig, files: &[usize], demands: &[usize]) -> Result<BlockStream> {
    check_files(cfg, files)?;
    check_demands(cfg, demands)?;
    let rank: BTreeMap<Vec<usize>, usize> = subsets(cfg.k, cfg.p)
        .into_iter()
        .enumerate()
        .map(|(i, s)| (s, i))
        .collect();
    let parts: Vec<Vec<Bitstring>> = files.iter().map(|&v| split_file(cfg, v)).collect();
    let gammas = subsets(cfg.k, cfg.p + 1);
    let blocks = gammas
        .iter()
        .map(|g| {
            let mut acc = Bitstring::from_uint(0, cfg.block_bits());
            for &j in g {
                let rest: Vec<usize> = g.iter().copied().filter(|&i| i != j).collect();
                acc = acc.xor(&parts[demands[j]][rank[&rest]]);
            }
            acc
        })
        .collect();
    Ok(BlockStream { subsets: gammas, blocks })
}

/// Joint law of `X` and the block stream under the database law.
pub fn block_joint(cfg: &CacheConfig, db: &Database, demands: &[usize]) -> Result<JointDist> {
    if db.n() != cfg.n || db.file_bits() != cfg.f {
        return Err(Error::Config(format!(
            "database has {} files of {} bits, configuration expects {} of {}",
            db.n(),
            db.file_bits(),
            cfg.n,
            cfg.f
        )));
    }
    check_demands(cfg, demands)?;
    if cfg.block_bits() > MAX_BLOCK_BITS {
        return Err(Error::Config(format!(
            "blocks of {} bits are too large to enumerate; reduce F to at most {}",
            cfg.block_bits(),
            MAX_BLOCK_BITS as usize * cfg.subfiles()
        )));
    }
    let mut vars = vec![db.joint().vars()[0].clone()];
    for i in 0..cfg.q() {
        vars.push(Alphabet::file(format!("B{}", i + 1), cfg.block_bits())?);
    }
    let mut failure = None;
    let joint = db.joint().pushforward(vars, |t| {
        let mut out = vec![t[0]];
        match delivery_blocks(cfg, &t[1..], demands) {
            Ok(s) => out.extend(s.blocks.iter().map(|b| b.to_uint() as usize)),
            Err(e) => failure = Some(e),
        }
        out
    });
    match failure {
        Some(e) => Err(e),
        None => joint,
    }
}

/// Append-only log of emitted block messages, visible to the adversary.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct PublicCache {
    log: Vec<Bitstring>,
}

impl PublicCache {
    pub fn new() -> Self {
        PublicCache::default()
    }

    pub fn entries(&self) -> &[Bitstring] {
        &self.log
    }

    fn append(&mut self, bits: Bitstring) {
        self.log.push(bits);
    }
}

/// Private code over the block stream of one demand assignment.
#[derive(Clone, Debug)]
pub struct CachedScheme {
    cfg: CacheConfig,
    demands: Vec<usize>,
    code: MultiPartCode,
}

impl CachedScheme {
    pub fn build(cfg: &CacheConfig, db: &Database, demands: &[usize], mode: CodeMode) -> Result<Self> {
        let joint = block_joint(cfg, db, demands)?;
        let targets: Vec<String> = (0..cfg.q()).map(|i| format!("B{}", i + 1)).collect();
        let code = MultiPartCode::build(
            &joint,
            db.private(),
            &targets,
            mode,
            db.private_size(),
            &OrderingPolicy::canonical(),
            SlotLabel::Block,
        )?;
        Ok(CachedScheme {
            cfg: cfg.clone(),
            demands: demands.to_vec(),
            code,
        })
    }

    pub fn config(&self) -> &CacheConfig {
        &self.cfg
    }

    pub fn demands(&self) -> &[usize] {
        &self.demands
    }

    pub fn code(&self) -> &MultiPartCode {
        &self.code
    }

    /// Starts a wrap session. The encoder holds one block at a time.
    pub fn wrapper<'a>(
        &'a self,
        x: usize,
        key: PadKey,
        public: &'a mut PublicCache,
    ) -> Result<BlockWrapper<'a>> {
        let enc = self.code.encoder(x, key)?;
        let mut transcript = Transcript::new();
        let pad = enc.pad_slot()?;
        transcript.push(pad.label, pad.bits);
        Ok(BlockWrapper { enc, public, transcript })
    }
}

/// Buffer-limited private encoder: receives blocks one by one and appends
/// each emitted message to the public cache.
pub struct BlockWrapper<'a> {
    enc: SequentialEncoder<'a>,
    public: &'a mut PublicCache,
    transcript: Transcript,
}

impl BlockWrapper<'_> {
    pub fn push_block(&mut self, block: &Bitstring, draws: &mut dyn CouplingSource) -> Result<()> {
        let slot = self.enc.next_slot(block.to_uint() as usize, draws)?;
        self.public.append(slot.bits.clone());
        self.transcript.push(slot.label, slot.bits);
        Ok(())
    }

    /// Slots emitted so far.
    pub fn transcript(&self) -> &Transcript {
        &self.transcript
    }

    pub fn finish(self) -> Transcript {
        self.transcript
    }
}

/// Wraps a full block stream.
pub fn private_wrap(
    scheme: &CachedScheme,
    stream: &BlockStream,
    x: usize,
    key: PadKey,
    draws: &mut dyn CouplingSource,
    public: &mut PublicCache,
) -> Result<Transcript> {
    if stream.blocks.len() != scheme.cfg.q() {
        return Err(Error::Config(format!(
            "stream has {} blocks, expected {}",
            stream.blocks.len(),
            scheme.cfg.q()
        )));
    }
    let mut w = scheme.wrapper(x, key, public)?;
    for b in &stream.blocks {
        w.push_block(b, draws)?;
    }
    Ok(w.finish())
}

/// Recovers user `k`'s demanded file from the transcript, its cache and
/// the key.
pub fn user_decode(
    scheme: &CachedScheme,
    k: usize,
    t: &Transcript,
    cache: &UserCache,
    key: PadKey,
) -> Result<usize> {
    let cfg = &scheme.cfg;
    if k >= cfg.k || cache.user != k {
        return Err(Error::Config(format!("cache does not belong to user {}", k + 1)));
    }
    let (_, blocks) = scheme.code.decode(t, key)?;
    let gamma_rank: BTreeMap<Vec<usize>, usize> = subsets(cfg.k, cfg.p + 1)
        .into_iter()
        .enumerate()
        .map(|(i, s)| (s, i))
        .collect();
    let want = scheme.demands[k];
    let lookup = |file: usize, subset: &[usize]| -> Result<&Bitstring> {
        let idx = SubfileIndex { file, subset: subset.to_vec() };
        cache
            .entries
            .get(&idx)
            .ok_or_else(|| Error::Undecodable(format!("user {} lacks subfile {idx}", k + 1)))
    };
    let mut parts = Vec::with_capacity(cfg.subfiles());
    for omega in subsets(cfg.k, cfg.p) {
        if omega.contains(&k) {
            parts.push(lookup(want, &omega)?.clone());
            continue;
        }
        let mut gamma = omega.clone();
        gamma.push(k);
        gamma.sort_unstable();
        let block = blocks[gamma_rank[&gamma]];
        let mut acc = Bitstring::from_uint(block as u64, cfg.block_bits());
        for &j in gamma.iter().filter(|&&j| j != k) {
            let rest: Vec<usize> = gamma.iter().copied().filter(|&i| i != j).collect();
            acc = acc.xor(lookup(scheme.demands[j], &rest)?);
        }
        parts.push(acc);
    }
    Ok(join_file(&parts))
}

/// Cardinality bound over the `Q` blocks, each of `2^{F / C(K,p)}` symbols.
pub fn cache_length_bound(cfg: &CacheConfig, x_size: usize) -> u64 {
    let sizes = vec![BigUint::one() << cfg.block_bits(); cfg.q()];
    upper_bound_cardinality_big(x_size, &sizes)
}

/// Exact joint of the adversary's view (transcript followed by the public
/// cache log), `X` and the key, over every outcome.
pub fn adversary_view_distribution(scheme: &CachedScheme, limit: u128) -> Result<TranscriptDistribution> {
    let code = &scheme.code;
    let outcomes = code.outcomes(limit)?;
    let t = code.key_size();
    let needed = outcomes.len() as u128 * t as u128;
    if needed > limit {
        return Err(Error::LimitExceeded { needed, limit });
    }
    let w_prob = Rational::new(1.into(), t.into());
    let block_bits = scheme.cfg.block_bits();
    let mut entries = Vec::new();
    for o in outcomes {
        let stream = BlockStream {
            subsets: subsets(scheme.cfg.k, scheme.cfg.p + 1),
            blocks: o
                .targets
                .iter()
                .map(|&b| Bitstring::from_uint(b as u64, block_bits))
                .collect(),
        };
        for key in PadKey::all(t) {
            let mut public = PublicCache::new();
            let mut draws = ForcedCoupling::new(o.aux.clone());
            let tr = private_wrap(scheme, &stream, o.x, key, &mut draws, &mut public)?;
            let mut view = tr.clone();
            for (i, bits) in public.entries().iter().enumerate() {
                view.push(SlotLabel::Block(i as u32), bits.clone());
            }
            entries.push((view, o.x, key.value(), &o.prob * &w_prob));
        }
    }
    TranscriptDistribution::from_weighted(code.private_size(), t, entries)
}

/// Bit bookkeeping: each cache holds `M F` bits, subfiles tile a file, and
/// every subfile a user lacks travels in one of the `Q` blocks.
pub fn accounting_holds(cfg: &CacheConfig) -> bool {
    let block = cfg.block_bits() as usize;
    let f = cfg.f as usize;
    let cached = binomial(cfg.k - 1, cfg.p - 1);
    let missing = binomial(cfg.k - 1, cfg.p);
    Rational::from_integer(cfg.cache_bits().into()) == &cfg.m * Rational::from_integer(f.into())
        && cfg.subfiles() * block == f
        && cached + missing == cfg.subfiles()
        && missing <= cfg.q()
}
