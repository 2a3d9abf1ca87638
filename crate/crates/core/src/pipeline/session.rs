use rand::Rng;
use serde::Serialize;

use super::multipart::{CouplingSource, MultiPartCode};
use crate::code::{CodeMode, PadKey, SlotLabel, Transcript};
use crate::error::{Error, Result};
use crate::frl::OrderingPolicy;
use crate::prob::{to_f64, JointDist};

/// Joint law of a private variable and `N` equal-size files.
#[derive(Clone, Debug)]
pub struct Database {
    joint: JointDist,
    file_bits: u32,
}

impl Database {
    /// The first variable of `joint` is the private one; every other
    /// variable is a file. Files must share one power-of-two alphabet.
    pub fn new(joint: JointDist) -> Result<Self> {
        let vars = joint.vars();
        if vars.len() < 2 {
            return Err(Error::Config(
                "a database needs a private variable and at least one file".into(),
            ));
        }
        let size = vars[1].size();
        if !size.is_power_of_two() || vars[1..].iter().any(|a| a.size() != size) {
            return Err(Error::Config(
                "files must share one alphabet whose size is a power of two".into(),
            ));
        }
        Ok(Database {
            file_bits: size.trailing_zeros(),
            joint,
        })
    }

    pub fn joint(&self) -> &JointDist {
        &self.joint
    }

    pub fn private(&self) -> &str {
        self.joint.vars()[0].name()
    }

    pub fn private_size(&self) -> usize {
        self.joint.vars()[0].size()
    }

    /// Number of files.
    pub fn n(&self) -> usize {
        self.joint.vars().len() - 1
    }

    /// Bits per file.
    pub fn file_bits(&self) -> u32 {
        self.file_bits
    }

    pub fn file_size(&self) -> usize {
        1 << self.file_bits
    }

    /// Name of file `i` (zero-based).
    pub fn file_name(&self, i: usize) -> &str {
        self.joint.vars()[i + 1].name()
    }

    /// Draws one realization from the joint law.
    pub fn sample(&self, rng: &mut impl Rng) -> Realization {
        let mut r = rng.random::<f64>();
        let mut last = None;
        for (t, p) in self.joint.iter() {
            last = Some(t);
            r -= to_f64(p);
            if r < 0.0 {
                break;
            }
        }
        let t = last.expect("distribution has positive support");
        Realization {
            x: t[0],
            files: t[1..].to_vec(),
        }
    }
}

/// Private symbol and the contents of every file.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Realization {
    pub x: usize,
    pub files: Vec<usize>,
}

/// Zero-based indices of the requested files, in request order.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct DemandVector(Vec<usize>);

impl DemandVector {
    pub fn new(demands: Vec<usize>, n: usize) -> Result<Self> {
        if demands.is_empty() || demands.len() > n {
            return Err(Error::Config(format!(
                "need between 1 and {n} demands, got {}",
                demands.len()
            )));
        }
        for (i, &d) in demands.iter().enumerate() {
            if d >= n {
                return Err(Error::Config(format!("demand {} exceeds the {n} files", d + 1)));
            }
            if demands[..i].contains(&d) {
                return Err(Error::Config(format!("file {} is demanded twice", d + 1)));
            }
        }
        Ok(DemandVector(demands))
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Every ordered selection of `k` distinct files out of `n`, in
    /// lexicographic order.
    pub fn all(n: usize, k: usize) -> Vec<DemandVector> {
        use itertools::Itertools;
        (0..n).permutations(k).map(DemandVector).collect()
    }
}

impl std::fmt::Display for DemandVector {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let one_based: Vec<String> = self.0.iter().map(|d| (d + 1).to_string()).collect();
        write!(f, "({})", one_based.join(","))
    }
}

#[derive(Clone, Debug)]
pub struct SessionConfig {
    pub demands: DemandVector,
    pub mode: CodeMode,
    /// Key alphabet size; `None` uses the private alphabet size.
    pub key_size: Option<usize>,
    pub policy: OrderingPolicy,
}

impl SessionConfig {
    pub fn new(demands: DemandVector, mode: CodeMode) -> Self {
        SessionConfig {
            demands,
            mode,
            key_size: None,
            policy: OrderingPolicy::canonical(),
        }
    }
}

/// Private delivery scheme for one demand vector: a multi-part code whose
/// `i`-th stage targets file `d_i`.
#[derive(Clone, Debug)]
pub struct PrivateScheme {
    demands: DemandVector,
    code: MultiPartCode,
}

impl PrivateScheme {
    pub fn build(db: &Database, cfg: &SessionConfig) -> Result<Self> {
        for &d in cfg.demands.as_slice() {
            if d >= db.n() {
                return Err(Error::Config(format!("demand {} exceeds the {} files", d + 1, db.n())));
            }
        }
        let targets: Vec<String> = cfg
            .demands
            .as_slice()
            .iter()
            .map(|&d| db.file_name(d).to_string())
            .collect();
        let code = MultiPartCode::build(
            db.joint(),
            db.private(),
            &targets,
            cfg.mode,
            cfg.key_size.unwrap_or(db.private_size()),
            &cfg.policy,
            SlotLabel::Demand,
        )?;
        Ok(PrivateScheme {
            demands: cfg.demands.clone(),
            code,
        })
    }

    pub fn demands(&self) -> &DemandVector {
        &self.demands
    }

    pub fn code(&self) -> &MultiPartCode {
        &self.code
    }

    pub fn key_size(&self) -> usize {
        self.code.key_size()
    }
}

/// Encodes the demanded files of `realization`. Fails if the realization has
/// zero probability.
pub fn encode_session(
    db: &Database,
    realization: &Realization,
    scheme: &PrivateScheme,
    key: PadKey,
    draws: &mut dyn CouplingSource,
) -> Result<Transcript> {
    if realization.files.len() != db.n() {
        return Err(Error::Config(format!(
            "realization has {} files, database has {}",
            realization.files.len(),
            db.n()
        )));
    }
    let mut tuple = vec![realization.x];
    tuple.extend(&realization.files);
    if db.joint().prob(&tuple) == num::zero() {
        return Err(Error::Config(format!(
            "realization {tuple:?} lies outside the support"
        )));
    }
    let targets: Vec<usize> = scheme
        .demands
        .as_slice()
        .iter()
        .map(|&d| realization.files[d])
        .collect();
    scheme.code.encode(realization.x, &targets, key, draws)
}

/// Recovered private symbol and demanded files.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Decoded {
    pub x: usize,
    pub files: Vec<usize>,
}

pub fn decode_session(t: &Transcript, key: PadKey, scheme: &PrivateScheme) -> Result<Decoded> {
    let (x, files) = scheme.code.decode(t, key)?;
    Ok(Decoded { x, files })
}
