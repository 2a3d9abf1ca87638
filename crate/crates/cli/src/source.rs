use std::fs;
use std::path::Path;
use std::str::FromStr;

use seqpriv::bounds::{example1_build, Example1Params};
use seqpriv::pipeline::{Database, DemandVector};
use seqpriv::prob::{parse_dist, JointDist, Rational};
use seqpriv::{Error, Result};

use crate::SourceArgs;

pub fn parse_rational(s: &str) -> Result<Rational> {
    Rational::from_str(s.trim()).map_err(|_| Error::Config(format!("`{s}` is not a fraction like 1/2")))
}

pub fn load_dist(path: &Path) -> Result<JointDist> {
    let text = fs::read_to_string(path)?;
    parse_dist(&text)
}

/// Database plus a one-line description of where it came from.
pub fn load_database(args: &SourceArgs, limit: u128) -> Result<(Database, String)> {
    match &args.spec {
        Some(path) => Ok((Database::new(load_dist(path)?)?, format!("spec {}", path.display()))),
        None if args.example1 => {
            let params = Example1Params {
                p: parse_rational(&args.p)?,
                n: args.n,
                k: 1,
                f: args.f,
            };
            let db = Database::new(example1_build(&params, limit)?)?;
            Ok((db, format!("masked family p={} N={} F={}", params.p, args.n, args.f)))
        }
        None => Err(Error::Config("give either --spec PATH or --example1".into())),
    }
}

/// Converts 1-based command-line demands.
pub fn demands(one_based: &[usize], n: usize) -> Result<DemandVector> {
    let zero_based = one_based
        .iter()
        .map(|&d| {
            d.checked_sub(1)
                .ok_or_else(|| Error::Config("demands are numbered from 1".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    DemandVector::new(zero_based, n)
}
