//! Plain-text distribution files.
//!
//! ```text
//! # private attribute first, then the files
//! var X 2
//! var Y1 2
//! 0 0 = 1/4
//! 0 1 = 1/4
//! 1 0 = 1/8
//! 1 1 = 3/8
//! ```
//!
//! Every `var` line must precede the table. Each table line lists one symbol
//! per variable followed by `=` and a probability written `num/den` (or a
//! bare integer). Omitted tuples have probability zero; a tuple may appear
//! only once. Entries must sum to exactly 1.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use num::{BigInt, Signed, Zero};

use super::{Alphabet, JointDist, Rational};
use crate::error::{Error, Result};

pub fn parse_dist(text: &str) -> Result<JointDist> {
    let mut vars: Vec<Alphabet> = Vec::new();
    let mut entries = Vec::new();
    let mut seen = BTreeSet::new();

    for (n, raw) in text.lines().enumerate() {
        let line_no = n + 1;
        let err = |msg: String| Error::Parse { line: line_no, msg };
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix("var ") {
            if !entries.is_empty() {
                return Err(err("`var` declarations must precede table entries".into()));
            }
            let mut parts = rest.split_whitespace();
            let (Some(name), Some(size), None) = (parts.next(), parts.next(), parts.next()) else {
                return Err(err("expected `var <name> <size>`".into()));
            };
            let size: usize = size
                .parse()
                .map_err(|_| err(format!("bad alphabet size `{size}`")))?;
            let alpha = Alphabet::new(name, size).map_err(|e| err(e.to_string()))?;
            vars.push(alpha);
            continue;
        }

        let (lhs, rhs) = line
            .split_once('=')
            .ok_or_else(|| err("expected `<symbols> = <probability>`".into()))?;
        if vars.is_empty() {
            return Err(err("table entry before any `var` declaration".into()));
        }
        let tuple = lhs
            .split_whitespace()
            .map(|s| s.parse::<usize>().map_err(|_| err(format!("bad symbol `{s}`"))))
            .collect::<Result<Vec<_>>>()?;
        if tuple.len() != vars.len() {
            return Err(err(format!(
                "expected {} symbols, found {}",
                vars.len(),
                tuple.len()
            )));
        }
        for (s, a) in tuple.iter().zip(&vars) {
            a.check(*s).map_err(|e| err(e.to_string()))?;
        }
        let p = parse_rational(rhs.trim()).ok_or_else(|| err(format!("bad probability `{}`", rhs.trim())))?;
        if p.is_negative() {
            return Err(err("negative probability".into()));
        }
        if !seen.insert(tuple.clone()) {
            return Err(err(format!("duplicate entry for {tuple:?}")));
        }
        entries.push((tuple, p));
    }

    if vars.is_empty() {
        return Err(Error::Parse {
            line: 0,
            msg: "no variables declared".into(),
        });
    }
    JointDist::new(vars, entries)
}

fn parse_rational(s: &str) -> Option<Rational> {
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            (!d.is_zero()).then(|| Rational::new(n, d))
        }
        None => s.parse::<BigInt>().ok().map(Rational::from_integer),
    }
}

/// Writes `d` in the format accepted by [`parse_dist`].
pub fn render_dist(d: &JointDist) -> String {
    let mut out = String::new();
    for a in d.vars() {
        let _ = writeln!(out, "var {} {}", a.name(), a.size());
    }
    for (t, p) in d.iter() {
        let syms: Vec<String> = t.iter().map(usize::to_string).collect();
        let _ = writeln!(out, "{} = {}/{}", syms.join(" "), p.numer(), p.denom());
    }
    out
}
