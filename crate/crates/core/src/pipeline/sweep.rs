use serde::Serialize;

use super::distribution::{expected_length, leakage_audit, transcript_distribution, ExpectedLength, LeakageAudit};
use super::session::{Database, DemandVector, PrivateScheme, SessionConfig};
use crate::bounds::{lower_bound, upper_bound_cardinality, upper_bound_entropy_estimate, BoundReport};
use crate::code::CodeMode;
use crate::error::{Error, Result};

/// Exact audit of one demand vector.
#[derive(Clone, Debug, Serialize)]
pub struct DemandReport {
    pub demands: DemandVector,
    pub slot_sizes: Vec<usize>,
    pub length: ExpectedLength,
    pub leakage: LeakageAudit,
    pub bounds: BoundReport,
}

/// Builds the scheme for `cfg`, enumerates its transcript distribution and
/// evaluates every bound.
pub fn audit_demands(db: &Database, cfg: &SessionConfig, limit: u128) -> Result<DemandReport> {
    let scheme = PrivateScheme::build(db, cfg)?;
    let td = transcript_distribution(scheme.code(), limit)?;
    let length = expected_length(&td);
    let leakage = leakage_audit(&td)?;
    let names: Vec<&str> = cfg.demands.as_slice().iter().map(|&d| db.file_name(d)).collect();
    let chain = scheme.code().chain();
    let bounds = BoundReport {
        lower: lower_bound(db.joint(), db.private(), &names)?,
        upper_cardinality: upper_bound_cardinality(
            db.private_size(),
            &vec![db.file_size(); cfg.demands.len()],
        ),
        upper_entropy_estimate: Some(upper_bound_entropy_estimate(chain)?),
        measured: Some(length.max),
    };
    Ok(DemandReport {
        demands: cfg.demands.clone(),
        slot_sizes: chain.aux_sizes(),
        length,
        leakage,
        bounds,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct SweepTable {
    pub rows: Vec<DemandReport>,
    /// Row with the largest expected length; first such row on ties.
    pub worst: usize,
}

/// Audits every ordered choice of `k` distinct files.
pub fn worst_case_sweep(db: &Database, k: usize, mode: CodeMode, limit: u128) -> Result<SweepTable> {
    if k == 0 || k > db.n() {
        return Err(Error::Config(format!("K = {k} must lie in 1..={}", db.n())));
    }
    let count: u128 = (0..k).map(|i| (db.n() - i) as u128).product();
    if count > limit {
        return Err(Error::LimitExceeded { needed: count, limit });
    }
    let rows = DemandVector::all(db.n(), k)
        .into_iter()
        .map(|d| audit_demands(db, &SessionConfig::new(d, mode), limit))
        .collect::<Result<Vec<_>>>()?;
    let mut worst = 0;
    for (i, r) in rows.iter().enumerate() {
        if r.length.max > rows[worst].length.max {
            worst = i;
        }
    }
    Ok(SweepTable { rows, worst })
}
