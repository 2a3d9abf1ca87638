use itertools::Itertools;
use num::BigUint;

use super::mechanism::{conditionals, layout, refinement, OrderingPolicy};
use crate::error::{Error, Result};
use crate::prob::{entropy_bits, JointDist, Rational};

/// Exhaustive search over segment orderings for the one minimizing `H(U)`.
///
/// Only the interval-construction family is explored, so the result is an
/// upper estimate of the true minimal auxiliary entropy. Ties keep the first
/// ordering in enumeration order (per-`x` permutations in lexicographic
/// order, earlier `x` varying slowest).
pub fn min_entropy_search(pxy: &JointDist, budget: u128) -> Result<(OrderingPolicy, f64)> {
    let (conds, _) = conditionals(pxy)?;
    let needed = conds
        .iter()
        .map(|(_, _, row)| factorial(row.len()))
        .fold(BigUint::from(1u32), |a, b| a * b);
    if needed > BigUint::from(budget) {
        return Err(Error::BudgetExceeded {
            needed: u128::try_from(&needed).unwrap_or(u128::MAX),
            budget,
        });
    }

    let per_x: Vec<Vec<Vec<usize>>> = conds
        .iter()
        .map(|(_, _, row)| {
            let support: Vec<usize> = row.iter().map(|(y, _)| *y).collect();
            let n = support.len();
            support.into_iter().permutations(n).collect()
        })
        .collect();

    let mut best: Option<(OrderingPolicy, f64)> = None;
    for combo in per_x.iter().map(|v| v.iter()).multi_cartesian_product() {
        let policy = conds
            .iter()
            .zip(combo)
            .fold(OrderingPolicy::canonical(), |p, ((x, _, _), order)| {
                p.with_order(*x, order.clone())
            });
        let h = ordering_entropy(&conds, &policy)?;
        if best.as_ref().is_none_or(|(_, b)| h < b - 1e-12) {
            best = Some((policy, h));
        }
    }
    best.ok_or_else(|| Error::InvalidDistribution("no private symbol has positive mass".into()))
}

fn ordering_entropy(
    conds: &[(usize, Rational, Vec<(usize, Rational)>)],
    policy: &OrderingPolicy,
) -> Result<f64> {
    let bounds = refinement(&layout(conds, policy)?);
    let lens: Vec<Rational> = bounds.windows(2).map(|w| &w[1] - &w[0]).collect();
    Ok(entropy_bits(&lens))
}

fn factorial(n: usize) -> BigUint {
    (1..=n).map(BigUint::from).fold(BigUint::from(1u32), |a, b| a * b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frl::frl_construct;
    use crate::prob::{ratio, Alphabet};

    fn two_by(ny: usize, rows: [&[i64]; 2], den: i64) -> JointDist {
        let vars = vec![Alphabet::new("X", 2).unwrap(), Alphabet::new("Y", ny).unwrap()];
        let entries = rows
            .iter()
            .enumerate()
            .flat_map(|(x, r)| r.iter().enumerate().map(move |(y, n)| (vec![x, y], ratio(*n, den))));
        JointDist::new(vars, entries).unwrap()
    }

    #[test]
    fn designed_instance_is_symmetric() {
        let d = two_by(2, [&[2, 2], &[1, 3]], 8);
        let (_, h) = min_entropy_search(&d, 100).unwrap();
        assert!((h - 1.5).abs() < 1e-12);
    }

    #[test]
    fn deterministic_target_is_zero() {
        let d = two_by(2, [&[1, 0], &[0, 1]], 2);
        let (_, h) = min_entropy_search(&d, 1).unwrap();
        assert_eq!(h, 0.0);
    }

    #[test]
    fn never_worse_than_canonical() {
        let d = two_by(3, [&[1, 2, 3], &[5, 1, 0]], 12);
        let canonical = frl_construct(&d, &OrderingPolicy::canonical()).unwrap().entropy();
        let (policy, h) = min_entropy_search(&d, 1000).unwrap();
        assert!(h <= canonical + 1e-12);
        let rebuilt = frl_construct(&d, &policy).unwrap();
        assert!((rebuilt.entropy() - h).abs() < 1e-12);
    }

    #[test]
    fn budget_is_enforced() {
        let d = two_by(3, [&[1, 1, 1], &[1, 1, 1]], 6);
        assert!(matches!(
            min_entropy_search(&d, 35),
            Err(Error::BudgetExceeded { needed: 36, .. })
        ));
        assert!(min_entropy_search(&d, 36).is_ok());
    }
}
