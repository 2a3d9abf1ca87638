//! Achievable and converse length bounds, and the Bernoulli-masked file
//! family where they can be compared in closed form.

use num::{BigUint, One, Signed, ToPrimitive};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::frl::SequentialChain;
use crate::prob::{ceil_bits, ceil_log2, Alphabet, JointDist, Rational};

/// Auxiliary alphabet caps: `cap_i = |X| * cap_1 * .. * cap_{i-1} * (|Y_i| - 1) + 1`.
pub fn aux_caps(x_size: usize, target_sizes: &[BigUint]) -> Vec<BigUint> {
    let x = BigUint::from(x_size);
    let mut product = BigUint::one();
    let mut caps = Vec::with_capacity(target_sizes.len());
    for y in target_sizes {
        let cap = &x * &product * (y - BigUint::one()) + BigUint::one();
        product *= &cap;
        caps.push(cap);
    }
    caps
}

/// `ceil(log2 n)` for `n >= 1`.
pub fn ceil_log2_big(n: &BigUint) -> u64 {
    if n <= &BigUint::one() {
        0
    } else {
        (n - BigUint::one()).bits()
    }
}

/// `sum_i ceil(log2 cap_i) + ceil(log2 |X|)`.
pub fn upper_bound_cardinality_big(x_size: usize, target_sizes: &[BigUint]) -> u64 {
    aux_caps(x_size, target_sizes)
        .iter()
        .map(ceil_log2_big)
        .sum::<u64>()
        + u64::from(ceil_log2(x_size as u128))
}

pub fn upper_bound_cardinality(x_size: usize, target_sizes: &[usize]) -> u64 {
    let sizes: Vec<BigUint> = target_sizes.iter().map(|&s| BigUint::from(s)).collect();
    upper_bound_cardinality_big(x_size, &sizes)
}

/// `sum_i ceil(H(U_i)) + ceil(log2 |X|)` using the entropies of the
/// constructed auxiliaries. These only upper-bound the minimal entropies,
/// so the result is an estimate.
pub fn upper_bound_entropy_estimate(chain: &SequentialChain) -> Result<u64> {
    let x = chain.joint().var(chain.private())?.size();
    Ok(chain
        .stages()
        .iter()
        .map(|s| ceil_bits(s.mechanism().entropy()))
        .sum::<u64>()
        + u64::from(ceil_log2(x as u128)))
}

/// `max_x H(targets | X = x)` over symbols with positive mass.
pub fn lower_bound(joint: &JointDist, private: &str, targets: &[&str]) -> Result<f64> {
    let mut keep = vec![private];
    keep.extend(targets);
    let m = joint.marginalize(&keep)?;
    let px = m.marginal_vector(private)?;
    let mut best = 0.0f64;
    for (x, p) in px.iter().enumerate() {
        if p.is_positive() {
            best = best.max(m.condition(private, x)?.entropy());
        }
    }
    Ok(best)
}

/// Parameters of the masked family: `X ~ Bern(p)` and every file bit is
/// `Z AND X` with `Z` a fair coin independent of everything else.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Example1Params {
    #[serde(serialize_with = "ser_ratio")]
    pub p: Rational,
    pub n: usize,
    pub k: usize,
    pub f: u32,
}

fn ser_ratio<S: serde::Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(r)
}

impl Example1Params {
    pub fn validate(&self) -> Result<()> {
        let zero = Rational::from_integer(0.into());
        if self.p <= zero || self.p >= Rational::one() {
            return Err(Error::Config(format!("p = {} must lie strictly between 0 and 1", self.p)));
        }
        if self.n == 0 || self.k == 0 || self.f == 0 {
            return Err(Error::Config("N, K and F must be positive".into()));
        }
        if self.k > self.n {
            return Err(Error::Config(format!("K = {} exceeds N = {}", self.k, self.n)));
        }
        Ok(())
    }
}

/// Joint law of `(X, Y1, .., YN)`, each file an `F`-bit integer.
pub fn example1_build(params: &Example1Params, limit: u128) -> Result<JointDist> {
    params.validate()?;
    let total_bits = params.n as u128 * u128::from(params.f);
    if total_bits >= 64 || (1u128 << total_bits) + 1 > limit {
        return Err(Error::LimitExceeded {
            needed: 1u128.checked_shl(total_bits as u32).unwrap_or(u128::MAX),
            limit,
        });
    }
    let count = 1usize << total_bits;
    let mut vars = vec![Alphabet::new("X", 2)?];
    for i in 0..params.n {
        vars.push(Alphabet::file(format!("Y{}", i + 1), params.f)?);
    }
    let mask = (1usize << params.f) - 1;
    let cell = &params.p / Rational::from_integer(count.into());
    let mut entries = vec![(vec![0; params.n + 1], Rational::one() - &params.p)];
    for z in 0..count {
        // File 1 occupies the most significant bits of z.
        let mut t = vec![1];
        t.extend((0..params.n).map(|i| (z >> ((params.n - 1 - i) * params.f as usize)) & mask));
        entries.push((t, cell.clone()));
    }
    JointDist::new(vars, entries)
}

/// Cardinality bound over `K * F`, for `|X| = 2` and files of `F` bits.
pub fn example1_ratio(k: usize, f: u32) -> f64 {
    let y = BigUint::one() << f;
    let sizes = vec![y; k];
    let num = upper_bound_cardinality_big(2, &sizes);
    num as f64 / (k as f64 * f64::from(f))
}

/// Bounds for one demand vector, with the measured length when available.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundReport {
    pub lower: f64,
    pub upper_cardinality: u64,
    /// Built from constructed auxiliaries rather than minimal ones.
    pub upper_entropy_estimate: Option<u64>,
    pub measured: Option<f64>,
}

impl BoundReport {
    /// `lower <= measured <= upper_cardinality`, with slack `tol` on both
    /// sides. True when nothing was measured.
    pub fn sandwich_holds(&self, tol: f64) -> bool {
        self.measured.is_none_or(|m| {
            self.lower <= m + tol && m <= self.upper_cardinality.to_f64().unwrap_or(f64::MAX) + tol
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frl::OrderingPolicy;
    use crate::prob::ratio;

    fn params(p: Rational, n: usize, k: usize, f: u32) -> Example1Params {
        Example1Params { p, n, k, f }
    }

    #[test]
    fn cardinality_examples() {
        assert_eq!(upper_bound_cardinality(2, &[2]), 3);
        assert_eq!(upper_bound_cardinality(2, &[2, 2]), 6);
        let caps = aux_caps(2, &[BigUint::from(2u32), BigUint::from(2u32)]);
        assert_eq!(caps, vec![BigUint::from(3u32), BigUint::from(7u32)]);
        assert_eq!(upper_bound_cardinality(5, &[1, 1, 1]), 3);
        assert_eq!(upper_bound_cardinality(1, &[]), 0);
    }

    #[test]
    fn ceil_log2_big_matches_small() {
        for n in 1u32..300 {
            assert_eq!(ceil_log2_big(&BigUint::from(n)), u64::from(ceil_log2(n.into())));
        }
    }

    #[test]
    fn entropy_estimate_examples() {
        let base = crate::testutil::designed();
        let chain = SequentialChain::new(&base, "X")
            .unwrap()
            .extend(&base, "Y", &OrderingPolicy::canonical())
            .unwrap();
        assert_eq!(upper_bound_entropy_estimate(&chain).unwrap(), 3);

        let vars = vec![Alphabet::new("X", 2).unwrap(), Alphabet::new("Y", 2).unwrap()];
        let det = JointDist::new(vars, [(vec![0, 1], ratio(1, 2)), (vec![1, 0], ratio(1, 2))]).unwrap();
        let chain = SequentialChain::new(&det, "X")
            .unwrap()
            .extend(&det, "Y", &OrderingPolicy::canonical())
            .unwrap();
        assert_eq!(upper_bound_entropy_estimate(&chain).unwrap(), 1);
    }

    #[test]
    fn lower_bound_examples() {
        for (k, f) in [(1, 1), (1, 2), (2, 1), (2, 2)] {
            let d = example1_build(&params(ratio(1, 2), 2, k, f), 1 << 20).unwrap();
            let targets: Vec<String> = (1..=k).map(|i| format!("Y{i}")).collect();
            let refs: Vec<&str> = targets.iter().map(String::as_str).collect();
            assert_eq!(lower_bound(&d, "X", &refs).unwrap(), (k as u32 * f) as f64);
        }
        let vars = vec![
            Alphabet::new("X", 2).unwrap(),
            Alphabet::new("Y1", 2).unwrap(),
            Alphabet::new("Y2", 2).unwrap(),
        ];
        let iid = JointDist::new(
            vars,
            (0..8).map(|i| (vec![i >> 2, (i >> 1) & 1, i & 1], ratio(1, 8))),
        )
        .unwrap();
        assert_eq!(lower_bound(&iid, "X", &["Y1", "Y2"]).unwrap(), 2.0);
        let det = JointDist::new(
            vec![Alphabet::new("X", 2).unwrap(), Alphabet::new("Y", 2).unwrap()],
            [(vec![0, 0], ratio(1, 3)), (vec![1, 1], ratio(2, 3))],
        )
        .unwrap();
        assert_eq!(lower_bound(&det, "X", &["Y"]).unwrap(), 0.0);
    }

    #[test]
    fn example1_family() {
        let d = example1_build(&params(ratio(1, 2), 1, 1, 1), 100).unwrap();
        assert_eq!(d.marginal_vector("Y1").unwrap()[1], ratio(1, 4));

        let d = example1_build(&params(ratio(1, 4), 2, 2, 2), 100).unwrap();
        let zero = d.condition("X", 0).unwrap();
        assert_eq!(zero.support_len(), 1);
        assert_eq!(zero.prob(&[0, 0]), ratio(1, 1));
        let one = d.condition("X", 1).unwrap();
        assert_eq!(one.support_len(), 16);
        assert!(one.iter().all(|(_, p)| *p == ratio(1, 16)));

        assert!(example1_build(&params(ratio(1, 2), 3, 1, 4), 100).is_err());
        assert!(example1_build(&params(ratio(1, 1), 1, 1, 1), 100).is_err());
        assert!(example1_build(&params(ratio(1, 2), 1, 2, 1), 100).is_err());
    }

    #[test]
    fn ratio_values() {
        assert_eq!(example1_ratio(2, 1), 3.0);
        assert_eq!(example1_ratio(2, 32), 100.0 / 64.0);
        assert_eq!(example1_ratio(2, 256), 772.0 / 512.0);
        assert!((example1_ratio(1, 64) - 1.0).abs() < 0.05);
        for f in 2..64 {
            assert!(example1_ratio(2, f + 1) <= example1_ratio(2, f));
        }
    }

    #[test]
    fn sandwich() {
        let r = BoundReport {
            lower: 1.0,
            upper_cardinality: 3,
            upper_entropy_estimate: None,
            measured: Some(3.0),
        };
        assert!(r.sandwich_holds(1e-9));
        assert!(!BoundReport { measured: Some(0.5), ..r.clone() }.sandwich_holds(1e-9));
        assert!(BoundReport { measured: None, ..r }.sandwich_holds(0.0));
    }
}
