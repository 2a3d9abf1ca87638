use std::collections::{BTreeMap, BTreeSet};

use num::{One, Signed, Zero};

use super::{entropy_bits, to_f64, Alphabet, Rational};
use crate::error::{Error, Result};

/// Exact joint distribution over an ordered tuple of finite-alphabet
/// variables.
///
/// Only positive entries are stored. Variables are addressed by name.
#[derive(Clone, Debug, PartialEq)]
pub struct JointDist {
    vars: Vec<Alphabet>,
    table: BTreeMap<Vec<usize>, Rational>,
}

impl JointDist {
    /// Builds a distribution from `(tuple, probability)` entries.
    ///
    /// Repeated tuples are summed and zero entries dropped. Fails if a tuple
    /// has the wrong arity, a symbol is out of range, an entry is negative or
    /// the total is not exactly 1.
    pub fn new(
        vars: Vec<Alphabet>,
        entries: impl IntoIterator<Item = (Vec<usize>, Rational)>,
    ) -> Result<Self> {
        check_names(&vars)?;
        let mut table: BTreeMap<Vec<usize>, Rational> = BTreeMap::new();
        for (tuple, p) in entries {
            if tuple.len() != vars.len() {
                return Err(Error::InvalidDistribution(format!(
                    "tuple {tuple:?} has {} symbols, expected {}",
                    tuple.len(),
                    vars.len()
                )));
            }
            for (s, a) in tuple.iter().zip(&vars) {
                a.check(*s)?;
            }
            if p.is_negative() {
                return Err(Error::InvalidDistribution(format!(
                    "negative probability {p} at {tuple:?}"
                )));
            }
            *table.entry(tuple).or_insert_with(Rational::zero) += p;
        }
        table.retain(|_, p| !p.is_zero());
        let total: Rational = table.values().sum();
        if !total.is_one() {
            return Err(Error::InvalidDistribution(format!(
                "entries sum to {total}, not 1"
            )));
        }
        Ok(JointDist { vars, table })
    }

    /// Single-variable distribution from a full probability vector.
    pub fn from_marginal(alphabet: Alphabet, probs: &[Rational]) -> Result<Self> {
        if probs.len() != alphabet.size() {
            return Err(Error::InvalidDistribution(format!(
                "marginal has {} entries, alphabet `{}` has {}",
                probs.len(),
                alphabet.name(),
                alphabet.size()
            )));
        }
        JointDist::new(
            vec![alphabet],
            probs.iter().enumerate().map(|(s, p)| (vec![s], p.clone())),
        )
    }

    pub fn uniform(alphabet: Alphabet) -> Self {
        let n = alphabet.size();
        let p = Rational::new(1.into(), n.into());
        JointDist {
            table: (0..n).map(|s| (vec![s], p.clone())).collect(),
            vars: vec![alphabet],
        }
    }

    pub fn point_mass(vars: Vec<Alphabet>, tuple: Vec<usize>) -> Result<Self> {
        JointDist::new(vars, [(tuple, Rational::one())])
    }

    fn from_table(vars: Vec<Alphabet>, table: BTreeMap<Vec<usize>, Rational>) -> Self {
        debug_assert!(table.values().sum::<Rational>().is_one());
        JointDist { vars, table }
    }

    pub fn vars(&self) -> &[Alphabet] {
        &self.vars
    }

    pub fn var_names(&self) -> Vec<&str> {
        self.vars.iter().map(Alphabet::name).collect()
    }

    pub fn has_var(&self, name: &str) -> bool {
        self.vars.iter().any(|a| a.name() == name)
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.vars
            .iter()
            .position(|a| a.name() == name)
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))
    }

    pub fn var(&self, name: &str) -> Result<&Alphabet> {
        Ok(&self.vars[self.index_of(name)?])
    }

    /// Positive-probability entries in lexicographic tuple order.
    pub fn iter(&self) -> impl Iterator<Item = (&[usize], &Rational)> {
        self.table.iter().map(|(k, v)| (k.as_slice(), v))
    }

    pub fn support_len(&self) -> usize {
        self.table.len()
    }

    pub fn prob(&self, tuple: &[usize]) -> Rational {
        self.table.get(tuple).cloned().unwrap_or_else(Rational::zero)
    }

    /// Full marginal vector of one variable, including zero entries.
    pub fn marginal_vector(&self, name: &str) -> Result<Vec<Rational>> {
        let i = self.index_of(name)?;
        let mut out = vec![Rational::zero(); self.vars[i].size()];
        for (t, p) in &self.table {
            out[t[i]] += p;
        }
        Ok(out)
    }

    fn indices(&self, names: &[&str]) -> Result<Vec<usize>> {
        let mut seen = BTreeSet::new();
        names
            .iter()
            .map(|n| {
                if !seen.insert(*n) {
                    return Err(Error::DuplicateVariable(n.to_string()));
                }
                self.index_of(n)
            })
            .collect()
    }

    fn project(&self, idx: &[usize]) -> BTreeMap<Vec<usize>, Rational> {
        let mut out: BTreeMap<Vec<usize>, Rational> = BTreeMap::new();
        for (t, p) in &self.table {
            let key: Vec<usize> = idx.iter().map(|&i| t[i]).collect();
            *out.entry(key).or_insert_with(Rational::zero) += p;
        }
        out
    }

    /// Marginal over `keep`, with variables in the order given.
    pub fn marginalize(&self, keep: &[&str]) -> Result<JointDist> {
        if keep.is_empty() {
            return Err(Error::InvalidDistribution(
                "cannot marginalize onto an empty variable set".into(),
            ));
        }
        let idx = self.indices(keep)?;
        let vars = idx.iter().map(|&i| self.vars[i].clone()).collect();
        Ok(JointDist::from_table(vars, self.project(&idx)))
    }

    /// Conditional distribution of the remaining variables given
    /// `var = symbol`. The conditioned variable is removed.
    pub fn condition(&self, var: &str, symbol: usize) -> Result<JointDist> {
        let i = self.index_of(var)?;
        self.vars[i].check(symbol)?;
        if self.vars.len() == 1 {
            return Err(Error::InvalidDistribution(format!(
                "conditioning on `{var}` leaves no variables"
            )));
        }
        let mass: Rational = self
            .table
            .iter()
            .filter(|(t, _)| t[i] == symbol)
            .map(|(_, p)| p)
            .sum();
        if mass.is_zero() {
            return Err(Error::ZeroProbability {
                var: var.to_string(),
                symbol,
            });
        }
        let mut table = BTreeMap::new();
        for (t, p) in self.table.iter().filter(|(t, _)| t[i] == symbol) {
            let mut rest = t.clone();
            rest.remove(i);
            table.insert(rest, p / &mass);
        }
        let mut vars = self.vars.clone();
        vars.remove(i);
        Ok(JointDist::from_table(vars, table))
    }

    /// Joint entropy of all variables, in bits.
    pub fn entropy(&self) -> f64 {
        entropy_bits(self.table.values())
    }

    fn disjoint(&self, a: &[&str], b: &[&str]) -> Result<(Vec<usize>, Vec<usize>)> {
        let ia = self.indices(a)?;
        let ib = self.indices(b)?;
        if let Some(n) = a.iter().find(|n| b.contains(n)) {
            return Err(Error::DuplicateVariable(n.to_string()));
        }
        Ok((ia, ib))
    }

    /// `H(target | given) = sum_g P(g) H(target | given = g)`, in bits.
    pub fn conditional_entropy(&self, target: &[&str], given: &[&str]) -> Result<f64> {
        let (it, ig) = self.disjoint(target, given)?;
        let mut joint = it.clone();
        joint.extend(&ig);
        let ptg = self.project(&joint);
        let pg = self.project(&ig);
        let h: f64 = ptg
            .iter()
            .map(|(k, p)| {
                let cond = p / &pg[&k[it.len()..]];
                -to_f64(p) * to_f64(&cond).log2()
            })
            .sum();
        Ok(h.max(0.0))
    }

    /// `I(a; b) = H(a) + H(b) - H(a, b)`, clamped at zero.
    pub fn mutual_information(&self, a: &[&str], b: &[&str]) -> Result<f64> {
        let (ia, ib) = self.disjoint(a, b)?;
        if ia.is_empty() || ib.is_empty() {
            return Ok(0.0);
        }
        let mut iab = ia.clone();
        iab.extend(&ib);
        let ha = entropy_bits(self.project(&ia).values());
        let hb = entropy_bits(self.project(&ib).values());
        let hab = entropy_bits(self.project(&iab).values());
        Ok((ha + hb - hab).max(0.0))
    }

    /// Exact test of `P(a, b) = P(a) P(b)` on every cell of the product of
    /// the marginal supports.
    pub fn exact_independent(&self, a: &[&str], b: &[&str]) -> Result<bool> {
        let (ia, ib) = self.disjoint(a, b)?;
        if ia.is_empty() || ib.is_empty() {
            return Ok(true);
        }
        let mut iab = ia.clone();
        iab.extend(&ib);
        let pa = self.project(&ia);
        let pb = self.project(&ib);
        let pab = self.project(&iab);
        if pab.len() != pa.len() * pb.len() {
            return Ok(false);
        }
        let mut key = Vec::with_capacity(iab.len());
        for (ka, va) in &pa {
            for (kb, vb) in &pb {
                key.clear();
                key.extend_from_slice(ka);
                key.extend_from_slice(kb);
                match pab.get(&key) {
                    Some(v) if *v == va * vb => {}
                    _ => return Ok(false),
                }
            }
        }
        Ok(true)
    }

    /// True iff every positive-probability value of `given` determines a
    /// single value of `target`.
    pub fn is_function_of(&self, target: &[&str], given: &[&str]) -> Result<bool> {
        let (it, ig) = self.disjoint(target, given)?;
        let mut seen: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
        for t in self.table.keys() {
            let g: Vec<usize> = ig.iter().map(|&i| t[i]).collect();
            let v: Vec<usize> = it.iter().map(|&i| t[i]).collect();
            match seen.get(&g) {
                Some(prev) if *prev != v => return Ok(false),
                Some(_) => {}
                None => {
                    seen.insert(g, v);
                }
            }
        }
        Ok(true)
    }

    /// Appends a fresh variable distributed as `dist`, independent of all
    /// existing variables.
    pub fn product_extend(&self, fresh: Alphabet, dist: &[Rational]) -> Result<JointDist> {
        if self.has_var(fresh.name()) {
            return Err(Error::DuplicateVariable(fresh.name().to_string()));
        }
        let marginal = JointDist::from_marginal(fresh.clone(), dist)?;
        let mut table = BTreeMap::new();
        for (t, p) in &self.table {
            for (s, q) in &marginal.table {
                let mut k = t.clone();
                k.push(s[0]);
                table.insert(k, p * q);
            }
        }
        let mut vars = self.vars.clone();
        vars.push(fresh);
        Ok(JointDist::from_table(vars, table))
    }

    /// Appends `new_var` from `base`, drawn from `P_base(new_var | shared)`
    /// where `shared` are the variables present in both distributions.
    ///
    /// Variables of `self` that are absent from `base` end up conditionally
    /// independent of `new_var` given the shared ones.
    pub fn extend_by_conditional(&self, base: &JointDist, new_var: &str) -> Result<JointDist> {
        if self.has_var(new_var) {
            return Err(Error::DuplicateVariable(new_var.to_string()));
        }
        let new_alpha = base.var(new_var)?.clone();
        let mut self_idx = Vec::new();
        let mut base_names = Vec::new();
        for (i, a) in self.vars.iter().enumerate() {
            if let Ok(b) = base.var(a.name()) {
                if b.size() != a.size() {
                    return Err(Error::InvalidDistribution(format!(
                        "variable `{}` has size {} here but {} in the base distribution",
                        a.name(),
                        a.size(),
                        b.size()
                    )));
                }
                self_idx.push(i);
                base_names.push(a.name());
            }
        }
        let shared_idx = base.indices(&base_names)?;
        let mut with_new = shared_idx.clone();
        with_new.push(base.index_of(new_var)?);

        let p_shared = base.project(&shared_idx);
        let mut cond: BTreeMap<Vec<usize>, Vec<(usize, Rational)>> = BTreeMap::new();
        for (k, p) in base.project(&with_new) {
            let (key, y) = k.split_at(k.len() - 1);
            let c = p / &p_shared[key];
            cond.entry(key.to_vec()).or_default().push((y[0], c));
        }

        let mut table = BTreeMap::new();
        for (t, p) in &self.table {
            let key: Vec<usize> = self_idx.iter().map(|&i| t[i]).collect();
            let options = cond.get(&key).ok_or_else(|| {
                Error::InvalidDistribution(format!(
                    "shared values {key:?} have positive mass here but zero in the base distribution"
                ))
            })?;
            for (y, c) in options {
                let mut k = t.clone();
                k.push(*y);
                table.insert(k, p * c);
            }
        }
        let mut vars = self.vars.clone();
        vars.push(new_alpha);
        Ok(JointDist::from_table(vars, table))
    }

    /// Image of the distribution under a deterministic map of tuples.
    pub fn pushforward(
        &self,
        vars: Vec<Alphabet>,
        mut f: impl FnMut(&[usize]) -> Vec<usize>,
    ) -> Result<JointDist> {
        JointDist::new(vars, self.table.iter().map(|(t, p)| (f(t), p.clone())))
    }
}

fn check_names(vars: &[Alphabet]) -> Result<()> {
    let mut seen = BTreeSet::new();
    for a in vars {
        if !seen.insert(a.name()) {
            return Err(Error::DuplicateVariable(a.name().to_string()));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::prob::ratio;

    fn abc(sizes: &[usize]) -> Vec<Alphabet> {
        ["A", "B", "C", "D"]
            .iter()
            .zip(sizes)
            .map(|(n, s)| Alphabet::new(*n, *s).unwrap())
            .collect()
    }

    fn uniform_pair() -> JointDist {
        JointDist::new(
            abc(&[2, 2]),
            (0..2).flat_map(|a| (0..2).map(move |b| (vec![a, b], ratio(1, 4)))),
        )
        .unwrap()
    }

    fn identical_pair() -> JointDist {
        JointDist::new(
            abc(&[2, 2]),
            [(vec![0, 0], ratio(1, 2)), (vec![1, 1], ratio(1, 2))],
        )
        .unwrap()
    }

    #[test]
    fn rejects_bad_tables() {
        assert!(JointDist::new(abc(&[2]), [(vec![0], ratio(99, 100))]).is_err());
        assert!(JointDist::new(abc(&[2]), [(vec![2], ratio(1, 1))]).is_err());
        assert!(JointDist::new(abc(&[2]), [(vec![0, 1], ratio(1, 1))]).is_err());
        assert!(JointDist::new(
            abc(&[2]),
            [(vec![0], ratio(3, 2)), (vec![1], ratio(-1, 2))]
        )
        .is_err());
        let dup = vec![Alphabet::new("A", 2).unwrap(), Alphabet::new("A", 2).unwrap()];
        assert!(JointDist::new(dup, [(vec![0, 0], ratio(1, 1))]).is_err());
    }

    #[test]
    fn marginalize_examples() {
        let m = uniform_pair().marginalize(&["A"]).unwrap();
        assert_eq!(m.prob(&[0]), ratio(1, 2));
        assert_eq!(m.prob(&[1]), ratio(1, 2));

        let pm = JointDist::point_mass(abc(&[2, 2]), vec![1, 0]).unwrap();
        let m = pm.marginalize(&["B"]).unwrap();
        assert_eq!(m.prob(&[0]), ratio(1, 1));
        assert_eq!(m.support_len(), 1);

        assert!(matches!(
            uniform_pair().marginalize(&["Z"]),
            Err(Error::UnknownVariable(_))
        ));
    }

    #[test]
    fn marginalize_reorders() {
        let d = JointDist::new(
            abc(&[2, 3]),
            [(vec![0, 2], ratio(1, 3)), (vec![1, 0], ratio(2, 3))],
        )
        .unwrap();
        let m = d.marginalize(&["B", "A"]).unwrap();
        assert_eq!(m.var_names(), vec!["B", "A"]);
        assert_eq!(m.prob(&[2, 0]), ratio(1, 3));
    }

    #[test]
    fn condition_examples() {
        let c = uniform_pair().condition("A", 0).unwrap();
        assert_eq!(c.var_names(), vec!["B"]);
        assert_eq!(c.prob(&[0]), ratio(1, 2));
        assert_eq!(c.prob(&[1]), ratio(1, 2));

        let pm = JointDist::point_mass(abc(&[2, 2]), vec![1, 0]).unwrap();
        assert!(matches!(
            pm.condition("A", 0),
            Err(Error::ZeroProbability { .. })
        ));
    }

    #[test]
    fn conditional_entropy_examples() {
        assert!((uniform_pair().conditional_entropy(&["B"], &["A"]).unwrap() - 1.0).abs() < 1e-12);
        assert_eq!(
            identical_pair().conditional_entropy(&["B"], &["A"]).unwrap(),
            0.0
        );
        assert!((uniform_pair().conditional_entropy(&["A", "B"], &[]).unwrap() - 2.0).abs() < 1e-12);
    }

    #[test]
    fn mutual_information_examples() {
        assert_eq!(uniform_pair().mutual_information(&["A"], &["B"]).unwrap(), 0.0);
        assert!((identical_pair().mutual_information(&["A"], &["B"]).unwrap() - 1.0).abs() < 1e-12);
        assert!(uniform_pair().mutual_information(&["A"], &["A"]).is_err());
    }

    #[test]
    fn independence_examples() {
        assert!(uniform_pair().exact_independent(&["A"], &["B"]).unwrap());
        assert!(!identical_pair().exact_independent(&["A"], &["B"]).unwrap());
        // Same support as a product, unequal cell masses.
        let skew = JointDist::new(
            abc(&[2, 2]),
            [
                (vec![0, 0], ratio(1, 8)),
                (vec![0, 1], ratio(3, 8)),
                (vec![1, 0], ratio(3, 8)),
                (vec![1, 1], ratio(1, 8)),
            ],
        )
        .unwrap();
        assert!(!skew.exact_independent(&["A"], &["B"]).unwrap());
    }

    #[test]
    fn function_of_examples() {
        assert!(identical_pair().is_function_of(&["B"], &["A"]).unwrap());
        assert!(!uniform_pair().is_function_of(&["B"], &["A"]).unwrap());
    }

    #[test]
    fn product_extend_examples() {
        let w = Alphabet::new("W", 2).unwrap();
        let d = identical_pair()
            .product_extend(w, &[ratio(1, 2), ratio(1, 2)])
            .unwrap();
        assert!(d.exact_independent(&["W"], &["A", "B"]).unwrap());
        assert_eq!(d.mutual_information(&["W"], &["A", "B"]).unwrap(), 0.0);

        let z = Alphabet::new("Z", 3).unwrap();
        let base = identical_pair();
        let d = base
            .product_extend(z, &[ratio(0, 1), ratio(1, 1), ratio(0, 1)])
            .unwrap();
        assert!((d.entropy() - base.entropy()).abs() < 1e-12);

        let dup = Alphabet::new("A", 2).unwrap();
        assert!(identical_pair().product_extend(dup, &[ratio(1, 1), ratio(0, 1)]).is_err());
    }

    #[test]
    fn extend_by_conditional_matches_base() {
        let base = JointDist::new(
            abc(&[2, 2, 2]),
            [
                (vec![0, 0, 0], ratio(1, 4)),
                (vec![0, 1, 1], ratio(1, 4)),
                (vec![1, 0, 1], ratio(1, 8)),
                (vec![1, 1, 0], ratio(3, 8)),
            ],
        )
        .unwrap();
        let start = base.marginalize(&["A", "B"]).unwrap();
        let full = start.extend_by_conditional(&base, "C").unwrap();
        assert_eq!(full, base);

        let a_only = base.marginalize(&["A"]).unwrap();
        let ac = a_only.extend_by_conditional(&base, "C").unwrap();
        assert_eq!(ac, base.marginalize(&["A", "C"]).unwrap());
    }

    #[test]
    fn pushforward_sums_collisions() {
        let d = uniform_pair();
        let xor = d
            .pushforward(vec![Alphabet::new("S", 2).unwrap()], |t| vec![t[0] ^ t[1]])
            .unwrap();
        assert_eq!(xor.prob(&[0]), ratio(1, 2));
    }
}
