use std::collections::BTreeMap;

use num::BigUint;

use super::mechanism::{cardinality_bound, frl_construct_named, FrlMechanism, OrderingPolicy};
use crate::error::{Error, Result};
use crate::prob::{Alphabet, JointDist};

/// One stage of a sequential chain: a mechanism whose private input is the
/// compound `(X, U_1, .., U_{i-1})`, restricted to its positive support.
#[derive(Clone, Debug)]
pub struct ChainStage {
    target: String,
    compound: Vec<Vec<usize>>,
    index: BTreeMap<Vec<usize>, usize>,
    mechanism: FrlMechanism,
}

impl ChainStage {
    /// Name of the variable this stage makes decodable.
    pub fn target(&self) -> &str {
        &self.target
    }

    pub fn mechanism(&self) -> &FrlMechanism {
        &self.mechanism
    }

    /// Compound tuples `(x, u_1, .., u_{i-1})`, indexed by the mechanism's
    /// private symbol.
    pub fn compound_tuples(&self) -> &[Vec<usize>] {
        &self.compound
    }

    /// Private symbol of the compound `(x, prior..)`, if it has positive mass.
    pub fn compound_index(&self, x: usize, prior: &[usize]) -> Option<usize> {
        let mut key = Vec::with_capacity(prior.len() + 1);
        key.push(x);
        key.extend_from_slice(prior);
        self.index.get(&key).copied()
    }

    /// Recovers the target symbol from `x`, the earlier auxiliaries and this
    /// stage's auxiliary.
    pub fn decode(&self, x: usize, prior: &[usize], u: usize) -> Option<usize> {
        self.mechanism.decode(u, self.compound_index(x, prior)?)
    }

    /// `P(U_i = u | x, u_1..u_{i-1}, y)`, restricted to positive entries.
    pub fn conditional(&self, x: usize, prior: &[usize], y: usize) -> Option<&[(usize, crate::prob::Rational)]> {
        self.mechanism.conditional(self.compound_index(x, prior)?, y)
    }

    pub fn size(&self) -> usize {
        self.mechanism.size()
    }
}

/// Chain of auxiliaries `U_1, .., U_k` built stage by stage, together with
/// the exact joint of the private variable, every target used so far and all
/// auxiliaries.
#[derive(Clone, Debug)]
pub struct SequentialChain {
    private: String,
    joint: JointDist,
    stages: Vec<ChainStage>,
}

impl SequentialChain {
    /// Empty chain over the private variable of `base`.
    pub fn new(base: &JointDist, private: &str) -> Result<Self> {
        Ok(SequentialChain {
            private: private.to_string(),
            joint: base.marginalize(&[private])?,
            stages: Vec::new(),
        })
    }

    /// Name given to the auxiliary of stage `i` (zero-based).
    pub fn aux_name(i: usize) -> String {
        format!("U{}", i + 1)
    }

    pub fn private(&self) -> &str {
        &self.private
    }

    pub fn joint(&self) -> &JointDist {
        &self.joint
    }

    pub fn stages(&self) -> &[ChainStage] {
        &self.stages
    }

    pub fn len(&self) -> usize {
        self.stages.len()
    }

    pub fn is_empty(&self) -> bool {
        self.stages.is_empty()
    }

    pub fn aux_sizes(&self) -> Vec<usize> {
        self.stages.iter().map(ChainStage::size).collect()
    }

    fn aux_names(&self) -> Vec<String> {
        (0..self.stages.len()).map(Self::aux_name).collect()
    }

    /// Adds a stage making `target` (a variable of `base`) a function of
    /// `(X, U_1, .., U_{k+1})` while keeping `(U_1, .., U_{k+1})` independent
    /// of `X`.
    ///
    /// Fails if the existing auxiliaries are not independent of `X`, or if any
    /// post-condition does not hold exactly on the extended joint.
    pub fn extend(&self, base: &JointDist, target: &str, policy: &OrderingPolicy) -> Result<Self> {
        let aux = self.aux_names();
        let aux_refs: Vec<&str> = aux.iter().map(String::as_str).collect();
        if !aux_refs.is_empty() && !self.joint.exact_independent(&aux_refs, &[&self.private])? {
            return Err(Error::Invariant(format!(
                "existing auxiliaries are not independent of {}",
                self.private
            )));
        }

        let joint = if self.joint.has_var(target) {
            self.joint.clone()
        } else {
            self.joint.extend_by_conditional(base, target)?
        };

        let mut prefix = vec![self.private.as_str()];
        prefix.extend(&aux_refs);
        let prefix_idx: Vec<usize> = prefix
            .iter()
            .map(|n| joint.index_of(n))
            .collect::<Result<_>>()?;
        let target_idx = joint.index_of(target)?;

        let mut index: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
        let mut pairs = Vec::new();
        for (t, p) in joint.iter() {
            let key: Vec<usize> = prefix_idx.iter().map(|&i| t[i]).collect();
            let next = index.len();
            let c = *index.entry(key).or_insert(next);
            pairs.push((vec![c, t[target_idx]], p.clone()));
        }
        let mut compound = vec![Vec::new(); index.len()];
        for (k, &c) in &index {
            compound[c] = k.clone();
        }

        let compound_name = if aux.is_empty() {
            self.private.clone()
        } else {
            format!("{},{}", self.private, aux.join(","))
        };
        let target_alpha = joint.var(target)?.clone();
        let pair = JointDist::new(
            vec![Alphabet::new(compound_name, index.len())?, target_alpha],
            pairs,
        )?;
        let new_aux = Self::aux_name(self.stages.len());
        let mechanism = frl_construct_named(&pair, policy, &new_aux)?;

        let mut entries = Vec::new();
        for (t, p) in joint.iter() {
            let key: Vec<usize> = prefix_idx.iter().map(|&i| t[i]).collect();
            let c = index[&key];
            let options = mechanism
                .conditional(c, t[target_idx])
                .ok_or_else(|| Error::Invariant("segment missing for a positive pair".into()))?;
            for (u, q) in options {
                let mut k = t.to_vec();
                k.push(*u);
                entries.push((k, p * q));
            }
        }
        let mut vars = joint.vars().to_vec();
        vars.push(Alphabet::new(new_aux, mechanism.size())?);
        let joint = JointDist::new(vars, entries)?;

        let mut stages = self.stages.clone();
        stages.push(ChainStage {
            target: target.to_string(),
            compound,
            index,
            mechanism,
        });
        let chain = SequentialChain {
            private: self.private.clone(),
            joint,
            stages,
        };
        chain.verify_stage(chain.stages.len() - 1)?;
        Ok(chain)
    }

    fn verify_stage(&self, i: usize) -> Result<()> {
        let aux: Vec<String> = (0..=i).map(Self::aux_name).collect();
        let aux_refs: Vec<&str> = aux.iter().map(String::as_str).collect();
        let x = self.private.as_str();
        if !self.joint.exact_independent(&aux_refs, &[x])? {
            return Err(Error::Invariant(format!("({}) not independent of {x}", aux.join(","))));
        }
        let target = self.stages[i].target.as_str();
        let mut given = vec![x];
        given.extend(&aux_refs);
        if !self.joint.is_function_of(&[target], &given)? {
            return Err(Error::Invariant(format!(
                "{target} is not a function of ({})",
                given.join(",")
            )));
        }
        let x_size = self.joint.var(x)?.size();
        let prior: Vec<usize> = self.stages[..i].iter().map(ChainStage::size).collect();
        let y_size = self.joint.var(target)?.size();
        let bound = cardinality_bound(x_size, &prior, y_size);
        if BigUint::from(self.stages[i].size()) > bound {
            return Err(Error::Invariant(format!(
                "|{}| = {} exceeds {bound}",
                Self::aux_name(i),
                self.stages[i].size()
            )));
        }
        Ok(())
    }

    /// Checks every stage's guarantees on the full joint.
    pub fn verify(&self) -> Result<()> {
        (0..self.stages.len()).try_for_each(|i| self.verify_stage(i))
    }
}

/// Free-function form of [`SequentialChain::extend`].
pub fn frl_extend(
    chain: &SequentialChain,
    base: &JointDist,
    target: &str,
    policy: &OrderingPolicy,
) -> Result<SequentialChain> {
    chain.extend(base, target, policy)
}
