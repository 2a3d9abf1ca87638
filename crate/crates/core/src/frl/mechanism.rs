use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num::{BigUint, One, Signed, Zero};

use crate::error::{Error, Result};
use crate::prob::{entropy_bits, Alphabet, JointDist, Rational};

/// Per-`x` permutation of the positive-probability `y` symbols, giving the
/// order in which their segments are laid out on `[0, 1)`.
///
/// Any `x` without an explicit entry uses ascending symbol order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct OrderingPolicy {
    orders: BTreeMap<usize, Vec<usize>>,
}

impl OrderingPolicy {
    pub fn canonical() -> Self {
        OrderingPolicy::default()
    }

    pub fn with_order(mut self, x: usize, order: Vec<usize>) -> Self {
        self.orders.insert(x, order);
        self
    }

    pub fn explicit(&self) -> &BTreeMap<usize, Vec<usize>> {
        &self.orders
    }

    /// Order for `x`, checked to be a bijection on `support` (ascending).
    pub fn order_for(&self, x: usize, support: &[usize]) -> Result<Vec<usize>> {
        match self.orders.get(&x) {
            None => Ok(support.to_vec()),
            Some(order) => {
                let mut sorted = order.clone();
                sorted.sort_unstable();
                if sorted != support {
                    return Err(Error::Config(format!(
                        "ordering {order:?} for x={x} is not a permutation of its support {support:?}"
                    )));
                }
                Ok(order.clone())
            }
        }
    }
}

/// Partition of `[0, 1)` into consecutive segments, one per positive
/// `P(y | x)`, with segment `k` spanning `[cut_{k-1}, cut_k)`.
#[derive(Clone, Debug, PartialEq)]
pub struct IntervalPartition {
    owner: usize,
    cuts: Vec<Rational>,
    labels: Vec<usize>,
}

impl IntervalPartition {
    /// `segments` holds `(y, length)` in layout order; lengths are positive
    /// and sum to 1.
    fn new(owner: usize, segments: &[(usize, Rational)]) -> Self {
        let mut acc = Rational::zero();
        let mut cuts = Vec::with_capacity(segments.len().saturating_sub(1));
        for (_, len) in &segments[..segments.len() - 1] {
            acc += len;
            cuts.push(acc.clone());
        }
        IntervalPartition {
            owner,
            cuts,
            labels: segments.iter().map(|(y, _)| *y).collect(),
        }
    }

    pub fn owner(&self) -> usize {
        self.owner
    }

    /// Interior cut points, strictly increasing inside `(0, 1)`.
    pub fn cuts(&self) -> &[Rational] {
        &self.cuts
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    /// `(y, start, end)` for each segment in layout order.
    pub fn segments(&self) -> Vec<(usize, Rational, Rational)> {
        let mut bounds = Vec::with_capacity(self.cuts.len() + 2);
        bounds.push(Rational::zero());
        bounds.extend(self.cuts.iter().cloned());
        bounds.push(Rational::one());
        self.labels
            .iter()
            .zip(bounds.windows(2))
            .map(|(y, w)| (*y, w[0].clone(), w[1].clone()))
            .collect()
    }
}

/// Half-open interval `[start, end)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Atom {
    pub start: Rational,
    pub end: Rational,
}

impl Atom {
    pub fn len(&self) -> Rational {
        &self.end - &self.start
    }

    pub fn is_empty(&self) -> bool {
        self.start >= self.end
    }
}

/// Auxiliary variable `U` with `U` independent of `X` and `Y = g(U, X)`.
///
/// `U` is the atom of the common refinement of all per-`x` partitions that
/// contains a uniform point on `[0, 1)`; `Y` is the label of the `x`-segment
/// containing that point.
#[derive(Clone, Debug)]
pub struct FrlMechanism {
    private: Alphabet,
    target: Alphabet,
    aux: String,
    partitions: Vec<IntervalPartition>,
    atoms: Vec<Atom>,
    p_u: Vec<Rational>,
    g: BTreeMap<(usize, usize), usize>,
    cond: BTreeMap<(usize, usize), Vec<(usize, Rational)>>,
    joint: JointDist,
    dropped: Vec<usize>,
}

impl FrlMechanism {
    pub fn private(&self) -> &Alphabet {
        &self.private
    }

    pub fn target(&self) -> &Alphabet {
        &self.target
    }

    pub fn aux_name(&self) -> &str {
        &self.aux
    }

    pub fn partitions(&self) -> &[IntervalPartition] {
        &self.partitions
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    /// Marginal of `U`: the atom lengths.
    pub fn p_u(&self) -> &[Rational] {
        &self.p_u
    }

    /// Number of atoms, `|U|`.
    pub fn size(&self) -> usize {
        self.atoms.len()
    }

    /// Private symbols that had zero mass and were left out.
    pub fn dropped(&self) -> &[usize] {
        &self.dropped
    }

    /// Joint distribution over `(U, X, Y)`.
    pub fn joint(&self) -> &JointDist {
        &self.joint
    }

    /// `g(u, x)`, defined on the positive support.
    pub fn decode(&self, u: usize, x: usize) -> Option<usize> {
        self.g.get(&(u, x)).copied()
    }

    /// The `g` table as `((u, x), y)` pairs.
    pub fn g_table(&self) -> impl Iterator<Item = (usize, usize, usize)> + '_ {
        self.g.iter().map(|(&(u, x), &y)| (u, x, y))
    }

    /// `P(U = u | X = x, Y = y)` for the atoms inside the `(x, y)` segment.
    pub fn conditional(&self, x: usize, y: usize) -> Option<&[(usize, Rational)]> {
        self.cond.get(&(x, y)).map(Vec::as_slice)
    }

    /// `H(U)` in bits. For a stage of a sequential chain this is an upper
    /// estimate of the minimal auxiliary entropy for that stage.
    pub fn entropy(&self) -> f64 {
        entropy_bits(&self.p_u)
    }

    /// Re-checks independence of `U` and `X`, determinism of `Y` given
    /// `(U, X)` and the cardinality bound, all exactly.
    pub fn verify(&self) -> Result<()> {
        let (u, x, y) = (self.aux.as_str(), self.private.name(), self.target.name());
        if !self.joint.exact_independent(&[u], &[x])? {
            return Err(Error::Invariant(format!("{u} is not independent of {x}")));
        }
        if !self.joint.is_function_of(&[y], &[u, x])? {
            return Err(Error::Invariant(format!("{y} is not a function of ({u}, {x})")));
        }
        let total: Rational = self.p_u.iter().sum();
        if !total.is_one() {
            return Err(Error::Invariant(format!("atom lengths sum to {total}")));
        }
        let bound = cardinality_bound(self.private.size(), &[], self.target.size());
        if BigUint::from(self.size()) > bound {
            return Err(Error::Invariant(format!(
                "|{u}| = {} exceeds the bound {bound}",
                self.size()
            )));
        }
        Ok(())
    }
}

impl fmt::Display for FrlMechanism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "mechanism {} for {} -> {} ({} atoms, H = {:.6} bits)",
            self.aux,
            self.private.name(),
            self.target.name(),
            self.size(),
            self.entropy()
        )?;
        if !self.dropped.is_empty() {
            writeln!(f, "dropped zero-mass {} symbols: {:?}", self.private.name(), self.dropped)?;
        }
        writeln!(f, "atoms:")?;
        for (u, (a, p)) in self.atoms.iter().zip(&self.p_u).enumerate() {
            writeln!(f, "  u={u}  [{}, {})  P={}", a.start, a.end, p)?;
        }
        writeln!(f, "g(u, {}):", self.private.name())?;
        for (u, x, y) in self.g_table() {
            writeln!(f, "  g({u}, {x}) = {y}")?;
        }
        Ok(())
    }
}

/// `|X| * |U_1| * .. * |U_k| * (|Y| - 1) + 1`.
pub fn cardinality_bound(private_size: usize, prior_aux: &[usize], target_size: usize) -> BigUint {
    let mut b = BigUint::from(private_size);
    for s in prior_aux {
        b *= BigUint::from(*s);
    }
    b * BigUint::from(target_size.saturating_sub(1)) + BigUint::one()
}

/// Per retained `x`: `P(x)` and the positive `(y, P(y | x))` pairs in
/// ascending `y`. Zero-mass `x` are returned separately.
pub(crate) fn conditionals(
    pxy: &JointDist,
) -> Result<(Vec<(usize, Rational, Vec<(usize, Rational)>)>, Vec<usize>)> {
    if pxy.vars().len() != 2 {
        return Err(Error::InvalidDistribution(format!(
            "expected a distribution over (X, Y), got {} variables",
            pxy.vars().len()
        )));
    }
    let nx = pxy.vars()[0].size();
    let mut rows: Vec<Vec<(usize, Rational)>> = vec![Vec::new(); nx];
    let mut px = vec![Rational::zero(); nx];
    for (t, p) in pxy.iter() {
        rows[t[0]].push((t[1], p.clone()));
        px[t[0]] += p;
    }
    let mut kept = Vec::new();
    let mut dropped = Vec::new();
    for (x, (row, mass)) in rows.into_iter().zip(px).enumerate() {
        if mass.is_positive() {
            let cond = row.into_iter().map(|(y, p)| (y, p / &mass)).collect();
            kept.push((x, mass, cond));
        } else {
            dropped.push(x);
        }
    }
    Ok((kept, dropped))
}

pub(crate) fn layout(
    conds: &[(usize, Rational, Vec<(usize, Rational)>)],
    policy: &OrderingPolicy,
) -> Result<Vec<IntervalPartition>> {
    conds
        .iter()
        .map(|(x, _, row)| {
            let support: Vec<usize> = row.iter().map(|(y, _)| *y).collect();
            let order = policy.order_for(*x, &support)?;
            let lookup: BTreeMap<usize, &Rational> = row.iter().map(|(y, p)| (*y, p)).collect();
            let segs: Vec<(usize, Rational)> =
                order.iter().map(|y| (*y, lookup[y].clone())).collect();
            Ok(IntervalPartition::new(*x, &segs))
        })
        .collect()
}

/// Atom boundaries `0 = b_0 < .. < b_m = 1` of the common refinement.
pub(crate) fn refinement(partitions: &[IntervalPartition]) -> Vec<Rational> {
    let mut points: BTreeSet<Rational> = partitions
        .iter()
        .flat_map(|p| p.cuts.iter().cloned())
        .collect();
    points.insert(Rational::zero());
    points.insert(Rational::one());
    points.into_iter().collect()
}

/// Builds `U` for the pair `(X, Y)` given as a two-variable distribution,
/// first variable private. The auxiliary variable is named `aux`.
pub fn frl_construct_named(pxy: &JointDist, policy: &OrderingPolicy, aux: &str) -> Result<FrlMechanism> {
    let (conds, dropped) = conditionals(pxy)?;
    let private = pxy.vars()[0].clone();
    let target = pxy.vars()[1].clone();
    if aux == private.name() || aux == target.name() {
        return Err(Error::DuplicateVariable(aux.to_string()));
    }
    let partitions = layout(&conds, policy)?;
    let bounds = refinement(&partitions);
    let atoms: Vec<Atom> = bounds
        .windows(2)
        .map(|w| Atom {
            start: w[0].clone(),
            end: w[1].clone(),
        })
        .collect();
    let p_u: Vec<Rational> = atoms.iter().map(Atom::len).collect();

    let mut g = BTreeMap::new();
    let mut cond: BTreeMap<(usize, usize), Vec<(usize, Rational)>> = BTreeMap::new();
    let mut entries = Vec::new();
    for (part, (x, px, row)) in partitions.iter().zip(&conds) {
        let seg_len: BTreeMap<usize, &Rational> = row.iter().map(|(y, p)| (*y, p)).collect();
        // Each atom lies inside exactly one segment; walk both in step.
        let mut seg = 0;
        for (u, atom) in atoms.iter().enumerate() {
            while seg < part.cuts.len() && atom.start >= part.cuts[seg] {
                seg += 1;
            }
            let y = part.labels[seg];
            g.insert((u, *x), y);
            let len = atom.len();
            cond.entry((*x, y))
                .or_default()
                .push((u, &len / seg_len[&y]));
            entries.push((vec![u, *x, y], px * &len));
        }
    }

    let joint = JointDist::new(
        vec![Alphabet::new(aux, atoms.len())?, private.clone(), target.clone()],
        entries,
    )?;
    Ok(FrlMechanism {
        private,
        target,
        aux: aux.to_string(),
        partitions,
        atoms,
        p_u,
        g,
        cond,
        joint,
        dropped,
    })
}

/// [`frl_construct_named`] with the auxiliary variable named `U`.
pub fn frl_construct(pxy: &JointDist, policy: &OrderingPolicy) -> Result<FrlMechanism> {
    frl_construct_named(pxy, policy, "U")
}
