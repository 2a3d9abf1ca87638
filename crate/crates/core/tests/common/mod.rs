//! Helpers shared by the integration tests.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use rand::Rng;
use seqpriv::pipeline::Database;
use seqpriv::prob::{Alphabet, JointDist, Rational};

/// Joint over `vars` with integer weights, normalized. Panics if every
/// weight is zero.
pub fn from_weights(vars: Vec<Alphabet>, weights: &[u32]) -> JointDist {
    let sizes: Vec<usize> = vars.iter().map(Alphabet::size).collect();
    let total: u32 = weights.iter().sum();
    assert!(total > 0, "all weights are zero");
    let entries = weights.iter().enumerate().map(|(i, &w)| {
        let mut rest = i;
        let mut t = vec![0; sizes.len()];
        for (slot, &s) in t.iter_mut().zip(&sizes).rev() {
            *slot = rest % s;
            rest /= s;
        }
        (t, Rational::new(w.into(), total.into()))
    });
    JointDist::new(vars, entries).unwrap()
}

/// Random weights in `0..=4`, roughly a third of them zero, never all zero.
pub fn random_weights(rng: &mut impl Rng, cells: usize) -> Vec<u32> {
    loop {
        let w: Vec<u32> = (0..cells)
            .map(|_| if rng.random_bool(0.35) { 0 } else { rng.random_range(1..=4) })
            .collect();
        if w.iter().any(|&v| v > 0) {
            return w;
        }
    }
}

pub fn random_pair(rng: &mut impl Rng, max_x: usize, max_y: usize) -> JointDist {
    let x = rng.random_range(1..=max_x);
    let y = rng.random_range(1..=max_y);
    let vars = vec![Alphabet::new("X", x).unwrap(), Alphabet::new("Y", y).unwrap()];
    from_weights(vars, &random_weights(rng, x * y))
}

/// Private variable of size `x_size` and `n` files of `f` bits each.
pub fn random_database(rng: &mut impl Rng, x_size: usize, n: usize, f: u32) -> Database {
    let mut vars = vec![Alphabet::new("X", x_size).unwrap()];
    for i in 0..n {
        vars.push(Alphabet::file(format!("Y{}", i + 1), f).unwrap());
    }
    let cells = x_size << (n as u32 * f);
    Database::new(from_weights(vars, &random_weights(rng, cells))).unwrap()
}

/// Independent functional-representation construction by interval
/// intersection: returns `P(U = u, X = x, Y = y)` with atoms numbered from
/// the left end of `[0, 1)`.
pub fn oracle_frl(pxy: &JointDist) -> BTreeMap<(usize, usize, usize), Rational> {
    let x_size = pxy.vars()[0].size();
    let y_size = pxy.vars()[1].size();
    let zero = Rational::from_integer(0.into());
    let mut px = vec![zero.clone(); x_size];
    for (t, p) in pxy.iter() {
        px[t[0]] += p;
    }
    // segments[x] = (start, end, y) in ascending y.
    let mut segments = Vec::new();
    let mut points = BTreeSet::new();
    points.insert(zero.clone());
    for x in 0..x_size {
        if px[x] == zero {
            segments.push(Vec::new());
            continue;
        }
        let mut start = zero.clone();
        let mut segs = Vec::new();
        for y in 0..y_size {
            let len = pxy.prob(&[x, y]) / &px[x];
            if len == zero {
                continue;
            }
            let end = &start + &len;
            points.insert(end.clone());
            segs.push((start.clone(), end.clone(), y));
            start = end;
        }
        segments.push(segs);
    }
    let points: Vec<Rational> = points.into_iter().collect();
    let mut out = BTreeMap::new();
    for (u, w) in points.windows(2).enumerate() {
        let (a, b) = (&w[0], &w[1]);
        for x in 0..x_size {
            for (s, e, y) in &segments[x] {
                // Overlap of [a, b) with [s, e).
                let lo = if a > s { a } else { s };
                let hi = if b < e { b } else { e };
                if lo < hi {
                    *out.entry((u, x, *y)).or_insert_with(|| zero.clone()) += &px[x] * (hi - lo);
                }
            }
        }
    }
    out
}
