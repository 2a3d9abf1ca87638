//! Functional representation construction.
//!
//! For a pair `(X, Y)` each `x` lays out the conditional `P(Y | X = x)` as
//! consecutive segments of `[0, 1)`. The common refinement of all these
//! partitions gives atoms; `U` is the atom containing a uniform point, so
//! `U` is independent of `X`, and `Y` is the label of the `x`-segment
//! holding atom `U`.
//!
//! [`SequentialChain`] repeats the construction with the compound
//! `(X, U_1, .., U_k)` as private input, one target at a time.

mod chain;
mod mechanism;
mod search;

pub use chain::{frl_extend, ChainStage, SequentialChain};
pub use mechanism::{
    cardinality_bound, frl_construct, frl_construct_named, Atom, FrlMechanism, IntervalPartition,
    OrderingPolicy,
};
pub use search::min_entropy_search;

/// Entropy of a mechanism's auxiliary variable, in bits.
pub fn mechanism_entropy(m: &FrlMechanism) -> f64 {
    m.entropy()
}
