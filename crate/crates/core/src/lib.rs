//! Private sequential variable-length coding with exact arithmetic.
//!
//! A server holds files `Y_1..Y_N` correlated with a private attribute `X`.
//! A user requests files one at a time; an encoder answers each request over
//! a public link using a shared key, such that the full transcript is exactly
//! independent of `X` and the user recovers every demanded file with
//! probability one.
//!
//! The scheme is a multi-part code: a one-time-pad slot carrying `X + W`,
//! followed by one slot per demand carrying an auxiliary variable `U_i`
//! built by the functional representation construction on
//! `(X, U_1..U_{i-1}) -> Y_{d_i}`. Everything is small-alphabet and exact,
//! so privacy and losslessness are verified by enumeration rather than
//! sampling.
//!
//! Modules:
//! - [`prob`]: rational joint distributions and information measures.
//! - [`frl`]: functional representation construction and its sequential
//!   extension.
//! - [`code`]: one-time pad, prefix-free codebooks, bitstrings.
//! - [`pipeline`]: sequential encoder/decoder, transcript distributions,
//!   leakage audits, demand sweeps.
//! - [`bounds`]: achievability and converse bounds, the Bernoulli-AND family.
//! - [`cache`]: coded-caching placement/delivery with a buffer-limited
//!   private encoder.

pub mod bounds;
pub mod cache;
pub mod code;
pub mod error;
pub mod frl;
pub mod pipeline;
pub mod prob;
#[cfg(test)]
mod testutil;

pub use error::{Error, ErrorKind, Result};

/// Default cap on the number of weighted states any enumeration may visit.
pub const DEFAULT_STATE_LIMIT: u128 = 10_000_000;
