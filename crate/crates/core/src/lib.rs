//! Exact-arithmetic engine for genus-two partition-function data built from
//! two sewn tori.
//!
//! The crate is organised bottom-up:
//!
//! - [`series`]: truncated power series over exact rationals, Bernoulli
//!   numbers, Eisenstein series, the Dedekind eta function and the
//!   quasi-modular graded ring.
//! - [`virasoro`]: the Virasoro vacuum module with symbolic central charge,
//!   the exponential-map parameters and the vacuum descendants `λ⁽ⁿ⁾`.
//! - [`zhu`]: genus-one 1-point functions as differential operators.
//! - [`sewing`]: sewing matrices, log-determinants, period matrix data and
//!   the degenerate modulus.
//! - [`genus2`]: closed-form genus-two partition functions and the
//!   degeneration checks.
//!
//! Everything is exact; the only floating point in the crate is the
//! advisory [`sewing::domain_check`].

pub mod error;
pub mod genus2;
pub mod rational;
pub mod series;
pub mod sewing;
pub mod virasoro;
pub mod zhu;

pub use error::{Error, Result};
pub use rational::Rational;
