//! Exact complexity measures, algebraic invariants and chain constructions
//! for Boolean functions `{0,1}^n -> {0,1}`.
//!
//! Inputs are indexed with `x_1` as the most significant bit, so index `i`
//! encodes the point whose `j`-th coordinate is bit `n - j` of `i`.

pub mod algebra;
pub mod chains;
pub mod error;
pub mod families;
pub mod lazy;
pub mod measures;
pub mod rational;
pub mod table;
pub mod verify;

pub use chains::{Chain, MonotoneDecomposition};
pub use error::{Error, Result};
pub use families::{address, compose_power, gap_family, DecisionTreeShape, GapFamily};
pub use lazy::{compose, BooleanFunction, Counted, LazyFunction, Primitive};
pub use rational::Rational;
pub use table::{dense_cap, parse_corpus, set_dense_cap, Restriction, TruthTable};
