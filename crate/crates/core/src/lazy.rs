//! Point-evaluated functions, including compositions too large to tabulate.

use std::sync::atomic::{AtomicU64, Ordering};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::families::DecisionTreeShape;
use crate::table::{check_cap, dense_cap, index_of, TruthTable};

/// Anything that can be evaluated on an `n`-bit point.
pub trait BooleanFunction {
    fn arity(&self) -> usize;

    /// Evaluates on `x` without checking its length.
    fn eval_point(&self, x: &[bool]) -> bool;

    /// Evaluates on `x`, `x[0]` being `x_1`.
    fn evaluate(&self, x: &[bool]) -> Result<bool> {
        if x.len() != self.arity() {
            return Err(Error::ArityMismatch {
                expected: self.arity(),
                got: x.len(),
            });
        }
        Ok(self.eval_point(x))
    }
}

impl BooleanFunction for TruthTable {
    fn arity(&self) -> usize {
        TruthTable::arity(self)
    }

    fn eval_point(&self, x: &[bool]) -> bool {
        self.get(index_of(x))
    }
}

/// Named primitive functions evaluated by rule rather than by table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "name", rename_all = "snake_case")]
pub enum Primitive {
    Constant {
        arity: usize,
        value: bool,
    },
    Identity,
    Parity {
        arity: usize,
    },
    And {
        arity: usize,
    },
    Or {
        arity: usize,
    },
    Majority {
        arity: usize,
    },
    /// `[|x| >= k]`
    Threshold {
        arity: usize,
        k: usize,
    },
    /// Multiplexer on `t` address bits (MSB first) and `2^t` data bits.
    Address {
        t: usize,
    },
}

impl Primitive {
    pub fn arity(&self) -> usize {
        match *self {
            Primitive::Identity => 1,
            Primitive::Constant { arity, .. }
            | Primitive::Parity { arity }
            | Primitive::And { arity }
            | Primitive::Or { arity }
            | Primitive::Majority { arity }
            | Primitive::Threshold { arity, .. } => arity,
            Primitive::Address { t } => t + (1 << t),
        }
    }

    fn by_weight(&self, weight: usize) -> Option<bool> {
        let n = self.arity();
        Some(match *self {
            Primitive::Constant { value, .. } => value,
            Primitive::Identity => weight == 1,
            Primitive::Parity { .. } => weight % 2 == 1,
            Primitive::And { .. } => weight == n,
            Primitive::Or { .. } => weight > 0,
            Primitive::Majority { .. } => 2 * weight > n,
            Primitive::Threshold { k, .. } => weight >= k,
            Primitive::Address { .. } => return None,
        })
    }

    fn eval_point(&self, x: &[bool]) -> bool {
        if let Primitive::Address { t } = *self {
            let addr = x[..t].iter().fold(0usize, |a, &b| (a << 1) | b as usize);
            return x[t + addr];
        }
        let weight = x.iter().filter(|&&b| b).count();
        self.by_weight(weight).expect("weight primitive")
    }

    fn eval_bits(&self, bits: u64) -> bool {
        if let Primitive::Address { t } = *self {
            let n = self.arity();
            let addr = (bits >> (n - t)) as usize;
            let var = t + 1 + addr;
            return (bits >> (n - var)) & 1 == 1;
        }
        self.by_weight(bits.count_ones() as usize)
            .expect("weight primitive")
    }
}

/// A function given by an evaluation rule: a composition tree over tables,
/// primitives and decision trees.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum LazyFunction {
    Table {
        table: TruthTable,
    },
    Primitive {
        primitive: Primitive,
    },
    Tree {
        tree: DecisionTreeShape,
    },
    Not {
        inner: Box<LazyFunction>,
    },
    /// `outer ∘ inner`: block `i` of the input feeds the `i`-th copy of `inner`.
    Compose {
        outer: Box<LazyFunction>,
        inner: Box<LazyFunction>,
    },
}

impl From<TruthTable> for LazyFunction {
    fn from(table: TruthTable) -> Self {
        LazyFunction::Table { table }
    }
}

impl From<Primitive> for LazyFunction {
    fn from(primitive: Primitive) -> Self {
        LazyFunction::Primitive { primitive }
    }
}

impl From<DecisionTreeShape> for LazyFunction {
    fn from(tree: DecisionTreeShape) -> Self {
        LazyFunction::Tree { tree }
    }
}

/// Composition `f ∘ g` on `m·n` variables, with contiguous blocks in order.
pub fn compose(
    outer: impl Into<LazyFunction>,
    inner: impl Into<LazyFunction>,
) -> Result<LazyFunction> {
    let outer = outer.into();
    let inner = inner.into();
    let (m, n) = (outer.arity(), inner.arity());
    if m == 0 || n == 0 {
        return Err(Error::InvalidParam(format!(
            "composition needs positive arities, got {m} and {n}"
        )));
    }
    m.checked_mul(n)
        .ok_or(Error::ArityOverflow { outer: m, inner: n })?;
    Ok(LazyFunction::Compose {
        outer: Box::new(outer),
        inner: Box::new(inner),
    })
}

impl LazyFunction {
    pub fn negate(self) -> Self {
        match self {
            LazyFunction::Not { inner } => *inner,
            other => LazyFunction::Not {
                inner: Box::new(other),
            },
        }
    }

    /// The stored table, when this function is dense.
    pub fn as_table(&self) -> Option<&TruthTable> {
        match self {
            LazyFunction::Table { table } => Some(table),
            _ => None,
        }
    }

    /// Evaluates on a packed index (`x_1` most significant). Needs arity ≤ 64.
    pub fn eval_bits(&self, bits: u64) -> bool {
        match self {
            LazyFunction::Table { table } => table.get(bits),
            LazyFunction::Primitive { primitive } => primitive.eval_bits(bits),
            LazyFunction::Tree { tree } => tree.eval_bits(bits),
            LazyFunction::Not { inner } => !inner.eval_bits(bits),
            LazyFunction::Compose { outer, inner } => {
                let m = outer.arity();
                let n = inner.arity();
                let mask = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
                let mut outer_bits = 0u64;
                for i in 0..m {
                    let block = (bits >> (n * (m - 1 - i))) & mask;
                    outer_bits = (outer_bits << 1) | inner.eval_bits(block) as u64;
                }
                outer.eval_bits(outer_bits)
            }
        }
    }

    /// Tabulates the function; fails above the dense cap.
    pub fn materialize(&self) -> Result<TruthTable> {
        self.materialize_with_cap(dense_cap())
    }

    pub fn materialize_with_cap(&self, cap: usize) -> Result<TruthTable> {
        let n = self.arity();
        check_cap("materialize", n, cap)?;
        if let LazyFunction::Table { table } = self {
            return Ok(table.clone());
        }
        TruthTable::from_index_fn(n, |i| self.eval_bits(i))
    }
}

impl BooleanFunction for LazyFunction {
    fn arity(&self) -> usize {
        match self {
            LazyFunction::Table { table } => table.arity(),
            LazyFunction::Primitive { primitive } => primitive.arity(),
            LazyFunction::Tree { tree } => tree.arity(),
            LazyFunction::Not { inner } => inner.arity(),
            LazyFunction::Compose { outer, inner } => outer.arity() * inner.arity(),
        }
    }

    fn eval_point(&self, x: &[bool]) -> bool {
        match self {
            LazyFunction::Table { table } => table.eval_point(x),
            LazyFunction::Primitive { primitive } => primitive.eval_point(x),
            LazyFunction::Tree { tree } => tree.eval_point(x),
            LazyFunction::Not { inner } => !inner.eval_point(x),
            LazyFunction::Compose { outer, inner } => {
                let n = inner.arity();
                let outer_input: Vec<bool> =
                    x.chunks(n).map(|block| inner.eval_point(block)).collect();
                outer.eval_point(&outer_input)
            }
        }
    }
}

/// Wraps a function and counts point evaluations.
#[derive(Debug)]
pub struct Counted<F> {
    inner: F,
    calls: AtomicU64,
}

impl<F: BooleanFunction> Counted<F> {
    pub fn new(inner: F) -> Self {
        Self {
            inner,
            calls: AtomicU64::new(0),
        }
    }

    pub fn calls(&self) -> u64 {
        self.calls.load(Ordering::Relaxed)
    }

    pub fn into_inner(self) -> F {
        self.inner
    }
}

impl<F: BooleanFunction> BooleanFunction for Counted<F> {
    fn arity(&self) -> usize {
        self.inner.arity()
    }

    fn eval_point(&self, x: &[bool]) -> bool {
        self.calls.fetch_add(1, Ordering::Relaxed);
        self.inner.eval_point(x)
    }
}
