//! Maximal chains of the hypercube and the chain constructions built on them.
//!
//! A chain is stored as the order in which variables are switched on, so the
//! `i`-th point of the chain is the OR of `e_{σ(1)} .. e_{σ(i)}`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::families::{DecisionTreeShape, TreeNode};
use crate::lazy::BooleanFunction;
use crate::measures::alternation::alternation_profile;
use crate::table::{check_cap, dense_cap, TruthTable};

/// A maximal chain `0^n ≺ … ≺ 1^n`, as a permutation of `1..=n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Chain {
    order: Vec<usize>,
}

impl TryFrom<Vec<usize>> for Chain {
    type Error = Error;

    fn try_from(order: Vec<usize>) -> Result<Self> {
        Self::new(order)
    }
}

impl From<Chain> for Vec<usize> {
    fn from(chain: Chain) -> Self {
        chain.order
    }
}

impl Chain {
    /// Validates that `order` is a permutation of `1..=order.len()`.
    pub fn new(order: Vec<usize>) -> Result<Self> {
        let n = order.len();
        let mut seen = vec![false; n + 1];
        for &v in &order {
            if v == 0 || v > n {
                return Err(Error::InvalidChain(format!("index {v} outside 1..={n}")));
            }
            if std::mem::replace(&mut seen[v], true) {
                return Err(Error::InvalidChain(format!("index {v} repeated")));
            }
        }
        Ok(Self { order })
    }

    /// Switches variables on in the order `x_1, x_2, …`.
    pub fn identity(n: usize) -> Self {
        Self {
            order: (1..=n).collect(),
        }
    }

    pub fn arity(&self) -> usize {
        self.order.len()
    }

    pub fn order(&self) -> &[usize] {
        &self.order
    }

    pub fn reversed(&self) -> Self {
        Self {
            order: self.order.iter().rev().copied().collect(),
        }
    }

    /// The `n + 1` points of the chain, starting at `0^n`.
    pub fn points(&self) -> impl Iterator<Item = Vec<bool>> + '_ {
        let n = self.arity();
        let mut x = vec![false; n];
        std::iter::once(x.clone()).chain(self.order.iter().map(move |&v| {
            x[v - 1] = true;
            x.clone()
        }))
    }

    /// Chain points as table indices (`x_1` most significant).
    pub fn point_indices(&self) -> Vec<u64> {
        let n = self.arity();
        let mut acc = 0u64;
        std::iter::once(0)
            .chain(self.order.iter().map(|&v| {
                acc |= 1 << (n - v);
                acc
            }))
            .collect()
    }

    fn values(&self, f: &impl BooleanFunction) -> Result<Vec<bool>> {
        if f.arity() != self.arity() {
            return Err(Error::ArityMismatch {
                expected: f.arity(),
                got: self.arity(),
            });
        }
        let mut x = vec![false; self.arity()];
        let mut values = Vec::with_capacity(self.arity() + 1);
        values.push(f.eval_point(&x));
        for &v in &self.order {
            x[v - 1] = true;
            values.push(f.eval_point(&x));
        }
        Ok(values)
    }
}

/// Number of value changes of `f` along `chain` (`n + 1` evaluations).
pub fn alternation_along(f: &impl BooleanFunction, chain: &Chain) -> Result<usize> {
    let values = chain.values(f)?;
    Ok(values.windows(2).filter(|w| w[0] != w[1]).count())
}

/// Number of `1 → 0` changes of `f` along `chain`.
pub fn decrease_along(f: &impl BooleanFunction, chain: &Chain) -> Result<usize> {
    let values = chain.values(f)?;
    Ok(values.windows(2).filter(|w| w[0] && !w[1]).count())
}

/// The chain from the inductive construction for `f_k`: left subtree's
/// chain, then the root variable, then the right subtree's chain.
pub fn gap_family_chain(tree: &DecisionTreeShape) -> Result<Chain> {
    let depth = tree.depth();
    if depth == 0 {
        return Err(Error::MalformedTree("tree has no internal node".into()));
    }
    let expected = (1usize << depth) - 1;
    if tree.arity() != expected {
        return Err(Error::MalformedTree(format!(
            "depth {depth} tree must have {expected} variables, has arity {}",
            tree.arity()
        )));
    }
    fn walk(node: &TreeNode, remaining: usize, out: &mut Vec<usize>) -> Result<()> {
        match node {
            TreeNode::Leaf(_) => Err(Error::MalformedTree("leaf above the bottom level".into())),
            TreeNode::Query { var, low, high } if remaining == 1 => {
                if **low != TreeNode::Leaf(false) || **high != TreeNode::Leaf(true) {
                    return Err(Error::MalformedTree(format!(
                        "bottom node x{var} must have leaves 0 (left) and 1 (right)"
                    )));
                }
                out.push(*var);
                Ok(())
            }
            TreeNode::Query { var, low, high } => {
                walk(low, remaining - 1, out)?;
                out.push(*var);
                walk(high, remaining - 1, out)
            }
        }
    }
    let mut order = Vec::with_capacity(expected);
    walk(tree.root(), depth, &mut order)?;
    Chain::new(order)
}

/// Glues copies of `inner_chain` into a chain for `outer ∘ inner` on `m·n`
/// variables: blocks are completed one at a time in the order given by
/// `outer_chain`, each block walking along `inner_chain`.
///
/// Needs `inner(0^n) ≠ inner(1^n)`. When `inner(0^n) = 1` the construction
/// runs on `¬inner`, which turns the outer function into `y ↦ f(¬y)`; the
/// outer chain is then walked backwards so the outer alternation carries over.
pub fn glued_composition_chain(
    outer_chain: &Chain,
    inner_chain: &Chain,
    inner: &impl BooleanFunction,
) -> Result<Chain> {
    let n = inner.arity();
    if inner_chain.arity() != n {
        return Err(Error::ArityMismatch {
            expected: n,
            got: inner_chain.arity(),
        });
    }
    if n == 0 || outer_chain.arity() == 0 {
        return Err(Error::Precondition("arities must be positive".into()));
    }
    let low = inner.eval_point(&vec![false; n]);
    let high = inner.eval_point(&vec![true; n]);
    if low == high {
        return Err(Error::Precondition(
            "inner function takes the same value on 0^n and 1^n".into(),
        ));
    }
    let blocks = if low {
        outer_chain.reversed()
    } else {
        outer_chain.clone()
    };
    let order = blocks
        .order()
        .iter()
        .flat_map(|&b| inner_chain.order().iter().map(move |&p| (b - 1) * n + p))
        .collect();
    Chain::new(order)
}

/// `alt(f)` monotone parts whose XOR (negated when `f(0^n) = 1`) is `f`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonotoneDecomposition {
    pub parts: Vec<TruthTable>,
    pub negated: bool,
}

impl MonotoneDecomposition {
    pub fn reconstruct(&self, arity: usize) -> Result<TruthTable> {
        let mut acc = TruthTable::constant(arity, self.negated)?;
        for g in &self.parts {
            acc = acc.xor(g)?;
        }
        Ok(acc)
    }
}

/// Splits `f` into `alt(f)` monotone functions `g_i(x) = [A(x) ≥ i]`, where
/// `A(x)` is the largest alternation of `f` along a chain from `0^n` to `x`.
pub fn monotone_decomposition(f: &TruthTable) -> Result<MonotoneDecomposition> {
    check_cap("monotone decomposition", f.arity(), dense_cap())?;
    let (prefix, _) = alternation_profile(f);
    let alt = prefix[f.len() - 1] as usize;
    let parts = (1..=alt)
        .map(|i| TruthTable::from_index_fn(f.arity(), |x| prefix[x as usize] as usize >= i))
        .collect::<Result<Vec<_>>>()?;
    Ok(MonotoneDecomposition {
        parts,
        negated: f.get(0),
    })
}

/// Checks `x ≤ y ⟹ f(x) ≤ f(y)` on all covering pairs, which implies it on
/// all comparable pairs.
pub fn is_monotone(f: &TruthTable) -> bool {
    (0..f.len() as u64)
        .all(|x| (0..f.arity()).all(|p| x & (1 << p) != 0 || f.get(x) <= f.get(x | (1 << p))))
}
