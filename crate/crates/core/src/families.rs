//! Witness families and baseline functions.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lazy::{compose, BooleanFunction, LazyFunction, Primitive};
use crate::table::{check_cap, dense_cap, TruthTable};

/// A node of a decision tree. `low` is followed when the queried variable is 0.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TreeNode {
    Leaf(bool),
    Query {
        var: usize,
        low: Box<TreeNode>,
        high: Box<TreeNode>,
    },
}

impl TreeNode {
    fn depth(&self) -> usize {
        match self {
            TreeNode::Leaf(_) => 0,
            TreeNode::Query { low, high, .. } => 1 + low.depth().max(high.depth()),
        }
    }

    fn collect_vars(&self, seen: &mut BTreeSet<usize>) -> Result<()> {
        if let TreeNode::Query { var, low, high } = self {
            if !seen.insert(*var) {
                return Err(Error::MalformedTree(format!(
                    "variable {var} queried more than once"
                )));
            }
            low.collect_vars(seen)?;
            high.collect_vars(seen)?;
        }
        Ok(())
    }
}

#[derive(Deserialize)]
struct RawTree {
    arity: usize,
    root: TreeNode,
}

/// Decision tree whose internal nodes query pairwise distinct variables.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawTree")]
pub struct DecisionTreeShape {
    arity: usize,
    root: TreeNode,
}

impl TryFrom<RawTree> for DecisionTreeShape {
    type Error = Error;

    fn try_from(raw: RawTree) -> Result<Self> {
        Self::new(raw.root, raw.arity)
    }
}

impl DecisionTreeShape {
    pub fn new(root: TreeNode, arity: usize) -> Result<Self> {
        let mut seen = BTreeSet::new();
        root.collect_vars(&mut seen)?;
        if let Some(&bad) = seen.iter().find(|&&v| v == 0 || v > arity) {
            return Err(Error::MalformedTree(format!(
                "variable {bad} outside 1..={arity}"
            )));
        }
        Ok(Self { arity, root })
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn root(&self) -> &TreeNode {
        &self.root
    }

    pub fn depth(&self) -> usize {
        self.root.depth()
    }

    pub fn eval_bits(&self, bits: u64) -> bool {
        let mut node = &self.root;
        loop {
            match node {
                TreeNode::Leaf(v) => return *v,
                TreeNode::Query { var, low, high } => {
                    node = if (bits >> (self.arity - var)) & 1 == 1 {
                        high
                    } else {
                        low
                    };
                }
            }
        }
    }

    pub fn eval_point(&self, x: &[bool]) -> bool {
        let mut node = &self.root;
        loop {
            match node {
                TreeNode::Leaf(v) => return *v,
                TreeNode::Query { var, low, high } => {
                    node = if x[var - 1] { high } else { low };
                }
            }
        }
    }
}

/// The gap-family member `f_k` with its defining tree.
#[derive(Debug, Clone)]
pub struct GapFamily {
    pub k: usize,
    /// Dense when `2^k - 1` fits under the cap, tree-evaluated otherwise.
    pub function: LazyFunction,
    pub tree: DecisionTreeShape,
}

/// Builds `f_k`: a full depth-`k` tree on `2^k - 1` variables numbered in
/// breadth-first order (root `x_1`), every bottom node having a 0-leaf on the
/// left and a 1-leaf on the right.
pub fn gap_family(k: usize) -> Result<GapFamily> {
    if k == 0 {
        return Err(Error::InvalidParam("gap family needs k >= 1".into()));
    }
    if k > 20 {
        return Err(Error::InvalidParam(format!(
            "gap family k = {k} has too many variables"
        )));
    }
    let n = (1usize << k) - 1;
    fn build(pos: usize, bottom: usize) -> TreeNode {
        let (low, high) = if pos >= bottom {
            (TreeNode::Leaf(false), TreeNode::Leaf(true))
        } else {
            (build(2 * pos, bottom), build(2 * pos + 1, bottom))
        };
        TreeNode::Query {
            var: pos,
            low: Box::new(low),
            high: Box::new(high),
        }
    }
    let tree = DecisionTreeShape::new(build(1, 1 << (k - 1)), n)?;
    let function = if n <= dense_cap() {
        LazyFunction::from(TruthTable::from_index_fn(n, |i| tree.eval_bits(i))?)
    } else {
        LazyFunction::from(tree.clone())
    };
    Ok(GapFamily { k, function, tree })
}

/// `ADDR_t(x_1..x_t, y_0..y_{2^t-1}) = y_{int(x_1..x_t)}`, address MSB first.
pub fn address(t: usize) -> Result<TruthTable> {
    if t == 0 {
        return Err(Error::InvalidParam("address needs t >= 1".into()));
    }
    if t >= 5 {
        return Err(Error::AboveCap {
            what: "address",
            arity: t.saturating_add(1usize.checked_shl(t as u32).unwrap_or(usize::MAX)),
            cap: dense_cap(),
        });
    }
    let n = t + (1 << t);
    check_cap("address", n, dense_cap())?;
    LazyFunction::from(Primitive::Address { t }).materialize()
}

/// Baseline function names accepted by [`named_basic`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BasicKind {
    Parity,
    And,
    Or,
    Majority,
    /// `[|x| >= k]`
    Threshold(usize),
}

impl BasicKind {
    pub fn primitive(self, n: usize) -> Result<Primitive> {
        if n == 0 {
            return Err(Error::InvalidParam("basic functions need n >= 1".into()));
        }
        Ok(match self {
            BasicKind::Parity => Primitive::Parity { arity: n },
            BasicKind::And => Primitive::And { arity: n },
            BasicKind::Or => Primitive::Or { arity: n },
            BasicKind::Majority => {
                if n.is_multiple_of(2) {
                    return Err(Error::InvalidParam(format!(
                        "majority needs odd n, got {n}"
                    )));
                }
                Primitive::Majority { arity: n }
            }
            BasicKind::Threshold(k) => {
                if k == 0 || k > n {
                    return Err(Error::InvalidParam(format!(
                        "threshold k must lie in 1..={n}, got {k}"
                    )));
                }
                Primitive::Threshold { arity: n, k }
            }
        })
    }
}

/// Dense baseline function.
pub fn named_basic(kind: BasicKind, n: usize) -> Result<TruthTable> {
    check_cap("named basic", n, dense_cap())?;
    LazyFunction::from(kind.primitive(n)?).materialize()
}

pub fn parity(n: usize) -> Result<TruthTable> {
    named_basic(BasicKind::Parity, n)
}

pub fn majority(n: usize) -> Result<TruthTable> {
    named_basic(BasicKind::Majority, n)
}

/// `h^{∘k}`, defined as `h^{∘(k-1)} ∘ h`.
pub fn compose_power(h: impl Into<LazyFunction>, k: usize) -> Result<LazyFunction> {
    let h = h.into();
    if h.arity() == 0 {
        return Err(Error::InvalidParam("compose_power needs arity >= 1".into()));
    }
    if k == 0 {
        return Err(Error::InvalidParam("compose_power needs k >= 1".into()));
    }
    let mut acc = h.clone();
    for _ in 1..k {
        acc = compose(acc, h.clone())?;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::table::{parity_table, point_of};

    #[test]
    fn f1_is_identity() {
        let g = gap_family(1).unwrap();
        assert_eq!(
            g.function.as_table().unwrap(),
            &TruthTable::variable(1, 1).unwrap()
        );
        assert_eq!(g.tree.depth(), 1);
    }

    #[test]
    fn f3_matches_figure() {
        let g = gap_family(3).unwrap();
        let f = g.function.as_table().unwrap();
        assert_eq!(f.arity(), 7);
        // x1=0, x2=1 reaches x5.
        assert!(f.evaluate(&point_of(7, 0b0100100)).unwrap());
        assert!(!f.evaluate(&point_of(7, 0b0100000)).unwrap());
        // x1=1, x3=1 reaches x7.
        assert!(f.evaluate(&point_of(7, 0b1010001)).unwrap());
        assert!(!f.evaluate(&point_of(7, 0b1010000)).unwrap());
        assert!(f.depends_on_all());
    }

    #[test]
    fn large_gap_family_is_lazy() {
        let g = gap_family(6).unwrap();
        assert!(g.function.as_table().is_none());
        assert_eq!(g.function.arity(), 63);
        assert_eq!(g.tree.depth(), 6);
    }

    #[test]
    fn address_examples() {
        let a1 = address(1).unwrap();
        assert_eq!(a1.arity(), 3);
        // x1=1 selects y_1 (third variable).
        assert!(a1.evaluate(&[true, false, true]).unwrap());
        assert!(!a1.evaluate(&[false, false, true]).unwrap());
        let a2 = address(2).unwrap();
        assert_eq!(a2.arity(), 6);
        assert!(!a2
            .evaluate(&[true, false, true, false, false, false])
            .unwrap());
        assert!(a2
            .evaluate(&[true, false, false, false, true, false])
            .unwrap());
        assert!(address(0).is_err());
        assert!(address(5).is_err());
    }

    #[test]
    fn basics() {
        assert_eq!(parity(3).unwrap().to_text(), "3:96");
        assert_eq!(
            named_basic(BasicKind::Threshold(1), 2).unwrap(),
            named_basic(BasicKind::Or, 2).unwrap()
        );
        assert_eq!(named_basic(BasicKind::And, 2).unwrap().to_text(), "2:8");
        assert!(majority(4).is_err());
        assert!(named_basic(BasicKind::Threshold(3), 2).is_err());
        assert!(named_basic(BasicKind::Parity, 0).is_err());
    }

    #[test]
    fn compose_power_examples() {
        let p = compose_power(parity_table(2).unwrap(), 2).unwrap();
        assert_eq!(p.materialize().unwrap(), parity_table(4).unwrap());
        let id = compose_power(Primitive::Identity, 5).unwrap();
        assert_eq!(id.arity(), 1);
        assert_eq!(
            id.materialize().unwrap(),
            TruthTable::variable(1, 1).unwrap()
        );
        let g2 = compose_power(address(2).unwrap(), 2).unwrap();
        assert_eq!(g2.arity(), 36);
        assert!(compose_power(Primitive::Identity, 0).is_err());
    }

    #[test]
    fn tree_rejects_repeated_variables() {
        let leaf = |b| Box::new(TreeNode::Leaf(b));
        let dup = TreeNode::Query {
            var: 1,
            low: Box::new(TreeNode::Query {
                var: 1,
                low: leaf(false),
                high: leaf(true),
            }),
            high: leaf(true),
        };
        assert!(DecisionTreeShape::new(dup, 2).is_err());
        let out = TreeNode::Query {
            var: 3,
            low: leaf(false),
            high: leaf(true),
        };
        assert!(DecisionTreeShape::new(out, 2).is_err());
    }

    #[test]
    fn tree_json_round_trip() {
        let g = gap_family(2).unwrap();
        let json = serde_json::to_string(&g.tree).unwrap();
        let back: DecisionTreeShape = serde_json::from_str(&json).unwrap();
        assert_eq!(back, g.tree);
    }
}
