//! Alternation and decrease by dynamic programming over the hypercube.
//!
//! `A(x) = max_{y ⋖ x} A(y) + [f(y) ≠ f(x)]` with `A(0^n) = 0`; the answer
//! is `A(1^n)`. Predecessors of `x` clear one bit, so plain index order is a
//! topological order of the cube.

use serde::Serialize;

use crate::chains::Chain;
use crate::error::Result;
use crate::lazy::{BooleanFunction, LazyFunction};
use crate::table::{check_cap, dense_cap, TruthTable};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AlternationReport {
    pub alt: usize,
    pub dc: usize,
    /// A chain along which `f` changes value `alt` times.
    pub witness: Chain,
}

/// Runs the DP with a per-edge gain. Returns per-point values and, for each
/// point, the bit position cleared to reach the best predecessor.
fn chain_dp(f: &TruthTable, gain: impl Fn(bool, bool) -> bool) -> (Vec<u8>, Vec<u8>) {
    let n = f.arity();
    let len = f.len();
    let mut best = vec![0u8; len];
    let mut from = vec![0u8; len];
    for x in 1..len {
        let value = f.get(x as u64);
        let mut top = 0u8;
        let mut arg = 0u8;
        let mut seen = false;
        // Highest position first, i.e. smallest variable index wins ties.
        for p in (0..n).rev() {
            if x & (1 << p) == 0 {
                continue;
            }
            let y = x ^ (1 << p);
            let cand = best[y] + gain(f.get(y as u64), value) as u8;
            if !seen || cand > top {
                top = cand;
                arg = p as u8;
                seen = true;
            }
        }
        best[x] = top;
        from[x] = arg;
    }
    (best, from)
}

/// Per-point prefix alternation `A(x)` and the argmax predecessor bits.
pub(crate) fn alternation_profile(f: &TruthTable) -> (Vec<u8>, Vec<u8>) {
    chain_dp(f, |prev, cur| prev != cur)
}

fn decrease_profile(f: &TruthTable) -> Vec<u8> {
    chain_dp(f, |prev, cur| prev && !cur).0
}

fn backtrack(n: usize, from: &[u8]) -> Chain {
    let mut x = from.len() - 1;
    let mut order = Vec::with_capacity(n);
    while x != 0 {
        let p = from[x] as usize;
        order.push(n - p);
        x ^= 1 << p;
    }
    order.reverse();
    Chain::new(order).expect("backtracking visits each bit once")
}

/// `alt(f)`, `dc(f)` and a witness chain achieving `alt(f)`.
pub fn alternation_decrease(f: &TruthTable) -> Result<AlternationReport> {
    check_cap("alternation", f.arity(), dense_cap())?;
    let (alt, from) = alternation_profile(f);
    let dc = decrease_profile(f);
    Ok(AlternationReport {
        alt: alt[f.len() - 1] as usize,
        dc: dc[f.len() - 1] as usize,
        witness: backtrack(f.arity(), &from),
    })
}

/// Same as [`alternation_decrease`] for a lazily given function within the cap.
pub fn alternation_decrease_lazy(f: &LazyFunction) -> Result<AlternationReport> {
    check_cap("alternation", f.arity(), dense_cap())?;
    alternation_decrease(&f.materialize()?)
}

pub fn alternation(f: &TruthTable) -> Result<usize> {
    check_cap("alternation", f.arity(), dense_cap())?;
    Ok(alternation_profile(f).0[f.len() - 1] as usize)
}

pub fn decrease(f: &TruthTable) -> Result<usize> {
    check_cap("decrease", f.arity(), dense_cap())?;
    Ok(decrease_profile(f)[f.len() - 1] as usize)
}

/// Minimum negations for circuits (`⌈log₂(1 + dc)⌉`) and formulas (`dc`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct NegationComplexity {
    pub circuit: usize,
    pub formula: usize,
}

/// `⌈log₂(1 + dc)⌉`.
pub fn circuit_negations(dc: usize) -> usize {
    (usize::BITS - dc.leading_zeros()) as usize
}

pub fn negation_complexity(f: &TruthTable) -> Result<NegationComplexity> {
    let dc = decrease(f)?;
    Ok(NegationComplexity {
        circuit: circuit_negations(dc),
        formula: dc,
    })
}
