//! Block sensitivity by exact set packing over minimal sensitive blocks.

use crate::error::Result;
use crate::measures::sensitivity::check_point;
use crate::table::{check_cap, TruthTable};

/// Largest arity accepted by block sensitivity.
pub const BS_CAP: usize = 12;

/// Minimal blocks `B` (as index masks) with `f(x ⊕ e_B) ≠ f(x)`.
pub(crate) fn minimal_sensitive_blocks(f: &TruthTable, x: u64) -> Vec<u32> {
    let n = f.arity();
    let size = 1usize << n;
    let v = f.get(x);
    let sensitive: Vec<bool> = (0..size as u64).map(|b| f.get(x ^ b) != v).collect();
    // below[b]: some subset of b (including b) is sensitive.
    let mut below = sensitive.clone();
    for p in 0..n {
        let bit = 1usize << p;
        for b in 0..size {
            if b & bit != 0 && below[b ^ bit] {
                below[b] = true;
            }
        }
    }
    (1..size)
        .filter(|&b| sensitive[b] && (0..n).all(|p| b & (1 << p) == 0 || !below[b ^ (1 << p)]))
        .map(|b| b as u32)
        .collect()
}

/// Maximum number of pairwise disjoint sets among `blocks`.
pub fn max_disjoint_packing(blocks: &[u32]) -> usize {
    let mut sorted = blocks.to_vec();
    sorted.sort_by_key(|b| (b.count_ones(), *b));
    sorted.dedup();
    let mut best = 0;
    let mut used = 0u32;
    for &b in &sorted {
        if b & used == 0 {
            used |= b;
            best += 1;
        }
    }
    search(&sorted, 0, &mut best);
    best
}

fn search(cands: &[u32], count: usize, best: &mut usize) {
    if cands.is_empty() {
        *best = (*best).max(count);
        return;
    }
    let free = cands.iter().fold(0u32, |a, b| a | b);
    let min_size = cands.iter().map(|b| b.count_ones()).min().unwrap_or(1);
    if count + (free.count_ones() / min_size) as usize <= *best {
        return;
    }
    let pivot = free & free.wrapping_neg();
    for &b in cands.iter().filter(|&&b| b & pivot != 0) {
        let rest: Vec<u32> = cands.iter().copied().filter(|&c| c & b == 0).collect();
        search(&rest, count + 1, best);
    }
    let without: Vec<u32> = cands.iter().copied().filter(|&c| c & pivot == 0).collect();
    search(&without, count, best);
}

pub(crate) fn block_sensitivity_index(f: &TruthTable, x: u64) -> usize {
    max_disjoint_packing(&minimal_sensitive_blocks(f, x))
}

/// `bs(f, x)`.
pub fn block_sensitivity_at(f: &TruthTable, x: &[bool]) -> Result<usize> {
    check_cap("block sensitivity", f.arity(), BS_CAP)?;
    Ok(block_sensitivity_index(f, check_point(f, x)?))
}

/// `bs(f)`, the maximum over all inputs.
pub fn block_sensitivity(f: &TruthTable) -> Result<usize> {
    check_cap("block sensitivity", f.arity(), BS_CAP)?;
    Ok((0..f.len() as u64)
        .map(|x| block_sensitivity_index(f, x))
        .max()
        .unwrap_or(0))
}
