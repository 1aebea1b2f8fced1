//! Certificate complexity.

use crate::error::Result;
use crate::measures::sensitivity::check_point;
use crate::table::{check_cap, TruthTable};

/// Largest arity accepted by certificate complexity.
pub const C_CAP: usize = 12;

/// Smallest `|S|` such that fixing `x|_S` forces `f(x)`.
///
/// A set `S` certifies `x` iff no disagreeing `y` has `x ⊕ y` inside the
/// complement of `S`. The search visits free sets by decreasing size, so
/// the first hit gives the smallest certificate.
pub(crate) fn certificate_index(f: &TruthTable, x: u64) -> usize {
    let n = f.arity();
    let size = 1usize << n;
    let v = f.get(x);
    // spoiled[m]: some y with f(y) != f(x) has x ⊕ y ⊆ m.
    let mut spoiled: Vec<bool> = (0..size as u64).map(|d| f.get(x ^ d) != v).collect();
    for p in 0..n {
        let bit = 1usize << p;
        for m in 0..size {
            if m & bit != 0 && spoiled[m ^ bit] {
                spoiled[m] = true;
            }
        }
    }
    for cert_size in 0..=n {
        let free = n - cert_size;
        let found = (0..size)
            .filter(|m| m.count_ones() as usize == free)
            .any(|m| !spoiled[m]);
        if found {
            return cert_size;
        }
    }
    n
}

pub fn certificate_complexity_at(f: &TruthTable, x: &[bool]) -> Result<usize> {
    check_cap("certificate complexity", f.arity(), C_CAP)?;
    Ok(certificate_index(f, check_point(f, x)?))
}

/// `C(f)`, the maximum over all inputs.
pub fn certificate_complexity(f: &TruthTable) -> Result<usize> {
    check_cap("certificate complexity", f.arity(), C_CAP)?;
    Ok((0..f.len() as u64)
        .map(|x| certificate_index(f, x))
        .max()
        .unwrap_or(0))
}
