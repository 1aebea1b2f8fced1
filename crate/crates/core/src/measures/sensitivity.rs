use crate::error::{Error, Result};
use crate::rational::{dyadic, Rational};
use crate::table::{index_of, TruthTable};

pub(crate) fn check_point(f: &TruthTable, x: &[bool]) -> Result<u64> {
    if x.len() != f.arity() {
        return Err(Error::ArityMismatch {
            expected: f.arity(),
            got: x.len(),
        });
    }
    Ok(index_of(x))
}

#[inline]
pub(crate) fn sensitivity_index(f: &TruthTable, x: u64) -> usize {
    let v = f.get(x);
    (0..f.arity()).filter(|&p| f.get(x ^ (1 << p)) != v).count()
}

/// Number of single-bit flips of `x` that change `f`.
pub fn sensitivity_at(f: &TruthTable, x: &[bool]) -> Result<usize> {
    Ok(sensitivity_index(f, check_point(f, x)?))
}

/// `s(f,x)` for every input, in index order.
pub fn sensitivity_profile(f: &TruthTable) -> Vec<u8> {
    (0..f.len() as u64)
        .map(|x| sensitivity_index(f, x) as u8)
        .collect()
}

/// Maximum sensitivity over all inputs.
pub fn sensitivity(f: &TruthTable) -> usize {
    (0..f.len() as u64)
        .map(|x| sensitivity_index(f, x))
        .max()
        .unwrap_or(0)
}

/// Average sensitivity, exactly.
pub fn influence(f: &TruthTable) -> Rational {
    let total: i128 = (0..f.len() as u64)
        .map(|x| sensitivity_index(f, x) as i128)
        .sum();
    dyadic(total, f.arity())
}
