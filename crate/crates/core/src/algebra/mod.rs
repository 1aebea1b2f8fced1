//! Polynomial and Fourier algebra over exact integers.

pub mod fourier;
pub mod poly;

use std::collections::BTreeMap;

use serde::Serialize;

pub use fourier::{
    fourier_transform, fwht_in_place, sparsity, spectral_sums, FourierSpectrum, SpectralSums,
};
pub use poly::{anf_f2, degree, degree_f2, multilinear_coefficients, Modulus, MultilinearPoly};

use crate::error::Result;
use crate::table::TruthTable;

/// Moduli swept by default for `deg_m`.
pub const DEFAULT_MODULI: [u64; 5] = [2, 3, 4, 5, 6];

/// Degrees, sparsity and spectral sums of one function.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AlgebraSummary {
    pub deg: usize,
    pub deg_2: usize,
    /// `deg_m` for each modulus in [`DEFAULT_MODULI`].
    pub deg_m: BTreeMap<u64, usize>,
    pub sparsity: usize,
    pub spectral: SpectralSums,
}

pub fn algebra_summary(f: &TruthTable) -> Result<AlgebraSummary> {
    let integer = multilinear_coefficients(f, Modulus::Integers)?;
    let deg_m = DEFAULT_MODULI
        .iter()
        .map(|&m| {
            let reduced = integer
                .coefficients()
                .iter()
                .enumerate()
                .filter(|(_, &c)| c.rem_euclid(m as i64) != 0)
                .map(|(s, _)| s.count_ones() as usize)
                .max()
                .unwrap_or(0);
            (m, reduced)
        })
        .collect();
    let spectrum = fourier_transform(f)?;
    Ok(AlgebraSummary {
        deg: integer.degree(),
        deg_2: degree_f2(f),
        deg_m,
        sparsity: spectrum.sparsity(),
        spectral: spectrum.spectral_sums(),
    })
}
