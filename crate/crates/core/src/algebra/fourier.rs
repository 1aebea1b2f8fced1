//! Exact Walsh–Hadamard spectra.
//!
//! Coefficients are kept scaled by `2^n`, so for `F = 1 − 2f` the stored
//! value at `S` is `Σ_x F(x)·χ_S(x) = 2^n·F̂(S)`, an integer.

use serde::Serialize;

use crate::error::Result;
use crate::rational::{self, dyadic, Rational};
use crate::table::{check_cap, dense_cap, TruthTable};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FourierSpectrum {
    arity: usize,
    scaled: Vec<i32>,
}

/// Integer fast Walsh–Hadamard transform, in place, unnormalized.
pub fn fwht_in_place(values: &mut [i32]) {
    let len = values.len();
    let mut h = 1;
    while h < len {
        for block in values.chunks_mut(2 * h) {
            let (lo, hi) = block.split_at_mut(h);
            for (a, b) in lo.iter_mut().zip(hi.iter_mut()) {
                let (x, y) = (*a, *b);
                *a = x + y;
                *b = x - y;
            }
        }
        h <<= 1;
    }
}

pub fn fourier_transform(f: &TruthTable) -> Result<FourierSpectrum> {
    check_cap("fourier transform", f.arity(), dense_cap())?;
    let mut scaled: Vec<i32> = (0..f.len() as u64)
        .map(|x| if f.get(x) { -1 } else { 1 })
        .collect();
    fwht_in_place(&mut scaled);
    Ok(FourierSpectrum {
        arity: f.arity(),
        scaled,
    })
}

/// Number of nonzero Fourier coefficients of `1 − 2f`.
pub fn sparsity(f: &TruthTable) -> Result<usize> {
    Ok(fourier_transform(f)?.sparsity())
}

/// Exact spectral sums of `1 − 2f`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SpectralSums {
    /// `Σ |F̂(S)|`
    #[serde(serialize_with = "rational::serde_text::serialize")]
    pub l1: Rational,
    /// `Σ |F̂(S)|·|S|`
    #[serde(serialize_with = "rational::serde_text::serialize")]
    pub weighted: Rational,
    /// `Σ |S|²·F̂(S)²`
    #[serde(serialize_with = "rational::serde_text::serialize")]
    pub weighted2: Rational,
}

pub fn spectral_sums(f: &TruthTable) -> Result<SpectralSums> {
    Ok(fourier_transform(f)?.spectral_sums())
}

impl FourierSpectrum {
    pub fn arity(&self) -> usize {
        self.arity
    }

    /// `2^n·F̂(S)` in subset-mask order.
    pub fn scaled(&self) -> &[i32] {
        &self.scaled
    }

    pub fn coefficient(&self, mask: u64) -> Rational {
        dyadic(self.scaled[mask as usize] as i128, self.arity)
    }

    pub fn sparsity(&self) -> usize {
        self.scaled.iter().filter(|&&c| c != 0).count()
    }

    /// Largest `|S|` with `F̂(S) ≠ 0`; equals `deg(f)`.
    pub fn degree(&self) -> usize {
        self.nonzero_weights().map(|(w, _)| w).max().unwrap_or(0)
    }

    fn nonzero_weights(&self) -> impl Iterator<Item = (usize, i128)> + '_ {
        self.scaled
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(s, &c)| (s.count_ones() as usize, c as i128))
    }

    /// `Σ_S (2^n F̂(S))²`; Parseval says this is `4^n`.
    pub fn sum_of_squares(&self) -> i128 {
        self.scaled.iter().map(|&c| (c as i128) * (c as i128)).sum()
    }

    pub fn parseval_holds(&self) -> bool {
        self.sum_of_squares() == 1i128 << (2 * self.arity)
    }

    /// `Σ_S |S|·(2^n F̂(S))²`, i.e. `4^n·I[f]`.
    pub fn scaled_influence(&self) -> i128 {
        self.nonzero_weights().map(|(w, c)| w as i128 * c * c).sum()
    }

    /// `Σ_S |S|·F̂(S)²`.
    pub fn influence(&self) -> Rational {
        dyadic(self.scaled_influence(), 2 * self.arity)
    }

    /// `Σ_S |S|·|2^n F̂(S)|`.
    pub fn scaled_weighted_l1(&self) -> i128 {
        self.nonzero_weights()
            .map(|(w, c)| w as i128 * c.abs())
            .sum()
    }

    pub fn spectral_sums(&self) -> SpectralSums {
        let n = self.arity;
        let l1: i128 = self.scaled.iter().map(|&c| (c as i128).abs()).sum();
        let w2: i128 = self
            .nonzero_weights()
            .map(|(w, c)| (w * w) as i128 * c * c)
            .sum();
        SpectralSums {
            l1: dyadic(l1, n),
            weighted: dyadic(self.scaled_weighted_l1(), n),
            weighted2: dyadic(w2, 2 * n),
        }
    }

    /// CSV with header `subset_mask,scaled_coefficient`, one row per subset.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("subset_mask,scaled_coefficient\n");
        for (s, c) in self.scaled.iter().enumerate() {
            out.push_str(&format!("{s},{c}\n"));
        }
        out
    }
}
