//! Multilinear representations via the subset Möbius transform.
//!
//! Coefficients are indexed by subset masks that use the same bit layout as
//! table indices: variable `x_j` is bit `n - j`.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::table::{check_cap, dense_cap, TruthTable};

/// Ring over which coefficients are taken.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Modulus {
    Integers,
    Mod(u64),
}

impl Modulus {
    fn validate(self) -> Result<Self> {
        match self {
            Modulus::Mod(m) if m < 2 => Err(Error::InvalidModulus(m)),
            other => Ok(other),
        }
    }
}

/// The unique multilinear polynomial agreeing with a function on `{0,1}^n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultilinearPoly {
    arity: usize,
    modulus: Modulus,
    coeffs: Vec<i64>,
}

/// In-place Möbius transform: `c_S = Σ_{T⊆S} (−1)^{|S|−|T|} v_T`.
pub(crate) fn mobius_in_place(values: &mut [i64]) {
    let len = values.len();
    let mut bit = 1;
    while bit < len {
        for s in 0..len {
            if s & bit != 0 {
                values[s] -= values[s ^ bit];
            }
        }
        bit <<= 1;
    }
}

/// In-place zeta transform, the inverse of [`mobius_in_place`].
pub(crate) fn zeta_in_place(values: &mut [i64]) {
    let len = values.len();
    let mut bit = 1;
    while bit < len {
        for s in 0..len {
            if s & bit != 0 {
                values[s] += values[s ^ bit];
            }
        }
        bit <<= 1;
    }
}

pub fn multilinear_coefficients(f: &TruthTable, modulus: Modulus) -> Result<MultilinearPoly> {
    let modulus = modulus.validate()?;
    check_cap("multilinear coefficients", f.arity(), dense_cap())?;
    let mut coeffs: Vec<i64> = (0..f.len() as u64).map(|x| f.get(x) as i64).collect();
    mobius_in_place(&mut coeffs);
    if let Modulus::Mod(m) = modulus {
        let m = m as i64;
        coeffs.iter_mut().for_each(|c| *c = c.rem_euclid(m));
    }
    Ok(MultilinearPoly {
        arity: f.arity(),
        modulus,
        coeffs,
    })
}

impl MultilinearPoly {
    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    /// Coefficients in subset-mask order.
    pub fn coefficients(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn coefficient(&self, mask: u64) -> i64 {
        self.coeffs[mask as usize]
    }

    /// Largest `|S|` with a nonzero coefficient (0 for the zero polynomial).
    pub fn degree(&self) -> usize {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(s, _)| s.count_ones() as usize)
            .max()
            .unwrap_or(0)
    }

    /// Evaluates the polynomial everywhere (reduced mod m when applicable).
    pub fn evaluations(&self) -> Vec<i64> {
        let mut values = self.coeffs.clone();
        zeta_in_place(&mut values);
        if let Modulus::Mod(m) = self.modulus {
            values.iter_mut().for_each(|v| *v = v.rem_euclid(m as i64));
        }
        values
    }

    /// Rebuilds the table; `None` if some evaluation is not 0 or 1.
    pub fn to_table(&self) -> Option<TruthTable> {
        let values = self.evaluations();
        if values.iter().any(|&v| v != 0 && v != 1) {
            return None;
        }
        TruthTable::from_index_fn(self.arity, |x| values[x as usize] == 1).ok()
    }

    /// Nonzero coefficients keyed by subset mask.
    pub fn nonzero(&self) -> BTreeMap<u64, i64> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(s, &c)| (s as u64, c))
            .collect()
    }

    /// JSON object mapping decimal subset masks to coefficients.
    pub fn to_json(&self) -> serde_json::Value {
        let map: serde_json::Map<String, serde_json::Value> = self
            .nonzero()
            .into_iter()
            .map(|(s, c)| (s.to_string(), c.into()))
            .collect();
        serde_json::Value::Object(map)
    }
}

/// `deg(f)` over the integers or `deg_m(f)`.
pub fn degree(f: &TruthTable, modulus: Modulus) -> Result<usize> {
    Ok(multilinear_coefficients(f, modulus)?.degree())
}

/// Algebraic normal form over F₂ as a packed table of coefficient bits.
pub fn anf_f2(f: &TruthTable) -> TruthTable {
    const HIGH: [u64; 6] = [
        0xAAAA_AAAA_AAAA_AAAA,
        0xCCCC_CCCC_CCCC_CCCC,
        0xF0F0_F0F0_F0F0_F0F0,
        0xFF00_FF00_FF00_FF00,
        0xFFFF_0000_FFFF_0000,
        0xFFFF_FFFF_0000_0000,
    ];
    let n = f.arity();
    let mut words = f.words().to_vec();
    for (p, &high) in HIGH.iter().enumerate().take(n.min(6)) {
        for w in words.iter_mut() {
            *w ^= (*w << (1 << p)) & high;
        }
    }
    for p in 6..n {
        let stride = 1 << (p - 6);
        for block in words.chunks_mut(2 * stride) {
            let (low, high) = block.split_at_mut(stride);
            high.iter_mut().zip(low.iter()).for_each(|(h, l)| *h ^= l);
        }
    }
    let words = if n < 6 {
        let mask = (1u64 << (1 << n)) - 1;
        words.into_iter().map(|w| w & mask).collect()
    } else {
        words
    };
    TruthTable::from_words(n, words).expect("same shape")
}

/// `deg_2(f)` from the bit-packed ANF.
pub fn degree_f2(f: &TruthTable) -> usize {
    let anf = anf_f2(f);
    (0..anf.len() as u64)
        .filter(|&s| anf.get(s))
        .map(|s| s.count_ones() as usize)
        .max()
        .unwrap_or(0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{gap_family, majority, named_basic, parity, BasicKind};
    use proptest::prelude::*;

    #[test]
    fn and_and_parity_coefficients() {
        let and2 = named_basic(BasicKind::And, 2).unwrap();
        let p = multilinear_coefficients(&and2, Modulus::Integers).unwrap();
        assert_eq!(p.coefficients(), &[0, 0, 0, 1]);

        let p2 = parity(2).unwrap();
        let p = multilinear_coefficients(&p2, Modulus::Integers).unwrap();
        assert_eq!(p.coefficients(), &[0, 1, 1, -2]);
        let q = multilinear_coefficients(&p2, Modulus::Mod(2)).unwrap();
        assert_eq!(q.nonzero(), BTreeMap::from([(1, 1), (2, 1)]));
        assert_eq!(q.to_json(), serde_json::json!({"1": 1, "2": 1}));
    }

    #[test]
    fn degree_examples() {
        for k in 1..=4 {
            let f = gap_family(k).unwrap().function.materialize().unwrap();
            assert_eq!(degree(&f, Modulus::Integers).unwrap(), k);
        }
        let p = parity(6).unwrap();
        assert_eq!(degree(&p, Modulus::Integers).unwrap(), 6);
        assert_eq!(degree(&p, Modulus::Mod(2)).unwrap(), 1);
        assert_eq!(degree(&majority(3).unwrap(), Modulus::Mod(2)).unwrap(), 2);
        assert_eq!(
            anf_f2(&majority(3).unwrap()).to_text(),
            // xy ⊕ yz ⊕ xz: masks 3, 5, 6
            "3:68"
        );
        assert!(matches!(
            degree(&p, Modulus::Mod(1)),
            Err(Error::InvalidModulus(1))
        ));
    }

    fn table_strategy(max_arity: usize) -> impl Strategy<Value = TruthTable> {
        (0..=max_arity).prop_flat_map(|n| {
            proptest::collection::vec(any::<bool>(), 1 << n)
                .prop_map(move |bits| TruthTable::from_bits(n, &bits).unwrap())
        })
    }

    proptest! {
        #[test]
        fn mobius_zeta_round_trip(t in table_strategy(10), m in 2u64..=6) {
            let over_z = multilinear_coefficients(&t, Modulus::Integers).unwrap();
            prop_assert_eq!(over_z.to_table().unwrap(), t.clone());
            let over_m = multilinear_coefficients(&t, Modulus::Mod(m)).unwrap();
            prop_assert_eq!(over_m.to_table().unwrap(), t.clone());
        }

        #[test]
        fn packed_anf_matches_integer_route(t in table_strategy(10)) {
            let reduced = multilinear_coefficients(&t, Modulus::Mod(2)).unwrap();
            let anf = anf_f2(&t);
            for s in 0..t.len() as u64 {
                prop_assert_eq!(anf.get(s), reduced.coefficient(s) == 1);
            }
            prop_assert_eq!(degree_f2(&t), reduced.degree());
        }
    }
}
