//! Function populations for sweeps.

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::families::{address, gap_family, named_basic, BasicKind};
use crate::table::{check_cap, dense_cap, TruthTable};

/// Largest arity that can be enumerated exhaustively.
pub const MAX_EXHAUSTIVE_ARITY: usize = 4;

/// Every function on `n` variables, in order of the table read as an integer.
pub fn enumerate_functions(n: usize) -> Result<impl Iterator<Item = TruthTable>> {
    check_cap("exhaustive enumeration", n, MAX_EXHAUSTIVE_ARITY)?;
    let count = 1u64 << (1u64 << n);
    Ok((0..count).map(move |code| TruthTable::from_words(n, vec![code]).expect("fits")))
}

/// Deterministic pseudorandom tables: the same `(n, count, seed)` always
/// yields the same stream.
pub fn sample_functions(
    n: usize,
    count: usize,
    seed: u64,
) -> Result<impl Iterator<Item = TruthTable>> {
    check_cap("sample", n, dense_cap())?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let words = if n <= 6 { 1 } else { 1usize << (n - 6) };
    let mask = if n >= 6 {
        u64::MAX
    } else {
        (1u64 << (1u64 << n)) - 1
    };
    Ok((0..count).map(move |_| {
        let mut data: Vec<u64> = (0..words).map(|_| rng.next_u64()).collect();
        data[0] &= mask;
        TruthTable::from_words(n, data).expect("shape matches")
    }))
}

/// Description of a set of functions to sweep over.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Population {
    /// All functions of arity exactly `n`.
    Exhaustive {
        n: usize,
    },
    Sampled {
        n: usize,
        count: usize,
        seed: u64,
    },
    /// Gap-family members, address functions and baselines up to `max_arity`.
    Families {
        max_arity: usize,
    },
    Explicit {
        tables: Vec<TruthTable>,
    },
    Union {
        parts: Vec<Population>,
    },
}

impl Population {
    /// Exhaustive populations for every arity in `1..=max_n`.
    pub fn exhaustive_up_to(max_n: usize) -> Self {
        Population::Union {
            parts: (1..=max_n).map(|n| Population::Exhaustive { n }).collect(),
        }
    }

    pub fn members(&self) -> Result<Vec<TruthTable>> {
        match self {
            Population::Exhaustive { n } => Ok(enumerate_functions(*n)?.collect()),
            Population::Sampled { n, count, seed } => {
                Ok(sample_functions(*n, *count, *seed)?.collect())
            }
            Population::Families { max_arity } => family_members(*max_arity),
            Population::Explicit { tables } => Ok(tables.clone()),
            Population::Union { parts } => {
                let mut out = Vec::new();
                for part in parts {
                    out.extend(part.members()?);
                }
                Ok(out)
            }
        }
    }
}

fn family_members(max_arity: usize) -> Result<Vec<TruthTable>> {
    let cap = max_arity.min(dense_cap());
    let mut out = Vec::new();
    for k in 1.. {
        if (1usize << k) - 1 > cap {
            break;
        }
        out.push(gap_family(k)?.function.materialize()?);
    }
    for t in 1..=4 {
        if t + (1 << t) <= cap {
            out.push(address(t)?);
        }
    }
    for n in 1..=cap {
        out.push(named_basic(BasicKind::Parity, n)?);
        out.push(named_basic(BasicKind::And, n)?);
        out.push(named_basic(BasicKind::Or, n)?);
        if n % 2 == 1 {
            out.push(named_basic(BasicKind::Majority, n)?);
        }
        for k in 2..n {
            out.push(named_basic(BasicKind::Threshold(k), n)?);
        }
    }
    Ok(out)
}

/// Parses a sampling request, checking the dense cap up front.
pub fn sampled(n: usize, count: usize, seed: u64) -> Result<Population> {
    check_cap("sample", n, dense_cap())?;
    if count == 0 {
        return Err(Error::InvalidParam("sample count must be positive".into()));
    }
    Ok(Population::Sampled { n, count, seed })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn enumeration_counts() {
        assert_eq!(enumerate_functions(1).unwrap().count(), 4);
        assert_eq!(enumerate_functions(2).unwrap().count(), 16);
        assert_eq!(enumerate_functions(4).unwrap().count(), 65536);
        assert!(enumerate_functions(5).is_err());
        let first: Vec<String> = enumerate_functions(1)
            .unwrap()
            .map(|t| t.to_text())
            .collect();
        assert_eq!(first, ["1:0", "1:1", "1:2", "1:3"]);
    }

    #[test]
    fn sampling_is_deterministic() {
        let a: Vec<_> = sample_functions(5, 1000, 42).unwrap().collect();
        let b: Vec<_> = sample_functions(5, 1000, 42).unwrap().collect();
        assert_eq!(a, b);
        let c: Vec<_> = sample_functions(5, 1000, 43).unwrap().collect();
        assert_ne!(a, c);
        let t: Vec<_> = sample_functions(8, 10, 7).unwrap().collect();
        assert_eq!(t.len(), 10);
        assert!(t.iter().all(|f| f.len() == 256));
        assert!(matches!(
            sample_functions(25, 1, 0).err(),
            Some(Error::AboveCap { arity: 25, .. })
        ));
    }

    #[test]
    fn family_population() {
        let members = Population::Families { max_arity: 7 }.members().unwrap();
        assert!(members.iter().any(|t| t.arity() == 7));
        assert!(members.iter().all(|t| t.arity() <= 7));
        let json = serde_json::to_string(&Population::exhaustive_up_to(2)).unwrap();
        let back: Population = serde_json::from_str(&json).unwrap();
        assert_eq!(back.members().unwrap().len(), 4 + 16);
    }
}
