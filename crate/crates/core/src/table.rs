//! Dense bit-packed truth tables.
//!
//! A table on `n` variables stores `2^n` bits. Bit `i` is the value on the
//! input whose big-endian `n`-bit encoding is `i`: variable `x_1` is the most
//! significant bit of the index and `x_n` the least significant. In code,
//! variable `j` (1-based) therefore lives at bit position `n - j` of an index.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::atomic::{AtomicUsize, Ordering};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Default largest arity that may be materialized densely.
pub const DEFAULT_DENSE_CAP: usize = 24;
/// Hard ceiling for the dense cap, whatever the override says.
pub const MAX_DENSE_CAP: usize = 30;
/// Environment variable that overrides the dense cap.
pub const DENSE_CAP_ENV: &str = "BOOLFN_DENSE_CAP";

static DENSE_CAP: AtomicUsize = AtomicUsize::new(0);

/// Current dense cap. Reads `BOOLFN_DENSE_CAP` on first use.
pub fn dense_cap() -> usize {
    let cap = DENSE_CAP.load(Ordering::Relaxed);
    if cap != 0 {
        return cap;
    }
    let cap = std::env::var(DENSE_CAP_ENV)
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .filter(|&c| c >= 1)
        .unwrap_or(DEFAULT_DENSE_CAP)
        .min(MAX_DENSE_CAP);
    // Lost races store the same value.
    DENSE_CAP.store(cap, Ordering::Relaxed);
    cap
}

/// Overrides the dense cap for this process (clamped to [`MAX_DENSE_CAP`]).
pub fn set_dense_cap(cap: usize) {
    DENSE_CAP.store(cap.clamp(1, MAX_DENSE_CAP), Ordering::Relaxed);
}

pub(crate) fn check_cap(what: &'static str, arity: usize, cap: usize) -> Result<()> {
    if arity > cap {
        Err(Error::AboveCap { what, arity, cap })
    } else {
        Ok(())
    }
}

#[inline]
fn word_count(arity: usize) -> usize {
    if arity <= 6 {
        1
    } else {
        1 << (arity - 6)
    }
}

/// Mask of the valid bits of the single word of a table with arity below 6.
#[inline]
fn small_mask(arity: usize) -> u64 {
    if arity >= 6 {
        u64::MAX
    } else {
        (1u64 << (1 << arity)) - 1
    }
}

/// Positions whose bit `p` is clear, for `p < 6`.
const LOW_HALF: [u64; 6] = [
    0x5555_5555_5555_5555,
    0x3333_3333_3333_3333,
    0x0F0F_0F0F_0F0F_0F0F,
    0x00FF_00FF_00FF_00FF,
    0x0000_FFFF_0000_FFFF,
    0x0000_0000_FFFF_FFFF,
];

/// Index of the input `x` (x[0] is `x_1`, the most significant bit).
pub fn index_of(x: &[bool]) -> u64 {
    x.iter().fold(0u64, |acc, &b| (acc << 1) | b as u64)
}

/// The `arity`-bit input with the given index, `x_1` first.
pub fn point_of(arity: usize, index: u64) -> Vec<bool> {
    (0..arity)
        .map(|j| (index >> (arity - 1 - j)) & 1 == 1)
        .collect()
}

/// Parses a point written as a string of `0`/`1` characters, `x_1` first.
pub fn parse_point(text: &str) -> Result<Vec<bool>> {
    text.trim()
        .chars()
        .map(|c| match c {
            '0' => Ok(false),
            '1' => Ok(true),
            other => Err(Error::Malformed(format!("point digit {other:?}"))),
        })
        .collect()
}

pub fn format_point(x: &[bool]) -> String {
    x.iter().map(|&b| if b { '1' } else { '0' }).collect()
}

/// Total function `{0,1}^n -> {0,1}` stored as packed bits.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TruthTable {
    arity: usize,
    words: Vec<u64>,
}

impl TruthTable {
    /// Constant function; fails above the dense cap.
    pub fn constant(arity: usize, value: bool) -> Result<Self> {
        check_cap("truth table", arity, dense_cap())?;
        let fill = if value { small_mask(arity) } else { 0 };
        Ok(Self {
            arity,
            words: vec![fill; word_count(arity)],
        })
    }

    /// Tabulates `f` over every input index.
    pub fn from_index_fn(arity: usize, mut f: impl FnMut(u64) -> bool) -> Result<Self> {
        let mut table = Self::constant(arity, false)?;
        for i in 0..table.len() {
            if f(i as u64) {
                table.words[i >> 6] |= 1 << (i & 63);
            }
        }
        Ok(table)
    }

    /// Builds a table from explicit values in index order.
    pub fn from_bits(arity: usize, bits: &[bool]) -> Result<Self> {
        let expected = 1usize.checked_shl(arity as u32).ok_or(Error::AboveCap {
            what: "truth table",
            arity,
            cap: dense_cap(),
        })?;
        if bits.len() != expected {
            return Err(Error::InvalidParam(format!(
                "expected {expected} values for arity {arity}, got {}",
                bits.len()
            )));
        }
        Self::from_index_fn(arity, |i| bits[i as usize])
    }

    /// Builds a table from raw words. Padding bits must be clear.
    pub fn from_words(arity: usize, words: Vec<u64>) -> Result<Self> {
        check_cap("truth table", arity, dense_cap())?;
        if words.len() != word_count(arity) {
            return Err(Error::InvalidParam(format!(
                "expected {} words for arity {arity}, got {}",
                word_count(arity),
                words.len()
            )));
        }
        if words[0] & !small_mask(arity) != 0 {
            return Err(Error::InvalidParam("bits set beyond 2^n".into()));
        }
        Ok(Self { arity, words })
    }

    /// Table whose value is the variable `x_var`.
    pub fn variable(arity: usize, var: usize) -> Result<Self> {
        if var == 0 || var > arity {
            return Err(Error::IndexOutOfRange { index: var, arity });
        }
        let p = arity - var;
        Self::from_index_fn(arity, |i| (i >> p) & 1 == 1)
    }

    #[inline]
    pub fn arity(&self) -> usize {
        self.arity
    }

    /// Number of inputs, `2^n`.
    #[inline]
    pub fn len(&self) -> usize {
        1 << self.arity
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        false
    }

    #[inline]
    pub fn words(&self) -> &[u64] {
        &self.words
    }

    /// Value at input index `i`.
    #[inline]
    pub fn get(&self, i: u64) -> bool {
        let i = i as usize;
        debug_assert!(i < self.len());
        (self.words[i >> 6] >> (i & 63)) & 1 == 1
    }

    /// Value at the point `x`, `x[0]` being `x_1`.
    pub fn evaluate(&self, x: &[bool]) -> Result<bool> {
        if x.len() != self.arity {
            return Err(Error::ArityMismatch {
                expected: self.arity,
                got: x.len(),
            });
        }
        Ok(self.get(index_of(x)))
    }

    pub fn count_ones(&self) -> u64 {
        self.words.iter().map(|w| w.count_ones() as u64).sum()
    }

    pub fn is_constant(&self) -> bool {
        let ones = self.count_ones();
        ones == 0 || ones == self.len() as u64
    }

    /// Pointwise complement.
    pub fn negate(&self) -> Self {
        let mask = small_mask(self.arity);
        Self {
            arity: self.arity,
            words: self.words.iter().map(|w| !w & mask).collect(),
        }
    }

    /// Pointwise XOR of two tables of equal arity.
    pub fn xor(&self, other: &Self) -> Result<Self> {
        if self.arity != other.arity {
            return Err(Error::ArityMismatch {
                expected: self.arity,
                got: other.arity,
            });
        }
        Ok(Self {
            arity: self.arity,
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(a, b)| a ^ b)
                .collect(),
        })
    }

    /// Whether flipping `x_var` changes the value somewhere.
    pub fn depends_on(&self, var: usize) -> Result<bool> {
        if var == 0 || var > self.arity {
            return Err(Error::IndexOutOfRange {
                index: var,
                arity: self.arity,
            });
        }
        let p = self.arity - var;
        if p < 6 {
            let shift = 1 << p;
            Ok(self
                .words
                .iter()
                .any(|&w| (w ^ (w >> shift)) & LOW_HALF[p] != 0))
        } else {
            let stride = 1 << (p - 6);
            Ok(self
                .words
                .chunks(2 * stride)
                .any(|block| block[..stride] != block[stride..]))
        }
    }

    /// True iff every variable is relevant.
    pub fn depends_on_all(&self) -> bool {
        (1..=self.arity).all(|v| self.depends_on(v).unwrap_or(false))
    }

    /// Fixes `x_var = value`; surviving variables keep their relative order.
    pub fn restrict_var(&self, var: usize, value: bool) -> Result<Self> {
        if var == 0 || var > self.arity {
            return Err(Error::IndexOutOfRange {
                index: var,
                arity: self.arity,
            });
        }
        let p = self.arity - var;
        let low = (1u64 << p) - 1;
        let fixed = (value as u64) << p;
        Ok(self.reindex(self.arity - 1, |j| ((j & !low) << 1) | fixed | (j & low)))
    }

    /// Applies a restriction, renumbering survivors in increasing original order.
    pub fn restrict(&self, r: &Restriction) -> Result<Self> {
        let n = self.arity;
        if let Some((&var, _)) = r.fixed.iter().find(|(&v, _)| v == 0 || v > n) {
            return Err(Error::IndexOutOfRange {
                index: var,
                arity: n,
            });
        }
        let base = r
            .fixed
            .iter()
            .fold(0u64, |acc, (&v, &b)| acc | ((b as u64) << (n - v)));
        let free: Vec<usize> = (1..=n)
            .filter(|v| !r.fixed.contains_key(v))
            .map(|v| n - v)
            .collect();
        let m = free.len();
        Ok(self.reindex(m, |j| {
            free.iter().enumerate().fold(base, |acc, (k, &pos)| {
                acc | (((j >> (m - 1 - k)) & 1) << pos)
            })
        }))
    }

    fn reindex(&self, arity: usize, map: impl Fn(u64) -> u64) -> Self {
        let mut words = vec![0u64; word_count(arity)];
        for j in 0..(1u64 << arity) {
            if self.get(map(j)) {
                words[(j >> 6) as usize] |= 1 << (j & 63);
            }
        }
        Self { arity, words }
    }

    /// Canonical `n:HEX` text form.
    pub fn to_text(&self) -> String {
        let digits = hex_digits(self.arity);
        let mut out = format!("{}:", self.arity);
        if self.arity < 6 {
            out.push_str(&format!("{:0width$X}", self.words[0], width = digits));
        } else {
            for w in self.words.iter().rev() {
                out.push_str(&format!("{w:016X}"));
            }
        }
        out
    }

    /// Parses the `n:HEX` text form.
    pub fn parse(text: &str) -> Result<Self> {
        let text = text.trim();
        let (head, hex) = text
            .split_once(':')
            .ok_or_else(|| Error::Malformed(format!("missing ':' in {text:?}")))?;
        if head.is_empty() || !head.bytes().all(|b| b.is_ascii_digit()) {
            return Err(Error::Malformed(format!("bad arity {head:?}")));
        }
        let arity: usize = head
            .parse()
            .map_err(|_| Error::Malformed(format!("bad arity {head:?}")))?;
        if let Some(c) = hex.chars().find(|c| !c.is_ascii_hexdigit()) {
            return Err(Error::Malformed(format!("non-hex digit {c:?}")));
        }
        check_cap("truth table", arity, dense_cap())?;
        let expected = hex_digits(arity);
        if hex.len() != expected {
            return Err(Error::WrongDigitCount {
                expected,
                got: hex.len(),
            });
        }
        let words: Vec<u64> = if arity < 6 {
            vec![u64::from_str_radix(hex, 16).expect("validated hex")]
        } else {
            hex.as_bytes()
                .chunks(16)
                .rev()
                .map(|chunk| {
                    let s = std::str::from_utf8(chunk).expect("ascii");
                    u64::from_str_radix(s, 16).expect("validated hex")
                })
                .collect()
        };
        if words[0] & !small_mask(arity) != 0 {
            return Err(Error::Malformed("bits set beyond 2^n".into()));
        }
        Ok(Self { arity, words })
    }
}

fn hex_digits(arity: usize) -> usize {
    if arity <= 2 {
        1
    } else {
        1 << (arity - 2)
    }
}

impl fmt::Display for TruthTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl fmt::Debug for TruthTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TruthTable({})", self.to_text())
    }
}

impl FromStr for TruthTable {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::parse(s)
    }
}

impl std::ops::Not for &TruthTable {
    type Output = TruthTable;

    fn not(self) -> TruthTable {
        self.negate()
    }
}

impl Serialize for TruthTable {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_text())
    }
}

impl<'de> Deserialize<'de> for TruthTable {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        Self::parse(&text).map_err(serde::de::Error::custom)
    }
}

/// Partial assignment of variables (1-based indices) to bits.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Restriction {
    fixed: BTreeMap<usize, bool>,
}

impl Restriction {
    /// Builds a restriction, rejecting repeated indices.
    pub fn new(pairs: impl IntoIterator<Item = (usize, bool)>) -> Result<Self> {
        let mut fixed = BTreeMap::new();
        for (var, bit) in pairs {
            if fixed.insert(var, bit).is_some() {
                return Err(Error::DuplicateIndex(var));
            }
        }
        Ok(Self { fixed })
    }

    pub fn single(var: usize, bit: bool) -> Self {
        Self {
            fixed: BTreeMap::from([(var, bit)]),
        }
    }

    pub fn fixed(&self) -> &BTreeMap<usize, bool> {
        &self.fixed
    }

    pub fn len(&self) -> usize {
        self.fixed.len()
    }

    pub fn is_empty(&self) -> bool {
        self.fixed.is_empty()
    }
}

/// Parses a corpus: one table per line, `#` starts a comment, blank lines
/// are ignored. Errors name the offending line.
pub fn parse_corpus(text: &str) -> Result<Vec<TruthTable>> {
    text.lines()
        .enumerate()
        .filter_map(|(i, line)| {
            let content = line.split('#').next().unwrap_or("").trim();
            (!content.is_empty()).then_some((i + 1, content))
        })
        .map(|(line, content)| {
            TruthTable::parse(content).map_err(|e| Error::Malformed(format!("line {line}: {e}")))
        })
        .collect()
}

/// Parity of `n` bits.
#[cfg(test)]
pub(crate) fn parity_table(n: usize) -> Result<TruthTable> {
    TruthTable::from_index_fn(n, |i| i.count_ones() % 2 == 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn corpus_skips_comments() {
        let c = parse_corpus("# header\n2:8\n\n  3:96  # parity\n").unwrap();
        assert_eq!(c.len(), 2);
        assert_eq!(c[1].to_text(), "3:96");
        let err = parse_corpus("2:8\n2:G\n").unwrap_err();
        assert!(err.to_string().contains("line 2"), "{err}");
    }

    fn and2() -> TruthTable {
        TruthTable::from_bits(2, &[false, false, false, true]).unwrap()
    }

    #[test]
    fn text_form_examples() {
        assert_eq!(and2().to_text(), "2:8");
        assert_eq!(TruthTable::constant(2, true).unwrap().to_text(), "2:F");
        assert_eq!(parity_table(3).unwrap().to_text(), "3:96");
        assert!(matches!(
            TruthTable::parse("3:G1"),
            Err(Error::Malformed(_))
        ));
        assert!(matches!(
            TruthTable::parse("3:961"),
            Err(Error::WrongDigitCount {
                expected: 2,
                got: 3
            })
        ));
        assert!(matches!(TruthTable::parse("x:1"), Err(Error::Malformed(_))));
        assert!(matches!(TruthTable::parse("21"), Err(Error::Malformed(_))));
        assert!(matches!(TruthTable::parse("1:F"), Err(Error::Malformed(_))));
        assert_eq!(TruthTable::parse("0:1").unwrap().arity(), 0);
        assert!(TruthTable::parse("0:1").unwrap().get(0));
    }

    #[test]
    fn wide_text_form_is_word_ordered() {
        let t = TruthTable::from_index_fn(7, |i| i == 0 || i == 127).unwrap();
        let text = t.to_text();
        assert_eq!(text.len(), 2 + 32);
        assert!(text.starts_with("7:8"));
        assert!(text.ends_with('1'));
        assert_eq!(TruthTable::parse(&text).unwrap(), t);
    }

    #[test]
    fn evaluate_uses_msb_first() {
        let t = parity_table(3).unwrap();
        assert!(!t.evaluate(&[true, false, true]).unwrap());
        let x1 = TruthTable::variable(3, 1).unwrap();
        assert!(x1.evaluate(&[true, false, false]).unwrap());
        assert!(!x1.evaluate(&[false, true, true]).unwrap());
        assert!(matches!(
            t.evaluate(&[true]),
            Err(Error::ArityMismatch {
                expected: 3,
                got: 1
            })
        ));
        assert!(!TruthTable::constant(3, false)
            .unwrap()
            .evaluate(&[true, true, false])
            .unwrap());
    }

    #[test]
    fn restrict_and2() {
        let f = and2();
        let r0 = f.restrict(&Restriction::single(1, false)).unwrap();
        assert_eq!(r0, TruthTable::constant(1, false).unwrap());
        let r1 = f.restrict(&Restriction::single(1, true)).unwrap();
        assert_eq!(r1, TruthTable::variable(1, 1).unwrap());
        assert!(matches!(
            f.restrict(&Restriction::single(3, true)),
            Err(Error::IndexOutOfRange { index: 3, arity: 2 })
        ));
        assert!(matches!(
            Restriction::new([(1, true), (1, false)]),
            Err(Error::DuplicateIndex(1))
        ));
    }

    #[test]
    fn depends_on_all_examples() {
        assert!(parity_table(7).unwrap().depends_on_all());
        assert!(!TruthTable::variable(2, 1).unwrap().depends_on_all());
        assert!(!TruthTable::variable(9, 3).unwrap().depends_on(9).unwrap());
        assert!(TruthTable::variable(9, 3).unwrap().depends_on(3).unwrap());
    }

    fn table_strategy(max_arity: usize) -> impl Strategy<Value = TruthTable> {
        (0..=max_arity).prop_flat_map(|n| {
            proptest::collection::vec(any::<bool>(), 1 << n)
                .prop_map(move |bits| TruthTable::from_bits(n, &bits).unwrap())
        })
    }

    proptest! {
        #[test]
        fn text_round_trip(t in table_strategy(10)) {
            prop_assert_eq!(TruthTable::parse(&t.to_text()).unwrap(), t);
        }

        #[test]
        fn restrictions_commute(t in table_strategy(8), a in 1usize..=8, b in 1usize..=8, va: bool, vb: bool) {
            let n = t.arity();
            prop_assume!(n >= 2 && a <= n && b <= n && a != b);
            let both = t.restrict(&Restriction::new([(a, va), (b, vb)]).unwrap()).unwrap();
            // After fixing a, indices above a shift down by one.
            let b_after_a = if b > a { b - 1 } else { b };
            let a_after_b = if a > b { a - 1 } else { a };
            let ab = t.restrict_var(a, va).unwrap().restrict_var(b_after_a, vb).unwrap();
            let ba = t.restrict_var(b, vb).unwrap().restrict_var(a_after_b, va).unwrap();
            prop_assert_eq!(&ab, &ba);
            prop_assert_eq!(&ab, &both);
        }

        #[test]
        fn double_negation(t in table_strategy(9)) {
            prop_assert_eq!(t.negate().negate(), t);
        }

        #[test]
        fn depends_on_matches_brute_force(t in table_strategy(8)) {
            let n = t.arity();
            for v in 1..=n {
                let p = n - v;
                let brute = (0..t.len() as u64).any(|i| t.get(i) != t.get(i ^ (1 << p)));
                prop_assert_eq!(t.depends_on(v).unwrap(), brute);
            }
        }
    }
}
