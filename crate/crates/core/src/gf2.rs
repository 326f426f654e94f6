//! Binary words and binary codes over F₂.
//!
//! A [`BitWord`] packs its coordinates into 64-bit limbs with coordinate 0 in
//! the most significant bit of the first limb, so the derived limb order is
//! the lexicographic order of the bit string. Unused trailing bits are zero.

use std::cmp::Ordering;
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use crate::error::{Error, Result};

/// Default ceiling on the number of words any enumeration may produce.
pub const DEFAULT_ENUM_CAP: u64 = 1 << 26;

/// Explicit word lists up to this size get their linearity verified by a
/// full pair scan.
pub const LINEARITY_SCAN_LIMIT: usize = 1 << 12;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitWord {
    len: usize,
    limbs: SmallVec<[u64; 2]>,
}

#[inline]
fn limb_count(len: usize) -> usize {
    len.div_ceil(64)
}

#[inline]
fn mask_for(j: usize) -> (usize, u64) {
    (j / 64, 1u64 << (63 - (j % 64)))
}

impl BitWord {
    pub fn zeros(len: usize) -> Self {
        assert!(len >= 1, "words have positive length");
        BitWord {
            len,
            limbs: SmallVec::from_elem(0, limb_count(len)),
        }
    }

    pub fn ones(len: usize) -> Self {
        let mut w = Self::zeros(len);
        for j in 0..len {
            w.set(j, true);
        }
        w
    }

    /// Builds a word from 0/1 values; any nonzero entry is read as 1.
    pub fn from_bits(bits: &[u8]) -> Self {
        let mut w = Self::zeros(bits.len());
        for (j, &b) in bits.iter().enumerate() {
            if b != 0 {
                w.set(j, true);
            }
        }
        w
    }

    /// Coordinate `j` is bit `j` of `value` (least significant first).
    pub fn from_u64(len: usize, value: u64) -> Self {
        assert!(len <= 64);
        let mut w = Self::zeros(len);
        for j in 0..len {
            if (value >> j) & 1 == 1 {
                w.set(j, true);
            }
        }
        w
    }

    /// Parses a string of `0`/`1` characters, ignoring whitespace and commas.
    pub fn parse(s: &str) -> Option<Self> {
        let bits: Option<Vec<u8>> = s
            .chars()
            .filter(|c| !c.is_whitespace() && *c != ',')
            .map(|c| match c {
                '0' => Some(0),
                '1' => Some(1),
                _ => None,
            })
            .collect();
        let bits = bits?;
        if bits.is_empty() {
            return None;
        }
        Some(Self::from_bits(&bits))
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, j: usize) -> bool {
        debug_assert!(j < self.len);
        let (l, m) = mask_for(j);
        self.limbs[l] & m != 0
    }

    #[inline]
    pub fn set(&mut self, j: usize, bit: bool) {
        debug_assert!(j < self.len);
        let (l, m) = mask_for(j);
        if bit {
            self.limbs[l] |= m;
        } else {
            self.limbs[l] &= !m;
        }
    }

    pub fn flip(&mut self, j: usize) {
        let (l, m) = mask_for(j);
        self.limbs[l] ^= m;
    }

    #[inline]
    pub fn weight(&self) -> usize {
        self.limbs.iter().map(|l| l.count_ones() as usize).sum()
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.limbs.iter().all(|&l| l == 0)
    }

    pub fn bits(&self) -> impl Iterator<Item = u8> + '_ {
        (0..self.len).map(move |j| self.get(j) as u8)
    }

    pub fn to_bits(&self) -> Vec<u8> {
        self.bits().collect()
    }

    fn check_len(&self, other: &Self) -> Result<()> {
        if self.len != other.len {
            return Err(Error::LengthMismatch {
                left: self.len,
                right: other.len,
            });
        }
        Ok(())
    }

    /// Componentwise XOR; panics on unequal lengths.
    #[inline]
    pub fn xor(&self, other: &Self) -> Self {
        assert_eq!(self.len, other.len, "xor of unequal lengths");
        BitWord {
            len: self.len,
            limbs: self
                .limbs
                .iter()
                .zip(&other.limbs)
                .map(|(a, b)| a ^ b)
                .collect(),
        }
    }

    /// Componentwise AND (the Schur product); panics on unequal lengths.
    #[inline]
    pub fn and(&self, other: &Self) -> Self {
        assert_eq!(self.len, other.len, "and of unequal lengths");
        BitWord {
            len: self.len,
            limbs: self
                .limbs
                .iter()
                .zip(&other.limbs)
                .map(|(a, b)| a & b)
                .collect(),
        }
    }

    pub fn xor_assign(&mut self, other: &Self) {
        assert_eq!(self.len, other.len);
        for (a, b) in self.limbs.iter_mut().zip(&other.limbs) {
            *a ^= b;
        }
    }

    /// Coordinates `start..start + len` as a new word.
    pub fn slice(&self, start: usize, len: usize) -> Self {
        assert!(start + len <= self.len);
        let mut w = Self::zeros(len);
        for j in 0..len {
            if self.get(start + j) {
                w.set(j, true);
            }
        }
        w
    }

    pub fn concat(parts: &[BitWord]) -> Self {
        let total: usize = parts.iter().map(|p| p.len).sum();
        let mut w = Self::zeros(total);
        let mut at = 0;
        for p in parts {
            for j in 0..p.len {
                if p.get(j) {
                    w.set(at + j, true);
                }
            }
            at += p.len;
        }
        w
    }

    /// Inverse of [`BitWord::from_u64`] for words of at most 64 bits.
    pub fn to_u64(&self) -> u64 {
        assert!(self.len <= 64);
        (0..self.len).fold(0u64, |acc, j| acc | ((self.get(j) as u64) << j))
    }
}

impl PartialOrd for BitWord {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for BitWord {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len
            .cmp(&other.len)
            .then_with(|| self.limbs.cmp(&other.limbs))
    }
}

impl fmt::Display for BitWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in self.bits() {
            write!(f, "{b}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitWord({self})")
    }
}

impl Serialize for BitWord {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for BitWord {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        BitWord::parse(&s).ok_or_else(|| serde::de::Error::custom(format!("bad bit word `{s}`")))
    }
}

pub fn hamming_weight(x: &BitWord) -> usize {
    x.weight()
}

pub fn hamming_distance(x: &BitWord, y: &BitWord) -> Result<usize> {
    x.check_len(y)?;
    Ok(x.limbs
        .iter()
        .zip(&y.limbs)
        .map(|(a, b)| (a ^ b).count_ones() as usize)
        .sum())
}

pub fn schur_product(x: &BitWord, y: &BitWord) -> Result<BitWord> {
    x.check_len(y)?;
    Ok(x.and(y))
}

/// Checks `x + y = (x ⊕ y) + 2(x ∗ y)` coordinatewise over the integers.
pub fn carry_identity_check(x: &BitWord, y: &BitWord) -> Result<bool> {
    x.check_len(y)?;
    let s = x.xor(y);
    let p = x.and(y);
    Ok((0..x.len()).all(|j| {
        let lhs = x.get(j) as u32 + y.get(j) as u32;
        let rhs = s.get(j) as u32 + 2 * p.get(j) as u32;
        lhs == rhs
    }))
}

/// Whether a code is known to be linear.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Linearity {
    Linear,
    Nonlinear,
    /// Too large for a pair scan and no generator was supplied.
    Unverified,
}

/// A deduplicated set of equal-length binary words.
#[derive(Debug, Clone)]
pub struct BinaryCode {
    n: usize,
    words: Vec<BitWord>,
    generator: Option<Vec<BitWord>>,
    linearity: Linearity,
}

/// Codes are equal when they have the same length and word set; the
/// generator a code was built from is not part of its identity.
impl PartialEq for BinaryCode {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.words == other.words
    }
}

impl Eq for BinaryCode {}

/// Reduces `columns` to an echelon basis; returns the independent rows,
/// each with a distinct pivot.
pub fn echelon_basis(columns: &[BitWord]) -> Vec<BitWord> {
    let mut basis: Vec<(usize, BitWord)> = Vec::new();
    for c in columns {
        let mut v = c.clone();
        for (pivot, b) in &basis {
            if v.get(*pivot) {
                v.xor_assign(b);
            }
        }
        if let Some(p) = (0..v.len()).find(|&j| v.get(j)) {
            for (_, b) in basis.iter_mut() {
                if b.get(p) {
                    b.xor_assign(&v);
                }
            }
            basis.push((p, v));
        }
    }
    basis.into_iter().map(|(_, b)| b).collect()
}

pub fn rank(columns: &[BitWord]) -> usize {
    echelon_basis(columns).len()
}

/// All 2^k sums of subsets of `basis`, visited in Gray-code order.
fn span_words(n: usize, basis: &[BitWord]) -> Vec<BitWord> {
    let k = basis.len();
    let mut out = Vec::with_capacity(1usize << k);
    let mut cur = BitWord::zeros(n);
    out.push(cur.clone());
    for i in 1u64..(1u64 << k) {
        let flip = i.trailing_zeros() as usize;
        cur.xor_assign(&basis[flip]);
        out.push(cur.clone());
    }
    out
}

fn check_cap(what: &'static str, log2_size: f64, cap: u64) -> Result<()> {
    if log2_size > (cap as f64).log2() + 1e-9 {
        return Err(Error::CapExceeded {
            what,
            log2_size,
            cap_log2: (cap as f64).log2(),
            hint: "",
        });
    }
    Ok(())
}

impl BinaryCode {
    /// Enumerates `{G·a : a ∈ F₂ᵏ}` where the columns of `G` are `columns`.
    pub fn from_generator(n: usize, columns: Vec<BitWord>, cap: u64) -> Result<Self> {
        for c in &columns {
            if c.len() != n {
                return Err(Error::LengthMismatch {
                    left: n,
                    right: c.len(),
                });
            }
        }
        let basis = echelon_basis(&columns);
        check_cap("enumerate_from_generator", basis.len() as f64, cap)?;
        let mut words = span_words(n, &basis);
        words.sort_unstable();
        Ok(BinaryCode {
            n,
            words,
            generator: Some(columns),
            linearity: Linearity::Linear,
        })
    }

    /// Builds a code from an explicit word list, verifying linearity by a
    /// pair scan when the list is small enough.
    pub fn from_words(n: usize, words: impl IntoIterator<Item = BitWord>) -> Result<Self> {
        let mut words: Vec<BitWord> = words.into_iter().collect();
        for w in &words {
            if w.len() != n {
                return Err(Error::LengthMismatch {
                    left: n,
                    right: w.len(),
                });
            }
        }
        words.sort_unstable();
        words.dedup();
        let linearity = if words.len() <= LINEARITY_SCAN_LIMIT {
            if is_closed_under_xor(&words) {
                Linearity::Linear
            } else {
                Linearity::Nonlinear
            }
        } else {
            Linearity::Unverified
        };
        Ok(BinaryCode {
            n,
            words,
            generator: None,
            linearity,
        })
    }

    /// Parses words written as bit strings, e.g. `["00", "11"]`.
    pub fn from_strs(words: &[&str]) -> Result<Self> {
        let parsed: Vec<BitWord> = words
            .iter()
            .enumerate()
            .map(|(i, s)| {
                BitWord::parse(s).ok_or_else(|| Error::Parse {
                    line: i + 1,
                    msg: format!("bad word `{s}`"),
                })
            })
            .collect::<Result<_>>()?;
        let n = parsed.first().map(|w| w.len()).unwrap_or(0);
        Self::from_words(n, parsed)
    }

    pub fn zero(n: usize) -> Self {
        BinaryCode {
            n,
            words: vec![BitWord::zeros(n)],
            generator: Some(Vec::new()),
            linearity: Linearity::Linear,
        }
    }

    /// F₂ⁿ itself.
    pub fn full_space(n: usize) -> Result<Self> {
        let cols = (0..n)
            .map(|j| {
                let mut w = BitWord::zeros(n);
                w.set(j, true);
                w
            })
            .collect();
        Self::from_generator(n, cols, DEFAULT_ENUM_CAP)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn words(&self) -> &[BitWord] {
        &self.words
    }

    pub fn generator(&self) -> Option<&[BitWord]> {
        self.generator.as_deref()
    }

    pub fn linearity(&self) -> Linearity {
        self.linearity
    }

    pub fn is_linear(&self) -> bool {
        self.linearity == Linearity::Linear
    }

    pub(crate) fn set_linearity(&mut self, linearity: Linearity) {
        self.linearity = linearity;
    }

    pub fn contains(&self, w: &BitWord) -> bool {
        w.len() == self.n && self.words.binary_search(w).is_ok()
    }

    /// Dimension over F₂ for linear codes.
    pub fn dimension(&self) -> Option<usize> {
        if !self.is_linear() {
            return None;
        }
        Some(self.words.len().trailing_zeros() as usize)
    }

    /// A basis for a linear code, taken from the generator when present.
    pub fn basis(&self) -> Option<Vec<BitWord>> {
        if !self.is_linear() {
            return None;
        }
        Some(match &self.generator {
            Some(g) => echelon_basis(g),
            None => echelon_basis(&self.words),
        })
    }

    pub fn min_hamming_distance(&self) -> Result<usize> {
        if self.words.len() < 2 {
            return Err(Error::TooFewWords(self.words.len()));
        }
        if self.is_linear() {
            Ok(self
                .words
                .iter()
                .filter(|w| !w.is_zero())
                .map(BitWord::weight)
                .min()
                .expect("linear code with two words has a nonzero word"))
        } else {
            Ok(min_distance_pair_scan(&self.words))
        }
    }

    /// Minimum nonzero weight, or `None` when the code has no nonzero word.
    pub fn min_nonzero_weight(&self) -> Option<usize> {
        self.words
            .iter()
            .filter(|w| !w.is_zero())
            .map(BitWord::weight)
            .min()
    }

    /// Histogram of weights, index = weight.
    pub fn weight_distribution(&self) -> Vec<u64> {
        let mut hist = vec![0u64; self.n + 1];
        for w in &self.words {
            hist[w.weight()] += 1;
        }
        hist
    }
}

fn is_closed_under_xor(sorted: &[BitWord]) -> bool {
    let Some(first) = sorted.first() else {
        return false;
    };
    if sorted.binary_search(&BitWord::zeros(first.len())).is_err() {
        return false;
    }
    sorted.par_iter().enumerate().all(|(i, a)| {
        sorted[i + 1..]
            .iter()
            .all(|b| sorted.binary_search(&a.xor(b)).is_ok())
    })
}

/// Minimum distance over all unordered pairs of distinct words.
pub fn min_distance_pair_scan(words: &[BitWord]) -> usize {
    words
        .par_iter()
        .enumerate()
        .map(|(i, a)| {
            words[i + 1..]
                .iter()
                .map(|b| a.xor(b).weight())
                .min()
                .unwrap_or(usize::MAX)
        })
        .min()
        .unwrap_or(usize::MAX)
}

/// Convenience wrapper matching the free-function form of the other checks.
pub fn enumerate_from_generator(n: usize, columns: Vec<BitWord>) -> Result<BinaryCode> {
    BinaryCode::from_generator(n, columns, DEFAULT_ENUM_CAP)
}

pub fn min_hamming_distance(code: &BinaryCode) -> Result<usize> {
    code.min_hamming_distance()
}

/// True iff every word of `a` lies in `b`.
pub fn is_nested(a: &BinaryCode, b: &BinaryCode) -> bool {
    a.n == b.n && a.words.iter().all(|w| b.contains(w))
}

/// A pair `x, y ∈ 𝒞_level` whose Schur product escapes `𝒞_{level+1}`.
/// `level` is 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SchurWitness {
    pub level: usize,
    pub x: BitWord,
    pub y: BitWord,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SchurChainCheck {
    pub closed: bool,
    pub witness: Option<SchurWitness>,
}

/// Checks `x ∗ y ∈ 𝒞_{i+1}` for every level `i < L` and every ordered pair
/// `x, y ∈ 𝒞_i`. The first failure in scan order is reported.
pub fn schur_closed_chain(codes: &[BinaryCode]) -> SchurChainCheck {
    for (i, pair) in codes.windows(2).enumerate() {
        let (cur, next) = (&pair[0], &pair[1]);
        let words = cur.words();
        let hit = words.iter().enumerate().find_map(|(a_idx, x)| {
            words[a_idx..]
                .iter()
                .find(|y| !next.contains(&x.and(y)))
                .map(|y| (x.clone(), y.clone()))
        });
        if let Some((x, y)) = hit {
            return SchurChainCheck {
                closed: false,
                witness: Some(SchurWitness { level: i + 1, x, y }),
            };
        }
    }
    SchurChainCheck {
        closed: true,
        witness: None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn w(s: &str) -> BitWord {
        BitWord::parse(s).unwrap()
    }

    fn repetition(n: usize) -> BinaryCode {
        BinaryCode::from_generator(n, vec![BitWord::ones(n)], DEFAULT_ENUM_CAP).unwrap()
    }

    fn even_parity(n: usize) -> BinaryCode {
        let cols = (1..n)
            .map(|j| {
                let mut v = BitWord::zeros(n);
                v.set(0, true);
                v.set(j, true);
                v
            })
            .collect();
        BinaryCode::from_generator(n, cols, DEFAULT_ENUM_CAP).unwrap()
    }

    #[test]
    fn distances() {
        assert_eq!(hamming_distance(&w("11"), &w("00")).unwrap(), 2);
        assert_eq!(hamming_distance(&w("101101"), &w("101101")).unwrap(), 0);
        assert_eq!(hamming_distance(&w("101101"), &w("001011")).unwrap(), 3);
        assert_eq!(hamming_weight(&w("11")), 2);
        assert!(matches!(
            hamming_distance(&w("1"), &w("10")),
            Err(Error::LengthMismatch { .. })
        ));
    }

    #[test]
    fn schur_products() {
        assert_eq!(schur_product(&w("1100"), &w("1010")).unwrap(), w("1000"));
        assert_eq!(schur_product(&w("11"), &w("11")).unwrap(), w("11"));
        let x = w("0110101");
        assert_eq!(schur_product(&x, &x).unwrap(), x);
        assert!(schur_product(&w("1"), &w("11")).is_err());
    }

    #[test]
    fn carry_identity_small() {
        assert!(carry_identity_check(&w("11"), &w("10")).unwrap());
        assert!(carry_identity_check(&w("00"), &w("00")).unwrap());
        // exhaustive at n = 3
        for a in 0..8u64 {
            for b in 0..8u64 {
                let (x, y) = (BitWord::from_u64(3, a), BitWord::from_u64(3, b));
                assert!(carry_identity_check(&x, &y).unwrap());
            }
        }
    }

    #[test]
    fn words_past_one_limb() {
        let mut x = BitWord::zeros(130);
        x.set(0, true);
        x.set(64, true);
        x.set(129, true);
        assert_eq!(x.weight(), 3);
        assert_eq!(x.slice(64, 66).weight(), 2);
        let y = BitWord::concat(&[x.slice(0, 64), x.slice(64, 66)]);
        assert_eq!(x, y);
        assert_eq!(BitWord::parse(&x.to_string()).unwrap(), x);
    }

    #[test]
    fn lexicographic_order() {
        let mut v = vec![w("011"), w("100"), w("001"), w("110")];
        v.sort();
        assert_eq!(v, vec![w("001"), w("011"), w("100"), w("110")]);
    }

    #[test]
    fn generator_enumeration() {
        let id2 = BinaryCode::from_generator(2, vec![w("10"), w("01")], DEFAULT_ENUM_CAP).unwrap();
        assert_eq!(id2.words(), &[w("00"), w("01"), w("10"), w("11")]);
        let rep = repetition(2);
        assert_eq!(rep.words(), &[w("00"), w("11")]);
        assert!(rep.is_linear());
        // dependent columns collapse
        let c = BinaryCode::from_generator(3, vec![w("110"), w("011"), w("101")], DEFAULT_ENUM_CAP)
            .unwrap();
        assert_eq!(c.len(), 4);
    }

    #[test]
    fn generator_cap() {
        let cols: Vec<_> = (0..12).map(|j| BitWord::from_u64(12, 1 << j)).collect();
        let err = BinaryCode::from_generator(12, cols, 1 << 10).unwrap_err();
        assert!(matches!(err, Error::CapExceeded { log2_size, .. } if log2_size == 12.0));
    }

    #[test]
    fn min_distances() {
        assert_eq!(repetition(24).min_hamming_distance().unwrap(), 24);
        assert_eq!(even_parity(24).min_hamming_distance().unwrap(), 2);
        assert!(matches!(
            BinaryCode::zero(4).min_hamming_distance(),
            Err(Error::TooFewWords(1))
        ));
        let nonlinear = BinaryCode::from_strs(&["0111", "1000", "1110"]).unwrap();
        assert_eq!(nonlinear.linearity(), Linearity::Nonlinear);
        assert_eq!(nonlinear.min_hamming_distance().unwrap(), 2);
    }

    #[test]
    fn nesting() {
        let c00_11 = BinaryCode::from_strs(&["00", "11"]).unwrap();
        assert!(is_nested(&c00_11, &even_parity(2)));
        let c00_10 = BinaryCode::from_strs(&["00", "10"]).unwrap();
        assert!(!is_nested(&c00_10, &c00_11));
        assert!(is_nested(&repetition(4), &even_parity(4)));
    }

    #[test]
    fn schur_chains() {
        let d4 = [repetition(4), even_parity(4)];
        assert!(schur_closed_chain(&d4).closed);
        let d3 = [repetition(3), even_parity(3)];
        let res = schur_closed_chain(&d3);
        assert!(!res.closed);
        assert_eq!(
            res.witness.unwrap(),
            SchurWitness {
                level: 1,
                x: w("111"),
                y: w("111")
            }
        );
        assert!(schur_closed_chain(&[BinaryCode::zero(3)]).closed);
    }

    #[test]
    fn explicit_linearity() {
        let c = BinaryCode::from_strs(&["0000", "1001", "1010", "0011"]).unwrap();
        assert!(c.is_linear());
        assert_eq!(c.dimension(), Some(2));
        let no_zero = BinaryCode::from_strs(&["01", "10", "11"]).unwrap();
        assert!(!no_zero.is_linear());
    }

    fn arb_word(n: usize) -> impl Strategy<Value = BitWord> {
        proptest::collection::vec(0u8..2, n).prop_map(|b| BitWord::from_bits(&b))
    }

    proptest! {
        #[test]
        fn carry_identity_always_holds(n in 1usize..=64, seed in any::<u64>()) {
            let mut s = seed;
            let mut next = || { s ^= s << 13; s ^= s >> 7; s ^= s << 17; s };
            let x = BitWord::from_u64(n, next() & (u64::MAX >> (64 - n)));
            let y = BitWord::from_u64(n, next() & (u64::MAX >> (64 - n)));
            prop_assert!(carry_identity_check(&x, &y).unwrap());
        }

        #[test]
        fn schur_algebra((x, y, z) in (1usize..12).prop_flat_map(|n| (arb_word(n), arb_word(n), arb_word(n)))) {
            prop_assert_eq!(x.and(&y), y.and(&x));
            prop_assert_eq!(x.and(&y).and(&z), x.and(&y.and(&z)));
            prop_assert_eq!(x.and(&x), x.clone());
        }

        #[test]
        fn generator_size_is_two_to_rank(n in 1usize..=10, k in 0usize..=10, seed in any::<u64>()) {
            let mut s = seed | 1;
            let cols: Vec<BitWord> = (0..k).map(|_| {
                s ^= s << 13; s ^= s >> 7; s ^= s << 17;
                BitWord::from_u64(n, s & ((1u64 << n) - 1))
            }).collect();
            let r = rank(&cols);
            let code = BinaryCode::from_generator(n, cols, DEFAULT_ENUM_CAP).unwrap();
            prop_assert_eq!(code.len(), 1usize << r);
            prop_assert!(code.is_linear());
        }

        #[test]
        fn weight_route_matches_pair_scan(n in 2usize..=12, k in 1usize..=8, seed in any::<u64>()) {
            let mut s = seed | 1;
            let cols: Vec<BitWord> = (0..k).map(|_| {
                s ^= s << 13; s ^= s >> 7; s ^= s << 17;
                BitWord::from_u64(n, s & ((1u64 << n) - 1))
            }).collect();
            let code = BinaryCode::from_generator(n, cols, DEFAULT_ENUM_CAP).unwrap();
            prop_assume!(code.len() >= 2);
            prop_assert_eq!(code.min_hamming_distance().unwrap(), min_distance_pair_scan(code.words()));
        }
    }

    #[test]
    fn triangle_inequality_exhaustive_n4() {
        let all: Vec<BitWord> = (0..16).map(|v| BitWord::from_u64(4, v)).collect();
        for x in &all {
            for y in &all {
                let dxy = hamming_distance(x, y).unwrap();
                assert_eq!(dxy, hamming_distance(y, x).unwrap());
                for z in &all {
                    let via = hamming_distance(x, z).unwrap() + hamming_distance(z, y).unwrap();
                    assert!(dxy <= via);
                }
            }
        }
    }
}
