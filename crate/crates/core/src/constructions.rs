//! Lifting binary codes into periodic point sets of Zⁿ.
//!
//! Every constellation here is `reps + qZⁿ` with `q = 2^L`; the coset
//! representatives live in `{0, …, q−1}ⁿ` and are kept sorted.

use std::collections::BTreeSet;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf2::{echelon_basis, is_nested, BinaryCode, BitWord, Linearity, DEFAULT_ENUM_CAP};

/// Coordinates are stored in 16 bits, so at most 15 levels.
pub const MAX_LEVELS: usize = 15;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Source {
    A,
    C,
    Cstar,
    D,
    Custom,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PeriodicConstellation {
    n: usize,
    #[serde(rename = "L")]
    levels: usize,
    q: u32,
    source: Source,
    reps: Vec<Vec<u16>>,
}

impl PeriodicConstellation {
    pub fn new(n: usize, levels: usize, reps: Vec<Vec<u16>>, source: Source) -> Result<Self> {
        if n == 0 {
            return Err(Error::Domain("dimension must be positive".into()));
        }
        if levels == 0 || levels > MAX_LEVELS {
            return Err(Error::Levels(format!(
                "L = {levels} outside 1..={MAX_LEVELS}"
            )));
        }
        let q = 1u32 << levels;
        for r in &reps {
            if r.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    got: r.len(),
                });
            }
            if r.iter().any(|&v| v as u32 >= q) {
                return Err(Error::Domain(format!(
                    "rep {r:?} has a coordinate outside [0, {q})"
                )));
            }
        }
        let mut reps = reps;
        reps.sort_unstable();
        reps.dedup();
        if reps.is_empty() {
            return Err(Error::Domain(
                "a constellation needs at least one rep".into(),
            ));
        }
        Ok(PeriodicConstellation {
            n,
            levels,
            q,
            source,
            reps,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn levels(&self) -> usize {
        self.levels
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn source(&self) -> Source {
        self.source
    }

    pub fn reps(&self) -> &[Vec<u16>] {
        &self.reps
    }

    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    pub fn contains_rep(&self, rep: &[u16]) -> bool {
        self.reps
            .binary_search_by(|r| r.as_slice().cmp(rep))
            .is_ok()
    }

    pub fn contains_zero(&self) -> bool {
        self.reps.first().is_some_and(|r| r.iter().all(|&v| v == 0))
    }

    /// Reduces an integer vector into `[0, q)ⁿ`.
    pub fn reduce(&self, v: &[i64]) -> Vec<u16> {
        let q = self.q as i64;
        v.iter().map(|&x| x.rem_euclid(q) as u16).collect()
    }

    /// The same point set scaled by `2^shift`: reps multiply, period grows.
    pub fn scaled_by_pow2(&self, shift: usize) -> Result<Self> {
        let reps = self
            .reps
            .iter()
            .map(|r| r.iter().map(|&v| v << shift).collect())
            .collect();
        Self::new(self.n, self.levels + shift, reps, Source::Custom)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    /// Parses and re-validates the JSON schema `{n, L, q, source, reps}`.
    pub fn from_json(text: &str) -> Result<Self> {
        let raw: PeriodicConstellation = serde_json::from_str(text)?;
        let p = Self::new(raw.n, raw.levels, raw.reps, raw.source)?;
        if p.q != raw.q {
            return Err(Error::Domain(format!(
                "q = {} does not equal 2^L = {}",
                raw.q, p.q
            )));
        }
        Ok(p)
    }

    pub fn read(path: &Path) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }
}

/// A code of length `nL` read as `L` blocks of `n` bits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MainCode {
    inner: BinaryCode,
    n: usize,
    levels: usize,
}

impl MainCode {
    pub fn new(inner: BinaryCode, n: usize, levels: usize) -> Result<Self> {
        if levels == 0 || levels > MAX_LEVELS {
            return Err(Error::Levels(format!(
                "L = {levels} outside 1..={MAX_LEVELS}"
            )));
        }
        if inner.n() != n * levels {
            return Err(Error::Levels(format!(
                "main code length {} is not n·L = {}·{}",
                inner.n(),
                n,
                levels
            )));
        }
        Ok(MainCode { inner, n, levels })
    }

    pub fn from_strs(words: &[&str], n: usize, levels: usize) -> Result<Self> {
        Self::new(BinaryCode::from_strs(words)?, n, levels)
    }

    /// The Cartesian product `𝒞₁ × … × 𝒞_L`.
    pub fn product(codes: &[BinaryCode], cap: u64) -> Result<Self> {
        let n = common_length(codes)?;
        let log2: f64 = codes.iter().map(|c| (c.len() as f64).log2()).sum();
        if log2 > (cap as f64).log2() + 1e-9 {
            return Err(Error::CapExceeded {
                what: "product main code",
                log2_size: log2,
                cap_log2: (cap as f64).log2(),
                hint: "",
            });
        }
        let mut words = vec![Vec::<BitWord>::new()];
        for c in codes {
            words = words
                .into_iter()
                .flat_map(|prefix| {
                    c.words().iter().map(move |w| {
                        let mut p = prefix.clone();
                        p.push(w.clone());
                        p
                    })
                })
                .collect();
        }
        let words: Vec<BitWord> = words.iter().map(|parts| BitWord::concat(parts)).collect();
        let all_linear = codes.iter().all(BinaryCode::is_linear);
        let mut inner = BinaryCode::from_words(n * codes.len(), words)?;
        if all_linear {
            inner = inner.assume_linearity(Linearity::Linear);
        }
        Self::new(inner, n, codes.len())
    }

    pub fn code(&self) -> &BinaryCode {
        &self.inner
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn levels(&self) -> usize {
        self.levels
    }

    pub fn is_linear(&self) -> bool {
        self.inner.is_linear()
    }

    /// Block `i` (0-based) of a main codeword.
    pub fn level(&self, word: &BitWord, i: usize) -> BitWord {
        word.slice(i * self.n, self.n)
    }

    pub fn split(&self, word: &BitWord) -> Vec<BitWord> {
        (0..self.levels).map(|i| self.level(word, i)).collect()
    }

    /// `c₁ + 2c₂ + … + 2^{L−1}c_L`, reduced mod `2^L` (already in range).
    pub fn lift(&self, word: &BitWord) -> Vec<u16> {
        lift_levels(&self.split(word))
    }

    /// Projection codes `𝒞₁, …, 𝒞_L` (index 0 is level 1).
    pub fn projection_codes(&self) -> Vec<BinaryCode> {
        (0..self.levels)
            .map(|i| {
                let words: Vec<BitWord> = self
                    .inner
                    .words()
                    .iter()
                    .map(|w| self.level(w, i))
                    .collect();
                let code = BinaryCode::from_words(self.n, words).expect("uniform block length");
                if self.is_linear() {
                    code.assume_linearity(Linearity::Linear)
                } else {
                    code
                }
            })
            .collect()
    }

    /// Level-`i` (0-based) words compatible with `fixed`, which lists the
    /// other `L − 1` blocks in level order.
    pub fn antiprojection(&self, i: usize, fixed: &[BitWord]) -> Result<BinaryCode> {
        if i >= self.levels {
            return Err(Error::Levels(format!(
                "level {} outside 1..={}",
                i + 1,
                self.levels
            )));
        }
        if fixed.len() + 1 != self.levels {
            return Err(Error::Levels(format!(
                "antiprojection needs {} fixed words, got {}",
                self.levels - 1,
                fixed.len()
            )));
        }
        for f in fixed {
            if f.len() != self.n {
                return Err(Error::LengthMismatch {
                    left: self.n,
                    right: f.len(),
                });
            }
        }
        let words: Vec<BitWord> = self
            .inner
            .words()
            .iter()
            .filter(|w| {
                (0..self.levels)
                    .filter(|&j| j != i)
                    .zip(fixed)
                    .all(|(j, f)| self.level(w, j) == *f)
            })
            .map(|w| self.level(w, i))
            .collect();
        BinaryCode::from_words(self.n, words)
    }

    /// `S_i(0, …, 0)` for 0-based level `i`.
    pub fn antiprojection_at_zero(&self, i: usize) -> BinaryCode {
        let zeros = vec![BitWord::zeros(self.n); self.levels - 1];
        self.antiprojection(i, &zeros)
            .expect("level index checked by caller")
    }
}

impl BinaryCode {
    /// Overrides the recorded linearity; for codes whose structure implies it
    /// (products and projections of linear codes).
    pub(crate) fn assume_linearity(self, linearity: Linearity) -> Self {
        let mut c = self;
        c.set_linearity(linearity);
        c
    }
}

fn common_length(codes: &[BinaryCode]) -> Result<usize> {
    let first = codes
        .first()
        .ok_or_else(|| Error::Levels("at least one level code is required".into()))?;
    if codes.len() > MAX_LEVELS {
        return Err(Error::Levels(format!(
            "{} levels exceed the maximum of {MAX_LEVELS}",
            codes.len()
        )));
    }
    for c in codes {
        if c.n() != first.n() {
            return Err(Error::LengthMismatch {
                left: first.n(),
                right: c.n(),
            });
        }
    }
    Ok(first.n())
}

/// `Σ 2^{i} · levels[i]` as a point of `{0, …, 2^L − 1}ⁿ`.
pub fn lift_levels(levels: &[BitWord]) -> Vec<u16> {
    let n = levels[0].len();
    (0..n)
        .map(|j| {
            levels
                .iter()
                .enumerate()
                .fold(0u16, |acc, (i, c)| acc | ((c.get(j) as u16) << i))
        })
        .collect()
}

fn cap_check(what: &'static str, log2_size: f64, cap: u64, hint: &'static str) -> Result<()> {
    if log2_size > (cap as f64).log2() + 1e-9 {
        return Err(Error::CapExceeded {
            what,
            log2_size,
            cap_log2: (cap as f64).log2(),
            hint,
        });
    }
    Ok(())
}

pub fn construction_a(code: &BinaryCode) -> PeriodicConstellation {
    let reps = code
        .words()
        .iter()
        .map(|w| lift_levels(std::slice::from_ref(w)))
        .collect();
    PeriodicConstellation::new(code.n(), 1, reps, Source::A).expect("single level is valid")
}

/// `𝒞₁ + 2𝒞₂ + … + 2^{L−1}𝒞_L + 2^L Zⁿ`.
pub fn construction_c(codes: &[BinaryCode], cap: u64) -> Result<PeriodicConstellation> {
    let n = common_length(codes)?;
    let log2: f64 = codes.iter().map(|c| (c.len() as f64).log2()).sum();
    cap_check("construction_c", log2, cap, "")?;
    let mut reps: Vec<Vec<u16>> = vec![vec![0u16; n]];
    for (i, code) in codes.iter().enumerate() {
        let mut next = Vec::with_capacity(reps.len() * code.len());
        for r in &reps {
            for w in code.words() {
                let mut v = r.clone();
                for (j, x) in v.iter_mut().enumerate() {
                    *x |= (w.get(j) as u16) << i;
                }
                next.push(v);
            }
        }
        reps = next;
    }
    PeriodicConstellation::new(n, codes.len(), reps, Source::C)
}

pub fn construction_cstar(main: &MainCode, cap: u64) -> Result<PeriodicConstellation> {
    cap_check(
        "construction_cstar",
        (main.code().len() as f64).log2(),
        cap,
        "; use the structured Leech routines for codes that cannot be enumerated",
    )?;
    let reps = main.code().words().iter().map(|w| main.lift(w)).collect();
    PeriodicConstellation::new(main.n(), main.levels(), reps, Source::Cstar)
}

pub fn associated_construction_c(main: &MainCode, cap: u64) -> Result<PeriodicConstellation> {
    construction_c(&main.projection_codes(), cap)
}

/// A basis `b₁, …, b_n` of F₂ⁿ whose first `k_i` vectors span `𝒞_i`, built
/// greedily level by level and completed with unit vectors in index order.
/// Returns the basis and the dimensions `k_i`.
pub fn construction_d_basis(codes: &[BinaryCode]) -> Result<(Vec<BitWord>, Vec<usize>)> {
    let n = common_length(codes)?;
    if codes.iter().any(|c| !c.is_linear()) {
        return Err(Error::NotLinear("construction_d"));
    }
    for (i, pair) in codes.windows(2).enumerate() {
        if !is_nested(&pair[0], &pair[1]) {
            return Err(Error::NotNested {
                level: i + 1,
                next: i + 2,
            });
        }
    }
    let mut basis: Vec<BitWord> = Vec::new();
    let mut dims = Vec::with_capacity(codes.len());
    let extend = |basis: &mut Vec<BitWord>, candidates: &[BitWord]| {
        for c in candidates {
            let mut trial = basis.clone();
            trial.push(c.clone());
            if echelon_basis(&trial).len() > basis.len() {
                basis.push(c.clone());
            }
        }
    };
    for code in codes {
        let cands = code.basis().expect("linear");
        extend(&mut basis, &cands);
        dims.push(basis.len());
    }
    let units: Vec<BitWord> = (0..n)
        .map(|j| {
            let mut e = BitWord::zeros(n);
            e.set(j, true);
            e
        })
        .collect();
    extend(&mut basis, &units);
    Ok((basis, dims))
}

/// Construction D with the greedy basis of [`construction_d_basis`].
pub fn construction_d(codes: &[BinaryCode], cap: u64) -> Result<PeriodicConstellation> {
    let (basis, _) = construction_d_basis(codes)?;
    construction_d_with_basis(codes, &basis, cap)
}

/// Construction D from a caller-supplied basis; the first `k_i` vectors must
/// span `𝒞_i`.
pub fn construction_d_with_basis(
    codes: &[BinaryCode],
    basis: &[BitWord],
    cap: u64,
) -> Result<PeriodicConstellation> {
    let n = common_length(codes)?;
    let levels = codes.len();
    let q = 1u32 << levels;
    let mut dims = Vec::with_capacity(levels);
    for code in codes {
        let k = code.dimension().ok_or(Error::NotLinear("construction_d"))?;
        if basis.len() < k {
            return Err(Error::Domain("basis shorter than code dimension".into()));
        }
        let span = BinaryCode::from_generator(n, basis[..k].to_vec(), DEFAULT_ENUM_CAP)?;
        if span.words() != code.words() {
            return Err(Error::Domain(format!(
                "first {k} basis vectors do not span the level code"
            )));
        }
        dims.push(k);
    }
    let mut reps: BTreeSet<Vec<u16>> = BTreeSet::new();
    reps.insert(vec![0u16; n]);
    for (i, &k) in dims.iter().enumerate() {
        cap_check("construction_d", k as f64, cap, "")?;
        // integer sums Σ_{j<k} α_j ψ(b_j), scaled by 2^i, mod q
        let mut level_vals: BTreeSet<Vec<u32>> = BTreeSet::new();
        for mask in 0u64..(1u64 << k) {
            let mut v = vec![0u32; n];
            for (j, b) in basis[..k].iter().enumerate() {
                if (mask >> j) & 1 == 1 {
                    for (t, x) in v.iter_mut().enumerate() {
                        *x += b.get(t) as u32;
                    }
                }
            }
            level_vals.insert(v.iter().map(|&x| (x << i) % q).collect());
        }
        let mut next = BTreeSet::new();
        for r in &reps {
            for lv in &level_vals {
                next.insert(
                    r.iter()
                        .zip(lv)
                        .map(|(&a, &b)| ((a as u32 + b) % q) as u16)
                        .collect::<Vec<u16>>(),
                );
            }
        }
        cap_check("construction_d", (next.len() as f64).log2(), cap, "")?;
        reps = next;
    }
    PeriodicConstellation::new(n, levels, reps.into_iter().collect(), Source::D)
}

pub fn membership(p: &PeriodicConstellation, v: &[i64]) -> Result<bool> {
    if v.len() != p.n() {
        return Err(Error::DimensionMismatch {
            expected: p.n(),
            got: v.len(),
        });
    }
    Ok(p.contains_rep(&p.reduce(v)))
}
