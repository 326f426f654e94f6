//! Built-in codes: repetition and parity codes, the extended Golay code, the
//! worked examples, and the three-level main code of the Leech lattice.

use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::codefile::write_code;
use crate::constructions::MainCode;
use crate::error::{Error, Result};
use crate::geometry::{dmin_to_zero_structured, upper_bound_from_weights, Prefix};
use crate::gf2::{BinaryCode, BitWord, DEFAULT_ENUM_CAP};
use crate::latticeness::{
    ChainLink, ClosureCheck, LatticenessReport, Method, Thm4Report, Verdict, Witness,
};
use crate::packing::{packing_from_counts, PackingReport};

pub fn repetition(n: usize) -> BinaryCode {
    BinaryCode::from_generator(n, vec![BitWord::ones(n)], DEFAULT_ENUM_CAP).expect("one generator")
}

/// The `(n, n−1, 2)` even-weight code.
pub fn even_parity(n: usize) -> Result<BinaryCode> {
    let cols = (1..n)
        .map(|j| {
            let mut v = BitWord::zeros(n);
            v.set(0, true);
            v.set(j, true);
            v
        })
        .collect();
    BinaryCode::from_generator(n, cols, DEFAULT_ENUM_CAP)
}

/// Rows of the 12×12 block `B`; the Golay generator is `[I₁₂; B]`, so the
/// word for message `a` is `(a, B·a)`.
pub const GOLAY_B: [&str; 12] = [
    "110111000101",
    "101110001011",
    "011100010111",
    "111000101101",
    "110001011011",
    "100010110111",
    "000101101111",
    "001011011101",
    "010110111001",
    "101101110001",
    "011011100011",
    "111111111110",
];

fn golay_b_rows() -> [u16; 12] {
    let mut rows = [0u16; 12];
    for (r, s) in GOLAY_B.iter().enumerate() {
        for (k, ch) in s.bytes().enumerate() {
            rows[r] |= ((ch == b'1') as u16) << k;
        }
    }
    rows
}

/// `(a, B·a)` packed with coordinate `j` at bit `j`.
fn golay_encode(rows: &[u16; 12], a: u16) -> u32 {
    let mut w = a as u32;
    for (r, &row) in rows.iter().enumerate() {
        w |= ((row & a).count_ones() & 1) << (12 + r);
    }
    w
}

/// All 4096 Golay words as packed 24-bit integers, in message order.
pub fn golay24_packed() -> Vec<u32> {
    let rows = golay_b_rows();
    (0..4096u16).map(|a| golay_encode(&rows, a)).collect()
}

/// `H = (B | I₁₂)` applied to a packed word.
pub fn golay_syndrome(word: u32) -> u16 {
    let rows = golay_b_rows();
    let a = (word & 0xfff) as u16;
    let tail = (word >> 12) as u16;
    let mut s = 0u16;
    for (r, &row) in rows.iter().enumerate() {
        s |= (((row & a).count_ones() & 1) as u16) << r;
    }
    s ^ tail
}

pub fn golay24() -> BinaryCode {
    let rows = golay_b_rows();
    let cols = (0..12)
        .map(|k| BitWord::from_u64(24, golay_encode(&rows, 1 << k) as u64))
        .collect();
    BinaryCode::from_generator(24, cols, DEFAULT_ENUM_CAP).expect("12 generators")
}

/// Repetition and even-parity codes, and whether the two-level
/// Construction C they give is a lattice (`n` even).
pub fn dn_plus(n: usize) -> Result<(Vec<BinaryCode>, bool)> {
    if n < 2 {
        return Err(Error::Domain(format!("D_n+ needs n ≥ 2, got {n}")));
    }
    Ok((vec![repetition(n), even_parity(n)?], n.is_multiple_of(2)))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CatalogEntry {
    /// A main code for Construction C*.
    Main(MainCode),
    /// Level codes for Construction C.
    Family(Vec<BinaryCode>),
}

pub const PAPER_EXAMPLES: [&str; 9] = [
    "ex1",
    "ex2",
    "ex4",
    "ex5",
    "ex7",
    "ex9",
    "ex10",
    "ex13",
    "ex13-swapped",
];

fn main(words: &[&str], n: usize, levels: usize) -> CatalogEntry {
    CatalogEntry::Main(MainCode::from_strs(words, n, levels).expect("catalog code is well formed"))
}

fn family(levels: &[&[&str]]) -> CatalogEntry {
    CatalogEntry::Family(
        levels
            .iter()
            .map(|w| BinaryCode::from_strs(w).expect("catalog code is well formed"))
            .collect(),
    )
}

pub fn paper_example(id: &str) -> Result<CatalogEntry> {
    Ok(match id {
        "ex1" => family(&[&["00", "11"], &["00"]]),
        "ex2" => family(&[&["00", "11"], &["00", "11"], &["00"]]),
        "ex4" => main(&["0000", "1001", "1010", "0011"], 2, 2),
        "ex5" | "ex7" => main(&["0000", "0010", "1001", "1011"], 2, 2),
        "ex9" => main(
            &[
                "000000", "101101", "001011", "100110", "000010", "001001", "100100", "101111",
            ],
            2,
            3,
        ),
        "ex10" => main(&["000", "101", "011", "110"], 1, 3),
        "ex13" => main(&["00000000", "11111100", "00001111", "11110011"], 4, 2),
        "ex13-swapped" => main(&["00000000", "11001111", "11110000", "00111111"], 4, 2),
        other => return Err(Error::UnknownCatalog(other.to_string())),
    })
}

/// Code-file text for a catalog entry; families give one file per level.
pub fn export(entry: &CatalogEntry) -> Vec<String> {
    match entry {
        CatalogEntry::Main(m) => vec![write_code(m.code())],
        CatalogEntry::Family(codes) => codes.iter().map(write_code).collect(),
    }
}

/// Main code `{(0⃗, a, x) : a ∈ 𝒜, wt(x) even} ∪ {(1⃗, a, y) : a ∈ 𝒜, wt(y) odd}`
/// of length `3n`. With `𝒜` the extended Golay code this gives the Leech
/// lattice; its `2·|𝒜|·2^{n−1}` words are never listed.
#[derive(Debug, Clone)]
pub struct LeechMainCode {
    n: usize,
    middle: BinaryCode,
    packed: Vec<u32>,
}

/// One prefix `(c₁, c₂)` with the parity required of `c₃`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LeechPrefix {
    pub ones: bool,
    pub middle: u32,
    pub odd: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SchurParityScan {
    pub pairs: u64,
    /// Pairs whose Schur product has odd weight.
    pub violations: u64,
    /// Pairs whose sum has odd weight (the `r`-terms at level 3).
    pub sum_violations: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LeechReport {
    pub verdict: Verdict,
    pub chain: Vec<ChainLink>,
    pub closure: Vec<ClosureCheck>,
    pub schur_scan: SchurParityScan,
    pub dmin2: u64,
    pub dmin2_upper_bound: u64,
    pub packing: PackingReport,
    pub associated_c_dmin2: u64,
    pub associated_c_packing: PackingReport,
    pub elapsed_ms: Option<u64>,
}

fn packed(w: &BitWord) -> u32 {
    w.to_u64() as u32
}

impl Default for LeechMainCode {
    fn default() -> Self {
        Self::new()
    }
}

impl LeechMainCode {
    pub fn new() -> Self {
        let words = golay24_packed();
        LeechMainCode {
            n: 24,
            middle: golay24(),
            packed: words,
        }
    }

    /// Same structure around another linear middle code of length `n ≤ 32`.
    pub fn with_middle(middle: BinaryCode) -> Result<Self> {
        let n = middle.n();
        if !(2..=32).contains(&n) {
            return Err(Error::Domain(format!(
                "middle code length {n} outside 2..=32"
            )));
        }
        if !middle.is_linear() {
            return Err(Error::NotLinear("LeechMainCode::with_middle"));
        }
        let packed = middle.words().iter().map(packed).collect();
        Ok(LeechMainCode { n, middle, packed })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn middle(&self) -> &BinaryCode {
        &self.middle
    }

    /// `log₂ |𝒞|`.
    pub fn size_log2(&self) -> f64 {
        1.0 + (self.packed.len() as f64).log2() + (self.n - 1) as f64
    }

    pub fn size(&self) -> u128 {
        2 * self.packed.len() as u128 * (1u128 << (self.n - 1))
    }

    /// Membership of a word of length `3n`: level 1 constant, level 2 in the
    /// middle code, level-3 parity equal to the level-1 bit.
    pub fn contains(&self, w: &BitWord) -> bool {
        let n = self.n;
        if w.len() != 3 * n {
            return false;
        }
        let c1 = w.slice(0, n);
        let ones = if c1.is_zero() {
            false
        } else if c1.weight() == n {
            true
        } else {
            return false;
        };
        self.middle.contains(&w.slice(n, n)) && (w.slice(2 * n, n).weight() % 2 == 1) == ones
    }

    pub fn prefix_stream(&self) -> impl Iterator<Item = LeechPrefix> + '_ {
        [false, true].into_iter().flat_map(move |ones| {
            self.packed.iter().map(move |&m| LeechPrefix {
                ones,
                middle: m,
                odd: ones,
            })
        })
    }

    pub fn prefixes(&self) -> Vec<Prefix> {
        let n = self.n;
        self.prefix_stream()
            .map(|p| Prefix {
                levels: vec![
                    if p.ones {
                        BitWord::ones(n)
                    } else {
                        BitWord::zeros(n)
                    },
                    BitWord::from_u64(n, p.middle as u64),
                ],
                odd: p.odd,
            })
            .collect()
    }

    /// Every ordered pair of middle words: the Schur product and the sum
    /// must both have even weight.
    pub fn schur_parity_scan(&self) -> SchurParityScan {
        let words = &self.packed;
        let (violations, sum_violations) = words
            .par_iter()
            .map(|&a| {
                words.iter().fold((0u64, 0u64), |(v, s), &b| {
                    (
                        v + ((a & b).count_ones() & 1) as u64,
                        s + ((a ^ b).count_ones() & 1) as u64,
                    )
                })
            })
            .reduce(|| (0, 0), |x, y| (x.0 + y.0, x.1 + y.1));
        SchurParityScan {
            pairs: (words.len() as u64).pow(2),
            violations,
            sum_violations,
        }
    }

    /// Minimum nonzero weights of `S₁(0)`, `S₂(0)` and `S₃(0)`.
    ///
    /// `S₁(0)` is `{0}` since `1⃗` needs an odd third level; `S₂(0)` is the
    /// middle code; `S₃(0)` is the even-weight code.
    pub fn antiprojection_zero_weights(&self) -> [Option<usize>; 3] {
        [None, self.middle.min_nonzero_weight(), Some(2)]
    }

    /// Minimum nonzero weights of the projection codes: repetition, the
    /// middle code, and `F₂ⁿ`.
    pub fn projection_weights(&self) -> [Option<usize>; 3] {
        [Some(self.n), self.middle.min_nonzero_weight(), Some(1)]
    }

    /// The sufficient chain condition, checked from the structure: each
    /// set in `𝒞₁ ⊆ S₂(0) ⊆ 𝒞₂ ⊆ S₃(0) ⊆ 𝒞₃` is known in closed form, so only
    /// the middle-code memberships and parities need scanning.
    pub fn thm4_trace(&self) -> Thm4Report {
        let t0 = Instant::now();
        let n = self.n;
        let mid = self.packed.len() as u128;
        let full = 1u128 << n;
        let all_ones = BitWord::ones(n);
        let ones_in_middle = self.middle.contains(&all_ones);
        // (0⃗, a, 0⃗) is a codeword for every middle word a
        let s2_is_middle = self.packed.iter().all(|&a| {
            self.contains(&BitWord::concat(&[
                BitWord::zeros(n),
                BitWord::from_u64(n, a as u64),
                BitWord::zeros(n),
            ]))
        });
        let odd_middle = self
            .packed
            .iter()
            .find(|a| a.count_ones() % 2 == 1)
            .copied();
        let mut chain = vec![
            ChainLink {
                subset: "C1".into(),
                superset: "S2(0)".into(),
                holds: ones_in_middle,
                subset_size: 2,
                superset_size: mid,
                equal: false,
            },
            ChainLink {
                subset: "S2(0)".into(),
                superset: "C2".into(),
                holds: true,
                subset_size: if s2_is_middle { mid } else { 0 },
                superset_size: mid,
                equal: s2_is_middle,
            },
            ChainLink {
                subset: "C2".into(),
                superset: "S3(0)".into(),
                holds: odd_middle.is_none(),
                subset_size: mid,
                superset_size: full / 2,
                equal: false,
            },
            ChainLink {
                subset: "S3(0)".into(),
                superset: "C3".into(),
                holds: true,
                subset_size: full / 2,
                superset_size: full,
                equal: false,
            },
        ];
        chain[1].holds = s2_is_middle;

        let scan = self.schur_parity_scan();
        let closure = vec![
            ClosureCheck {
                level: 2,
                target: "S2(0)".into(),
                // products of 0⃗ and 1⃗ are 0⃗ and 1⃗
                holds: ones_in_middle,
                products_checked: 3,
            },
            ClosureCheck {
                level: 3,
                target: "S3(0)".into(),
                holds: scan.violations == 0 && scan.sum_violations == 0,
                products_checked: scan.pairs,
            },
        ];
        let witness = if !ones_in_middle {
            Some(Witness::Chain {
                link: "C1 ⊆ S2(0)".into(),
                word: all_ones,
            })
        } else if let Some(a) = odd_middle {
            Some(Witness::Chain {
                link: "C2 ⊆ S3(0)".into(),
                word: BitWord::from_u64(n, a as u64),
            })
        } else if !closure[1].holds {
            Some(Witness::Chain {
                link: "C2 closed into S3(0) under Schur product".into(),
                word: BitWord::zeros(n),
            })
        } else {
            None
        };
        let verdict = if witness.is_none() && chain.iter().all(|l| l.holds) {
            Verdict::Lattice
        } else {
            Verdict::Inconclusive
        };
        Thm4Report {
            report: LatticenessReport {
                verdict,
                method: Method::Thm4,
                witness,
                elapsed_ms: Some(t0.elapsed().as_millis() as u64),
                pairs_scanned: scan.pairs + 3,
                cross_check: None,
            },
            chain,
            closure,
        }
    }

    pub fn dmin2(&self) -> u64 {
        dmin_to_zero_structured(&self.prefixes(), self.n, 3).expect("nonempty prefixes")
    }

    /// Squared minimum distance of the associated Construction C from the
    /// projection weights.
    pub fn associated_c_dmin2(&self) -> u64 {
        upper_bound_from_weights(&self.projection_weights())
    }

    pub fn associated_c_size(&self) -> u128 {
        2 * self.packed.len() as u128 * (1u128 << self.n)
    }

    /// Full verification. The distance to zero is the minimum distance
    /// because the verdict is lattice.
    pub fn report(&self) -> Result<LeechReport> {
        let t0 = Instant::now();
        let thm4 = self.thm4_trace();
        let schur_scan = self.schur_parity_scan();
        let dmin2 = self.dmin2();
        let assoc = self.associated_c_dmin2();
        Ok(LeechReport {
            verdict: thm4.report.verdict,
            chain: thm4.chain,
            closure: thm4.closure,
            schur_scan,
            dmin2,
            dmin2_upper_bound: upper_bound_from_weights(&self.antiprojection_zero_weights()),
            packing: packing_from_counts(self.n, 3, self.size(), dmin2)?,
            associated_c_dmin2: assoc,
            associated_c_packing: packing_from_counts(self.n, 3, self.associated_c_size(), assoc)?,
            elapsed_ms: Some(t0.elapsed().as_millis() as u64),
        })
    }

    /// Lists every codeword; only for small `n`.
    pub fn to_main_code(&self, cap: u64) -> Result<MainCode> {
        let n = self.n;
        if self.size() > cap as u128 {
            return Err(Error::CapExceeded {
                what: "LeechMainCode::to_main_code",
                log2_size: self.size_log2(),
                cap_log2: (cap as f64).log2(),
                hint: "; use the structured routines instead",
            });
        }
        let mut words = Vec::with_capacity(self.size() as usize);
        for p in self.prefix_stream() {
            let c1 = if p.ones {
                BitWord::ones(n)
            } else {
                BitWord::zeros(n)
            };
            let c2 = BitWord::from_u64(n, p.middle as u64);
            for x in 0u64..(1 << n) {
                if (x.count_ones() % 2 == 1) == p.odd {
                    words.push(BitWord::concat(&[
                        c1.clone(),
                        c2.clone(),
                        BitWord::from_u64(n, x),
                    ]));
                }
            }
        }
        let code = BinaryCode::from_words(3 * n, words)?;
        MainCode::new(code, n, 3)
    }
}
