//! Exact latticeness deciders.
//!
//! A periodic set `reps + qZⁿ` that contains `qZⁿ` is a lattice iff its reps
//! form a group under subtraction mod `q`; [`brute_closure_oracle`] checks
//! exactly that. The remaining deciders work on the codes: the Schur-chain
//! condition for Construction C ([`thm1_check`]), and for Construction C* the
//! carry-set criterion ([`thm5_check`], necessary and sufficient) and the
//! antiprojection chain ([`thm4_check`], sufficient only).

use std::collections::BTreeSet;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::constructions::{construction_c, construction_d, MainCode, PeriodicConstellation};
use crate::error::{Error, Result};
use crate::gf2::{is_nested, schur_closed_chain, BinaryCode, BitWord, SchurWitness};

/// Default ceiling on pair scans.
pub const DEFAULT_PAIR_BUDGET: u128 = 1 << 32;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Lattice,
    NotLattice,
    /// A sufficient condition failed; nothing is claimed.
    Inconclusive,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Brute,
    Thm1,
    Thm4,
    Thm5,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    /// `(a − b) mod q` is not a rep.
    RepPair {
        a: Vec<u16>,
        b: Vec<u16>,
        difference: Vec<u16>,
    },
    /// A word of level `level` (1-based) missing from level `level + 1`.
    NotNested {
        level: usize,
        word: BitWord,
    },
    Schur(SchurWitness),
    /// The carry word `(0, s₁, …, s_{L−1})` of the pair lies outside 𝒞.
    Carry {
        c: BitWord,
        c_tilde: BitWord,
        carry: BitWord,
    },
    /// A failed link of the sufficient chain condition.
    Chain {
        link: String,
        word: BitWord,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CrossCheck {
    pub what: String,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LatticenessReport {
    pub verdict: Verdict,
    pub method: Method,
    pub witness: Option<Witness>,
    pub elapsed_ms: Option<u64>,
    pub pairs_scanned: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cross_check: Option<CrossCheck>,
}

impl LatticenessReport {
    fn new(
        verdict: Verdict,
        method: Method,
        witness: Option<Witness>,
        pairs: u64,
        t0: Instant,
    ) -> Self {
        LatticenessReport {
            verdict,
            method,
            witness,
            elapsed_ms: Some(t0.elapsed().as_millis() as u64),
            pairs_scanned: pairs,
            cross_check: None,
        }
    }

    pub fn is_lattice(&self) -> bool {
        self.verdict == Verdict::Lattice
    }
}

fn check_budget(what: &'static str, needed: u128, budget: u128) -> Result<()> {
    if needed > budget {
        return Err(Error::BudgetExceeded {
            what,
            needed,
            budget,
        });
    }
    Ok(())
}

fn sub_mod(a: &[u16], b: &[u16], q: u32) -> Vec<u16> {
    a.iter()
        .zip(b)
        .map(|(&x, &y)| ((x as u32 + q - y as u32) % q) as u16)
        .collect()
}

pub fn brute_closure_oracle(p: &PeriodicConstellation) -> Result<LatticenessReport> {
    brute_closure_oracle_with_budget(p, DEFAULT_PAIR_BUDGET)
}

pub fn brute_closure_oracle_with_budget(
    p: &PeriodicConstellation,
    budget: u128,
) -> Result<LatticenessReport> {
    let t0 = Instant::now();
    let reps = p.reps();
    let m = reps.len();
    check_budget("brute_closure_oracle", (m as u128) * (m as u128), budget)?;
    let q = p.q();
    let hit = reps.par_iter().enumerate().find_map_first(|(ia, a)| {
        reps.iter().enumerate().find_map(|(ib, b)| {
            let d = sub_mod(a, b, q);
            (!p.contains_rep(&d)).then(|| (ia, ib, a.clone(), b.clone(), d))
        })
    });
    Ok(match hit {
        None => LatticenessReport::new(Verdict::Lattice, Method::Brute, None, (m * m) as u64, t0),
        Some((ia, ib, a, b, difference)) => LatticenessReport::new(
            Verdict::NotLattice,
            Method::Brute,
            Some(Witness::RepPair { a, b, difference }),
            (ia * m + ib + 1) as u64,
            t0,
        ),
    })
}

/// Whether `−a mod q` is a rep for every rep `a`.
pub fn negation_closed(p: &PeriodicConstellation) -> bool {
    let zero = vec![0u16; p.n()];
    p.reps()
        .iter()
        .all(|a| p.contains_rep(&sub_mod(&zero, a, p.q())))
}

/// Nested Schur-closed chain test for Construction C from linear codes.
/// On a lattice verdict the rep sets of Constructions C and D are compared.
pub fn thm1_check(codes: &[BinaryCode], cap: u64) -> Result<LatticenessReport> {
    let t0 = Instant::now();
    if codes.iter().any(|c| !c.is_linear()) {
        return Err(Error::NotLinear("thm1_check"));
    }
    let pairs: u64 = codes.iter().map(|c| (c.len() * c.len()) as u64).sum();
    for (i, pair) in codes.windows(2).enumerate() {
        if !is_nested(&pair[0], &pair[1]) {
            let word = pair[0]
                .words()
                .iter()
                .find(|w| !pair[1].contains(w))
                .cloned()
                .expect("non-nested codes have an escaping word");
            return Ok(LatticenessReport::new(
                Verdict::NotLattice,
                Method::Thm1,
                Some(Witness::NotNested { level: i + 1, word }),
                0,
                t0,
            ));
        }
    }
    let chain = schur_closed_chain(codes);
    if let Some(w) = chain.witness {
        return Ok(LatticenessReport::new(
            Verdict::NotLattice,
            Method::Thm1,
            Some(Witness::Schur(w)),
            pairs,
            t0,
        ));
    }
    let c = construction_c(codes, cap)?;
    let d = construction_d(codes, cap)?;
    let mut report = LatticenessReport::new(Verdict::Lattice, Method::Thm1, None, pairs, t0);
    report.cross_check = Some(CrossCheck {
        what: "construction C reps equal construction D reps".into(),
        holds: c.reps() == d.reps(),
    });
    Ok(report)
}

/// Carries produced when two lifted main codewords are added.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CarryRecord {
    /// `s₁, …, s_{L−1}`: carry out of level `i` into level `i + 1`.
    pub s: Vec<BitWord>,
    /// Carry out of the top level, as integers.
    pub s_star: Vec<u32>,
    /// Per level (0-based): `[cᵢ ∗ c̃ᵢ, r_i^{(1)}, …, r_i^{(i−1)}]`; the
    /// carry out of that level is the sum of these pairwise disjoint words.
    pub terms: Vec<Vec<BitWord>>,
}

impl CarryRecord {
    /// The main-code word `(0, s₁, …, s_{L−1})`.
    pub fn carry_word(&self, n: usize) -> BitWord {
        let mut parts = Vec::with_capacity(self.s.len() + 1);
        parts.push(BitWord::zeros(n));
        parts.extend(self.s.iter().cloned());
        BitWord::concat(&parts)
    }
}

fn carry_terms_levels(c: &[BitWord], ct: &[BitWord]) -> CarryRecord {
    let levels = c.len();
    let n = c[0].len();
    let mut terms: Vec<Vec<BitWord>> = Vec::with_capacity(levels);
    for i in 0..levels {
        let and_i = c[i].and(&ct[i]);
        let mut row = vec![and_i];
        if i > 0 {
            let xor_i = c[i].xor(&ct[i]);
            // r_i^{(1)} = (cᵢ ⊕ c̃ᵢ) ∗ (c_{i−1} ∗ c̃_{i−1}); r_i^{(j)} = (cᵢ ⊕ c̃ᵢ) ∗ r_{i−1}^{(j−1)}
            let prev = &terms[i - 1];
            for t in prev {
                row.push(xor_i.and(t));
            }
        }
        terms.push(row);
    }
    let fold = |row: &[BitWord]| row.iter().fold(BitWord::zeros(n), |acc, t| acc.xor(t));
    let s: Vec<BitWord> = terms[..levels - 1].iter().map(|row| fold(row)).collect();
    let top = &terms[levels - 1];
    let s_star = (0..n)
        .map(|j| top.iter().map(|t| t.get(j) as u32).sum())
        .collect();
    CarryRecord { s, s_star, terms }
}

/// Carries for the pair `(c, c̃)` of main codewords of length `nL`.
pub fn carry_terms(c: &BitWord, c_tilde: &BitWord, n: usize, levels: usize) -> Result<CarryRecord> {
    if c.len() != c_tilde.len() {
        return Err(Error::LengthMismatch {
            left: c.len(),
            right: c_tilde.len(),
        });
    }
    if n * levels != c.len() || levels == 0 {
        return Err(Error::Levels(format!(
            "word length {} is not n·L = {}·{}",
            c.len(),
            n,
            levels
        )));
    }
    let split = |w: &BitWord| (0..levels).map(|i| w.slice(i * n, n)).collect::<Vec<_>>();
    Ok(carry_terms_levels(&split(c), &split(c_tilde)))
}

/// Right-hand side of the level-wise sum formula for `x + y` with `z = z̃ = 0`:
/// `(c₁ ⊕ c̃₁) + 2(s₁ ⊕ c₂ ⊕ c̃₂) + … + 2^L s*`.
pub fn carry_expansion(
    c: &BitWord,
    c_tilde: &BitWord,
    n: usize,
    levels: usize,
    rec: &CarryRecord,
) -> Vec<i64> {
    let mut out = vec![0i64; n];
    for i in 0..levels {
        let mut level = c.slice(i * n, n).xor(&c_tilde.slice(i * n, n));
        if i > 0 {
            level = level.xor(&rec.s[i - 1]);
        }
        for (j, o) in out.iter_mut().enumerate() {
            *o += (level.get(j) as i64) << i;
        }
    }
    for (o, &s) in out.iter_mut().zip(&rec.s_star) {
        *o += (s as i64) << levels;
    }
    out
}

fn pair_count(m: usize) -> u128 {
    (m as u128) * (m as u128 + 1) / 2
}

/// The set `𝒮` of carry words over all pairs, `c = c̃` included. Carries are
/// symmetric in the pair, so only `c ≤ c̃` is visited.
pub fn carry_set(main: &MainCode) -> Result<BTreeSet<BitWord>> {
    carry_set_with_budget(main, DEFAULT_PAIR_BUDGET)
}

pub fn carry_set_with_budget(main: &MainCode, budget: u128) -> Result<BTreeSet<BitWord>> {
    let words = main.code().words();
    check_budget("carry_set", pair_count(words.len()), budget)?;
    let (n, l) = (main.n(), main.levels());
    let set = words
        .par_iter()
        .enumerate()
        .fold(BTreeSet::new, |mut acc, (i, c)| {
            for ct in &words[i..] {
                let rec = carry_terms(c, ct, n, l).expect("uniform lengths");
                acc.insert(rec.carry_word(n));
            }
            acc
        })
        .reduce(BTreeSet::new, |mut a, b| {
            a.extend(b);
            a
        });
    Ok(set)
}

/// `Γ_{C*}` is a lattice iff every carry word lies in the main code.
pub fn thm5_check(main: &MainCode) -> Result<LatticenessReport> {
    thm5_check_with_budget(main, DEFAULT_PAIR_BUDGET)
}

pub fn thm5_check_with_budget(main: &MainCode, budget: u128) -> Result<LatticenessReport> {
    let t0 = Instant::now();
    if !main.is_linear() {
        return Err(Error::NotLinear("thm5_check"));
    }
    let words = main.code().words();
    let total = pair_count(words.len());
    check_budget("thm5_check", total, budget)?;
    let (n, l) = (main.n(), main.levels());
    let hit = words.par_iter().enumerate().find_map_first(|(i, c)| {
        words[i..].iter().find_map(|ct| {
            let carry = carry_terms(c, ct, n, l)
                .expect("uniform lengths")
                .carry_word(n);
            (!main.code().contains(&carry)).then(|| (c.clone(), ct.clone(), carry))
        })
    });
    Ok(match hit {
        None => LatticenessReport::new(Verdict::Lattice, Method::Thm5, None, total as u64, t0),
        Some((c, c_tilde, carry)) => LatticenessReport::new(
            Verdict::NotLattice,
            Method::Thm5,
            Some(Witness::Carry { c, c_tilde, carry }),
            total as u64,
            t0,
        ),
    })
}

/// One inclusion of the chain `𝒞₁ ⊆ S₂(0) ⊆ 𝒞₂ ⊆ … ⊆ S_L(0) ⊆ 𝒞_L`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChainLink {
    pub subset: String,
    pub superset: String,
    pub holds: bool,
    pub subset_size: u128,
    pub superset_size: u128,
    /// Set when the two sides are the same set.
    pub equal: bool,
}

/// Schur closure of `𝒞_{i−1}` into `S_i(0)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClosureCheck {
    pub level: usize,
    pub target: String,
    pub holds: bool,
    pub products_checked: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Thm4Report {
    pub report: LatticenessReport,
    pub chain: Vec<ChainLink>,
    pub closure: Vec<ClosureCheck>,
}

fn link(sub: (&str, &BinaryCode), sup: (&str, &BinaryCode)) -> (ChainLink, Option<BitWord>) {
    let escape = sub.1.words().iter().find(|w| !sup.1.contains(w)).cloned();
    let l = ChainLink {
        subset: sub.0.to_string(),
        superset: sup.0.to_string(),
        holds: escape.is_none(),
        subset_size: sub.1.len() as u128,
        superset_size: sup.1.len() as u128,
        equal: escape.is_none() && sub.1.len() == sup.1.len(),
    };
    (l, escape)
}

/// Sufficient condition for `Γ_{C*}` to be a lattice. Returns
/// [`Verdict::Inconclusive`] rather than a negative verdict when it fails.
///
/// Closure is checked on what the carries actually need: every product
/// `x ∗ y` with `x, y ∈ 𝒞_{i−1}`, and every recursion term `r_{i−1}^{(j)}`
/// arising from a pair of main codewords, must land in `S_i(0)`.
pub fn thm4_check(main: &MainCode) -> Result<Thm4Report> {
    let t0 = Instant::now();
    if !main.is_linear() {
        return Err(Error::NotLinear("thm4_check"));
    }
    let levels = main.levels();
    let proj = main.projection_codes();
    let zeros: Vec<BinaryCode> = (0..levels)
        .map(|i| main.antiprojection_at_zero(i))
        .collect();
    let name_c = |i: usize| format!("C{}", i + 1);
    let name_s = |i: usize| format!("S{}(0)", i + 1);

    let mut chain = Vec::new();
    let mut failure: Option<Witness> = None;
    for i in 1..levels {
        let steps = [
            ((name_c(i - 1), &proj[i - 1]), (name_s(i), &zeros[i])),
            ((name_s(i), &zeros[i]), (name_c(i), &proj[i])),
        ];
        for ((a, ca), (b, cb)) in steps {
            let (l, escape) = link((&a, ca), (&b, cb));
            if let (Some(word), None) = (escape, &failure) {
                failure = Some(Witness::Chain {
                    link: format!("{} ⊆ {}", l.subset, l.superset),
                    word,
                });
            }
            chain.push(l);
        }
    }

    let mut closure = Vec::new();
    let words = main.code().words();
    let (n, l) = (main.n(), levels);
    for i in 1..levels {
        let prev = proj[i - 1].words();
        let target = &zeros[i];
        let mut checked = 0u64;
        let mut escape: Option<BitWord> = None;
        'pairs: for (a, x) in prev.iter().enumerate() {
            for y in &prev[a..] {
                checked += 1;
                let p = x.and(y);
                if !target.contains(&p) {
                    escape = Some(p);
                    break 'pairs;
                }
            }
        }
        if escape.is_none() && i >= 2 {
            // recursion terms r_{i-1}^{(j)}, j ≥ 1, over main-codeword pairs
            let hit = words.par_iter().enumerate().find_map_first(|(a, c)| {
                words[a..].iter().find_map(|ct| {
                    let rec = carry_terms(c, ct, n, l).expect("uniform lengths");
                    rec.terms[i - 1][1..]
                        .iter()
                        .find(|t| !target.contains(t))
                        .cloned()
                })
            });
            checked += pair_count(words.len()) as u64;
            escape = hit;
        }
        let holds = escape.is_none();
        if let (Some(word), None) = (escape, &failure) {
            failure = Some(Witness::Chain {
                link: format!(
                    "{} closed into {} under Schur product",
                    name_c(i - 1),
                    name_s(i)
                ),
                word,
            });
        }
        closure.push(ClosureCheck {
            level: i + 1,
            target: name_s(i),
            holds,
            products_checked: checked,
        });
    }

    let pairs = closure.iter().map(|c| c.products_checked).sum();
    let verdict = if failure.is_none() {
        Verdict::Lattice
    } else {
        Verdict::Inconclusive
    };
    Ok(Thm4Report {
        report: LatticenessReport::new(verdict, Method::Thm4, failure, pairs, t0),
        chain,
        closure,
    })
}
