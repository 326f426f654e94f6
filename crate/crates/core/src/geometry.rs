//! Distances and symmetry diagnostics for periodic constellations.
//!
//! All distances are squared and integral. A difference `a − b` between two
//! reps is reduced to its centered residue in `(−q/2, q/2]` per coordinate,
//! which picks the nearest integer translate independently in each coordinate.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::constructions::{MainCode, PeriodicConstellation};
use crate::error::{Error, Result};
use crate::gf2::{BinaryCode, BitWord};
use crate::latticeness::DEFAULT_PAIR_BUDGET;

/// Residue of `v` mod `q` in `(−q/2, q/2]`.
pub fn centered(v: i64, q: i64) -> i64 {
    let r = v.rem_euclid(q);
    if 2 * r > q {
        r - q
    } else {
        r
    }
}

fn centered_norm(a: &[u16], b: &[u16], q: u32) -> u64 {
    a.iter()
        .zip(b)
        .map(|(&x, &y)| {
            let d = centered(x as i64 - y as i64, q as i64);
            (d * d) as u64
        })
        .sum()
}

fn q_squared(p: &PeriodicConstellation) -> u64 {
    (p.q() as u64).pow(2)
}

/// Squared minimum distance of `reps + qZⁿ`.
pub fn dmin_oracle(p: &PeriodicConstellation) -> Result<u64> {
    let reps = p.reps();
    let m = reps.len() as u128;
    if m * m > DEFAULT_PAIR_BUDGET {
        return Err(Error::BudgetExceeded {
            what: "dmin_oracle",
            needed: m * m,
            budget: DEFAULT_PAIR_BUDGET,
        });
    }
    let q = p.q();
    let best = reps
        .par_iter()
        .enumerate()
        .map(|(i, a)| {
            reps[i + 1..]
                .iter()
                .map(|b| centered_norm(a, b, q))
                .min()
                .unwrap_or(u64::MAX)
        })
        .min()
        .unwrap_or(u64::MAX);
    Ok(best.min(q_squared(p)))
}

/// `min{d_H(𝒞₁), 4 d_H(𝒞₂), …, 4^{L−1} d_H(𝒞_L), 4^L}`; levels without a
/// nonzero word contribute nothing.
pub fn dmin_formula_c(codes: &[BinaryCode]) -> Result<u64> {
    if codes.iter().any(|c| !c.is_linear()) {
        return Err(Error::NotLinear("dmin_formula_c"));
    }
    let cap = 1u64 << (2 * codes.len());
    Ok(codes
        .iter()
        .enumerate()
        .filter_map(|(i, c)| c.min_nonzero_weight().map(|w| (w as u64) << (2 * i)))
        .fold(cap, u64::min))
}

/// Per-value tallies of the L-tuples of a main codeword, folded by sign.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MCounts {
    /// `m[i−1]` counts coordinates whose lifted value is `±i mod 2^L`,
    /// for `i = 1, …, 2^{L−1}`.
    pub m: Vec<u64>,
}

impl MCounts {
    /// `Σ i² mᵢ`, the squared distance from the coset to zero.
    pub fn d2(&self) -> u64 {
        self.m
            .iter()
            .enumerate()
            .map(|(i, &c)| ((i + 1) as u64).pow(2) * c)
            .sum()
    }

    pub fn total(&self) -> u64 {
        self.m.iter().sum()
    }
}

pub fn mcounts(c: &BitWord, n: usize, levels: usize) -> Result<MCounts> {
    if c.len() != n * levels {
        return Err(Error::LengthMismatch {
            left: c.len(),
            right: n * levels,
        });
    }
    let q = 1usize << levels;
    let mut m = vec![0u64; q / 2];
    for j in 0..n {
        let v: usize = (0..levels).map(|i| (c.get(i * n + j) as usize) << i).sum();
        if v != 0 {
            m[v.min(q - v) - 1] += 1;
        }
    }
    Ok(MCounts { m })
}

/// Squared distance from the origin to the nearest other point.
pub fn dmin_to_zero(p: &PeriodicConstellation) -> u64 {
    let zero = vec![0u16; p.n()];
    p.reps()
        .iter()
        .filter(|r| r.iter().any(|&v| v != 0))
        .map(|r| centered_norm(r, &zero, p.q()))
        .fold(q_squared(p), u64::min)
}

/// `‖2^{L−1}c_L − Σ_{i<L} 2^{i−1}cᵢ‖²` for one main codeword.
pub fn top_level_norm(c: &BitWord, n: usize, levels: usize) -> u64 {
    let half = 1i64 << (levels - 1);
    (0..n)
        .map(|j| {
            let t: i64 = (0..levels - 1)
                .map(|i| (c.get(i * n + j) as i64) << i)
                .sum();
            let top = c.get((levels - 1) * n + j) as i64;
            let d = half * top - t;
            (d * d) as u64
        })
        .sum()
}

/// Minimum of [`top_level_norm`] over nonzero main codewords, capped at `4^L`.
pub fn dmin_to_zero_main(main: &MainCode) -> u64 {
    let (n, l) = (main.n(), main.levels());
    main.code()
        .words()
        .par_iter()
        .filter(|w| !w.is_zero())
        .map(|w| top_level_norm(w, n, l))
        .min()
        .unwrap_or(u64::MAX)
        .min(1u64 << (2 * l))
}

/// Levels `c₁, …, c_{L−1}` of a main codeword whose last level ranges over
/// every word of parity `odd`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Prefix {
    pub levels: Vec<BitWord>,
    pub odd: bool,
}

fn prefix_cost(prefix: &Prefix, n: usize, levels: usize) -> Option<u64> {
    let half = 1u64 << (levels - 1);
    let mut total = 0u64;
    let mut parity = false;
    let mut all_zero = true;
    let mut flip_penalty = u64::MAX;
    for j in 0..n {
        let t: u64 = prefix
            .levels
            .iter()
            .enumerate()
            .map(|(i, c)| (c.get(j) as u64) << i)
            .sum();
        all_zero &= t == 0;
        let (c0, c1) = (t * t, (half - t) * (half - t));
        if c1 < c0 {
            total += c1;
            parity ^= true;
        } else {
            total += c0;
        }
        flip_penalty = flip_penalty.min(c0.abs_diff(c1));
    }
    if all_zero && !prefix.odd {
        // the zero choice is the zero coset itself; the nearest nonzero even
        // last level sets two coordinates
        return (n >= 2).then_some(2 * half * half);
    }
    if parity != prefix.odd {
        total += flip_penalty;
    }
    Some(total)
}

/// Distance to zero for a main code given as prefixes whose last level is a
/// parity coset of the even-weight code. Each coordinate picks the cheaper
/// last-level bit; a parity mismatch is repaired by the cheapest single flip.
pub fn dmin_to_zero_structured(prefixes: &[Prefix], n: usize, levels: usize) -> Result<u64> {
    if prefixes.is_empty() {
        return Err(Error::Domain("empty prefix set".into()));
    }
    if !(2..=crate::constructions::MAX_LEVELS).contains(&levels) {
        return Err(Error::Levels(format!(
            "structured solver needs 2 ≤ L, got {levels}"
        )));
    }
    if let Some(p) = prefixes.iter().find(|p| p.levels.len() != levels - 1) {
        return Err(Error::Levels(format!(
            "prefix has {} levels, expected {}",
            p.levels.len(),
            levels - 1
        )));
    }
    let cap = 1u64 << (2 * levels);
    Ok(prefixes
        .par_iter()
        .filter_map(|p| prefix_cost(p, n, levels))
        .min()
        .unwrap_or(cap)
        .min(cap))
}

/// `min{4 d_H(𝒞₂) − 3 d_H(𝒞₁), 16}`. This is not a valid lower bound for
/// every two-level main code; see the tests for a counterexample.
pub fn dmin_lower_bound_2level(dh1: u64, dh2: u64) -> Result<u64> {
    if dh2 <= dh1 {
        return Err(Error::Domain(format!(
            "bound needs d_H(C2) > d_H(C1), got {dh2} ≤ {dh1}"
        )));
    }
    Ok((4 * dh2 - 3 * dh1).min(16))
}

/// `min 4^{i−1} d_H(Sᵢ(0))` from the minimum nonzero weight of each
/// antiprojection at zero (`None` when it has no nonzero word), capped at `4^L`.
pub fn upper_bound_from_weights(weights: &[Option<usize>]) -> u64 {
    weights
        .iter()
        .enumerate()
        .filter_map(|(i, w)| w.map(|w| (w as u64) << (2 * i)))
        .fold(1u64 << (2 * weights.len()), u64::min)
}

pub fn dmin_upper_bound_antiprojection(main: &MainCode) -> u64 {
    let weights: Vec<Option<usize>> = (0..main.levels())
        .map(|i| main.antiprojection_at_zero(i).min_nonzero_weight())
        .collect();
    upper_bound_from_weights(&weights)
}

/// Neighbor counts `N(rep, d)` for every `d² ≤ R²`, the rep itself excluded.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceSpectrum {
    pub rep: Vec<u16>,
    pub radius: u64,
    pub entries: BTreeMap<u64, u64>,
}

impl DistanceSpectrum {
    pub fn count(&self, d2: u64) -> u64 {
        self.entries.get(&d2).copied().unwrap_or(0)
    }
}

impl Serialize for DistanceSpectrum {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Entry {
            d2: u64,
            count: u64,
        }
        let entries: Vec<Entry> = self
            .entries
            .iter()
            .map(|(&d2, &count)| Entry { d2, count })
            .collect();
        let mut st = s.serialize_struct("DistanceSpectrum", 3)?;
        st.serialize_field("rep", &self.rep)?;
        st.serialize_field("R", &self.radius)?;
        st.serialize_field("entries", &entries)?;
        st.end()
    }
}

/// Default spectrum radius, `2q`.
pub fn default_radius(p: &PeriodicConstellation) -> u64 {
    2 * p.q() as u64
}

/// Squared offsets `(b − a + qz)²` within `limit`, one coordinate.
fn coordinate_offsets(diff: i64, q: i64, radius: i64) -> Vec<u64> {
    let lo = (-radius - diff).div_euclid(q) - 1;
    let hi = (radius - diff).div_euclid(q) + 1;
    (lo..=hi)
        .map(|z| diff + q * z)
        .filter(|d| d.abs() <= radius)
        .map(|d| (d * d) as u64)
        .collect()
}

/// Exact spectrum: for each rep `b`, the squared lengths of `b − rep + qz`
/// are a sum of independent per-coordinate terms, so their histogram is the
/// truncated convolution of per-coordinate histograms.
pub fn distance_spectrum(
    p: &PeriodicConstellation,
    rep: &[u16],
    radius: u64,
) -> Result<DistanceSpectrum> {
    if radius == 0 {
        return Err(Error::Domain("spectrum radius must be at least 1".into()));
    }
    if rep.len() != p.n() {
        return Err(Error::DimensionMismatch {
            expected: p.n(),
            got: rep.len(),
        });
    }
    if !p.contains_rep(rep) {
        return Err(Error::Domain(format!("{rep:?} is not a rep")));
    }
    let q = p.q() as i64;
    let limit = radius * radius;
    let r = radius as i64;
    let mut entries: BTreeMap<u64, u64> = BTreeMap::new();
    for b in p.reps() {
        let mut hist: BTreeMap<u64, u64> = BTreeMap::from([(0, 1)]);
        for (&x, &y) in b.iter().zip(rep) {
            let offsets = coordinate_offsets(x as i64 - y as i64, q, r);
            let mut next = BTreeMap::new();
            for (&acc, &cnt) in &hist {
                for &o in &offsets {
                    if acc + o <= limit {
                        *next.entry(acc + o).or_insert(0) += cnt;
                    }
                }
            }
            hist = next;
        }
        for (d2, cnt) in hist {
            *entries.entry(d2).or_insert(0) += cnt;
        }
    }
    if let Some(c) = entries.get_mut(&0) {
        *c -= 1;
        if *c == 0 {
            entries.remove(&0);
        }
    }
    Ok(DistanceSpectrum {
        rep: rep.to_vec(),
        radius,
        entries,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EdsWitness {
    /// Smallest squared distance at which the two spectra differ.
    pub d2: u64,
    pub richer: Vec<u16>,
    pub richer_count: u64,
    pub poorer: Vec<u16>,
    pub poorer_count: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EdsReport {
    pub eds: bool,
    #[serde(rename = "R")]
    pub radius: u64,
    pub witness: Option<EdsWitness>,
}

/// Whether every rep sees the same spectrum up to `radius`. A necessary
/// condition for geometric uniformity, never a certificate of it.
pub fn eds_check(p: &PeriodicConstellation, radius: u64) -> Result<EdsReport> {
    let spectra: Vec<DistanceSpectrum> = p
        .reps()
        .par_iter()
        .map(|r| distance_spectrum(p, r, radius))
        .collect::<Result<_>>()?;
    let first = &spectra[0].entries;
    if spectra.iter().all(|s| &s.entries == first) {
        return Ok(EdsReport {
            eds: true,
            radius,
            witness: None,
        });
    }
    let d2 = spectra
        .iter()
        .flat_map(|s| s.entries.keys().copied())
        .collect::<std::collections::BTreeSet<_>>()
        .into_iter()
        .find(|&d| spectra.iter().any(|s| s.count(d) != spectra[0].count(d)))
        .expect("spectra differ somewhere");
    let counts: Vec<u64> = spectra.iter().map(|s| s.count(d2)).collect();
    let max = *counts.iter().max().unwrap();
    let min = *counts.iter().min().unwrap();
    let hi = counts.iter().position(|&c| c == max).unwrap();
    let lo = counts[hi..]
        .iter()
        .position(|&c| c == min)
        .map(|k| k + hi)
        .or_else(|| counts.iter().position(|&c| c == min))
        .unwrap();
    Ok(EdsReport {
        eds: false,
        radius,
        witness: Some(EdsWitness {
            d2,
            richer: spectra[hi].rep.clone(),
            richer_count: max,
            poorer: spectra[lo].rep.clone(),
            poorer_count: min,
        }),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EquiMinReport {
    pub holds: bool,
    pub dmin2: u64,
    /// First rep with no neighbor at the global minimum distance.
    pub witness: Option<Vec<u16>>,
}

pub fn equi_min_distance_check(p: &PeriodicConstellation) -> Result<EquiMinReport> {
    let dmin2 = dmin_oracle(p)?;
    let reps = p.reps();
    let q = p.q();
    let nearest: Vec<u64> = reps
        .par_iter()
        .enumerate()
        .map(|(i, a)| {
            reps.iter()
                .enumerate()
                .filter(|&(k, _)| k != i)
                .map(|(_, b)| centered_norm(a, b, q))
                .fold(q_squared(p), u64::min)
        })
        .collect();
    let witness = nearest
        .iter()
        .position(|&d| d != dmin2)
        .map(|i| reps[i].clone());
    Ok(EquiMinReport {
        holds: witness.is_none(),
        dmin2,
        witness,
    })
}

/// Whether `y ↦ T_{c₁}(y − x0) mod q` maps the reps onto themselves, where
/// `T_{c₁}` negates the coordinates with `c₁ⱼ = 1`. The map is injective on
/// `Z_qⁿ`, so landing inside the rep set is enough.
pub fn isometry_orbit_check(p: &PeriodicConstellation, x0: &[u16], signs: &[u8]) -> Result<bool> {
    if x0.len() != p.n() || signs.len() != p.n() {
        return Err(Error::DimensionMismatch {
            expected: p.n(),
            got: if x0.len() != p.n() {
                x0.len()
            } else {
                signs.len()
            },
        });
    }
    if signs.iter().any(|&s| s > 1) {
        return Err(Error::Domain("sign pattern must be binary".into()));
    }
    let q = p.q() as i64;
    Ok(p.reps().par_iter().all(|y| {
        let image: Vec<u16> = y
            .iter()
            .zip(x0)
            .zip(signs)
            .map(|((&a, &b), &s)| {
                let d = a as i64 - b as i64;
                let d = if s == 1 { -d } else { d };
                d.rem_euclid(q) as u16
            })
            .collect();
        p.contains_rep(&image)
    }))
}

/// Checks the sign-flip symmetry with pattern `x0 mod 2` for every rep `x0`.
/// Returns the first rep for which it fails; `None` certifies geometric
/// uniformity through this family of isometries.
pub fn sign_flip_uniformity(p: &PeriodicConstellation) -> Option<Vec<u16>> {
    p.reps()
        .iter()
        .find(|x0| {
            let signs: Vec<u8> = x0.iter().map(|&v| (v & 1) as u8).collect();
            !isometry_orbit_check(p, x0, &signs).expect("shapes match")
        })
        .cloned()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{associated_construction_c, construction_c, construction_cstar};
    use crate::gf2::DEFAULT_ENUM_CAP as CAP;
    use proptest::prelude::*;

    fn w(s: &str) -> BitWord {
        BitWord::parse(s).unwrap()
    }

    fn ex2() -> PeriodicConstellation {
        construction_c(&ex2_codes(), CAP).unwrap()
    }

    fn main_code(words: &[&str], n: usize, l: usize) -> MainCode {
        MainCode::from_strs(words, n, l).unwrap()
    }

    /// Nearest point by scanning integer translates in a box; independent of
    /// the centered-residue shortcut.
    fn translate_scan_dmin(p: &PeriodicConstellation) -> u64 {
        let q = p.q() as i64;
        let n = p.n();
        let mut best = u64::MAX;
        for a in p.reps() {
            for b in p.reps() {
                let shifts = 3i64.pow(n as u32);
                for s in 0..shifts {
                    let mut code = s;
                    let mut d2 = 0u64;
                    for j in 0..n {
                        let z = code % 3 - 1;
                        code /= 3;
                        let d = a[j] as i64 - b[j] as i64 + q * z;
                        d2 += (d * d) as u64;
                    }
                    if d2 > 0 {
                        best = best.min(d2);
                    }
                }
            }
        }
        best
    }

    #[test]
    fn centered_convention() {
        assert_eq!(centered(2, 4), 2);
        assert_eq!(centered(3, 4), -1);
        assert_eq!(centered(-2, 4), 2);
        assert_eq!(centered(5, 8), -3);
        assert_eq!(centered(0, 8), 0);
    }

    #[test]
    fn oracle_examples() {
        let ex5 =
            construction_cstar(&main_code(&["0000", "0010", "1001", "1011"], 2, 2), CAP).unwrap();
        assert_eq!(dmin_oracle(&ex5).unwrap(), 4);
        let ex9 = construction_cstar(
            &main_code(
                &[
                    "000000", "101101", "001011", "100110", "000010", "001001", "100100", "101111",
                ],
                2,
                3,
            ),
            CAP,
        )
        .unwrap();
        assert_eq!(dmin_oracle(&ex9).unwrap(), 5);
        let z = PeriodicConstellation::new(1, 2, vec![vec![0]], crate::Source::Custom).unwrap();
        assert_eq!(dmin_oracle(&z).unwrap(), 16);
        for p in [&ex5, &ex9, &ex2()] {
            assert_eq!(dmin_oracle(p).unwrap(), translate_scan_dmin(p));
        }
    }

    #[test]
    fn formula_examples() {
        let rep = BinaryCode::from_strs(&["0000", "1111"]).unwrap();
        let par =
            BinaryCode::from_generator(4, vec![w("1100"), w("1010"), w("1001")], CAP).unwrap();
        assert_eq!(dmin_formula_c(&[rep, par]).unwrap(), 4);
        assert_eq!(dmin_formula_c(&ex2_codes()).unwrap(), 2);
        assert_eq!(dmin_oracle(&ex2()).unwrap(), 2);
        let nl = BinaryCode::from_strs(&["01", "10"]).unwrap();
        assert!(dmin_formula_c(&[nl]).is_err());
    }

    fn ex2_codes() -> Vec<BinaryCode> {
        vec![
            BinaryCode::from_strs(&["00", "11"]).unwrap(),
            BinaryCode::from_strs(&["00", "11"]).unwrap(),
            BinaryCode::zero(2),
        ]
    }

    #[test]
    fn formula_matches_oracle_exhaustive_small() {
        // every pair of linear codes of length 2, and of length 3 built from
        // one generator each
        let n = 3;
        let codes: Vec<BinaryCode> = (0u64..8)
            .map(|g| {
                let cols = if g == 0 {
                    vec![]
                } else {
                    vec![BitWord::from_u64(n, g)]
                };
                BinaryCode::from_generator(n, cols, CAP).unwrap()
            })
            .collect();
        for a in &codes {
            for b in &codes {
                let fam = vec![a.clone(), b.clone()];
                let p = construction_c(&fam, CAP).unwrap();
                assert_eq!(dmin_formula_c(&fam).unwrap(), dmin_oracle(&p).unwrap());
            }
        }
    }

    #[test]
    fn mcount_examples() {
        let m = mcounts(&w("100000"), 2, 3).unwrap();
        assert_eq!(m.m, vec![1, 0, 0, 0]);
        assert_eq!(m.d2(), 1);
        let m = mcounts(&w("111111"), 2, 3).unwrap();
        assert_eq!(m.m[0], 2);
        let m = mcounts(&w("101"), 1, 3).unwrap();
        assert_eq!(m.m, vec![0, 0, 1, 0]);
        assert_eq!(m.d2(), 9);
    }

    #[test]
    fn mcounts_match_centered_norm_exhaustive() {
        for (n, l) in [(4usize, 3usize), (3, 4), (6, 2), (12, 1)] {
            for v in 0u64..(1 << (n * l)) {
                let c = BitWord::from_u64(n * l, v);
                let m = mcounts(&c, n, l).unwrap();
                assert!(m.total() <= n as u64);
                let levels: Vec<BitWord> = (0..l).map(|i| c.slice(i * n, n)).collect();
                let x = crate::constructions::lift_levels(&levels);
                let zero = vec![0u16; n];
                assert_eq!(m.d2(), centered_norm(&x, &zero, 1 << l));
                assert_eq!(m.d2(), top_level_norm(&c, n, l));
                // a nonzero coordinate costs ≥ 1 and carries at most L ones
                assert!(m.d2() * l as u64 >= c.weight() as u64);
            }
        }
    }

    #[test]
    fn to_zero_examples() {
        let ex10 =
            construction_cstar(&main_code(&["000", "101", "011", "110"], 1, 3), CAP).unwrap();
        assert_eq!(dmin_to_zero(&ex10), 4);
        assert_eq!(dmin_oracle(&ex10).unwrap(), 1);
        let z = PeriodicConstellation::new(2, 3, vec![vec![0, 0]], crate::Source::Custom).unwrap();
        assert_eq!(dmin_to_zero(&z), 64);
        let m = main_code(&["000", "101", "011", "110"], 1, 3);
        assert_eq!(dmin_to_zero_main(&m), 4);
    }

    #[test]
    fn structured_examples() {
        let zero_odd = Prefix {
            levels: vec![BitWord::zeros(4), BitWord::zeros(4)],
            odd: true,
        };
        assert_eq!(dmin_to_zero_structured(&[zero_odd], 4, 3).unwrap(), 16);
        let zero_even = Prefix {
            levels: vec![BitWord::zeros(4), BitWord::zeros(4)],
            odd: false,
        };
        assert_eq!(dmin_to_zero_structured(&[zero_even], 4, 3).unwrap(), 32);
        let p = Prefix {
            levels: vec![w("11")],
            odd: false,
        };
        assert_eq!(dmin_to_zero_structured(&[p], 2, 2).unwrap(), 2);
        assert!(dmin_to_zero_structured(&[], 2, 2).is_err());
    }

    fn expand_prefixes(prefixes: &[Prefix], n: usize) -> Vec<BitWord> {
        let mut out = Vec::new();
        for p in prefixes {
            for v in 0u64..(1 << n) {
                let last = BitWord::from_u64(n, v);
                if (last.weight() % 2 == 1) == p.odd {
                    let mut parts = p.levels.clone();
                    parts.push(last);
                    out.push(BitWord::concat(&parts));
                }
            }
        }
        out
    }

    proptest! {
        #[test]
        fn structured_matches_enumeration(
            n in 1usize..7,
            l in 2usize..4,
            raw in proptest::collection::vec((any::<u64>(), any::<bool>()), 1..6),
        ) {
            let prefixes: Vec<Prefix> = raw
                .iter()
                .map(|&(bits, odd)| Prefix {
                    levels: (0..l - 1)
                        .map(|i| BitWord::from_u64(n, (bits >> (i * n)) & ((1 << n) - 1)))
                        .collect(),
                    odd,
                })
                .collect();
            let words = expand_prefixes(&prefixes, n);
            let brute = words
                .iter()
                .filter(|w| !w.is_zero())
                .map(|w| top_level_norm(w, n, l))
                .fold(1u64 << (2 * l), u64::min);
            prop_assert_eq!(dmin_to_zero_structured(&prefixes, n, l).unwrap(), brute);
        }

        #[test]
        fn two_level_bound_chain(gens in proptest::collection::vec(1u64..256, 1..4)) {
            let (n, l) = (4usize, 2usize);
            let cols = gens.iter().map(|&g| BitWord::from_u64(n * l, g)).collect();
            let code = BinaryCode::from_generator(n * l, cols, CAP).unwrap();
            let m = MainCode::new(code, n, l).unwrap();
            let p = construction_cstar(&m, CAP).unwrap();
            let oracle = dmin_oracle(&p).unwrap();
            let to_zero = dmin_to_zero(&p);
            prop_assert_eq!(to_zero, dmin_to_zero_main(&m));
            prop_assert!(oracle <= to_zero);
            prop_assert!(to_zero <= dmin_upper_bound_antiprojection(&m));
            let assoc = associated_construction_c(&m, CAP).unwrap();
            prop_assert!(oracle >= dmin_oracle(&assoc).unwrap());
        }
    }

    #[test]
    fn lower_bound_values_and_counterexample() {
        assert_eq!(dmin_lower_bound_2level(1, 4).unwrap(), 13);
        assert_eq!(dmin_lower_bound_2level(1, 5).unwrap(), 16);
        assert!(dmin_lower_bound_2level(2, 2).is_err());
        // 𝒞 spanned by (10,00) and (00,11): d_H(𝒞₁) = 1, d_H(𝒞₂) = 2, yet
        // the coset (10,00) sits at squared distance 1 from zero
        let m = main_code(&["0000", "1000", "0011", "1011"], 2, 2);
        let p = construction_cstar(&m, CAP).unwrap();
        assert_eq!(dmin_oracle(&p).unwrap(), 1);
        assert_eq!(dmin_lower_bound_2level(1, 2).unwrap(), 5);
    }

    #[test]
    fn upper_bound_examples() {
        let ex9 = main_code(
            &[
                "000000", "101101", "001011", "100110", "000010", "001001", "100100", "101111",
            ],
            2,
            3,
        );
        assert_eq!(dmin_upper_bound_antiprojection(&ex9), 16);
        let ex10 = main_code(&["000", "101", "011", "110"], 1, 3);
        assert_eq!(dmin_upper_bound_antiprojection(&ex10), 64);
        assert_eq!(upper_bound_from_weights(&[None, Some(8), Some(2)]), 32);
    }

    #[test]
    fn spectrum_examples() {
        let p = ex2();
        let s11 = distance_spectrum(&p, &[1, 1], 2).unwrap();
        let s33 = distance_spectrum(&p, &[3, 3], 2).unwrap();
        assert_eq!(s11.count(2), 2);
        assert_eq!(s33.count(2), 1);
        let z =
            PeriodicConstellation::new(3, 2, vec![vec![0, 0, 0]], crate::Source::Custom).unwrap();
        let s = distance_spectrum(&z, &[0, 0, 0], 4).unwrap();
        assert_eq!(s.entries, BTreeMap::from([(16, 6)]));
        let json = serde_json::to_value(&s).unwrap();
        assert_eq!(json["entries"][0]["d2"], 16);
        assert_eq!(json["R"], 4);
    }

    #[test]
    fn spectrum_matches_box_enumeration() {
        let p = ex2();
        let r = 5i64;
        for a in p.reps() {
            let s = distance_spectrum(&p, a, r as u64).unwrap();
            let mut brute: BTreeMap<u64, u64> = BTreeMap::new();
            for b in p.reps() {
                for x in -3i64..=3 {
                    for y in -3i64..=3 {
                        let d0 = b[0] as i64 + 8 * x - a[0] as i64;
                        let d1 = b[1] as i64 + 8 * y - a[1] as i64;
                        let d2 = (d0 * d0 + d1 * d1) as u64;
                        if d2 > 0 && d2 <= (r * r) as u64 {
                            *brute.entry(d2).or_default() += 1;
                        }
                    }
                }
            }
            assert_eq!(s.entries, brute);
        }
    }

    #[test]
    fn eds_examples() {
        let r = eds_check(&ex2(), 2).unwrap();
        assert!(!r.eds);
        let wit = r.witness.unwrap();
        assert_eq!((wit.richer, wit.poorer), (vec![1, 1], vec![3, 3]));
        assert_eq!((wit.richer_count, wit.poorer_count), (2, 1));
        let ex5 =
            construction_cstar(&main_code(&["0000", "0010", "1001", "1011"], 2, 2), CAP).unwrap();
        assert!(eds_check(&ex5, default_radius(&ex5)).unwrap().eds);
    }

    #[test]
    fn equi_min_examples() {
        let ex10 =
            construction_cstar(&main_code(&["000", "101", "011", "110"], 1, 3), CAP).unwrap();
        let r = equi_min_distance_check(&ex10).unwrap();
        assert!(!r.holds);
        assert_eq!(r.witness, Some(vec![0]));
        assert!(equi_min_distance_check(&ex2()).unwrap().holds);
    }

    #[test]
    fn isometry_examples() {
        let ex4 =
            construction_cstar(&main_code(&["0000", "1001", "1010", "0011"], 2, 2), CAP).unwrap();
        assert!(isometry_orbit_check(&ex4, &[1, 2], &[1, 0]).unwrap());
        assert_eq!(sign_flip_uniformity(&ex4), None);
        let p = ex2();
        // y ↦ (3,3) − y is a symmetry, so (3,3) and 0 share a spectrum; (1,1)
        // has no sign-flip image at 0
        assert!(isometry_orbit_check(&p, &[3, 3], &[1, 1]).unwrap());
        for signs in [[0u8, 0], [0, 1], [1, 0], [1, 1]] {
            assert!(!isometry_orbit_check(&p, &[1, 1], &signs).unwrap());
        }
        assert!(sign_flip_uniformity(&p).is_some());
        assert!(isometry_orbit_check(&p, &[0, 0], &[2, 0]).is_err());
    }
}
