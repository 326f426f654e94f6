//! Random main-code ensembles and the balanced GVB packing-efficiency curve.

use num_bigint::BigUint;
use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use statrs::distribution::{ChiSquared, ContinuousCDF};

use crate::constructions::{construction_c, construction_cstar, MainCode};
use crate::error::{Error, Result};
use crate::geometry::dmin_oracle;
use crate::gf2::{BinaryCode, BitWord, DEFAULT_ENUM_CAP};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SamplingMode {
    /// Every bit of every codeword is a fair coin.
    NonlinearCoin,
    /// Every bit of a `nL × k` generator is a fair coin.
    LinearRandomGenerator,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EnsembleConfig {
    pub n: usize,
    #[serde(rename = "L")]
    pub levels: usize,
    pub rate: f64,
    pub mode: SamplingMode,
    pub seed: u64,
}

impl EnsembleConfig {
    pub fn new(n: usize, levels: usize, rate: f64, mode: SamplingMode, seed: u64) -> Result<Self> {
        if n == 0 || levels == 0 || levels > crate::constructions::MAX_LEVELS {
            return Err(Error::Domain(format!("bad shape n = {n}, L = {levels}")));
        }
        if !(rate > 0.0 && rate < 1.0) {
            return Err(Error::Domain(format!("rate {rate} outside (0, 1)")));
        }
        if n * levels > 63 {
            return Err(Error::Domain(format!(
                "main-code length nL = {} exceeds 63 bits",
                n * levels
            )));
        }
        Ok(EnsembleConfig {
            n,
            levels,
            rate,
            mode,
            seed,
        })
    }

    /// `k = ⌈nLR⌉`; the code has `M = 2^k` words.
    pub fn k(&self) -> usize {
        let exact = (self.n * self.levels) as f64 * self.rate;
        (exact - 1e-9).ceil().max(0.0) as usize
    }

    pub fn realized_rate(&self) -> f64 {
        self.k() as f64 / (self.n * self.levels) as f64
    }

    fn rng(&self, stream: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(stream);
        rng
    }
}

/// `count` distinct uniformly random words of length `len ≤ 63`.
pub fn random_distinct_words<R: Rng>(
    rng: &mut R,
    len: usize,
    count: usize,
) -> Result<Vec<BitWord>> {
    if len > 63 || (count as u128) > (1u128 << len) {
        return Err(Error::Domain(format!(
            "cannot draw {count} distinct words of length {len}"
        )));
    }
    Ok(index::sample(rng, 1usize << len, count)
        .into_iter()
        .map(|v| BitWord::from_u64(len, v as u64))
        .collect())
}

/// Span of `k` fair-coin generator columns of length `len ≤ 64`.
pub fn random_linear_code<R: Rng>(rng: &mut R, len: usize, k: usize) -> Result<BinaryCode> {
    let cols = (0..k)
        .map(|_| BitWord::from_u64(len, random_bits(rng, len)))
        .collect();
    BinaryCode::from_generator(len, cols, DEFAULT_ENUM_CAP)
}

fn random_bits<R: Rng>(rng: &mut R, len: usize) -> u64 {
    let v: u64 = rng.gen();
    if len >= 64 {
        v
    } else {
        v & ((1u64 << len) - 1)
    }
}

fn sample_with<R: Rng>(rng: &mut R, cfg: &EnsembleConfig) -> Result<MainCode> {
    let len = cfg.n * cfg.levels;
    let code = match cfg.mode {
        SamplingMode::NonlinearCoin => {
            BinaryCode::from_words(len, random_distinct_words(rng, len, 1usize << cfg.k())?)?
        }
        SamplingMode::LinearRandomGenerator => random_linear_code(rng, len, cfg.k())?,
    };
    MainCode::new(code, cfg.n, cfg.levels)
}

/// Deterministic in `cfg.seed`. Nonlinear draws are distinct words.
pub fn sample_main_code(cfg: &EnsembleConfig) -> Result<MainCode> {
    sample_with(&mut cfg.rng(0), cfg)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScaledDensity {
    /// `a★ = 2^{LR}/q = q^{−(1−R)}`.
    pub a_star: f64,
    /// `M / (a★ q)ⁿ` for the realized `M = 2^k`.
    pub density: f64,
    pub realized_rate: f64,
    /// Period of `a★Γ`, `q^R`.
    pub period: f64,
    /// Resolution of `a★Γ`, `q^{−(1−R)}`.
    pub resolution: f64,
}

pub fn scaled_point_density(cfg: &EnsembleConfig) -> ScaledDensity {
    let ln2 = std::f64::consts::LN_2;
    let log_q = cfg.levels as f64 * ln2;
    let log_a = -(1.0 - cfg.rate) * log_q;
    let log_density = cfg.k() as f64 * ln2 - cfg.n as f64 * (log_a + log_q);
    ScaledDensity {
        a_star: log_a.exp(),
        density: if log_density.abs() < 1e-9 {
            1.0
        } else {
            log_density.exp()
        },
        realized_rate: cfg.realized_rate(),
        period: (cfg.rate * log_q).exp(),
        resolution: log_a.exp(),
    }
}

/// Pearson statistics for one pair-sampling scheme.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PairStats {
    /// Uniformity of the first word over `Z_qⁿ`.
    pub marginal_chi2: f64,
    pub marginal_p: f64,
    /// Independence of the two words, against the product of the observed
    /// marginals.
    pub joint_chi2: f64,
    pub joint_p: f64,
    pub dependent: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConditionReport {
    pub trials: u64,
    pub threshold: f64,
    pub cstar: Option<PairStats>,
    pub construction_c: Option<PairStats>,
}

/// Significance level for the independence test.
pub const INDEPENDENCE_THRESHOLD: f64 = 1e-3;

/// Largest alphabet `qⁿ` for which tallies are kept.
const MAX_CELLS: usize = 64;

const CHUNK: u64 = 4096;

fn lift_index(bits: u64, n: usize, levels: usize) -> usize {
    // coordinate j of a q-ary word is Σ 2^i · bit(i·n + j)
    let mut idx = 0usize;
    for j in 0..n {
        let mut v = 0usize;
        for i in 0..levels {
            v |= (((bits >> (i * n + j)) & 1) as usize) << i;
        }
        idx = idx * (1 << levels) + v;
    }
    idx
}

fn pearson(table: &[u64], cells: usize, trials: u64) -> PairStats {
    let n = trials as f64;
    let rows: Vec<f64> = (0..cells)
        .map(|a| table[a * cells..(a + 1) * cells].iter().sum::<u64>() as f64)
        .collect();
    let cols: Vec<f64> = (0..cells)
        .map(|b| (0..cells).map(|a| table[a * cells + b]).sum::<u64>() as f64)
        .collect();
    let uniform = n / cells as f64;
    let marginal_chi2: f64 = rows.iter().map(|&o| (o - uniform).powi(2) / uniform).sum();
    let mut joint_chi2 = 0.0;
    for a in 0..cells {
        for b in 0..cells {
            let e = rows[a] * cols[b] / n;
            if e > 0.0 {
                joint_chi2 += (table[a * cells + b] as f64 - e).powi(2) / e;
            }
        }
    }
    let df_m = (cells - 1) as f64;
    let marginal_p = ChiSquared::new(df_m)
        .expect("positive df")
        .sf(marginal_chi2);
    let joint_p = ChiSquared::new(df_m * df_m)
        .expect("positive df")
        .sf(joint_chi2);
    PairStats {
        marginal_chi2,
        marginal_p,
        joint_chi2,
        joint_p,
        dependent: joint_p < INDEPENDENCE_THRESHOLD,
    }
}

fn tally<F>(trials: u64, cells: usize, cfg: &EnsembleConfig, salt: u64, draw: F) -> Vec<u64>
where
    F: Fn(&mut ChaCha8Rng) -> (usize, usize) + Sync,
{
    let chunks = trials.div_ceil(CHUNK);
    (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut rng = cfg.rng(salt + c);
            let mut t = vec![0u64; cells * cells];
            let count = CHUNK.min(trials - c * CHUNK);
            for _ in 0..count {
                let (a, b) = draw(&mut rng);
                t[a * cells + b] += 1;
            }
            t
        })
        .reduce(
            || vec![0u64; cells * cells],
            |mut x, y| {
                x.iter_mut().zip(y).for_each(|(a, b)| *a += b);
                x
            },
        )
}

/// Tallies a fixed pair of q-ary codewords over `trials` independent code
/// draws. For C* the pair is two codewords of the main-code ensemble (two
/// fair-coin words, or two generator columns in linear mode). For
/// Construction C the pair is `c₁ + 2c₂` and `c₁ + 2c₂'` sharing `c₁`.
pub fn condition_checks(cfg: &EnsembleConfig, trials: u64) -> Result<ConditionReport> {
    let (n, l) = (cfg.n, cfg.levels);
    let cells = 1usize << (n * l);
    if cells > MAX_CELLS {
        return Err(Error::Domain(format!(
            "q^n = {cells} cells is too many for exact tallies (limit {MAX_CELLS})"
        )));
    }
    if trials == 0 {
        return Ok(ConditionReport {
            trials,
            threshold: INDEPENDENCE_THRESHOLD,
            cstar: None,
            construction_c: None,
        });
    }
    let len = n * l;
    let cstar = tally(trials, cells, cfg, 0, |rng| {
        let x = random_bits(rng, len);
        let y = random_bits(rng, len);
        (lift_index(x, n, l), lift_index(y, n, l))
    });
    // level 1 is the low n bits of the packed word
    let low = (1u64 << n) - 1;
    let c_pairs = tally(trials, cells, cfg, 1 << 32, |rng| {
        let x = random_bits(rng, len);
        let upper = random_bits(rng, len) & !low;
        let y = (x & low) | upper;
        (lift_index(x, n, l), lift_index(y, n, l))
    });
    Ok(ConditionReport {
        trials,
        threshold: INDEPENDENCE_THRESHOLD,
        cstar: Some(pearson(&cstar, cells, trials)),
        construction_c: Some(pearson(&c_pairs, cells, trials)),
    })
}

pub fn binary_entropy(p: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::Domain(format!(
            "entropy argument {p} outside [0, 1]"
        )));
    }
    let term = |x: f64| if x == 0.0 { 0.0 } else { -x * x.log2() };
    Ok(term(p) + term(1.0 - p))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GvbCurvePoint {
    pub alpha1: f64,
    pub rho: f64,
    pub levels_used: usize,
}

/// Levels with `α₁/4^{i−1}` below this are dropped from the product.
pub const GVB_TRUNCATION: f64 = 1e-15;

/// `ρ = √(α₁πe) / (√2 · Π_{i≥1} 2^{H(α₁/4^{i−1})})`, for balanced
/// GVB-achieving component codes in the limit of many levels.
pub fn gvb_packing_efficiency(alpha1: f64) -> Result<GvbCurvePoint> {
    gvb_packing_efficiency_truncated(alpha1, GVB_TRUNCATION)
}

pub fn gvb_packing_efficiency_truncated(alpha1: f64, cutoff: f64) -> Result<GvbCurvePoint> {
    if !(alpha1 > 0.0 && alpha1 <= 0.5) {
        return Err(Error::Domain(format!("alpha1 = {alpha1} outside (0, 1/2]")));
    }
    let ln2 = std::f64::consts::LN_2;
    let mut log_rho = 0.5 * (alpha1 * std::f64::consts::PI * std::f64::consts::E).ln() - 0.5 * ln2;
    let mut alpha = alpha1;
    let mut levels_used = 0;
    while alpha >= cutoff {
        log_rho -= ln2 * binary_entropy(alpha)?;
        levels_used += 1;
        alpha /= 4.0;
    }
    Ok(GvbCurvePoint {
        alpha1,
        rho: log_rho.exp(),
        levels_used,
    })
}

/// Grid points `lo + k·step` in `(lo, hi]`, with `hi` included.
pub fn gvb_curve(lo: f64, hi: f64, step: f64) -> Result<Vec<GvbCurvePoint>> {
    if step.is_nan() || step <= 0.0 || lo >= hi {
        return Err(Error::Domain(format!("bad grid ({lo}, {hi}] step {step}")));
    }
    let count = ((hi - lo) / step - 1e-9).ceil() as usize;
    (1..=count)
        .map(|k| gvb_packing_efficiency((lo + k as f64 * step).min(hi)))
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GvbOptimum {
    pub alpha_star: f64,
    pub rho_star: f64,
}

pub const GVB_GRID_LO: f64 = 1e-4;
pub const GVB_DEFAULT_STEP: f64 = 1e-3;
pub const GVB_DEFAULT_TOL: f64 = 1e-8;

/// Coarse grid on `(1e-4, 0.5]`, then golden-section refinement.
pub fn gvb_maximize(step: f64, tol: f64) -> Result<GvbOptimum> {
    let opt = gvb_maximize_in(GVB_GRID_LO, 0.5, step, tol)?;
    assert!(opt.rho_star < 0.5, "GVB curve exceeded one half");
    Ok(opt)
}

pub fn gvb_maximize_in(lo: f64, hi: f64, step: f64, tol: f64) -> Result<GvbOptimum> {
    if step > 1e-3 + 1e-15 {
        return Err(Error::Domain(format!("grid step {step} exceeds 1e-3")));
    }
    let grid = gvb_curve(lo, hi, step)?;
    let best = grid
        .iter()
        .copied()
        .fold(None::<GvbCurvePoint>, |acc, p| match acc {
            Some(a) if a.rho >= p.rho => Some(a),
            _ => Some(p),
        })
        .expect("grid is nonempty");
    let f = |a: f64| {
        gvb_packing_efficiency(a)
            .map(|p| p.rho)
            .unwrap_or(f64::NEG_INFINITY)
    };
    let (mut a, mut b) = (
        (best.alpha1 - step).max(lo + f64::EPSILON),
        (best.alpha1 + step).min(hi),
    );
    let g = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = b - g * (b - a);
    let mut x2 = a + g * (b - a);
    let (mut f1, mut f2) = (f(x1), f(x2));
    while b - a > tol {
        if f1 < f2 {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + g * (b - a);
            f2 = f(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - g * (b - a);
            f1 = f(x1);
        }
    }
    let mid = (a + b) / 2.0;
    let refined = GvbOptimum {
        alpha_star: mid,
        rho_star: f(mid),
    };
    Ok(if refined.rho_star >= best.rho {
        refined
    } else {
        GvbOptimum {
            alpha_star: best.alpha1,
            rho_star: best.rho,
        }
    })
}

/// `|B(r, n)| = Σ_{w ≤ r} C(n, w)`.
pub fn hamming_ball_size(radius: usize, n: usize) -> BigUint {
    let mut total = BigUint::from(0u32);
    let mut binom = BigUint::from(1u32);
    for w in 0..=radius.min(n) {
        total += &binom;
        binom = binom * BigUint::from(n - w) / BigUint::from(w + 1);
    }
    total
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GvbSizeCheck {
    pub size: u64,
    pub d: usize,
    /// `|B(d−1, n)|`, decimal.
    pub ball: String,
    pub holds: bool,
}

/// Whether `|C| ≥ 2ⁿ / |B(d−1, n)|`, in exact integers.
pub fn gvb_size_check(code: &BinaryCode) -> Result<GvbSizeCheck> {
    let d = code.min_hamming_distance()?;
    let ball = hamming_ball_size(d - 1, code.n());
    let holds = BigUint::from(code.len() as u64) * &ball >= BigUint::from(1u32) << code.n();
    Ok(GvbSizeCheck {
        size: code.len() as u64,
        d,
        ball: ball.to_string(),
        holds,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DminStats {
    pub mean: f64,
    pub min: u64,
    pub max: u64,
}

impl DminStats {
    fn from(values: &[u64]) -> Option<Self> {
        if values.is_empty() {
            return None;
        }
        Some(DminStats {
            mean: values.iter().sum::<u64>() as f64 / values.len() as f64,
            min: *values.iter().min().unwrap(),
            max: *values.iter().max().unwrap(),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EnsembleSummary {
    pub trials: u64,
    pub cstar: Option<DminStats>,
    pub construction_c: Option<DminStats>,
    /// Per-trial `(d²(Γ_{C*}), d²(Γ_C))`.
    pub samples: Vec<(u64, u64)>,
}

/// Level dimensions `kᵢ` summing to `k`, as even as possible, low levels first.
pub fn split_dimension(k: usize, levels: usize) -> Vec<usize> {
    (0..levels)
        .map(|i| k / levels + usize::from(i < k % levels))
        .collect()
}

/// Per trial: a C* main code of `2^k` words and a Construction C family with
/// level sizes `2^{kᵢ}`, `Σkᵢ = k`, drawn in the same mode; both minimum
/// distances come from the brute-force oracle.
pub fn empirical_dmin_ensemble(cfg: &EnsembleConfig, trials: u64) -> Result<EnsembleSummary> {
    let ks = split_dimension(cfg.k(), cfg.levels);
    let samples: Vec<(u64, u64)> = (0..trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = cfg.rng(t);
            let main = sample_with(&mut rng, cfg)?;
            let codes = ks
                .iter()
                .map(|&k| match cfg.mode {
                    SamplingMode::NonlinearCoin => BinaryCode::from_words(
                        cfg.n,
                        random_distinct_words(&mut rng, cfg.n, 1 << k)?,
                    ),
                    SamplingMode::LinearRandomGenerator => random_linear_code(&mut rng, cfg.n, k),
                })
                .collect::<Result<Vec<_>>>()?;
            let d_star = dmin_oracle(&construction_cstar(&main, DEFAULT_ENUM_CAP)?)?;
            let d_c = dmin_oracle(&construction_c(&codes, DEFAULT_ENUM_CAP)?)?;
            Ok((d_star, d_c))
        })
        .collect::<Result<_>>()?;
    let (a, b): (Vec<u64>, Vec<u64>) = samples.iter().copied().unzip();
    Ok(EnsembleSummary {
        trials,
        cstar: DminStats::from(&a),
        construction_c: DminStats::from(&b),
        samples,
    })
}
