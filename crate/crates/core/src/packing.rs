//! Packing density and efficiency of periodic constellations.
//!
//! For `reps + qZⁿ` with squared minimum distance `d²`, balls of radius
//! `d/2` around every point cover the fraction
//! `Δ = |reps| · Vₙ · (d/2)ⁿ / qⁿ`, and `ρ = Δ^{1/n}`. Everything is
//! evaluated in the natural-log domain.

use serde::Serialize;
use statrs::function::gamma::ln_gamma;

use crate::constructions::{MainCode, PeriodicConstellation};
use crate::error::{Error, Result};
use crate::geometry::dmin_oracle;

/// `ln Vₙ`, the log volume of the unit ball in `Rⁿ`.
pub fn log_unit_ball_volume(n: usize) -> f64 {
    let h = n as f64 / 2.0;
    h * std::f64::consts::PI.ln() - ln_gamma(h + 1.0)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PackingReport {
    pub n: usize,
    #[serde(rename = "L")]
    pub levels: usize,
    pub dmin2: u64,
    pub reps: u128,
    /// `ln(qⁿ / |reps|)`.
    pub log_vol_per_point: f64,
    pub log_delta: f64,
    pub delta: f64,
    pub rho: f64,
    /// Radius of the ball whose volume is the volume per point.
    pub r_effective: f64,
}

/// Packing figures from counts alone; used when the reps cannot be listed.
pub fn packing_from_counts(
    n: usize,
    levels: usize,
    reps: u128,
    dmin2: u64,
) -> Result<PackingReport> {
    if n == 0 || reps == 0 || dmin2 == 0 {
        return Err(Error::Domain(
            "packing needs n ≥ 1, at least one rep and d² > 0".into(),
        ));
    }
    let nf = n as f64;
    let log_q = levels as f64 * std::f64::consts::LN_2;
    let log_vol_per_point = nf * log_q - (reps as f64).ln();
    let log_vn = log_unit_ball_volume(n);
    let log_delta = log_vn + nf / 2.0 * (dmin2 as f64 / 4.0).ln() - log_vol_per_point;
    Ok(PackingReport {
        n,
        levels,
        dmin2,
        reps,
        log_vol_per_point,
        log_delta,
        delta: log_delta.exp(),
        rho: (log_delta / nf).exp(),
        r_effective: ((log_vol_per_point - log_vn) / nf).exp(),
    })
}

/// Uses the brute-force minimum distance unless `dmin2` is given.
pub fn packing_report(p: &PeriodicConstellation, dmin2: Option<u64>) -> Result<PackingReport> {
    let d2 = match dmin2 {
        Some(d) => d,
        None => dmin_oracle(p)?,
    };
    packing_from_counts(p.n(), p.levels(), p.len() as u128, d2)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Denser {
    Cstar,
    C,
    Tie,
}

/// Both sides of `Δ(Γ_{C*}) ≥ Δ(Γ_C) ⟺ (d₁/d₂)ⁿ ≥ Π|𝒞ᵢ| / |𝒞|`, in logs,
/// along with the `1/n`-th-root form that compares `ρ`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Comparison {
    pub dmin2_cstar: u64,
    pub dmin2_c: u64,
    /// `n ln(d₁/d₂)`.
    pub log_distance_ratio: f64,
    /// `ln(Π|𝒞ᵢ| / |𝒞|)`.
    pub log_size_ratio: f64,
    /// `ln Δ(Γ_{C*}) − ln Δ(Γ_C)`.
    pub log_delta_ratio: f64,
    /// `ρ(Γ_{C*}) / ρ(Γ_C)`.
    pub rho_ratio: f64,
    pub denser: Denser,
}

const TIE_TOL: f64 = 1e-12;

pub fn compare_from_logs(
    n: usize,
    log_main: f64,
    log_projections: &[f64],
    dmin2_cstar: u64,
    dmin2_c: u64,
) -> Comparison {
    let log_distance_ratio = n as f64 / 2.0 * (dmin2_cstar as f64 / dmin2_c as f64).ln();
    let log_size_ratio = log_projections.iter().sum::<f64>() - log_main;
    let log_delta_ratio = log_distance_ratio - log_size_ratio;
    let denser = if log_delta_ratio.abs() < TIE_TOL {
        Denser::Tie
    } else if log_delta_ratio > 0.0 {
        Denser::Cstar
    } else {
        Denser::C
    };
    Comparison {
        dmin2_cstar,
        dmin2_c,
        log_distance_ratio,
        log_size_ratio,
        log_delta_ratio,
        rho_ratio: (log_delta_ratio / n as f64).exp(),
        denser,
    }
}

/// Compares `Γ_{C*}` with its associated `Γ_C`, given their squared minimum
/// distances `d₁²` and `d₂²`.
pub fn compare_cstar_vs_c(main: &MainCode, dmin2_cstar: u64, dmin2_c: u64) -> Comparison {
    let logs: Vec<f64> = main
        .projection_codes()
        .iter()
        .map(|c| (c.len() as f64).ln())
        .collect();
    compare_from_logs(
        main.n(),
        (main.code().len() as f64).ln(),
        &logs,
        dmin2_cstar,
        dmin2_c,
    )
}
