//! Convergence of `g(n) = (𝔮_1(T_n^{2,t}) − (2n−3)) · n³ / (9t)` towards 1.

use serde::{Deserialize, Serialize};

use super::search::reference_complex;
use crate::error::{Error, Result};
use crate::spectra::{spectral_radius, SpectralOptions};

pub const ASYMPTOTIC_MAX_N: usize = 240;
/// Band required of `g(n)` for `n >= G_BAND_FROM`.
pub const G_BAND: (f64, f64) = (0.7, 1.3);
pub const G_BAND_FROM: usize = 60;
/// Allowed eigenvalue error as a fraction of the leading correction `9t/n³`.
pub const PRECISION_FRACTION: f64 = 0.05;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AsymptoticRow {
    pub n: usize,
    pub q1: f64,
    /// `𝔮_1 − (2n − 3)`
    pub excess: f64,
    pub g: f64,
    /// `‖Qf − 𝔮f‖` for the unit eigenvector, which bounds the eigenvalue error.
    pub residual: f64,
    pub iterations: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AsymptoticTable {
    pub t: usize,
    pub rows: Vec<AsymptoticRow>,
}

impl AsymptoticTable {
    /// `excess > 0` for every row.
    pub fn excess_positive(&self) -> bool {
        self.rows.iter().all(|r| r.excess > 0.0)
    }

    /// `g(n)` inside [`G_BAND`] for every `n >= G_BAND_FROM`.
    pub fn in_band(&self) -> bool {
        self.rows.iter().filter(|r| r.n >= G_BAND_FROM).all(|r| r.g >= G_BAND.0 && r.g <= G_BAND.1)
    }

    /// `|g(2n) − 1| < |g(n) − 1|` for every consecutive pair that is a doubling.
    pub fn decreasing_along_doublings(&self) -> bool {
        self.rows.windows(2).filter(|w| w[1].n == 2 * w[0].n).all(|w| (w[1].g - 1.0).abs() < (w[0].g - 1.0).abs())
    }

    pub fn contract_holds(&self) -> bool {
        self.excess_positive() && self.in_band() && self.decreasing_along_doublings()
    }
}

/// Largest eigenvalue error tolerated at `n`.
pub fn precision_limit(n: usize, t: usize) -> f64 {
    PRECISION_FRACTION * 9.0 * t as f64 / (n as f64).powi(3)
}

/// Computes `g(n)` for each `n`. `tol_schedule`, when given, holds one solver
/// tolerance per `n`; otherwise `opts.tol` is used throughout.
pub fn asymptotic_check(
    t: usize,
    n_list: &[usize],
    tol_schedule: Option<&[f64]>,
    opts: &SpectralOptions,
) -> Result<AsymptoticTable> {
    if !(1..=2).contains(&t) {
        return Err(Error::BadParams(format!("asymptotic check needs t in {{1, 2}}, got {t}")));
    }
    if n_list.is_empty() || n_list.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::BadParams("n list must be nonempty and strictly ascending".into()));
    }
    if let Some(&n) = n_list.iter().find(|&&n| n > ASYMPTOTIC_MAX_N || n < t + 3) {
        return Err(Error::BadParams(format!("n = {n} outside {}..={ASYMPTOTIC_MAX_N}", t + 3)));
    }
    if let Some(s) = tol_schedule {
        if s.len() != n_list.len() {
            return Err(Error::LengthMismatch { expected: n_list.len(), got: s.len() });
        }
    }

    let mut rows = Vec::with_capacity(n_list.len());
    for (j, &n) in n_list.iter().enumerate() {
        let tol = tol_schedule.map_or(opts.tol, |s| s[j]);
        let k = reference_complex(n, t)?;
        let res = spectral_radius(&k, 1, &opts.clone().with_tol(tol))?;
        let limit = precision_limit(n, t);
        if res.residual > limit {
            return Err(Error::PrecisionInsufficient { bound: res.residual, limit });
        }
        let excess = res.value - (2 * n - 3) as f64;
        rows.push(AsymptoticRow {
            n,
            q1: res.value,
            excess,
            g: excess * (n as f64).powi(3) / (9.0 * t as f64),
            residual: res.residual,
            iterations: res.iterations,
        });
    }
    Ok(AsymptoticTable { t, rows })
}
