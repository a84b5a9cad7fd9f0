//! Largest eigenvalue and Perron vector of the signless up Laplacian `Q_i^up`.
//!
//! The default solver is power iteration on the matrix-free operator,
//! started from a seeded strictly positive vector and stopped on the
//! eigen-residual `‖Qf − qf‖ / ‖f‖`. Because `Q_i^up` is positive
//! semidefinite, the Rayleigh quotients of the iterates never decrease.
//! The converged value is re-read with compensated summation.

use nalgebra::DMatrix;
use rand::Rng as _;
use serde::{Deserialize, Serialize};

use crate::chains::{apply_q_down, boundary_sums, laplacian, q_up_kernel_compensated, LaplacianKind, DENSE_LIMIT};
use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::rng;

/// Below this many faces the dense eigensolver also runs, to measure the spectral gap.
pub const DENSE_GAP_LIMIT: usize = 512;
/// Power iteration gives up after this many steps without a new smallest residual.
pub const STALL_ITERS: usize = 10_000;
/// Top eigenvalues closer than this are treated as numerically multiple.
pub const DEGENERACY_GAP: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Normalization {
    UnitNorm,
    /// `max over (i+1)-faces F̄ of f(∂F̄) = 1`
    MaxBoundarySumOne,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Power,
    Dense,
}

#[derive(Clone, Debug)]
pub struct SpectralOptions {
    pub tol: f64,
    pub max_iters: usize,
    pub seed: u64,
    pub method: Method,
    pub normalization: Normalization,
}

impl Default for SpectralOptions {
    fn default() -> Self {
        SpectralOptions {
            tol: 1e-10,
            max_iters: 1_000_000,
            seed: 0x5eed,
            method: Method::Power,
            normalization: Normalization::UnitNorm,
        }
    }
}

impl SpectralOptions {
    pub fn with_tol(mut self, tol: f64) -> Self {
        self.tol = tol;
        self
    }

    pub fn with_method(mut self, method: Method) -> Self {
        self.method = method;
        self
    }

    pub fn with_normalization(mut self, normalization: Normalization) -> Self {
        self.normalization = normalization;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpectralResult {
    pub dim: usize,
    /// `𝔮_i(K)`
    pub value: f64,
    /// Indexed by `S_i(K)` in lexicographic order.
    pub vector: Vec<f64>,
    /// `‖Qf − 𝔮f‖₂ / ‖f‖₂`
    pub residual: f64,
    pub iterations: usize,
    pub normalization: Normalization,
    pub method: Method,
    /// Rayleigh quotients of the power iterates never decreased.
    pub monotone: bool,
    /// Gap to the second eigenvalue, when the dense solver was run.
    pub gap: Option<f64>,
    /// False when the top eigenvalue may be multiple, in which case the vector is
    /// one of many eigenvectors rather than the Perron vector.
    pub perron_reliable: bool,
}

/// Sum with Neumaier compensation.
pub fn compensated_sum<I: IntoIterator<Item = f64>>(xs: I) -> f64 {
    let mut sum = 0.0f64;
    let mut c = 0.0f64;
    for x in xs {
        let t = sum + x;
        if sum.abs() >= x.abs() {
            c += (sum - t) + x;
        } else {
            c += (x - t) + sum;
        }
        sum = t;
    }
    sum + c
}

/// `Σ_{F̄} f(∂F̄)² / ⟨f, f⟩` with compensated sums.
pub fn rayleigh_quotient(k: &SimplicialComplex, i: usize, f: &[f64]) -> Result<f64> {
    let sums = boundary_sums(k, i, f)?;
    let num = compensated_sum(sums.iter().map(|s| s * s));
    let den = compensated_sum(f.iter().map(|x| x * x));
    Ok(num / den)
}

fn norm(v: &[f64]) -> f64 {
    compensated_sum(v.iter().map(|x| x * x)).sqrt()
}

fn residual_of(k: &SimplicialComplex, i: usize, f: &[f64], value: f64) -> f64 {
    let mut qf = vec![0.0; f.len()];
    let mut carry = vec![0.0; f.len()];
    q_up_kernel_compensated(k, i, f, &mut qf, &mut carry);
    let r = compensated_sum(qf.iter().zip(f).map(|(a, b)| (a - value * b).powi(2))).sqrt();
    r / norm(f)
}

fn check_dim(k: &SimplicialComplex, i: usize) -> Result<()> {
    if i >= k.dim() || k.face_count(i + 1) == 0 {
        return Err(Error::DimensionOutOfRange { dim: i, lo: 0, hi: k.dim().saturating_sub(1) });
    }
    Ok(())
}

/// Largest eigenvalue of `Q_i^up` with an eigenvector.
pub fn spectral_radius(k: &SimplicialComplex, i: usize, opts: &SpectralOptions) -> Result<SpectralResult> {
    check_dim(k, i)?;
    let size = k.face_count(i);
    let gap_eig = if size <= DENSE_GAP_LIMIT || opts.method == Method::Dense {
        Some(dense_top(k, i)?)
    } else {
        None
    };

    let (mut vector, iterations, monotone) = match opts.method {
        Method::Power => power_iterate(k, i, opts)?,
        Method::Dense => (gap_eig.as_ref().expect("computed").1.clone(), 0, true),
    };

    // Compensated readout on the unit-norm iterate.
    let nv = norm(&vector);
    vector.iter_mut().for_each(|x| *x /= nv);
    let value = rayleigh_quotient(k, i, &vector)?;
    let residual = residual_of(k, i, &vector, value);
    if residual > opts.tol && opts.method == Method::Power {
        return Err(Error::NoConvergence(opts.max_iters));
    }

    let gap = gap_eig.map(|(vals, _)| if vals.len() > 1 { vals[0] - vals[1] } else { f64::INFINITY });
    let perron_reliable = k.is_path_connected(i) && gap.is_none_or(|g| g >= DEGENERACY_GAP);

    let mut out = SpectralResult {
        dim: i,
        value,
        vector,
        residual,
        iterations,
        normalization: Normalization::UnitNorm,
        method: opts.method,
        monotone,
        gap,
        perron_reliable,
    };
    normalize(k, &mut out, opts.normalization)?;
    Ok(out)
}

/// Eigenvalues in decreasing order and the top eigenvector (sign fixed to a
/// nonnegative sum) from the dense symmetric eigensolver.
pub fn dense_top(k: &SimplicialComplex, i: usize) -> Result<(Vec<f64>, Vec<f64>)> {
    let size = k.face_count(i);
    if size > DENSE_LIMIT {
        return Err(Error::DenseTooLarge { size, limit: DENSE_LIMIT });
    }
    let q: DMatrix<f64> = laplacian(k, i, LaplacianKind::QUp)?.to_dense()?;
    let eig = q.symmetric_eigen();
    let mut order: Vec<usize> = (0..size).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[b].total_cmp(&eig.eigenvalues[a]));
    let vals: Vec<f64> = order.iter().map(|&j| eig.eigenvalues[j]).collect();
    let mut v: Vec<f64> = eig.eigenvectors.column(order[0]).iter().copied().collect();
    if v.iter().sum::<f64>() < 0.0 {
        v.iter_mut().for_each(|x| *x = -*x);
    }
    Ok((vals, v))
}

fn power_iterate(k: &SimplicialComplex, i: usize, opts: &SpectralOptions) -> Result<(Vec<f64>, usize, bool)> {
    let size = k.face_count(i);
    let mut r = rng::stream(opts.seed, i as u64);
    let mut x: Vec<f64> = (0..size).map(|_| r.random_range(0.5..1.5)).collect();
    let nx = norm(&x);
    x.iter_mut().for_each(|v| *v /= nx);
    let mut y = vec![0.0; size];
    let mut carry = vec![0.0; size];
    let mut last_rq = f64::NEG_INFINITY;
    let mut monotone = true;
    let (mut best_res, mut best_iter) = (f64::INFINITY, 0);
    for iter in 1..=opts.max_iters {
        q_up_kernel_compensated(k, i, &x, &mut y, &mut carry);
        let rq = compensated_sum(x.iter().zip(&y).map(|(a, b)| a * b));
        if rq < last_rq - 1e-12 * rq.abs().max(1.0) {
            monotone = false;
        }
        last_rq = rq;
        let res = compensated_sum(x.iter().zip(&y).map(|(a, b)| (b - rq * a).powi(2))).sqrt();
        if res <= opts.tol {
            return Ok((x, iter, monotone));
        }
        if res < best_res {
            (best_res, best_iter) = (res, iter);
        } else if iter - best_iter > STALL_ITERS {
            return Err(Error::NoConvergence(iter));
        }
        let ny = norm(&y);
        if ny == 0.0 {
            return Err(Error::NoConvergence(iter));
        }
        for (a, b) in x.iter_mut().zip(&y) {
            *a = b / ny;
        }
    }
    Err(Error::NoConvergence(opts.max_iters))
}

/// Rescales the vector in place to the requested normalization.
pub fn normalize(k: &SimplicialComplex, res: &mut SpectralResult, normalization: Normalization) -> Result<()> {
    let scale = match normalization {
        Normalization::UnitNorm => norm(&res.vector),
        Normalization::MaxBoundarySumOne => {
            let sums = boundary_sums(k, res.dim, &res.vector)?;
            sums.iter().copied().fold(f64::NEG_INFINITY, f64::max)
        }
    };
    res.vector.iter_mut().for_each(|x| *x /= scale);
    res.normalization = normalization;
    Ok(())
}

/// The positive eigenvector of `Q_i^up` at its spectral radius.
pub fn perron_vector(k: &SimplicialComplex, i: usize, opts: &SpectralOptions) -> Result<SpectralResult> {
    check_dim(k, i)?;
    if !k.is_path_connected(i) {
        return Err(Error::NotPathConnected(i));
    }
    spectral_radius(k, i, opts)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Transfer {
    /// `g(F̄) = f(∂F̄)` over `S_{i+1}(K)`.
    pub vector: Vec<f64>,
    /// `‖Q_{i+1}^down g − 𝔮 g‖ / ‖g‖`
    pub residual: f64,
}

const TRANSFER_INPUT_RESIDUAL: f64 = 1e-8;

fn require_eigenpair(res: &SpectralResult) -> Result<()> {
    if res.residual > TRANSFER_INPUT_RESIDUAL {
        return Err(Error::ResidualTooLarge { residual: res.residual, limit: TRANSFER_INPUT_RESIDUAL });
    }
    Ok(())
}

/// Moves an eigenpair of `Q_i^up` to one of `Q_{i+1}^down` with the same eigenvalue.
pub fn transfer_to_down(k: &SimplicialComplex, i: usize, res: &SpectralResult) -> Result<Transfer> {
    require_eigenpair(res)?;
    let g = boundary_sums(k, i, &res.vector)?;
    let qg = apply_q_down(k, i + 1, &g)?;
    let r = compensated_sum(qg.iter().zip(&g).map(|(a, b)| (a - res.value * b).powi(2))).sqrt();
    Ok(Transfer { residual: r / norm(&g), vector: g })
}

/// Evaluates both sides of the second-order down-neighbor identity
///
/// `𝔮² g(F̄) = (i+2)² g(F̄) + 2(i+2) Σ_{F̄'∈N^d(F̄)} g(F̄') + Σ_{F̄'∈N^d(F̄)} Σ_{F̄''∈N^d(F̄')} g(F̄'')`
///
/// at every (i+1)-face, with `g = f(∂·)` for the unit-norm eigenvector `f`,
/// and returns the largest absolute discrepancy.
pub fn second_order_identity_check(k: &SimplicialComplex, i: usize, res: &SpectralResult) -> Result<f64> {
    require_eigenpair(res)?;
    let nv = norm(&res.vector);
    let f: Vec<f64> = res.vector.iter().map(|x| x / nv).collect();
    let g = boundary_sums(k, i, &f)?;
    let top = i + 1;
    let neighbors: Vec<Vec<usize>> = (0..g.len()).map(|c| k.down_neighbor_indices(top, c)).collect();
    let first: Vec<f64> = neighbors.iter().map(|nb| nb.iter().map(|&c| g[c]).sum()).collect();
    let second: Vec<f64> = neighbors.iter().map(|nb| nb.iter().map(|&c| first[c]).sum()).collect();
    let m = (i + 2) as f64;
    let q = res.value;
    Ok((0..g.len())
        .map(|c| {
            let lhs = q * q * g[c];
            let rhs = m * m * g[c] + 2.0 * m * first[c] + second[c];
            (lhs - rhs).abs()
        })
        .fold(0.0, f64::max))
}
