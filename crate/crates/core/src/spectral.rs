//! Floating-point spectral radius and Perron vector.
//!
//! Power iteration runs on the shifted tensor T + I, whose positive
//! diagonal guarantees convergence for nonnegative weakly irreducible
//! inputs; the shift is subtracted from the final Rayleigh estimate.
//! Convergence is measured by the spread of the Collatz-Wielandt ratios
//! `(T x^{k-1})_i / x_i^{k-1}`.

use crate::error::{Error, Result};
use crate::macaulay::macaulay_matrices;
use crate::tensor::{triple_product, DiagonalScaling};
use crate::FloatTensor;

#[derive(Debug, Clone)]
pub struct PerronData {
    /// Spectral radius estimate.
    pub rho: f64,
    /// Positive eigenvector, normalized to max-norm 1.
    pub vector: Vec<f64>,
    pub iterations: usize,
    /// Final `max_i |(T u^{k-1})_i - rho u_i^{k-1}|`.
    pub residual: f64,
}

pub const DEFAULT_TOL: f64 = 1e-12;
pub const DEFAULT_MAX_ITER: usize = 100_000;

/// Power iteration for a nonnegative weakly irreducible tensor.
pub fn perron(t: &FloatTensor, tol: f64, max_iter: usize) -> Result<PerronData> {
    for (first, rest, v) in t.canonical_entries() {
        if *v < 0.0 {
            let mut idx = vec![first];
            idx.extend_from_slice(rest);
            return Err(Error::NegativeEntry(idx));
        }
    }
    if !t.weakly_irreducible() {
        return Err(Error::NotWeaklyIrreducible);
    }
    let n = t.dim();
    let k = t.order();
    let exponent = 1.0 / (k as f64 - 1.0);
    let mut x = vec![1.0f64; n];
    let mut spread = f64::INFINITY;
    for iteration in 1..=max_iter {
        let applied = t.apply(&x)?;
        // shifted: y_i = (T x^{k-1})_i + x_i^{k-1}
        let mut ratios = Vec::with_capacity(n);
        let mut y = Vec::with_capacity(n);
        for i in 0..n {
            let xk = x[i].powi(k as i32 - 1);
            y.push(applied[i] + xk);
            ratios.push(applied[i] / xk);
        }
        let rho_min = ratios.iter().cloned().fold(f64::INFINITY, f64::min);
        let rho_max = ratios.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        spread = rho_max - rho_min;
        if spread <= tol {
            let rho = 0.5 * (rho_min + rho_max);
            let residual = applied
                .iter()
                .zip(&x)
                .map(|(a, xi)| (a - rho * xi.powi(k as i32 - 1)).abs())
                .fold(0.0, f64::max);
            return Ok(PerronData {
                rho,
                vector: x,
                iterations: iteration,
                residual,
            });
        }
        let max = y.iter().cloned().fold(0.0f64, f64::max);
        for (xi, yi) in x.iter_mut().zip(&y) {
            *xi = (yi / max).powf(exponent);
        }
    }
    Err(Error::NonConvergence { max_iter, spread })
}

/// Perron data for the adjacency tensor of a connected hypergraph.
pub fn adjacency_perron(h: &crate::Hypergraph, tol: f64, max_iter: usize) -> Result<PerronData> {
    let a: FloatTensor = crate::tensor::adjacency_tensor(h);
    perron(&a, tol, max_iter)
}

/// Normalize T to the stochastic tensor `B = (1/rho) U^{-(k-1)} T U` with
/// U = diag(Perron vector); every slice row sum of B must land within
/// `tol` of 1.
pub fn stochastic_normalize(
    t: &FloatTensor,
    perron_data: &PerronData,
    tol: f64,
) -> Result<FloatTensor> {
    let u = DiagonalScaling::new(perron_data.vector.clone())?;
    let left = u.power(-(t.order() as i32 - 1));
    let product = triple_product(&left, t, &u)?;
    let b = product.scale(&(1.0 / perron_data.rho));
    for (i, sum) in b.slice_row_sums().into_iter().enumerate() {
        if (sum - 1.0).abs() > tol {
            return Err(Error::RowSumDeviation { index: i, sum, tol });
        }
    }
    Ok(b)
}

/// True when the Macaulay matrix of `b` is row-stochastic within `tol`.
pub fn stochastic_macaulay_check(b: &FloatTensor, tol: f64, cap: usize) -> Result<bool> {
    let pair = macaulay_matrices(b, cap)?;
    let m = &pair.matrix;
    for i in 0..m.rows() {
        if (m.row_sum(i) - 1.0).abs() > tol {
            return Ok(false);
        }
        if m.row(i).iter().any(|&v| v < -tol) {
            return Ok(false);
        }
    }
    Ok(true)
}
