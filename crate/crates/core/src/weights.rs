//! Barycentric reconstruction weights, with or without Tikhonov
//! regularization of the local Gram matrix.

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use rayon::prelude::*;

use crate::dataset::PointCloud;
use crate::error::{LleError, Result};
use crate::neighbors::NeighborGraph;

/// Eigenvalues at or below this fraction of the trace count as zero.
pub const SINGULAR_RTOL: f64 = 1e-10;

/// Squared norm (relative to `k`) below which the null-space component of
/// the ones vector is treated as absent.
const NULL_ONES_RTOL: f64 = 1e-12;

/// `C_i = Z_iᵀ Z_i` for `Z_i = [x_{i_1} - x_i, ..., x_{i_k} - x_i]`.
#[derive(Debug, Clone, PartialEq)]
pub struct LocalGram {
    pub matrix: DMatrix<f64>,
    pub trace: f64,
}

impl LocalGram {
    pub fn new(matrix: DMatrix<f64>) -> Self {
        let trace = matrix.trace();
        Self { matrix, trace }
    }

    pub fn k(&self) -> usize {
        self.matrix.nrows()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum WeightMode {
    /// Exact solution of the constrained least-squares problem; the
    /// `eps -> 0+` limit when the Gram matrix is singular.
    Exact,
    /// `(C + eps I)^{-1} 1`, normalized, with `eps = ratio * trace(C)`.
    Regularized(f64),
}

impl WeightMode {
    pub fn eps_ratio(&self) -> Option<f64> {
        match self {
            WeightMode::Exact => None,
            WeightMode::Regularized(r) => Some(*r),
        }
    }
}

/// Per-point weight vectors (row `i` of `weights` is `w^(i)`) and the
/// reconstruction residuals `‖x_i - Σ_j w_j x_{i_j}‖`.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightSet {
    pub weights: DMatrix<f64>,
    pub residuals: Vec<f64>,
    pub mode: WeightMode,
}

impl WeightSet {
    pub fn len(&self) -> usize {
        self.weights.nrows()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.nrows() == 0
    }

    pub fn k(&self) -> usize {
        self.weights.ncols()
    }

    pub fn max_residual(&self) -> f64 {
        self.residuals.iter().copied().fold(0.0, f64::max)
    }

    /// Whether every point is reconstructed by its neighbors to within
    /// `rtol * scale`.
    pub fn reconstructs_exactly(&self, scale: f64, rtol: f64) -> bool {
        self.max_residual() <= rtol * scale
    }
}

pub fn local_gram(cloud: &PointCloud, graph: &NeighborGraph, i: usize) -> LocalGram {
    let x = cloud.points();
    let xi = x.column(i);
    let nbrs = graph.neighbors(i);
    let z = DMatrix::from_fn(x.nrows(), nbrs.len(), |r, c| x[(r, nbrs[c])] - xi[r]);
    LocalGram::new(z.transpose() * z)
}

fn normalize(v: DVector<f64>) -> Result<DVector<f64>> {
    let s = v.sum();
    if !s.is_finite() || s == 0.0 {
        return Err(LleError::InfeasibleStationarity);
    }
    Ok(v / s)
}

/// Solves `C w = λ 1, 1ᵀ w = 1`.
///
/// Nonsingular `C` gives the unique solution. For singular `C` the result is
/// `lim_{eps->0+} w(eps)`: the normalized projection of `1` onto the null
/// space when that projection is nonzero, otherwise `C⁺1 / 1ᵀC⁺1`.
pub fn solve_weights_exact(gram: &LocalGram) -> Result<DVector<f64>> {
    let k = gram.k();
    let ones = DVector::from_element(k, 1.0);
    if gram.trace <= 0.0 {
        return Ok(ones / k as f64);
    }
    let eig = SymmetricEigen::new(gram.matrix.clone());
    let tol = SINGULAR_RTOL * gram.trace;
    let coeffs = eig.eigenvectors.tr_mul(&ones);

    let mut null_part = DVector::zeros(k);
    let mut range_part = DVector::zeros(k);
    let mut singular = false;
    for (j, &lambda) in eig.eigenvalues.iter().enumerate() {
        let v = eig.eigenvectors.column(j);
        if lambda > tol {
            range_part.axpy(coeffs[j] / lambda, &v, 1.0);
        } else {
            singular = true;
            null_part.axpy(coeffs[j], &v, 1.0);
        }
    }
    if singular && null_part.norm_squared() > NULL_ONES_RTOL * k as f64 {
        return normalize(null_part);
    }
    normalize(range_part)
}

/// `w(eps) = (C + eps I)^{-1} 1 / 1ᵀ(C + eps I)^{-1} 1` with
/// `eps = eps_ratio * trace(C)`, or `eps_ratio` itself if the trace is zero.
pub fn solve_weights_regularized(gram: &LocalGram, eps_ratio: f64) -> Result<DVector<f64>> {
    if !(eps_ratio > 0.0 && eps_ratio.is_finite()) {
        return Err(LleError::InvalidInput(format!("eps_ratio must be positive, got {eps_ratio}")));
    }
    let k = gram.k();
    let eps = if gram.trace > 0.0 { eps_ratio * gram.trace } else { eps_ratio };
    let mut a = gram.matrix.clone();
    for j in 0..k {
        a[(j, j)] += eps;
    }
    let ones = DVector::from_element(k, 1.0);
    let solved = match a.clone().cholesky() {
        Some(ch) => ch.solve(&ones),
        None => a.lu().solve(&ones).ok_or(LleError::InfeasibleStationarity)?,
    };
    normalize(solved)
}

pub fn solve_weights(gram: &LocalGram, mode: WeightMode) -> Result<DVector<f64>> {
    match mode {
        WeightMode::Exact => solve_weights_exact(gram),
        WeightMode::Regularized(r) => solve_weights_regularized(gram, r),
    }
}

/// Runs the chosen solver at every point and records residuals.
pub fn compute_weight_set(cloud: &PointCloud, graph: &NeighborGraph, mode: WeightMode) -> Result<WeightSet> {
    let n = cloud.len();
    if graph.len() != n {
        return Err(LleError::DimensionMismatch { expected: n, got: graph.len() });
    }
    if let WeightMode::Regularized(r) = mode {
        if !(r > 0.0 && r.is_finite()) {
            return Err(LleError::InvalidInput(format!("eps_ratio must be positive, got {r}")));
        }
    }
    let k = graph.k();
    let x = cloud.points();
    let rows: Vec<(DVector<f64>, f64)> = (0..n)
        .into_par_iter()
        .map(|i| {
            let gram = local_gram(cloud, graph, i);
            let w = solve_weights(&gram, mode)
                .map_err(|e| LleError::AtPoint { index: i, source: Box::new(e) })?;
            let mut r = x.column(i).into_owned();
            for (wj, &j) in w.iter().zip(graph.neighbors(i)) {
                r.axpy(-wj, &x.column(j), 1.0);
            }
            Ok((w, r.norm()))
        })
        .collect::<Result<_>>()?;
    let mut weights = DMatrix::zeros(n, k);
    let mut residuals = Vec::with_capacity(n);
    for (i, (w, r)) in rows.into_iter().enumerate() {
        weights.row_mut(i).copy_from(&w.transpose());
        residuals.push(r);
    }
    Ok(WeightSet { weights, residuals, mode })
}
