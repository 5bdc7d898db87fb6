//! Scalar summaries of an embedding: how close it is to an affine image of
//! the input, how it compares to the projection pattern, and how well it
//! recovers the ground-truth chart.

use nalgebra::{DMatrix, SymmetricEigen};

use crate::dataset::PointCloud;
use crate::error::{LleError, Result};
use crate::oracle::ProjectionPattern;
use crate::spectral::LleRun;

/// Affine-fit residual at or below which an embedding counts as a
/// projection of the input.
pub const PROJECTION_THRESHOLD: f64 = 0.05;

/// Relative singular value cutoff when fitting `Y` from `X`.
const FIT_RANK_RTOL: f64 = 1e-10;

fn centered(m: &DMatrix<f64>) -> DMatrix<f64> {
    let mut c = m.clone();
    for mut row in c.row_iter_mut() {
        let mean = row.mean();
        row.add_scalar_mut(-mean);
    }
    c
}

/// `min_{B,b} ‖BX + b1ᵀ - Y‖ / ‖Y - mean(Y)‖`, clamped to `[0, 1]`.
///
/// Zero means `Y` is exactly an affine image of `X`.
pub fn affine_fit_residual(x: &DMatrix<f64>, y: &DMatrix<f64>) -> Result<f64> {
    let n = x.ncols();
    if y.ncols() != n {
        return Err(LleError::DimensionMismatch { expected: n, got: y.ncols() });
    }
    if n <= x.nrows() + 1 {
        return Err(LleError::InvalidInput(format!(
            "affine fit needs N > D + 1 (N={n}, D={})",
            x.nrows()
        )));
    }
    let xc = centered(x);
    let yc = centered(y);
    let svd = xc.svd(false, true);
    let smax = svd.singular_values.max();
    if !(smax > 0.0) {
        return Err(LleError::Degenerate("input has zero variance".into()));
    }
    let vt = svd.v_t.expect("requested V");
    let y_norm = yc.norm();
    if y_norm == 0.0 {
        return Ok(0.0);
    }
    // project the rows of Yc onto the row space of Xc
    let mut fitted = DMatrix::zeros(yc.nrows(), n);
    for (j, &s) in svd.singular_values.iter().enumerate() {
        if s > FIT_RANK_RTOL * smax {
            let v = vt.row(j);
            let coeff = &yc * v.transpose();
            fitted += coeff * v;
        }
    }
    Ok(((yc - fitted).norm() / y_norm).clamp(0.0, 1.0))
}

fn normalized_configuration(m: &DMatrix<f64>) -> Result<DMatrix<f64>> {
    let c = centered(m);
    let norm = c.norm();
    if !(norm > 0.0) {
        return Err(LleError::Degenerate("configuration has zero variance".into()));
    }
    Ok(c / norm)
}

/// Distance between two `d x N` configurations after centering, scaling to
/// unit Frobenius norm and the best orthogonal alignment (reflections
/// allowed). Lies in `[0, √2]`.
pub fn procrustes_distance(y: &DMatrix<f64>, z: &DMatrix<f64>) -> Result<f64> {
    if y.shape() != z.shape() {
        return Err(LleError::DimensionMismatch { expected: z.len(), got: y.len() });
    }
    if y.ncols() < y.nrows() {
        return Err(LleError::InvalidInput("procrustes needs N >= d".into()));
    }
    let a = normalized_configuration(y)?;
    let b = normalized_configuration(z)?;
    // Q = U Vᵀ from the SVD of B Aᵀ; evaluated directly since 2 - 2 tr(Σ)
    // loses half the digits under the square root
    let svd = (&b * a.transpose()).svd(true, true);
    let q = svd.u.expect("requested U") * svd.v_t.expect("requested V");
    Ok((q * a - b).norm())
}

/// The chart `(s, h)` as a `2 x N` configuration, centered and whitened so
/// that its rows are orthonormal like an embedding's.
pub fn normalized_params(cloud: &PointCloud) -> Result<DMatrix<f64>> {
    let params = cloud
        .params()
        .ok_or_else(|| LleError::InvalidInput("point cloud has no ground-truth parameters".into()))?;
    let p = centered(&params.transpose());
    let eig = SymmetricEigen::new(&p * p.transpose());
    if eig.eigenvalues.iter().any(|&l| !(l > 0.0)) {
        return Err(LleError::Degenerate("parameters are collinear".into()));
    }
    let inv_sqrt = &eig.eigenvectors
        * DMatrix::from_diagonal(&eig.eigenvalues.map(|l| l.sqrt().recip()))
        * eig.eigenvectors.transpose();
    Ok(inv_sqrt * p)
}

/// Procrustes distance from `y` to the whitened ground-truth chart. Small
/// values mean the manifold was unrolled.
pub fn param_recovery_score(y: &DMatrix<f64>, cloud: &PointCloud) -> Result<f64> {
    let target = normalized_params(cloud)?;
    if y.nrows() != target.nrows() {
        return Err(LleError::DimensionMismatch { expected: target.nrows(), got: y.nrows() });
    }
    procrustes_distance(y, &target)
}

#[derive(Debug, Clone, PartialEq)]
pub struct DiagnosticsReport {
    pub affine_fit_residual: f64,
    pub procrustes_to_pattern: f64,
    /// `None` when the cloud has no chart or `d != 2`.
    pub param_recovery: Option<f64>,
    pub null_multiplicity: usize,
    pub constant_vector_found: bool,
    pub max_weight_residual: f64,
}

impl DiagnosticsReport {
    pub fn projection_detected(&self) -> bool {
        self.affine_fit_residual <= PROJECTION_THRESHOLD
    }
}

pub fn diagnose(cloud: &PointCloud, run: &LleRun, pattern: &ProjectionPattern) -> Result<DiagnosticsReport> {
    let y = &run.embedding.y;
    let param_recovery = match cloud.params() {
        Some(_) if y.nrows() == 2 => Some(param_recovery_score(y, cloud)?),
        _ => None,
    };
    Ok(DiagnosticsReport {
        affine_fit_residual: affine_fit_residual(cloud.points(), y)?,
        procrustes_to_pattern: procrustes_distance(y, &pattern.y)?,
        param_recovery,
        null_multiplicity: run.embedding.null_multiplicity,
        constant_vector_found: run.embedding.constant_vector_found,
        max_weight_residual: run.weights.max_residual(),
    })
}
