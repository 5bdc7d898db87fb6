//! Linear "projection pattern" solutions of the embedding problem.
//!
//! If every point is exactly an affine combination of its neighbors, any
//! linear map preserves those relations, so `Y = AX` has zero cost. Taking
//! `A = diag(λ_l^{-1/2}) [u_1 … u_d]ᵀ` for orthonormal eigenpairs of `XXᵀ`
//! additionally gives `YYᵀ = A XXᵀ Aᵀ = I`. Nothing here touches `M`, so
//! agreement with the eigensolver is an independent check.

use nalgebra::{DMatrix, SymmetricEigen};

use crate::dataset::PointCloud;
use crate::error::{LleError, Result};
use crate::neighbors::NeighborGraph;
use crate::spectral::AlignmentMatrix;
use crate::weights::WeightSet;

/// Reconstruction residual, relative to the data diameter, under which
/// points count as exactly reconstructed.
pub const EXACT_RECONSTRUCTION_RTOL: f64 = 1e-8;

/// Minimum ratio `σ_d / σ_1` for the rank condition.
pub const RANK_RTOL: f64 = 1e-10;

/// Top eigenpairs of the uncentered data Gram `XXᵀ`: `values` descending,
/// `vectors` is `D x d` with orthonormal columns.
#[derive(Debug, Clone)]
pub struct DataGramEigs {
    pub values: Vec<f64>,
    pub vectors: DMatrix<f64>,
}

pub fn data_gram_top_eigs(cloud: &PointCloud, d: usize) -> Result<DataGramEigs> {
    let x = cloud.points();
    let dim = x.nrows();
    if d == 0 || d > dim {
        return Err(LleError::RankDeficient { d, ratio: 0.0 });
    }
    let gram = x * x.transpose();
    let eig = SymmetricEigen::new(gram);
    let mut order: Vec<usize> = (0..dim).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[b].total_cmp(&eig.eigenvalues[a]));
    let values: Vec<f64> = order[..d].iter().map(|&j| eig.eigenvalues[j]).collect();
    let top = values[0];
    let ratio = if top > 0.0 { (values[d - 1].max(0.0) / top).sqrt() } else { 0.0 };
    if !(ratio > RANK_RTOL) {
        return Err(LleError::RankDeficient { d, ratio });
    }
    let mut vectors = DMatrix::zeros(dim, d);
    for (dst, &src) in order[..d].iter().enumerate() {
        vectors.column_mut(dst).copy_from(&eig.eigenvectors.column(src));
        // largest-magnitude entry positive
        let pivot = vectors.column(dst).iter().copied().fold(0.0f64, |a, v| if v.abs() > a.abs() { v } else { a });
        if pivot < 0.0 {
            vectors.column_mut(dst).neg_mut();
        }
    }
    Ok(DataGramEigs { values, vectors })
}

/// Cost and constraint violation of a candidate `Y` (`d x N`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Certificate {
    /// `‖(I - W) Yᵀ‖_F²`.
    pub cost: f64,
    /// `‖YYᵀ - I‖_F`.
    pub constraint_error: f64,
}

fn constraint_error(y: &DMatrix<f64>) -> f64 {
    let d = y.nrows();
    (y * y.transpose() - DMatrix::<f64>::identity(d, d)).norm()
}

/// Evaluates both parts of the embedding problem for any candidate `Y`.
pub fn verify_solution(y: &DMatrix<f64>, alignment: &AlignmentMatrix) -> Result<Certificate> {
    let r = alignment.apply_i_minus_w(y)?;
    Ok(Certificate { cost: r.norm_squared(), constraint_error: constraint_error(y) })
}

#[derive(Debug, Clone)]
pub struct ProjectionPattern {
    /// `d x D` map `diag(λ^{-1/2}) Uᵀ`.
    pub a: DMatrix<f64>,
    /// `d x N` pattern `AX`.
    pub y: DMatrix<f64>,
    pub top_eigenvalues: Vec<f64>,
    pub cost: f64,
    pub constraint_error: f64,
    /// Whether the weights reconstruct every point to within
    /// `EXACT_RECONSTRUCTION_RTOL * diameter`. When false the pattern is
    /// still built, but it carries no optimality guarantee.
    pub reconstruction_certified: bool,
    pub max_weight_residual: f64,
}

impl ProjectionPattern {
    pub fn certificate(&self) -> Certificate {
        Certificate { cost: self.cost, constraint_error: self.constraint_error }
    }

    pub fn write_csv<W: std::io::Write>(&self, writer: W) -> Result<()> {
        let lambdas: Vec<String> = self.top_eigenvalues.iter().map(|v| format!("{v:.16e}")).collect();
        let metadata = vec![
            ("top_eigenvalues".to_string(), lambdas.join(";")),
            ("cost".to_string(), format!("{:.16e}", self.cost)),
            ("constraint_error".to_string(), format!("{:.16e}", self.constraint_error)),
            ("reconstruction_certified".to_string(), self.reconstruction_certified.to_string()),
        ];
        crate::dataset::write_coordinates_csv(&self.y, &metadata, writer)
    }
}

/// Builds `Y = AX` and evaluates its cost directly from the weights.
pub fn projection_pattern(
    cloud: &PointCloud,
    graph: &NeighborGraph,
    weight_set: &WeightSet,
    d: usize,
) -> Result<ProjectionPattern> {
    let n = cloud.len();
    if graph.len() != n || weight_set.len() != n {
        return Err(LleError::DimensionMismatch { expected: n, got: weight_set.len() });
    }
    let eigs = data_gram_top_eigs(cloud, d)?;
    let mut a = eigs.vectors.transpose();
    for (l, &lambda) in eigs.values.iter().enumerate() {
        a.row_mut(l).scale_mut(lambda.sqrt().recip());
    }
    let y = &a * cloud.points();

    let mut cost = 0.0;
    for i in 0..n {
        let mut r = y.column(i).into_owned();
        for (&w, &j) in weight_set.weights.row(i).iter().zip(graph.neighbors(i)) {
            r.axpy(-w, &y.column(j), 1.0);
        }
        cost += r.norm_squared();
    }
    let max_weight_residual = weight_set.max_residual();
    let reconstruction_certified = max_weight_residual <= EXACT_RECONSTRUCTION_RTOL * cloud.diameter();
    let constraint_error = constraint_error(&y);
    Ok(ProjectionPattern {
        a,
        y,
        top_eigenvalues: eigs.values,
        cost,
        constraint_error,
        reconstruction_certified,
        max_weight_residual,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::neighbors::knn;
    use crate::weights::{compute_weight_set, WeightMode};

    #[test]
    fn identity_data_gram() {
        let cloud = PointCloud::new(DMatrix::identity(3, 3), None, 0).unwrap();
        let e = data_gram_top_eigs(&cloud, 2).unwrap();
        assert!((e.values[0] - 1.0).abs() < 1e-14 && (e.values[1] - 1.0).abs() < 1e-14);
        let g = e.vectors.transpose() * &e.vectors;
        assert!((g - DMatrix::identity(2, 2)).amax() < 1e-14);
    }

    #[test]
    fn scaled_orthonormal_rows() {
        // X = diag(2, 1) Q with Q having orthonormal rows
        let q = crate::dataset::make_isometric_embedding(2, 5, 3).unwrap().matrix.transpose();
        let x = DMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![2.0, 1.0])) * q;
        let cloud = PointCloud::new(x, None, 0).unwrap();
        let e = data_gram_top_eigs(&cloud, 2).unwrap();
        assert!((e.values[0] - 4.0).abs() < 1e-12);
        assert!((e.values[1] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn rank_deficiency_is_reported() {
        let x = DMatrix::from_row_slice(2, 3, &[1.0, 2.0, 3.0, 2.0, 4.0, 6.0]);
        let cloud = PointCloud::new(x, None, 0).unwrap();
        assert!(matches!(data_gram_top_eigs(&cloud, 2), Err(LleError::RankDeficient { d: 2, .. })));
    }

    #[test]
    fn zero_candidate_certificate() {
        let cloud = crate::dataset::gen_swiss_roll_hole(30, 0, None).unwrap();
        let g = knn(&cloud, 5).unwrap();
        let ws = compute_weight_set(&cloud, &g, WeightMode::Regularized(1e-3)).unwrap();
        let a = crate::spectral::build_alignment(&g, &ws).unwrap();
        let c = verify_solution(&DMatrix::zeros(2, 30), &a).unwrap();
        assert_eq!(c.cost, 0.0);
        assert!((c.constraint_error - 2f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn orthonormal_rows_scaled_by_sqrt_n() {
        let n = 8;
        let u = crate::dataset::make_isometric_embedding(3, n, 1).unwrap().matrix;
        let x = u.transpose() * (n as f64).sqrt();
        let cloud = PointCloud::new(x.clone(), None, 0).unwrap();
        let g = knn(&cloud, 4).unwrap();
        let ws = compute_weight_set(&cloud, &g, WeightMode::Exact).unwrap();
        let p = projection_pattern(&cloud, &g, &ws, 3).unwrap();
        assert!(p.constraint_error < 1e-12);
        for &l in &p.top_eigenvalues {
            assert!((l - n as f64).abs() < 1e-10);
        }
        // Y = N^{-1/2} X up to a rotation of the rows
        let yyt = &p.y * p.y.transpose();
        assert!((yyt - DMatrix::identity(3, 3)).amax() < 1e-12);
    }
}
