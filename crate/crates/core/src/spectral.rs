//! Alignment matrix `M = (I - W)ᵀ(I - W)`, its bottom eigenpairs, and the
//! embedding they define.
//!
//! The embedder keeps the classical selection rule: compute the `d + 1`
//! smallest eigenpairs and drop the first one, expecting it to be the
//! constant vector. When the null space of `M` has dimension above one that
//! expectation fails, and `EmbeddingResult` reports it.

use nalgebra::{DMatrix, DVector, SymmetricEigen};

use crate::dataset::PointCloud;
use crate::error::{LleError, Result};
use crate::neighbors::{knn, NeighborGraph};
use crate::weights::{compute_weight_set, WeightMode, WeightSet};

/// Eigenvalues of `M` at or below this fraction of `mean(diag M)` count as
/// zero.
pub const NULL_RTOL: f64 = 1e-8;

/// Residual tolerance, relative to `‖M‖₂`, for accepted eigenpairs.
pub const EIG_RESIDUAL_RTOL: f64 = 1e-9;

/// Sparse `W` (row `i` has the weights of point `i` at its neighbors) and
/// the dense product `M`.
#[derive(Debug, Clone)]
pub struct AlignmentMatrix {
    graph: NeighborGraph,
    weights: DMatrix<f64>,
    m: DMatrix<f64>,
}

impl AlignmentMatrix {
    pub fn len(&self) -> usize {
        self.m.nrows()
    }

    pub fn is_empty(&self) -> bool {
        self.m.nrows() == 0
    }

    pub fn m(&self) -> &DMatrix<f64> {
        &self.m
    }

    pub fn graph(&self) -> &NeighborGraph {
        &self.graph
    }

    /// Row `i` of `W` as `(column, value)` pairs.
    pub fn w_row(&self, i: usize) -> impl Iterator<Item = (usize, f64)> + '_ {
        let w = &self.weights;
        self.graph.neighbors(i).iter().enumerate().map(move |(j, &s)| (s, w[(i, j)]))
    }

    pub fn dense_w(&self) -> DMatrix<f64> {
        let n = self.len();
        let mut w = DMatrix::zeros(n, n);
        for i in 0..n {
            for (s, v) in self.w_row(i) {
                w[(i, s)] += v;
            }
        }
        w
    }

    /// `(I - W) Yᵀ` for `Y` stored as `d x N`; row `i` of the result is
    /// `y_i - Σ_j w_j y_{i_j}`.
    pub fn apply_i_minus_w(&self, y: &DMatrix<f64>) -> Result<DMatrix<f64>> {
        let n = self.len();
        if y.ncols() != n {
            return Err(LleError::DimensionMismatch { expected: n, got: y.ncols() });
        }
        let mut out = y.transpose();
        for i in 0..n {
            for (s, v) in self.w_row(i) {
                for r in 0..y.nrows() {
                    out[(i, r)] -= v * y[(r, s)];
                }
            }
        }
        Ok(out)
    }
}

/// Assembles `W` and `M = Σ_i r_i r_iᵀ`, where `r_i = e_i - Σ_j w_j e_{i_j}`
/// is row `i` of `I - W`.
pub fn build_alignment(graph: &NeighborGraph, weight_set: &WeightSet) -> Result<AlignmentMatrix> {
    let n = graph.len();
    if weight_set.len() != n || weight_set.k() != graph.k() {
        return Err(LleError::DimensionMismatch { expected: n, got: weight_set.len() });
    }
    let mut m = DMatrix::zeros(n, n);
    let mut entries: Vec<(usize, f64)> = Vec::with_capacity(graph.k() + 1);
    for i in 0..n {
        entries.clear();
        entries.push((i, 1.0));
        for (&s, &w) in graph.neighbors(i).iter().zip(weight_set.weights.row(i).iter()) {
            entries.push((s, -w));
        }
        for &(a, va) in &entries {
            for &(b, vb) in &entries {
                m[(a, b)] += va * vb;
            }
        }
    }
    Ok(AlignmentMatrix { graph: graph.clone(), weights: weight_set.weights.clone(), m })
}

/// Eigenpairs in ascending order; `vectors` holds one eigenvector per
/// column.
#[derive(Debug, Clone)]
pub struct Eigenpairs {
    pub values: Vec<f64>,
    pub vectors: DMatrix<f64>,
}

fn fix_sign(mut v: nalgebra::DVectorViewMut<'_, f64>) {
    let mut pivot = 0.0f64;
    for &x in v.iter() {
        if x.abs() > pivot.abs() {
            pivot = x;
        }
    }
    if pivot < 0.0 {
        v.neg_mut();
    }
}

/// Full dense eigendecomposition of symmetric `m`, ascending, with residual
/// checks on every pair.
pub fn all_eigs(m: &DMatrix<f64>, tol: f64) -> Result<Eigenpairs> {
    let n = m.nrows();
    if n == 0 || m.ncols() != n {
        return Err(LleError::InvalidInput("matrix must be square and non-empty".into()));
    }
    let eig = SymmetricEigen::try_new(m.clone(), f64::EPSILON, 0).ok_or(LleError::EigenNonConvergence {
        max_residual: f64::INFINITY,
        residuals: Vec::new(),
    })?;
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let values: Vec<f64> = order.iter().map(|&j| eig.eigenvalues[j]).collect();
    let mut vectors = DMatrix::zeros(n, n);
    for (dst, &src) in order.iter().enumerate() {
        vectors.column_mut(dst).copy_from(&eig.eigenvectors.column(src));
        fix_sign(vectors.column_mut(dst));
    }

    let norm = values.iter().fold(0.0f64, |a, v| a.max(v.abs()));
    let residuals: Vec<f64> = (0..n)
        .map(|j| {
            let g = vectors.column(j);
            (m * g - g * values[j]).norm()
        })
        .collect();
    let max_residual = residuals.iter().copied().fold(0.0, f64::max);
    if max_residual > tol * norm {
        return Err(LleError::EigenNonConvergence {
            max_residual: if norm > 0.0 { max_residual / norm } else { max_residual },
            residuals,
        });
    }
    Ok(Eigenpairs { values, vectors })
}

/// The `count` smallest eigenpairs of symmetric `m`, ascending.
pub fn bottom_eigs(m: &DMatrix<f64>, count: usize, tol: f64) -> Result<Eigenpairs> {
    let n = m.nrows();
    if count == 0 || count > n {
        return Err(LleError::InvalidInput(format!("requested {count} eigenpairs of a {n}x{n} matrix")));
    }
    let all = all_eigs(m, tol)?;
    Ok(Eigenpairs { values: all.values[..count].to_vec(), vectors: all.vectors.columns(0, count).into_owned() })
}

/// Output coordinates plus the spectral facts needed to judge them.
#[derive(Debug, Clone)]
pub struct EmbeddingResult {
    /// `d x N`; rows are orthonormal eigenvectors of `M`.
    pub y: DMatrix<f64>,
    /// The `d + 1` smallest eigenvalues of `M`, ascending.
    pub eigenvalues: Vec<f64>,
    /// Number of eigenvalues of `M` at or below `tol_null`.
    pub null_multiplicity: usize,
    /// Whether `1/√N` lies in the span of the numerically-null eigenvectors.
    pub constant_vector_found: bool,
    pub tol_null: f64,
}

impl EmbeddingResult {
    pub fn d(&self) -> usize {
        self.y.nrows()
    }

    /// `# key=value` lines that accompany the coordinates on disk.
    pub fn metadata(&self) -> Vec<(String, String)> {
        let eigenvalues: Vec<String> = self.eigenvalues.iter().map(|v| format!("{v:.16e}")).collect();
        vec![
            ("eigenvalues".into(), eigenvalues.join(";")),
            ("null_multiplicity".into(), self.null_multiplicity.to_string()),
            ("constant_vector_found".into(), self.constant_vector_found.to_string()),
            ("tol_null".into(), format!("{:.16e}", self.tol_null)),
        ]
    }

    /// Writes `y1..yd` columns, one row per point, after the metadata.
    pub fn write_csv<W: std::io::Write>(&self, writer: W) -> Result<()> {
        crate::dataset::write_coordinates_csv(&self.y, &self.metadata(), writer)
    }

    /// Sum of the eigenvalues belonging to the returned coordinates.
    pub fn selected_eigenvalue_sum(&self) -> f64 {
        self.eigenvalues[1..].iter().sum()
    }
}

/// Embeds using the eigenvectors `2..=d+1` of `M`.
pub fn embed_alignment(alignment: &AlignmentMatrix, d: usize) -> Result<EmbeddingResult> {
    let n = alignment.len();
    if d == 0 || d + 1 > n {
        return Err(LleError::InvalidInput(format!("target dimension d={d} needs 1 <= d < N={n}")));
    }
    let m = alignment.m();
    let all = all_eigs(m, EIG_RESIDUAL_RTOL)?;
    let tol_null = NULL_RTOL * m.diagonal().mean();
    let null_multiplicity = all.values.iter().filter(|&&v| v <= tol_null).count();

    let u = DVector::from_element(n, 1.0 / (n as f64).sqrt());
    let null_basis = all.vectors.columns(0, null_multiplicity);
    let projection = (null_basis.transpose() * &u).norm();
    let constant_vector_found = null_multiplicity > 0 && projection >= 1.0 - 1e-6;

    let y = all.vectors.columns(1, d).transpose();
    Ok(EmbeddingResult {
        y,
        eigenvalues: all.values[..=d].to_vec(),
        null_multiplicity,
        constant_vector_found,
        tol_null,
    })
}

/// Every intermediate of one pipeline run.
#[derive(Debug, Clone)]
pub struct LleRun {
    pub graph: NeighborGraph,
    pub weights: WeightSet,
    pub alignment: AlignmentMatrix,
    pub embedding: EmbeddingResult,
}

pub fn run_lle(cloud: &PointCloud, k: usize, d: usize, mode: WeightMode) -> Result<LleRun> {
    if d == 0 || d >= cloud.len() {
        return Err(LleError::InvalidInput(format!("target dimension d={d} needs 1 <= d < N={}", cloud.len())));
    }
    let graph = knn(cloud, k)?;
    let weights = compute_weight_set(cloud, &graph, mode)?;
    let alignment = build_alignment(&graph, &weights)?;
    let embedding = embed_alignment(&alignment, d)?;
    Ok(LleRun { graph, weights, alignment, embedding })
}

/// Neighbors, weights, alignment matrix and bottom eigenvectors in one call.
pub fn lle_embed(cloud: &PointCloud, k: usize, d: usize, mode: WeightMode) -> Result<EmbeddingResult> {
    run_lle(cloud, k, d, mode).map(|run| run.embedding)
}
