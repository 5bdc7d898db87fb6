//! Point clouds: the Swiss roll with a hole, its high-dimensional
//! embeddings, and CSV persistence.

mod embedding;
mod io;
mod swiss_roll;

pub use embedding::{make_isometric_embedding, EmbeddingKind, EmbeddingOp, StandardEmbedding};
pub use io::{load_csv, read_coordinates_csv, read_csv, save_csv, write_coordinates_csv, write_csv};
pub use swiss_roll::{arc_length, gen_swiss_roll_hole, Hole, SwissRollDomain};

use nalgebra::DMatrix;

use crate::error::{LleError, Result};

/// `N` samples in `R^D`, stored column-wise (`D x N`), with an optional
/// `N x 2` chart of intrinsic coordinates `(s, h)`.
#[derive(Debug, Clone, PartialEq)]
pub struct PointCloud {
    points: DMatrix<f64>,
    params: Option<DMatrix<f64>>,
    seed: u64,
}

impl PointCloud {
    pub fn new(points: DMatrix<f64>, params: Option<DMatrix<f64>>, seed: u64) -> Result<Self> {
        if points.nrows() == 0 || points.ncols() == 0 {
            return Err(LleError::InvalidInput(format!(
                "point cloud must be non-empty, got {}x{}",
                points.nrows(),
                points.ncols()
            )));
        }
        if points.iter().any(|v| !v.is_finite()) {
            return Err(LleError::InvalidInput("non-finite coordinate".into()));
        }
        if let Some(p) = &params {
            if p.nrows() != points.ncols() || p.ncols() != 2 {
                return Err(LleError::InvalidInput(format!(
                    "params must be {}x2, got {}x{}",
                    points.ncols(),
                    p.nrows(),
                    p.ncols()
                )));
            }
            if p.iter().any(|v| !v.is_finite()) {
                return Err(LleError::InvalidInput("non-finite parameter".into()));
            }
        }
        Ok(Self { points, params, seed })
    }

    /// Builds a cloud from row-major samples (one `Vec` per point).
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(LleError::NoRows);
        }
        let dim = rows[0].len();
        if rows.iter().any(|r| r.len() != dim) {
            return Err(LleError::InvalidInput("rows have inconsistent widths".into()));
        }
        let points = DMatrix::from_fn(dim, n, |r, c| rows[c][r]);
        Self::new(points, None, 0)
    }

    /// The `D x N` data matrix `X`.
    pub fn points(&self) -> &DMatrix<f64> {
        &self.points
    }

    pub fn params(&self) -> Option<&DMatrix<f64>> {
        self.params.as_ref()
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn len(&self) -> usize {
        self.points.ncols()
    }

    pub fn is_empty(&self) -> bool {
        self.points.ncols() == 0
    }

    pub fn dim(&self) -> usize {
        self.points.nrows()
    }

    pub fn point(&self, i: usize) -> nalgebra::DVectorView<'_, f64> {
        self.points.column(i)
    }

    /// Largest pairwise Euclidean distance.
    pub fn diameter(&self) -> f64 {
        let n = self.len();
        let mut best = 0.0f64;
        for i in 0..n {
            let xi = self.points.column(i);
            for j in (i + 1)..n {
                let d2 = (xi - self.points.column(j)).norm_squared();
                best = best.max(d2);
            }
        }
        best.sqrt()
    }

    /// Returns a copy with every point shifted by `offset`.
    pub fn translated(&self, offset: &[f64]) -> Result<Self> {
        if offset.len() != self.dim() {
            return Err(LleError::DimensionMismatch { expected: self.dim(), got: offset.len() });
        }
        let mut points = self.points.clone();
        for mut col in points.column_iter_mut() {
            for (v, o) in col.iter_mut().zip(offset) {
                *v += o;
            }
        }
        Self::new(points, self.params.clone(), self.seed)
    }

    /// Returns a copy with every coordinate multiplied by `factor`.
    pub fn scaled(&self, factor: f64) -> Result<Self> {
        Self::new(&self.points * factor, self.params.clone(), self.seed)
    }

    /// Reorders samples so that new sample `j` is old sample `order[j]`.
    pub fn permuted(&self, order: &[usize]) -> Result<Self> {
        if order.len() != self.len() {
            return Err(LleError::DimensionMismatch { expected: self.len(), got: order.len() });
        }
        let points = DMatrix::from_fn(self.dim(), self.len(), |r, c| self.points[(r, order[c])]);
        let params = self
            .params
            .as_ref()
            .map(|p| DMatrix::from_fn(p.nrows(), 2, |r, c| p[(order[r], c)]));
        Self::new(points, params, self.seed)
    }

    pub(crate) fn with_points(&self, points: DMatrix<f64>) -> Result<Self> {
        Self::new(points, self.params.clone(), self.seed)
    }
}
