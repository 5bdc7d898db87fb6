use nalgebra::DMatrix;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use super::PointCloud;
use crate::error::{LleError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EmbeddingKind {
    /// `x -> Ex` with orthonormal columns.
    Isometric,
    /// `z -> (z, a sin(sum_j z_j))`, applied to an isometric image `z = Ex`.
    ExtraDimSine,
    /// `z -> z + a (sin z_1, ..., sin z_D)`, applied to an isometric image.
    PerCoordSine,
}

/// A map from the roll's ambient space into a higher-dimensional one.
///
/// For the two sine perturbations, `matrix` is the isometry whose image the
/// perturbation acts on; the op itself expects that image as input.
#[derive(Debug, Clone, PartialEq)]
pub struct EmbeddingOp {
    pub kind: EmbeddingKind,
    pub matrix: DMatrix<f64>,
    pub amplitude: f64,
}

/// Orthonormalized columns of a seeded `d_out x d_in` Gaussian matrix.
pub fn make_isometric_embedding(d_in: usize, d_out: usize, seed: u64) -> Result<EmbeddingOp> {
    if d_in == 0 || d_out < d_in {
        return Err(LleError::InvalidInput(format!(
            "isometric embedding needs 1 <= d_in <= d_out, got d_in={d_in}, d_out={d_out}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let gaussian = DMatrix::from_fn(d_out, d_in, |_, _| StandardNormal.sample(&mut rng));
    let qr = gaussian.qr();
    let mut q = qr.q();
    let r = qr.r();
    // fix column signs so the factorization is unique
    for j in 0..d_in {
        if r[(j, j)] < 0.0 {
            q.column_mut(j).neg_mut();
        }
    }
    Ok(EmbeddingOp { kind: EmbeddingKind::Isometric, matrix: q, amplitude: 0.0 })
}

impl EmbeddingOp {
    pub fn extra_dim_sine(isometry: &EmbeddingOp, amplitude: f64) -> Self {
        Self { kind: EmbeddingKind::ExtraDimSine, matrix: isometry.matrix.clone(), amplitude }
    }

    pub fn per_coord_sine(isometry: &EmbeddingOp, amplitude: f64) -> Self {
        Self { kind: EmbeddingKind::PerCoordSine, matrix: isometry.matrix.clone(), amplitude }
    }

    pub fn input_dim(&self) -> usize {
        match self.kind {
            EmbeddingKind::Isometric => self.matrix.ncols(),
            EmbeddingKind::ExtraDimSine | EmbeddingKind::PerCoordSine => self.matrix.nrows(),
        }
    }

    pub fn output_dim(&self) -> usize {
        match self.kind {
            EmbeddingKind::Isometric | EmbeddingKind::PerCoordSine => self.matrix.nrows(),
            EmbeddingKind::ExtraDimSine => self.matrix.nrows() + 1,
        }
    }

    /// Applies the map to every point; `params` pass through unchanged.
    pub fn apply(&self, cloud: &PointCloud) -> Result<PointCloud> {
        if cloud.dim() != self.input_dim() {
            return Err(LleError::DimensionMismatch { expected: self.input_dim(), got: cloud.dim() });
        }
        let x = cloud.points();
        let points = match self.kind {
            EmbeddingKind::Isometric => &self.matrix * x,
            EmbeddingKind::ExtraDimSine => {
                let d = x.nrows();
                DMatrix::from_fn(d + 1, x.ncols(), |r, c| {
                    if r < d {
                        x[(r, c)]
                    } else {
                        self.amplitude * x.column(c).sum().sin()
                    }
                })
            }
            EmbeddingKind::PerCoordSine => x.map(|v| v + self.amplitude * v.sin()),
        };
        cloud.with_points(points)
    }
}

/// The three high-dimensional embeddings used in the experiments, plus the
/// identity.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StandardEmbedding {
    None,
    E1,
    E2,
    E3,
}

impl StandardEmbedding {
    pub const AMPLITUDE: f64 = 0.1;

    /// Maps a cloud (typically in `R^3`) through `E1`, `E2` or `E3`, where
    /// `E1` is a seeded isometry into `R^{d_out}`.
    pub fn apply(self, cloud: &PointCloud, d_out: usize, seed: u64) -> Result<PointCloud> {
        if self == StandardEmbedding::None {
            return Ok(cloud.clone());
        }
        let e1 = make_isometric_embedding(cloud.dim(), d_out, seed)?;
        let z = e1.apply(cloud)?;
        match self {
            StandardEmbedding::None => unreachable!(),
            StandardEmbedding::E1 => Ok(z),
            StandardEmbedding::E2 => EmbeddingOp::extra_dim_sine(&e1, Self::AMPLITUDE).apply(&z),
            StandardEmbedding::E3 => EmbeddingOp::per_coord_sine(&e1, Self::AMPLITUDE).apply(&z),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            StandardEmbedding::None => "none",
            StandardEmbedding::E1 => "e1",
            StandardEmbedding::E2 => "e2",
            StandardEmbedding::E3 => "e3",
        }
    }
}

impl std::str::FromStr for StandardEmbedding {
    type Err = LleError;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "none" => Ok(Self::None),
            "e1" => Ok(Self::E1),
            "e2" => Ok(Self::E2),
            "e3" => Ok(Self::E3),
            other => Err(LleError::InvalidInput(format!("unknown embedding '{other}'"))),
        }
    }
}
